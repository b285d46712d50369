#include "hhinv/adjoint.hpp"

#include <cmath>

namespace hhinv {

AdjointTrajectory solve_adjoint(const ModelConstants& consts, const Conductances& g,
                                const Exponents& e, const Trajectory& fwd,
                                const ResidualSignal& resid) {
    if (!(fwd.grid == resid.grid) || resid.values.size() != fwd.grid.n_nodes())
        throw std::invalid_argument("solve_adjoint: residual grid mismatch");

    const std::size_t n = fwd.grid.n_steps;
    const double dt = fwd.grid.dt;
    const double cm = consts.c_m;

    AdjointTrajectory adj;
    adj.grid = fwd.grid;
    adj.u.assign(n + 1, 0.0);
    adj.p.assign(n + 1, 0.0);
    adj.q.assign(n + 1, 0.0);
    adj.r.assign(n + 1, 0.0);

    // Terminal costate: the data norm gives the last node half weight.
    double u = -0.5 * dt * resid.values[n] / cm;
    double p = 0.0, q = 0.0, r = 0.0;
    adj.u[n - 1] = u;

    for (std::size_t j = n - 1; j >= 1; --j) {
        const double v = fwd.v[j];
        const double m = fwd.m[j];
        const double nn = fwd.n[j];
        const double h = fwd.h[j];

        const double am = rate_alpha(Gate::m, v), bm = rate_beta(Gate::m, v);
        const double an = rate_alpha(Gate::n, v), bn = rate_beta(Gate::n, v);
        const double ah = rate_alpha(Gate::h, v), bh = rate_beta(Gate::h, v);
        const double amp = rate_alpha_prime(Gate::m, v), bmp = rate_beta_prime(Gate::m, v);
        const double anp = rate_alpha_prime(Gate::n, v), bnp = rate_beta_prime(Gate::n, v);
        const double ahp = rate_alpha_prime(Gate::h, v), bhp = rate_beta_prime(Gate::h, v);

        const double mf = floored(m), nf = floored(nn), hf = floored(h);
        const double ma = std::pow(mf, e.a);
        const double hb = std::pow(hf, e.b);
        const double nc = std::pow(nf, e.c);
        const double g_tot = g.g_na * ma * hb + g.g_k * nc + g.g_l;

        // Voltage sensitivity of each gate's kinetics.
        const double s_m = (1.0 - m) * amp - m * bmp;
        const double s_n = (1.0 - nn) * anp - nn * bnp;
        const double s_h = (1.0 - h) * ahp - h * bhp;

        // Gate sensitivity of the ionic current; zero where the floor clamps.
        const double d_m = m > kGateFloor
                               ? e.a * g.g_na * std::pow(mf, e.a - 1.0) * hb * (v - consts.e_na)
                               : 0.0;
        const double d_n = nn > kGateFloor
                               ? e.c * g.g_k * std::pow(nf, e.c - 1.0) * (v - consts.e_k)
                               : 0.0;
        const double d_h = h > kGateFloor
                               ? e.b * g.g_na * ma * std::pow(hf, e.b - 1.0) * (v - consts.e_na)
                               : 0.0;

        const double du = (g_tot * u + s_m * p + s_n * q + s_h * r + resid.values[j]) / cm;
        const double pn = p - dt * ((am + bm) * p - d_m * u);
        const double qn = q - dt * ((an + bn) * q - d_n * u);
        const double rn = r - dt * ((ah + bh) * r - d_h * u);
        u -= dt * du;
        p = pn;
        q = qn;
        r = rn;

        if (!std::isfinite(u) || !std::isfinite(p) || !std::isfinite(q) || !std::isfinite(r))
            throw divergence_error(j, "solve_adjoint: non-finite costate at node " +
                                          std::to_string(j));

        adj.u[j - 1] = u;
        adj.p[j - 1] = p;
        adj.q[j - 1] = q;
        adj.r[j - 1] = r;
    }
    return adj;
}

}  // namespace hhinv
