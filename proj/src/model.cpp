#include "hhinv/model.hpp"

#include <cmath>

namespace hhinv {
namespace {

bool is_integral(double e) {
    return std::isfinite(e) && std::nearbyint(e) == e;
}

double checked_pow(double gate, double e, const char* name) {
    if (gate <= 0.0) {
        if (is_integral(e))
            return std::pow(gate, e);
        throw std::domain_error(std::string("ionic_currents: non-positive ") + name +
                                " with non-integer exponent");
    }
    return gate_pow(gate, e);
}

}  // namespace

IonicCurrents ionic_currents(const ModelConstants& consts, const Conductances& g,
                             const Exponents& e, double v, double m, double n, double h) {
    IonicCurrents out;
    out.i_na = g.g_na * checked_pow(m, e.a, "m") * checked_pow(h, e.b, "h") * (v - consts.e_na);
    out.i_k = g.g_k * checked_pow(n, e.c, "n") * (v - consts.e_k);
    out.i_l = g.g_l * (v - consts.e_l);
    return out;
}

Trajectory solve_forward(const ModelConstants& consts, const Conductances& g,
                         const Exponents& e, const TimeGrid& grid) {
    consts.validate();
    g.validate();
    e.validate();

    const std::size_t n_nodes = grid.n_nodes();
    Trajectory out;
    out.grid = grid;
    out.v.resize(n_nodes);
    out.m.resize(n_nodes);
    out.n.resize(n_nodes);
    out.h.resize(n_nodes);
    out.v[0] = consts.v0;
    out.m[0] = consts.m0;
    out.n[0] = consts.n0;
    out.h[0] = consts.h0;

    const double dt = grid.dt;
    for (std::size_t j = 0; j + 1 < n_nodes; ++j) {
        const double v = out.v[j];
        const double m = out.m[j];
        const double n = out.n[j];
        const double h = out.h[j];

        const double i_na = g.g_na * gate_pow(m, e.a) * gate_pow(h, e.b) * (v - consts.e_na);
        const double i_k = g.g_k * gate_pow(n, e.c) * (v - consts.e_k);
        const double i_l = g.g_l * (v - consts.e_l);
        out.v[j + 1] = v + dt * (consts.i_ext - i_na - i_k - i_l) / consts.c_m;

        out.m[j + 1] = m + dt * (rate_alpha(Gate::m, v) * (1.0 - m) - rate_beta(Gate::m, v) * m);
        out.n[j + 1] = n + dt * (rate_alpha(Gate::n, v) * (1.0 - n) - rate_beta(Gate::n, v) * n);
        out.h[j + 1] = h + dt * (rate_alpha(Gate::h, v) * (1.0 - h) - rate_beta(Gate::h, v) * h);

        if (!std::isfinite(out.v[j + 1]) || !std::isfinite(out.m[j + 1]) ||
            !std::isfinite(out.n[j + 1]) || !std::isfinite(out.h[j + 1]))
            throw divergence_error(j + 1, "solve_forward: non-finite state at node " +
                                              std::to_string(j + 1));
    }
    return out;
}

}  // namespace hhinv
