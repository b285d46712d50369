#include "hhinv/landweber.hpp"

#include <atomic>
#include <cmath>
#include <iostream>

namespace hhinv {
namespace {

void check_grids(const Trajectory& fwd, const AdjointTrajectory& adj) {
    if (!(fwd.grid == adj.grid) || fwd.v.size() != adj.u.size())
        throw std::invalid_argument("gradient: forward/adjoint grid mismatch");
}

void warn_nonpositive_gates_once() {
    static std::atomic<bool> warned{false};
    if (!warned.exchange(true))
        std::cerr << "hhinv: warning: non-positive gate sample floored before log\n";
}

}  // namespace

const char* to_string(ParameterKind kind) {
    return kind == ParameterKind::conductances ? "conductances" : "exponents";
}

const char* to_string(StopReason reason) {
    switch (reason) {
        case StopReason::discrepancy: return "discrepancy";
        case StopReason::max_iterations: return "max_iterations";
        case StopReason::zero_gradient: return "zero_gradient";
    }
    return "unknown";
}

Vec3 gradient_conductances(const Trajectory& fwd, const AdjointTrajectory& adj,
                           const ModelConstants& consts, const Exponents& e) {
    check_grids(fwd, adj);
    const std::size_t n = fwd.grid.n_steps;
    const double dt = fwd.grid.dt;
    double x_na = 0.0, x_k = 0.0, x_l = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double u = adj.u[j];
        x_na += gate_pow(fwd.m[j], e.a) * gate_pow(fwd.h[j], e.b) * (fwd.v[j] - consts.e_na) * u;
        x_k += gate_pow(fwd.n[j], e.c) * (fwd.v[j] - consts.e_k) * u;
        x_l += (fwd.v[j] - consts.e_l) * u;
    }
    return {x_na * dt, x_k * dt, x_l * dt};
}

Vec3 gradient_exponents(const Trajectory& fwd, const AdjointTrajectory& adj,
                        const ModelConstants& consts, const Conductances& g,
                        const Exponents& e_iter) {
    check_grids(fwd, adj);
    const std::size_t n = fwd.grid.n_steps;
    const double dt = fwd.grid.dt;
    double x_a = 0.0, x_b = 0.0, x_c = 0.0;
    bool saw_nonpositive = false;
    for (std::size_t j = 0; j < n; ++j) {
        const double u = adj.u[j];
        saw_nonpositive |= (fwd.m[j] <= 0.0 || fwd.n[j] <= 0.0 || fwd.h[j] <= 0.0);
        const double mf = floored(fwd.m[j]);
        const double nf = floored(fwd.n[j]);
        const double hf = floored(fwd.h[j]);
        const double common_na = g.g_na * (fwd.v[j] - consts.e_na) * std::pow(mf, e_iter.a) *
                                 std::pow(hf, e_iter.b) * u;
        x_a += common_na * std::log(mf);
        x_b += common_na * std::log(hf);
        x_c += g.g_k * (fwd.v[j] - consts.e_k) * std::pow(nf, e_iter.c) * u * std::log(nf);
    }
    if (saw_nonpositive)
        warn_nonpositive_gates_once();
    return {x_a * dt, x_b * dt, x_c * dt};
}

double step_size(double residual_norm, const Vec3& gradient) {
    if (!(residual_norm >= 0.0))
        throw std::invalid_argument("step_size: residual norm must be >= 0");
    if (residual_norm == 0.0)
        return 0.0;
    const double gn = norm3(gradient);
    if (gn == 0.0)
        throw zero_gradient_error("step_size: zero gradient with positive residual");
    // (res/|g|)^2 rather than res^2/|g|^2 keeps the quotient finite for
    // extreme gradient magnitudes.
    const double ratio = residual_norm / gn;
    return ratio * ratio;
}

ParameterVector landweber_step(const ParameterVector& iterate, double w, const Vec3& gradient) {
    ParameterVector next = iterate;
    for (int i = 0; i < 3; ++i)
        next.values[i] += w * gradient[i];
    if (!finite3(next.values))
        throw divergence_error(0, "landweber_step: non-finite iterate");
    return next;
}

RunResult run_inversion(const ModelConstants& consts, const Conductances& g,
                        const Exponents& e, const TimeGrid& grid,
                        const Observation& observed, const StoppingRule& rule,
                        ParameterKind unknown, const std::optional<ParameterVector>& truth) {
    rule.validate();
    if (!(observed.grid == grid) || observed.v_delta.size() != grid.n_nodes())
        throw std::invalid_argument("run_inversion: observation grid mismatch");
    if (truth && truth->kind != unknown)
        throw std::invalid_argument("run_inversion: truth kind does not match unknown kind");

    RunResult result;
    result.threshold = rule.tau * rule.delta;
    if (result.threshold < kResidualFloor) {
        result.threshold = kResidualFloor;
        result.used_residual_floor = true;
    }

    ParameterVector x;
    x.kind = unknown;
    x.values = unknown == ParameterKind::conductances ? g.as_vec() : e.as_vec();

    ResidualSignal resid;
    resid.grid = grid;
    resid.values.resize(grid.n_nodes());

    for (std::size_t k = 1; k <= rule.max_iterations; ++k) {
        const Conductances g_k =
            unknown == ParameterKind::conductances ? Conductances::from_vec(x.values) : g;
        const Exponents e_k =
            unknown == ParameterKind::exponents ? Exponents::from_vec(x.values) : e;

        Trajectory fwd;
        try {
            fwd = solve_forward(consts, g_k, e_k, grid);
        } catch (divergence_error& err) {
            err.iteration = k;
            throw;
        }

        for (std::size_t j = 0; j < grid.n_nodes(); ++j)
            resid.values[j] = observed.v_delta[j] - fwd.v[j];
        const double res = l2_norm(resid.values, grid);

        IterationRecord rec;
        rec.k = k;
        rec.iterate = x;
        rec.residual_norm = res;
        if (truth)
            rec.percent_error = percent_error(*truth, x);
        result.records.push_back(rec);

        if (res <= result.threshold) {
            result.k_star = k;
            result.stop_reason = StopReason::discrepancy;
            result.final_iterate = x;
            return result;
        }
        if (k == rule.max_iterations)
            break;

        AdjointTrajectory adj;
        Vec3 grad{};
        try {
            adj = solve_adjoint(consts, g_k, e_k, fwd, resid);
            grad = unknown == ParameterKind::conductances
                       ? gradient_conductances(fwd, adj, consts, e_k)
                       : gradient_exponents(fwd, adj, consts, g_k, e_k);
        } catch (divergence_error& err) {
            err.iteration = k;
            throw;
        }

        double w = 0.0;
        try {
            w = step_size(res, grad);
        } catch (const zero_gradient_error&) {
            result.k_star = k;
            result.stop_reason = StopReason::zero_gradient;
            result.final_iterate = x;
            return result;
        }

        try {
            x = landweber_step(x, w, grad);
        } catch (divergence_error& err) {
            err.iteration = k;
            throw;
        }
    }

    result.k_star = rule.max_iterations;
    result.stop_reason = StopReason::max_iterations;
    result.final_iterate = result.records.back().iterate;
    return result;
}

}  // namespace hhinv
