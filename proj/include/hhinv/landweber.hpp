#pragma once

#include <optional>

#include "hhinv/adjoint.hpp"
#include "hhinv/noise.hpp"
#include "hhinv/types.hpp"

namespace hhinv {

/// Discrepancy-principle stopping data: stop at the first iterate whose
/// residual norm falls to tau * delta (or the noise-free floor below).
struct StoppingRule {
    double tau = 2.01;
    double delta = 0.0;
    std::size_t max_iterations = 500000;

    void validate() const {
        if (!(tau > 2.0))
            throw std::invalid_argument("StoppingRule: tau must exceed 2");
        if (!(delta >= 0.0) || !std::isfinite(delta))
            throw std::invalid_argument("StoppingRule: delta must be >= 0");
        if (max_iterations < 1)
            throw std::invalid_argument("StoppingRule: max_iterations must be >= 1");
    }
};

/// Residual threshold used by the run: tau*delta, with a floor that lets
/// noise-free runs terminate.
inline constexpr double kResidualFloor = 1e-10;

enum class StopReason { discrepancy, max_iterations, zero_gradient };

const char* to_string(StopReason reason);

struct IterationRecord {
    std::size_t k = 0;
    ParameterVector iterate;
    double residual_norm = 0.0;
    std::optional<double> percent_error;
};

struct RunResult {
    std::vector<IterationRecord> records;
    std::size_t k_star = 0;
    StopReason stop_reason = StopReason::max_iterations;
    ParameterVector final_iterate;
    double threshold = 0.0;        ///< effective stopping threshold
    bool used_residual_floor = false;
};

/// Gradient triple (X_Na, X_K, X_L) assembled from the adjoint trajectory.
Vec3 gradient_conductances(const Trajectory& fwd, const AdjointTrajectory& adj,
                           const ModelConstants& consts, const Exponents& e);

/// Gradient triple (X_a, X_b, X_c); the log-weighted integrands require the
/// floored gate samples.
Vec3 gradient_exponents(const Trajectory& fwd, const AdjointTrajectory& adj,
                        const ModelConstants& consts, const Conductances& g,
                        const Exponents& e_iter);

/// w = residual^2 / |gradient|^2. Zero residual yields w = 0; a vanishing
/// gradient with positive residual throws zero_gradient_error.
double step_size(double residual_norm, const Vec3& gradient);

/// iterate + w * gradient, kind preserved. Non-finite results abort.
ParameterVector landweber_step(const ParameterVector& iterate, double w, const Vec3& gradient);

/// Full iteration: forward solve, residual, discrepancy test, adjoint solve,
/// gradient, step size, update; one record per iteration. For
/// `unknown == conductances` the Conductances argument is the initial guess
/// and the Exponents are held fixed (and vice versa).
RunResult run_inversion(const ModelConstants& consts, const Conductances& g,
                        const Exponents& e, const TimeGrid& grid,
                        const Observation& observed, const StoppingRule& rule,
                        ParameterKind unknown,
                        const std::optional<ParameterVector>& truth = std::nullopt);

}  // namespace hhinv
