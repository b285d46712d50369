#pragma once

#include "hhinv/rates.hpp"
#include "hhinv/types.hpp"

namespace hhinv {

/// Gate values are floored here before real-exponent powers and logarithms;
/// the true gates stay strictly positive, so the floor only guards degenerate
/// iterates.
inline constexpr double kGateFloor = 1e-12;

inline double floored(double gate) {
    return gate > kGateFloor ? gate : kGateFloor;
}

/// Real power with the gate floor applied to the base.
inline double gate_pow(double gate, double e) {
    return std::pow(floored(gate), e);
}

struct IonicCurrents {
    double i_na = 0.0;
    double i_k = 0.0;
    double i_l = 0.0;
};

/// Current densities (uA/cm^2) for one state sample. Non-positive gates are
/// accepted only when the matching exponent is an integer; otherwise the
/// real power is undefined and a domain error is thrown.
IonicCurrents ionic_currents(const ModelConstants& consts, const Conductances& g,
                             const Exponents& e, double v, double m, double n, double h);

/// Explicit-Euler solve of the membrane system on the given grid.
/// Index 0 of the result holds the initial conditions. A non-finite state
/// aborts the sweep with a divergence_error carrying the first bad node.
Trajectory solve_forward(const ModelConstants& consts, const Conductances& g,
                         const Exponents& e, const TimeGrid& grid);

}  // namespace hhinv
