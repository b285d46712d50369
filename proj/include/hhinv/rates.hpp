#pragma once

#include "hhinv/types.hpp"

namespace hhinv {

enum class Gate { m, n, h };

/// Opening rate alpha_X(v) in 1/ms. The m and n formulas have removable
/// singularities (v = 25 and v = 10); both are evaluated by series there.
double rate_alpha(Gate gate, double v);

/// Closing rate beta_X(v) in 1/ms.
double rate_beta(Gate gate, double v);

/// d(alpha_X)/dV, analytic.
double rate_alpha_prime(Gate gate, double v);

/// d(beta_X)/dV, analytic.
double rate_beta_prime(Gate gate, double v);

/// Clamped-voltage equilibrium alpha / (alpha + beta).
double gating_steady_state(Gate gate, double v);

}  // namespace hhinv
