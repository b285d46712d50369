#pragma once

#include "hhinv/model.hpp"
#include "hhinv/types.hpp"

namespace hhinv {

/// Data misfit V^delta - V sampled on the forward grid.
struct ResidualSignal {
    TimeGrid grid;
    std::vector<double> values;
};

/// Backward (terminal-value) adjoint states on the forward grid.
///
/// The sweep is the exact transpose of the explicit-Euler forward update
/// against the trapezoid data norm. Entry j holds the costate paired with
/// forward step j -> j+1, so u[j] approximates the continuous adjoint at
/// t_j to first order and the terminal entries are exactly zero. Pairing
/// u[j] with the step-j integrand in the gradient quadrature reproduces the
/// gradient of the discrete objective to machine precision, which is what
/// the finite-difference oracle checks.
struct AdjointTrajectory {
    TimeGrid grid;
    std::vector<double> u, p, q, r;
};

/// Solves the coupled linear adjoint system backward from zero terminal
/// data. Both inverse problems share the same system; `g` and `e` are the
/// parameter triples of the forward trajectory (one of them being the
/// current iterate, the other held fixed by the caller).
AdjointTrajectory solve_adjoint(const ModelConstants& consts, const Conductances& g,
                                const Exponents& e, const Trajectory& fwd,
                                const ResidualSignal& resid);

}  // namespace hhinv
