"""Hodgkin-Huxley forward solves and adjoint Landweber parameter recovery."""

from ._core import (
    Conductances,
    DivergenceError,
    Exponents,
    Gate,
    IterationRecord,
    ModelConstants,
    NoiseSpec,
    Observation,
    ParameterKind,
    ParameterVector,
    RunResult,
    StopReason,
    StoppingRule,
    TimeGrid,
    Trajectory,
    ZeroGradientError,
    add_noise,
    gating_steady_state,
    l2_norm,
    percent_error,
    rate_alpha,
    rate_alpha_prime,
    rate_beta,
    rate_beta_prime,
    residual_norm,
    run_inversion,
    solve_forward,
)

__all__ = [
    "Conductances",
    "DivergenceError",
    "Exponents",
    "Gate",
    "IterationRecord",
    "ModelConstants",
    "NoiseSpec",
    "Observation",
    "ParameterKind",
    "ParameterVector",
    "RunResult",
    "StopReason",
    "StoppingRule",
    "TimeGrid",
    "Trajectory",
    "ZeroGradientError",
    "add_noise",
    "gating_steady_state",
    "l2_norm",
    "percent_error",
    "rate_alpha",
    "rate_alpha_prime",
    "rate_beta",
    "rate_beta_prime",
    "residual_norm",
    "run_inversion",
    "solve_forward",
]
