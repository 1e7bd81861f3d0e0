"""Mittag-Leffler functions, Riemann-Liouville fractional integration and
closed-form solutions of generalized fractional kinetic equations, together
with an independent numerical oracle for checking them."""

from .fracops import (
    FracWeights,
    GridMismatchError,
    SampledFunction,
    SingularOriginError,
    StartPolicy,
    TimeGrid,
    build_weights,
    frac_integral,
)
from .kinetics import KineticModel, ResonanceError, Variant, forcing, solve
from .oracle import (
    ConvergenceConditionError,
    LaplaceCheck,
    ResidualReport,
    TruncationError,
    laplace_ml_check,
    laplace_of_candidate,
    laplace_power_check,
    laplace_series_solution,
    residual,
    solve_volterra,
)
from .specfun import (
    AccuracyError,
    EvalResult,
    MLParams,
    PoleError,
    Regime,
    erf,
    erfc,
    gamma,
    mittag_leffler,
    ml_half_via_erfc,
    ml_one,
    ml_two,
    pochhammer,
    rgamma,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "ConvergenceConditionError",
    "EvalResult",
    "FracWeights",
    "GridMismatchError",
    "KineticModel",
    "LaplaceCheck",
    "MLParams",
    "PoleError",
    "Regime",
    "ResidualReport",
    "ResonanceError",
    "SampledFunction",
    "SingularOriginError",
    "StartPolicy",
    "TimeGrid",
    "TruncationError",
    "Variant",
    "build_weights",
    "erf",
    "erfc",
    "forcing",
    "frac_integral",
    "gamma",
    "laplace_ml_check",
    "laplace_of_candidate",
    "laplace_power_check",
    "laplace_series_solution",
    "mittag_leffler",
    "ml_half_via_erfc",
    "ml_one",
    "ml_two",
    "pochhammer",
    "residual",
    "rgamma",
    "solve",
    "solve_volterra",
]
