"""Fractional velocities, singular IFS functions and local fractional derivatives."""

from __future__ import annotations

from .dyadic import DyadicRational, digit_sum, dyadic_grid
from .errors import (
    DegenerateDerivative,
    DepthError,
    DomainError,
    FracvelError,
    InsufficientData,
    ParamError,
    ParseError,
    QuadratureError,
    RatioUndefined,
    RuleInapplicable,
)
from .expr import FunctionExpr, parse_function, print_function
from .fanalytic import FractionalPowerSeries, closed_form_velocity, eval_series, holder_spectrum, series_add, series_scale
from .functions import Constant, CounterexampleH, Lambda, Power
from .ifs import (
    DeRham,
    IFSIterate,
    IFSSpec,
    derham_eval_exact,
    derham_reparam_iterate,
    derham_velocity_closed_form,
    neidinger_iterate,
    neidinger_velocity_iterate,
    velocity_via_scale_sequence,
)
from .langevin import PathSpec, generate_path, partition_scaling_check, path_holder_exponent
from .lfd import (
    LFDResult,
    QuadratureConfig,
    equivalence_report,
    integral_average,
    kg_lfd,
    kg_lfd_bv,
    rl_derivative,
    rl_integral,
)
from .velocity import (
    DEFAULT_SCHEDULE,
    EstimatorSchedule,
    VelocityEstimate,
    basic_evaluation,
    check_algebra_rule,
    delta,
    estimate_velocity,
    frac_variation,
    oscillation,
    scale_velocity,
    scale_velocity_limit,
    taylor_lagrange_residual,
    velocity_bracket,
)

__version__ = "0.1.0"
