"""Finite-instance verification of the mixing statements."""
from .checks import (
    Report,
    bound_values,
    bounds_check,
    contraction_check,
    ratio_deviation,
    sequential_epsilon,
    single_point_corollary_check,
    tv_scaling_check,
)
from .decay import (
    DecayFit,
    DecayRun,
    DecaySample,
    Envelope,
    envelope_violations,
    fit_decay,
    format_csv,
    random_condition,
    ssm_experiment,
    theoretical_envelope,
    write_csv,
    wsm_experiment,
)
from .reduction import StrippedInstance, absorb, strip_near_boundary
