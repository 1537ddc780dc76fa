from .core import (
    DEFAULT_DIMENSION_CAP,
    Representation,
    SpectrumReport,
    defining_rep,
    extreme_weight_vector,
    rep_defect,
    so3_irrep,
    spectrum,
    sym_power_rep,
    symmetric_power_matrices,
    weight_window,
)
from .invariants import (
    casimir_report,
    char_poly_invariants,
    joint_spectrum,
    quadratic_casimir,
    trace_invariant,
    trace_power_expectation,
)
from .oscillator import (
    OperatorSet,
    QuantumConstants,
    canonical_truncated,
    correspondence_table,
    simplified_oscillator,
)
