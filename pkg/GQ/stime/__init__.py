from .operators import (
    StimeOperators,
    lie15,
    residual_scaling,
    residuals_vs_singular,
    stime_operators,
)
from .invariants import (
    commuting_set_spectrum,
    dimension_crosscheck,
    lambda2_check,
    lambda2_sweep,
    lambda4_report,
    quantum_number_report,
    simplified_dimension,
    wave_operator,
    wave_report,
)
