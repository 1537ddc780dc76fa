from .fock import (
    IoSpace,
    QuantifiedSystem,
    cyclic_subspace,
    green_function,
    quantified_action,
    quantify,
    relation_defect,
    wick_expansion,
)
from .boson import boson_ccr_defect, regulator_terms, simplified_boson
