from .core import (
    AlgebraFile,
    ClassificationReport,
    LieAlgebra,
    adjoint_rep,
    antisymmetry_defect,
    bracket,
    change_basis,
    classify,
    direct_sum,
    from_tensor,
    jacobi_defect,
    killing_form,
    killing_rank,
    load_algebra,
    make_algebra,
    signed_relabel,
    structure_distance,
)
from .named import heisenberg, orthogonal_algebra, so3
from .homotopy import (
    HomotopyPath,
    PathReport,
    boson_path,
    path_report,
    scaling_contraction,
    segal_path,
    stime_path,
)
