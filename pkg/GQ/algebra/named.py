"""
Named algebras used across the toolkit: canonical dH(n), so(3) and the
orthogonal algebras so(p, q) on labelled axes.
"""

from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from GQ.algebra.core import LieAlgebra, make_algebra

SPACETIME_AXES: Tuple[str, ...] = ("0", "1", "2", "3", "X", "Y")

# Metrics on SPACETIME_AXES, index 0 timelike for the Minkowskian form.
SIGNATURES: Dict[str, Tuple[int, ...]] = {
    "compact": (1, 1, 1, 1, 1, 1),
    "5-1": (-1, 1, 1, 1, 1, 1),
    "3-3": (-1, -1, -1, 1, 1, 1),
}
SIGNATURE_ALIASES: Dict[str, str] = {
    "minkowski": "5-1",
    "split": "3-3",
}


def canonical_signature(tag: str) -> str:
    tag = SIGNATURE_ALIASES.get(tag, tag)
    if tag not in SIGNATURES:
        raise ValueError(
            f"Unknown signature {tag!r}; expected one of {sorted(SIGNATURES) + sorted(SIGNATURE_ALIASES)}"
        )
    return tag


def spacetime_metric(tag: str) -> np.ndarray:
    return np.array(SIGNATURES[canonical_signature(tag)], dtype=float)


def generator_label(alpha: str, beta: str) -> str:
    return f"L_{alpha}{beta}"


def orthogonal_pairs(axes: Sequence[str]) -> List[Tuple[int, int]]:
    return list(combinations(range(len(axes)), 2))


def orthogonal_generators(metric: Sequence[float]) -> np.ndarray:
    """
    Defining-representation matrices of so(p, q), one per pair alpha < beta:

        (L_ab)[g, d] = eta_bd delta_ga - eta_ad delta_gb

    i.e. entry (a, b) is eta_bb and entry (b, a) is -eta_aa.
    """
    eta = np.asarray(metric, dtype=float)
    n = eta.size
    pairs = list(combinations(range(n), 2))
    matrices = np.zeros((len(pairs), n, n))
    for idx, (a, b) in enumerate(pairs):
        matrices[idx, a, b] = eta[b]
        matrices[idx, b, a] = -eta[a]
    return matrices


def orthogonal_coordinates(X: np.ndarray, metric: Sequence[float]) -> np.ndarray:
    """Coordinates of an eta-antisymmetric matrix in the L_ab basis (exact read-off)."""
    eta = np.asarray(metric, dtype=float)
    return np.array([X[a, b] * eta[b] for a, b in combinations(range(eta.size), 2)])


def orthogonal_algebra(
    metric: Sequence[float],
    axes: Optional[Sequence[str]] = None,
    name: Optional[str] = None,
) -> LieAlgebra:
    """
    so(p, q) for a diagonal metric of +-1 entries, basis L_ab (a < b in axis order).

    Structure constants are read off the commutators of the defining matrices,
    so they agree with `defining_rep` by construction:
    [L_ab, L_cd] = eta_bc L_ad - eta_ac L_bd - eta_bd L_ac + eta_ad L_bc.
    """
    eta = np.asarray(metric, dtype=float)
    if eta.ndim != 1 or eta.size < 2 or np.any(np.abs(np.abs(eta) - 1.0) > 0):
        raise ValueError(f"Orthogonal metric must be a diagonal of +-1 with at least 2 entries, got {metric}")
    n = eta.size
    axes = tuple(axes) if axes is not None else tuple(str(i + 1) for i in range(n))
    if len(axes) != n:
        raise ValueError(f"{len(axes)} axis labels for a metric of size {n}")

    mats = orthogonal_generators(eta)
    m = mats.shape[0]
    tensor = np.zeros((m, m, m))
    for i in range(m):
        for j in range(m):
            comm = mats[i] @ mats[j] - mats[j] @ mats[i]
            tensor[i, j] = orthogonal_coordinates(comm, eta)

    basis = tuple(generator_label(axes[a], axes[b]) for a, b in orthogonal_pairs(axes))
    p = int(np.sum(eta > 0))
    q = n - p
    return LieAlgebra(name or (f"so({n})" if q == 0 else f"so({p},{q})"), basis, tensor)


def heisenberg(n: int = 1) -> LieAlgebra:
    """dH(n): [q_i, p_i] = r, all other brackets zero. Labels q, p, r when n == 1."""
    if n < 1:
        raise ValueError(f"heisenberg needs n >= 1, got {n}")
    if n == 1:
        qs, ps = ["q"], ["p"]
    else:
        qs = [f"q{i}" for i in range(1, n + 1)]
        ps = [f"p{i}" for i in range(1, n + 1)]
    entries = [(q, p, "r", 1.0) for q, p in zip(qs, ps)]
    return make_algebra(f"dH({n})", qs + ps + ["r"], entries, dagger=[-1] * (2 * n + 1))


def so3(labels: Sequence[str] = ("J1", "J2", "J3"), split: bool = False) -> LieAlgebra:
    """
    Cyclic so(3): [J1, J2] = J3, [J2, J3] = J1, [J3, J1] = J2.

    With split=True the middle relation flips to [J2, J3] = -J1, which gives
    so(2,1) while leaving [J1, J2] = J3 untouched.
    """
    a, b, c = labels
    sign = -1.0 if split else 1.0
    entries = [(a, b, c, 1.0), (b, c, a, sign), (c, a, b, 1.0)]
    return make_algebra("so(2,1)" if split else "so(3)", labels, entries)
