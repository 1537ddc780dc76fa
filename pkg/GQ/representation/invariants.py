# The MIT License (MIT)
# Copyright © 2025 GQ developers
# See GQ/__init__.py for the full license text.

"""
Invariants of representations: characteristic-polynomial coefficients,
the quadratic Casimir and the trace invariants Tr(Lambda^n) of the
orthogonal family.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from GQ.algebra.core import DEFAULT_RANK_TOL, killing_form, killing_rank
from GQ.algebra.named import orthogonal_pairs
from GQ.representation.core import Representation, commutator
from GQ.utils.logging import logger


def char_poly_invariants(rep: Representation, coeffs: Sequence[float]) -> List[complex]:
    """
    Coefficients C_0..C_d of det(L - z 1) = sum_n C_n z^n for L = sum_a coeffs[a] R_a.
    """
    L = rep.element(np.asarray(coeffs))
    d = L.shape[0]
    # np.poly gives det(z 1 - L) with the leading coefficient first.
    p = np.poly(L) if d else np.array([1.0])
    sign = (-1) ** d
    return [complex(sign * p[d - n]) for n in range(d + 1)]


def inverse_killing_form(rep: Representation, tol: float = DEFAULT_RANK_TOL) -> np.ndarray:
    K = killing_form(rep.algebra)
    rank = killing_rank(rep.algebra, tol)
    if rank < rep.algebra.dim:
        raise ValueError(
            f"Killing form of {rep.algebra.name!r} is singular (rank {rank} < {rep.algebra.dim}); "
            "the quadratic Casimir needs a semisimple algebra"
        )
    return np.linalg.inv(K)


def quadratic_casimir(rep: Representation, tol: float = DEFAULT_RANK_TOL) -> np.ndarray:
    """C_2 = sum_ab K^{ab} R_a R_b with K^{ab} the inverse Killing form."""
    K_inv = inverse_killing_form(rep, tol)
    R = rep.matrices
    C2 = np.einsum("ab,aij,bjk->ik", K_inv, R, R)
    logger.debug(f"quadratic_casimir on {rep.name or rep.algebra.name}: dim {rep.dim_rep}")
    return C2


def centrality_defect(rep: Representation, op: np.ndarray) -> float:
    """max_a ||[op, R_a]||_max."""
    if rep.dim_rep == 0:
        return 0.0
    return max(float(np.max(np.abs(commutator(op, R)))) for R in rep.matrices)


@dataclass(frozen=True)
class CasimirReport:
    casimir: np.ndarray
    eigenvalues: List[float]
    centrality_defect: float
    scalar_defect: float
    blocks: List[Tuple[float, int]]

    @property
    def relative_centrality(self) -> float:
        scale = float(np.max(np.abs(self.casimir))) if self.casimir.size else 0.0
        return self.centrality_defect / scale if scale > 0 else self.centrality_defect


def casimir_report(rep: Representation, tol: float = DEFAULT_RANK_TOL, block_tol: float = 1e-8) -> CasimirReport:
    """
    Quadratic Casimir with its centrality defect and the eigenvalue blocks
    (value, multiplicity). `scalar_defect` is the spread of the eigenvalues,
    which vanishes on an irreducible representation.
    """
    C2 = quadratic_casimir(rep, tol)
    H = (C2 + C2.conj().T) / 2.0
    values = np.linalg.eigvalsh(H) if H.size else np.zeros(0)
    blocks: List[Tuple[float, int]] = []
    scale = max(1.0, float(np.max(np.abs(values)))) if values.size else 1.0
    for v in values:
        if blocks and abs(v - blocks[-1][0]) <= block_tol * scale:
            value, count = blocks[-1]
            blocks[-1] = (value, count + 1)
        else:
            blocks.append((float(v), 1))
    spread = float(values[-1] - values[0]) if values.size else 0.0
    return CasimirReport(
        casimir=C2,
        eigenvalues=values.tolist(),
        centrality_defect=centrality_defect(rep, C2),
        scalar_defect=spread,
        blocks=blocks,
    )


def axis_generator(matrices, metric: np.ndarray, alpha: int, beta: int):
    """
    Operator for L_{alpha beta} with any axis order, from the stack of L_ab (a < b).
    Works for dense arrays and scipy sparse matrices alike.
    """
    if alpha == beta:
        return None
    n = len(metric)
    a, b = min(alpha, beta), max(alpha, beta)
    idx = a * n - a * (a + 1) // 2 + (b - a - 1)
    return matrices[idx] if alpha < beta else -matrices[idx]


def _require_metric(rep: Representation) -> np.ndarray:
    if rep.metric is None:
        raise ValueError(f"{rep.name or rep.algebra.name} has no axis metric; trace invariants need an orthogonal-family rep")
    return rep.metric


def lowered_table(matrices, metric: np.ndarray) -> List[List[Optional[object]]]:
    """Table T[alpha][beta] = eta^{alpha alpha} L_{alpha beta} (None on the diagonal)."""
    n = len(metric)
    table = []
    for alpha in range(n):
        row = []
        for beta in range(n):
            op = axis_generator(matrices, metric, alpha, beta)
            row.append(None if op is None else metric[alpha] * op)
        table.append(row)
    return table


def trace_invariant(rep: Representation, order: int) -> np.ndarray:
    """
    The operator Tr(Lambda^order) = sum Lambda^{a1}_{a2} Lambda^{a2}_{a3} ... Lambda^{an}_{a1}
    with Lambda^alpha_beta = eta^{alpha alpha} L_{alpha beta}, as a matrix on the rep space.
    """
    if order < 1:
        raise ValueError(f"trace_invariant order must be >= 1, got {order}")
    metric = _require_metric(rep)
    n = len(metric)
    d = rep.dim_rep
    table = lowered_table(rep.matrices, metric)

    # V[alpha][beta] holds the (alpha, beta) operator entry of Lambda^m.
    V = [[np.zeros((d, d), dtype=complex) if table[a][b] is None else table[a][b].copy() for b in range(n)] for a in range(n)]
    for _ in range(order - 1):
        V = [
            [sum((table[a][g] @ V[g][b] for g in range(n) if table[a][g] is not None), np.zeros((d, d), dtype=complex)) for b in range(n)]
            for a in range(n)
        ]
    return sum((V[a][a] for a in range(n)), np.zeros((d, d), dtype=complex))


def trace_power_expectation(matrices, metric: Sequence[float], vector: np.ndarray, order: int) -> complex:
    """
    <v| Tr(Lambda^order) |v> without forming the operator: the table entries
    are applied to vectors only, so sparse matrices of large symmetric powers
    are fine.
    """
    if order < 1:
        raise ValueError(f"trace power order must be >= 1, got {order}")
    metric = np.asarray(metric, dtype=float)
    n = len(metric)
    table = lowered_table(matrices, metric)
    v = np.asarray(vector, dtype=complex)
    zero = np.zeros_like(v)

    # W[alpha][beta] = (Lambda^m)^alpha_beta |v>, starting from m = 0.
    W = [[v if a == b else zero for b in range(n)] for a in range(n)]
    for _ in range(order):
        W = [
            [sum((table[a][g] @ W[g][b] for g in range(n) if table[a][g] is not None), zero) for b in range(n)]
            for a in range(n)
        ]
    return complex(np.vdot(v, sum((W[a][a] for a in range(n)), zero)))


def lambda2_terms(rep: Representation, x_axis: str = "X", y_axis: str = "Y") -> Dict[str, np.ndarray]:
    """
    Half of Tr(Lambda^2) split by sector,
        -eta eta L_XY^2,  -sum_mu eta eta L_{mu X}^2,  -sum_mu eta eta L_{mu Y}^2,
        -sum_{mu<nu} eta eta L_{mu nu}^2,
    keyed xy, x, y and lorentz. The four terms sum to trace_invariant(rep, 2) / 2.
    """
    metric = _require_metric(rep)
    if rep.axes is None or x_axis not in rep.axes or y_axis not in rep.axes:
        raise ValueError(f"{rep.name or rep.algebra.name} has no {x_axis}/{y_axis} axes")
    X, Y = rep.axes.index(x_axis), rep.axes.index(y_axis)
    d = rep.dim_rep
    terms = {key: np.zeros((d, d), dtype=complex) for key in ("xy", "x", "y", "lorentz")}
    for idx, (a, b) in enumerate(orthogonal_pairs(rep.axes)):
        L = rep.matrices[idx]
        term = -metric[a] * metric[b] * (L @ L)
        pair = {a, b}
        if pair == {X, Y}:
            terms["xy"] += term
        elif X in pair:
            terms["x"] += term
        elif Y in pair:
            terms["y"] += term
        else:
            terms["lorentz"] += term
    return terms


def joint_spectrum(ops: Sequence[np.ndarray], hermitize: bool = True) -> Tuple[float, np.ndarray]:
    """
    Commutation defect of a family of operators and their joint eigenvalues.

    The family is diagonalized through one generic real combination; the rows
    of the returned array are the eigenvalue tuples of (i*op if hermitize),
    sorted lexicographically.
    """
    mats = [1j * np.asarray(op) if hermitize else np.asarray(op) for op in ops]
    defect = 0.0
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            defect = max(defect, float(np.max(np.abs(commutator(mats[i], mats[j])))))
    weights = 1.0 / np.sqrt(np.array([2.0, 3.0, 5.0, 7.0, 11.0, 13.0, 17.0, 19.0])[: len(mats)] + 1.0)
    H = sum(w * m for w, m in zip(weights, mats))
    H = (H + H.conj().T) / 2.0
    _, vectors = np.linalg.eigh(H)
    rows = np.array([[float(np.real(np.vdot(vectors[:, c], m @ vectors[:, c]))) for m in mats] for c in range(vectors.shape[1])])
    rows = np.round(rows, 10) + 0.0
    order = np.lexsort(rows.T[::-1])
    return defect, rows[order]
