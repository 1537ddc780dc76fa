# The MIT License (MIT)
# Copyright © 2025 GQ developers
# See GQ/__init__.py for the full license text.

"""
Finite-dimensional matrix representations of the algebras in GQ.algebra.
"""

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp

from GQ.algebra.core import LieAlgebra
from GQ.algebra.named import (
    SPACETIME_AXES,
    orthogonal_algebra,
    orthogonal_generators,
    so3,
)
from GQ.utils.logging import logger

DEFAULT_DIMENSION_CAP = 5000
SPECTRUM_IMAG_TOL = 1e-8
SPECTRUM_UNIFORM_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class Representation:
    """
    One d x d complex matrix per basis element of `algebra`.

    `metric` and `axes` are set for the orthogonal family (defining reps and
    their symmetric powers): they describe the axis space the generators L_ab
    rotate, not the representation space.
    """

    algebra: LieAlgebra
    matrices: np.ndarray
    metric: Optional[np.ndarray] = None
    axes: Optional[Tuple[str, ...]] = None
    name: str = ""

    def __post_init__(self):
        mats = np.asarray(self.matrices, dtype=complex)
        if mats.ndim != 3 or mats.shape[0] != self.algebra.dim or mats.shape[1] != mats.shape[2]:
            raise ValueError(
                f"Representation of {self.algebra.name!r} needs {self.algebra.dim} square matrices, "
                f"got array of shape {mats.shape}"
            )
        mats.setflags(write=False)
        object.__setattr__(self, "matrices", mats)
        if self.metric is not None:
            object.__setattr__(self, "metric", np.asarray(self.metric, dtype=float))
        if self.axes is not None:
            object.__setattr__(self, "axes", tuple(self.axes))

    @property
    def dim_rep(self) -> int:
        return self.matrices.shape[1]

    def __getitem__(self, label: str) -> np.ndarray:
        return self.matrices[self.algebra.index(label)]

    def element(self, coeffs: Sequence[complex]) -> np.ndarray:
        """Representation matrix of sum_a coeffs[a] e_a."""
        coeffs = np.asarray(coeffs)
        if coeffs.shape != (self.algebra.dim,):
            raise ValueError(f"{self.algebra.dim} coefficients needed, got {coeffs.shape}")
        return np.tensordot(coeffs, self.matrices, axes=1)

    def scale(self) -> float:
        return float(np.max(np.abs(self.matrices))) if self.matrices.size else 0.0

    def anti_hermitian_defect(self) -> float:
        m = self.matrices
        return float(np.max(np.abs(m + np.conj(m.transpose(0, 2, 1))))) if m.size else 0.0


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: List[float]
    levels: List[float]
    spacing: float
    min: float
    max: float
    uniform: bool
    degeneracies: List[int] = field(default_factory=list)


def commutator(A, B):
    return A @ B - B @ A


def rep_defect(rep: Representation) -> float:
    """max over (a, b) of || [R_a, R_b] - sum_k c[a,b,k] R_k ||_max."""
    R = rep.matrices
    c = rep.algebra.structure
    worst = 0.0
    for a in range(rep.algebra.dim):
        for b in range(a + 1, rep.algebra.dim):
            expected = np.tensordot(c[a, b], R, axes=1)
            worst = max(worst, float(np.max(np.abs(commutator(R[a], R[b]) - expected))))
    return worst


def ladder_matrices(two_l: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Hermitian J_x, J_y, J_z for spin l = two_l / 2 in the J_z basis ordered
    m = l, l-1, ..., -l, with Condon-Shortley (real, positive) ladder entries.
    """
    if two_l < 0:
        raise ValueError(f"two_l must be non-negative, got {two_l}")
    j = two_l / 2.0
    m = j - np.arange(two_l + 1)
    # J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>, i.e. entry [i-1, i].
    jplus = np.diag(np.sqrt(j * (j + 1.0) - m[1:] * (m[1:] + 1.0)), 1)
    jx = 0.5 * (jplus + jplus.T)
    jy = -0.5j * (jplus - jplus.T)
    jz = np.diag(m)
    return jx.astype(complex), jy, jz.astype(complex)


def so3_irrep(two_l: int, algebra: Optional[LieAlgebra] = None) -> Representation:
    """
    The (two_l + 1)-dimensional irrep as anti-Hermitian R_a = -i J_a, which
    satisfy [R_1, R_2] = R_3 and cyclic. `algebra` defaults to so(3) on
    (J1, J2, J3); any 3-dim algebra with the same cyclic tensor may be passed.
    """
    algebra = algebra or so3()
    if algebra.dim != 3:
        raise ValueError(f"so3_irrep needs a 3-dim algebra, got {algebra.name!r} of dim {algebra.dim}")
    jx, jy, jz = ladder_matrices(two_l)
    mats = np.stack([-1j * jx, -1j * jy, -1j * jz])
    logger.debug(f"so3_irrep two_l={two_l}: dim {two_l + 1}")
    return Representation(algebra, mats, name=f"R(l={two_l / 2:g})")


def signature_metric(p: int, q: int) -> np.ndarray:
    """q timelike (-1) axes first, then p spacelike (+1) axes."""
    return np.array([-1.0] * q + [1.0] * p)


def defining_rep(p: int, q: int = 0, axes: Optional[Sequence[str]] = None) -> Representation:
    """
    Defining representation of so(p, q) on R^(p+q) with
    (L_ab)[g, d] = eta_bd delta_ga - eta_ad delta_gb.

    Six axes default to the space-time labels (0, 1, 2, 3, X, Y).
    """
    n = p + q
    if n < 2 or p < 0 or q < 0:
        raise ValueError(f"defining_rep needs p, q >= 0 and p + q >= 2, got ({p}, {q})")
    metric = signature_metric(p, q)
    if axes is None:
        axes = SPACETIME_AXES if n == 6 else tuple(str(i + 1) for i in range(n))
    algebra = orthogonal_algebra(metric, axes)
    mats = orthogonal_generators(metric).astype(complex)
    return Representation(algebra, mats, metric=metric, axes=tuple(axes), name=f"defining {algebra.name}")


def defining_rep_for_metric(metric: Sequence[float], axes: Sequence[str]) -> Representation:
    """Defining rep for an arbitrary ordering of +-1 metric entries over `axes`."""
    metric = np.asarray(metric, dtype=float)
    algebra = orthogonal_algebra(metric, axes)
    mats = orthogonal_generators(metric).astype(complex)
    return Representation(algebra, mats, metric=metric, axes=tuple(axes), name=f"defining {algebra.name}")


def occupation_basis(d: int, k: int) -> List[Tuple[int, ...]]:
    """Occupation tuples (n_0..n_{d-1}) with sum k, the Fock basis of Sym^k(C^d)."""
    states = []
    for combo in combinations_with_replacement(range(d), k):
        occ = [0] * d
        for i in combo:
            occ[i] += 1
        states.append(tuple(occ))
    return states


def symmetric_power_matrices(
    matrices: np.ndarray,
    k: int,
    cap: int = DEFAULT_DIMENSION_CAP,
    sparse: bool = False,
):
    """
    Leibniz action of each one-particle matrix X on Sym^k, i.e. the k-boson
    block of sum_ij X[i, j] a_i^dag a_j, in the orthonormal occupation basis.

    Returns (list of matrices, occupation basis). Anti-Hermitian inputs give
    anti-Hermitian outputs. Raises ValueError when the dimension exceeds `cap`.
    """
    if k < 1:
        raise ValueError(f"symmetric power needs k >= 1, got {k}")
    matrices = np.asarray(matrices)
    d = matrices.shape[1]
    dim = comb(d + k - 1, k)
    if dim > cap:
        raise ValueError(f"Sym^{k} of a {d}-dim rep has dimension {dim}, above the cap {cap}")

    states = occupation_basis(d, k)
    index: Dict[Tuple[int, ...], int] = {s: i for i, s in enumerate(states)}

    rows, cols, src_i, src_j, amps = [], [], [], [], []
    for col, occ in enumerate(states):
        for j in range(d):
            if occ[j] == 0:
                continue
            for i in range(d):
                if i == j:
                    rows.append(col)
                    amp = float(occ[j])
                else:
                    new = list(occ)
                    new[j] -= 1
                    new[i] += 1
                    rows.append(index[tuple(new)])
                    amp = np.sqrt(occ[j] * (occ[i] + 1.0))
                cols.append(col)
                src_i.append(i)
                src_j.append(j)
                amps.append(amp)

    rows = np.asarray(rows)
    cols = np.asarray(cols)
    amps = np.asarray(amps)
    src_i = np.asarray(src_i)
    src_j = np.asarray(src_j)

    out = []
    for X in matrices:
        data = X[src_i, src_j] * amps
        M = sp.coo_matrix((data, (rows, cols)), shape=(dim, dim)).tocsr()
        M.eliminate_zeros()
        out.append(M if sparse else M.toarray())
    logger.debug(f"symmetric power k={k} of dim {d}: dim {dim}, sparse={sparse}")
    return out, states


def sym_power_rep(rep: Representation, k: int, cap: int = DEFAULT_DIMENSION_CAP) -> Representation:
    if k == 1:
        return rep
    mats, _ = symmetric_power_matrices(rep.matrices, k, cap=cap)
    return Representation(
        rep.algebra,
        np.stack(mats),
        metric=rep.metric,
        axes=rep.axes,
        name=f"Sym^{k} {rep.name}".strip(),
    )


def _levels(values: np.ndarray, tol: float) -> Tuple[List[float], List[int]]:
    levels, counts = [], []
    for v in values:
        if levels and abs(v - levels[-1]) <= tol:
            counts[-1] += 1
        else:
            levels.append(float(v))
            counts.append(1)
    return levels, counts


def spectrum(op: np.ndarray, hermitize: bool = False) -> SpectrumReport:
    """
    Sorted real spectrum of a Hermitian operator, or of i*op when `hermitize`
    (the anti-Hermitian generators). Raises ValueError when an eigenvalue has an
    imaginary part above 1e-8.
    """
    op = np.asarray(op)
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise ValueError(f"spectrum needs a square matrix, got shape {op.shape}")
    H = 1j * op if hermitize else op
    eig = np.linalg.eigvals(H)
    worst_imag = float(np.max(np.abs(eig.imag))) if eig.size else 0.0
    if worst_imag > SPECTRUM_IMAG_TOL:
        raise ValueError(f"Operator is not Hermitian: eigenvalue imaginary part {worst_imag:.3e}")
    values = np.sort(eig.real)

    scale = max(1.0, float(np.max(np.abs(values)))) if values.size else 1.0
    tol = SPECTRUM_UNIFORM_TOL * scale
    levels, counts = _levels(values, tol)
    gaps = np.diff(levels)
    spacing = float(np.mean(gaps)) if gaps.size else 0.0
    uniform = bool(np.all(np.abs(gaps - spacing) <= tol)) if gaps.size else True
    return SpectrumReport(
        eigenvalues=values.tolist(),
        levels=levels,
        spacing=spacing,
        min=float(values[0]) if values.size else 0.0,
        max=float(values[-1]) if values.size else 0.0,
        uniform=uniform,
        degeneracies=counts,
    )


def extreme_weight_vector(op: np.ndarray) -> Tuple[np.ndarray, float]:
    """
    Unit eigenvector of the Hermitian matrix i*op with the largest eigenvalue,
    and that eigenvalue. For a degenerate top eigenvalue the first eigh vector
    is returned.
    """
    H = 1j * np.asarray(op)
    H = (H + H.conj().T) / 2.0
    values, vectors = np.linalg.eigh(H)
    return vectors[:, -1], float(values[-1])


def weight_window(op: np.ndarray, width: float = 1.0) -> Tuple[np.ndarray, np.ndarray, float]:
    """
    Orthonormal basis P (columns) of the eigenspaces of i*op with eigenvalue
    >= top - width, the weights, and the top weight.
    """
    H = 1j * np.asarray(op)
    H = (H + H.conj().T) / 2.0
    values, vectors = np.linalg.eigh(H)
    top = float(values[-1])
    keep = values >= top - width - 1e-9 * max(1.0, abs(top))
    return vectors[:, keep], values[keep], top


def vacuum_adapted_basis(axes: Sequence[str], x_axis: str = "X", y_axis: str = "Y") -> Tuple[np.ndarray, np.ndarray]:
    """
    Unitary U whose columns are u+ = (e_X - i e_Y)/sqrt(2), the remaining axes
    in order, then u- = (e_X + i e_Y)/sqrt(2), together with the i*L_XY weights
    (+1, 0, ..., 0, -1) of those columns. Both X and Y must be spacelike.
    """
    axes = tuple(axes)
    if x_axis not in axes or y_axis not in axes:
        raise ValueError(f"axes {list(axes)} lack {x_axis!r} or {y_axis!r}")
    n = len(axes)
    X, Y = axes.index(x_axis), axes.index(y_axis)
    U = np.zeros((n, n), dtype=complex)
    U[X, 0], U[Y, 0] = 1.0 / np.sqrt(2.0), -1j / np.sqrt(2.0)
    col = 1
    for a in range(n):
        if a not in (X, Y):
            U[a, col] = 1.0
            col += 1
    U[X, n - 1], U[Y, n - 1] = 1.0 / np.sqrt(2.0), 1j / np.sqrt(2.0)
    weights = np.zeros(n)
    weights[0], weights[-1] = 1.0, -1.0
    return U, weights
