# The MIT License (MIT)
# Copyright © 2025 GQ developers
# See GQ/__init__.py for the full license text.

"""
Quantification of a one-quantum mode space V into a many-quantum space.

For sigma in {+, -, 0} the creators a_m and annihilators c^n satisfy

    c^n a_m - sigma a_m c^n = hbar delta^n_m

bosonically (sigma = +, truncated by total occupation), fermionically
(sigma = -, exact, Jordan-Wigner strings) or for free statistics
(sigma = 0, words of bounded length). Operators are scipy CSR matrices.
"""

from dataclasses import dataclass
from itertools import product
from math import comb, sqrt
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.sparse as sp

from GQ.representation.core import DEFAULT_DIMENSION_CAP, Representation, occupation_basis
from GQ.utils.logging import logger

SIGMAS = ("+", "-", "0")
SIGMA_VALUES = {"+": 1.0, "-": -1.0, "0": 0.0}
MAX_FERMION_MODES = 12
CYCLIC_TOL = 1e-10

ModeLabel = Union[str, int]


@dataclass(frozen=True)
class IoSpace:
    """
    W = V + V^D: input modes 0..dim_v-1 and output modes dim_v..2 dim_v-1,
    paired one to one.
    """

    dim_v: int
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.dim_v < 1:
            raise ValueError(f"io space needs dim_v >= 1, got {self.dim_v}")
        labels = tuple(self.labels) or tuple(str(i + 1) for i in range(self.dim_v))
        if len(labels) != self.dim_v or len(set(labels)) != self.dim_v:
            raise ValueError(f"io space needs {self.dim_v} distinct mode labels, got {list(labels)}")
        object.__setattr__(self, "labels", labels)

    @property
    def inputs(self) -> range:
        return range(self.dim_v)

    @property
    def outputs(self) -> range:
        return range(self.dim_v, 2 * self.dim_v)

    def output_of(self, mode: int) -> int:
        return self.dim_v + mode

    def index(self, label: ModeLabel) -> int:
        if isinstance(label, (int, np.integer)) and not isinstance(label, bool):
            if 0 <= int(label) < self.dim_v:
                return int(label)
            raise ValueError(f"Unknown mode index {label}; io space has {self.dim_v} modes")
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise ValueError(f"Unknown mode label {label!r}; known: {list(self.labels)}") from None


@dataclass(frozen=True)
class Truncation:
    kind: str
    cutoff: Optional[int]
    boundary: Tuple[int, ...] = ()


@dataclass(frozen=True, eq=False)
class QuantifiedSystem:
    sigma: str
    io: IoSpace
    creators: List[sp.csr_matrix]
    annihilators: List[sp.csr_matrix]
    vacuum: np.ndarray
    states: List[tuple]
    truncation: Truncation
    hbar: float = 1.0

    @property
    def space_dim(self) -> int:
        return len(self.states)

    @property
    def sigma_value(self) -> float:
        return SIGMA_VALUES[self.sigma]

    def creator(self, label: ModeLabel) -> sp.csr_matrix:
        return self.creators[self.io.index(label)]

    def annihilator(self, label: ModeLabel) -> sp.csr_matrix:
        return self.annihilators[self.io.index(label)]

    def field(self, label: ModeLabel) -> sp.csr_matrix:
        """phi = (a + c) / sqrt(2)."""
        m = self.io.index(label)
        return ((self.creators[m] + self.annihilators[m]) / np.sqrt(2.0)).tocsr()

    def number_operator(self) -> sp.csr_matrix:
        return quantified_action(self, np.eye(self.io.dim_v))

    def interior_mask(self) -> np.ndarray:
        mask = np.ones(self.space_dim, dtype=bool)
        mask[list(self.truncation.boundary)] = False
        return mask


def _bosonic(dim_v: int, cutoff: int, hbar: float, cap: int):
    dim = comb(dim_v + cutoff, cutoff)
    if dim > cap:
        raise ValueError(f"bosonic space with {dim_v} modes and cutoff {cutoff} has dimension {dim}, above the cap {cap}")
    states: List[tuple] = []
    for total in range(cutoff + 1):
        states.extend(occupation_basis(dim_v, total))
    index = {s: i for i, s in enumerate(states)}

    creators = []
    for m in range(dim_v):
        rows, cols, data = [], [], []
        for col, occ in enumerate(states):
            if sum(occ) == cutoff:
                continue
            new = list(occ)
            new[m] += 1
            rows.append(index[tuple(new)])
            cols.append(col)
            data.append(sqrt((occ[m] + 1) * hbar))
        creators.append(sp.csr_matrix((data, (rows, cols)), shape=(dim, dim), dtype=complex))
    boundary = tuple(i for i, occ in enumerate(states) if sum(occ) == cutoff)
    return states, creators, Truncation("total-occupation", cutoff, boundary)


def _fermionic(dim_v: int, hbar: float):
    if dim_v > MAX_FERMION_MODES:
        raise ValueError(f"fermionic quantification is capped at {MAX_FERMION_MODES} modes, got {dim_v}")
    # Single mode on (|0>, |1>); Jordan-Wigner strings of Z on earlier modes.
    raise_one = sp.csr_matrix(np.array([[0.0, 0.0], [1.0, 0.0]]))
    parity = sp.csr_matrix(np.diag([1.0, -1.0]))
    eye = sp.identity(2, format="csr")

    creators = []
    for m in range(dim_v):
        op = sp.identity(1, format="csr")
        for j in range(dim_v):
            factor = parity if j < m else raise_one if j == m else eye
            op = sp.kron(op, factor, format="csr")
        creators.append((sqrt(hbar) * op).astype(complex).tocsr())
    states = list(product((0, 1), repeat=dim_v))
    return states, creators, Truncation("exact", None, ())


def _free(dim_v: int, cutoff: int, hbar: float, cap: int):
    dim = sum(dim_v**n for n in range(cutoff + 1))
    if dim > cap:
        raise ValueError(f"free space with {dim_v} modes and word length {cutoff} has dimension {dim}, above the cap {cap}")
    states: List[tuple] = []
    for n in range(cutoff + 1):
        states.extend(product(range(dim_v), repeat=n))
    index = {s: i for i, s in enumerate(states)}

    creators = []
    for m in range(dim_v):
        rows, cols = [], []
        for col, word in enumerate(states):
            if len(word) == cutoff:
                continue
            rows.append(index[(m,) + word])
            cols.append(col)
        data = np.full(len(rows), sqrt(hbar))
        creators.append(sp.csr_matrix((data, (rows, cols)), shape=(dim, dim), dtype=complex))
    boundary = tuple(i for i, word in enumerate(states) if len(word) == cutoff)
    return states, creators, Truncation("word-length", cutoff, boundary)


def quantify(
    sigma: str,
    dim_v: int,
    cutoff: int = 1,
    hbar: float = 1.0,
    labels: Sequence[str] = (),
    cap: int = DEFAULT_DIMENSION_CAP,
) -> QuantifiedSystem:
    """
    Many-quantum space over `dim_v` modes with statistics `sigma`.

    The vacuum is the empty state (first basis vector). `cutoff` bounds the
    total occupation (sigma = +) or the word length (sigma = 0) and is ignored
    for sigma = -.
    """
    if sigma not in SIGMAS:
        raise ValueError(f"sigma must be one of {SIGMAS}, got {sigma!r}")
    io = IoSpace(dim_v, tuple(labels))
    if hbar <= 0:
        raise ValueError(f"hbar must be positive, got {hbar}")
    if sigma != "-" and cutoff < 1:
        raise ValueError(f"cutoff must be >= 1, got {cutoff}")

    if sigma == "+":
        states, creators, truncation = _bosonic(dim_v, cutoff, hbar, cap)
    elif sigma == "-":
        states, creators, truncation = _fermionic(dim_v, hbar)
    else:
        states, creators, truncation = _free(dim_v, cutoff, hbar, cap)

    annihilators = [a.conj().T.tocsr() for a in creators]
    vacuum = np.zeros(len(states), dtype=complex)
    vacuum[0] = 1.0
    if truncation.boundary:
        logger.warning(f"quantify sigma={sigma}: truncated at cutoff {cutoff}, {len(truncation.boundary)} boundary states")
    logger.debug(f"quantify sigma={sigma} dim_v={dim_v}: space dim {len(states)}")
    return QuantifiedSystem(sigma, io, creators, annihilators, vacuum, states, truncation, hbar)


def relation_matrix(sys: QuantifiedSystem, n: int, m: int) -> sp.csr_matrix:
    """c^n a_m - sigma a_m c^n - hbar delta^n_m."""
    c, a = sys.annihilators[n], sys.creators[m]
    out = c @ a - sys.sigma_value * (a @ c)
    if n == m:
        out = out - sys.hbar * sp.identity(sys.space_dim, format="csr")
    return out.tocsr()


def _max_abs(M, columns: Optional[np.ndarray] = None) -> float:
    M = sp.csr_matrix(M)
    if columns is not None:
        M = M[:, columns]
    return float(np.max(np.abs(M.data))) if M.nnz else 0.0


def relation_defect(sys: QuantifiedSystem, include_boundary: bool = False) -> float:
    """
    Max entry of every c^n a_m - sigma a_m c^n - hbar delta relation and of the
    creator exchange relations a_m a_n - sigma a_n a_m (sigma = +-), restricted to
    columns off the truncation boundary unless `include_boundary`.
    """
    columns = None if include_boundary else np.flatnonzero(sys.interior_mask())
    d = sys.io.dim_v
    worst = 0.0
    for n in range(d):
        for m in range(d):
            worst = max(worst, _max_abs(relation_matrix(sys, n, m), columns))
    if sys.sigma != "0":
        for m in range(d):
            for n in range(m, d):
                a_m, a_n = sys.creators[m], sys.creators[n]
                worst = max(worst, _max_abs(a_m @ a_n - sys.sigma_value * (a_n @ a_m), columns))
    return worst


def quantified_action(sys: QuantifiedSystem, A1: np.ndarray) -> sp.csr_matrix:
    """
    Bilinear lift A = sum_mn a_m A1[m, n] c^n / hbar of a one-quantum operator.
    A1 = identity gives the number operator.
    """
    A1 = np.asarray(A1)
    d = sys.io.dim_v
    if A1.shape != (d, d):
        raise ValueError(f"one-quantum operator must be {d}x{d}, got {A1.shape}")
    out = sp.csr_matrix((sys.space_dim, sys.space_dim), dtype=complex)
    for m in range(d):
        for n in range(d):
            if A1[m, n] != 0:
                out = out + A1[m, n] * (sys.creators[m] @ sys.annihilators[n])
    return (out / sys.hbar).tocsr()


def green_function(sys: QuantifiedSystem, indices: Sequence[ModeLabel]) -> complex:
    """<vac| phi_{i1} ... phi_{in} |vac> with phi = (a + c) / sqrt(2)."""
    modes = [sys.io.index(label) for label in indices]
    v = sys.vacuum.copy()
    for m in reversed(modes):
        v = sys.creators[m] @ v + sys.annihilators[m] @ v
        v = v / np.sqrt(2.0)
    return complex(np.vdot(sys.vacuum, v))


def _pairings(positions: Tuple[int, ...]):
    """Perfect matchings of `positions` with the crossing count of each."""
    if not positions:
        yield [], 0
        return
    first, rest = positions[0], positions[1:]
    for j, partner in enumerate(rest):
        remaining = rest[:j] + rest[j + 1 :]
        for pairs, crossings in _pairings(remaining):
            # Chords (first, partner) cross every pair with exactly one end strictly between them.
            extra = sum(1 for p, q in pairs if (first < p < partner) != (first < q < partner))
            yield [(first, partner)] + pairs, crossings + extra


def wick_expansion(sys: QuantifiedSystem, indices: Sequence[ModeLabel]) -> complex:
    """
    Sum over pairings of products of two-point functions: every pairing for
    sigma = +, signed by crossing parity for sigma = -, non-crossing pairings
    only for sigma = 0.
    """
    labels = list(indices)
    if len(labels) % 2:
        return 0.0 + 0.0j
    two_point: Dict[Tuple[int, int], complex] = {}

    def G(i: int, j: int) -> complex:
        key = (sys.io.index(labels[i]), sys.io.index(labels[j]))
        if key not in two_point:
            two_point[key] = green_function(sys, [labels[i], labels[j]])
        return two_point[key]

    total = 0.0 + 0.0j
    for pairs, crossings in _pairings(tuple(range(len(labels)))):
        if sys.sigma == "0" and crossings:
            continue
        sign = -1.0 if sys.sigma == "-" and crossings % 2 else 1.0
        term = sign
        for i, j in pairs:
            term *= G(i, j)
        total += term
    return total


def _generators_of(source) -> List:
    if isinstance(source, QuantifiedSystem):
        return list(source.creators) + list(source.annihilators)
    if isinstance(source, Representation):
        return list(source.matrices)
    return list(source)


def cyclic_subspace(source, vacuum: np.ndarray, max_degree: int, tol: float = CYCLIC_TOL) -> np.ndarray:
    """
    Orthonormal columns spanning every monomial of degree <= max_degree in the
    generators applied to `vacuum`. `source` is a QuantifiedSystem (creators and
    annihilators), a Representation, or a list of matrices.
    """
    v = np.asarray(vacuum, dtype=complex)
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > 1e-9:
        raise ValueError(f"vacuum must be a unit vector, got norm {norm}")
    if max_degree < 0:
        raise ValueError(f"max_degree must be >= 0, got {max_degree}")
    generators = _generators_of(source)
    basis = [v]
    frontier = [v]
    for _ in range(max_degree):
        if len(basis) == v.size:
            break
        new = []
        for u in frontier:
            for g in generators:
                w = np.asarray(g @ u).ravel()
                scale = np.linalg.norm(w)
                if scale <= tol:
                    continue
                for _ in range(2):
                    Q = np.array(basis).T
                    w = w - Q @ (Q.conj().T @ w)
                n = np.linalg.norm(w)
                if n > tol * max(scale, 1.0):
                    w = w / n
                    basis.append(w)
                    new.append(w)
        if not new:
            break
        frontier = new
    return np.array(basis).T
