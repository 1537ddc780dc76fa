# The MIT License (MIT)
# Copyright © 2025 GQ developers
# See GQ/__init__.py for the full license text.

"""
Vacuum invariants of the simplified space-time operators: the trace
conditions c^(2n) = l^(2n), the ordered wave operator, the commuting set used
for Green's functions and the quantum-number bookkeeping.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np
import pandas as pd
import scipy.sparse as sp
from tqdm import tqdm

from GQ.algebra.core import killing_form
from GQ.algebra.homotopy import boson_axes
from GQ.algebra.named import orthogonal_algebra
from GQ.representation.core import DEFAULT_DIMENSION_CAP
from GQ.representation.invariants import joint_spectrum, trace_power_expectation
from GQ.representation.oscillator import QuantumConstants
from GQ.stime.operators import SPARSE_DIMENSION_CAP, StimeOperators, stime_operators
from GQ.utils.logging import logger

LAMBDA2_COLUMNS = ["k", "value", "target", "ratio", "cross_term", "mixed_xy"]
LAMBDA4_COLUMNS = ["k", "value", "target", "ratio"]
COMMUTING_SET = (("0", "X"), ("1", "Y"), ("2", "3"))


def _expect(A, B, v: np.ndarray) -> complex:
    """<v| A B |v> computed as <A^dag v, B v>."""
    return complex(np.vdot(A.conj().T @ v, B @ v))


@dataclass(frozen=True)
class Lambda2Report:
    k: int
    value: float
    target: float
    ratio: float
    cross_term: float
    mixed_xy: float

    @property
    def cross_term_relative(self) -> float:
        return abs(self.cross_term) / abs(self.value) if self.value else float("inf")

    def cross_term_cancels(self, rel_tol: float = 1e-9) -> bool:
        return self.cross_term_relative <= rel_tol

    def as_row(self) -> Dict[str, float]:
        return {name: getattr(self, name) for name in LAMBDA2_COLUMNS}


def _require_compact(ops: StimeOperators, what: str) -> None:
    if ops.signature != "compact":
        raise ValueError(f"{what} needs the compact signature (real expectations), got {ops.signature!r}")


def lambda2_check(ops: StimeOperators) -> Lambda2Report:
    """
    c^(2) = <vac| Tr(Lambda^2) |vac> / 2 against l^2.

    `cross_term` is sum_mu eta^{mu mu} <L_{X mu}^2 + L_{Y mu}^2> on the vacuum,
    the term expected to vanish for an L_XY eigenvector. It does not: it is
    -4 l on the extreme-weight vacuum and accounts for the whole excess of
    c^(2) over l^2. `mixed_xy` is sum_mu eta^{mu mu} <{L_{X mu}, L_{Y mu}}>,
    which does vanish there.
    """
    _require_compact(ops, "lambda2_check")
    v = ops.vacuum
    value = 0.5 * trace_power_expectation(ops.generators, ops.metric, v, 2)
    mixed, same = 0.0 + 0.0j, 0.0 + 0.0j
    for mu in range(4):
        LX, LY = ops.L("X", str(mu)), ops.L("Y", str(mu))
        mixed += ops.metric[mu] * (_expect(LX, LY, v) + _expect(LY, LX, v))
        same += ops.metric[mu] * (_expect(LX, LX, v) + _expect(LY, LY, v))
    target = float(ops.l**2)
    report = Lambda2Report(
        k=ops.l,
        value=float(value.real),
        target=target,
        ratio=float(value.real) / target,
        cross_term=float(same.real),
        mixed_xy=float(abs(mixed)),
    )
    if not report.cross_term_cancels():
        logger.warning(
            f"lambda2_check k={ops.l}: cross term {report.cross_term:.6g} does not vanish on the vacuum "
            f"({report.cross_term_relative:.3g} of c^(2))"
        )
    logger.debug(f"lambda2_check k={ops.l}: {report}")
    return report


def compact_sym_power(k: int, cap: int = SPARSE_DIMENSION_CAP) -> StimeOperators:
    rep_kind = "defining" if k == 1 else "sym_power"
    return stime_operators("compact", QuantumConstants.for_stime(k), rep_kind, k, cap=cap)


@dataclass(frozen=True)
class Lambda2Sweep:
    frame: pd.DataFrame
    constant: float

    @property
    def monotone(self) -> bool:
        gaps = np.abs(self.frame["ratio"].to_numpy() - 1.0)
        return bool(np.all(np.diff(gaps) < 0))


def lambda2_sweep(ks: Iterable[int] = (2, 4, 8, 16), cap: int = SPARSE_DIMENSION_CAP, progress: bool = False) -> Lambda2Sweep:
    """
    lambda2_check over compact Sym^k; `constant` is the least-squares C in
    ratio - 1 = C / k.
    """
    rows = [lambda2_check(compact_sym_power(int(k), cap)).as_row() for k in tqdm(list(ks), desc="lambda2", disable=not progress)]
    frame = pd.DataFrame(rows, columns=LAMBDA2_COLUMNS)
    inv_k = 1.0 / frame["k"].to_numpy(dtype=float)
    excess = frame["ratio"].to_numpy() - 1.0
    constant = float(np.dot(excess, inv_k) / np.dot(inv_k, inv_k))
    logger.info(f"lambda2_sweep: ratios {frame['ratio'].tolist()}, C = {constant:.6g}")
    return Lambda2Sweep(frame, constant)


def lambda4_report(ks: Iterable[int] = (1, 2, 4, 8), cap: int = SPARSE_DIMENSION_CAP) -> pd.DataFrame:
    """c^(4) = <vac| Tr(Lambda^4) |vac> / 2 next to l^4. Report only."""
    rows = []
    for k in ks:
        ops = compact_sym_power(int(k), cap)
        value = 0.5 * trace_power_expectation(ops.generators, ops.metric, ops.vacuum, 4).real
        target = float(k) ** 4
        rows.append({"k": int(k), "value": float(value), "target": target, "ratio": float(value) / target})
    return pd.DataFrame(rows, columns=LAMBDA4_COLUMNS)


def wave_operator(ops: StimeOperators, m: float = 0.0) -> sp.csr_matrix:
    """A1 = sum_mu eta^{mu mu} p_mu i p_mu + m^2 i, in that order."""
    i_hat = ops.i_hat
    out = m**2 * i_hat
    for mu, p in enumerate(ops.p):
        out = out + ops.metric[mu] * (p @ i_hat @ p)
    return sp.csr_matrix(out)


def _max_abs(M) -> float:
    M = sp.csr_matrix(M)
    return float(np.max(np.abs(M.data))) if M.nnz else 0.0


@dataclass(frozen=True)
class WaveReport:
    anti_hermitian_defect: float
    ordering_residual: float
    singular_residual: float
    scale: float


def wave_report(ops: StimeOperators, m: float = 0.0, window: float = 1.0) -> WaveReport:
    """
    Relative anti-Hermitian defect of A1, the ordering residual
    ||A1 - i sum eta p p - m^2 i||, and the spectral-norm residual against
    the singular form -i (p^2 + m^2) on the weight window.
    """
    A = wave_operator(ops, m)
    p_squared = sp.csr_matrix((ops.dim, ops.dim), dtype=complex)
    for mu, p in enumerate(ops.p):
        p_squared = p_squared + ops.metric[mu] * (p @ p)
    identity = sp.identity(ops.dim, format="csr", dtype=complex)
    reordered = ops.i_hat @ (p_squared + m**2 * identity)
    singular = -1j * (p_squared + m**2 * identity)

    idx = ops.window(window)
    block = (A - singular).tocsr()[idx, :][:, idx].toarray()
    scale = _max_abs(A)
    return WaveReport(
        anti_hermitian_defect=_max_abs(A + A.conj().T) / scale if scale else 0.0,
        ordering_residual=_max_abs(A - reordered),
        singular_residual=float(np.linalg.norm(block, 2)) if block.size else 0.0,
        scale=scale,
    )


def simplified_dimension(N_x: int) -> int:
    """Dimension 2 N_x + 2 of the simplified boson algebra."""
    if N_x < 1:
        raise ValueError(f"simplified_dimension needs N_x >= 1, got {N_x}")
    return 2 * N_x + 2


def dimension_crosscheck(N_x: int) -> Dict[str, object]:
    """simplified_dimension next to the io-axis count of simplified_boson, N_x + 2."""
    formula = simplified_dimension(N_x)
    axes = len(boson_axes(N_x))
    return {
        "N_x": N_x,
        "simplified_dimension": formula,
        "io_axis_count": axes,
        "orthogonal_dimension": axes * (axes - 1) // 2,
        "discrepancy": formula != axes,
    }


@dataclass(frozen=True)
class CommutingSetReport:
    labels: List[str]
    defect: float
    joint: Optional[np.ndarray]


def commuting_set_spectrum(ops: StimeOperators, dense_cap: int = DEFAULT_DIMENSION_CAP) -> CommutingSetReport:
    """
    Commutation defect of {L_0X, L_1Y, L_23}; the joint spectrum of i*L for
    the compact signature when the space is small enough to diagonalize densely.
    """
    mats = [ops.L(a, b) for a, b in COMMUTING_SET]
    labels = [f"L_{a}{b}" for a, b in COMMUTING_SET]
    defect = 0.0
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            defect = max(defect, _max_abs(mats[i] @ mats[j] - mats[j] @ mats[i]))
    joint = None
    if ops.signature == "compact" and ops.dim <= dense_cap:
        _, joint = joint_spectrum([sp.csr_matrix(M).toarray() for M in mats])
    return CommutingSetReport(labels, defect, joint)


def quantum_number_report(ops: StimeOperators) -> Dict[str, float]:
    """
    N = max |spec(i r)| / delta_r next to l_X, and the two readings of l_X^2:
    the extreme weight squared and the quadratic Casimir on the vacuum.
    """
    i_r = (1j * ops.r).toarray() if ops.dim <= DEFAULT_DIMENSION_CAP else None
    if i_r is not None:
        top = float(np.max(np.abs(np.linalg.eigvalsh((i_r + i_r.conj().T) / 2.0))))
    else:
        # i r is diagonal in the vacuum-adapted basis.
        top = float(np.max(np.abs((1j * ops.r).diagonal().real)))
    N = top / ops.qc.delta_r

    algebra = orthogonal_algebra(ops.metric, ops.axes)
    K_inv = np.linalg.inv(killing_form(algebra))
    v = ops.vacuum
    images = [G @ v for G in ops.generators]
    adjoints = [G.conj().T @ v for G in ops.generators]
    casimir = sum(
        K_inv[a, b] * np.vdot(adjoints[a], images[b])
        for a in range(len(images))
        for b in range(len(images))
        if K_inv[a, b] != 0.0
    )
    return {
        "N": N,
        "l_X": float(ops.qc.l_X if ops.qc.l_X is not None else ops.l),
        "extreme_weight_squared": float(ops.l**2),
        "casimir_on_vacuum": float(np.real(casimir)),
        "half_trace_lambda2": float(0.5 * trace_power_expectation(ops.generators, ops.metric, v, 2).real),
    }
