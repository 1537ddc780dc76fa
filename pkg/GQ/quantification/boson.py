# The MIT License (MIT)
# Copyright © 2025 GQ developers
# See GQ/__init__.py for the full license text.

"""
Simplified boson operators inside the compact orthogonal algebra on the
axes (1..N, X', Y'):

    q^n = delta_q L_{n X'},  p_n = delta_p L_{Y' n},  r = delta_r L_{X'Y'},

with i = delta_r L_{Y'X'} and the rotations L_mn left as regulators.
"""

from typing import Dict, List, Optional, Tuple

import numpy as np

from GQ.algebra.homotopy import boson_axes, boson_labels
from GQ.algebra.named import generator_label
from GQ.representation.core import (
    DEFAULT_DIMENSION_CAP,
    defining_rep_for_metric,
    extreme_weight_vector,
    sym_power_rep,
)
from GQ.representation.invariants import axis_generator
from GQ.representation.oscillator import OperatorSet, QuantumConstants
from GQ.utils.logging import logger

REP_KINDS = ("defining", "sym_power")


def simplified_boson(
    N: int,
    qc: QuantumConstants,
    rep_kind: str = "defining",
    k: Optional[int] = None,
    cap: int = DEFAULT_DIMENSION_CAP,
) -> OperatorSet:
    """
    Boson operators for N modes in the defining representation of so(N+2) or
    its k-th symmetric power. When qc.two_l is set it must equal 2k (2 for the
    defining representation) so that l delta_q delta_p = hbar refers to this rep.
    """
    if N < 1:
        raise ValueError(f"simplified_boson needs N >= 1 modes, got {N}")
    if rep_kind not in REP_KINDS:
        raise ValueError(f"rep_kind must be one of {REP_KINDS}, got {rep_kind!r}")
    if rep_kind == "sym_power" and (k is None or k < 1):
        raise ValueError(f"sym_power rep needs k >= 1, got {k}")
    l = 1 if rep_kind == "defining" else k
    if qc.two_l is not None and qc.two_l != 2 * l:
        raise ValueError(f"quantum constants are for two_l={qc.two_l}, but the {rep_kind} rep has l={l}")

    axes = boson_axes(N)
    rep = defining_rep_for_metric(np.ones(N + 2), axes)
    if rep_kind == "sym_power":
        rep = sym_power_rep(rep, k, cap=cap)

    def L(a: str, b: str) -> np.ndarray:
        return axis_generator(rep.matrices, rep.metric, axes.index(a), axes.index(b))

    Xp, Yp = "X'", "Y'"
    q_labels = boson_labels(N)[:N]
    p_labels = boson_labels(N)[N : 2 * N]
    ops: Dict[str, np.ndarray] = {}
    for n, label in zip(range(1, N + 1), q_labels):
        ops[label] = qc.delta_q * L(str(n), Xp)
    for n, label in zip(range(1, N + 1), p_labels):
        ops[label] = qc.delta_p * L(Yp, str(n))
    ops["r"] = qc.delta_r * L(Xp, Yp)
    ops["i"] = qc.delta_r * L(Yp, Xp)
    ops[generator_label(Xp, Yp)] = L(Xp, Yp)
    for m in range(1, N + 1):
        for n in range(m + 1, N + 1):
            ops[generator_label(str(m), str(n))] = L(str(m), str(n))

    vacuum, top = extreme_weight_vector(L(Xp, Yp))
    logger.debug(f"simplified_boson N={N} {rep_kind}: dim {rep.dim_rep}, top weight {top:g}")
    return OperatorSet(operators=ops, qc=qc, rep=rep, vacuum=vacuum, notes={"l": float(l), "N": float(N)})


def mode_labels(ops: OperatorSet) -> Tuple[List[str], List[str]]:
    N = int(ops.notes["N"])
    labels = boson_labels(N)
    return labels[:N], labels[N : 2 * N]


def boson_ccr_defect(ops: OperatorSet) -> float:
    """max over m, n of ||[q^m, p_n] - delta_q delta_p delta^m_n L_{X'Y'}||_max."""
    qc = ops.qc
    qs, ps = mode_labels(ops)
    center = ops[generator_label("X'", "Y'")]
    worst = 0.0
    for m, q in enumerate(qs):
        for n, p in enumerate(ps):
            expected = qc.delta_q * qc.delta_p * center if m == n else 0.0
            worst = max(worst, float(np.max(np.abs(ops.commutator(q, p) - expected))))
    return worst


def regulator_terms(ops: OperatorSet) -> List[Dict[str, float]]:
    """
    For every pair m < n: ||[q^m, q^n]||_max next to delta_q^2 ||L_mn||_max.
    The two agree exactly since [q^m, q^n] = -delta_q^2 L_mn.
    """
    qc = ops.qc
    qs, _ = mode_labels(ops)
    rows = []
    for m in range(len(qs)):
        for n in range(m + 1, len(qs)):
            rotation = ops[generator_label(str(m + 1), str(n + 1))]
            rows.append(
                {
                    "pair": f"{qs[m]},{qs[n]}",
                    "commutator": float(np.max(np.abs(ops.commutator(qs[m], qs[n])))),
                    "regulator": qc.delta_q**2 * float(np.max(np.abs(rotation))),
                }
            )
    return rows


def frozen_ccr_value(ops: OperatorSet) -> complex:
    """<vac|[q^1, p_1]|vac>, i.e. delta_q delta_p times the frozen L_{X'Y'} eigenvalue -i l."""
    qs, ps = mode_labels(ops)
    return ops.expectation(ops.commutator(qs[0], ps[0]))
