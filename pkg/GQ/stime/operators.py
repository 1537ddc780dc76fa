# The MIT License (MIT)
# Copyright © 2025 GQ developers
# See GQ/__init__.py for the full license text.

"""
The singular 15-dimensional space-time algebra and its simplified operators.

Physical operators are read off the orthogonal algebra on (0, 1, 2, 3, X, Y):

    x^mu = delta_x eta^{mu mu} L_{mu X},  p_mu = delta_p L_{Y mu},
    L_{mu nu},  r = delta_r L_{XY},  i = r / (l delta_r).

Every representation is built on the symmetric powers of the defining one,
in a one-particle basis where i*L_XY is diagonal, so the extreme-weight
vacuum is the first Fock state and the weight window is a set of indices.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
import scipy.sparse as sp
from tqdm import tqdm

from GQ.algebra.core import LieAlgebra, make_algebra
from GQ.algebra.homotopy import stime_basis
from GQ.algebra.named import SPACETIME_AXES, canonical_signature, generator_label, orthogonal_generators, spacetime_metric
from GQ.representation.core import symmetric_power_matrices, vacuum_adapted_basis
from GQ.representation.invariants import axis_generator
from GQ.representation.oscillator import QuantumConstants
from GQ.utils.logging import logger
from GQ.utils.misc import fit_loglog_slope, geometric_sweep

REP_KINDS = ("defining", "sym_power")
SPARSE_DIMENSION_CAP = 100000

# (relation, small parameter, declared leading order); order 0 marks an exact relation.
RELATION_CLASSES: Dict[Tuple[str, str], Tuple[str, str, int]] = {
    ("x", "x"): ("[x,x]", "delta_x", 2),
    ("p", "p"): ("[p,p]", "delta_p", 2),
    ("x", "p"): ("[x,p]", "inv_l", 1),
    ("x", "i"): ("[x,i]", "delta_x", 1),
    ("p", "i"): ("[p,i]", "delta_p", 1),
    ("x", "L"): ("[x,L]", "exact", 0),
    ("p", "L"): ("[p,L]", "exact", 0),
    ("L", "L"): ("[L,L]", "exact", 0),
    ("L", "i"): ("[L,i]", "exact", 0),
}
RESIDUAL_COLUMNS = ["relation", "norm", "small_param", "declared_order", "fitted_order"]


def lie15(signature: str = "5-1") -> LieAlgebra:
    """
    The singular algebra on x^0..x^3, p_0..p_3, L_{mu nu}, i:

        [x^nu, p_mu] = delta^nu_mu i,   [x, x] = [p, p] = 0,   i central,
        [x^nu, L_{mu la}] = delta^nu_mu eta_la x^la - delta^nu_la eta_mu x^mu,
        [p_nu, L_{mu la}] = eta_{nu mu} p_la - eta_{nu la} p_mu,

    and the Lorentz relations of so over the first four axes of the metric.
    """
    tag = canonical_signature(signature)
    eta = spacetime_metric(tag)[:4]
    axes = SPACETIME_AXES[:4]

    def L(a: int, b: int) -> Optional[Tuple[str, float]]:
        if a == b:
            return None
        if a < b:
            return generator_label(axes[a], axes[b]), 1.0
        return generator_label(axes[b], axes[a]), -1.0

    pairs = [(a, b) for a in range(4) for b in range(a + 1, 4)]
    entries = []
    for nu in range(4):
        entries.append((f"x{nu}", f"p{nu}", "i", 1.0))
        for mu, la in pairs:
            label = generator_label(axes[mu], axes[la])
            if nu == mu:
                entries.append((f"x{nu}", label, f"x{la}", eta[la]))
                entries.append((f"p{nu}", label, f"p{la}", eta[nu]))
            if nu == la:
                entries.append((f"x{nu}", label, f"x{mu}", -eta[mu]))
                entries.append((f"p{nu}", label, f"p{mu}", -eta[nu]))

    # [L_ab, L_cd] = eta_bc L_ad - eta_ac L_bd - eta_bd L_ac + eta_ad L_bc
    for i, (a, b) in enumerate(pairs):
        for c, d in pairs[i + 1 :]:
            terms: Dict[str, float] = {}
            for coeff, (u, v) in (
                (eta[b] * (b == c), (a, d)),
                (-eta[a] * (a == c), (b, d)),
                (-eta[b] * (b == d), (a, c)),
                (eta[a] * (a == d), (b, c)),
            ):
                target = L(u, v)
                if coeff and target:
                    terms[target[0]] = terms.get(target[0], 0.0) + coeff * target[1]
            for target, value in terms.items():
                if value:
                    entries.append((generator_label(axes[a], axes[b]), generator_label(axes[c], axes[d]), target, value))
    return make_algebra(f"LIE15[{tag}]", stime_basis(), entries)


def _label_class(label: str) -> str:
    if label == "i":
        return "i"
    return "L" if label.startswith("L_") else label[0]


def relation_class(a: str, b: str) -> Tuple[str, str, int]:
    order = "xpLi"
    ca, cb = sorted((_label_class(a), _label_class(b)), key=order.index)
    return RELATION_CLASSES[(ca, cb)]


@dataclass(frozen=True, eq=False)
class StimeOperators:
    signature: str
    qc: QuantumConstants
    l: int
    metric: np.ndarray
    axes: Tuple[str, ...]
    generators: List[sp.csr_matrix]
    weights: np.ndarray
    operators: Dict[str, sp.csr_matrix] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.generators[0].shape[0]

    @property
    def vacuum(self) -> np.ndarray:
        v = np.zeros(self.dim, dtype=complex)
        v[0] = 1.0
        return v

    @property
    def x(self) -> List[sp.csr_matrix]:
        return [self.operators[f"x{mu}"] for mu in range(4)]

    @property
    def p(self) -> List[sp.csr_matrix]:
        return [self.operators[f"p{mu}"] for mu in range(4)]

    @property
    def r(self) -> sp.csr_matrix:
        return self.operators["r"]

    @property
    def i_hat(self) -> sp.csr_matrix:
        return self.operators["i"]

    def L(self, alpha: str, beta: str) -> sp.csr_matrix:
        return axis_generator(self.generators, self.metric, self.axes.index(alpha), self.axes.index(beta))

    def window(self, width: float = 1.0) -> np.ndarray:
        """Indices of the Fock states with i*L_XY weight >= l - width."""
        return np.flatnonzero(self.weights >= self.l - width - 1e-9)


def stime_operators(
    signature: str,
    qc: QuantumConstants,
    rep_kind: str = "defining",
    k: Optional[int] = None,
    cap: int = SPARSE_DIMENSION_CAP,
) -> StimeOperators:
    """
    Named operators in the defining rep (l_X = 1) or Sym^k of it (l_X = k).
    The quantum constants must satisfy delta_x delta_p = l_X delta_r hbar.
    """
    tag = canonical_signature(signature)
    if rep_kind not in REP_KINDS:
        raise ValueError(f"rep_kind must be one of {REP_KINDS}, got {rep_kind!r}")
    if rep_kind == "sym_power" and (k is None or k < 1):
        raise ValueError(f"sym_power rep needs k >= 1, got {k}")
    l = 1 if rep_kind == "defining" else int(k)
    if qc.l_X is not None and qc.l_X != l:
        raise ValueError(f"quantum constants are for l_X={qc.l_X}, but the {rep_kind} rep has l_X={l}")
    lhs, rhs = qc.delta_x * qc.delta_p, l * qc.delta_r * qc.hbar
    if abs(lhs - rhs) > 1e-12 * max(lhs, rhs):
        raise ValueError(f"delta_x*delta_p = {lhs!r} violates l_X*delta_r*hbar = {rhs!r}")

    eta = spacetime_metric(tag)
    axes = SPACETIME_AXES
    U, one_weights = vacuum_adapted_basis(axes)
    rotated = np.einsum("ji,ajk,kl->ail", U.conj(), orthogonal_generators(eta).astype(complex), U)
    generators, states = symmetric_power_matrices(rotated, l, cap=cap, sparse=True)
    weights = np.asarray(states, dtype=float) @ one_weights

    def L(a: str, b: str) -> sp.csr_matrix:
        return axis_generator(generators, eta, axes.index(a), axes.index(b))

    ops: Dict[str, sp.csr_matrix] = {}
    for mu in range(4):
        ops[f"x{mu}"] = (qc.delta_x * eta[mu] * L(str(mu), "X")).tocsr()
    for mu in range(4):
        ops[f"p{mu}"] = (qc.delta_p * L("Y", str(mu))).tocsr()
    for a in range(4):
        for b in range(a + 1, 4):
            ops[generator_label(str(a), str(b))] = L(str(a), str(b)).tocsr()
    ops["r"] = (qc.delta_r * L("X", "Y")).tocsr()
    ops["i"] = (ops["r"] / (l * qc.delta_r)).tocsr()

    logger.debug(f"stime_operators {tag} {rep_kind} l={l}: dim {len(states)}")
    return StimeOperators(tag, qc, l, eta, axes, generators, weights, ops)


def _window_blocks(ops: StimeOperators, labels: Sequence[str], idx: np.ndarray):
    rows = {a: ops.operators[a][idx, :].tocsr() for a in labels}
    cols = {a: ops.operators[a][:, idx].tocsc() for a in labels}
    return rows, cols


def residual_terms(ops: StimeOperators, window: float = 1.0) -> List[Dict[str, object]]:
    """
    Spectral norm of P^dag([O_a, O_b] - singular right-hand side)P for every
    pair of basis operators, on the window of weights >= l - window. The
    singular right-hand side of [x, p] uses hbar * i with i frozen at -i.
    """
    L15 = lie15(ops.signature)
    labels = list(L15.basis)
    idx = ops.window(window)
    rows, cols = _window_blocks(ops, labels, idx)
    n = len(idx)
    eye = np.eye(n, dtype=complex)
    frozen = {a: (rows[a][:, idx].toarray() if a != "i" else -1j * ops.qc.hbar * eye) for a in labels}

    terms = []
    for ia, a in enumerate(labels):
        for b in labels[ia + 1 :]:
            block = (rows[a] @ cols[b]).toarray() - (rows[b] @ cols[a]).toarray()
            c = L15.structure[L15.index(a), L15.index(b)]
            for kk in np.flatnonzero(c):
                block = block - c[kk] * frozen[labels[kk]]
            relation, small, order = relation_class(a, b)
            terms.append(
                {
                    "pair": f"[{a},{b}]",
                    "relation": relation,
                    "norm": float(np.linalg.norm(block, 2)) if block.size else 0.0,
                    "small_param": small,
                    "declared_order": order,
                }
            )
    return terms


def residuals_vs_singular(ops: StimeOperators, window: float = 1.0) -> pd.DataFrame:
    """Largest residual per relation class, in RELATION_CLASSES order."""
    terms = pd.DataFrame(residual_terms(ops, window))
    out = []
    for relation, small, order in RELATION_CLASSES.values():
        group = terms[terms["relation"] == relation]
        out.append(
            {
                "relation": relation,
                "norm": float(group["norm"].max()),
                "small_param": small,
                "declared_order": order,
                "fitted_order": float("nan"),
            }
        )
    return pd.DataFrame(out, columns=RESIDUAL_COLUMNS)


def residual_scaling(
    signature: str = "compact",
    k: int = 2,
    window: float = 1.0,
    points: int = 8,
    hbar: float = 1.0,
    ks: Sequence[int] = (1, 2, 4, 8),
    progress: bool = False,
) -> pd.DataFrame:
    """
    Residual table at the default constants for Sym^k, with fitted log-log
    orders: delta_x and delta_p rows from sweeps of that constant over
    2^-1 .. 2^-points (the other held at sqrt(hbar / k), delta_r following the
    constraint), the inv_l row from the same operators at the default
    constants of each l_X in `ks`.
    """
    if len(ks) < 2 or min(ks) < 1:
        raise ValueError(f"residual_scaling needs at least two l_X >= 1 for the inv_l fit, got {list(ks)}")
    rep_kind = "defining" if k == 1 else "sym_power"
    base = residuals_vs_singular(stime_operators(signature, QuantumConstants.for_stime(k, hbar), rep_kind, k), window)

    sweep = geometric_sweep(points)
    series: Dict[str, List[float]] = {"delta_x": [], "delta_p": []}
    norms: Dict[str, List[float]] = {relation: [] for relation in base["relation"]}
    for param in ("delta_x", "delta_p"):
        for t in tqdm(sweep, desc=f"sweep {param}", disable=not progress):
            qc = QuantumConstants.for_stime(k, hbar, **{param: float(t)})
            table = residuals_vs_singular(stime_operators(signature, qc, rep_kind, k), window)
            for _, row in table[table["small_param"] == param].iterrows():
                norms[row["relation"]].append(row["norm"])
        series[param] = list(sweep)

    inv_l, ccr = [], []
    for l in tqdm(sorted(set(int(v) for v in ks)), desc="sweep inv_l", disable=not progress):
        ops = stime_operators(signature, QuantumConstants.for_stime(l, hbar), "defining" if l == 1 else "sym_power", l)
        table = residuals_vs_singular(ops, window)
        inv_l.append(1.0 / l)
        ccr.append(float(table.loc[table["small_param"] == "inv_l", "norm"].iloc[0]))
    series["inv_l"] = inv_l
    norms["[x,p]"] = ccr

    fitted = []
    for _, row in base.iterrows():
        if row["small_param"] == "exact":
            fitted.append(float("nan"))
        else:
            fitted.append(fit_loglog_slope(series[row["small_param"]], norms[row["relation"]]))
    base["fitted_order"] = fitted
    logger.info(f"residual_scaling {signature} k={k}: fitted orders {dict(zip(base['relation'], fitted))}")
    return base
