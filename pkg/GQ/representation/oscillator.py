# The MIT License (MIT)
# Copyright © 2025 GQ developers
# See GQ/__init__.py for the full license text.

"""
Quantum constants, named operator sets and the finite oscillator built on
so(3) irreps, together with the truncated canonical oracle it is compared to.
"""

from dataclasses import dataclass, field
from math import sqrt
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, model_validator

from GQ.representation.core import Representation, commutator, so3_irrep, spectrum, weight_window
from GQ.algebra.named import so3
from GQ.utils.logging import logger

CONSTRAINT_TOL = 1e-12

CORRESPONDENCE_COLUMNS = ["l", "k", "delta_q", "delta_p", "err_q", "err_p", "err", "spacing", "min", "max"]


class QuantumConstants(BaseModel):
    """
    hbar and the spectral spacings of the simplified operators.

    When l_X is set, delta_x * delta_p = l_X * delta_r * hbar must hold; when
    two_l > 0 is set, l * delta_q * delta_p = hbar must hold (l = two_l / 2).
    """

    model_config = ConfigDict(frozen=True)

    hbar: float = Field(1.0, gt=0)
    delta_x: float = Field(1.0, gt=0)
    delta_p: float = Field(1.0, gt=0)
    delta_q: float = Field(1.0, gt=0)
    delta_r: float = Field(1.0, gt=0)
    two_l: Optional[int] = Field(None, ge=0)
    l_X: Optional[int] = Field(None, ge=0)
    l_F: Optional[int] = Field(None, ge=0)

    @model_validator(mode="after")
    def _constraints(self) -> "QuantumConstants":
        if self.l_X is not None:
            lhs = self.delta_x * self.delta_p
            rhs = self.l_X * self.delta_r * self.hbar
            if abs(lhs - rhs) > CONSTRAINT_TOL * max(abs(lhs), abs(rhs), 1e-300):
                raise ValueError(f"delta_x*delta_p = {lhs!r} but l_X*delta_r*hbar = {rhs!r}")
        if self.two_l:
            lhs = self.l * self.delta_q * self.delta_p
            if abs(lhs - self.hbar) > CONSTRAINT_TOL * self.hbar:
                raise ValueError(f"l*delta_q*delta_p = {lhs!r} but hbar = {self.hbar!r}")
        return self

    @property
    def l(self) -> float:
        return (self.two_l or 0) / 2.0

    @classmethod
    def for_oscillator(cls, two_l: int, hbar: float = 1.0) -> "QuantumConstants":
        """delta_q = delta_p = sqrt(hbar / l), delta_r = 1."""
        if two_l < 0:
            raise ValueError(f"two_l must be non-negative, got {two_l}")
        delta = sqrt(hbar / (two_l / 2.0)) if two_l else 1.0
        return cls(hbar=hbar, delta_q=delta, delta_p=delta, delta_r=1.0, two_l=two_l)

    @classmethod
    def for_stime(
        cls,
        l_X: int,
        hbar: float = 1.0,
        delta_x: Optional[float] = None,
        delta_p: Optional[float] = None,
    ) -> "QuantumConstants":
        """
        delta_x = delta_p = sqrt(hbar / l_X) unless given; delta_r follows from
        delta_x * delta_p = l_X * delta_r * hbar (1 / l_X^2 for the defaults).
        """
        if l_X < 1:
            raise ValueError(f"l_X must be >= 1, got {l_X}")
        default = sqrt(hbar / l_X)
        dx = default if delta_x is None else delta_x
        dp = default if delta_p is None else delta_p
        return cls(hbar=hbar, delta_x=dx, delta_p=dp, delta_r=dx * dp / (l_X * hbar), l_X=l_X)


@dataclass(frozen=True, eq=False)
class OperatorSet:
    """Named physical operators realized as matrices on one representation space."""

    operators: Dict[str, np.ndarray]
    qc: Optional[QuantumConstants] = None
    rep: Optional[Representation] = None
    vacuum: Optional[np.ndarray] = None
    notes: Dict[str, float] = field(default_factory=dict)

    def __getitem__(self, label: str) -> np.ndarray:
        try:
            return self.operators[label]
        except KeyError:
            raise ValueError(f"Unknown operator {label!r}; known: {sorted(self.operators)}") from None

    @property
    def labels(self) -> List[str]:
        return list(self.operators)

    @property
    def dim(self) -> int:
        return next(iter(self.operators.values())).shape[0]

    def commutator(self, a: str, b: str) -> np.ndarray:
        return commutator(self[a], self[b])

    def expectation(self, op: np.ndarray, vector: Optional[np.ndarray] = None) -> complex:
        v = self.vacuum if vector is None else vector
        if v is None:
            raise ValueError("OperatorSet has no vacuum vector")
        return complex(np.vdot(v, op @ v))


def simplified_oscillator(qc: QuantumConstants) -> OperatorSet:
    """
    q = delta_q R_1, p = delta_p R_2, r = delta_r R_3 from so3_irrep(two_l), with
    i = r / (l delta_r). The operators are anti-Hermitian and satisfy
    [q, p] = (delta_q delta_p / delta_r) r exactly. The vacuum is the top
    weight vector m = l (first basis vector).
    """
    if qc.two_l is None:
        raise ValueError("simplified_oscillator needs two_l in the quantum constants")
    rep = so3_irrep(qc.two_l, so3(("q", "p", "r")))
    R1, R2, R3 = rep.matrices
    r = qc.delta_r * R3
    i_hat = r / (qc.l * qc.delta_r) if qc.two_l else np.zeros_like(r)
    vacuum = np.zeros(rep.dim_rep, dtype=complex)
    vacuum[0] = 1.0
    return OperatorSet(
        operators={"q": qc.delta_q * R1, "p": qc.delta_p * R2, "r": r, "i": i_hat},
        qc=qc,
        rep=rep,
        vacuum=vacuum,
    )


def oscillator_ccr_defect(ops: OperatorSet) -> float:
    """||[q, p] - (delta_q delta_p / delta_r) r||_max."""
    qc = ops.qc
    diff = ops.commutator("q", "p") - (qc.delta_q * qc.delta_p / qc.delta_r) * ops["r"]
    return float(np.max(np.abs(diff)))


def vacuum_energy(ops: OperatorSet) -> float:
    """<vac| Q^2 + P^2 |vac> for the Hermitian Q = i q, P = i p (equal to hbar)."""
    Q, P = 1j * ops["q"], 1j * ops["p"]
    return float(np.real(ops.expectation(Q @ Q + P @ P)))


def frozen_ccr_residual(ops: OperatorSet, window: float = 1.0) -> float:
    """
    Spectral norm of P^dag ([q, p] - hbar * (-i) 1) P on the window of
    i*r / delta_r eigenspaces within `window` of the top weight l, i.e. the
    error made by freezing i at its extreme value. Equals hbar * window / l.
    """
    qc = ops.qc
    P, _, _ = weight_window(ops["r"] / qc.delta_r, window)
    A, B = ops["q"], ops["p"]
    block = (A.conj().T @ P).conj().T @ (B @ P) - (B.conj().T @ P).conj().T @ (A @ P)
    block = block + 1j * qc.hbar * np.eye(P.shape[1])
    return float(np.linalg.norm(block, 2)) if block.size else 0.0


def canonical_truncated(D: int, hbar: float = 1.0) -> OperatorSet:
    """
    Ladder oracle on D levels: a|n> = sqrt(n hbar)|n-1>, q = (a + a^dag)/sqrt(2),
    p = i(a^dag - a)/sqrt(2). [q, p] = i hbar except on the top level.
    """
    if D < 2:
        raise ValueError(f"canonical_truncated needs D >= 2, got {D}")
    if hbar <= 0:
        raise ValueError(f"hbar must be positive, got {hbar}")
    a = np.diag(np.sqrt(np.arange(1, D) * hbar), 1).astype(complex)
    adag = a.conj().T
    q = (a + adag) / np.sqrt(2.0)
    p = 1j * (adag - a) / np.sqrt(2.0)
    vacuum = np.zeros(D, dtype=complex)
    vacuum[0] = 1.0
    return OperatorSet(operators={"a": a, "q": q, "p": p}, qc=QuantumConstants(hbar=hbar), vacuum=vacuum)


def correspondence_row(two_l: int, k: int, hbar: float = 1.0) -> Dict[str, float]:
    """
    Max deviation between the top k x k corners of the Hermitian Q = i q,
    P = i p of the finite oscillator (delta_q = delta_p = sqrt(hbar / l),
    basis ordered from the extreme weight down) and the canonical q, p.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if two_l < 1 or 4 * k > two_l:
        raise ValueError(f"correspondence needs 1 <= k <= two_l / 4, got k={k}, two_l={two_l}")
    qc = QuantumConstants.for_oscillator(two_l, hbar)
    ops = simplified_oscillator(qc)
    oracle = canonical_truncated(max(k, 2), hbar)
    Q = (1j * ops["q"])[:k, :k]
    P = (1j * ops["p"])[:k, :k]
    err_q = float(np.max(np.abs(Q - oracle["q"][:k, :k])))
    err_p = float(np.max(np.abs(P - oracle["p"][:k, :k])))
    spec = spectrum(ops["q"] / qc.delta_q, hermitize=True)
    return {
        "l": qc.l,
        "k": k,
        "delta_q": qc.delta_q,
        "delta_p": qc.delta_p,
        "err_q": err_q,
        "err_p": err_p,
        "err": max(err_q, err_p),
        "spacing": spec.spacing,
        "min": spec.min,
        "max": spec.max,
    }


def correspondence_table(two_ls: Iterable[int], k: int, hbar: float = 1.0) -> pd.DataFrame:
    rows = [correspondence_row(int(two_l), k, hbar) for two_l in two_ls]
    frame = pd.DataFrame(rows, columns=CORRESPONDENCE_COLUMNS)
    logger.info(f"correspondence_table k={k}: {len(rows)} rows, err={frame['err'].tolist()}")
    return frame


def strictly_decreasing(values: Sequence[float]) -> bool:
    return all(b < a for a, b in zip(values, values[1:]))
