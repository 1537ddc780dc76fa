# The MIT License (MIT)
# Copyright © 2025 GQ developers
# See GQ/__init__.py for the full license text.

"""
Contraction / simplification homotopies realised as diagonal scalings.

A path rescales the generators of a fixed simple algebra by weights
w_a(s) = rho(s) ** e_a, so the tensor along the path is

    c_s[a, b, k] = w_a(s) w_b(s) / w_k(s) * c[a, b, k]

and the Jacobi identity holds at every s. The endpoint s = 0 is the exact
limit: entries with e_a + e_b - e_k == 0 survive unchanged, entries with a
positive exponent vanish, and a negative exponent on a non-zero entry makes
the scaling inadmissible.
"""

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

import numpy as np
import pandas as pd
from tqdm import tqdm

from GQ.algebra.core import (
    DEFAULT_RANK_TOL,
    LieAlgebra,
    classify,
    jacobi_defect,
    signed_relabel,
    structure_distance,
)
from GQ.algebra.named import (
    SPACETIME_AXES,
    canonical_signature,
    generator_label,
    orthogonal_algebra,
    so3,
    spacetime_metric,
)
from GQ.utils.logging import logger

Profile = Callable[[float], float]


@dataclass(frozen=True, eq=False)
class HomotopyPath:
    name: str
    base: LieAlgebra
    exponents: np.ndarray
    profile: Profile
    s1: float
    endpoint_singular: LieAlgebra
    endpoint_simple_family: str

    @property
    def basis(self):
        return self.base.basis

    @property
    def s_range(self):
        return (0.0, self.s1)

    def exponent_tensor(self) -> np.ndarray:
        e = self.exponents
        return e[:, None, None] + e[None, :, None] - e[None, None, :]

    def evaluate(self, s: float) -> LieAlgebra:
        if s < 0.0 or s > self.s1:
            raise ValueError(f"s={s} outside [0, {self.s1}] for path {self.name!r}")
        rho = float(self.profile(s))
        if rho == 0.0:
            return self.endpoint_singular
        c = self.base.structure
        with np.errstate(over="ignore"):
            factor = rho ** self.exponent_tensor()
        tensor = np.where(c != 0.0, c * factor, 0.0)
        return LieAlgebra(f"{self.name}(s={s:g})", self.base.basis, tensor)

    def regulator_coefficient(self, s: float) -> float:
        """
        Largest bracket coefficient at `s` that lands in a weight-0 generator
        and disappears at s = 0 (e.g. [q^m, q^n] -> L_mn on the boson path).
        """
        c = self.evaluate(s).structure
        mask = (self.exponents[None, None, :] == 0) & (self.exponent_tensor() > 0)
        return float(np.max(np.abs(c[mask]))) if np.any(mask) else 0.0


@dataclass(frozen=True)
class PathRow:
    s: float
    jacobi_defect: float
    killing_rank: int
    center_dim: int
    distance_to_singular: float
    regulator: float


@dataclass
class PathReport:
    path_name: str
    rows: List[PathRow] = field(default_factory=list)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [vars(row) for row in self.rows],
            columns=["s", "jacobi_defect", "killing_rank", "center_dim", "distance_to_singular", "regulator"],
        )

    def column(self, name: str) -> list:
        return [getattr(row, name) for row in self.rows]


def linear_profile(s1: float = 1.0) -> Profile:
    return lambda s: s / s1


def scaling_contraction(
    L: LieAlgebra,
    exponents: Sequence[float],
    profile: Optional[Profile] = None,
    s1: float = 1.0,
    name: Optional[str] = None,
    simple_family: Optional[str] = None,
) -> HomotopyPath:
    """
    Diagonal scaling path with weights w_a(s) = profile(s) ** exponents[a].

    `profile` defaults to s / s1; any profile with profile(0) = 0,
    profile(s1) = 1 and profile > 0 on (0, s1] is accepted, which covers the
    non-linear contractions. Raises ValueError when some non-zero entry would
    diverge as s -> 0.
    """
    e = np.asarray(exponents, dtype=float)
    if e.shape != (L.dim,):
        raise ValueError(f"{L.dim} exponents needed for {L.name!r}, got {e.shape}")
    if s1 <= 0:
        raise ValueError(f"s1 must be positive, got {s1}")
    profile = profile or linear_profile(s1)

    if abs(profile(s1) - 1.0) > 1e-12:
        raise ValueError(f"weights at s1={s1} must all be 1 (profile(s1)={profile(s1)})")
    if profile(0.0) != 0.0:
        raise ValueError(f"profile(0) must be 0 for a contraction, got {profile(0.0)}")
    grid = np.linspace(0.0, s1, 65)[1:]
    if any(profile(s) <= 0 for s in grid):
        raise ValueError("weights must be positive for s > 0")

    c = L.structure
    exps = e[:, None, None] + e[None, :, None] - e[None, None, :]
    divergent = np.argwhere((c != 0.0) & (exps < 0))
    if divergent.size:
        a, b, k = divergent[0]
        raise ValueError(
            f"Inadmissible scaling of {L.name!r}: entry [{L.basis[a]}, {L.basis[b]}] -> {L.basis[k]} "
            f"scales as s^{exps[a, b, k]:g} and diverges as s -> 0"
        )

    singular = LieAlgebra(
        f"{name or L.name}(s=0)",
        L.basis,
        np.where((c != 0.0) & (exps == 0), c, 0.0),
    )
    logger.debug(f"scaling_contraction {name or L.name!r}: exponents={e.tolist()}")
    return HomotopyPath(
        name=name or f"contraction({L.name})",
        base=L,
        exponents=e,
        profile=profile,
        s1=float(s1),
        endpoint_singular=singular,
        endpoint_simple_family=simple_family or L.name,
    )


def segal_path(signature: str = "compact") -> HomotopyPath:
    """so(3) (compact) or so(2,1) (split) on (q, p, r) contracting to dH(1), weights (s, s, s^2)."""
    if signature not in ("compact", "split"):
        raise ValueError(f"Segal path signature must be 'compact' or 'split', got {signature!r}")
    base = so3(("q", "p", "r"), split=signature == "split")
    return scaling_contraction(
        base,
        [1.0, 1.0, 2.0],
        name=f"segal[{signature}]",
        simple_family=base.name,
    )


def stime_basis() -> List[str]:
    return (
        [f"x{mu}" for mu in range(4)]
        + [f"p{mu}" for mu in range(4)]
        + [generator_label(SPACETIME_AXES[a], SPACETIME_AXES[b]) for a in range(4) for b in range(a + 1, 4)]
        + ["i"]
    )


def stime_simple_algebra(signature: str) -> LieAlgebra:
    """
    The orthogonal algebra on axes (0, 1, 2, 3, X, Y) written in the physical basis

        x^mu = eta^{mu mu} L_{mu X},  p_mu = L_{Y mu},  L_{mu nu},  i = L_{XY}

    so that [x^nu, p_mu] = delta^nu_mu i for every signature.
    """
    tag = canonical_signature(signature)
    eta = spacetime_metric(tag)
    ortho = orthogonal_algebra(eta, SPACETIME_AXES)
    X, Y = "X", "Y"

    source, signs = [], []
    for mu in range(4):
        source.append(generator_label(str(mu), X))
        signs.append(int(eta[mu]))
    for mu in range(4):
        # L_{Y mu} = -L_{mu Y}
        source.append(generator_label(str(mu), Y))
        signs.append(-1)
    for a in range(4):
        for b in range(a + 1, 4):
            source.append(generator_label(str(a), str(b)))
            signs.append(1)
    source.append(generator_label(X, Y))
    signs.append(1)
    return signed_relabel(ortho, stime_basis(), source, signs, name=ortho.name)


def stime_path(signature: str = "compact") -> HomotopyPath:
    """15-dim path: weight 1 on L_{mu nu}, s on x and p, s^2 on i; s = 0 is LIE15."""
    tag = canonical_signature(signature)
    base = stime_simple_algebra(tag)
    exponents = [1.0] * 8 + [0.0] * 6 + [2.0]
    return scaling_contraction(base, exponents, name=f"stime[{tag}]", simple_family=base.name)


def boson_labels(N: int) -> List[str]:
    if N == 1:
        return ["q", "p", "r"]
    return [f"q{n}" for n in range(1, N + 1)] + [f"p{n}" for n in range(1, N + 1)] + ["r"]


def boson_axes(N: int) -> List[str]:
    return [str(n) for n in range(1, N + 1)] + ["X'", "Y'"]


def boson_simple_algebra(N: int) -> LieAlgebra:
    """
    Compact so(N+2) on axes (1..N, X', Y') in the basis
    q^n = L_{n X'}, p_n = L_{Y' n}, r = L_{X'Y'}, then the rotations L_mn.
    """
    if N < 1:
        raise ValueError(f"boson path needs N >= 1 modes, got {N}")
    axes = boson_axes(N)
    ortho = orthogonal_algebra(np.ones(N + 2), axes)
    Xp, Yp = "X'", "Y'"

    source, signs = [], []
    for n in range(1, N + 1):
        source.append(generator_label(str(n), Xp))
        signs.append(1)
    for n in range(1, N + 1):
        source.append(generator_label(str(n), Yp))
        signs.append(-1)
    source.append(generator_label(Xp, Yp))
    signs.append(1)
    rotations = [generator_label(str(m), str(n)) for m in range(1, N + 1) for n in range(m + 1, N + 1)]
    source += rotations
    signs += [1] * len(rotations)
    return signed_relabel(ortho, boson_labels(N) + rotations, source, signs, name=ortho.name)


def boson_path(N: int) -> HomotopyPath:
    """Weights s on q^n and p_n, s^2 on r = L_{X'Y'}, 1 on the regulators L_mn."""
    base = boson_simple_algebra(N)
    exponents = [1.0] * (2 * N) + [2.0] + [0.0] * (N * (N - 1) // 2)
    return scaling_contraction(base, exponents, name=f"boson[N={N}]", simple_family=base.name)


def named_path(path: str, signature: str = "compact", modes: int = 1) -> HomotopyPath:
    if path == "segal":
        if signature not in ("compact", "split"):
            raise ValueError(f"The segal path takes signature compact or split, got {signature!r}")
        return segal_path(signature)
    if path == "stime":
        return stime_path(signature)
    if path == "boson":
        return boson_path(modes)
    raise ValueError(f"Unknown path {path!r}; expected segal, stime or boson")


def path_report(
    path: HomotopyPath,
    samples: int,
    tol: float = DEFAULT_RANK_TOL,
    progress: bool = False,
) -> PathReport:
    if samples < 2:
        raise ValueError(f"path_report needs at least 2 samples, got {samples}")
    report = PathReport(path.name)
    singular = path.endpoint_singular
    for s in tqdm(np.linspace(0.0, path.s1, samples), desc=path.name, disable=not progress):
        L = path.evaluate(float(s))
        info = classify(L, tol)
        report.rows.append(
            PathRow(
                s=float(s),
                jacobi_defect=jacobi_defect(L),
                killing_rank=info.killing_rank,
                center_dim=info.center_dim,
                distance_to_singular=structure_distance(L, singular),
                regulator=path.regulator_coefficient(float(s)),
            )
        )
    logger.info(f"path_report {path.name}: {samples} samples, max jacobi defect {max(report.column('jacobi_defect')):.3e}")
    return report
