# The MIT License (MIT)
# Copyright © 2025 GQ developers
# See GQ/__init__.py for the full license text.

"""
Finite-dimensional Lie algebras given by dense structure tensors.

An algebra with basis e_0..e_{n-1} is stored as c[a, b, k] with
[e_a, e_b] = sum_k c[a, b, k] e_k. Values are immutable after construction and
every function here is pure.
"""

import json
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Literal, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from GQ.utils.logging import logger
from GQ.utils.misc import numerical_rank

# Two entries for the same (a, b, k) that differ by more than this are contradictory.
ENTRY_CONFLICT_TOL = 1e-12
DEFAULT_RANK_TOL = 1e-9

BracketEntry = Tuple[str, str, str, float]


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    name: str
    basis: Tuple[str, ...]
    structure: np.ndarray
    dagger_signature: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        basis = tuple(self.basis)
        object.__setattr__(self, "basis", basis)
        if len(basis) == 0:
            raise ValueError(f"Algebra {self.name!r} needs at least one basis element")
        if len(set(basis)) != len(basis):
            seen = set()
            dup = next(b for b in basis if b in seen or seen.add(b))
            raise ValueError(f"Duplicate basis label {dup!r} in algebra {self.name!r}")

        n = len(basis)
        tensor = np.array(self.structure, dtype=float)
        if tensor.shape != (n, n, n):
            raise ValueError(
                f"Structure tensor of {self.name!r} has shape {tensor.shape}, expected {(n, n, n)}"
            )
        tensor.setflags(write=False)
        object.__setattr__(self, "structure", tensor)

        if self.dagger_signature is not None:
            signs = tuple(int(s) for s in self.dagger_signature)
            if len(signs) != n or any(s not in (1, -1) for s in signs):
                raise ValueError(
                    f"dagger_signature of {self.name!r} must hold {n} values from {{+1, -1}}"
                )
            object.__setattr__(self, "dagger_signature", signs)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, label: str) -> int:
        try:
            return self.basis.index(label)
        except ValueError:
            raise ValueError(f"Unknown label {label!r} in algebra {self.name!r}") from None

    def unit(self, label: str) -> np.ndarray:
        """Coefficient vector of a single basis element."""
        v = np.zeros(self.dim)
        v[self.index(label)] = 1.0
        return v

    def vector(self, coefficients: Dict[str, float]) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.result_type(float, *coefficients.values()))
        for label, value in coefficients.items():
            v[self.index(label)] += value
        return v


@dataclass(frozen=True)
class ClassificationReport:
    killing_rank: int
    center_dim: int
    derived_dim: int
    semisimple: bool
    defects: Dict[str, float] = field(default_factory=dict)

    def as_row(self) -> Dict[str, float]:
        row = {
            "killing_rank": self.killing_rank,
            "center_dim": self.center_dim,
            "derived_dim": self.derived_dim,
            "semisimple": self.semisimple,
        }
        row.update({f"{name}_defect": value for name, value in self.defects.items()})
        return row


def make_algebra(
    name: str,
    basis: Sequence[str],
    bracket_entries: Iterable[BracketEntry],
    dagger: Optional[Sequence[int]] = None,
) -> LieAlgebra:
    """
    Build an algebra from sparse (a, b, k, value) triplets meaning [a, b] has
    coefficient `value` on k.

    Each entry is completed antisymmetrically, so (a, b, k, v) also sets
    (b, a, k, -v). Repeating an entry is fine; two entries that disagree by
    more than 1e-12 after completion are rejected, as is any non-zero entry
    with a == b.
    """
    basis = tuple(basis)
    index = {label: i for i, label in enumerate(basis)}
    if len(index) != len(basis):
        # Let LieAlgebra produce the duplicate-label message.
        LieAlgebra(name, basis, np.zeros((len(basis),) * 3))

    n = len(basis)
    tensor = np.zeros((n, n, n))
    assigned: Dict[Tuple[int, int, int], float] = {}

    def assign(key, value, source):
        if key in assigned and abs(assigned[key] - value) > ENTRY_CONFLICT_TOL:
            raise ValueError(
                f"Contradictory bracket entries for [{basis[key[0]]}, {basis[key[1]]}] -> "
                f"{basis[key[2]]}: {assigned[key]} vs {value} (from {source})"
            )
        assigned[key] = value
        tensor[key] = value

    for entry in bracket_entries:
        a_label, b_label, k_label, value = entry
        for label in (a_label, b_label, k_label):
            if label not in index:
                raise ValueError(f"Unknown label {label!r} in bracket entry {entry!r}")
        a, b, k = index[a_label], index[b_label], index[k_label]
        value = float(value)
        if a == b:
            if abs(value) > ENTRY_CONFLICT_TOL:
                raise ValueError(
                    f"Bracket entry {entry!r} contradicts antisymmetry: [{a_label}, {a_label}] must vanish"
                )
            continue
        assign((a, b, k), value, entry)
        assign((b, a, k), -value, entry)

    logger.debug(f"make_algebra {name!r}: dim={n}, {len(assigned) // 2} independent entries")
    return LieAlgebra(name, basis, tensor, tuple(dagger) if dagger is not None else None)


def from_tensor(
    name: str,
    basis: Sequence[str],
    structure: np.ndarray,
    dagger: Optional[Sequence[int]] = None,
) -> LieAlgebra:
    """Wrap a tensor as is, without antisymmetric completion (for hand-built or perturbed tensors)."""
    return LieAlgebra(name, tuple(basis), np.asarray(structure, dtype=float), dagger)


def bracket(L: LieAlgebra, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    u = np.asarray(u)
    v = np.asarray(v)
    if u.shape != (L.dim,) or v.shape != (L.dim,):
        raise ValueError(
            f"bracket on {L.name!r} needs vectors of length {L.dim}, got {u.shape} and {v.shape}"
        )
    return np.einsum("a,b,abk->k", u, v, L.structure)


def jacobi_tensor(L: LieAlgebra) -> np.ndarray:
    """J[a, b, c, :] = [[a, b], c] + [[b, c], a] + [[c, a], b]."""
    c = L.structure
    return (
        np.einsum("abk,kcm->abcm", c, c)
        + np.einsum("bck,kam->abcm", c, c)
        + np.einsum("cak,kbm->abcm", c, c)
    )


def jacobi_defect(L: LieAlgebra) -> float:
    return float(np.max(np.abs(jacobi_tensor(L))))


def antisymmetry_defect(L: LieAlgebra) -> float:
    """Max-abs entry of the symmetric part (c[a,b,k] + c[b,a,k]) / 2."""
    c = L.structure
    return float(np.max(np.abs(c + c.transpose(1, 0, 2)) / 2.0))


def adjoint_matrices(L: LieAlgebra) -> np.ndarray:
    """Stack of ad_a with (ad_a)[k, b] = c[a, b, k]."""
    return np.ascontiguousarray(L.structure.transpose(0, 2, 1))


def adjoint_rep(L: LieAlgebra):
    from GQ.representation.core import Representation

    return Representation(L, adjoint_matrices(L).astype(complex))


def killing_form(L: LieAlgebra) -> np.ndarray:
    c = L.structure
    K = np.einsum("amk,bkm->ab", c, c)
    return (K + K.T) / 2.0


def structure_norm(L: LieAlgebra) -> float:
    return float(np.linalg.norm(L.structure))


def killing_rank(L: LieAlgebra, tol: float = DEFAULT_RANK_TOL) -> int:
    # K is quadratic in c, so its rounding noise scales with ||c||^2.
    return numerical_rank(killing_form(L), tol, structure_norm(L) ** 2)


def center_dim(L: LieAlgebra, tol: float = DEFAULT_RANK_TOL) -> int:
    # x is central iff sum_a x_a c[a, b, k] = 0 for every (b, k).
    stacked = L.structure.transpose(1, 2, 0).reshape(L.dim * L.dim, L.dim)
    return L.dim - numerical_rank(stacked, tol, structure_norm(L))


def derived_dim(L: LieAlgebra, tol: float = DEFAULT_RANK_TOL) -> int:
    return numerical_rank(L.structure.reshape(L.dim * L.dim, L.dim), tol, structure_norm(L))


def classify(L: LieAlgebra, tol: float = DEFAULT_RANK_TOL) -> ClassificationReport:
    if tol <= 0:
        raise ValueError(f"classify needs tol > 0, got {tol}")
    rank = killing_rank(L, tol)
    report = ClassificationReport(
        killing_rank=rank,
        center_dim=center_dim(L, tol),
        derived_dim=derived_dim(L, tol),
        semisimple=rank == L.dim,
        defects={
            "antisymmetry": antisymmetry_defect(L),
            "jacobi": jacobi_defect(L),
        },
    )
    logger.debug(f"classify {L.name!r}: {report}")
    return report


def structure_distance(L1: LieAlgebra, L2: LieAlgebra) -> float:
    if L1.basis != L2.basis:
        raise ValueError(
            f"Cannot compare {L1.name!r} and {L2.name!r}: basis labels differ "
            f"({list(L1.basis)} vs {list(L2.basis)})"
        )
    return float(np.max(np.abs(L1.structure - L2.structure)))


def change_basis(L: LieAlgebra, M: np.ndarray, basis: Optional[Sequence[str]] = None, name: Optional[str] = None) -> LieAlgebra:
    """
    Express L in the basis e'_i = sum_a M[a, i] e_a.

    The Killing form transforms as K' = M^T K M.
    """
    M = np.asarray(M, dtype=float)
    if M.shape != (L.dim, L.dim):
        raise ValueError(f"Basis change for {L.name!r} must be {L.dim}x{L.dim}, got {M.shape}")
    M_inv = np.linalg.inv(M)
    tensor = np.einsum("ai,bj,abk,lk->ijl", M, M, L.structure, M_inv)
    return LieAlgebra(name or f"{L.name}'", tuple(basis) if basis is not None else L.basis, tensor)


def signed_relabel(
    L: LieAlgebra,
    labels: Sequence[str],
    source: Sequence[str],
    signs: Sequence[int],
    name: Optional[str] = None,
) -> LieAlgebra:
    """
    New basis f_i = signs[i] * e_{source[i]}, labelled `labels[i]`.

    Signed permutations keep the tensor entries exact (no inversion round-off).
    """
    if not (len(labels) == len(source) == len(signs) == L.dim):
        raise ValueError(f"signed_relabel of {L.name!r} needs {L.dim} labels, sources and signs")
    order = [L.index(s) for s in source]
    if sorted(order) != list(range(L.dim)):
        raise ValueError(f"signed_relabel of {L.name!r}: sources must be a permutation of the basis")
    s = np.asarray(signs, dtype=float)
    c = L.structure[np.ix_(order, order, order)]
    tensor = c * s[:, None, None] * s[None, :, None] * s[None, None, :]
    return LieAlgebra(name or L.name, tuple(labels), tensor)


def direct_sum(L1: LieAlgebra, L2: LieAlgebra, name: Optional[str] = None) -> LieAlgebra:
    n1, n2 = L1.dim, L2.dim
    tensor = np.zeros((n1 + n2,) * 3)
    tensor[:n1, :n1, :n1] = L1.structure
    tensor[n1:, n1:, n1:] = L2.structure
    basis = [f"{b}" for b in L1.basis] + [f"{b}'" if b in L1.basis else b for b in L2.basis]
    return LieAlgebra(name or f"{L1.name}+{L2.name}", tuple(basis), tensor)


class AlgebraFile(BaseModel):
    """Schema of the JSON algebra definition file."""

    model_config = ConfigDict(extra="forbid")

    name: str
    basis: List[str]
    brackets: List[Tuple[str, str, List[Tuple[str, float]]]] = []
    dagger: Optional[List[Literal["+", "-"]]] = None

    @field_validator("basis")
    @classmethod
    def _non_empty(cls, basis: List[str]) -> List[str]:
        if not basis:
            raise ValueError("basis must not be empty")
        return basis

    @model_validator(mode="after")
    def _dagger_length(self) -> "AlgebraFile":
        if self.dagger is not None and len(self.dagger) != len(self.basis):
            raise ValueError(f"dagger has {len(self.dagger)} entries for {len(self.basis)} basis labels")
        return self

    def entries(self) -> List[BracketEntry]:
        return [(a, b, k, value) for a, b, terms in self.brackets for k, value in terms]

    def to_algebra(self) -> LieAlgebra:
        dagger = None if self.dagger is None else [1 if d == "+" else -1 for d in self.dagger]
        return make_algebra(self.name, self.basis, self.entries(), dagger)


def load_algebra(path: str) -> LieAlgebra:
    """Read a UTF-8 JSON algebra file; raises ValueError (or OSError) on bad input."""
    with open(path, "r", encoding="utf-8") as f:
        raw = f.read()
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as e:
        raise ValueError(f"{path}: not valid JSON ({e})") from e
    return AlgebraFile.model_validate(data).to_algebra()


def dump_algebra(L: LieAlgebra) -> str:
    """JSON text for L in the algebra-file format (only a < b pairs are written)."""
    brackets = []
    for a in range(L.dim):
        for b in range(a + 1, L.dim):
            terms = [[L.basis[k], float(L.structure[a, b, k])] for k in range(L.dim) if L.structure[a, b, k] != 0.0]
            if terms:
                brackets.append([L.basis[a], L.basis[b], terms])
    payload = {"name": L.name, "basis": list(L.basis), "brackets": brackets}
    if L.dagger_signature is not None:
        payload["dagger"] = ["+" if s > 0 else "-" for s in L.dagger_signature]
    return json.dumps(payload, indent=2)
