"""Merit functions and exact linear assignment solvers.

Merit matrices have one row per feature and one column per concept. The
isolated merit is the raw association strength; the balanced merit
penalizes each pairing by the feature's strongest competing association.
Solving maximizes total merit over injective concept -> feature mappings,
for square or rectangular (more features than concepts) instances.

The production solver delegates to scipy's Jonker-Volgenant implementation
(exact, handles negative merits and rectangular shapes); a brute-force
enumerator is kept for small instances as an independent test oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import InfeasibleError, ShapeError, ValidationError
from .model import AssociationTable, ConceptSet, FeatureLibrary

__all__ = [
    "MeritMatrix",
    "Assignment",
    "isolated_merit",
    "balanced_merit",
    "balanced_merit_values",
    "solve_assignment",
    "brute_force_assignment",
]


@dataclass(frozen=True)
class MeritMatrix:
    """Merit scores for every feature-concept pairing.

    kind is "isolated" or "balanced". Rows follow the library order,
    columns the concept order; merits may be negative.
    """

    library: FeatureLibrary
    concepts: ConceptSet
    values: np.ndarray = field(repr=False)
    kind: str = "isolated"

    def __post_init__(self):
        v = np.array(self.values, dtype=float, copy=True)
        if v.ndim != 2 or v.shape != (len(self.library), len(self.concepts)):
            raise ShapeError(
                f"merit shape {v.shape} does not match "
                f"{len(self.library)} x {len(self.concepts)}"
            )
        if not np.all(np.isfinite(v)):
            raise ValidationError("merit values must be finite")
        if self.kind not in ("isolated", "balanced"):
            raise ValidationError(f"unknown merit kind {self.kind!r}")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)


@dataclass(frozen=True)
class Assignment:
    """An injective concept -> feature mapping with its total merit.

    feature_indices[j] is the library row assigned to concept j, in
    concept order.
    """

    concepts: tuple[str, ...]
    feature_ids: tuple[str, ...]
    feature_indices: tuple[int, ...]
    total_merit: float

    def __post_init__(self):
        if not (
            len(self.concepts)
            == len(self.feature_ids)
            == len(self.feature_indices)
        ):
            raise ShapeError("assignment field lengths differ")
        if len(set(self.feature_indices)) != len(self.feature_indices):
            raise ValidationError("assignment reuses a feature")

    @property
    def mapping(self) -> dict[str, str]:
        return dict(zip(self.concepts, self.feature_ids))


def isolated_merit(table: AssociationTable) -> MeritMatrix:
    """Merit = raw association strength."""
    return MeritMatrix(table.library, table.concepts, table.values, "isolated")


def balanced_merit_values(a: np.ndarray) -> np.ndarray:
    """Balanced merit on a raw value array (vectorized; supports leading
    batch dimensions): each cell minus the row's best competing column."""
    a = np.asarray(a, dtype=float)
    if a.shape[-1] < 2:
        raise ValidationError("balanced merit needs at least 2 concepts")
    # top-2 per row: competitor max is top1 unless the cell is the argmax
    part = np.partition(a, -2, axis=-1)
    top1 = part[..., -1:]
    top2 = part[..., -2:-1]
    competitor = np.where(a == top1, top2, top1)
    return a - competitor


def balanced_merit(table: AssociationTable) -> MeritMatrix:
    """Merit = association strength minus the feature's next most strongly
    associated concept's strength."""
    return MeritMatrix(
        table.library,
        table.concepts,
        balanced_merit_values(table.values),
        "balanced",
    )


def _build(merit: MeritMatrix, rows: np.ndarray) -> Assignment:
    total = float(merit.values[rows, np.arange(len(rows))].sum())
    return Assignment(
        concepts=merit.concepts.concepts,
        feature_ids=tuple(merit.library.ids[r] for r in rows),
        feature_indices=tuple(int(r) for r in rows),
        total_merit=total,
    )


def solve_assignment(merit: MeritMatrix) -> Assignment:
    """Exact maximum-merit assignment for square or rectangular instances.

    Ties between equally optimal mappings are broken deterministically by
    the solver, so repeated runs on the same matrix give the same result.
    """
    N, n = merit.values.shape
    if N < n:
        raise InfeasibleError(f"{N} features cannot cover {n} concepts")
    row_ind, col_ind = linear_sum_assignment(merit.values, maximize=True)
    rows = np.empty(n, dtype=int)
    rows[col_ind] = row_ind
    return _build(merit, rows)


def brute_force_assignment(merit: MeritMatrix) -> Assignment:
    """Exhaustive enumeration of all injective mappings; test oracle only.

    Guards against factorial blowup (n <= 8, N <= 12). The first maximum
    in lexicographic feature-index order wins ties.
    """
    N, n = merit.values.shape
    if N < n:
        raise InfeasibleError(f"{N} features cannot cover {n} concepts")
    if n > 8 or N > 12:
        raise ValidationError(
            f"brute force guarded to n <= 8, N <= 12 (got n={n}, N={N})"
        )
    perms = np.array(
        list(itertools.permutations(range(N), n)), dtype=int
    )
    totals = merit.values[perms, np.arange(n)].sum(axis=1)
    return _build(merit, perms[int(np.argmax(totals))])
