"""Data model and distribution mathematics.

Holds the feature library / concept set / association table types and the
deterministic metrics computed from them: normalized association
distributions, entropy, total variation (TV), generalized total variation
(GTV), the maximum-likelihood error identity, and min-max specificity
scores.

All functions here are pure and operate on immutable inputs; they are safe
to call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    DegenerateInputError,
    ShapeError,
    UnknownIdError,
    ValidationError,
)

__all__ = [
    "FeatureRecord",
    "FeatureLibrary",
    "ConceptSet",
    "AssociationTable",
    "ConceptDistribution",
    "normalize",
    "distributions",
    "entropy",
    "mean_entropy",
    "total_variation",
    "generalized_total_variation",
    "ml_error_probability",
    "specificity_scores",
]

_SUM_TOL = 1e-9


@dataclass(frozen=True)
class FeatureRecord:
    """One candidate feature (a color), optionally carrying CIELAB
    coordinates and its hue-sorted display position."""

    id: str
    lab: Optional[tuple[float, float, float]] = None
    sorted_position: Optional[int] = None


@dataclass(frozen=True)
class FeatureLibrary:
    """Ordered pool of candidate features; index set runs 0..N-1."""

    features: tuple[FeatureRecord, ...]

    def __post_init__(self):
        ids = [f.id for f in self.features]
        if len(ids) < 2:
            raise ValidationError("feature library needs at least 2 features")
        if any(not i for i in ids):
            raise ValidationError("feature ids must be non-empty")
        if len(set(ids)) != len(ids):
            raise ValidationError("feature ids must be unique")
        for f in self.features:
            if f.lab is not None:
                L = f.lab[0]
                if not 0.0 <= L <= 100.0:
                    raise ValidationError(
                        f"feature {f.id!r}: L*={L} outside [0, 100]"
                    )
            if f.sorted_position is not None and f.sorted_position < 1:
                raise ValidationError(
                    f"feature {f.id!r}: sorted_position must be positive"
                )

    @classmethod
    def from_ids(cls, ids: Iterable[str]) -> "FeatureLibrary":
        return cls(tuple(FeatureRecord(id=i) for i in ids))

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(f.id for f in self.features)

    def index_of(self, feature_id: str) -> int:
        try:
            return self.ids.index(feature_id)
        except ValueError:
            raise UnknownIdError(f"unknown feature id {feature_id!r}") from None

    def __len__(self) -> int:
        return len(self.features)


@dataclass(frozen=True)
class ConceptSet:
    """Ordered set of concept ids; index set runs 0..n-1."""

    concepts: tuple[str, ...]

    def __post_init__(self):
        if len(self.concepts) < 2:
            raise ValidationError("concept set needs at least 2 concepts")
        if len(set(self.concepts)) != len(self.concepts):
            raise ValidationError("concept ids must be unique")

    def index_of(self, concept_id: str) -> int:
        try:
            return self.concepts.index(concept_id)
        except ValueError:
            raise UnknownIdError(f"unknown concept id {concept_id!r}") from None

    def __len__(self) -> int:
        return len(self.concepts)


@dataclass(frozen=True)
class AssociationTable:
    """Raw association matrix: one row per feature, one column per concept.

    Values must lie in [0, 1] (out-of-range values are rejected, never
    clamped) and every concept column must have a positive sum so that
    normalization is defined.
    """

    library: FeatureLibrary
    concepts: ConceptSet
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.array(self.values, dtype=float, copy=True)
        if v.ndim != 2 or v.shape != (len(self.library), len(self.concepts)):
            raise ShapeError(
                f"association matrix shape {v.shape} does not match "
                f"{len(self.library)} features x {len(self.concepts)} concepts"
            )
        if not np.all(np.isfinite(v)):
            raise ValidationError("association values must be finite")
        if np.any(v < 0.0) or np.any(v > 1.0):
            i, j = np.argwhere((v < 0.0) | (v > 1.0))[0]
            raise ValidationError(
                f"association value {v[i, j]} at feature "
                f"{self.library.ids[i]!r}, concept "
                f"{self.concepts.concepts[j]!r} outside [0, 1]"
            )
        sums = v.sum(axis=0)
        if np.any(sums <= 0.0):
            j = int(np.argmin(sums))
            raise DegenerateInputError(
                f"concept {self.concepts.concepts[j]!r} has zero column sum"
            )
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def n_features(self) -> int:
        return len(self.library)

    @property
    def n_concepts(self) -> int:
        return len(self.concepts)

    def column(self, concept_id: str) -> np.ndarray:
        return self.values[:, self.concepts.index_of(concept_id)]

    def subset(
        self,
        concepts: Optional[Sequence[str]] = None,
        features: Optional[Sequence[str]] = None,
    ) -> "AssociationTable":
        """Restrict the table to the given concept/feature ids (in the
        given order). Either argument may be None to keep all."""
        if concepts is None:
            cols = list(range(self.n_concepts))
            cset = self.concepts
        else:
            cols = [self.concepts.index_of(c) for c in concepts]
            cset = ConceptSet(tuple(concepts))
        if features is None:
            rows = list(range(self.n_features))
            lib = self.library
        else:
            rows = [self.library.index_of(f) for f in features]
            lib = FeatureLibrary(tuple(self.library.features[r] for r in rows))
        return AssociationTable(lib, cset, self.values[np.ix_(rows, cols)])

    @classmethod
    def from_arrays(
        cls,
        feature_ids: Sequence[str],
        concept_ids: Sequence[str],
        values,
    ) -> "AssociationTable":
        return cls(
            FeatureLibrary.from_ids(feature_ids),
            ConceptSet(tuple(concept_ids)),
            np.asarray(values, dtype=float),
        )


@dataclass(frozen=True)
class ConceptDistribution:
    """Normalized association probabilities for one concept over the
    feature library."""

    concept: str
    probabilities: np.ndarray = field(repr=False)

    def __post_init__(self):
        p = np.array(self.probabilities, dtype=float, copy=True)
        if p.ndim != 1:
            raise ShapeError("probabilities must be a 1-D vector")
        if np.any(p < 0.0):
            raise ValidationError("probabilities must be non-negative")
        if abs(p.sum() - 1.0) > _SUM_TOL:
            raise ValidationError(
                f"probabilities sum to {p.sum()}, not 1 within {_SUM_TOL}"
            )
        p.flags.writeable = False
        object.__setattr__(self, "probabilities", p)

    def __len__(self) -> int:
        return len(self.probabilities)


def _as_prob(d) -> np.ndarray:
    if isinstance(d, ConceptDistribution):
        return d.probabilities
    return np.asarray(d, dtype=float)


def normalize(table: AssociationTable, concept: str) -> ConceptDistribution:
    """Normalize one concept column of raw associations into a discrete
    probability distribution over the feature library."""
    col = table.column(concept)
    s = col.sum()
    if s <= 0.0:
        raise DegenerateInputError(
            f"concept {concept!r} has zero column sum; normalization undefined"
        )
    return ConceptDistribution(concept, col / s)


def distributions(table: AssociationTable) -> list[ConceptDistribution]:
    """Normalized distributions for every concept in the table."""
    return [normalize(table, c) for c in table.concepts.concepts]


def entropy(dist) -> float:
    """Shannon entropy in nats, with the 0*log(0) = 0 convention.

    Lies in [0, log N] for a distribution over N features.
    """
    p = _as_prob(dist)
    nz = p[p > 0.0]
    return float(-(nz * np.log(nz)).sum())


def mean_entropy(dists: Sequence) -> float:
    """Arithmetic mean of the entropies of a collection of distributions."""
    if len(dists) == 0:
        raise ValidationError("mean_entropy needs a non-empty list")
    return float(np.mean([entropy(d) for d in dists]))


def total_variation(d1, d2) -> float:
    """Total variation distance: half the L1 distance between two
    distributions. 0 iff identical, 1 iff disjoint supports."""
    p1, p2 = _as_prob(d1), _as_prob(d2)
    if p1.shape != p2.shape:
        raise ShapeError(
            f"distribution lengths differ: {p1.shape} vs {p2.shape}"
        )
    return float(0.5 * np.abs(p1 - p2).sum())


def generalized_total_variation(dists: Sequence) -> float:
    """Generalized total variation over k >= 2 distributions:
    -1 plus the sum over features of the per-feature maximum probability.

    Reduces exactly to total_variation for k = 2. Ranges over [0, k-1];
    per-feature ties need no tie-breaking since only the max value enters.
    """
    if len(dists) < 2:
        raise ValidationError(
            "generalized_total_variation needs at least 2 distributions"
        )
    mat = np.stack([_as_prob(d) for d in dists])
    if mat.ndim != 2:
        raise ShapeError("distributions must be 1-D vectors of equal length")
    return float(mat.max(axis=0).sum() - 1.0)


def ml_error_probability(dists: Sequence) -> float:
    """Average error probability of the maximum-likelihood guess of which
    of k equiprobable distributions generated a single observed feature:
    (1 - 1/k) - GTV/k.
    """
    k = len(dists)
    gtv = generalized_total_variation(dists)
    return float((1.0 - 1.0 / k) - gtv / k)


def specificity_scores(entropies: Sequence[float]) -> list[float]:
    """Min-max normalize a collection of entropy values and flip so that
    larger scores mean more specific (lower entropy).

    The collection to normalize over is supplied explicitly by the caller;
    all-equal collections are rejected as degenerate.
    """
    h = np.asarray(entropies, dtype=float)
    if h.size < 2:
        raise ValidationError("specificity_scores needs at least 2 values")
    lo, hi = h.min(), h.max()
    if hi == lo:
        raise DegenerateInputError(
            "all entropy values equal; min-max normalization undefined"
        )
    return list(1.0 - (h - lo) / (hi - lo))
