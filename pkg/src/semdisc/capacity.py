"""Capacity metrics for concept sets over a feature library.

Max capacity of a concept subset is the semantic distance of the feature
set picked by a balanced-merit assignment over the whole library:
analytic for 2-concept sets, Monte Carlo for larger ones. The module also
provides the exhaustive pairwise distances used for 2-concept histograms,
summary statistics over those distances, subset enumeration, and a
deterministic (optionally parallel) batch runner over all k-subsets.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np
from numpy.random import SeedSequence
from scipy.special import ndtr

from .assignment import balanced_merit, solve_assignment
from .errors import ValidationError
from .model import (
    AssociationTable,
    distributions,
    generalized_total_variation,
    mean_entropy,
    total_variation,
)
from .montecarlo import (
    MonteCarloConfig,
    NoiseModel,
    run_monte_carlo,
    semantic_distance_analytic,
)

__all__ = [
    "CapacityReport",
    "max_capacity",
    "exhaustive_pair_semantics",
    "capacity_statistics",
    "enumerate_subsets",
    "iter_capacity_reports",
    "subset_seed",
]

DEFAULT_THRESHOLD = 0.7


@dataclass(frozen=True)
class CapacityReport:
    """Capacity of one concept subset over a feature library."""

    concepts: tuple[str, ...]
    max_capacity: float
    chosen_features: tuple[str, ...]
    distribution_difference: float
    mean_entropy: float
    method: str  # "analytic" or "monte_carlo"
    samples: Optional[int] = None
    seed: Optional[int] = None
    exhaustive: Optional[dict] = None


def max_capacity(
    table: AssociationTable,
    subset: Sequence[str],
    config: MonteCarloConfig = MonteCarloConfig(),
) -> CapacityReport:
    """Semantic distance of the balanced-merit-optimal feature set for the
    given concepts, using the whole library as candidates."""
    sub = table.subset(concepts=list(subset))
    chosen = solve_assignment(balanced_merit(sub))
    square = sub.subset(features=list(chosen.feature_ids))
    dists = distributions(sub)
    n = len(subset)
    if n == 2:
        capacity = semantic_distance_analytic(square)
        dd = total_variation(dists[0], dists[1])
        method = "analytic"
        samples = seed = None
    else:
        result = run_monte_carlo(square, config)
        capacity = result.delta_s
        dd = generalized_total_variation(dists)
        method = "monte_carlo"
        samples, seed = config.samples, config.seed
    return CapacityReport(
        concepts=tuple(subset),
        max_capacity=capacity,
        chosen_features=chosen.feature_ids,
        distribution_difference=dd,
        mean_entropy=mean_entropy(dists),
        method=method,
        samples=samples,
        seed=seed,
    )


def exhaustive_pair_semantics(
    table: AssociationTable, subset: Sequence[str]
) -> list[tuple[tuple[str, str], float]]:
    """Analytic semantic distance of every unordered feature pair for a
    2-concept subset (the absolute-margin form already covers both
    orientations of a pair)."""
    if len(subset) != 2:
        raise ValidationError(
            f"exhaustive pairwise distances need exactly 2 concepts, got {len(subset)}"
        )
    sub = table.subset(concepts=list(subset))
    a = sub.values
    s2 = (NoiseModel.from_means(a).sigma ** 2).sum(axis=1)
    d = a[:, 0] - a[:, 1]
    i1, i2 = np.triu_indices(a.shape[0], k=1)
    num = d[i1] - d[i2]
    var = s2[i1] + s2[i2]
    ds = np.where(
        var > 0.0,
        np.abs(2.0 * ndtr(num / np.sqrt(np.where(var > 0.0, var, 1.0))) - 1.0),
        (num != 0.0).astype(float),
    )
    ids = table.library.ids
    return [
        ((ids[r], ids[c]), float(v)) for r, c, v in zip(i1, i2, ds)
    ]


def capacity_statistics(
    pairs: Sequence[tuple[tuple[str, str], float]],
    threshold: float = DEFAULT_THRESHOLD,
) -> dict:
    """Max / mean / median of pairwise distances, plus the fraction
    strictly above the threshold."""
    if len(pairs) == 0:
        raise ValidationError("capacity_statistics needs a non-empty list")
    values = np.asarray([v for _, v in pairs], dtype=float)
    return {
        "max": float(values.max()),
        "mean": float(values.mean()),
        "median": float(np.median(values)),
        "threshold": float(threshold),
        "threshold_proportion": float((values > threshold).mean()),
    }


def enumerate_subsets(
    concepts: Sequence[str], k: int
) -> Iterator[tuple[str, ...]]:
    """All k-subsets of the concept list, lexicographic by position."""
    m = len(concepts)
    if not 2 <= k <= m:
        raise ValidationError(f"subset size {k} out of range [2, {m}]")
    return itertools.combinations(tuple(concepts), k)


def subset_seed(master_seed: int, subset_index: int) -> int:
    """Independent per-subset seed derived from the master seed."""
    ss = SeedSequence((master_seed, subset_index))
    return int(ss.generate_state(1, np.uint64)[0])


def _evaluate_subset(args) -> CapacityReport:
    table, subset, config, include_exhaustive, threshold = args
    report = max_capacity(table, subset, config)
    if include_exhaustive and len(subset) == 2:
        pairs = exhaustive_pair_semantics(table, subset)
        report = CapacityReport(
            **{**report.__dict__, "exhaustive": capacity_statistics(pairs, threshold)}
        )
    return report


def iter_capacity_reports(
    table: AssociationTable,
    k: int,
    config: MonteCarloConfig = MonteCarloConfig(),
    workers: int = 1,
    include_exhaustive: bool = False,
    threshold: float = DEFAULT_THRESHOLD,
) -> Iterator[CapacityReport]:
    """Capacity reports for every k-subset, streamed in enumeration order.

    Each subset gets its own seed derived from (config.seed, subset
    index), so results are identical for any worker count.
    """
    subsets = list(enumerate_subsets(table.concepts.concepts, k))
    jobs = (
        (
            table,
            subset,
            MonteCarloConfig(
                samples=config.samples,
                seed=subset_seed(config.seed, idx),
                clamp=config.clamp,
                perturb=config.perturb,
            ),
            include_exhaustive,
            threshold,
        )
        for idx, subset in enumerate(subsets)
    )
    if workers <= 1:
        for job in jobs:
            yield _evaluate_subset(job)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            yield from pool.map(_evaluate_subset, jobs, chunksize=8)
