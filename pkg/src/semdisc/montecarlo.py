"""Noise model and Monte Carlo estimation of assignment robustness.

Association ratings are treated as independent Gaussians with per-cell
standard deviation 1.4 * a * (1 - a). Robustness of a square feature set
is estimated by repeatedly perturbing the raw ratings, recomputing the
balanced merit, re-solving the assignment, and tallying how often each
distinct assignment wins. From the tally we get:

- generalized semantic distance: a rescaling of the modal assignment's
  frequency p, (n! p - 1) / (n! - 1), in [0, 1];
- semantic contrast: per feature, the proportion of iterations in which
  it kept the concept it holds in the unperturbed optimal assignment;
- the full response matrix of feature -> concept assignment proportions.

Sampling uses the counter-based Philox generator keyed by the master
seed, with each iteration's draws starting at a fixed counter offset.
Normal deviates come from the inverse CDF of Philox uniforms, so results
are bit-identical for any chunking or worker count.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.random import Generator, Philox
from scipy.optimize import linear_sum_assignment
from scipy.special import ndtr, ndtri

from .assignment import Assignment, balanced_merit_values
from .errors import ShapeError, ValidationError
from .model import AssociationTable

__all__ = [
    "NoiseModel",
    "MonteCarloConfig",
    "MonteCarloResult",
    "standard_normal_cdf",
    "semantic_distance_analytic",
    "sample_perturbed_table",
    "run_monte_carlo",
    "generalized_semantic_distance",
    "semantic_contrast",
    "predict_response_distribution",
]

# half-grid shift keeps inverse-CDF inputs strictly inside (0, 1)
_U_SHIFT = 2.0 ** -54
# cap on vectorized permutation enumeration; beyond this each iteration
# is solved individually
_PERM_LIMIT = 5


@dataclass(frozen=True)
class NoiseModel:
    """Per-cell rating noise: sigma = 1.4 * a * (1 - a), zero at the
    rating-scale endpoints and at most 0.35."""

    sigma: np.ndarray = field(repr=False)

    @classmethod
    def from_table(cls, table: AssociationTable) -> "NoiseModel":
        return cls.from_means(table.values)

    @classmethod
    def from_means(cls, a: np.ndarray) -> "NoiseModel":
        a = np.asarray(a, dtype=float)
        return cls(sigma=1.4 * a * (1.0 - a))


@dataclass(frozen=True)
class MonteCarloConfig:
    """Sampling parameters. perturb="ratings" (default) perturbs the raw
    associations and recomputes balanced merit each iteration;
    perturb="merits" perturbs the unperturbed merit cells directly
    (exploratory variant). clamp restricts perturbed ratings to [0, 1];
    default off since assignment outcomes depend only on merit
    comparisons and clamping biases cells near the endpoints."""

    samples: int = 1000
    seed: int = 0
    clamp: bool = False
    perturb: str = "ratings"

    def __post_init__(self):
        if self.samples < 1:
            raise ValidationError("samples must be >= 1")
        if self.perturb not in ("ratings", "merits"):
            raise ValidationError(f"unknown perturb mode {self.perturb!r}")


@dataclass(frozen=True)
class MonteCarloResult:
    """Tally of a perturb-and-solve run on one square feature set.

    assignment_frequencies maps the tuple of feature ids in concept order
    to the number of iterations that assignment won. contrast is aligned
    with the table's feature rows.
    """

    concepts: tuple[str, ...]
    feature_ids: tuple[str, ...]
    assignment_frequencies: dict[tuple[str, ...], int]
    modal_proportion: float
    delta_s: float
    contrast: tuple[float, ...]
    optimal: Assignment
    response_matrix: np.ndarray = field(repr=False)
    samples: int = 1000
    seed: int = 0

    def contrast_by_feature(self) -> dict[str, float]:
        return dict(zip(self.feature_ids, self.contrast))


def standard_normal_cdf(z: float) -> float:
    """Standard normal CDF via the complementary error function."""
    return float(ndtr(z))


def _values_2x2(sub) -> np.ndarray:
    if isinstance(sub, AssociationTable):
        v = sub.values
    else:
        v = np.asarray(sub, dtype=float)
    if v.shape != (2, 2):
        raise ShapeError(f"expected a 2x2 table, got shape {v.shape}")
    return v


def semantic_distance_analytic(sub) -> float:
    """Closed-form semantic distance for 2 features x 2 concepts.

    The winning assignment is decided by the sign of the diagonal-minus-
    antidiagonal sum of perturbed ratings; under the Gaussian noise model
    that sign probability has a normal-CDF form, and the distance is the
    probability margin |2 Phi(z) - 1|. If every cell is noiseless the
    limit is 1 for a nonzero margin and 0 for a tie.
    """
    a = _values_2x2(sub)
    numerator = (a[0, 0] + a[1, 1]) - (a[0, 1] + a[1, 0])
    var = float((NoiseModel.from_means(a).sigma ** 2).sum())
    if var == 0.0:
        return 1.0 if numerator != 0.0 else 0.0
    prob_positive = standard_normal_cdf(numerator / math.sqrt(var))
    return abs(2.0 * prob_positive - 1.0)


def sample_perturbed_table(
    table: AssociationTable, noise: NoiseModel, rng: Generator
) -> np.ndarray:
    """One noisy draw of the raw association matrix.

    Cells are independent Normal(a_ij, sigma_ij); values are not clamped
    to [0, 1]. Normals come from the inverse CDF of the stream's
    uniforms, so the output is a deterministic function of the rng state.
    """
    a = table.values
    if noise.sigma.shape != a.shape:
        raise ShapeError("noise model shape does not match table")
    u = rng.random(a.shape) + _U_SHIFT
    return a + noise.sigma * ndtri(u)


def _iteration_normals(
    seed: int, start: int, count: int, cells: int
) -> np.ndarray:
    """Standard-normal draws for iterations [start, start+count).

    Each iteration owns a fixed budget of Philox counter blocks (4
    doubles per 128-bit block), so any split into chunks or workers
    reproduces the serial stream exactly.
    """
    blocks = -(-cells // 4)
    bg = Philox(key=seed)
    if start:
        bg.advance(start * blocks)
    u = Generator(bg).random(count * blocks * 4).reshape(count, blocks * 4)
    return ndtri(u[:, :cells] + _U_SHIFT)


def _lex_permutations(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=int)


def _solve_square_batch(merits: np.ndarray, perms: np.ndarray) -> np.ndarray:
    """Winning permutation index per iteration; first (lexicographically
    smallest) permutation wins exact ties."""
    n = merits.shape[-1]
    totals = merits[:, perms, np.arange(n)].sum(axis=-1)
    return np.argmax(totals, axis=1)


def run_monte_carlo(
    table: AssociationTable, config: MonteCarloConfig = MonteCarloConfig()
) -> MonteCarloResult:
    """Full perturb-and-solve tally for a square n x n table.

    The distance, contrast, and response-matrix estimates all come from
    the same iterations.
    """
    a = table.values
    n = a.shape[1]
    if a.shape[0] != n:
        raise ShapeError(f"square table required, got {a.shape}")
    sigma = NoiseModel.from_means(a).sigma
    n_fact = math.factorial(n)

    small = n <= _PERM_LIMIT
    perms = _lex_permutations(n) if small else None

    # step 1: optimal assignment on the unperturbed means, solved through
    # the same path as the sampled iterations so tie-breaking is shared
    m0 = balanced_merit_values(a)
    if small:
        perm0 = perms[_solve_square_batch(m0[None, :, :], perms)[0]]
    else:
        r, c = linear_sum_assignment(m0, maximize=True)
        perm0 = np.empty(n, dtype=int)
        perm0[c] = r
    optimal = Assignment(
        concepts=table.concepts.concepts,
        feature_ids=tuple(table.library.ids[i] for i in perm0),
        feature_indices=tuple(int(i) for i in perm0),
        total_merit=float(m0[perm0, np.arange(n)].sum()),
    )

    if small:
        counts = np.zeros(n_fact, dtype=np.int64)
    else:
        tally: dict[tuple[int, ...], int] = {}

    chunk = 4096
    for start in range(0, config.samples, chunk):
        count = min(chunk, config.samples - start)
        z = _iteration_normals(config.seed, start, count, n * n)
        z = z.reshape(count, n, n)
        if config.perturb == "ratings":
            perturbed = a + sigma * z
            if config.clamp:
                np.clip(perturbed, 0.0, 1.0, out=perturbed)
            merits = balanced_merit_values(perturbed)
        else:
            merits = m0 + sigma * z
        if small:
            idx = _solve_square_batch(merits, perms)
            counts += np.bincount(idx, minlength=n_fact)
        else:
            for t in range(count):
                r, c = linear_sum_assignment(merits[t], maximize=True)
                rows = np.empty(n, dtype=int)
                rows[c] = r
                key = tuple(int(i) for i in rows)
                tally[key] = tally.get(key, 0) + 1

    ids = table.library.ids
    if small:
        freq = {
            tuple(ids[i] for i in perms[k]): int(counts[k])
            for k in np.nonzero(counts)[0]
        }
        modal = int(counts.max())
        match = np.zeros(n, dtype=np.int64)  # per concept position
        response = np.zeros((n, n))
        for k in np.nonzero(counts)[0]:
            p = perms[k]
            match += np.where(p == perm0, counts[k], 0)
            response[p, np.arange(n)] += counts[k]
    else:
        freq = {
            tuple(ids[i] for i in key): cnt for key, cnt in tally.items()
        }
        modal = max(tally.values())
        match = np.zeros(n, dtype=np.int64)
        response = np.zeros((n, n))
        for key, cnt in tally.items():
            p = np.asarray(key)
            match += np.where(p == perm0, cnt, 0)
            response[p, np.arange(n)] += cnt

    p_modal = modal / config.samples
    delta_s = (n_fact * p_modal - 1.0) / (n_fact - 1.0)
    # contrast indexed by feature row: feature perm0[j] matched concept j
    contrast = np.zeros(n)
    contrast[perm0] = match / config.samples
    return MonteCarloResult(
        concepts=table.concepts.concepts,
        feature_ids=ids,
        assignment_frequencies=freq,
        modal_proportion=p_modal,
        delta_s=delta_s,
        contrast=tuple(float(x) for x in contrast),
        optimal=optimal,
        response_matrix=response / config.samples,
        samples=config.samples,
        seed=config.seed,
    )


def generalized_semantic_distance(
    table: AssociationTable, config: MonteCarloConfig = MonteCarloConfig()
) -> MonteCarloResult:
    """Monte Carlo semantic distance of a square feature set."""
    return run_monte_carlo(table, config)


def semantic_contrast(
    table: AssociationTable, config: MonteCarloConfig = MonteCarloConfig()
) -> tuple[dict[str, float], Assignment]:
    """Per-feature proportion of iterations matching the optimal
    assignment, plus that optimal assignment."""
    result = run_monte_carlo(table, config)
    return result.contrast_by_feature(), result.optimal


def predict_response_distribution(
    table: AssociationTable, config: MonteCarloConfig = MonteCarloConfig()
) -> np.ndarray:
    """Matrix of assignment proportions: entry (i, j) is the fraction of
    iterations in which feature i was assigned concept j. Every iteration
    contributes a perfect matching, so rows and columns each sum to 1."""
    return run_monte_carlo(table, config).response_matrix
