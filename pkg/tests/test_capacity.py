import itertools
import math

import numpy as np
import pytest

from semdisc import (
    AssociationTable,
    MonteCarloConfig,
    capacity_statistics,
    enumerate_subsets,
    exhaustive_pair_semantics,
    iter_capacity_reports,
    max_capacity,
    semantic_distance_analytic,
)
from semdisc.capacity import subset_seed
from semdisc.errors import ValidationError

from conftest import random_table


class TestMaxCapacity:
    def test_disjoint_extreme(self):
        values = np.zeros((5, 2))
        values[1, 0] = 1.0
        values[3, 1] = 1.0
        t = AssociationTable.from_arrays(
            [f"f{i}" for i in range(5)], ["a", "b"], values
        )
        report = max_capacity(t, ["a", "b"])
        assert report.max_capacity == 1.0
        assert set(report.chosen_features) == {"f1", "f3"}
        assert report.method == "analytic"

    def test_identical_columns_zero(self):
        col = np.array([0.6, 0.3, 0.2, 0.5])
        t = AssociationTable.from_arrays(
            [f"f{i}" for i in range(4)], ["a", "b"],
            np.column_stack([col, col]),
        )
        report = max_capacity(t, ["a", "b"])
        assert report.max_capacity == pytest.approx(0.0, abs=1e-12)
        assert report.distribution_difference == pytest.approx(0.0, abs=1e-12)

    def test_selected_pair_maximizes_margin(self, rng):
        for _ in range(20):
            t = random_table(rng, 10, 2)
            report = max_capacity(t, t.concepts.concepts)
            a = t.values
            d = a[:, 0] - a[:, 1]
            best = max(
                d[i1] - d[i2]
                for i1, i2 in itertools.permutations(range(10), 2)
            )
            i1 = t.library.index_of(report.chosen_features[0])
            i2 = t.library.index_of(report.chosen_features[1])
            assert d[i1] - d[i2] == pytest.approx(best, abs=1e-12)

    def test_monte_carlo_path(self, rng):
        t = random_table(rng, 8, 3)
        report = max_capacity(
            t, t.concepts.concepts, MonteCarloConfig(samples=300, seed=4)
        )
        assert report.method == "monte_carlo"
        assert 0.0 <= report.max_capacity <= 1.0
        assert len(report.chosen_features) == 3

    def test_row_permutation_invariance(self, rng):
        t = random_table(rng, 8, 2)
        perm = rng.permutation(8)
        t2 = AssociationTable.from_arrays(
            [t.library.ids[i] for i in perm],
            t.concepts.concepts,
            t.values[perm],
        )
        r1 = max_capacity(t, t.concepts.concepts)
        r2 = max_capacity(t2, t.concepts.concepts)
        assert r1.max_capacity == pytest.approx(r2.max_capacity, abs=1e-12)


class TestExhaustivePairs:
    def test_counts(self, rng):
        t = random_table(rng, 71, 2)
        assert len(exhaustive_pair_semantics(t, t.concepts.concepts)) == 2485
        t3 = random_table(rng, 3, 2)
        assert len(exhaustive_pair_semantics(t3, t3.concepts.concepts)) == 3

    def test_values_match_analytic(self, rng):
        t = random_table(rng, 6, 2)
        for (f1, f2), ds in exhaustive_pair_semantics(t, t.concepts.concepts):
            sub = t.subset(concepts=None, features=[f1, f2])
            assert ds == pytest.approx(
                semantic_distance_analytic(sub), abs=1e-12
            )

    def test_dominates_max_capacity(self, rng):
        for _ in range(10):
            t = random_table(rng, 9, 2)
            report = max_capacity(t, t.concepts.concepts)
            pairs = exhaustive_pair_semantics(t, t.concepts.concepts)
            assert max(v for _, v in pairs) >= report.max_capacity - 1e-9

    def test_monotone_library_extension(self, rng):
        t_small = random_table(rng, 6, 2)
        extra = rng.uniform(0.02, 0.98, size=(3, 2))
        t_big = AssociationTable.from_arrays(
            list(t_small.library.ids) + ["g0", "g1", "g2"],
            t_small.concepts.concepts,
            np.vstack([t_small.values, extra]),
        )
        # raw associations are shared, so pairwise margins computed from
        # them can only gain candidates
        max_small = max(
            v for _, v in exhaustive_pair_semantics(t_small, ("c0", "c1"))
        )
        max_big = max(
            v for _, v in exhaustive_pair_semantics(t_big, ("c0", "c1"))
        )
        assert max_big >= max_small - 1e-12

    def test_needs_two_concepts(self, rng):
        t = random_table(rng, 5, 3)
        with pytest.raises(ValidationError):
            exhaustive_pair_semantics(t, t.concepts.concepts)


class TestCapacityStatistics:
    def test_all_equal(self):
        pairs = [(("a", "b"), 0.5)] * 4
        s = capacity_statistics(pairs, threshold=0.4)
        assert s["max"] == s["mean"] == s["median"] == 0.5
        assert s["threshold_proportion"] == 1.0

    def test_endpoints(self):
        pairs = [(("a", "b"), 0.0), (("a", "c"), 1.0)]
        s = capacity_statistics(pairs, threshold=0.5)
        assert s["max"] == 1.0
        assert s["mean"] == 0.5
        assert s["median"] == 0.5
        assert s["threshold_proportion"] == 0.5

    def test_zero_threshold_counts_nonzero(self):
        pairs = [(("a", "b"), 0.0), (("a", "c"), 0.2), (("b", "c"), 0.9)]
        s = capacity_statistics(pairs, threshold=0.0)
        assert s["threshold_proportion"] == pytest.approx(2 / 3)

    def test_empty(self):
        with pytest.raises(ValidationError):
            capacity_statistics([])


class TestEnumeration:
    def test_twenty_concept_counts(self):
        concepts = [f"c{i}" for i in range(20)]
        assert sum(1 for _ in enumerate_subsets(concepts, 2)) == 190
        assert sum(1 for _ in enumerate_subsets(concepts, 4)) == 4845

    def test_full_subset(self):
        assert list(enumerate_subsets(["a", "b", "c"], 3)) == [("a", "b", "c")]

    def test_lexicographic(self):
        subs = list(enumerate_subsets(["a", "b", "c"], 2))
        assert subs == [("a", "b"), ("a", "c"), ("b", "c")]

    def test_out_of_range(self):
        with pytest.raises(ValidationError):
            list(enumerate_subsets(["a", "b"], 3))


class TestBatch:
    def test_order_and_worker_determinism(self, rng):
        t = random_table(rng, 8, 5)
        cfg = MonteCarloConfig(samples=100, seed=7)
        serial = list(iter_capacity_reports(t, 3, cfg, workers=1))
        parallel = list(iter_capacity_reports(t, 3, cfg, workers=3))
        assert [r.concepts for r in serial] == [
            c for c in enumerate_subsets(t.concepts.concepts, 3)
        ]
        for a, b in zip(serial, parallel):
            assert a == b

    def test_subset_seeds_distinct(self):
        seeds = {subset_seed(7, i) for i in range(100)}
        assert len(seeds) == 100
