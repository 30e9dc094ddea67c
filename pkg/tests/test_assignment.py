import numpy as np
import pytest

from semdisc import (
    AssociationTable,
    MeritMatrix,
    balanced_merit,
    brute_force_assignment,
    isolated_merit,
    solve_assignment,
)
from semdisc.errors import InfeasibleError, ValidationError
from semdisc.model import ConceptSet, FeatureLibrary

from conftest import random_table


def merit_from(values, kind="isolated"):
    values = np.asarray(values, dtype=float)
    N, n = values.shape
    return MeritMatrix(
        FeatureLibrary.from_ids([f"f{i}" for i in range(N)]),
        ConceptSet(tuple(f"c{j}" for j in range(n))),
        values,
        kind,
    )


class TestMeritFunctions:
    def test_isolated_is_identity(self):
        t = AssociationTable.from_arrays(
            ["f1", "f2"], ["a", "b"], [[0.8, 0.2], [0.3, 0.7]]
        )
        m = isolated_merit(t)
        np.testing.assert_array_equal(m.values, t.values)
        assert m.kind == "isolated"

    def test_isolated_shape(self, rng):
        t = random_table(rng, 9, 4)
        assert isolated_merit(t).values.shape == (9, 4)

    def test_balanced_two_concepts(self):
        t = AssociationTable.from_arrays(
            ["f1", "f2"], ["a", "b"], [[0.9, 0.1], [0.5, 0.5]]
        )
        np.testing.assert_allclose(
            balanced_merit(t).values[0], [0.8, -0.8]
        )

    def test_balanced_three_concepts(self):
        t = AssociationTable.from_arrays(
            ["f1", "f2"], ["a", "b", "c"],
            [[0.5, 0.3, 0.9], [0.1, 0.1, 0.1]],
        )
        m = balanced_merit(t)
        np.testing.assert_allclose(m.values[0], [-0.4, -0.6, 0.4])
        np.testing.assert_allclose(m.values[1], [0.0, 0.0, 0.0])


class TestSolve:
    def test_two_by_two(self):
        m = merit_from([[0.6, -0.6], [-0.4, 0.4]])
        a = solve_assignment(m)
        assert a.mapping == {"c0": "f0", "c1": "f1"}
        assert a.total_merit == pytest.approx(1.0)

    def test_identity_merit(self):
        m = merit_from(np.eye(4))
        a = solve_assignment(m)
        assert a.feature_indices == (0, 1, 2, 3)
        assert a.total_merit == pytest.approx(4.0)

    def test_infeasible(self):
        lib = FeatureLibrary.from_ids(["f0", "f1"])
        cs = ConceptSet(("c0", "c1", "c2"))
        m = MeritMatrix(lib, cs, np.zeros((2, 3)))
        with pytest.raises(InfeasibleError):
            solve_assignment(m)

    def test_brute_force_guard(self):
        m = merit_from(np.zeros((13, 2)))
        with pytest.raises(ValidationError):
            brute_force_assignment(m)

    def test_oracle_equivalence(self, rng):
        for _ in range(300):
            n = rng.integers(2, 7)
            N = rng.integers(n, 11)
            m = merit_from(rng.normal(size=(N, n)))
            fast = solve_assignment(m)
            slow = brute_force_assignment(m)
            assert fast.total_merit == pytest.approx(
                slow.total_merit, abs=1e-9
            )
            assert len(set(fast.feature_indices)) == n

    def test_column_shift_preserves_argmax(self, rng):
        for _ in range(50):
            n, N = 4, 7
            values = rng.normal(size=(N, n))
            shift = rng.normal()
            shifted = values.copy()
            shifted[:, 2] += shift
            a1 = solve_assignment(merit_from(values))
            a2 = solve_assignment(merit_from(shifted))
            assert a2.total_merit == pytest.approx(
                a1.total_merit + shift, abs=1e-9
            )

    def test_balanced_total_is_pairwise_margin(self, rng):
        # for 2 concepts, total balanced merit of any mapping equals the
        # diagonal-minus-antidiagonal association margin
        for _ in range(50):
            t = random_table(rng, 6, 2)
            m = balanced_merit(t)
            a = t.values
            for i1 in range(6):
                for i2 in range(6):
                    if i1 == i2:
                        continue
                    total = m.values[i1, 0] + m.values[i2, 1]
                    margin = (a[i1, 0] + a[i2, 1]) - (a[i1, 1] + a[i2, 0])
                    assert total == pytest.approx(margin, abs=1e-12)
