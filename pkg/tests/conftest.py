import numpy as np
import pytest

from semdisc import AssociationTable


def random_table(rng, n_features, n_concepts, low=0.02, high=0.98):
    """Random valid association table with strictly interior values so
    every column sum is positive and noise sigmas are nonzero."""
    values = rng.uniform(low, high, size=(n_features, n_concepts))
    return AssociationTable.from_arrays(
        [f"f{i}" for i in range(n_features)],
        [f"c{j}" for j in range(n_concepts)],
        values,
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)
