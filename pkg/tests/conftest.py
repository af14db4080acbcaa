import itertools

import numpy as np
import pytest
from hypothesis import settings

import artifact

settings.register_profile("suite", deadline=None, max_examples=60)
settings.load_profile("suite")

# The library class is not a pytest test case despite its name.
artifact.TestChannel.__test__ = False


def deterministic_quantizers(y_size: int, u_size: int) -> tuple[artifact.TestChannel, ...]:
    """All u_size**y_size deterministic maps from y letters to u letters."""
    out = []
    for assignment in itertools.product(range(u_size), repeat=y_size):
        rows = np.zeros((y_size, u_size))
        for y, u in enumerate(assignment):
            rows[y, u] = 1.0
        out.append(artifact.TestChannel(u_size=u_size, rows=rows))
    return tuple(out)


@pytest.fixture
def one_sided_scenario():
    """Two contexts where observation letter 2 is possible only under x = 1.

    The best plan merges letters 0 and 1, the only error event is a run
    with no letter-2 sightings, and the worst-pair exponent is exactly
    -log 0.9.
    """
    source = artifact.JointSourcePmf(
        x_size=2, s_size=2, probs=np.array([[0.28, 0.22], [0.26, 0.24]]))
    observation = artifact.ObservationChannel(
        y_size=3,
        rows=np.array([[[0.62, 0.38, 0.00], [0.45, 0.55, 0.00]],
                       [[0.58, 0.32, 0.10], [0.41, 0.49, 0.10]]]))
    return source, observation


@pytest.fixture
def bsc_scenario():
    """Binary symmetric sensing at crossover 0.1, one context."""
    source = artifact.JointSourcePmf(x_size=2, s_size=1, probs=np.array([[0.5], [0.5]]))
    observation = artifact.ObservationChannel(
        y_size=2, rows=np.array([[[0.9, 0.1]], [[0.1, 0.9]]]))
    return source, observation


@pytest.fixture
def identity2():
    return artifact.TestChannel(u_size=2, rows=np.eye(2))
