import numpy as np
import pytest

from specwalk import graphs


@pytest.fixture
def triangle():
    return graphs.generate("cycle", {"n": 3}, 0)


@pytest.fixture
def c4():
    return graphs.generate("cycle", {"n": 4}, 0)


@pytest.fixture
def c5():
    return graphs.generate("cycle", {"n": 5}, 0)


@pytest.fixture
def path3():
    return graphs.build_graph([(0, 1, 1.0), (1, 2, 1.0)], label="path3")


@pytest.fixture
def petersen():
    return graphs.petersen()


@pytest.fixture
def small_family():
    """A mixed bag exercised by cross-module property tests."""
    return [
        graphs.generate("cycle", {"n": 3}, 0),
        graphs.generate("cycle", {"n": 6}, 0),
        graphs.generate("cycle", {"n": 7}, 0),
        graphs.petersen(),
        graphs.generate("circulant", {"n": 9, "offsets": (1, 2)}, 0),
        graphs.generate("hypercube", {"k": 3}, 0),
        graphs.generate("complete", {"n": 5}, 0),
        graphs.generate("grid_torus", {"dims": (3, 3)}, 0),
        graphs.random_connected(12, 8, 2),
        graphs.build_graph([(0, 1, 2.0), (1, 2, 1.0), (0, 2, 3.0),
                            (2, 3, 1.5)], label="weighted4"),
    ]


def rng(seed=0):
    return np.random.default_rng(seed)
