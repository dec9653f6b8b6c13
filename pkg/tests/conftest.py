import os

import pytest

from cyclecover import build_graph, flower, petersen
from cyclecover.families import parse_graph6
from cyclecover.graphs import is_bridgeless

DATA = os.path.join(os.path.dirname(__file__), "data")


@pytest.fixture(scope="session")
def k4():
    return build_graph([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


@pytest.fixture(scope="session")
def prism():
    return build_graph([(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3),
                        (0, 3), (1, 4), (2, 5)])


@pytest.fixture(scope="session")
def k33():
    return build_graph([(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5),
                        (2, 3), (2, 4), (2, 5)])


@pytest.fixture(scope="session")
def pete():
    return petersen()


@pytest.fixture(scope="session")
def j5():
    return flower(5)


def load_corpus(max_n):
    """Cubic graphs (one per isomorphism class) from the committed corpus."""
    out = []
    with open(os.path.join(DATA, "cubic_le12.g6")) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            g = parse_graph6(line)
            if g.n <= max_n:
                out.append(g)
    return out


def load_bridgeless_corpus(max_n):
    return [g for g in load_corpus(max_n) if is_bridgeless(g)]


def load_snarks18():
    with open(os.path.join(DATA, "snarks18.g6")) as fh:
        return [parse_graph6(line.strip()) for line in fh if line.strip()]
