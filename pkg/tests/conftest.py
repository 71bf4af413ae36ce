import pytest

from preclude.generators import complete_bipartite, cycle, path
from preclude.graphcore import build_graph


@pytest.fixture
def two_triangles():
    """Triangles {0,1,2} and {3,4,5} joined by the bridge (2,3)."""
    return build_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])


@pytest.fixture
def k4():
    return build_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


@pytest.fixture
def c4():
    return cycle(4)


@pytest.fixture
def p4():
    return path(4)


@pytest.fixture
def k2():
    return complete_bipartite(1, 1)


@pytest.fixture
def three_three():
    """a1b1, a1b2, a2b1, a2b2, a2b3, a3b3 with a_i = i-1 and b_j = j+2."""
    return build_graph(6, [(0, 3), (0, 4), (1, 3), (1, 4), (1, 5), (2, 5)])
