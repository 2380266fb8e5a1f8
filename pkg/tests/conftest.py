"""Shared graph fixtures."""

import pytest

from app.services.generators import gadget_hexagon_triangles, gadget_three_triangles_hub
from app.services.planar_graph import PlanarGraph, build


def cycle_graph(n: int) -> PlanarGraph:
    """C_n with vertices 0..n-1 in order around the outer face."""
    return build(n, [[(i + 1) % n, (i - 1) % n] for i in range(n)], list(range(n)))


# K4 drawn as triangle 0, 1, 2 with 3 in the middle
K4_ROTATION = [[1, 3, 2], [2, 3, 0], [0, 3, 1], [0, 1, 2]]


@pytest.fixture
def triangle() -> PlanarGraph:
    return build(3, [[1, 2], [2, 0], [0, 1]], [0, 1, 2])


@pytest.fixture
def c4() -> PlanarGraph:
    return cycle_graph(4)


@pytest.fixture
def c6() -> PlanarGraph:
    return cycle_graph(6)


@pytest.fixture
def c7() -> PlanarGraph:
    return cycle_graph(7)


@pytest.fixture
def k4() -> PlanarGraph:
    return build(4, K4_ROTATION, [0, 1, 2])


@pytest.fixture
def gadget() -> PlanarGraph:
    return gadget_hexagon_triangles(6).graph


@pytest.fixture
def hub() -> PlanarGraph:
    return gadget_three_triangles_hub().graph
