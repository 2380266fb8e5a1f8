"""Spiral-chain decomposition of an embedded planar graph."""

import logging
from typing import Optional, Sequence

import networkx as nx

from app.models.schemas import Orientation, SpiralChain, SpiralDecomposition
from app.services.planar_graph import PlanarGraph

logger = logging.getLogger(__name__)


class SpiralError(ValueError):
    """Raised for an invalid start vertex or a restart with nothing left to scan."""


def _oriented_rotation(g: PlanarGraph, orientation: Orientation) -> tuple[tuple[int, ...], ...]:
    if orientation == Orientation.CCW:
        return tuple(tuple(reversed(row)) for row in g.rotation)
    return g.rotation


def _first_arrival(g: PlanarGraph, start: int, orientation: Orientation) -> Optional[int]:
    # The outer-face neighbor of start that the spiral "arrives from".
    outer = g.outer_face
    if len(outer) < 2:
        return None
    i = outer.index(start)
    if orientation == Orientation.CCW:
        return outer[(i + 1) % len(outer)]
    return outer[i - 1]


def _next_unscanned(
    rotation: Sequence[Sequence[int]],
    positions: list[dict[int, int]],
    v: int,
    arrival: Optional[int],
    scanned: list[bool],
) -> Optional[int]:
    """First unscanned neighbor of v after ``arrival`` in rotation order."""
    row = rotation[v]
    offset = positions[v][arrival] + 1 if arrival is not None else 0
    for k in range(len(row)):
        w = row[(offset + k) % len(row)]
        if not scanned[w]:
            return w
    return None


def _closest_unscanned(g: PlanarGraph, scanned: list[bool], last: int) -> tuple[int, Optional[int]]:
    """Nearest unscanned vertex by BFS distance (ties: smallest id) and its entry neighbor."""
    previous: set[int] = set()
    for layer in nx.bfs_layers(g.nx_graph, last):
        candidates = [x for x in layer if not scanned[x]]
        if candidates:
            target = min(candidates)
            entry = [y for y in g.neighbors(target) if y in previous]
            return target, (min(entry) if entry else None)
        previous = set(layer)
    raise SpiralError("every vertex is already scanned")


def chain_restart_target(g: PlanarGraph, scanned: Sequence[bool], last: int) -> int:
    """
    Pick where the next spiral chain starts.

    Args:
        g: Embedded graph
        scanned: Per-vertex flags of vertices already placed in a chain
        last: Last vertex of the chain that just ended

    Returns:
        The unscanned vertex closest to ``last``, smallest id on ties
    """
    return _closest_unscanned(g, list(scanned), last)[0]


def decompose(
    g: PlanarGraph,
    start: Optional[int] = None,
    orientation: Orientation = Orientation.CW,
) -> SpiralDecomposition:
    """
    Partition the vertices into maximal spiral chains S_1, ..., S_k.

    Each chain starts at a vertex and repeatedly steps to the first unscanned
    neighbor following the previous vertex in the chosen rotation direction,
    so S_1 runs along the outer face and later chains wind inward. A chain
    ends when the current vertex has no unscanned neighbor; the next one
    starts at :func:`chain_restart_target`.

    Args:
        g: Embedded graph
        start: First vertex of S_1, on the outer face; defaults to the smallest outer id
        orientation: Rotation direction

    Returns:
        SpiralDecomposition whose chains cover every vertex exactly once

    Raises:
        SpiralError: start is not on the outer face
    """
    orientation = Orientation(orientation)
    if start is None:
        start = min(g.outer_face)
    elif start not in g.outer_face:
        raise SpiralError(f"start vertex {start} is not on the outer face")

    rotation = _oriented_rotation(g, orientation)
    positions = [{w: i for i, w in enumerate(row)} for row in rotation]
    scanned = [False] * g.vertex_count
    remaining = g.vertex_count

    chains: list[SpiralChain] = []
    current, arrival = start, _first_arrival(g, start, orientation)
    while True:
        sequence = [current]
        scanned[current] = True
        remaining -= 1
        v, u = current, arrival
        while (w := _next_unscanned(rotation, positions, v, u, scanned)) is not None:
            sequence.append(w)
            scanned[w] = True
            remaining -= 1
            u, v = v, w
        chains.append(SpiralChain(index=len(chains) + 1, vertices=sequence))
        if remaining == 0:
            break
        current, arrival = _closest_unscanned(g, scanned, sequence[-1])

    logger.debug("spiral from %d (%s): %d chains", start, orientation.value, len(chains))
    return SpiralDecomposition(start=start, orientation=orientation, chains=chains)


def chain_edges(d: SpiralDecomposition) -> list[tuple[int, int]]:
    """Consecutive vertex pairs of every chain."""
    return [(c.vertices[i], c.vertices[i + 1]) for c in d.chains for i in range(len(c.vertices) - 1)]
