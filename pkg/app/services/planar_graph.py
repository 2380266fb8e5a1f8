"""Embedded planar graphs: rotation systems, face tracing and validation."""

import hashlib
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

import networkx as nx

from app.models.schemas import GraphDocument

logger = logging.getLogger(__name__)


class GraphValidationError(ValueError):
    """Raised when a rotation system is not a valid connected plane embedding."""

    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


@dataclass(frozen=True)
class PlanarGraph:
    """
    Immutable connected simple graph with a combinatorial embedding.

    ``rotation[v]`` lists the neighbors of ``v`` in clockwise order and
    ``outer_face`` is the boundary walk of the designated outer face, in the
    direction produced by :func:`trace_faces`. Instances are created through
    :func:`build` (or :func:`build_from_dart`), which validates both.
    """
    vertex_count: int
    rotation: tuple[tuple[int, ...], ...]
    outer_face: tuple[int, ...]

    @cached_property
    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(r) for r in self.rotation)

    @cached_property
    def edge_count(self) -> int:
        return sum(len(r) for r in self.rotation) // 2

    @cached_property
    def nx_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.vertex_count))
        graph.add_edges_from(self.edges())
        return graph

    @cached_property
    def graph_hash(self) -> str:
        payload = self.to_document().model_dump_json()
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.rotation[v]

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbor_sets[u]

    def edges(self) -> list[tuple[int, int]]:
        """Undirected edges as sorted pairs, in increasing order."""
        return sorted((u, w) for u, row in enumerate(self.rotation) for w in row if u < w)

    def outer_vertices(self) -> list[int]:
        """Distinct vertices on the outer face, ascending."""
        return sorted(set(self.outer_face))

    def to_document(self) -> GraphDocument:
        return GraphDocument(
            n=self.vertex_count,
            rotation=[list(r) for r in self.rotation],
            outer_face=list(self.outer_face),
        )


def _positions(rotation: Sequence[Sequence[int]]) -> list[dict[int, int]]:
    return [{w: i for i, w in enumerate(row)} for row in rotation]


def _walk(
    rotation: Sequence[Sequence[int]],
    positions: list[dict[int, int]],
    dart: tuple[int, int],
    visited: Optional[set[tuple[int, int]]] = None,
) -> list[int]:
    # Arriving at v from u, leave along the clockwise successor of u at v.
    walk = []
    u, v = dart
    while True:
        walk.append(u)
        if visited is not None:
            visited.add((u, v))
        row = rotation[v]
        nxt = row[(positions[v][u] + 1) % len(row)]
        u, v = v, nxt
        if (u, v) == dart:
            return walk


def face_from_dart(rotation: Sequence[Sequence[int]], dart: tuple[int, int]) -> list[int]:
    """Trace the face to the left-turn side of a directed edge."""
    return _walk(rotation, _positions(rotation), dart)


def trace_faces(g: "PlanarGraph | Sequence[Sequence[int]]") -> list[list[int]]:
    """
    Enumerate every face of an embedding as a boundary walk.

    Each directed edge (u, v) belongs to exactly one face; faces are listed in
    the order of their smallest starting dart. A graph with a single vertex
    and no edges has the single face ``[0]``.

    Args:
        g: A PlanarGraph, or a raw rotation system (list of neighbor lists)

    Returns:
        List of face walks
    """
    rotation = g.rotation if isinstance(g, PlanarGraph) else g
    if len(rotation) == 1 and not rotation[0]:
        return [[0]]
    positions = _positions(rotation)
    visited: set[tuple[int, int]] = set()
    faces = []
    for u, row in enumerate(rotation):
        for v in row:
            if (u, v) not in visited:
                faces.append(_walk(rotation, positions, (u, v), visited))
    return faces


def is_cyclic_shift(a: Sequence[int], b: Sequence[int]) -> bool:
    """True if ``b`` is a rotation of ``a`` (same direction)."""
    if len(a) != len(b):
        return False
    if not a:
        return True
    a, b = list(a), list(b)
    return any(a[i:] + a[:i] == b for i, x in enumerate(a) if x == b[0])


def _check_rotation(vertex_count: int, rotation: Sequence[Sequence[int]]) -> None:
    if vertex_count < 1:
        raise GraphValidationError("empty", "graph must have at least one vertex")
    if len(rotation) != vertex_count:
        raise GraphValidationError(
            "vertex_count",
            f"rotation has {len(rotation)} rows for {vertex_count} vertices",
        )
    adjacency = []
    for v, row in enumerate(rotation):
        for w in row:
            if not isinstance(w, int) or not 0 <= w < vertex_count:
                raise GraphValidationError("vertex_id", f"vertex {v} lists unknown neighbor {w!r}")
            if w == v:
                raise GraphValidationError("self_loop", f"self-loop at vertex {v}")
        if len(set(row)) != len(row):
            raise GraphValidationError("multi_edge", f"vertex {v} lists a neighbor twice")
        adjacency.append(set(row))
    for v, nbrs in enumerate(adjacency):
        for w in nbrs:
            if v not in adjacency[w]:
                raise GraphValidationError("asymmetric", f"edge {v}-{w} is missing from rotation[{w}]")


def build(
    vertex_count: int,
    rotation: Sequence[Sequence[int]],
    outer_face: Sequence[int],
) -> PlanarGraph:
    """
    Validate a rotation system and return an immutable PlanarGraph.

    Checks, in order: vertex ids, self-loops, repeated neighbors, symmetry,
    connectivity, Euler's formula V - E + F = 2 over the traced faces, and that
    ``outer_face`` is one of the traced faces up to cyclic rotation.

    Raises:
        GraphValidationError: with ``reason`` naming the first failed check
    """
    _check_rotation(vertex_count, rotation)
    g = PlanarGraph(
        vertex_count=vertex_count,
        rotation=tuple(tuple(row) for row in rotation),
        outer_face=tuple(outer_face),
    )
    if not nx.is_connected(g.nx_graph):
        raise GraphValidationError("disconnected", "graph is not connected")

    faces = trace_faces(g)
    euler = vertex_count - g.edge_count + len(faces)
    if euler != 2:
        raise GraphValidationError(
            "euler",
            f"Euler check fails: V - E + F = {vertex_count} - {g.edge_count} + {len(faces)} = {euler}",
        )

    if not any(is_cyclic_shift(face, g.outer_face) for face in faces):
        raise GraphValidationError("outer_face", "outer_face does not match any traced face")

    logger.debug("built graph: V=%d E=%d F=%d", vertex_count, g.edge_count, len(faces))
    return g


def build_from_dart(
    vertex_count: int,
    rotation: Sequence[Sequence[int]],
    outer_dart: Optional[tuple[int, int]] = None,
) -> PlanarGraph:
    """Build a graph whose outer face is the face traced from ``outer_dart``."""
    _check_rotation(vertex_count, rotation)
    if outer_dart is None:
        if vertex_count == 1:
            return build(1, rotation, [0])
        if not rotation[0]:
            raise GraphValidationError("disconnected", "vertex 0 has no neighbors")
        outer_dart = (0, rotation[0][0])
    if outer_dart[1] not in rotation[outer_dart[0]]:
        raise GraphValidationError("outer_face", f"{outer_dart} is not an edge")
    return build(vertex_count, rotation, face_from_dart(rotation, outer_dart))


def from_document(doc: GraphDocument) -> PlanarGraph:
    return build(doc.n, doc.rotation, doc.outer_face)
