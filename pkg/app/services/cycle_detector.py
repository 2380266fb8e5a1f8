"""Short-cycle and triangle detection, and the G6 membership test."""

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import networkx as nx

from app.models.schemas import CycleReport
from app.services.planar_graph import PlanarGraph


# Cycle lengths excluded from the class G6 (and from its stricter variant)
DEFAULT_FORBIDDEN_LENGTHS = (4, 5)
STRICT_FORBIDDEN_LENGTHS = (4, 5, 6)

GraphLike = Union[PlanarGraph, nx.Graph]


@dataclass(frozen=True, order=True)
class Triangle:
    """A 3-cycle with vertices a < b < c."""
    a: int
    b: int
    c: int

    @classmethod
    def of(cls, u: int, v: int, w: int) -> "Triangle":
        return cls(*sorted((u, v, w)))

    @property
    def vertices(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def edges(self) -> tuple[tuple[int, int], ...]:
        return ((self.a, self.b), (self.a, self.c), (self.b, self.c))

    def third(self, u: int, v: int) -> int:
        """The vertex of the triangle that is neither u nor v."""
        (rest,) = set(self.vertices) - {u, v}
        return rest


def _as_nx(g: GraphLike) -> nx.Graph:
    return g.nx_graph if isinstance(g, PlanarGraph) else g


def forbidden_lengths(strict: bool = False) -> tuple[int, ...]:
    return STRICT_FORBIDDEN_LENGTHS if strict else DEFAULT_FORBIDDEN_LENGTHS


def canonical_cycle(cycle: Sequence[int]) -> tuple[int, ...]:
    """Smallest sequence among all rotations of both traversal directions."""
    seq = list(cycle)
    candidates = []
    for walk in (seq, seq[::-1]):
        i = walk.index(min(walk))
        candidates.append(tuple(walk[i:] + walk[:i]))
    return min(candidates)


def find_short_cycles(g: GraphLike, lengths: Iterable[int] = DEFAULT_FORBIDDEN_LENGTHS) -> CycleReport:
    """
    Enumerate every simple cycle whose length is in ``lengths``.

    Cycles are reported once each in canonical form, sorted by length and then
    lexicographically. Two cycles on the same vertex set with different edge
    sets (for example the three 4-cycles of K4) are distinct.

    Args:
        g: Graph to search
        lengths: Cycle lengths to report, each at least 3

    Returns:
        CycleReport listing the cycles found
    """
    wanted = sorted(set(lengths))
    if not wanted or wanted[0] < 3:
        raise ValueError("cycle lengths must be at least 3")
    found: set[tuple[int, ...]] = set()
    for cycle in nx.simple_cycles(_as_nx(g), length_bound=wanted[-1]):
        if len(cycle) in wanted:
            found.add(canonical_cycle(cycle))
    cycles = sorted(found, key=lambda c: (len(c), c))
    return CycleReport(lengths=wanted, cycles=[list(c) for c in cycles])


def triangles_of(g: GraphLike) -> list[Triangle]:
    """All triangles, sorted."""
    graph = _as_nx(g)
    triangles = []
    for u, v in graph.edges():
        if u > v:
            u, v = v, u
        for w in set(graph[u]) & set(graph[v]):
            if w > v:
                triangles.append(Triangle(u, v, w))
    return sorted(triangles)


def triangles_by_edge(g: GraphLike) -> dict[tuple[int, int], list[Triangle]]:
    """Index triangles by each of their (sorted) edges."""
    index: dict[tuple[int, int], list[Triangle]] = defaultdict(list)
    for t in triangles_of(g):
        for e in t.edges():
            index[e].append(t)
    return dict(index)


def adjacent_triangle_pairs(g: GraphLike) -> list[tuple[Triangle, Triangle]]:
    """Pairs of distinct triangles sharing an edge; each such pair spans a 4-cycle."""
    pairs = set()
    for tris in triangles_by_edge(g).values():
        for i, t1 in enumerate(tris):
            for t2 in tris[i + 1:]:
                pairs.add((t1, t2) if t1 < t2 else (t2, t1))
    return sorted(pairs)


def is_g6(g: GraphLike, strict: bool = False) -> bool:
    """True if the graph has no cycle of a forbidden length."""
    return find_short_cycles(g, forbidden_lengths(strict)).is_empty
