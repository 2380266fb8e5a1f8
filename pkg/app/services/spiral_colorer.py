"""Priority-greedy 3-coloring along spiral chains, with the triangle rule."""

import logging
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence, Union

from app.models.schemas import (
    Color,
    ColoringOutcome,
    FailureCertificate,
    OutcomeStatus,
    SpiralDecomposition,
    TraceRule,
    TraceStep,
)
from app.services.cycle_detector import Triangle, triangles_by_edge
from app.services.planar_graph import PlanarGraph

logger = logging.getLogger(__name__)

UNCOLORED = 0
RANKS = (Color.GREEN, Color.YELLOW, Color.RED)

Coloring = Union[Mapping[int, int], Sequence[Optional[int]]]


class DecompositionMismatchError(ValueError):
    """Raised when a decomposition does not partition the graph's vertices."""


class PartialColoringError(ValueError):
    """Raised when verify() is given a coloring that leaves vertices uncolored."""


@dataclass
class ColoringState:
    """Mutable state of one coloring run; ``colors[v] == 0`` means uncolored."""
    graph: PlanarGraph
    colors: list[int]
    triangles: dict[tuple[int, int], list[Triangle]]
    trace: list[TraceStep] = field(default_factory=list)
    chain: int = 0
    failure: Optional[FailureCertificate] = None

    @classmethod
    def for_graph(cls, g: PlanarGraph) -> "ColoringState":
        return cls(graph=g, colors=[UNCOLORED] * g.vertex_count, triangles=triangles_by_edge(g))

    def neighbor_colors(self, v: int) -> dict[int, int]:
        return {w: self.colors[w] for w in self.graph.neighbors(v) if self.colors[w]}

    def smallest_free(self, v: int) -> Optional[int]:
        used = set(self.neighbor_colors(v).values())
        return next((int(c) for c in RANKS if c not in used), None)

    def is_proper_at(self, v: int) -> bool:
        return self.colors[v] not in self.neighbor_colors(v).values()

    def triangles_on(self, u: int, v: int) -> list[Triangle]:
        return self.triangles.get((min(u, v), max(u, v)), [])

    def record(self, v: int, rule: TraceRule, color: Optional[int] = None) -> None:
        self.trace.append(TraceStep(position=len(self.trace), chain=self.chain, vertex=v, rule=rule, color=color))

    def assign(self, v: int, color: int, rule: TraceRule) -> None:
        self.colors[v] = color
        self.record(v, rule, color)

    def fail(self, v: int, rule: TraceRule) -> None:
        self.failure = FailureCertificate(
            vertex=v,
            chain=self.chain,
            rule=rule,
            neighbor_colors=self.neighbor_colors(v),
            trace_position=len(self.trace),
        )

    def greedy(self, v: int) -> bool:
        """Give v the smallest rank absent from its colored neighbors."""
        color = self.smallest_free(v)
        if color is None:
            self.fail(v, TraceRule.GREEDY)
            return False
        self.assign(v, color, TraceRule.GREEDY)
        return True

    def outcome(self) -> ColoringOutcome:
        if self.failure is not None:
            return ColoringOutcome(
                status=OutcomeStatus.FAILURE,
                counts=_counts(self.colors),
                certificate=self.failure,
                trace=self.trace,
                graph_hash=self.graph.graph_hash,
            )
        return ColoringOutcome(
            status=OutcomeStatus.SUCCESS,
            colors=list(self.colors),
            counts=_counts(self.colors),
            trace=self.trace,
            graph_hash=self.graph.graph_hash,
        )


def _counts(colors: Sequence[int]) -> list[int]:
    return [sum(1 for c in colors if c == rank) for rank in RANKS]


def _reassign(state: ColoringState, v_j: int, v_next: int) -> None:
    # Re-greedy the chain edge, v_j first; keep the old pair if that fails and it was proper.
    colors = state.colors
    old_j, old_next = colors[v_j], colors[v_next]
    was_proper = state.is_proper_at(v_j) and state.is_proper_at(v_next)

    colors[v_j] = colors[v_next] = UNCOLORED
    new_j = state.smallest_free(v_j)
    new_next = None
    if new_j is not None:
        colors[v_j] = new_j
        new_next = state.smallest_free(v_next)

    if new_j is not None and new_next is not None:
        colors[v_next] = new_next
        if (new_j, new_next) != (old_j, old_next):
            state.record(v_j, TraceRule.REASSIGN, new_j)
            state.record(v_next, TraceRule.REASSIGN, new_next)
        return

    if was_proper:
        colors[v_j], colors[v_next] = old_j, old_next
        state.record(v_j, TraceRule.REASSIGN_REJECTED)
        return

    state.record(v_j, TraceRule.CLEARED)
    state.record(v_next, TraceRule.CLEARED)
    if new_j is not None:
        state.record(v_j, TraceRule.REASSIGN, new_j)
        state.fail(v_next, TraceRule.REASSIGN)
    else:
        state.fail(v_j, TraceRule.REASSIGN)


def apply_triangle_rule(state: ColoringState, edge: tuple[int, int]) -> ColoringState:
    """
    Apply the triangle rule to every triangle containing a chain edge.

    ``edge`` is (v_j, v_{j+1}), both already colored. For each triangle on the
    edge, in sorted order, with third vertex v_k:

    - v_k uncolored and the edge holds {c1, c2}: v_k takes c3, or the run
      fails at v_k if a neighbor already holds c3.
    - v_k colored c1 or c2: v_j and v_{j+1} are cleared and re-greedied in
      that order; the previous pair is kept when the re-greedy gets stuck and
      the previous pair was proper, otherwise the run fails.
    - v_k colored c3: nothing to do.

    Args:
        state: Current run state, mutated in place
        edge: Chain edge (v_j, v_{j+1})

    Returns:
        The same state; ``state.failure`` is set if the run got stuck
    """
    v_j, v_next = edge
    if not (state.colors[v_j] and state.colors[v_next]):
        raise ValueError(f"triangle rule needs both ends of {edge} colored")
    for tri in state.triangles_on(v_j, v_next):
        v_k = tri.third(v_j, v_next)
        third = state.colors[v_k]
        if third == UNCOLORED:
            if {state.colors[v_j], state.colors[v_next]} == {Color.GREEN, Color.YELLOW}:
                if Color.RED in state.neighbor_colors(v_k).values():
                    state.fail(v_k, TraceRule.TRIANGLE)
                else:
                    state.assign(v_k, Color.RED, TraceRule.TRIANGLE)
        elif third != Color.RED:
            _reassign(state, v_j, v_next)
        if state.failure is not None:
            break
    return state


def _check_decomposition(g: PlanarGraph, d: SpiralDecomposition) -> None:
    seen = [v for c in d.chains for v in c.vertices]
    if len(seen) != g.vertex_count or sorted(seen) != list(range(g.vertex_count)):
        raise DecompositionMismatchError(
            f"decomposition covers {len(set(seen))} distinct of {g.vertex_count} vertices "
            f"({len(seen)} entries)"
        )


def color(g: PlanarGraph, d: SpiralDecomposition) -> ColoringOutcome:
    """
    Color the graph chain by chain, S_k down to S_1, each chain in reverse.

    Every vertex takes the smallest rank not on a colored neighbor unless a
    triangle rule already colored it; after each vertex the triangle rule is
    applied to its chain edge towards the following vertex. The run stops at
    the first vertex that cannot be colored and reports a certificate.

    Args:
        g: Embedded graph
        d: Spiral decomposition of g

    Returns:
        Success with a verified proper coloring, or Failure with a certificate

    Raises:
        DecompositionMismatchError: d does not partition V(g)
    """
    _check_decomposition(g, d)
    state = ColoringState.for_graph(g)
    for chain in reversed(d.chains):
        state.chain = chain.index
        seq = chain.vertices
        for pos in range(len(seq) - 1, -1, -1):
            v = seq[pos]
            if state.colors[v]:
                state.record(v, TraceRule.SKIP, state.colors[v])
            elif not state.greedy(v):
                return state.outcome()
            if pos + 1 < len(seq):
                apply_triangle_rule(state, (v, seq[pos + 1]))
                if state.failure is not None:
                    logger.debug("coloring stuck at vertex %d", state.failure.vertex)
                    return state.outcome()

    violations = verify(g, state.colors)
    if violations:
        raise AssertionError(f"coloring run produced conflicting edges {violations[:3]}")
    return state.outcome()


def _as_list(g: PlanarGraph, coloring: Coloring) -> list[Optional[int]]:
    if isinstance(coloring, Mapping):
        return [coloring.get(v) for v in range(g.vertex_count)]
    colors = list(coloring)
    if len(colors) != g.vertex_count:
        raise PartialColoringError(f"coloring has {len(colors)} entries for {g.vertex_count} vertices")
    return colors


def verify(g: PlanarGraph, coloring: Coloring) -> list[tuple[int, int]]:
    """
    List the monochromatic edges of a total coloring.

    Raises:
        PartialColoringError: some vertex has no color
    """
    colors = _as_list(g, coloring)
    missing = [v for v, c in enumerate(colors) if c not in RANKS]
    if missing:
        raise PartialColoringError(f"{len(missing)} vertices uncolored, first {missing[0]}")
    return [(u, w) for u, w in g.edges() if colors[u] == colors[w]]


def color_stats(outcome: ColoringOutcome) -> list[int]:
    """Vertices per color [c1, c2, c3] of a successful run."""
    if not outcome.succeeded:
        raise ValueError("color statistics need a successful outcome")
    return _counts(outcome.colors)


def replay(g: PlanarGraph, trace: Sequence[TraceStep], upto: Optional[int] = None) -> list[int]:
    """Colors after the first ``upto`` trace steps (all steps by default)."""
    colors = [UNCOLORED] * g.vertex_count
    for step in trace[:upto]:
        if step.rule == TraceRule.CLEARED:
            colors[step.vertex] = UNCOLORED
        elif step.rule in (TraceRule.GREEDY, TraceRule.TRIANGLE, TraceRule.REASSIGN):
            colors[step.vertex] = step.color
    return colors
