"""Exact 3-colorability by backtracking, and cross-checking against the heuristic."""

import logging
from typing import Optional, Union

import networkx as nx

from app.models.schemas import (
    ColoringOutcome,
    DiscrepancyRecord,
    HuntCategory,
    OracleVerdict,
    VerdictStatus,
)
from app.services.cycle_detector import DEFAULT_FORBIDDEN_LENGTHS, find_short_cycles
from app.services.planar_graph import PlanarGraph

logger = logging.getLogger(__name__)


DEFAULT_NODE_BUDGET = 10**7
FULL_DOMAIN = 0b111


class GraphMismatchError(ValueError):
    """Raised when an outcome and a verdict describe different graphs."""


class OutOfScopeError(ValueError):
    """Raised when a non-3-colorable graph turns out not to be in G6."""


class InconsistentResultsError(ValueError):
    """Raised when a verified heuristic coloring meets a NotColorable verdict."""


def _bit(color: int) -> int:
    return 1 << (color - 1)


def _adjacency(g: Union[PlanarGraph, nx.Graph]) -> list[list[int]]:
    if isinstance(g, PlanarGraph):
        return [list(row) for row in g.rotation]
    if sorted(g.nodes) != list(range(g.number_of_nodes())):
        g = nx.convert_node_labels_to_integers(g, ordering="sorted")
    return [sorted(g[v]) for v in range(g.number_of_nodes())]


class _Search:
    """Iterative DFS with forward checking over 3-bit domains and an undo trail."""

    def __init__(self, adjacency: list[list[int]]):
        self.adjacency = adjacency
        self.degree = [len(row) for row in adjacency]
        self.domain = [FULL_DOMAIN] * len(adjacency)
        self.color = [0] * len(adjacency)
        self.used = [0, 0, 0, 0]
        self.trail: list[tuple[int, int]] = []

    def select(self) -> Optional[int]:
        # Fewest remaining colors, then most neighbors, then smallest id.
        best, best_key = None, None
        for v, c in enumerate(self.color):
            if c:
                continue
            key = (bin(self.domain[v]).count("1"), -self.degree[v], v)
            if best_key is None or key < best_key:
                best, best_key = v, key
        return best

    def values(self, v: int) -> list[int]:
        # Colors are interchangeable: never open a second unused color.
        highest = max((c for c in (1, 2, 3) if self.used[c]), default=0)
        return [c for c in (1, 2, 3) if self.domain[v] & _bit(c) and c <= highest + 1]

    def assign(self, v: int, c: int) -> bool:
        self.color[v] = c
        self.used[c] += 1
        self.trail.append((v, self.domain[v]))
        self.domain[v] = _bit(c)
        for u in self.adjacency[v]:
            if not self.color[u] and self.domain[u] & _bit(c):
                self.trail.append((u, self.domain[u]))
                self.domain[u] &= ~_bit(c)
                if not self.domain[u]:
                    return False
        return True

    def undo(self, mark: int, v: int) -> None:
        while len(self.trail) > mark:
            u, dom = self.trail.pop()
            self.domain[u] = dom
        if self.color[v]:
            self.used[self.color[v]] -= 1
            self.color[v] = 0


def exact_3color(
    g: Union[PlanarGraph, nx.Graph],
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> OracleVerdict:
    """
    Decide 3-colorability exactly.

    Backtracking with minimum-remaining-values ordering (ties by degree, then
    id), forward checking and color-symmetry breaking. A search node is one
    tentative assignment.

    Args:
        g: PlanarGraph, or a networkx graph on any node labels
        node_budget: Maximum number of search nodes

    Returns:
        Colorable with a witness, NotColorable, or BudgetExhausted
    """
    if node_budget <= 0:
        raise ValueError("node_budget must be positive")
    graph_hash = g.graph_hash if isinstance(g, PlanarGraph) else None
    search = _Search(_adjacency(g))

    var = search.select()
    if var is None:
        return OracleVerdict(status=VerdictStatus.COLORABLE, witness=[], graph_hash=graph_hash)

    frames = [(var, search.values(var), len(search.trail))]
    nodes = 0
    while frames:
        var, values, mark = frames[-1]
        search.undo(mark, var)
        if not values:
            frames.pop()
            continue
        c = values.pop(0)
        if nodes >= node_budget:
            logger.info("oracle budget of %d nodes exhausted", node_budget)
            return OracleVerdict(status=VerdictStatus.BUDGET_EXHAUSTED, nodes_explored=nodes,
                                 graph_hash=graph_hash)
        nodes += 1
        if not search.assign(var, c):
            continue
        nxt = search.select()
        if nxt is None:
            return OracleVerdict(status=VerdictStatus.COLORABLE, witness=list(search.color),
                                 nodes_explored=nodes, graph_hash=graph_hash)
        frames.append((nxt, search.values(nxt), len(search.trail)))

    return OracleVerdict(status=VerdictStatus.NOT_COLORABLE, nodes_explored=nodes, graph_hash=graph_hash)


def cross_check(
    g: PlanarGraph,
    outcome: ColoringOutcome,
    verdict: Optional[OracleVerdict] = None,
    forbidden: tuple[int, ...] = DEFAULT_FORBIDDEN_LENGTHS,
) -> DiscrepancyRecord:
    """
    Classify a heuristic outcome against an oracle verdict for the same graph.

    A Success needs no verdict. A Failure is heuristic-incomplete when the
    graph is colorable, a counterexample candidate when it is not, and
    inconclusive when the oracle ran out of budget.

    Raises:
        GraphMismatchError: outcome or verdict belongs to another graph
        OutOfScopeError: NotColorable on a graph with a forbidden short cycle
        InconsistentResultsError: Success together with NotColorable
    """
    if outcome.graph_hash != g.graph_hash or (verdict is not None and verdict.graph_hash != g.graph_hash):
        raise GraphMismatchError("outcome and verdict are not for the same graph")

    if verdict is not None and verdict.status == VerdictStatus.NOT_COLORABLE:
        report = find_short_cycles(g, forbidden)
        if not report.is_empty:
            raise OutOfScopeError(f"graph is not in G6: short cycle {report.cycles[0]}")
        if outcome.succeeded:
            raise InconsistentResultsError("heuristic produced a proper coloring of a non-3-colorable graph")
        category = HuntCategory.COUNTEREXAMPLE_CANDIDATE
    elif outcome.succeeded:
        category = HuntCategory.CONSISTENT_SUCCESS
    elif verdict is None:
        raise ValueError("a failed outcome needs an oracle verdict")
    elif verdict.status == VerdictStatus.COLORABLE:
        category = HuntCategory.HEURISTIC_INCOMPLETE
    else:
        category = HuntCategory.INCONCLUSIVE

    return DiscrepancyRecord(category=category, graph_hash=g.graph_hash, outcome=outcome, verdict=verdict)
