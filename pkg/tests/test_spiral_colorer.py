"""Tests for the priority-greedy spiral coloring."""

import pytest

from app.models.schemas import Color, OutcomeStatus, SpiralDecomposition, TraceRule
from app.services.generators import gadget_hexagon_triangles
from app.services.planar_graph import build
from app.services.spiral import decompose
from app.services.spiral_colorer import (
    ColoringState,
    DecompositionMismatchError,
    PartialColoringError,
    apply_triangle_rule,
    color,
    color_stats,
    replay,
    verify,
)


class TestColor:
    """Tests for color()."""

    def test_hexagon_gadget_six_reds(self, gadget):
        """Test all six apexes end up c3 and the hexagon alternates c1/c2."""
        outcome = color(gadget, decompose(gadget))
        assert outcome.status == OutcomeStatus.SUCCESS
        assert outcome.colors[:6] == [Color.RED] * 6
        assert outcome.colors[6:] == [1, 2, 1, 2, 1, 2]
        assert color_stats(outcome) == [3, 3, 6]

    @pytest.mark.parametrize("t", range(7))
    def test_reduced_gadget_reds(self, t):
        """Test that t triangles give exactly t vertices colored c3."""
        g = gadget_hexagon_triangles(t).graph
        outcome = color(g, decompose(g))
        assert outcome.succeeded
        assert color_stats(outcome)[2] == t

    def test_c6_needs_no_red(self, c6):
        """Test an even cycle is 2-colored."""
        outcome = color(c6, decompose(c6))
        assert color_stats(outcome) == [3, 3, 0]

    def test_hub_gadget_z_vertices_agree(self, hub):
        """Test all z vertices share a color different from the hub's."""
        outcome = color(hub, decompose(hub))
        assert outcome.succeeded
        z_colors = {outcome.colors[z] for z in (1, 2, 3)}
        assert len(z_colors) == 1
        assert outcome.colors[0] not in z_colors
        assert outcome.colors == [1, 2, 2, 2, 3, 1, 3, 1, 3, 1]

    def test_c7_trace(self, c7):
        """Test the full trace of an odd cycle."""
        outcome = color(c7, decompose(c7))
        assert outcome.colors == [3, 2, 1, 2, 1, 2, 1]
        assert [(s.vertex, s.rule, s.color) for s in outcome.trace] == [
            (6, TraceRule.GREEDY, 1),
            (5, TraceRule.GREEDY, 2),
            (4, TraceRule.GREEDY, 1),
            (3, TraceRule.GREEDY, 2),
            (2, TraceRule.GREEDY, 1),
            (1, TraceRule.GREEDY, 2),
            (0, TraceRule.GREEDY, 3),
        ]

    def test_triangle(self, triangle):
        """Test the triangle rule and reassignment on a single triangle."""
        outcome = color(triangle, decompose(triangle, start=0))
        assert outcome.colors == [2, 3, 1]
        assert [s.rule for s in outcome.trace] == [
            TraceRule.GREEDY, TraceRule.GREEDY, TraceRule.TRIANGLE,
            TraceRule.SKIP, TraceRule.REASSIGN, TraceRule.REASSIGN,
        ]

    def test_k4_fails_with_honest_certificate(self, k4):
        """Test that K4 cannot be 3-colored and the certificate is replayable."""
        outcome = color(k4, decompose(k4))
        assert outcome.status == OutcomeStatus.FAILURE
        assert outcome.colors is None
        cert = outcome.certificate
        assert set(cert.neighbor_colors.values()) == {1, 2, 3}
        state = replay(k4, outcome.trace, cert.trace_position)
        assert {state[w] for w in k4.neighbors(cert.vertex) if state[w]} == {1, 2, 3}

    def test_deterministic(self, hub):
        """Test byte-identical outcomes across runs."""
        first = color(hub, decompose(hub)).model_dump_json()
        assert color(hub, decompose(hub)).model_dump_json() == first

    def test_decomposition_mismatch(self, c6, c7):
        """Test a decomposition of another graph is rejected."""
        with pytest.raises(DecompositionMismatchError):
            color(c6, decompose(c7))

    def test_duplicate_vertex_rejected(self, triangle):
        """Test a decomposition listing a vertex twice."""
        bad = SpiralDecomposition(start=0, chains=[[0, 1], [1, 2]])
        with pytest.raises(DecompositionMismatchError):
            color(triangle, bad)

    def test_stats_need_success(self, k4):
        """Test color_stats on a failed outcome."""
        with pytest.raises(ValueError):
            color_stats(color(k4, decompose(k4)))


class TestTriangleRule:
    """Tests for apply_triangle_rule()."""

    def _state(self, g, colors):
        state = ColoringState.for_graph(g)
        state.colors = list(colors)
        return state

    def test_third_vertex_takes_red(self, triangle):
        """Test v_j=c1, v_{j+1}=c2 with v_k uncolored."""
        state = apply_triangle_rule(self._state(triangle, [1, 2, 0]), (0, 1))
        assert state.colors == [1, 2, 3]

    def test_precolored_third_forces_reassignment(self, triangle):
        """Test v_j=c1, v_{j+1}=c2 with v_k already c2."""
        state = apply_triangle_rule(self._state(triangle, [1, 2, 2]), (0, 1))
        assert state.colors == [1, 3, 2]
        assert state.failure is None

    def test_red_on_edge_means_no_action(self, triangle):
        """Test v_j=c1, v_{j+1}=c3 with v_k uncolored."""
        state = apply_triangle_rule(self._state(triangle, [1, 3, 0]), (0, 1))
        assert state.colors == [1, 3, 0]
        assert state.trace == []

    def test_third_already_red(self, triangle):
        """Test nothing happens when v_k already holds c3."""
        state = apply_triangle_rule(self._state(triangle, [1, 2, 3]), (0, 1))
        assert state.colors == [1, 2, 3]

    def test_blocked_third_vertex_fails(self):
        """Test v_k needs c3 but a neighbor outside the triangle holds it."""
        # triangle 0-1-2 with pendant 3 on vertex 2
        g = build(4, [[1, 2], [2, 0], [0, 1, 3], [2]], [0, 1, 2, 3, 2])
        state = apply_triangle_rule(self._state(g, [1, 2, 0, 3]), (0, 1))
        assert state.failure is not None
        assert state.failure.vertex == 2
        assert state.failure.rule == TraceRule.TRIANGLE

    def test_needs_colored_edge(self, triangle):
        """Test the rule refuses an uncolored chain edge."""
        with pytest.raises(ValueError):
            apply_triangle_rule(self._state(triangle, [1, 0, 0]), (0, 1))


class TestVerify:
    """Tests for verify()."""

    def test_proper(self, c6):
        """Test a proper coloring has no violations."""
        assert verify(c6, [1, 2, 1, 2, 1, 2]) == []

    def test_monochromatic_edge(self, c6):
        """Test one conflicting edge."""
        assert verify(c6, [1, 1, 2, 1, 2, 3]) == [(0, 1)]

    def test_mapping_input(self, triangle):
        """Test a dict coloring."""
        assert verify(triangle, {0: 1, 1: 2, 2: 3}) == []

    def test_partial_coloring(self, triangle):
        """Test a coloring missing a vertex."""
        with pytest.raises(PartialColoringError):
            verify(triangle, {0: 1, 1: 2})
