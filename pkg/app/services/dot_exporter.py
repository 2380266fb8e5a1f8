"""Graphviz DOT rendering of a decomposed (and optionally colored) graph."""

from pathlib import Path
from typing import Optional

from jinja2 import Environment, FileSystemLoader

from app.models.schemas import Color, ColoringOutcome, SpiralDecomposition
from app.services.planar_graph import PlanarGraph


TEMPLATES_DIR = Path(__file__).resolve().parent.parent / "templates"

_env = Environment(
    loader=FileSystemLoader(str(TEMPLATES_DIR)),
    trim_blocks=True,
    lstrip_blocks=True,
    keep_trailing_newline=True,
)


def export_dot(
    g: PlanarGraph,
    d: SpiralDecomposition,
    outcome: Optional[ColoringOutcome] = None,
    name: str = "G",
) -> str:
    """
    Render the graph as an undirected DOT document.

    Every node carries its chain index; with a successful outcome nodes are
    also filled green, yellow or red by color rank.
    """
    chain_of = d.chain_of()
    colors = outcome.colors if outcome is not None and outcome.succeeded else None
    nodes = [
        {
            "id": v,
            "chain": chain_of[v],
            "label": f"{v}:S{chain_of[v]}",
            "fill": Color(colors[v]).label if colors else None,
        }
        for v in range(g.vertex_count)
    ]
    return _env.get_template("graph.dot.j2").render(name=name, nodes=nodes, edges=g.edges())
