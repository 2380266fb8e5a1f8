"""Command handlers behind the spiralcolor CLI.

Each handler takes plain arguments, prints machine-readable output to stdout
(or writes it to ``output``), and returns an ExitCode. Service exceptions are
mapped onto exit codes here and nowhere else.
"""

import logging
import sys
from pathlib import Path
from typing import Optional, Sequence, TextIO, Union

from pydantic import BaseModel, ValidationError

from app.models.schemas import (
    BenchConfig,
    ColoringOutcome,
    ExitCode,
    GeneratorKind,
    GeneratorParams,
    Orientation,
    RunConfig,
)
from app.services.bench import NEAR_LINEAR_EXPONENT, EmptyCorpusError, run_bench
from app.services.cycle_detector import adjacent_triangle_pairs, find_short_cycles, forbidden_lengths
from app.services.dot_exporter import export_dot
from app.services.generators import generate, write_corpus
from app.services.graph_io import GraphFormatError, load_graph, read_json, write_model
from app.services.hunt import hunt
from app.services.oracle import DEFAULT_NODE_BUDGET, exact_3color
from app.services.planar_graph import GraphValidationError, PlanarGraph, trace_faces
from app.services.spiral import SpiralError, decompose
from app.services.spiral_colorer import PartialColoringError, color, verify

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _emit(text: str, output: Optional[PathLike] = None) -> None:
    if output is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    path = Path(output)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    logger.info("wrote %s", path)


def _error(message: str) -> None:
    sys.stderr.write(f"error: {message}\n")


def _obtain_graph(
    path: Optional[PathLike],
    seed: Optional[int],
    generator: GeneratorKind,
    params: GeneratorParams,
    triangles: int,
) -> PlanarGraph:
    if path is not None:
        return load_graph(path)
    return generate(generator, seed or 0, params, triangles).graph


def _short_cycles_reported(g: PlanarGraph, strict: bool) -> bool:
    """Print any forbidden cycles to stderr; true when the graph is outside G6."""
    report = find_short_cycles(g, forbidden_lengths(strict))
    if report.is_empty:
        return False
    lengths = ", ".join(str(n) for n in report.lengths)
    _error(f"not in G6: {len(report.cycles)} cycle(s) of length {lengths}")
    for cycle in report.cycles:
        sys.stderr.write("  " + " ".join(str(v) for v in cycle) + "\n")
    return True


def cmd_validate(path: PathLike, strict: bool = False) -> ExitCode:
    """Report embedding validity, faces, short cycles and G6 membership."""
    try:
        g = load_graph(path)
    except GraphFormatError as e:
        _error(str(e))
        return ExitCode.MALFORMED_INPUT
    except GraphValidationError as e:
        print(f"embedding: invalid ({e.reason}: {e})")
        print("G6: no")
        return ExitCode.NOT_G6

    faces = trace_faces(g)
    lengths = forbidden_lengths(strict)
    report = find_short_cycles(g, lengths)
    pairs = adjacent_triangle_pairs(g)
    print("embedding: valid")
    print(f"vertices: {g.vertex_count}  edges: {g.edge_count}  faces: {len(faces)}  "
          f"euler: {g.vertex_count - g.edge_count + len(faces)}")
    label = ", ".join(str(n) for n in lengths)
    if report.is_empty:
        print(f"short cycles ({label}): none")
    else:
        print(f"short cycles ({label}): {len(report.cycles)}")
        for cycle in report.cycles:
            print("  " + " ".join(str(v) for v in cycle))
    print(f"adjacent triangle pairs: {len(pairs)}")
    print(f"G6: {'yes' if report.is_empty else 'no'}")
    return ExitCode.OK if report.is_empty else ExitCode.NOT_G6


def cmd_decompose(
    path: PathLike,
    start: Optional[int] = None,
    orientation: Orientation = Orientation.CW,
    output: Optional[PathLike] = None,
) -> ExitCode:
    """Print the spiral decomposition as JSON."""
    try:
        g = load_graph(path)
        d = decompose(g, start, orientation)
    except GraphFormatError as e:
        _error(str(e))
        return ExitCode.MALFORMED_INPUT
    except (GraphValidationError, SpiralError) as e:
        _error(str(e))
        return ExitCode.NOT_G6
    _emit(d.model_dump_json(), output)
    return ExitCode.OK


def cmd_color(
    path: Optional[PathLike] = None,
    start: Optional[int] = None,
    orientation: Orientation = Orientation.CW,
    trace: bool = False,
    output: Optional[PathLike] = None,
    seed: Optional[int] = None,
    generator: GeneratorKind = GeneratorKind.RANDOM,
    params: Optional[GeneratorParams] = None,
    triangles: int = 6,
    strict: bool = False,
) -> ExitCode:
    """
    Decompose and color one graph, from a file or regenerated from a seed.

    Graphs outside G6 are rejected with exit code 1 before coloring. Exit
    code 3 when the heuristic gets stuck; the failure certificate is part of
    the printed outcome.
    """
    try:
        g = _obtain_graph(path, seed, generator, params or GeneratorParams(), triangles)
        if _short_cycles_reported(g, strict):
            return ExitCode.NOT_G6
        outcome = color(g, decompose(g, start, orientation))
    except GraphFormatError as e:
        _error(str(e))
        return ExitCode.MALFORMED_INPUT
    except (GraphValidationError, SpiralError) as e:
        _error(str(e))
        return ExitCode.NOT_G6
    exclude = None if trace else {"trace"}
    _emit(outcome.model_dump_json(exclude=exclude), output)
    if not outcome.succeeded:
        cert = outcome.certificate
        logger.warning("coloring failed at vertex %d (chain %d, %s)", cert.vertex, cert.chain, cert.rule.value)
        return ExitCode.COLORING_FAILURE
    return ExitCode.OK


def _load_coloring(path: PathLike) -> list:
    data = read_json(path)
    if isinstance(data, dict):
        try:
            outcome = ColoringOutcome.model_validate(data)
        except ValidationError as e:
            raise GraphFormatError(f"{path} is not a coloring outcome") from e
        if outcome.colors is None:
            raise PartialColoringError("outcome carries no coloring")
        return outcome.colors
    if isinstance(data, list):
        return data
    raise GraphFormatError(f"{path} holds neither an outcome nor a color list")


def cmd_verify(path: PathLike, coloring_path: PathLike) -> ExitCode:
    """Check a coloring (outcome JSON or plain list of ranks) against a graph."""
    try:
        g = load_graph(path)
        violations = verify(g, _load_coloring(coloring_path))
    except GraphFormatError as e:
        _error(str(e))
        return ExitCode.MALFORMED_INPUT
    except GraphValidationError as e:
        _error(str(e))
        return ExitCode.NOT_G6
    except PartialColoringError as e:
        _error(str(e))
        return ExitCode.COLORING_FAILURE
    if violations:
        print(f"improper: {len(violations)} monochromatic edge(s)")
        for u, w in violations:
            print(f"  {u} -- {w}")
        return ExitCode.COLORING_FAILURE
    print("proper")
    return ExitCode.OK


def cmd_oracle(path: PathLike, budget: int = DEFAULT_NODE_BUDGET, output: Optional[PathLike] = None) -> ExitCode:
    """Run the exact 3-colorability search and print its verdict."""
    try:
        verdict = exact_3color(load_graph(path), budget)
    except GraphFormatError as e:
        _error(str(e))
        return ExitCode.MALFORMED_INPUT
    except GraphValidationError as e:
        _error(str(e))
        return ExitCode.NOT_G6
    _emit(verdict.model_dump_json(), output)
    return ExitCode.OK


def cmd_gen(
    generator: GeneratorKind = GeneratorKind.RANDOM,
    params: Optional[GeneratorParams] = None,
    seed: int = 0,
    count: int = 1,
    triangles: int = 6,
    output: Optional[PathLike] = None,
) -> ExitCode:
    """Write one instance (stdout or file), or a corpus directory when count > 1."""
    if count > 1 and output is None:
        _error("a corpus needs --output DIR")
        return ExitCode.MALFORMED_INPUT
    params = params or GeneratorParams()
    instances = [generate(generator, s, params, triangles) for s in range(seed, seed + count)]
    if count == 1:
        _emit(instances[0].to_document().model_dump_json(), output)
    else:
        write_corpus(instances, output)
    return ExitCode.OK


def _write_records(stream: TextIO, models: Sequence[BaseModel]) -> None:
    for m in models:
        stream.write(m.model_dump_json() + "\n")
    stream.flush()


def cmd_hunt(config: RunConfig, output: Optional[PathLike] = None) -> ExitCode:
    """
    Run a hunt, streaming one NDJSON record per run and the summary last.

    Each seed's records are flushed as soon as they are known, so an
    interrupted hunt leaves every finished seed on disk.
    """
    if output is None:
        report, _ = hunt(config, on_batch=lambda batch: _write_records(sys.stdout, batch))
        _write_records(sys.stdout, [report])
    else:
        path = Path(output)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8") as stream:
            report, _ = hunt(config, on_batch=lambda batch: _write_records(stream, batch))
            _write_records(stream, [report])
        logger.info("wrote %s", path)
    if report.counterexample_candidates:
        logger.warning("%d counterexample candidate(s) found", len(report.counterexample_candidates))
    return ExitCode.OK


def cmd_bench(config: BenchConfig, output: Optional[PathLike] = None) -> ExitCode:
    """Print per-size timings; exit 1 when the fitted exponent is not near linear."""
    try:
        report = run_bench(config)
    except EmptyCorpusError as e:
        _error(str(e))
        return ExitCode.MALFORMED_INPUT
    if output is not None:
        write_model(report, output)
    print(f"{'n':>8}  {'runs':>4}  {'mean s':>10}  {'min s':>10}  {'max s':>10}  {'stdev s':>10}  fail")
    for row in report.rows:
        stdev = "-" if row.stdev_seconds is None else f"{row.stdev_seconds:.5f}"
        print(f"{row.n:>8}  {row.runs:>4}  {row.mean_seconds:>10.5f}  {row.min_seconds:>10.5f}  "
              f"{row.max_seconds:>10.5f}  {stdev:>10}  {row.failures:>4}")
    if report.exponent is None:
        print("exponent: n/a (one size)")
        return ExitCode.OK
    print(f"exponent: {report.exponent:.3f} (near linear below {NEAR_LINEAR_EXPONENT})")
    return ExitCode.OK if report.near_linear else ExitCode.SUPERLINEAR


def cmd_export_dot(
    path: Optional[PathLike] = None,
    start: Optional[int] = None,
    orientation: Orientation = Orientation.CW,
    colored: bool = True,
    output: Optional[PathLike] = None,
    seed: Optional[int] = None,
    generator: GeneratorKind = GeneratorKind.RANDOM,
    params: Optional[GeneratorParams] = None,
    triangles: int = 6,
    strict: bool = False,
) -> ExitCode:
    """Render the decomposition, colored when the heuristic succeeds, as DOT."""
    try:
        g = _obtain_graph(path, seed, generator, params or GeneratorParams(), triangles)
        if _short_cycles_reported(g, strict):
            return ExitCode.NOT_G6
        d = decompose(g, start, orientation)
    except GraphFormatError as e:
        _error(str(e))
        return ExitCode.MALFORMED_INPUT
    except (GraphValidationError, SpiralError) as e:
        _error(str(e))
        return ExitCode.NOT_G6
    outcome = color(g, d) if colored else None
    _emit(export_dot(g, d, outcome), output)
    return ExitCode.OK
