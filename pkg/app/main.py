"""Command-line entry point for spiralcolor."""

import argparse
import logging
import sys
from typing import Optional, Sequence

from pydantic import ValidationError

from app import __version__
from app.models.schemas import (
    BenchConfig,
    ExitCode,
    GeneratorKind,
    GeneratorParams,
    Orientation,
    OrientationPolicy,
    RunConfig,
    StartPolicy,
)
from app.routers import commands
from app.services.oracle import DEFAULT_NODE_BUDGET

logger = logging.getLogger(__name__)


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def _embedding_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--start", type=int, default=None, help="first vertex of S1 (outer face)")
    parent.add_argument("--orientation", choices=[o.value for o in Orientation], default=Orientation.CW.value)
    return parent


def _generator_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--generator", choices=[k.value for k in GeneratorKind], default=GeneratorKind.RANDOM.value)
    parent.add_argument("--seed", type=int, default=None, help="generator seed")
    parent.add_argument("--n", type=int, default=30, help="number of vertices")
    parent.add_argument("--attach-probability", type=float, default=0.3)
    parent.add_argument("--triangles", type=int, default=6, help="triangles on the hexagon gadget")
    parent.add_argument("--strict-g6", action="store_true", help="also exclude 6-cycles")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spiralcolor",
        description="Spiral-chain decomposition and priority-greedy 3-coloring of planar graphs without 4- and 5-cycles",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")
    sub = parser.add_subparsers(dest="command", required=True)
    embedding, generator = _embedding_parent(), _generator_parent()

    p = sub.add_parser("validate", help="check embedding, short cycles and G6 membership")
    p.add_argument("--input", required=True)
    p.add_argument("--strict-g6", action="store_true")

    p = sub.add_parser("decompose", parents=[embedding], help="print the spiral decomposition")
    p.add_argument("--input", required=True)
    p.add_argument("--output")

    p = sub.add_parser("color", parents=[embedding, generator], help="run the priority-greedy coloring")
    p.add_argument("--input", help="graph JSON; omit to regenerate from --seed")
    p.add_argument("--trace", action="store_true", help="include the full coloring trace")
    p.add_argument("--output")

    p = sub.add_parser("verify", help="check a coloring for monochromatic edges")
    p.add_argument("--input", required=True)
    p.add_argument("--coloring", required=True)

    p = sub.add_parser("oracle", help="exact 3-colorability search")
    p.add_argument("--input", required=True)
    p.add_argument("--oracle-budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.add_argument("--output")

    p = sub.add_parser("gen", parents=[generator], help="generate an instance or a corpus")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--output", help="file for one instance, directory for a corpus")

    p = sub.add_parser("hunt", help="search for counterexamples")
    p.add_argument("--generator", choices=[k.value for k in GeneratorKind], default=GeneratorKind.RANDOM.value)
    p.add_argument("--n", type=int, default=30, help="largest instance size")
    p.add_argument("--n-min", type=int, default=None, help="vary sizes between n-min and n")
    p.add_argument("--attach-probability", type=float, action="append", dest="attach_probabilities",
                   help="repeatable; seeds cycle through the values")
    p.add_argument("--seed", type=int, default=0, help="first seed")
    p.add_argument("--count", type=int, default=100, help="number of seeds")
    p.add_argument("--start-policy", choices=[s.value for s in StartPolicy], default=StartPolicy.DEFAULT.value)
    p.add_argument("--orientation", choices=[o.value for o in OrientationPolicy], default=OrientationPolicy.CW.value)
    p.add_argument("--oracle-budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--strict-g6", action="store_true")
    p.add_argument("--output", help="NDJSON file; stdout by default")

    p = sub.add_parser("bench", help="time decompose + color across sizes")
    p.add_argument("--sizes", type=int, nargs="*", default=[100, 1000, 10000])
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--attach-probability", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", help="also write the report as JSON")

    p = sub.add_parser("export-dot", parents=[embedding, generator], help="render the decomposition as DOT")
    p.add_argument("--input", help="graph JSON; omit to regenerate from --seed")
    p.add_argument("--no-color", action="store_true", help="chain labels only")
    p.add_argument("--output")

    return parser


def _generator_params(args: argparse.Namespace) -> GeneratorParams:
    return GeneratorParams(n=args.n, attach_probability=args.attach_probability, strict=args.strict_g6)


def dispatch(args: argparse.Namespace) -> ExitCode:
    """Route parsed arguments to the matching command handler."""
    if args.command == "validate":
        return commands.cmd_validate(args.input, strict=args.strict_g6)
    if args.command == "decompose":
        return commands.cmd_decompose(args.input, args.start, Orientation(args.orientation), args.output)
    if args.command == "color":
        return commands.cmd_color(
            args.input, args.start, Orientation(args.orientation), trace=args.trace, output=args.output,
            seed=args.seed, generator=GeneratorKind(args.generator), params=_generator_params(args),
            triangles=args.triangles, strict=args.strict_g6,
        )
    if args.command == "verify":
        return commands.cmd_verify(args.input, args.coloring)
    if args.command == "oracle":
        return commands.cmd_oracle(args.input, args.oracle_budget, args.output)
    if args.command == "gen":
        return commands.cmd_gen(
            GeneratorKind(args.generator), _generator_params(args), seed=args.seed or 0,
            count=args.count, triangles=args.triangles, output=args.output,
        )
    if args.command == "hunt":
        config = RunConfig(
            generator=GeneratorKind(args.generator),
            n=args.n,
            n_min=args.n_min,
            attach_probabilities=args.attach_probabilities or [0.3],
            seed_start=args.seed,
            seed_count=args.count,
            start_policy=StartPolicy(args.start_policy),
            orientations=OrientationPolicy(args.orientation),
            oracle_budget=args.oracle_budget,
            workers=args.workers,
            strict_g6=args.strict_g6,
        )
        return commands.cmd_hunt(config, args.output)
    if args.command == "bench":
        config = BenchConfig(sizes=args.sizes, repeats=args.repeats,
                             attach_probability=args.attach_probability, seed=args.seed)
        return commands.cmd_bench(config, args.output)
    if args.command == "export-dot":
        return commands.cmd_export_dot(
            args.input, args.start, Orientation(args.orientation), colored=not args.no_color,
            output=args.output, seed=args.seed, generator=GeneratorKind(args.generator),
            params=_generator_params(args), triangles=args.triangles, strict=args.strict_g6,
        )
    raise ValueError(f"unknown command {args.command}")


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, run one command, and return its exit code."""
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        return int(dispatch(args))
    except ValidationError as e:
        sys.stderr.write(f"error: invalid parameters\n{e}\n")
        return int(ExitCode.MALFORMED_INPUT)
    except ValueError as e:
        sys.stderr.write(f"error: {e}\n")
        return int(ExitCode.MALFORMED_INPUT)


if __name__ == "__main__":
    sys.exit(run())
