"""Counterexample hunt: color many instances and cross-check failures exactly."""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterator, Optional

from app.models.schemas import (
    HuntCategory,
    HuntRecord,
    HuntReport,
    Orientation,
    OrientationPolicy,
    RunConfig,
    StartPolicy,
)
from app.services.cycle_detector import forbidden_lengths
from app.services.generators import Instance, generate
from app.services.oracle import cross_check, exact_3color
from app.services.planar_graph import PlanarGraph
from app.services.spiral import decompose
from app.services.spiral_colorer import color

logger = logging.getLogger(__name__)


def sweep_choices(
    g: PlanarGraph,
    start_policy: StartPolicy = StartPolicy.DEFAULT,
    orientations: OrientationPolicy = OrientationPolicy.CW,
) -> list[tuple[int, Orientation]]:
    """(start, orientation) pairs to run on one graph, in sorted order."""
    starts = g.outer_vertices() if start_policy == StartPolicy.ALL_OUTER else [min(g.outer_face)]
    if orientations == OrientationPolicy.BOTH:
        directions = [Orientation.CW, Orientation.CCW]
    else:
        directions = [Orientation(orientations.value)]
    return [(s, o) for s in starts for o in directions]


def run_instance(instance: Instance, config: RunConfig, seed: int) -> list[HuntRecord]:
    """
    Color one instance under every sweep choice and classify each run.

    The oracle runs at most once per instance, and only if some run fails.
    """
    g = instance.graph
    verdict = None
    records = []
    for start, orientation in sweep_choices(g, config.start_policy, config.orientations):
        outcome = color(g, decompose(g, start, orientation))
        if not outcome.succeeded and verdict is None:
            verdict = exact_3color(g, config.oracle_budget)
        result = cross_check(g, outcome, verdict if not outcome.succeeded else None,
                             forbidden_lengths(config.strict_g6))
        records.append(HuntRecord(
            seed=seed,
            generator=config.generator,
            n=g.vertex_count,
            start=start,
            orientation=orientation,
            category=result.category,
            graph_hash=g.graph_hash,
            certificate=outcome.certificate,
            counts=outcome.counts if outcome.succeeded else None,
            verdict=result.verdict.status if result.verdict else None,
            nodes_explored=result.verdict.nodes_explored if result.verdict else None,
        ))
    return records


def hunt_seed(config: RunConfig, seed: int) -> list[HuntRecord]:
    """Generate and run one seed; exceptions become a single error record."""
    try:
        instance = generate(config.generator, seed, config.params_for(seed))
        return run_instance(instance, config, seed)
    except Exception as e:
        logger.warning("seed %d failed: %s", seed, e)
        return [HuntRecord(seed=seed, generator=config.generator, n=config.params_for(seed).n,
                           category=HuntCategory.ERROR, error=f"{type(e).__name__}: {e}")]


def _record_key(record: HuntRecord) -> tuple:
    orientation = record.orientation.value if record.orientation else ""
    start = record.start if record.start is not None else -1
    return (record.seed, start, orientation)


def summarize(config: RunConfig, records: list[HuntRecord], wall_time: float = 0.0) -> HuntReport:
    report = HuntReport(config=config, instances_tested=len({r.seed for r in records}),
                        runs=len(records), wall_time=wall_time)
    counted: set[int] = set()
    for r in records:
        if r.category == HuntCategory.CONSISTENT_SUCCESS:
            report.consistent_successes += 1
            if r.seed not in counted:
                counted.add(r.seed)
                report.color_totals = [a + b for a, b in zip(report.color_totals, r.counts or [0, 0, 0])]
        elif r.category == HuntCategory.HEURISTIC_INCOMPLETE:
            report.heuristic_incomplete.append(r)
        elif r.category == HuntCategory.COUNTEREXAMPLE_CANDIDATE:
            report.counterexample_candidates.append(r)
        elif r.category == HuntCategory.INCONCLUSIVE:
            report.inconclusive += 1
        else:
            report.errors.append(r)
    return report


def iter_batches(config: RunConfig) -> Iterator[list[HuntRecord]]:
    """
    Yield each seed's records, sorted, in ascending seed order.

    Batches arrive as soon as their seed (and every earlier seed) is done,
    whether seeds run inline or over ``config.workers`` processes.
    """
    seeds = list(config.seeds)
    if config.workers == 1:
        for s in seeds:
            yield sorted(hunt_seed(config, s), key=_record_key)
        return
    with ProcessPoolExecutor(max_workers=config.workers) as executor:
        chunksize = max(1, len(seeds) // (config.workers * 16))
        for batch in executor.map(hunt_seed, [config] * len(seeds), seeds, chunksize=chunksize):
            yield sorted(batch, key=_record_key)


def hunt(
    config: RunConfig,
    on_batch: Optional[Callable[[list[HuntRecord]], None]] = None,
) -> tuple[HuntReport, list[HuntRecord]]:
    """
    Run the heuristic over every seed of the config.

    Records are ordered by (seed, start, orientation), so the record set does
    not depend on the worker count. ``on_batch`` sees every seed's records
    as soon as they are available.

    Returns:
        Summary report and the sorted run records
    """
    started = time.perf_counter()
    records: list[HuntRecord] = []
    for batch in iter_batches(config):
        records.extend(batch)
        if on_batch is not None:
            on_batch(batch)

    report = summarize(config, records, time.perf_counter() - started)
    logger.info(
        "hunt: %d instances, %d runs, %d incomplete, %d candidates, %d inconclusive, %d errors",
        report.instances_tested, report.runs, len(report.heuristic_incomplete),
        len(report.counterexample_candidates), report.inconclusive, len(report.errors),
    )
    return report, records

