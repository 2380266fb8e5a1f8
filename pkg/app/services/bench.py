"""Scaling benchmark of decomposition plus coloring."""

import logging
import statistics
import time

import numpy as np

from app.models.schemas import BenchConfig, BenchReport, BenchRow
from app.services.generators import gen_random_g6
from app.services.spiral import decompose
from app.services.spiral_colorer import color

logger = logging.getLogger(__name__)


NEAR_LINEAR_EXPONENT = 1.5


class EmptyCorpusError(ValueError):
    """Raised when a benchmark is asked to measure no instance sizes."""


def fit_exponent(sizes: list[int], seconds: list[float]) -> float:
    """Slope of the least-squares line through (log n, log t)."""
    slope, _ = np.polyfit(np.log(np.asarray(sizes, dtype=float)), np.log(np.asarray(seconds, dtype=float)), 1)
    return float(slope)


def run_bench(config: BenchConfig) -> BenchReport:
    """
    Time decompose + color on random G6 instances of each configured size.

    Instance generation is not timed. With two or more sizes the report
    carries the fitted log-log exponent and whether it is below
    NEAR_LINEAR_EXPONENT.

    Raises:
        EmptyCorpusError: no sizes given
    """
    if not config.sizes:
        raise EmptyCorpusError("bench needs at least one instance size")

    rows = []
    for n in sorted(config.sizes):
        timings, failures = [], 0
        for r in range(config.repeats):
            g = gen_random_g6(n, config.attach_probability, config.seed + r).graph
            started = time.perf_counter()
            outcome = color(g, decompose(g))
            timings.append(time.perf_counter() - started)
            failures += not outcome.succeeded
        rows.append(BenchRow(
            n=n,
            runs=len(timings),
            mean_seconds=statistics.fmean(timings),
            min_seconds=min(timings),
            max_seconds=max(timings),
            stdev_seconds=statistics.stdev(timings) if len(timings) > 1 else None,
            failures=failures,
        ))
        logger.info("n=%d: mean %.4fs over %d runs", n, rows[-1].mean_seconds, len(timings))

    report = BenchReport(rows=rows)
    if len(rows) >= 2:
        report.exponent = fit_exponent([row.n for row in rows], [max(row.mean_seconds, 1e-9) for row in rows])
        report.near_linear = report.exponent < NEAR_LINEAR_EXPONENT
    return report
