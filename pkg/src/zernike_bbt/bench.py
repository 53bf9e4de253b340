"""Running-time sweep over ``m`` at fixed ``n``, with CSV and semilog output.

For every ``n`` and every algorithm the harness walks
``m = n, n-2, ..., n mod 2`` (so ``n - m`` grows), warms the evaluator up
once and then times ``repetitions`` evaluations with a monotonic clock around
the whole loop. Calls shorter than ``min_block_seconds`` are repeated an
auto-calibrated number of times inside each repetition and the multiplier is
divided back out.

A point that overruns ``time_budget_per_point`` is recorded as ``TimedOut``
and, since cost only grows with ``n - m``, every later point of that
algorithm at the same ``n`` is skipped and recorded the same way. The tree
recursions are interrupted from the inside once their deadline passes.

Timings are environment dependent. Nothing here runs concurrently, and
concurrent benchmark runs in one process are not supported.
"""

from __future__ import annotations

import csv
import enum
import io
import math
import statistics
import time
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence, TextIO

from .core import RadialIndex, make_index
from .legacy import RecursionBudgetExceeded
from .methods import TREE_RECURSIONS, Method, evaluator

CSV_HEADER = ("algorithm", "n", "m", "rho", "repetitions", "mean_time_ns", "status")

_BENCH_NODE_CAP = 2**62


class Status(str, enum.Enum):
    OK = "OK"
    TIMED_OUT = "TimedOut"

    def __str__(self) -> str:
        return self.value


class EmptySeries(ValueError):
    """Every point of the requested series timed out."""


@dataclass
class BenchConfig:
    n_values: Sequence[int] = (28, 29)
    rho: float = 0.5
    repetitions: int = 10
    algorithms: Sequence[Method] = tuple(Method)
    time_budget_per_point: float = 120.0
    min_block_seconds: float = 1e-3

    def __post_init__(self):
        self.algorithms = tuple(Method(a) for a in self.algorithms)
        self.n_values = tuple(int(n) for n in self.n_values)
        if self.repetitions < 1:
            raise ValueError("repetitions must be at least 1")
        if not self.n_values:
            raise ValueError("n_values must not be empty")
        if not self.algorithms:
            raise ValueError("select at least one algorithm")
        if any(n < 0 for n in self.n_values):
            raise ValueError("n values must be non-negative")
        if self.time_budget_per_point <= 0:
            raise ValueError("time budget must be positive")


@dataclass
class BenchRecord:
    algorithm: str
    n: int
    m: int
    rho: float
    repetitions: int
    mean_time_ns: float | None
    status: Status = Status.OK
    # seconds actually spent before giving up; not serialised
    elapsed_s: float | None = field(default=None, compare=False, repr=False)


def m_sequence(n: int) -> list[int]:
    """``n, n-2, ..., n mod 2``."""
    return list(range(n, -1, -2))


def time_point(
    method: Method | str,
    idx: RadialIndex,
    rho: float,
    repetitions: int,
    budget_s: float,
    min_block_seconds: float = 1e-3,
) -> tuple[float | None, float]:
    """Mean nanoseconds per evaluation, or ``None`` if the budget ran out.

    Also returns the wall time spent on the point.
    """
    method = Method(method)
    started = time.perf_counter()
    deadline = started + budget_s
    if method in TREE_RECURSIONS:
        fn = evaluator(method, deadline=deadline, node_cap=_BENCH_NODE_CAP)
    else:
        fn = evaluator(method)
    try:
        t0 = time.perf_counter_ns()
        fn(idx, rho)
        single = max(time.perf_counter_ns() - t0, 1)
        inner = 1
        if single < min_block_seconds * 1e9:
            inner = math.ceil(min_block_seconds * 1e9 / single)
        if time.perf_counter() + single * inner * repetitions * 1e-9 > deadline:
            return None, time.perf_counter() - started
        loops = range(inner)
        t0 = time.perf_counter_ns()
        for _ in range(repetitions):
            for _ in loops:
                fn(idx, rho)
        elapsed = time.perf_counter_ns() - t0
    except RecursionBudgetExceeded:
        return None, time.perf_counter() - started
    spent = time.perf_counter() - started
    if spent > budget_s:
        return None, spent
    return max(elapsed / (repetitions * inner), 1e-3), spent


def run_benchmark(
    config: BenchConfig, progress: Callable[[BenchRecord], None] | None = None
) -> list[BenchRecord]:
    records = []
    for n in config.n_values:
        for method in config.algorithms:
            gave_up = False
            for m in m_sequence(n):
                idx = make_index(n, m)
                mean, spent = None, None
                if not gave_up:
                    mean, spent = time_point(
                        method,
                        idx,
                        config.rho,
                        config.repetitions,
                        config.time_budget_per_point,
                        config.min_block_seconds,
                    )
                    gave_up = mean is None
                record = BenchRecord(
                    algorithm=method.value,
                    n=n,
                    m=m,
                    rho=config.rho,
                    repetitions=config.repetitions,
                    mean_time_ns=mean,
                    status=Status.OK if mean is not None else Status.TIMED_OUT,
                    elapsed_s=spent,
                )
                records.append(record)
                if progress is not None:
                    progress(record)
    return records


def _fmt(x: float) -> str:
    return repr(float(x))


def write_csv(records: Iterable[BenchRecord], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow(
            [
                r.algorithm,
                r.n,
                r.m,
                _fmt(r.rho),
                r.repetitions,
                "" if r.mean_time_ns is None else _fmt(r.mean_time_ns),
                str(Status(r.status)),
            ]
        )


def emit_csv(records: Sequence[BenchRecord], destination: str | Path | TextIO) -> None:
    """Write records as UTF-8 CSV with ``\\n`` line endings."""
    if not records:
        raise ValueError("no records to write")
    if isinstance(destination, (str, Path)):
        with open(destination, "w", encoding="utf-8", newline="") as fh:
            write_csv(records, fh)
    else:
        write_csv(records, destination)


def read_csv(source: str | Path | TextIO) -> list[BenchRecord]:
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8", newline="") as fh:
            return read_csv(fh)
    reader = csv.DictReader(source)
    if tuple(reader.fieldnames or ()) != CSV_HEADER:
        raise ValueError(f"unexpected header {reader.fieldnames}")
    return [
        BenchRecord(
            algorithm=row["algorithm"],
            n=int(row["n"]),
            m=int(row["m"]),
            rho=float(row["rho"]),
            repetitions=int(row["repetitions"]),
            mean_time_ns=float(row["mean_time_ns"]) if row["mean_time_ns"] else None,
            status=Status(row["status"]),
        )
        for row in reader
    ]


SemilogSeries = dict  # algorithm -> list of (n - m, log10 mean_time_ns)


def emit_semilog_series(records: Sequence[BenchRecord]) -> SemilogSeries:
    """Group one ``n``'s records into per-algorithm ``(n - m, log10 t)`` series.

    Timed-out points are dropped; x is ascending.
    """
    ns = {r.n for r in records}
    if len(ns) != 1:
        raise ValueError(f"records must share a single n, got {sorted(ns)}")
    series = defaultdict(list)
    for r in records:
        if r.status == Status.OK and r.mean_time_ns is not None:
            series[r.algorithm].append((r.n - r.m, math.log10(r.mean_time_ns)))
    if not series:
        raise EmptySeries("every point timed out")
    return {alg: sorted(points) for alg, points in series.items()}


def series_csv(series: SemilogSeries, n: int | None = None) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(("n", "algorithm", "n_minus_m", "log10_mean_time_ns"))
    for alg, points in series.items():
        for x, y in points:
            writer.writerow(("" if n is None else n, alg, x, _fmt(y)))
    return out.getvalue()


def series_gnuplot(series: SemilogSeries, n: int | None = None) -> str:
    """Data blocks separated by two blank lines (select with ``index``)."""
    blocks = []
    for alg, points in series.items():
        head = f"# {alg}" if n is None else f"# n={n} {alg}"
        lines = [head, "# n_minus_m log10_mean_time_ns"]
        lines += [f"{x} {_fmt(y)}" for x, y in points]
        blocks.append("\n".join(lines) + "\n")
    return "\n\n".join(blocks)


def semilog_slope(points: Sequence[tuple[int, float]], lo: int, hi: int) -> float | None:
    """Least-squares slope of ``log2 t`` against ``(n - m) / 2`` on ``[lo, hi]``.

    A slope of 1 means the time doubles per tree level. ``None`` with fewer
    than two points in the window.
    """
    window = [(x / 2, y / math.log10(2)) for x, y in points if lo <= x <= hi]
    if len(window) < 2:
        return None
    xs, ys = zip(*window)
    return statistics.linear_regression(xs, ys).slope
