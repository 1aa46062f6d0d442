"""Microbenchmark harness: warmup and measurement iterations of fixed duration.

Each iteration calls the sampler in batches for a fixed wall-clock time
and reports nanoseconds per call. The first ``warmup_iters`` iterations
are discarded. The mean over measurement iterations is reported with a
99.9% Student-t confidence interval. Every output is folded into a
:class:`Blackhole` accumulator.

Timings are elapsed time from the monotonic ``perf_counter_ns`` clock,
not CPU time, so close other workloads before running.
"""

from __future__ import annotations

import csv
import io
import json
import math
import statistics
import time
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence, Union

from scipy import stats

from .prng import DEFAULT_SEED, MASK64, SplitMix64
from .samplers import SamplerInfo, get_sampler

CI_METHOD = "Student-t 99.9% over per-iteration means (flat, no fork nesting)"
CSV_COLUMNS = ("algo", "n", "k", "mean_ns", "ci999_ns", "ops_total", "iters")
MAX_CLOCK_RESOLUTION = 1e-6


class BenchError(RuntimeError):
    pass


@dataclass(frozen=True)
class BenchConfig:
    warmup_iters: int = 3
    warmup_secs: float = 1.0
    measure_iters: int = 5
    measure_secs: float = 1.0
    seed: int = DEFAULT_SEED
    # Lower bound on one timed batch, keeping clock reads under 1% of it.
    min_batch_secs: float = 100e-6

    def __post_init__(self):
        if self.warmup_iters < 1 or self.measure_iters < 1:
            raise ValueError("iteration counts must be >= 1")
        if self.warmup_secs <= 0 or self.measure_secs <= 0 or self.min_batch_secs <= 0:
            raise ValueError("durations must be positive")


# Five 10-second warmup and five 10-second measurement iterations.
FULL_CONFIG = BenchConfig(warmup_iters=5, warmup_secs=10.0, measure_iters=5, measure_secs=10.0)


@dataclass
class BenchResult:
    algo: str
    n: int
    k: int
    per_iter_means: tuple[float, ...]
    mean_ns: float
    ci999_half_width: float
    ops_total: int
    batch_size: int = 0
    ci_method: str = field(default=CI_METHOD, repr=False)

    @property
    def iters(self) -> int:
        return len(self.per_iter_means)


class Blackhole:
    """Accumulates benchmark outputs so no result goes unused."""

    def __init__(self):
        self.sink = 0

    def fold(self, value: int) -> None:
        self.sink = (self.sink * 31 + value) & MASK64

    def consume(self, values: Sequence[int]) -> None:
        self.fold(sum(values))


def t_critical(confidence: float, df: int) -> float:
    """Two-sided Student-t critical value."""
    return float(stats.t.ppf(0.5 + confidence / 2.0, df))


def confidence_interval_999(means: Sequence[float]) -> float:
    """Half-width of the 99.9% confidence interval for the mean of ``means``."""
    m = len(means)
    if m < 2:
        raise ValueError("a confidence interval needs at least two iterations")
    sd = statistics.stdev(means)
    if sd == 0:
        return 0.0
    return t_critical(0.999, m - 1) * sd / math.sqrt(m)


def check_clock() -> None:
    res = time.get_clock_info("perf_counter").resolution
    if res > MAX_CLOCK_RESOLUTION:
        raise BenchError(f"perf_counter resolution {res}s is coarser than 1us; timings unusable")


def _timed_iteration(fn, n, k, src, batch, secs, acc):
    clock = time.perf_counter_ns
    budget = secs * 1e9
    elapsed = 0
    calls = 0
    reps = range(batch)
    while elapsed < budget:
        t0 = clock()
        for _ in reps:
            acc += sum(fn(n, k, src))
        t1 = clock()
        # The next batch starts from the folded accumulator.
        acc &= MASK64
        elapsed += t1 - t0
        calls += batch
    return elapsed, calls, acc


def _calibrate(fn, n, k, src, min_secs, acc):
    clock = time.perf_counter_ns
    batch = 1
    while True:
        t0 = clock()
        for _ in range(batch):
            acc += sum(fn(n, k, src))
        if clock() - t0 >= min_secs * 1e9:
            return batch, acc & MASK64
        batch *= 2


def run_benchmark(
    algo: Union[str, SamplerInfo],
    n: int,
    k: Optional[int] = None,
    cfg: BenchConfig = BenchConfig(),
    blackhole: Optional[Blackhole] = None,
) -> BenchResult:
    """Benchmark one sampler at one ``(n, k)``."""
    check_clock()
    info = get_sampler(algo) if isinstance(algo, str) else algo
    k = info.resolve_k(k)
    info.validate(n, k)
    fn = info.fn
    src = SplitMix64(cfg.seed)
    hole = blackhole if blackhole is not None else Blackhole()

    batch, acc = _calibrate(fn, n, k, src, cfg.min_batch_secs, hole.sink)
    for _ in range(cfg.warmup_iters):
        _, _, acc = _timed_iteration(fn, n, k, src, batch, cfg.warmup_secs, acc)

    means = []
    ops_total = 0
    for _ in range(cfg.measure_iters):
        elapsed, calls, acc = _timed_iteration(fn, n, k, src, batch, cfg.measure_secs, acc)
        means.append(elapsed / calls)
        ops_total += calls
    hole.fold(acc)

    return BenchResult(
        algo=info.name,
        n=n,
        k=k,
        per_iter_means=tuple(means),
        mean_ns=statistics.fmean(means),
        ci999_half_width=confidence_interval_999(means) if len(means) > 1 else 0.0,
        ops_total=ops_total,
        batch_size=batch,
    )


def _column_labels(results: Sequence[BenchResult]) -> dict[tuple[str, int], str]:
    keys = list(dict.fromkeys((r.algo, r.k) for r in results))
    mixed_k = len({k for _, k in keys}) > 1
    return {key: f"{key[0]} (k={key[1]})" if mixed_k else key[0] for key in keys}


def _markdown(results: Sequence[BenchResult]) -> str:
    labels = _column_labels(results)
    lines = [
        "| n | " + " | ".join(labels.values()) + " |" if labels else "| n |",
        "|---:|" + "---:|" * len(labels),
    ]
    cells = {(r.n, r.algo, r.k): r for r in results}
    for n in dict.fromkeys(r.n for r in results):
        row = []
        for algo, k in labels:
            r = cells.get((n, algo, k))
            row.append(f"{r.mean_ns:.1f} ± {r.ci999_half_width:.1f}" if r else "")
        lines.append(f"| {n} | " + " | ".join(row) + " |")
    return "\n".join(lines) + "\n"


def _csv(results: Sequence[BenchResult]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in results:
        writer.writerow(
            [r.algo, r.n, r.k, repr(r.mean_ns), repr(r.ci999_half_width), r.ops_total, r.iters]
        )
    return buf.getvalue()


def _json(results: Sequence[BenchResult]) -> str:
    rows = []
    for r in results:
        row = asdict(r)
        row.pop("ci_method")
        row["per_iter_means"] = list(r.per_iter_means)
        rows.append(row)
    return json.dumps({"ci_method": CI_METHOD, "results": rows}, indent=2) + "\n"


FORMATS = {"markdown": _markdown, "csv": _csv, "json": _json}


def emit_table(results: Sequence[BenchResult], fmt: str = "markdown") -> str:
    """Render results as a markdown table (rows by n, columns by algorithm), CSV or JSON."""
    try:
        render = FORMATS[fmt]
    except KeyError:
        raise ValueError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}") from None
    return render(results)


def parse_csv(text: str) -> list[dict]:
    """Read CSV produced by :func:`emit_table` back into typed rows."""
    lines = [line for line in text.splitlines() if not line.startswith("#")]
    rows = []
    for rec in csv.DictReader(lines):
        rows.append(
            {
                "algo": rec["algo"],
                "n": int(rec["n"]),
                "k": int(rec["k"]),
                "mean_ns": float(rec["mean_ns"]),
                "ci999_ns": float(rec["ci999_ns"]),
                "ops_total": int(rec["ops_total"]),
                "iters": int(rec["iters"]),
            }
        )
    return rows
