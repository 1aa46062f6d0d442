"""Command-line interface: ``smallsample {sample,bench,verify}``.

Exit codes: 0 success or verification pass, 1 verification failure or
I/O error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from typing import Optional, Sequence

from . import __version__
from .bench import FORMATS, Blackhole, BenchConfig, emit_table, run_benchmark
from .prng import DEFAULT_SEED, SplitMix64, parse_seed
from .samplers import SAMPLERS, SamplerInfo, get_sampler
from .uniformity import EnumerationTooLarge, enumerate_bijection, frequency_harness

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _seed(text: str) -> int:
    try:
        return parse_seed(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _bool(text: str) -> bool:
    low = text.lower()
    if low in ("true", "1", "yes"):
        return True
    if low in ("false", "0", "no"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


def _header(command: str, **config) -> str:
    items = " ".join(f"{key}={value}" for key, value in config.items())
    return f"# smallsample {__version__} {command} {items}"


def _resolve(name: str, n: int, k: Optional[int]) -> tuple[SamplerInfo, int]:
    try:
        info = get_sampler(name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if info.fixed_k is not None and k is not None and k != info.fixed_k:
        _warn(f"--k {k} ignored: {name} always samples {info.fixed_k} values")
    try:
        k = info.resolve_k(k)
        info.validate(n, k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return info, k


def cmd_sample(args: argparse.Namespace) -> int:
    info, k = _resolve(args.algo, args.n, args.k)
    if args.count < 0:
        raise UsageError("--count must be >= 0")
    print(_header("sample", algo=info.name, n=args.n, k=k, count=args.count, seed=args.seed),
          file=sys.stderr)
    src = SplitMix64(args.seed)
    out = sys.stdout
    if args.format == "json":
        rows = [list(info.fn(args.n, k, src)) for _ in range(args.count)]
        out.write(json.dumps(rows) + "\n")
    else:
        for _ in range(args.count):
            out.write(",".join(map(str, info.fn(args.n, k, src))) + "\n")
    return EXIT_OK


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".smallsample-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cmd_bench(args: argparse.Namespace) -> int:
    plan = []
    for name in args.algos:
        for n in args.n_list:
            plan.append(_resolve(name, n, args.k) + (n,))
    try:
        cfg = BenchConfig(
            warmup_iters=args.warmup_iters,
            warmup_secs=args.warmup_secs,
            measure_iters=args.measure_iters,
            measure_secs=args.measure_secs,
            seed=args.seed,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.out:
        directory = os.path.dirname(os.path.abspath(args.out))
        if not os.path.isdir(directory):
            raise UsageError(f"output directory {directory} does not exist")

    header = _header(
        "bench",
        algos=",".join(args.algos),
        n_list=",".join(map(str, args.n_list)),
        k=args.k,
        warmup=f"{cfg.warmup_iters}x{cfg.warmup_secs}s",
        measure=f"{cfg.measure_iters}x{cfg.measure_secs}s",
        seed=cfg.seed,
    )
    print(header, file=sys.stderr)
    hole = Blackhole()
    results = []
    for info, k, n in plan:
        r = run_benchmark(info, n, k, cfg, hole)
        print(f"# {r.algo} n={n} k={k}: {r.mean_ns:.1f} ± {r.ci999_half_width:.1f} ns/op",
              file=sys.stderr)
        results.append(r)

    text = emit_table(results, args.format)
    if args.format != "json":
        text = header + "\n" + text
    if args.out:
        try:
            _write_atomic(args.out, text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_FAIL
    else:
        sys.stdout.write(text)
    print(f"# blackhole sink={hole.sink:#018x}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    info, k = _resolve(args.algo, args.n, args.k)
    ordered = info.order_uniform if args.ordered is None else args.ordered
    print(
        _header("verify", algo=info.name, n=args.n, k=k, mode=args.mode, ordered=ordered,
                trials=args.trials, alpha=args.alpha, seed=args.seed),
        file=sys.stderr,
    )
    if args.mode == "exhaustive":
        if info.schedule is None:
            raise UsageError(f"{info.name} consumes unit draws; use --mode chi2")
        try:
            report = enumerate_bijection(info, args.n, k, ordered=ordered)
        except EnumerationTooLarge as exc:
            raise UsageError(f"{exc} (--mode chi2)") from None
        print(report.summary())
        ok = report.is_bijection if ordered else report.uniform
    else:
        try:
            report = frequency_harness(info, args.n, k, args.trials, args.seed, ordered, args.alpha)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        print(report.summary())
        ok = report.passed
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smallsample", description="Sample distinct integers, verify uniformity, benchmark."
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    algos = ", ".join(SAMPLERS)

    p = sub.add_parser("sample", help="print samples")
    p.add_argument("--algo", required=True, help=f"one of: {algos}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("bench", help="benchmark samplers over a grid of n")
    p.add_argument("--algos", type=lambda s: [a for a in s.split(",") if a],
                   default=["pair", "insertion", "pool", "reservoir-r", "reservoir-l"])
    p.add_argument("--n-list", type=_int_list, default=[16, 64, 256, 1024])
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--warmup-iters", type=int, default=3)
    p.add_argument("--warmup-secs", type=float, default=1.0)
    p.add_argument("--measure-iters", type=int, default=5)
    p.add_argument("--measure-secs", type=float, default=1.0)
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    p.add_argument("--format", choices=tuple(FORMATS), default="markdown")
    p.add_argument("--out", help="write the table here instead of stdout")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("verify", help="check a sampler's uniformity")
    p.add_argument("--algo", required=True, help=f"one of: {algos}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--mode", choices=("exhaustive", "chi2"), default="exhaustive")
    p.add_argument("--trials", type=int, default=10**6)
    p.add_argument("--alpha", type=float, default=0.001)
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    p.add_argument("--ordered", type=_bool, default=None,
                   help="categories are ordered tuples (default: true iff the sampler's order is uniform)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
