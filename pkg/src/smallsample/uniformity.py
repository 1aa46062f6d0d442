"""Exhaustive and statistical checks that samplers are uniform.

The exhaustive oracle replays every possible sequence of bounded draws
through a sampler and tallies the outputs; a sampler that maps those
draw tuples one-to-one onto the ordered distinct k-tuples is exactly
uniform. For samplers too large to enumerate, :func:`frequency_harness`
runs a chi-squared goodness-of-fit test on seeded samples.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence, Union

from .prng import DEFAULT_SEED, RandomSource, ScriptedSource, SplitMix64
from .samplers import SampleFn, SamplerInfo, descending, get_sampler

MAX_ENUMERATION = 10**7
MIN_EXPECTED = 5

Algorithm = Union[str, SamplerInfo, SampleFn]


class EnumerationTooLarge(ValueError):
    pass


@dataclass
class EnumerationReport:
    n: int
    k: int
    ordered: bool
    input_count: int
    target_count: int
    distinct_output_count: int
    # Outputs seen more often than input_count / target_count.
    duplicated_outputs: list = field(default_factory=list)
    missing_outputs_count: int = 0
    # Outputs outside the target set (repeated or out-of-range values).
    invalid_outputs: list = field(default_factory=list)
    uniform: bool = False

    @property
    def is_bijection(self) -> bool:
        return (
            self.input_count == self.target_count
            and not self.duplicated_outputs
            and not self.invalid_outputs
            and self.missing_outputs_count == 0
        )

    def summary(self) -> str:
        kind = "bijection" if self.is_bijection else ("uniform" if self.uniform else "NOT uniform")
        return (
            f"n={self.n} k={self.k} ordered={self.ordered}: {kind}; "
            f"{self.input_count} inputs, {self.distinct_output_count} distinct outputs "
            f"of {self.target_count} targets, {len(self.duplicated_outputs)} duplicated, "
            f"{self.missing_outputs_count} missing, {len(self.invalid_outputs)} invalid"
        )


@dataclass
class UniformityReport:
    categories: int
    trials: int
    chi2: float
    df: int
    p_value: float
    alpha: float

    @property
    def passed(self) -> bool:
        return self.p_value >= self.alpha

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return (
            f"{verdict}: chi2={self.chi2:.4f} df={self.df} p={self.p_value:.6g} "
            f"alpha={self.alpha} ({self.trials} trials over {self.categories} categories)"
        )


def _as_fn(algorithm: Algorithm) -> tuple[SampleFn, Optional[SamplerInfo]]:
    if isinstance(algorithm, str):
        algorithm = get_sampler(algorithm)
    if isinstance(algorithm, SamplerInfo):
        return algorithm.fn, algorithm
    return algorithm, None


def enumerate_outputs(
    algorithm: Algorithm, n: int, k: int, bounds: Optional[Sequence[int]] = None
) -> tuple[Counter, int]:
    """Run ``algorithm`` once per draw tuple in the product of ``bounds``.

    ``bounds`` defaults to the sampler's own schedule, or ``n, n-1, ...,
    n-k+1`` for a bare callable. Each run must consume exactly the whole
    draw tuple. Returns the output tally and the number of inputs.
    """
    fn, info = _as_fn(algorithm)
    if bounds is None:
        if info is not None and info.schedule is None:
            raise ValueError(f"{info.name} also consumes unit draws and cannot be enumerated")
        bounds = info.schedule(n, k) if info is not None else descending(n, k)
    bounds = list(bounds)
    total = math.prod(bounds)
    if total > MAX_ENUMERATION:
        raise EnumerationTooLarge(
            f"{total} draw tuples exceeds the enumeration limit of {MAX_ENUMERATION}; "
            "use the chi-squared mode instead"
        )
    src = ScriptedSource()
    tally: Counter = Counter()
    for draws in itertools.product(*(range(b) for b in bounds)):
        src.load(draws, bounds)
        out = tuple(fn(n, k, src))
        if src.remaining:
            raise AssertionError(f"draws {draws}: sampler left {src.remaining} draws unused")
        tally[out] += 1
    return tally, total


def tally_report(
    tally: Counter,
    input_count: int,
    n: int,
    k: int,
    ordered: bool = True,
    targets: Optional[Iterable[tuple]] = None,
) -> EnumerationReport:
    if not ordered:
        merged: Counter = Counter()
        for out, c in tally.items():
            merged[tuple(sorted(out))] += c
        tally = merged
    if targets is None:
        gen = itertools.permutations if ordered else itertools.combinations
        targets = gen(range(n), k)
    target_set = set(targets)
    expected = input_count / len(target_set) if target_set else 0
    hit = [out for out in tally if out in target_set]
    counts = {tally[out] for out in hit}
    duplicated = sorted(out for out in hit if tally[out] > expected)
    invalid = sorted(out for out in tally if out not in target_set)
    missing = len(target_set) - len(hit)
    return EnumerationReport(
        n=n,
        k=k,
        ordered=ordered,
        input_count=input_count,
        target_count=len(target_set),
        distinct_output_count=len(tally),
        duplicated_outputs=duplicated,
        missing_outputs_count=missing,
        invalid_outputs=invalid,
        uniform=not invalid and missing == 0 and len(counts) == 1,
    )


def enumerate_bijection(
    algorithm: Algorithm,
    n: int,
    k: int,
    bounds: Optional[Sequence[int]] = None,
    targets: Optional[Iterable[tuple]] = None,
    ordered: bool = True,
) -> EnumerationReport:
    """Exhaustively check that ``algorithm`` maps draw tuples onto distinct k-tuples.

    ``targets`` defaults to all ordered distinct k-tuples over ``[0, n)``
    (or all k-combinations when ``ordered`` is false).
    """
    tally, total = enumerate_outputs(algorithm, n, k, bounds)
    return tally_report(tally, total, n, k, ordered, targets)


def _log_prefactor(a: float, x: float) -> float:
    """``log(x**a * exp(-x) / Gamma(a))`` without large-magnitude cancellation."""
    if a < 10.0:
        return a * math.log(x) - x - math.lgamma(a)
    t = (x - a) / a
    # Stirling remainder of lgamma(a).
    inv = 1.0 / a
    inv2 = inv * inv
    stirling = inv * (1 / 12 - inv2 * (1 / 360 - inv2 * (1 / 1260 - inv2 / 1680)))
    return a * (math.log1p(t) - t) + 0.5 * math.log(a / (2 * math.pi)) - stirling


def _gamma_series(a: float, x: float, eps: float, max_iter: int) -> float:
    # Lower regularized gamma P(a, x) by its power series.
    term = total = 1.0 / a
    ap = a
    for _ in range(max_iter):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * eps:
            return total * math.exp(_log_prefactor(a, x))
    raise ArithmeticError(f"gamma series did not converge for a={a}, x={x}")


def _gamma_cf(a: float, x: float, eps: float, max_iter: int) -> float:
    # Upper regularized gamma Q(a, x) by modified Lentz continued fraction.
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, max_iter):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            return h * math.exp(_log_prefactor(a, x))
    raise ArithmeticError(f"gamma continued fraction did not converge for a={a}, x={x}")


def regularized_gamma_q(a: float, x: float, eps: float = 1e-15, max_iter: int = 10**6) -> float:
    """Upper regularized incomplete gamma ``Q(a, x) = Gamma(a, x) / Gamma(a)``."""
    if a <= 0 or x < 0:
        raise ValueError(f"need a > 0 and x >= 0, got a={a}, x={x}")
    if x == 0:
        return 1.0
    if x < a + 1.0:
        return max(0.0, 1.0 - _gamma_series(a, x, eps, max_iter))
    return min(1.0, _gamma_cf(a, x, eps, max_iter))


def chi2_sf(chi2: float, df: int) -> float:
    """Survival function of the chi-squared distribution."""
    return regularized_gamma_q(df / 2.0, chi2 / 2.0)


def chi_squared_uniform(
    observed: Sequence[int], expected_total: Optional[int] = None, alpha: float = 0.001
) -> UniformityReport:
    """Chi-squared test of ``observed`` counts against a uniform distribution.

    ``observed`` must list every category, including empty ones.
    """
    categories = len(observed)
    trials = sum(observed)
    if expected_total is not None and expected_total != trials:
        raise ValueError(f"observed counts sum to {trials}, expected {expected_total}")
    if categories < 2:
        raise ValueError("need at least two categories")
    expected = trials / categories
    if expected < MIN_EXPECTED:
        raise ValueError(
            f"expected count per category is {expected:.3g} < {MIN_EXPECTED}; "
            f"use at least {MIN_EXPECTED * categories} trials"
        )
    chi2 = sum((o - expected) ** 2 for o in observed) / expected
    df = categories - 1
    return UniformityReport(
        categories=categories,
        trials=trials,
        chi2=chi2,
        df=df,
        p_value=chi2_sf(chi2, df),
        alpha=alpha,
    )


def frequency_harness(
    algorithm: Algorithm,
    n: int,
    k: int,
    trials: int,
    seed: int = DEFAULT_SEED,
    ordered: bool = True,
    alpha: float = 0.001,
    source_factory: Callable[[int], RandomSource] = SplitMix64,
) -> UniformityReport:
    """Sample ``trials`` times from a seeded source and chi-squared test the tally.

    Categories are ordered k-tuples, or k-combinations when ``ordered`` is
    false (needed for samplers whose output order is not uniform).
    """
    fn, _ = _as_fn(algorithm)
    gen = itertools.permutations if ordered else itertools.combinations
    cats = math.perm(n, k) if ordered else math.comb(n, k)
    if trials < MIN_EXPECTED * cats:
        raise ValueError(
            f"{trials} trials over {cats} categories gives fewer than {MIN_EXPECTED} "
            f"expected per category; use at least {MIN_EXPECTED * cats} trials"
        )
    counts = dict.fromkeys(gen(range(n), k), 0)
    src = source_factory(seed)
    if ordered:
        samples = (tuple(fn(n, k, src)) for _ in range(trials))
    else:
        samples = (tuple(sorted(fn(n, k, src))) for _ in range(trials))
    for key, c in Counter(samples).items():
        if key not in counts:
            raise ValueError(f"sampler produced invalid sample {key} for n={n}, k={k}")
        counts[key] = c
    return chi_squared_uniform(list(counts.values()), trials, alpha)
