"""General-purpose algorithms for sampling k of n integers without replacement.

These are the reference algorithms the small-sample functions are
measured against: reservoir sampling (variants R and L), pool sampling
and insertion sampling. Each returns a new list of length ``k``.

Only pool sampling yields a uniformly random order. Insertion sampling
returns its sample sorted, and both reservoir variants keep the first
``k`` elements in fixed positions unless replaced. The ``*_uo`` variants
add a Fisher-Yates shuffle where needed to make the order uniform.
"""

from __future__ import annotations

import math
from typing import MutableSequence

from .prng import RandomSource


def _check_nk(n: int, k: int) -> None:
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")


def shuffle(seq: MutableSequence, src: RandomSource) -> MutableSequence:
    """Durstenfeld's in-place Fisher-Yates shuffle; returns ``seq``."""
    below = src.next_below
    for i in range(len(seq) - 1, 0, -1):
        j = below(i + 1)
        seq[i], seq[j] = seq[j], seq[i]
    return seq


def reservoir_r(n: int, k: int, src: RandomSource) -> list[int]:
    """Vitter's algorithm R. Uses exactly ``n - k`` bounded draws."""
    _check_nk(n, k)
    sample = list(range(k))
    _reservoir_r_loop(sample, n, k, src)
    return sample


def _reservoir_r_loop(sample: list[int], n: int, k: int, src: RandomSource) -> None:
    below = src.next_below
    for i in range(k, n):
        j = below(i + 1)
        if j < k:
            sample[j] = i


def reservoir_l(n: int, k: int, src: RandomSource) -> list[int]:
    """Li's algorithm L: reservoir sampling with geometric skips.

    Expected bounded draws grow as ``O(k log(n/k))`` rather than ``n - k``.
    """
    _check_nk(n, k)
    sample = list(range(k))
    _reservoir_l_loop(sample, n, k, src)
    return sample


def _reservoir_l_loop(sample: list[int], n: int, k: int, src: RandomSource) -> None:
    unit = src.next_unit
    below = src.next_below
    log = math.log
    log1p = math.log1p
    exp = math.exp
    floor = math.floor
    inf = math.inf

    # w can round to 1.0 (log1p(-1.0) raises instead of giving -inf) or
    # underflow to 0.0 (the skip divisor vanishes: the skip is unbounded).
    w = exp(log(unit()) / k)
    d = log1p(-w) if w < 1.0 else -inf
    if d == 0.0:
        return
    skip = log(unit()) / d
    if skip >= n:
        return
    i = k + floor(skip)
    while i < n:
        sample[below(k)] = i
        w *= exp(log(unit()) / k)
        d = log1p(-w) if w < 1.0 else -inf
        if d == 0.0:
            return
        skip = log(unit()) / d
        if skip >= n:
            return
        i += 1 + floor(skip)


def pool_sampling(n: int, k: int, src: RandomSource) -> list[int]:
    """Draw from an explicit pool of unused values. Exactly ``k`` draws, O(n) memory."""
    _check_nk(n, k)
    below = src.next_below
    sample = [0] * k
    pool = list(range(n))
    remaining = n
    for i in range(k):
        j = below(remaining)
        sample[i] = pool[j]
        remaining -= 1
        pool[j] = pool[remaining]
    return sample


def insertion_sampling(n: int, k: int, src: RandomSource) -> list[int]:
    """Insertion sampling: ``k`` draws, O(k) memory, output in ascending order.

    The i-th draw is a rank among the values not yet chosen; it is walked
    past the already-sampled values while they are shifted down to keep
    the sample sorted.
    """
    _check_nk(n, k)
    below = src.next_below
    sample = [0] * k
    for i in range(k):
        v = below(n - i)
        j = k - i
        while j < k and v >= sample[j]:
            v += 1
            sample[j - 1] = sample[j]
            j += 1
        sample[j - 1] = v
    return sample


def insertion_sampling_uo(n: int, k: int, src: RandomSource) -> list[int]:
    """Insertion sampling followed by a shuffle. Uses ``2k - 1`` draws."""
    return shuffle(insertion_sampling(n, k, src), src)


def reservoir_r_uo(n: int, k: int, src: RandomSource) -> list[int]:
    _check_nk(n, k)
    sample = shuffle(list(range(k)), src)
    _reservoir_r_loop(sample, n, k, src)
    return sample


def reservoir_l_uo(n: int, k: int, src: RandomSource) -> list[int]:
    _check_nk(n, k)
    sample = shuffle(list(range(k)), src)
    _reservoir_l_loop(sample, n, k, src)
    return sample
