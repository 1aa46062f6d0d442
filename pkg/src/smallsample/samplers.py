"""Name-indexed registry of all samplers behind a common ``fn(n, k, src)`` signature."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence

from . import general, small
from .prng import RandomSource

SampleFn = Callable[[int, int, RandomSource], Sequence[int]]


@dataclass(frozen=True)
class SamplerInfo:
    name: str
    fn: SampleFn
    fixed_k: Optional[int] = None
    # True when the output order is uniform over permutations.
    order_uniform: bool = True
    # Exact sequence of bounds requested from ``next_below`` for (n, k), or
    # None when the sampler also consumes unit draws.
    schedule: Optional[Callable[[int, int], list[int]]] = None

    def resolve_k(self, k: Optional[int]) -> int:
        if self.fixed_k is not None:
            return self.fixed_k
        if k is None:
            raise ValueError(f"algorithm {self.name!r} needs k")
        return k

    def validate(self, n: int, k: int) -> None:
        lo = 2 if self.name.startswith("network") else 1
        if not lo <= k <= n:
            raise ValueError(f"{self.name}: need {lo} <= k <= n, got n={n}, k={k}")


def descending(n: int, k: int) -> list[int]:
    return [n - i for i in range(k)]


def _shuffle_bounds(k: int) -> list[int]:
    return list(range(k, 1, -1))


def _reservoir_bounds(n: int, k: int) -> list[int]:
    return list(range(k + 1, n + 1))


@lru_cache(maxsize=None)
def cached_network(k: int) -> small.CompareChangeNetwork:
    return small.build_network(k)


def _network(n: int, k: int, src: RandomSource) -> tuple[int, ...]:
    return small.run_network(cached_network(k), n, src)


def _into(fill, k: int) -> SampleFn:
    # One buffer per registry entry, reused across calls.
    buf = [0] * k

    def fn(n, _k, src):
        return fill(n, src, buf)

    return fn


_ENTRIES = [
    SamplerInfo("pair", lambda n, k, src: small.random_pair(n, src), 2, True, descending),
    SamplerInfo("triple", lambda n, k, src: small.random_triple(n, src), 3, True, descending),
    SamplerInfo("quad", lambda n, k, src: small.random_four_tuple(n, src), 4, True, descending),
    SamplerInfo("pair-into", _into(small.random_pair_into, 2), 2, True, descending),
    SamplerInfo("triple-into", _into(small.random_triple_into, 3), 3, True, descending),
    SamplerInfo("quad-into", _into(small.random_four_tuple_into, 4), 4, True, descending),
    SamplerInfo("network", _network, None, True, descending),
    SamplerInfo("pool", general.pool_sampling, None, True, descending),
    SamplerInfo("insertion", general.insertion_sampling, None, False, descending),
    SamplerInfo("reservoir-r", general.reservoir_r, None, False, _reservoir_bounds),
    SamplerInfo("reservoir-l", general.reservoir_l, None, False, None),
    SamplerInfo(
        "insertion-uo",
        general.insertion_sampling_uo,
        None,
        True,
        lambda n, k: descending(n, k) + _shuffle_bounds(k),
    ),
    SamplerInfo(
        "reservoir-r-uo",
        general.reservoir_r_uo,
        None,
        True,
        lambda n, k: _shuffle_bounds(k) + _reservoir_bounds(n, k),
    ),
    SamplerInfo("reservoir-l-uo", general.reservoir_l_uo, None, True, None),
]

SAMPLERS: dict[str, SamplerInfo] = {e.name: e for e in _ENTRIES}


def get_sampler(name: str) -> SamplerInfo:
    try:
        return SAMPLERS[name]
    except KeyError:
        raise ValueError(
            f"unknown algorithm {name!r}; choose from {', '.join(SAMPLERS)}"
        ) from None
