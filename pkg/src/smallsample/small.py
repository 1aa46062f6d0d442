"""Constant-time samplers for 2, 3, 4 and any fixed number of distinct integers.

Each sampler draws ``Rand(n), Rand(n-1), ...`` and then repairs collisions
with *compare-change* steps: when a later value equals an earlier one it
is replaced by one of the top values that the shrinking draw bounds
excluded. The fixed-arity functions spell the steps out by hand; the
network functions derive them for any ``k``.

Every function comes in two shapes: one returning a fresh tuple, and an
``*_into`` variant filling a caller-provided buffer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import MutableSequence, Sequence

from .prng import RandomSource


def _require_n(n: int, k: int) -> None:
    if n < k:
        raise ValueError(f"need n >= {k} to sample {k} distinct integers, got n={n}")


def random_pair(n: int, src: RandomSource) -> tuple[int, int]:
    """Uniformly random ordered pair of distinct integers in ``[0, n)``."""
    if n < 2:
        _require_n(n, 2)
    i = src.next_below(n)
    j = src.next_below(n - 1)
    if j == i:
        j = n - 1
    return i, j


def random_triple(n: int, src: RandomSource) -> tuple[int, int, int]:
    """Uniformly random ordered triple of distinct integers in ``[0, n)``."""
    if n < 3:
        _require_n(n, 3)
    i = src.next_below(n)
    j = src.next_below(n - 1)
    k = src.next_below(n - 2)
    if k == j:
        k = n - 2
    if j == i:
        j = n - 1
    if k == i:
        k = n - 1
    return i, j, k


def random_four_tuple(n: int, src: RandomSource) -> tuple[int, int, int, int]:
    """Uniformly random ordered 4-tuple of distinct integers in ``[0, n)``."""
    if n < 4:
        _require_n(n, 4)
    h = src.next_below(n)
    i = src.next_below(n - 1)
    j = src.next_below(n - 2)
    k = src.next_below(n - 3)
    if k == j:
        k = n - 3
    if j == i:
        j = n - 2
    if k == i:
        k = n - 2
    if i == h:
        i = n - 1
    if j == h:
        j = n - 1
    if k == h:
        k = n - 1
    return h, i, j, k


def random_pair_into(n: int, src: RandomSource, out: MutableSequence[int]) -> MutableSequence[int]:
    if n < 2:
        _require_n(n, 2)
    i = src.next_below(n)
    j = src.next_below(n - 1)
    if j == i:
        j = n - 1
    out[0] = i
    out[1] = j
    return out


def random_triple_into(n: int, src: RandomSource, out: MutableSequence[int]) -> MutableSequence[int]:
    if n < 3:
        _require_n(n, 3)
    i = src.next_below(n)
    j = src.next_below(n - 1)
    k = src.next_below(n - 2)
    if k == j:
        k = n - 2
    if j == i:
        j = n - 1
    if k == i:
        k = n - 1
    out[0] = i
    out[1] = j
    out[2] = k
    return out


def random_four_tuple_into(
    n: int, src: RandomSource, out: MutableSequence[int]
) -> MutableSequence[int]:
    out[0], out[1], out[2], out[3] = random_four_tuple(n, src)
    return out


@dataclass(frozen=True)
class CompareChangeStep:
    """``if value[target] == value[anchor]: value[target] = n - 1 - anchor``."""

    target: int
    anchor: int

    def replacement(self, n: int) -> int:
        return n - 1 - self.anchor


@dataclass(frozen=True)
class CompareChangeNetwork:
    """Draw schedule plus layers of compare-change steps for a fixed ``k``.

    Layers run in order of strictly decreasing anchor. A layer's steps
    touch distinct targets, so their relative order is irrelevant.
    """

    k: int
    layers: tuple[tuple[CompareChangeStep, ...], ...]

    def __post_init__(self):
        anchors = [layer[0].anchor for layer in self.layers]
        if any(a <= b for a, b in zip(anchors, anchors[1:])):
            raise ValueError(f"layer anchors must strictly decrease, got {anchors}")
        for layer in self.layers:
            targets = [s.target for s in layer]
            if len(set(targets)) != len(targets):
                raise ValueError("steps within a layer must touch distinct targets")
            for s in layer:
                if s.anchor != layer[0].anchor or not 0 <= s.anchor < s.target < self.k:
                    raise ValueError(f"invalid step {s} for k={self.k}")

    def draw_bounds(self, n: int) -> list[int]:
        return [n - i for i in range(self.k)]

    @property
    def steps(self) -> list[CompareChangeStep]:
        return [s for layer in self.layers for s in layer]


def build_network(k: int) -> CompareChangeNetwork:
    """Derive the sampling network for ``k`` distinct values.

    For ``k`` in 2..4 this reproduces the hand-written samplers above,
    step for step. The step count is ``k*(k-1)/2``.
    """
    if k < 2:
        raise ValueError(f"a sampling network needs k >= 2, got {k}")
    layers = tuple(
        tuple(CompareChangeStep(target=b, anchor=a) for b in range(a + 1, k))
        for a in range(k - 2, -1, -1)
    )
    return CompareChangeNetwork(k=k, layers=layers)


def apply_layers(
    layers: Sequence[Sequence[CompareChangeStep]], values: MutableSequence[int], n: int
) -> MutableSequence[int]:
    """Run compare-change layers over ``values`` in place, in the given order.

    No ordering is enforced here; :func:`run_network` supplies the valid one.
    """
    for layer in layers:
        for step in layer:
            a = step.anchor
            if values[step.target] == values[a]:
                values[step.target] = n - 1 - a
    return values


def run_network_into(
    net: CompareChangeNetwork, n: int, src: RandomSource, out: MutableSequence[int]
) -> MutableSequence[int]:
    k = net.k
    if n < k:
        _require_n(n, k)
    for i in range(k):
        out[i] = src.next_below(n - i)
    return apply_layers(net.layers, out, n)


def run_network(net: CompareChangeNetwork, n: int, src: RandomSource) -> tuple[int, ...]:
    """Sample ``net.k`` distinct integers from ``[0, n)`` with a network."""
    return tuple(run_network_into(net, n, src, [0] * net.k))
