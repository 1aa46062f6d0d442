"""Pseudorandom word source and the bounded/unit draws derived from it.

Every sampler in this package consumes randomness through the three
methods of :class:`RandomSource`. The concrete generator is SplitMix64;
bounded integers use Lemire's multiply-and-shift rejection method, which
only needs a modulo on the rare slow path.
"""

from __future__ import annotations

from typing import Callable, Iterable

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
DEFAULT_SEED = 42
MAX_BOUND = 1 << 63

_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_TWO_POW_M53 = 1.0 / (1 << 53)


def bounded_below(next_word: Callable[[], int], bound: int, bits: int = 64) -> int:
    """Uniform integer in ``[0, bound)`` from ``bits``-wide random words.

    Multiplies a word by ``bound`` and keeps the high half. The low half
    decides rejection; the threshold ``(2**bits - bound) % bound`` is only
    computed when the low half falls below ``bound``.
    """
    mask = (1 << bits) - 1
    m = next_word() * bound
    if (m & mask) < bound:
        t = ((1 << bits) - bound) % bound
        while (m & mask) < t:
            m = next_word() * bound
    return m >> bits


def check_bound(bound: int) -> None:
    if not 1 <= bound <= MAX_BOUND:
        raise ValueError(f"bound must be in [1, 2**63], got {bound}")


def parse_seed(text: str) -> int:
    """Parse a decimal or 0x-prefixed 64-bit seed."""
    try:
        seed = int(text, 0)
    except ValueError:
        raise ValueError(f"invalid seed {text!r}: expected decimal or 0x-hex") from None
    if not 0 <= seed <= MASK64:
        raise ValueError(f"seed {text!r} does not fit in 64 unsigned bits")
    return seed


class RandomSource:
    """Interface shared by every source of randomness.

    Subclasses must provide :meth:`next_word`; the bounded and unit draws
    are derived from it unless overridden.
    """

    def next_word(self) -> int:
        raise NotImplementedError

    def next_below(self, bound: int) -> int:
        if not 0 < bound <= MAX_BOUND:
            check_bound(bound)
        return bounded_below(self.next_word, bound)

    def next_unit(self) -> float:
        """Uniform float in the open interval (0, 1)."""
        while True:
            u = (self.next_word() >> 11) * _TWO_POW_M53
            if u:
                return u


class SplitMix64(RandomSource):
    """SplitMix64 generator: a Weyl sequence passed through a 64-bit mixer.

    Not thread safe; give each thread its own instance.
    """

    __slots__ = ("state", "gamma")

    def __init__(self, seed: int = DEFAULT_SEED, gamma: int = GOLDEN_GAMMA):
        if not gamma & 1:
            raise ValueError("gamma must be odd")
        self.state = seed & MASK64
        self.gamma = gamma & MASK64

    def next_word(self) -> int:
        self.state = z = (self.state + self.gamma) & MASK64
        z = ((z ^ (z >> 30)) * _MIX1) & MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & MASK64
        return z ^ (z >> 31)

    # The two methods below inline next_word; they must stay bit-identical
    # to the generic RandomSource versions.

    def next_below(self, bound: int) -> int:
        if not 0 < bound <= MAX_BOUND:
            check_bound(bound)
        self.state = z = (self.state + self.gamma) & MASK64
        z = ((z ^ (z >> 30)) * _MIX1) & MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & MASK64
        m = (z ^ (z >> 31)) * bound
        if (m & MASK64) < bound:
            t = ((1 << 64) - bound) % bound
            while (m & MASK64) < t:
                m = self.next_word() * bound
        return m >> 64

    def next_unit(self) -> float:
        while True:
            self.state = z = (self.state + self.gamma) & MASK64
            z = ((z ^ (z >> 30)) * _MIX1) & MASK64
            z = ((z ^ (z >> 27)) * _MIX2) & MASK64
            u = ((z ^ (z >> 31)) >> 11) * _TWO_POW_M53
            if u:
                return u

    def __repr__(self) -> str:
        return f"SplitMix64(state={self.state:#018x}, gamma={self.gamma:#018x})"


class CountingSource(RandomSource):
    """Wraps another source and counts the calls delegated to it."""

    def __init__(self, inner: RandomSource):
        self.inner = inner
        self.reset()

    def reset(self) -> None:
        self.word_draws = 0
        self.bounded_draws = 0
        self.unit_draws = 0

    def next_word(self) -> int:
        self.word_draws += 1
        return self.inner.next_word()

    def next_below(self, bound: int) -> int:
        self.bounded_draws += 1
        return self.inner.next_below(bound)

    def next_unit(self) -> float:
        self.unit_draws += 1
        return self.inner.next_unit()


class ScriptExhausted(LookupError):
    pass


class ScriptedSource(RandomSource):
    """Replays pre-loaded draws, for exact traces and exhaustive enumeration.

    ``draws`` are returned by :meth:`next_below`. When ``bounds`` is given,
    each call must request exactly the next bound in that schedule, which
    pins down the order of an algorithm's bounded draws. ``units`` and
    ``words`` feed :meth:`next_unit` and :meth:`next_word` directly.
    """

    def __init__(
        self,
        draws: Iterable[int] = (),
        bounds: Iterable[int] | None = None,
        units: Iterable[float] = (),
        words: Iterable[int] = (),
    ):
        self.load(draws, bounds)
        self._units = list(units)
        self._words = list(words)

    def load(self, draws: Iterable[int], bounds: Iterable[int] | None = None) -> None:
        self._draws = list(draws)
        self._bounds = None if bounds is None else list(bounds)
        if self._bounds is not None and len(self._bounds) != len(self._draws):
            raise ValueError("bounds and draws must have equal length")
        self._pos = 0

    @property
    def remaining(self) -> int:
        return len(self._draws) - self._pos

    def next_below(self, bound: int) -> int:
        pos = self._pos
        if pos >= len(self._draws):
            raise ScriptExhausted(f"no scripted draw left for Rand({bound})")
        if self._bounds is not None and self._bounds[pos] != bound:
            raise AssertionError(
                f"draw {pos}: requested Rand({bound}), schedule expects Rand({self._bounds[pos]})"
            )
        value = self._draws[pos]
        if not 0 <= value < bound:
            raise ValueError(f"scripted draw {value} outside [0, {bound})")
        self._pos = pos + 1
        return value

    def next_unit(self) -> float:
        if not self._units:
            raise ScriptExhausted("no scripted unit draw left")
        return self._units.pop(0)

    def next_word(self) -> int:
        if not self._words:
            raise ScriptExhausted("no scripted word left")
        return self._words.pop(0)
