import statistics

import pytest
from hypothesis import given, strategies as st

from smallsample.prng import (
    MASK64,
    CountingSource,
    RandomSource,
    ScriptedSource,
    SplitMix64,
    bounded_below,
    parse_seed,
)
from smallsample.small import random_pair, random_triple

# First outputs of the SplitMix64 reference finalizer, computed with a
# separate numpy.uint64 implementation.
GOLDEN = {
    0: [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F, 0xF88BB8A8724C81EC],
    1: [0x910A2DEC89025CC1, 0xBEEB8DA1658EEC67, 0xF893A2EEFB32555E, 0x71C18690EE42C90B],
    2: [0x975835DE1C9756CE, 0xBFC846100BFC1E42, 0x987BBCBFDD7E532F, 0xC3F2827AFFE7F664],
    42: [0xBDD732262FEB6E95, 0x28EFE333B266F103, 0x47526757130F9F52, 0x581CE1FF0E4AE394],
}


class WordList(RandomSource):
    """Feeds fixed words through the generic bounded/unit derivations."""

    def __init__(self, words):
        self.words = list(words)
        self.used = 0

    def next_word(self):
        self.used += 1
        return self.words.pop(0)


class NoModInt(int):
    """A bound that fails loudly if anything takes a remainder by it."""

    def __rmod__(self, other):
        raise AssertionError("modulo on the fast path")

    def __mod__(self, other):
        raise AssertionError("modulo on the fast path")


@pytest.mark.parametrize("seed", sorted(GOLDEN))
def test_golden_vectors(seed):
    src = SplitMix64(seed)
    assert [src.next_word() for _ in range(4)] == GOLDEN[seed]


def test_same_seed_same_stream():
    a, b = SplitMix64(1234), SplitMix64(1234)
    assert [a.next_word() for _ in range(1000)] == [b.next_word() for _ in range(1000)]


def test_seeds_1_and_2_differ_early():
    a, b = SplitMix64(1), SplitMix64(2)
    assert [a.next_word() for _ in range(4)] != [b.next_word() for _ in range(4)]


def test_even_gamma_rejected():
    with pytest.raises(ValueError):
        SplitMix64(0, gamma=2)


def test_next_below_bound_one_is_zero():
    assert WordList([0xDEADBEEF]).next_below(1) == 0
    assert SplitMix64(7).next_below(1) == 0


def test_next_below_accepts_low_word():
    # 1 * 10 = 10: low half 10 >= 10, high half 0.
    src = WordList([1])
    assert src.next_below(10) == 0
    assert src.used == 1


def test_next_below_rejects_and_redraws():
    # 2**63 * 10 has low half 0 < threshold (2**64 - 10) % 10 == 6.
    src = WordList([1 << 63, MASK64])
    assert src.next_below(10) == 9
    assert src.used == 2


def test_next_below_top_word():
    src = WordList([MASK64])
    assert src.next_below(10) == 9
    assert src.used == 1


@pytest.mark.parametrize("bound", [0, -3, (1 << 63) + 1])
def test_next_below_invalid_bound(bound):
    with pytest.raises(ValueError):
        SplitMix64().next_below(bound)
    with pytest.raises(ValueError):
        WordList([1]).next_below(bound)


def test_fast_path_takes_no_modulo():
    # low half of 3 * 1000 is 3000 >= 1000: accept without a threshold.
    assert WordList([3]).next_below(NoModInt(1000)) == 0
    with pytest.raises(AssertionError, match="modulo"):
        WordList([0, 3]).next_below(NoModInt(1000))


class _Rejected(Exception):
    pass


@pytest.mark.parametrize("bound", range(1, 11))
def test_exhaustive_8bit_words_are_unbiased(bound):
    accepted = [0] * bound
    for x in range(256):
        words = iter([x])

        def next_word():
            try:
                return next(words)
            except StopIteration:
                raise _Rejected from None

        try:
            accepted[bounded_below(next_word, bound, bits=8)] += 1
        except _Rejected:
            pass
    assert accepted == [256 // bound] * bound


@given(st.integers(0, MASK64), st.integers(1, 1 << 63))
def test_inlined_next_below_matches_generic(seed, bound):
    fast = SplitMix64(seed)
    slow = SplitMix64(seed)
    for _ in range(3):
        assert fast.next_below(bound) == bounded_below(slow.next_word, bound)
    assert fast.state == slow.state


@given(st.integers(0, MASK64))
def test_inlined_next_unit_matches_generic(seed):
    fast = SplitMix64(seed)
    slow = SplitMix64(seed)
    assert fast.next_unit() == RandomSource.next_unit(slow)
    assert fast.state == slow.state


def test_next_unit_half():
    assert WordList([1 << 63]).next_unit() == 0.5


def test_next_unit_redraws_zero():
    src = WordList([0, (1 << 11) - 1, 1 << 11])
    assert src.next_unit() == 2.0**-53
    assert src.used == 3


def test_next_unit_range_and_mean():
    src = SplitMix64(99)
    draws = [src.next_unit() for _ in range(10**6)]
    assert 0.0 < min(draws) and max(draws) < 1.0
    assert abs(statistics.fmean(draws) - 0.5) < 0.002


def test_counting_source_counts_delegated_calls():
    src = CountingSource(SplitMix64(3))
    random_pair(10, src)
    assert (src.bounded_draws, src.unit_draws, src.word_draws) == (2, 0, 0)
    src.reset()
    random_triple(10, src)
    assert src.bounded_draws == 3
    src.next_unit()
    src.next_word()
    assert (src.unit_draws, src.word_draws) == (1, 1)


def test_scripted_source_enforces_schedule():
    src = ScriptedSource([1, 0], bounds=[5, 4])
    assert src.next_below(5) == 1
    with pytest.raises(AssertionError):
        src.next_below(3)


@pytest.mark.parametrize("text,value", [("42", 42), ("0x2a", 42), ("0XFF", 255), ("0", 0)])
def test_parse_seed(text, value):
    assert parse_seed(text) == value


@pytest.mark.parametrize("text", ["-1", "abc", str(1 << 64), "0x"])
def test_parse_seed_rejects(text):
    with pytest.raises(ValueError):
        parse_seed(text)
