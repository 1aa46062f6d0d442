import itertools
import math
import random

import pytest

from smallsample.prng import CountingSource, ScriptedSource, SplitMix64
from smallsample.small import (
    CompareChangeNetwork,
    CompareChangeStep,
    apply_layers,
    build_network,
    random_four_tuple,
    random_four_tuple_into,
    random_pair,
    random_pair_into,
    random_triple,
    random_triple_into,
    run_network,
    run_network_into,
)
from smallsample.uniformity import enumerate_bijection, enumerate_outputs, tally_report


def scripted(n, draws):
    return ScriptedSource(draws, bounds=[n - i for i in range(len(draws))])


def net_fn(k):
    net = build_network(k)
    return lambda n, _k, src: run_network(net, n, src)


@pytest.mark.parametrize(
    "n,draws,expected",
    [(2, (0, 0), (0, 1)), (5, (2, 2), (2, 4)), (5, (3, 1), (3, 1))],
)
def test_pair_traces(n, draws, expected):
    assert random_pair(n, scripted(n, draws)) == expected


@pytest.mark.parametrize(
    "n,draws,expected",
    [(3, (0, 0, 0), (0, 2, 1)), (6, (1, 1, 1), (1, 5, 4)), (6, (3, 0, 3), (3, 0, 5))],
)
def test_triple_traces(n, draws, expected):
    assert random_triple(n, scripted(n, draws)) == expected


@pytest.mark.parametrize(
    "n,draws,expected",
    [(7, (0, 0, 0, 0), (0, 6, 5, 4)), (4, (3, 2, 1, 0), (3, 2, 1, 0))],
)
def test_four_tuple_traces(n, draws, expected):
    assert random_four_tuple(n, scripted(n, draws)) == expected


@pytest.mark.parametrize(
    "fn,n", [(random_pair, 1), (random_triple, 2), (random_four_tuple, 3), (random_pair, 0)]
)
def test_too_small_n(fn, n):
    with pytest.raises(ValueError):
        fn(n, SplitMix64())


def test_four_tuple_exhaustive_n4():
    report = enumerate_bijection(lambda n, k, src: random_four_tuple(n, src), 4, 4)
    assert report.is_bijection
    assert report.input_count == 24


@pytest.mark.parametrize("n", range(2, 13))
def test_pair_bijection(n):
    assert enumerate_bijection("pair", n, 2).is_bijection


@pytest.mark.parametrize("n", range(3, 10))
def test_triple_bijection(n):
    assert enumerate_bijection("triple", n, 3).is_bijection


@pytest.mark.parametrize("n", range(4, 8))
def test_quad_bijection(n):
    assert enumerate_bijection("quad", n, 4).is_bijection


@pytest.mark.parametrize("k,n", [(k, n) for k in range(2, 6) for n in range(k, 8)])
def test_network_bijection(k, n):
    assert enumerate_bijection(net_fn(k), n, k).is_bijection


def test_network_k5_n7_exhaustive():
    report = enumerate_bijection(net_fn(5), 7, 5)
    assert report.input_count == 2520
    assert report.distinct_output_count == 2520
    assert report.is_bijection


@pytest.mark.parametrize(
    "k,explicit",
    [
        (2, lambda n, src: random_pair(n, src)),
        (3, lambda n, src: random_triple(n, src)),
        (4, lambda n, src: random_four_tuple(n, src)),
    ],
)
@pytest.mark.parametrize("n", [4, 6, 8])
def test_network_equals_explicit(k, explicit, n):
    net = build_network(k)
    bounds = [n - i for i in range(k)]
    for draws in itertools.product(*(range(b) for b in bounds)):
        assert run_network(net, n, ScriptedSource(draws)) == explicit(n, ScriptedSource(draws))


def test_network_traces():
    assert run_network(build_network(3), 6, scripted(6, (1, 1, 1))) == (1, 5, 4)
    assert run_network(build_network(4), 7, scripted(7, (0, 0, 0, 0))) == (0, 6, 5, 4)


def test_network_k2_structure():
    net = build_network(2)
    assert net.layers == ((CompareChangeStep(target=1, anchor=0),),)
    assert net.layers[0][0].replacement(10) == 9


def test_network_k4_structure():
    net = build_network(4)
    assert [layer[0].anchor for layer in net.layers] == [2, 1, 0]
    assert [len(layer) for layer in net.layers] == [1, 2, 3]
    assert len(net.steps) == 6
    # Same compare-changes, in the same order, as the hand-written four-tuple sampler.
    n = 20
    assert [(s.target, s.anchor, s.replacement(n)) for s in net.steps] == [
        (3, 2, n - 3),
        (2, 1, n - 2),
        (3, 1, n - 2),
        (1, 0, n - 1),
        (2, 0, n - 1),
        (3, 0, n - 1),
    ]
    assert net.draw_bounds(n) == [20, 19, 18, 17]


@pytest.mark.parametrize("k", range(2, 12))
def test_network_step_count_quadratic(k):
    net = build_network(k)
    assert len(net.steps) == k * (k - 1) // 2
    for layer in net.layers:
        targets = [s.target for s in layer]
        assert len(set(targets)) == len(targets)
    for s in net.steps:
        n = k + 5
        assert n - k + 1 <= s.replacement(n) <= n - 1


def test_build_network_rejects_small_k():
    with pytest.raises(ValueError):
        build_network(1)


def test_run_network_rejects_small_n():
    with pytest.raises(ValueError):
        run_network(build_network(5), 4, SplitMix64())


def test_network_n_equals_k_is_permutation():
    src = SplitMix64(8)
    for _ in range(100):
        assert sorted(run_network(build_network(6), 6, src)) == list(range(6))


def test_network_layer_ordering_validated():
    bad_layers = tuple(reversed(build_network(3).layers))
    with pytest.raises(ValueError):
        CompareChangeNetwork(k=3, layers=bad_layers)


def _layered_fn(layers, k):
    def fn(n, _k, src):
        values = [src.next_below(n - i) for i in range(k)]
        return apply_layers(layers, values, n)

    return fn


@pytest.mark.parametrize("k,n", [(3, 5), (4, 6), (5, 6)])
def test_permuting_steps_within_layers_is_harmless(k, n):
    layers = build_network(k).layers
    rng = random.Random(k * 100 + n)
    for _ in range(5):
        shuffled = [rng.sample(layer, len(layer)) for layer in layers]
        tally, total = enumerate_outputs(_layered_fn(layers, k), n, k)
        tally2, _ = enumerate_outputs(_layered_fn(shuffled, k), n, k)
        assert tally == tally2
        # Also identical per draw tuple, not just in distribution.
        for draws in itertools.product(*(range(n - i) for i in range(k))):
            a = apply_layers(layers, list(draws), n)
            b = apply_layers(shuffled, list(draws), n)
            assert a == b


def test_increasing_anchor_order_breaks_bijection():
    # Running the anchor-0 layer first compares against a value that the
    # anchor-1 step changes afterwards. With n=4, draws (2, 0, 0) skip the
    # anchor-0 checks, then the anchor-1 step writes n-2 = 2 over the last
    # value, colliding with the first.
    layers = tuple(reversed(build_network(3).layers))
    fn = _layered_fn(layers, 3)
    counts, total = enumerate_outputs(fn, 4, 3)
    report = tally_report(counts, total, 4, 3)
    assert not report.is_bijection
    assert (2, 0, 2) in report.invalid_outputs
    assert report.missing_outputs_count > 0


@pytest.mark.parametrize("k", [2, 3, 4, 5, 7])
def test_network_draw_count_is_k(k):
    src = CountingSource(SplitMix64(k))
    for n in (k, k + 1, 50):
        src.reset()
        run_network(build_network(k), n, src)
        assert src.bounded_draws == k


def test_into_variants_match_tuple_variants():
    for fill, ret, k in [
        (random_pair_into, random_pair, 2),
        (random_triple_into, random_triple, 3),
        (random_four_tuple_into, random_four_tuple, 4),
    ]:
        a, b = SplitMix64(77), SplitMix64(77)
        buf = [0] * k
        for n in (k, 9, 1000):
            assert tuple(fill(n, a, buf)) == ret(n, b)
    a, b = SplitMix64(5), SplitMix64(5)
    buf = [0] * 6
    net = build_network(6)
    assert tuple(run_network_into(net, 30, a, buf)) == run_network(net, 30, b)


def test_ordered_outputs_cover_each_combination_k_factorial_times():
    for name, k, n in [("pair", 2, 7), ("triple", 3, 7), ("quad", 4, 7)]:
        counts, total = enumerate_outputs(name, n, k)
        report = tally_report(counts, total, n, k, ordered=False)
        assert report.uniform
        per_combo = total // math.comb(n, k)
        assert per_combo == math.factorial(k)
