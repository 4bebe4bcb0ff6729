import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from discordkit import InvalidParameterError, SearchParams, TimeSeries, compute_stats
from discordkit.sax import SaxIndex, breakpoints, build_index, paa, sax_word


def bisect_quantile(p):
    """Inverse standard-normal CDF by bisection on erfc; independent of the library."""
    lo, hi = -10.0, 10.0
    for _ in range(200):
        mid = (lo + hi) / 2
        if 0.5 * math.erfc(-mid / math.sqrt(2)) < p:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def test_breakpoints_known_values():
    assert breakpoints(2).tolist() == [0.0]
    np.testing.assert_allclose(breakpoints(4), [-0.6745, 0.0, 0.6745], atol=5e-5)
    np.testing.assert_allclose(breakpoints(3), [-0.4307, 0.4307], atol=5e-5)


@pytest.mark.parametrize("a", range(2, 21))
def test_breakpoints_against_bisection(a):
    brk = breakpoints(a)
    assert brk.size == a - 1
    expected = [bisect_quantile(m / a) for m in range(1, a)]
    np.testing.assert_allclose(brk, expected, atol=1e-8)
    assert np.all(np.diff(brk) > 0)
    np.testing.assert_allclose(brk, -brk[::-1], atol=1e-12)


@pytest.mark.parametrize("a", [1, 21, 0, 2.5])
def test_breakpoints_reject_bad_alphabet(a):
    with pytest.raises(InvalidParameterError):
        breakpoints(a)


def test_paa_hand_example():
    ts = TimeSeries([0.0, 1.0, 2.0, 3.0, 100.0])
    stats = compute_stats(ts, 4)
    np.testing.assert_allclose(paa(ts, stats, 0, 2), [-0.8944, 0.8944], atol=5e-5)


def test_paa_of_flat_window_is_zero():
    ts = TimeSeries([2.0] * 8 + [1.0, 5.0])
    stats = compute_stats(ts, 8)
    assert paa(ts, stats, 0, 4).tolist() == [0.0] * 4


def test_paa_with_one_point_blocks_is_the_znormalized_window():
    rng = np.random.default_rng(0)
    ts = TimeSeries(rng.standard_normal(30))
    stats = compute_stats(ts, 10)
    w = ts.points[5:15]
    np.testing.assert_allclose(paa(ts, stats, 5, 10), (w - w.mean()) / w.std(), atol=1e-12)


def test_paa_requires_divisor():
    ts = TimeSeries(np.arange(20.0))
    with pytest.raises(InvalidParameterError):
        paa(ts, compute_stats(ts, 10), 0, 3)


def test_sax_word_examples():
    brk4 = breakpoints(4)
    assert sax_word([-0.8944, 0.8944], brk4) == "ad"
    assert sax_word([0.0, 0.0, 0.0], brk4) == "ccc"
    assert sax_word([brk4[0]], brk4) == "b"
    assert sax_word([-0.3, 0.2, 0.0, -1e-9], breakpoints(2)) == "abba"


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=1, max_size=12), st.integers(2, 20))
def test_sax_word_cells(values, a):
    brk = breakpoints(a)
    word = sax_word(values, brk)
    for v, ch in zip(values, word):
        m = ord(ch) - ord("a")
        assert 0 <= m < a
        if m > 0:
            assert v >= brk[m - 1]
        if m < a - 1:
            assert v < brk[m]


def check_partition(index, n):
    sizes = index.sizes()
    assert sum(sizes) == n
    seen = np.concatenate([index.clusters[w] for w in index.cluster_order])
    assert sorted(seen.tolist()) == list(range(n))
    assert sizes == sorted(sizes)
    assert len(index.cluster_order) == len(set(index.cluster_order)) == len(index.clusters)
    for i, w in enumerate(index.word_of):
        assert index.cluster_order[index.cluster_id[i]] == w


def test_build_index_partition_and_order(small_walk):
    ts, stats = small_walk
    params = SearchParams(window=32, paa_segments=4, alphabet=4)
    index = build_index(ts, stats, params)
    check_partition(index, len(stats))
    for w in index.cluster_order:
        assert all(index.word_of[i] == w for i in index.clusters[w])
    # ties in size resolve lexicographically
    for a, b in zip(index.cluster_order, index.cluster_order[1:]):
        if len(index.clusters[a]) == len(index.clusters[b]):
            assert a < b


def test_build_index_matches_per_window_words(small_walk):
    ts, stats = small_walk
    params = SearchParams(window=32, paa_segments=8, alphabet=5)
    index = build_index(ts, stats, params)
    brk = breakpoints(5)
    for i in range(0, len(stats), 17):
        assert index.word_of[i] == sax_word(paa(ts, stats, i, 8), brk)


def test_build_index_is_deterministic(small_walk):
    ts, stats = small_walk
    params = SearchParams(window=32, paa_segments=4, alphabet=6)
    a = build_index(ts, stats, params)
    b = build_index(ts, stats, params)
    assert a.word_of == b.word_of and a.cluster_order == b.cluster_order
    assert all(np.array_equal(a.clusters[w], b.clusters[w]) for w in a.cluster_order)


def test_square_wave_forms_a_single_cluster():
    # period 8 divides s / P = 8; with phase-aligned windows every block mean is 0
    period = np.array([1.0] * 4 + [-1.0] * 4)
    ts = TimeSeries(np.tile(period, 40))
    stats = compute_stats(ts, 32)
    index = build_index(ts, stats, SearchParams(window=32, paa_segments=4, alphabet=4))
    assert len(index.clusters) == 1
    assert index.sizes() == [len(stats)]


def test_identical_windows_share_a_word():
    rng = np.random.default_rng(5)
    shape = rng.standard_normal(16)
    ts = TimeSeries(np.concatenate([shape, rng.standard_normal(20), shape * 3 + 7]))
    stats = compute_stats(ts, 16)
    index = build_index(ts, stats, SearchParams(window=16, paa_segments=4, alphabet=8))
    assert index.word_of[0] == index.word_of[36]


def test_layout_orders_clusters_smallest_first():
    index = SaxIndex(
        word_of=["b", "a", "b", "c", "b", "c"],
        clusters={"a": np.array([1]), "b": np.array([0, 2, 4]), "c": np.array([3, 5])},
        cluster_order=["a", "c", "b"],
        cluster_id=np.array([2, 0, 2, 1, 2, 1]),
    )
    members, starts = index.layout()
    assert members.tolist() == [1, 3, 5, 0, 2, 4]
    assert starts.tolist() == [0, 1, 3, 6]
    shuffled, _ = index.layout(np.random.default_rng(0))
    assert sorted(shuffled[3:].tolist()) == [0, 2, 4]
