import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from discordkit import (
    DistanceCounter,
    InvalidParameterError,
    SearchParams,
    SelfMatchError,
    TimeSeries,
    compute_stats,
    is_self_match,
    num_sequences,
    znorm_distance,
)
from discordkit.core import naive_znorm_distance


def naive_stats(points, s):
    windows = np.lib.stride_tricks.sliding_window_view(np.asarray(points, float), s)
    return windows.mean(axis=1), windows.std(axis=1)


@pytest.mark.parametrize(
    "n_tot, s, expected",
    [(2299, 120, 2180), (10, 10, 1), (20000, 120, 19881)],
)
def test_num_sequences(n_tot, s, expected):
    assert num_sequences(TimeSeries(np.zeros(n_tot)), s) == expected


def test_num_sequences_rejects_long_window():
    with pytest.raises(InvalidParameterError):
        num_sequences(TimeSeries(np.zeros(10)), 11)


@pytest.mark.parametrize(
    "i, j, s, expected",
    [(5, 5, 8, True), (0, 8, 8, False), (67, 73, 10, True), (73, 67, 10, True), (75, 67, 10, True)],
)
def test_is_self_match(i, j, s, expected):
    assert is_self_match(i, j, s) is expected


def test_time_series_validation():
    with pytest.raises(InvalidParameterError):
        TimeSeries([1.0])
    with pytest.raises(InvalidParameterError):
        TimeSeries([1.0, float("nan"), 2.0])
    ts = TimeSeries([1, 2, 3])
    assert ts.points.dtype == np.float64
    with pytest.raises(ValueError):
        ts.points[0] = 5.0


def test_search_params_validation():
    SearchParams(window=120, paa_segments=4, alphabet=4, k=1)
    with pytest.raises(InvalidParameterError):
        SearchParams(window=120, paa_segments=7)
    with pytest.raises(InvalidParameterError):
        SearchParams(window=3)
    with pytest.raises(InvalidParameterError):
        SearchParams(window=8, alphabet=21)
    with pytest.raises(InvalidParameterError):
        SearchParams(window=8, alphabet=1)
    with pytest.raises(InvalidParameterError):
        SearchParams(window=8, k=0)
    # N = 20 windows of length 10 -> at most 20 // 10 + 1 = 3 discords
    SearchParams(window=10, paa_segments=5, k=3).validate_for(29)
    with pytest.raises(InvalidParameterError):
        SearchParams(window=10, paa_segments=5, k=4).validate_for(29)
    with pytest.raises(InvalidParameterError):
        SearchParams(window=10, paa_segments=5).validate_for(9)


def test_compute_stats_hand_example():
    stats = compute_stats(TimeSeries([0, 1, 2, 3]), 4)
    assert stats.mu.tolist() == [1.5]
    assert stats.sigma[0] == pytest.approx(math.sqrt(1.25), rel=1e-12)


def test_compute_stats_zeros():
    stats = compute_stats(TimeSeries(np.zeros(50)), 7)
    assert len(stats) == 44
    assert np.all(stats.mu == 0) and np.all(stats.sigma == 0)


@settings(max_examples=60, deadline=None)
@given(
    arrays(np.float64, st.integers(10, 3000), elements=st.floats(-1e3, 1e3)),
    st.integers(2, 300),
)
def test_compute_stats_matches_naive(points, s):
    s = min(s, points.size)
    ts = TimeSeries(points)
    stats = compute_stats(ts, s)
    mu, sd = naive_stats(points, s)
    scale = np.abs(points).max() + 1.0
    np.testing.assert_allclose(stats.mu, mu, rtol=1e-9, atol=1e-12 * scale)
    np.testing.assert_allclose(stats.sigma, sd, rtol=1e-9, atol=1e-9 * scale)
    assert np.all(stats.sigma >= 0)


def test_compute_stats_long_series_relative():
    rng = np.random.default_rng(0)
    ts = TimeSeries(np.cumsum(rng.standard_normal(20000)))
    stats = compute_stats(ts, 128)
    mu, sd = naive_stats(ts.points, 128)
    np.testing.assert_allclose(stats.mu, mu, rtol=1e-9)
    np.testing.assert_allclose(stats.sigma, sd, rtol=1e-9)


def test_identical_windows_distance_zero():
    pattern = [0.3, -1.0, 2.5, 0.7, 1.1]
    ts = TimeSeries(pattern + [9.0] + pattern)
    stats = compute_stats(ts, 5)
    assert znorm_distance(ts, stats, 0, 6) == pytest.approx(0.0, abs=1e-7)


def test_anticorrelated_pair():
    ts = TimeSeries([0.0, 1.0, 1.0, 0.0])
    stats = compute_stats(ts, 2)
    assert znorm_distance(ts, stats, 0, 2) == pytest.approx(2 * math.sqrt(2), rel=1e-12)


def test_self_match_is_rejected():
    ts = TimeSeries(np.arange(20.0))
    stats = compute_stats(ts, 5)
    with pytest.raises(SelfMatchError):
        znorm_distance(ts, stats, 3, 7)
    with pytest.raises(InvalidParameterError):
        znorm_distance(ts, stats, 0, 16)


def test_degenerate_windows():
    ts = TimeSeries([1.0] * 6 + [2.0] * 6 + [0.0, 1.0, 0.0, 1.0, 0.0, 1.0])
    stats = compute_stats(ts, 6)
    assert znorm_distance(ts, stats, 0, 6) == 0.0
    assert znorm_distance(ts, stats, 0, 12) == pytest.approx(math.sqrt(6))
    assert naive_znorm_distance(ts, 0, 12, 6) == pytest.approx(math.sqrt(6))


def test_dot_form_matches_direct_form_on_random_pairs():
    rng = np.random.default_rng(42)
    ts = TimeSeries(rng.standard_normal(5000) + 3.0)
    s = 64
    stats = compute_stats(ts, s)
    n = len(stats)
    checked = 0
    worst = 0.0
    while checked < 2000:
        i, j = (int(v) for v in rng.integers(0, n, 2))
        if is_self_match(i, j, s):
            continue
        fast = znorm_distance(ts, stats, i, j)
        slow = naive_znorm_distance(ts, i, j, s)
        worst = max(worst, abs(fast - slow) / slow)
        checked += 1
    assert worst < 1e-6


def test_symmetry_is_exact(small_walk):
    ts, stats = small_walk
    rng = np.random.default_rng(1)
    for _ in range(500):
        i, j = (int(v) for v in rng.integers(0, len(stats), 2))
        if is_self_match(i, j, stats.window):
            continue
        assert znorm_distance(ts, stats, i, j) == znorm_distance(ts, stats, j, i)


def test_distance_range(small_walk):
    ts, stats = small_walk
    s = stats.window
    for i in range(0, len(stats), 7):
        for j in range(i + s, len(stats), 13):
            d = znorm_distance(ts, stats, i, j)
            assert 0.0 <= d <= math.sqrt(4 * s) + 1e-12


@settings(max_examples=50, deadline=None)
@given(st.floats(-100, 100), st.floats(0.01, 100), st.integers(0, 10_000))
def test_shift_and_scale_invariance(shift, scale, seed):
    rng = np.random.default_rng(seed)
    s = 16
    a = rng.standard_normal(s)
    b = rng.standard_normal(s)
    base = TimeSeries(np.concatenate([a, b]))
    moved = TimeSeries(np.concatenate([a, b * scale + shift]))
    d0 = znorm_distance(base, compute_stats(base, s), 0, s)
    d1 = znorm_distance(moved, compute_stats(moved, s), 0, s)
    assert d1 == pytest.approx(d0, abs=1e-9)


def test_counter_counts_every_call_including_abandoned(small_walk):
    ts, stats = small_walk
    counter = DistanceCounter()
    script = [(0, 100, None), (5, 300, 0.0), (40, 400, 1e9), (200, 10, 0.5), (550, 0, None)]
    for i, j, limit in script:
        znorm_distance(ts, stats, i, j, abandon_at=limit, counter=counter)
    assert counter.calls == len(script)


def test_abandon_signal(small_walk):
    ts, stats = small_walk
    d = znorm_distance(ts, stats, 0, 100)
    assert znorm_distance(ts, stats, 0, 100, abandon_at=d / 2) == math.inf
    assert znorm_distance(ts, stats, 0, 100, abandon_at=d * 2) == d


def test_counter_checkpoints():
    c = DistanceCounter()
    c.add(5)
    assert c.checkpoint() == 5
    c.add(3)
    assert c.checkpoint() == 3
    assert c.history == [5, 3]


def test_flat_windows_after_a_jump_are_exactly_flat():
    ts = TimeSeries([0.0] + [159.5] * 40 + [3.0, -2.0] + [7.25] * 30)
    stats = compute_stats(ts, 5)
    mu, sd = naive_stats(ts.points, 5)
    flat = sd == 0
    assert flat.sum() > 50
    assert np.all(stats.sigma[flat] == 0.0)
    np.testing.assert_array_equal(stats.mu[flat], mu[flat])
