"""HOT SAX Time (HST): exact discord search driven by an approximate nnd profile.

The search keeps, for every window, an upper bound on its nearest-neighbor
distance (``nnd``) and the neighbor that attains it (``ngh``). The bounds are
seeded cheaply (a warm-up chain through the SAX clusters, then the short-range
time topology ``ngh(i+1) = ngh(i) + 1``), used to order the outer loop, and
refined by every distance call. Windows whose bound is already below the best
exact nnd found so far are skipped without any call; the bounds survive from
one discord to the next.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .core import DistanceCounter, _pair_distance
from .exact import DiscordResult
from .sax import build_index

__all__ = [
    "HstMonitor",
    "HstOptions",
    "NndState",
    "hst_discords",
    "init_state",
    "long_range_topology_back",
    "long_range_topology_forw",
    "short_range_topology",
    "smooth_nnd",
    "sort_external",
    "warm_up",
]

# trace slots filled by the kernels when an oracle profile is supplied
BOUND_VIOLATIONS = 0
SURVIVOR_MISMATCHES = 1
UNSOUND_SKIPS = 2
MUTATIONS = 3
SURVIVORS = 4
SKIPS = 5
TRACE_SIZE = 6


@dataclass
class NndState:
    """Mutable search state: nnd upper bounds, neighbors and the outer-loop order."""

    nnd: np.ndarray
    ngh: np.ndarray
    best_dist: float = 0.0
    order: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))
    exact: np.ndarray = None

    def __post_init__(self):
        if self.exact is None:
            self.exact = np.zeros(self.nnd.size, dtype=np.bool_)

    def __len__(self):
        return self.nnd.size


@dataclass(frozen=True)
class HstOptions:
    """Ablation switches. The defaults are the reference behavior.

    long_range_survivors_only
        Run the long-range time topology only after windows that survived the
        full inner loop, instead of after every visited window.
    topology_stops_at_low_nnd
        In the long-range loop, stop at the first time-neighbor whose bound is
        already below ``best_dist`` instead of stepping over it.
    reuse_exact_nnds
        Remember which bounds are exact (windows that survived a full scan).
        Each discord after the first starts from the best such value instead
        of zero, and exact windows are never rescanned.
    """

    long_range_survivors_only: bool = False
    topology_stops_at_low_nnd: bool = False
    reuse_exact_nnds: bool = True


@dataclass
class HstMonitor:
    """Checks every state mutation against an exact nnd profile.

    Pass the ``nnd`` array of :func:`discordkit.exact.exact_nnd_profile`; after
    the run the counters report any broken invariant (all should be zero).
    Without an oracle only the call and mutation counts are kept.
    """

    oracle: np.ndarray = None
    trace: np.ndarray = field(default_factory=lambda: np.zeros(TRACE_SIZE, dtype=np.int64))
    setup_calls: int = 0
    warm_up_calls: int = 0

    @property
    def bound_violations(self):
        return int(self.trace[BOUND_VIOLATIONS])

    @property
    def survivor_mismatches(self):
        return int(self.trace[SURVIVOR_MISMATCHES])

    @property
    def unsound_skips(self):
        return int(self.trace[UNSOUND_SKIPS])

    @property
    def mutations(self):
        return int(self.trace[MUTATIONS])

    @property
    def survivors(self):
        return int(self.trace[SURVIVORS])

    @property
    def skips(self):
        return int(self.trace[SKIPS])


_NO_ORACLE = np.empty(0)


def _trace_args(monitor):
    if monitor is None:
        return _NO_ORACLE, np.zeros(TRACE_SIZE, dtype=np.int64)
    if monitor.oracle is None:
        return _NO_ORACLE, monitor.trace
    return np.asarray(monitor.oracle, dtype=np.float64), monitor.trace


def init_state(n):
    """Fresh state for ``n`` windows: every bound is +inf, no neighbors."""
    return NndState(
        nnd=np.full(n, np.inf),
        ngh=np.full(n, -1, dtype=np.int64),
        best_dist=0.0,
        order=np.arange(n, dtype=np.int64),
    )


@njit(cache=True)
def _offer(nnd, ngh, i, j, d, s, oracle, trace):
    # symmetric refresh of both endpoints
    if d < nnd[i]:
        nnd[i] = d
        ngh[i] = j
        if oracle.size > 0:
            trace[MUTATIONS] += 1
            if d < oracle[i] or abs(i - j) < s:
                trace[BOUND_VIOLATIONS] += 1
    if d < nnd[j]:
        nnd[j] = d
        ngh[j] = i
        if oracle.size > 0:
            trace[MUTATIONS] += 1
            if d < oracle[j] or abs(i - j) < s:
                trace[BOUND_VIOLATIONS] += 1


@njit(cache=True)
def _warm_up_kernel(x, mu, sigma, s, chain, nnd, ngh, oracle, trace):
    calls = 0
    for t in range(chain.size - 1):
        a = chain[t]
        b = chain[t + 1]
        if abs(a - b) < s:
            continue
        d = _pair_distance(x, mu, sigma, s, a, b)
        calls += 1
        _offer(nnd, ngh, a, b, d, s, oracle, trace)
    return calls


@njit(cache=True)
def _short_range_kernel(x, mu, sigma, s, nnd, ngh, oracle, trace):
    n = nnd.size
    calls = 0
    for i in range(n):
        g = ngh[i]
        if g < 0:
            continue
        # i + 1 paired with ngh(i) + 1
        a = i + 1
        b = g + 1
        if a < n and b < n and ngh[a] != b:
            d = _pair_distance(x, mu, sigma, s, a, b)
            calls += 1
            _offer(nnd, ngh, a, b, d, s, oracle, trace)
        g = ngh[i]
        a = i - 1
        b = g - 1
        if a >= 0 and b >= 0 and ngh[a] != b:
            d = _pair_distance(x, mu, sigma, s, a, b)
            calls += 1
            _offer(nnd, ngh, a, b, d, s, oracle, trace)
    return calls


@njit(cache=True)
def _long_range_kernel(x, mu, sigma, s, i, step, nnd, ngh, best_dist, stop_at_low, oracle, trace):
    n = nnd.size
    g = ngh[i]
    calls = 0
    if g < 0:
        return calls
    for j in range(1, s + 1):
        a = i + step * j
        b = g + step * j
        if a < 0 or b < 0 or a >= n or b >= n:
            return calls
        if nnd[a] < best_dist:
            if stop_at_low:
                return calls
            continue
        if ngh[a] == b:
            return calls
        d = _pair_distance(x, mu, sigma, s, a, b)
        calls += 1
        if d < nnd[a]:
            _offer(nnd, ngh, a, b, d, s, oracle, trace)
        else:
            # time topology has lost coherence
            return calls
    return calls


@njit(cache=True)
def _resort_tail(order, start, nnd):
    if start >= order.size:
        return
    tail = np.sort(order[start:])
    keys = np.empty(tail.size)
    for q in range(tail.size):
        keys[q] = -nnd[tail[q]]
    perm = np.argsort(keys, kind="mergesort")
    for q in range(tail.size):
        order[start + q] = tail[perm[q]]


@njit(cache=True)
def _minimize(x, mu, sigma, s, i, lo, hi, members, nnd, ngh, best_dist, oracle, trace):
    """Scan members[lo:hi] against i; returns (calls, still_candidate)."""
    calls = 0
    for q in range(lo, hi):
        j = members[q]
        if abs(i - j) < s:
            continue
        d = _pair_distance(x, mu, sigma, s, i, j)
        calls += 1
        _offer(nnd, ngh, i, j, d, s, oracle, trace)
        if nnd[i] < best_dist:
            return calls, False
    return calls, True


@njit(cache=True)
def _hst_search(x, mu, sigma, s, order, members, starts, cluster_id, nnd, ngh, exact,
                survivors_only, stop_at_low, reuse_exact, oracle, trace):
    n_clusters = starts.size - 1
    best_dist = 0.0
    best_pos = -1
    calls = 0
    if reuse_exact:
        # an exact nnd of any remaining candidate is a valid starting best
        for t in range(order.size):
            i = order[t]
            if exact[i] and (best_pos < 0 or nnd[i] > best_dist
                             or (nnd[i] == best_dist and i < best_pos)):
                best_dist = nnd[i]
                best_pos = i
    for t in range(order.size):
        i = order[t]
        can_be_discord = True
        if nnd[i] < best_dist:
            can_be_discord = False
            if oracle.size > 0:
                trace[SKIPS] += 1
                if oracle[i] >= best_dist:
                    trace[UNSOUND_SKIPS] += 1
        c = cluster_id[i]
        scan = can_be_discord and not (reuse_exact and exact[i])
        if scan:
            used, can_be_discord = _minimize(
                x, mu, sigma, s, i, starts[c], starts[c + 1], members,
                nnd, ngh, best_dist, oracle, trace,
            )
            calls += used
        if scan and can_be_discord:
            for cc in range(n_clusters):
                if cc == c:
                    continue
                used, can_be_discord = _minimize(
                    x, mu, sigma, s, i, starts[cc], starts[cc + 1], members,
                    nnd, ngh, best_dist, oracle, trace,
                )
                calls += used
                if not can_be_discord:
                    break
        if can_be_discord or not survivors_only:
            calls += _long_range_kernel(
                x, mu, sigma, s, i, 1, nnd, ngh, best_dist, stop_at_low, oracle, trace
            )
            calls += _long_range_kernel(
                x, mu, sigma, s, i, -1, nnd, ngh, best_dist, stop_at_low, oracle, trace
            )
        if can_be_discord:
            # nnd[i] is exact here: every non-overlapping window has been compared
            if oracle.size > 0:
                trace[SURVIVORS] += 1
                if nnd[i] != oracle[i]:
                    trace[SURVIVOR_MISMATCHES] += 1
            exact[i] = True
            if best_pos < 0 or nnd[i] > best_dist or (nnd[i] == best_dist and i < best_pos):
                best_dist = nnd[i]
                best_pos = i
            _resort_tail(order, t + 1, nnd)
    return best_pos, best_dist, calls


def warm_up(index, state, ts, stats, counter=None, rng=None, monitor=None):
    """Seed the bounds with a chain of calls through shuffled, size-ordered clusters.

    Each cluster is shuffled, clusters are laid end to end from the smallest,
    and every adjacent non-overlapping pair in that chain is compared once.
    Returns ``(members, starts)``, the shuffled layout, which the search reuses
    for its inner loops.
    """
    if rng is None:
        rng = np.random.default_rng()
    members, starts = index.layout(rng)
    oracle, trace = _trace_args(monitor)
    calls = _warm_up_kernel(
        ts.points, stats.mu, stats.sigma, stats.window, members,
        state.nnd, state.ngh, oracle, trace,
    )
    if counter is not None:
        counter.add(calls)
    if monitor is not None:
        monitor.warm_up_calls += int(calls)
        monitor.setup_calls += int(calls)
    return members, starts


def short_range_topology(state, ts, stats, counter=None, monitor=None):
    """Try ``d(i+1, ngh(i)+1)`` and ``d(i-1, ngh(i)-1)`` for every window.

    A direction is skipped when the neighbor it proposes is already recorded,
    so at most two calls are made per window.
    """
    oracle, trace = _trace_args(monitor)
    calls = _short_range_kernel(
        ts.points, stats.mu, stats.sigma, stats.window, state.nnd, state.ngh, oracle, trace
    )
    if counter is not None:
        counter.add(calls)
    if monitor is not None:
        monitor.setup_calls += int(calls)
    return int(calls)


def smooth_nnd(state, s):
    """Centered moving average of the bounds over ``s + 1`` windows.

    Infinite bounds are left out of the average and stay infinite themselves.
    Where the window does not fit (the first and last ``s // 2`` positions)
    the raw bound is returned.
    """
    nnd = state.nnd if isinstance(state, NndState) else np.asarray(state, dtype=np.float64)
    n = nnd.size
    h = int(s) // 2
    out = nnd.astype(np.float64, copy=True)
    if n < 2 * h + 1:
        return out
    finite = np.isfinite(nnd)
    values = np.concatenate(([0.0], np.cumsum(np.where(finite, nnd, 0.0))))
    counts = np.concatenate(([0], np.cumsum(finite)))
    centers = np.arange(h, n - h)
    total = values[centers + h + 1] - values[centers - h]
    count = counts[centers + h + 1] - counts[centers - h]
    inner = finite[centers]
    out[centers[inner]] = total[inner] / count[inner]
    return out


def sort_external(state_or_values):
    """Indices by value descending, ties by ascending index."""
    if isinstance(state_or_values, NndState):
        values = state_or_values.nnd
    else:
        values = np.asarray(state_or_values, dtype=np.float64)
    return np.lexsort((np.arange(values.size), -values)).astype(np.int64)


def _long_range(i, state, ts, stats, step, counter, options, monitor):
    options = options or HstOptions()
    oracle, trace = _trace_args(monitor)
    calls = _long_range_kernel(
        ts.points, stats.mu, stats.sigma, stats.window, int(i), step,
        state.nnd, state.ngh, state.best_dist, options.topology_stops_at_low_nnd,
        oracle, trace,
    )
    if counter is not None:
        counter.add(calls)
    return int(calls)


def long_range_topology_forw(i, state, ts, stats, counter=None, options=None, monitor=None):
    """Propagate ``ngh(i)`` forward: try ``d(i+j, ngh(i)+j)`` for ``j = 1..s``.

    Stops at the series end, at a pair already recorded, or at the first call
    that does not improve the bound. Windows whose bound is already below
    ``state.best_dist`` are stepped over.
    """
    return _long_range(i, state, ts, stats, 1, counter, options, monitor)


def long_range_topology_back(i, state, ts, stats, counter=None, options=None, monitor=None):
    """Mirror of :func:`long_range_topology_forw` towards earlier windows."""
    return _long_range(i, state, ts, stats, -1, counter, options, monitor)


def _ordered_candidates(nnd, allowed):
    idx = np.flatnonzero(allowed).astype(np.int64)
    return idx[np.lexsort((idx, -nnd[idx]))]


def hst_discords(ts, stats, index=None, params=None, counter=None, rng=None,
                 options=None, monitor=None, state=None):
    """Top-``k`` exact discords with HOT SAX Time.

    Parameters
    ----------
    ts, stats : TimeSeries, SequenceStats
    index : SaxIndex, optional
        Built on demand from ``params`` when omitted.
    params : SearchParams
    counter : DistanceCounter, optional
    rng : numpy.random.Generator, optional
        Defaults to ``numpy.random.default_rng(params.seed)``.
    options : HstOptions, optional
    monitor : HstMonitor, optional
        Enables invariant checks against an exact profile (slower).
    state : NndState, optional
        Receives the final bounds; a fresh one is created when omitted.

    Returns
    -------
    (DiscordResult, list of int)
        Discords and the calls charged to each; the warm-up and short-range
        calls are charged to the first discord.
    """
    if params is None:
        raise TypeError("params is required")
    options = options or HstOptions()
    if rng is None:
        rng = np.random.default_rng(params.seed)
    if counter is None:
        counter = DistanceCounter()
    if index is None:
        index = build_index(ts, stats, params)
    s = params.window
    n = len(stats)
    if state is None:
        state = init_state(n)
    oracle, trace = _trace_args(monitor)

    before = counter.calls
    members, starts = warm_up(index, state, ts, stats, counter, rng, monitor)
    short_range_topology(state, ts, stats, counter, monitor)
    setup = counter.calls - before

    allowed = np.ones(n, dtype=np.bool_)
    result = DiscordResult()
    for m in range(params.k):
        if not allowed.any():
            result.truncated = True
            break
        if m == 0:
            order = sort_external(smooth_nnd(state, s))
        else:
            order = _ordered_candidates(state.nnd, allowed)
        state.order = order
        pos, dist, calls = _hst_search(
            ts.points, stats.mu, stats.sigma, s, order, members, starts,
            index.cluster_id, state.nnd, state.ngh, state.exact,
            options.long_range_survivors_only, options.topology_stops_at_low_nnd,
            options.reuse_exact_nnds, oracle, trace,
        )
        counter.add(calls)
        state.best_dist = float(dist)
        result.positions.append(int(pos))
        result.nnds.append(float(dist))
        result.calls.append(int(calls) + (setup if m == 0 else 0))
        allowed[max(0, pos - s + 1) : pos + s] = False
    return result, list(result.calls)
