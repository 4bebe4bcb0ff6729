"""HOT SAX baseline with instrumented distance-call counting."""

from __future__ import annotations

import numpy as np
from numba import njit

from .core import DistanceCounter, _pair_distance
from .exact import DiscordResult

__all__ = ["hotsax_discords"]


@njit(cache=True)
def _hotsax_search(x, mu, sigma, s, outer, members, starts, cluster_id, perm, offsets, allowed):
    n = cluster_id.size
    best_dist = 0.0
    best_pos = -1
    calls = 0
    for t in range(n):
        i = outer[t]
        if not allowed[i]:
            continue
        c = cluster_id[i]
        nearest = np.inf
        pruned = False
        for q in range(starts[c], starts[c + 1]):
            j = members[q]
            if abs(i - j) < s:
                continue
            d = _pair_distance(x, mu, sigma, s, i, j)
            calls += 1
            if d < nearest:
                nearest = d
                if nearest < best_dist:
                    pruned = True
                    break
        if not pruned:
            # rest of the series, visited from a random offset of a fixed permutation
            q = offsets[t]
            for _ in range(n):
                j = perm[q]
                q += 1
                if q == n:
                    q = 0
                if cluster_id[j] == c or abs(i - j) < s:
                    continue
                d = _pair_distance(x, mu, sigma, s, i, j)
                calls += 1
                if d < nearest:
                    nearest = d
                    if nearest < best_dist:
                        pruned = True
                        break
        if not pruned:
            if best_pos < 0 or nearest > best_dist or (nearest == best_dist and i < best_pos):
                best_dist = nearest
                best_pos = i
    return best_pos, best_dist, calls


def hotsax_discords(ts, stats, index, params, counter=None, rng=None):
    """Top-``k`` discords with HOT SAX.

    The outer loop walks SAX clusters from the smallest, members in random
    order; the inner loop starts with the candidate's own cluster and then
    scans every other window in pseudo-random order, stopping as soon as the
    candidate's running nnd falls below the best discord distance so far.
    Each further discord is a fresh search that skips windows overlapping the
    discords already found.

    Parameters
    ----------
    ts, stats : TimeSeries, SequenceStats
    index : SaxIndex
        Built with the same window, PAA size and alphabet as ``params``.
    params : SearchParams
    counter : DistanceCounter, optional
    rng : numpy.random.Generator, optional
        Defaults to ``numpy.random.default_rng(params.seed)``.

    Returns
    -------
    (DiscordResult, list of int)
        Discords and the distance calls spent on each.
    """
    if rng is None:
        rng = np.random.default_rng(params.seed)
    if counter is None:
        counter = DistanceCounter()
    s = params.window
    n = len(stats)
    outer, starts = index.layout(rng)
    perm = rng.permutation(n).astype(np.int64)
    allowed = np.ones(n, dtype=np.bool_)
    result = DiscordResult()
    for _ in range(params.k):
        if not allowed.any():
            result.truncated = True
            break
        offsets = rng.integers(0, n, size=n, dtype=np.int64)
        pos, dist, calls = _hotsax_search(
            ts.points, stats.mu, stats.sigma, s, outer, outer, starts,
            index.cluster_id, perm, offsets, allowed,
        )
        counter.add(calls)
        result.positions.append(int(pos))
        result.nnds.append(float(dist))
        result.calls.append(int(calls))
        allowed[max(0, pos - s + 1) : pos + s] = False
    return result, list(result.calls)
