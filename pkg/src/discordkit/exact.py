"""Ground truth: brute-force discord search and the exact nnd profile."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .core import _pair_distance

__all__ = [
    "DiscordResult",
    "NndProfile",
    "brute_force_discords",
    "certify_discord",
    "exact_nnd_profile",
    "select_discords",
    "valid_pair_count",
]


@dataclass
class DiscordResult:
    """Discords in discovery order with their exact nearest-neighbor distances."""

    positions: list = field(default_factory=list)
    nnds: list = field(default_factory=list)
    calls: list = field(default_factory=list)
    truncated: bool = False

    @property
    def discords(self):
        return list(zip(self.positions, self.nnds))

    @property
    def total_calls(self):
        return int(sum(self.calls))

    def __len__(self):
        return len(self.positions)


@dataclass(frozen=True)
class NndProfile:
    """Exact nearest-neighbor distance and neighbor of every window.

    Windows with no non-overlapping partner have ``nnd = inf`` and ``ngh = -1``.
    """

    nnd: np.ndarray
    ngh: np.ndarray
    calls: int = 0


@njit(cache=True)
def _profile_kernel(x, mu, sigma, s, n):
    nnd = np.full(n, np.inf)
    ngh = np.full(n, -1, dtype=np.int64)
    calls = 0
    for i in range(n):
        for j in range(i + s, n):
            d = _pair_distance(x, mu, sigma, s, i, j)
            calls += 1
            if d < nnd[i]:
                nnd[i] = d
                ngh[i] = j
            if d < nnd[j]:
                nnd[j] = d
                ngh[j] = i
    return nnd, ngh, calls


def exact_nnd_profile(ts, stats, s=None, counter=None):
    """Exact nnd profile (self-similarity join) by the plain double loop.

    Each unordered non-overlapping pair is evaluated once and updates both ends.
    """
    s = stats.window if s is None else int(s)
    if s != stats.window:
        raise ValueError(f"statistics are for window {stats.window}, not {s}")
    nnd, ngh, calls = _profile_kernel(ts.points, stats.mu, stats.sigma, s, len(stats))
    if counter is not None:
        counter.add(calls)
    return NndProfile(nnd=nnd, ngh=ngh, calls=int(calls))


@njit(cache=True)
def _brute_kernel(x, mu, sigma, s, n):
    nnd = np.full(n, np.inf)
    calls = 0
    for i in range(n):
        best = np.inf
        for j in range(n):
            if abs(i - j) < s:
                continue
            d = _pair_distance(x, mu, sigma, s, i, j)
            calls += 1
            if d < best:
                best = d
        nnd[i] = best
    return nnd, calls


def valid_pair_count(n, s):
    """Number of ordered pairs ``(i, j)`` of ``n`` windows with ``|i - j| >= s``."""
    if n <= s:
        return 0
    m = n - s
    return m * (m + 1)


def select_discords(nnd, s, k):
    """Pick the top-``k`` non-overlapping maxima of an exact nnd array.

    Ties go to the lowest index. Returns ``(positions, values, truncated)``.
    """
    nnd = np.asarray(nnd, dtype=np.float64)
    allowed = np.ones(nnd.size, dtype=bool)
    positions, values = [], []
    for _ in range(k):
        if not allowed.any():
            return positions, values, True
        masked = np.where(allowed, nnd, -np.inf)
        pos = int(np.argmax(masked))
        positions.append(pos)
        values.append(float(nnd[pos]))
        allowed[max(0, pos - s + 1) : pos + s] = False
    return positions, values, False


def brute_force_discords(ts, stats, params, counter=None):
    """Exact top-``k`` discords by evaluating every valid ordered pair.

    The nested loop gives the exact nnd of every candidate once; later discords
    are the best candidates not overlapping earlier ones, so all calls are
    charged to the first discord.

    Returns
    -------
    (DiscordResult, int)
        The discords and the number of distance calls made.
    """
    s = params.window
    nnd, calls = _brute_kernel(ts.points, stats.mu, stats.sigma, s, len(stats))
    calls = int(calls)
    if counter is not None:
        counter.add(calls)
    positions, values, truncated = select_discords(nnd, s, params.k)
    per_discord = [calls] + [0] * (len(positions) - 1)
    result = DiscordResult(
        positions=positions, nnds=values, calls=per_discord, truncated=truncated
    )
    return result, calls


@njit(cache=True)
def _scan_nnd(x, mu, sigma, s, n, i):
    best = np.inf
    for j in range(n):
        if abs(i - j) >= s:
            d = _pair_distance(x, mu, sigma, s, i, j)
            if d < best:
                best = d
    return best


@njit(cache=True)
def _certify_kernel(x, mu, sigma, s, pos, value, ngh, allowed):
    n = ngh.size
    calls = 0
    exact = _scan_nnd(x, mu, sigma, s, n, pos)
    calls += n - min(n, pos + s) + max(0, pos - s + 1)
    if exact != value:
        return False, calls
    for i in range(n):
        if not allowed[i] or i == pos:
            continue
        g = ngh[i]
        if g >= 0 and abs(i - g) >= s:
            d = _pair_distance(x, mu, sigma, s, i, g)
            calls += 1
            if d < value or (d == value and i > pos):
                continue
        # witness too weak: settle this window with a full scan
        d = _scan_nnd(x, mu, sigma, s, n, i)
        calls += n - min(n, i + s) + max(0, i - s + 1)
        if d > value or (d == value and i < pos):
            return False, calls
    return True, calls


def certify_discord(ts, stats, position, nnd, ngh, allowed=None):
    """Check that ``position`` is the top discord among ``allowed`` windows.

    ``ngh`` proposes a neighbor for every window (``-1`` for none), e.g. the
    final neighbor array of an HST run. The discord's nnd is recomputed by a
    full scan and must equal ``nnd`` bit for bit; every other allowed window
    needs a witness closer than ``nnd`` (ties: a higher index), and windows
    without one are scanned in full. Costs O(N) distance calls when the
    witnesses are good, so it scales to series far beyond brute force.

    Returns ``(certified, calls)``.
    """
    n = len(stats)
    if allowed is None:
        allowed = np.ones(n, dtype=np.bool_)
    ok, calls = _certify_kernel(
        ts.points, stats.mu, stats.sigma, stats.window, int(position), float(nnd),
        np.asarray(ngh, dtype=np.int64), np.asarray(allowed, dtype=np.bool_),
    )
    return bool(ok), int(calls)
