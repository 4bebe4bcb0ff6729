"""Time-series container, per-window statistics and the z-normalized distance.

Every algorithm in the package measures its cost in calls to a single distance
kernel, ``_pair_distance``. Keeping one kernel, with one accumulation order and
a canonical argument order, makes distances bit-identical across brute force,
HOT SAX and HST, so exact searches can be compared with ``==``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .errors import InvalidParameterError, SelfMatchError

__all__ = [
    "DEGENERATE_SIGMA",
    "DistanceCounter",
    "SearchParams",
    "SequenceStats",
    "TimeSeries",
    "compute_stats",
    "is_self_match",
    "naive_znorm_distance",
    "num_sequences",
    "znorm_distance",
    "znormalize",
]

#: Windows whose standard deviation is below this value are treated as flat:
#: their z-normalized form is the all-zeros vector.
DEGENERATE_SIGMA = 1e-12

MIN_ALPHABET = 2
MAX_ALPHABET = 20
MIN_WINDOW = 4


@dataclass(frozen=True)
class TimeSeries:
    """An immutable sequence of finite real samples.

    Parameters
    ----------
    points : array-like of float
        The samples ``p_0 .. p_{N_tot-1}``. At least two, all finite.
    name : str, optional
        Free-form label carried into reports.
    """

    points: np.ndarray
    name: str = ""

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.float64, copy=True).ravel()
        if pts.size < 2:
            raise InvalidParameterError(
                f"a time series needs at least 2 points, got {pts.size}"
            )
        if not np.all(np.isfinite(pts)):
            bad = int(np.flatnonzero(~np.isfinite(pts))[0])
            raise InvalidParameterError(f"non-finite value at position {bad}")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return self.points.size


@dataclass(frozen=True)
class SearchParams:
    """Parameters of a discord search.

    ``window`` is the sequence length ``s``; ``paa_segments`` (``P``) must
    divide it. ``alphabet`` is the SAX alphabet size and ``k`` the number of
    discords requested.
    """

    window: int
    paa_segments: int = 4
    alphabet: int = 4
    k: int = 1
    seed: int = 0

    def __post_init__(self):
        for name in ("window", "paa_segments", "alphabet", "k", "seed"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise InvalidParameterError(f"{name} must be an integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.window < MIN_WINDOW:
            raise InvalidParameterError(
                f"window must be at least {MIN_WINDOW}, got {self.window}"
            )
        if self.paa_segments < 1 or self.window % self.paa_segments:
            raise InvalidParameterError(
                f"paa_segments={self.paa_segments} must divide window={self.window}"
            )
        if not MIN_ALPHABET <= self.alphabet <= MAX_ALPHABET:
            raise InvalidParameterError(
                f"alphabet must be in [{MIN_ALPHABET}, {MAX_ALPHABET}], got {self.alphabet}"
            )
        if self.k < 1:
            raise InvalidParameterError(f"k must be at least 1, got {self.k}")

    def validate_for(self, n_points):
        """Check the parameters against a series of ``n_points`` samples."""
        if self.window > n_points:
            raise InvalidParameterError(
                f"window={self.window} exceeds series length {n_points}"
            )
        n = n_points - self.window + 1
        max_k = n // self.window + 1
        if self.k > max_k:
            raise InvalidParameterError(
                f"k={self.k} exceeds the {max_k} non-overlapping discords possible "
                f"with {n} sequences of length {self.window}"
            )
        return self


@dataclass(frozen=True)
class SequenceStats:
    """Mean and population standard deviation of every length-``window`` window."""

    window: int
    mu: np.ndarray
    sigma: np.ndarray

    def __len__(self):
        return self.mu.size


@dataclass
class DistanceCounter:
    """Counts calls to the distance function. Owned by a single search run."""

    calls: int = 0
    history: list = field(default_factory=list, repr=False)

    def add(self, n):
        self.calls += int(n)

    def checkpoint(self):
        """Record and return the number of calls since the previous checkpoint."""
        previous = sum(self.history)
        delta = self.calls - previous
        self.history.append(delta)
        return delta


def num_sequences(ts, s):
    """Number of complete windows of length ``s`` in ``ts``."""
    n_tot = len(ts)
    if s < 1 or s > n_tot:
        raise InvalidParameterError(f"window={s} must lie in [1, {n_tot}]")
    return n_tot - s + 1


def is_self_match(i, j, s):
    """True when windows starting at ``i`` and ``j`` overlap (``|i - j| < s``)."""
    return abs(i - j) < s


@njit(cache=True)
def _exact_window(x, i, s):
    mean = 0.0
    for t in range(s):
        mean += x[i + t]
    mean /= s
    m2 = 0.0
    for t in range(s):
        dev = x[i + t] - mean
        m2 += dev * dev
    return mean, m2


@njit(cache=True)
def _rolling_stats(x, s):
    n = x.size - s + 1
    mu = np.empty(n)
    sigma = np.empty(n)
    # changes[t] = number of t' < t with x[t'] != x[t' + 1]; flat windows are exact
    changes = np.zeros(x.size, dtype=np.int64)
    for t in range(1, x.size):
        changes[t] = changes[t - 1] + (x[t] != x[t - 1])
    block = max(1024, s)
    mean = 0.0
    m2 = 0.0
    peak = 0.0
    for i in range(n):
        if changes[i + s - 1] == changes[i]:
            mean = x[i]
            m2 = 0.0
            peak = 0.0
        elif i % block == 0 or i == 0 or peak == 0.0:
            mean, m2 = _exact_window(x, i, s)
            peak = m2
        else:
            x_out = x[i - 1]
            x_in = x[i + s - 1]
            new_mean = mean + (x_in - x_out) / s
            m2 += (x_in - x_out) * (x_in - new_mean + x_out - mean)
            mean = new_mean
            if m2 < 1e-2 * peak:
                # variance collapsed: the sliding update has lost precision
                mean, m2 = _exact_window(x, i, s)
                peak = m2
            elif m2 > peak:
                peak = m2
        mu[i] = mean
        sigma[i] = math.sqrt(m2 / s)
    return mu, sigma


def compute_stats(ts, s):
    """Per-window means and population standard deviations in O(N_tot)."""
    num_sequences(ts, s)
    mu, sigma = _rolling_stats(ts.points, int(s))
    mu.flags.writeable = False
    sigma.flags.writeable = False
    return SequenceStats(window=int(s), mu=mu, sigma=sigma)


@njit(cache=True)
def _pair_distance(x, mu, sigma, s, i, j):
    # canonical order: d(i, j) and d(j, i) run the exact same float operations
    if i > j:
        i, j = j, i
    si = sigma[i]
    sj = sigma[j]
    if si < DEGENERATE_SIGMA:
        if sj < DEGENERATE_SIGMA:
            return 0.0
        return math.sqrt(s)
    if sj < DEGENERATE_SIGMA:
        return math.sqrt(s)
    mi = mu[i]
    mj = mu[j]
    # centered scalar product: equals x_i . x_j - s mu_i mu_j without the cancellation
    a0 = 0.0
    a1 = 0.0
    a2 = 0.0
    a3 = 0.0
    t = 0
    while t + 4 <= s:
        a0 += (x[i + t] - mi) * (x[j + t] - mj)
        a1 += (x[i + t + 1] - mi) * (x[j + t + 1] - mj)
        a2 += (x[i + t + 2] - mi) * (x[j + t + 2] - mj)
        a3 += (x[i + t + 3] - mi) * (x[j + t + 3] - mj)
        t += 4
    while t < s:
        a0 += (x[i + t] - mi) * (x[j + t] - mj)
        t += 1
    cov = (a0 + a1) + (a2 + a3)
    corr = cov / (s * (si * sj))
    radicand = 2.0 * s * (1.0 - corr)
    if radicand < 0.0:
        radicand = 0.0
    return math.sqrt(radicand)


def _check_pair(stats, i, j):
    n = len(stats)
    if not (0 <= i < n and 0 <= j < n):
        raise InvalidParameterError(f"window index out of range [0, {n}): ({i}, {j})")
    if is_self_match(i, j, stats.window):
        raise SelfMatchError(
            f"windows {i} and {j} overlap (window length {stats.window})"
        )


def znorm_distance(ts, stats, i, j, abandon_at=None, counter=None):
    """Z-normalized Euclidean distance between windows ``i`` and ``j``.

    Evaluated with the dot-product identity
    ``d^2 = 2s (1 - (x_i . x_j - s mu_i mu_j) / (s sigma_i sigma_j))``
    using the precomputed window statistics.

    Parameters
    ----------
    ts : TimeSeries
    stats : SequenceStats
        Statistics of ``ts`` for the window length in use.
    i, j : int
        Start indices of two non-overlapping windows.
    abandon_at : float, optional
        If the distance exceeds this threshold, ``math.inf`` is returned in
        place of the value. The call still counts once.
    counter : DistanceCounter, optional
        Incremented by exactly one per invocation.

    Returns
    -------
    float
        The distance, or ``math.inf`` when abandoned.

    Raises
    ------
    SelfMatchError
        If the windows overlap.
    """
    i = int(i)
    j = int(j)
    _check_pair(stats, i, j)
    if counter is not None:
        counter.add(1)
    d = _pair_distance(ts.points, stats.mu, stats.sigma, stats.window, i, j)
    if abandon_at is not None and d > abandon_at:
        return math.inf
    return d


def znormalize(window):
    """Z-normalize one window, mapping a flat window to zeros."""
    window = np.asarray(window, dtype=np.float64)
    sd = window.std()
    if sd < DEGENERATE_SIGMA:
        return np.zeros_like(window)
    return (window - window.mean()) / sd


def naive_znorm_distance(ts, i, j, s):
    """Direct evaluation of the z-normalized distance on explicit windows.

    Independent of ``znorm_distance``; used as a test oracle.
    """
    a = znormalize(ts.points[i : i + s])
    b = znormalize(ts.points[j : j + s])
    return float(np.sqrt(np.sum((a - b) ** 2)))
