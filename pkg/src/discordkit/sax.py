"""SAX words for every window and the size-ordered cluster index."""

from __future__ import annotations

import string
from dataclasses import dataclass
from statistics import NormalDist

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .core import DEGENERATE_SIGMA, MAX_ALPHABET, MIN_ALPHABET
from .errors import InvalidParameterError

__all__ = ["SaxIndex", "breakpoints", "build_index", "paa", "sax_word"]

SYMBOLS = string.ascii_lowercase


def breakpoints(a):
    """The ``a - 1`` standard-normal quantiles splitting the line into equiprobable cells."""
    if isinstance(a, bool) or not MIN_ALPHABET <= int(a) <= MAX_ALPHABET or int(a) != a:
        raise InvalidParameterError(
            f"alphabet must be an integer in [{MIN_ALPHABET}, {MAX_ALPHABET}], got {a!r}"
        )
    a = int(a)
    normal = NormalDist()
    return np.array([normal.inv_cdf(m / a) for m in range(1, a)])


def _paa_rows(points, mu, sigma, starts, s, P):
    w = s // P
    windows = sliding_window_view(points, s)[starts]
    block_means = windows.reshape(len(starts), P, w).mean(axis=2)
    sd = sigma[starts]
    flat = sd < DEGENERATE_SIGMA
    safe = np.where(flat, 1.0, sd)
    out = (block_means - mu[starts, None]) / safe[:, None]
    out[flat] = 0.0
    return out


def paa(ts, stats, i, P):
    """Piecewise aggregate approximation of the z-normalized window ``i``."""
    s = stats.window
    if P < 1 or s % P:
        raise InvalidParameterError(f"P={P} must divide the window length {s}")
    return _paa_rows(ts.points, stats.mu, stats.sigma, np.array([int(i)]), s, P)[0]


def _symbols(paa_values, brk):
    # v equal to a breakpoint goes to the upper cell
    return np.searchsorted(brk, paa_values, side="right")


def sax_word(paa_values, brk):
    """Map PAA values to a word over ``'a', 'b', ...`` using breakpoints ``brk``."""
    idx = _symbols(np.asarray(paa_values, dtype=np.float64), np.asarray(brk))
    return "".join(SYMBOLS[m] for m in idx)


@dataclass(frozen=True)
class SaxIndex:
    """SAX word of every window plus clusters of identical words.

    Attributes
    ----------
    word_of : list of str
        ``word_of[i]`` is the SAX word of window ``i``.
    clusters : dict
        word -> sorted array of window start indices.
    cluster_order : list of str
        Words by ascending cluster size, ties broken lexicographically.
    cluster_id : numpy.ndarray
        Position in ``cluster_order`` of the cluster of each window.
    """

    word_of: list
    clusters: dict
    cluster_order: list
    cluster_id: np.ndarray

    @property
    def n_sequences(self):
        return len(self.word_of)

    def sizes(self):
        return [len(self.clusters[w]) for w in self.cluster_order]

    def layout(self, rng=None):
        """Concatenate the clusters along ``cluster_order``.

        Each cluster's members are shuffled with ``rng`` when one is given.
        Returns ``(members, starts)``: cluster ``c`` occupies
        ``members[starts[c]:starts[c + 1]]``.
        """
        parts = []
        for word in self.cluster_order:
            block = np.array(self.clusters[word], dtype=np.int64)
            if rng is not None:
                block = rng.permutation(block)
            parts.append(block)
        members = np.concatenate(parts)
        starts = np.zeros(len(parts) + 1, dtype=np.int64)
        np.cumsum([len(p) for p in parts], out=starts[1:])
        return members, starts


def build_index(ts, stats, params):
    """Cluster all windows by SAX word."""
    s = stats.window
    if s != params.window:
        raise InvalidParameterError(
            f"statistics are for window {s}, parameters ask for {params.window}"
        )
    P = params.paa_segments
    brk = breakpoints(params.alphabet)
    n = len(stats)
    codes = np.empty((n, P), dtype=np.int64)
    # chunked so memory stays O(chunk * P)
    chunk = 8192
    for lo in range(0, n, chunk):
        starts = np.arange(lo, min(n, lo + chunk))
        codes[lo : lo + starts.size] = _symbols(
            _paa_rows(ts.points, stats.mu, stats.sigma, starts, s, P), brk
        )
    letters = np.array(list(SYMBOLS[: params.alphabet]))
    word_of = ["".join(row) for row in letters[codes]]

    groups = {}
    for i, word in enumerate(word_of):
        groups.setdefault(word, []).append(i)
    clusters = {w: np.array(m, dtype=np.int64) for w, m in groups.items()}
    cluster_order = sorted(clusters, key=lambda w: (len(clusters[w]), w))
    rank = {w: c for c, w in enumerate(cluster_order)}
    cluster_id = np.array([rank[w] for w in word_of], dtype=np.int64)
    return SaxIndex(
        word_of=word_of,
        clusters=clusters,
        cluster_order=cluster_order,
        cluster_id=cluster_id,
    )
