"""Timed, instrumented searches and the repeated-run benchmark driver."""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from ..core import DistanceCounter, SearchParams, compute_stats
from ..errors import CorrectnessError, InvalidParameterError
from ..exact import brute_force_discords
from ..hotsax import hotsax_discords
from ..hst import hst_discords
from ..sax import build_index
from .metrics import cps as cost_per_sequence

__all__ = ["ALGORITHMS", "BenchmarkConfig", "CellResult", "SearchReport", "run_benchmark", "search"]

ALGORITHMS = ("brute", "hotsax", "hst")
NND_TOLERANCE = 1e-9


@dataclass
class SearchReport:
    algorithm: str
    dataset: str
    window: int
    paa_segments: int
    alphabet: int
    k: int
    seed: int
    n_sequences: int
    positions: list
    nnds: list
    calls_per_discord: list
    distance_calls: int
    wall_time: float
    cps: float
    truncated: bool = False

    def to_dict(self):
        return asdict(self)

    def recomputed_cps(self):
        return cost_per_sequence(self.distance_calls, self.n_sequences, max(1, len(self.positions)))


def search(ts, params, algorithm="hst", dataset=None, options=None):
    """Run one search and time it end to end (statistics, SAX index, search).

    Parameters
    ----------
    ts : TimeSeries
    params : SearchParams
    algorithm : {"brute", "hotsax", "hst"}
    dataset : str, optional
        Label for the report; defaults to ``ts.name``.
    options : HstOptions, optional
        Only used by ``"hst"``.
    """
    if algorithm not in ALGORITHMS:
        raise InvalidParameterError(f"unknown algorithm {algorithm!r}; choose from {ALGORITHMS}")
    params.validate_for(len(ts))
    counter = DistanceCounter()
    rng = np.random.default_rng(params.seed)
    start = time.perf_counter()
    stats = compute_stats(ts, params.window)
    if algorithm == "brute":
        result, _ = brute_force_discords(ts, stats, params, counter)
    else:
        index = build_index(ts, stats, params)
        if algorithm == "hotsax":
            result, _ = hotsax_discords(ts, stats, index, params, counter, rng)
        else:
            result, _ = hst_discords(ts, stats, index, params, counter, rng, options=options)
    wall = time.perf_counter() - start
    n = len(stats)
    found = max(1, len(result))
    return SearchReport(
        algorithm=algorithm,
        dataset=ts.name if dataset is None else dataset,
        window=params.window,
        paa_segments=params.paa_segments,
        alphabet=params.alphabet,
        k=params.k,
        seed=params.seed,
        n_sequences=n,
        positions=list(result.positions),
        nnds=list(result.nnds),
        calls_per_discord=list(result.calls),
        distance_calls=counter.calls,
        wall_time=wall,
        cps=cost_per_sequence(counter.calls, n, found),
        truncated=result.truncated,
    )


@dataclass
class BenchmarkConfig:
    """What to run: datasets x algorithms, each ``runs`` times with consecutive seeds.

    ``datasets`` holds file paths and/or :class:`SyntheticSpec` instances.
    """

    datasets: list
    algorithms: list = field(default_factory=lambda: ["hotsax", "hst"])
    window: int = 120
    paa_segments: int = 4
    alphabet: int = 4
    k: int = 1
    runs: int = 10
    base_seed: int = 0
    output: str = None
    format: str = "json"

    def __post_init__(self):
        if self.runs < 1:
            raise InvalidParameterError(f"runs must be >= 1, got {self.runs}")
        if not self.datasets:
            raise InvalidParameterError("at least one dataset is required")
        bad = [a for a in self.algorithms if a not in ALGORITHMS]
        if bad or not self.algorithms:
            raise InvalidParameterError(f"unknown algorithms {bad}; choose from {ALGORITHMS}")
        if self.format not in ("json", "csv"):
            raise InvalidParameterError(f"format must be json or csv, got {self.format!r}")
        SearchParams(self.window, self.paa_segments, self.alphabet, self.k)

    def params(self, seed):
        return SearchParams(self.window, self.paa_segments, self.alphabet, self.k, seed)


@dataclass
class CellResult:
    """All runs of one algorithm on one dataset."""

    dataset: str
    algorithm: str
    n_sequences: int
    reports: list

    @property
    def calls(self):
        return [r.distance_calls for r in self.reports]

    @property
    def times(self):
        return [r.wall_time for r in self.reports]

    @property
    def mean_calls(self):
        return float(np.mean(self.calls))

    @property
    def mean_time(self):
        return float(np.mean(self.times))

    @property
    def k_found(self):
        return max(1, len(self.reports[0].positions))

    @property
    def cps(self):
        return cost_per_sequence(self.mean_calls, self.n_sequences, self.k_found)

    @property
    def positions(self):
        return self.reports[0].positions

    @property
    def nnds(self):
        return self.reports[0].nnds

    def summary(self):
        return {
            "dataset": self.dataset,
            "algorithm": self.algorithm,
            "runs": len(self.reports),
            "n_sequences": self.n_sequences,
            "mean_calls": self.mean_calls,
            "min_calls": min(self.calls),
            "max_calls": max(self.calls),
            "mean_time": self.mean_time,
            "cps": self.cps,
            "positions": self.positions,
            "nnds": self.nnds,
        }


def _same_discords(a, b):
    if a.positions != b.positions:
        return False
    return all(
        x == y or (math.isfinite(x) and math.isfinite(y) and abs(x - y) <= NND_TOLERANCE)
        for x, y in zip(a.nnds, b.nnds)
    )


def _run_cell(ts, name, algorithm, config):
    reports = [
        search(ts, config.params(config.base_seed + r), algorithm, dataset=name)
        for r in range(config.runs)
    ]
    first = reports[0]
    for rep in reports[1:]:
        if not _same_discords(first, rep):
            raise CorrectnessError(
                f"{algorithm} on {name}: seed {rep.seed} found {rep.positions} / {rep.nnds}, "
                f"seed {first.seed} found {first.positions} / {first.nnds}"
            )
    return CellResult(name, algorithm, first.n_sequences, reports)


def _materialize(dataset):
    from .io import load_series
    from .synthetic import SyntheticSpec, gen_sine_noise

    if isinstance(dataset, SyntheticSpec):
        return gen_sine_noise(dataset), dataset.name
    ts = load_series(dataset)
    return ts, str(dataset)


def run_benchmark(config, serial_timing=True, workers=None):
    """Run every (dataset, algorithm) cell ``config.runs`` times.

    Runs of one cell use seeds ``base_seed .. base_seed + runs - 1``. All runs,
    and all algorithms on the same dataset, must report the same discords;
    any disagreement raises :class:`CorrectnessError`.

    With ``serial_timing=False`` cells are spread over ``workers`` processes,
    which makes wall times unsuitable for T-speedups.
    """
    series = [_materialize(d) for d in config.datasets]
    jobs = [(ts, name, algo) for ts, name in series for algo in config.algorithms]
    if serial_timing or len(jobs) == 1:
        cells = [_run_cell(ts, name, algo, config) for ts, name, algo in jobs]
    else:
        workers = workers or os.cpu_count() or 1
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_cell, ts, name, algo, config) for ts, name, algo in jobs]
            cells = [f.result() for f in futures]

    by_dataset = {}
    for cell in cells:
        by_dataset.setdefault(cell.dataset, []).append(cell)
    for name, group in by_dataset.items():
        ref = group[0]
        for other in group[1:]:
            if not _same_discords(ref.reports[0], other.reports[0]):
                raise CorrectnessError(
                    f"{name}: {ref.algorithm} found {ref.positions} / {ref.nnds}, "
                    f"{other.algorithm} found {other.positions} / {other.nnds}"
                )
    return cells
