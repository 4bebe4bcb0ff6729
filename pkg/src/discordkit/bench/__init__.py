"""Benchmark harness: metrics, synthetic data, file IO and repeated runs."""

from .config import parse_config, parse_config_text
from .io import load_report, load_series, write_cells, write_report, write_series
from .metrics import cps, d_speedup, t_speedup, t_speedup_confident
from .runner import ALGORITHMS, BenchmarkConfig, CellResult, SearchReport, run_benchmark, search
from .synthetic import SyntheticSpec, gen_sine_noise
