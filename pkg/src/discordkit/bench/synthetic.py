"""Sine-plus-uniform-noise generator for controlled benchmarks."""

from dataclasses import dataclass

import numpy as np

from ..core import TimeSeries
from ..errors import InvalidParameterError

__all__ = ["SyntheticSpec", "gen_sine_noise"]


@dataclass(frozen=True)
class SyntheticSpec:
    """``length`` samples of ``(sin(0.1 i) + E * eps_i + 1) / 2.5``, ``eps_i ~ U(0, 1)``."""

    length: int
    noise: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if int(self.length) != self.length or self.length < 2:
            raise InvalidParameterError(f"length must be an integer >= 2, got {self.length}")
        if not np.isfinite(self.noise) or self.noise < 0:
            raise InvalidParameterError(f"noise must be finite and >= 0, got {self.noise}")

    @property
    def name(self):
        return f"sine(length={self.length},noise={self.noise:g},seed={self.seed})"


def gen_sine_noise(spec):
    rng = np.random.default_rng(spec.seed)
    i = np.arange(int(spec.length), dtype=np.float64)
    eps = rng.random(i.size)
    return TimeSeries((np.sin(0.1 * i) + spec.noise * eps + 1.0) / 2.5, name=spec.name)
