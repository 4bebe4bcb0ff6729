import numpy as np
import pytest

from discordkit import SearchParams, TimeSeries, compute_stats
from discordkit.bench import SyntheticSpec, gen_sine_noise


def random_walk(n, seed):
    rng = np.random.default_rng(seed)
    return TimeSeries(np.cumsum(rng.standard_normal(n)), name=f"rw{seed}")


def sine(n, noise, seed=0):
    return gen_sine_noise(SyntheticSpec(n, noise, seed))


@pytest.fixture
def small_walk():
    ts = random_walk(600, 3)
    return ts, compute_stats(ts, 32)


@pytest.fixture
def small_params():
    return SearchParams(window=32, paa_segments=4, alphabet=4, k=3, seed=11)


#: (criterion, passed, detail) lines collected by the acceptance suite
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in sorted(ACCEPTANCE_LINES, key=lambda r: str(r[0])):
        status = {True: "PASS", False: "FAIL", None: "SKIP"}[passed]
        terminalreporter.write_line(f"criterion {criterion}: {status}  {detail}")
