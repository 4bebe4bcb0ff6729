"""Cost indicators for discord searches."""

from ..errors import InvalidParameterError

__all__ = ["LOW_CONFIDENCE_SECONDS", "cps", "d_speedup", "t_speedup", "t_speedup_confident"]

#: Runtimes below this make a T-speedup dominated by fixed overheads.
LOW_CONFIDENCE_SECONDS = 1.0


def cps(calls, n, k):
    """Cost per sequence: distance calls per window per discord."""
    if n < 1 or k < 1:
        raise InvalidParameterError(f"cps needs N >= 1 and k >= 1, got N={n}, k={k}")
    return calls / (n * k)


def d_speedup(calls_baseline, calls_subject):
    """Ratio of distance calls; above 1 means the subject made fewer calls."""
    if calls_subject <= 0:
        raise InvalidParameterError("subject call count must be positive")
    return calls_baseline / calls_subject


def t_speedup(time_baseline, time_subject):
    """Ratio of wall times; above 1 means the subject was faster."""
    if time_subject <= 0:
        raise InvalidParameterError("subject runtime must be positive")
    return time_baseline / time_subject


def t_speedup_confident(time_baseline, time_subject):
    """False when the faster run is too short for its runtime to mean much."""
    return min(time_baseline, time_subject) >= LOW_CONFIDENCE_SECONDS
