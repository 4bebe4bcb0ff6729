"""Exact time-series discord discovery: brute force, HOT SAX and HOT SAX Time."""

from .core import (
    DistanceCounter,
    SearchParams,
    SequenceStats,
    TimeSeries,
    compute_stats,
    is_self_match,
    num_sequences,
    znorm_distance,
)
from .errors import (
    CorrectnessError,
    DiscordkitError,
    InvalidParameterError,
    SelfMatchError,
    SeriesParseError,
)
from .exact import (
    DiscordResult,
    NndProfile,
    brute_force_discords,
    certify_discord,
    exact_nnd_profile,
)
from .hotsax import hotsax_discords
from .hst import HstMonitor, HstOptions, NndState, hst_discords
from .sax import SaxIndex, breakpoints, build_index

__version__ = "0.1.0"
