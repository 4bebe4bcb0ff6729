"""Published HST costs on public benchmark series, for optional comparison runs.

The series themselves are not shipped. Point ``DATASETS_ENV`` at a directory
holding single-column text files; a file is matched to an entry when its
lowercased stem, with non-alphanumerics removed, starts with the entry key
(``ECG0606_1.csv`` matches ``ecg0606``, ``TEK14.txt`` matches ``tek14``).
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from pathlib import Path

__all__ = ["DATASETS_ENV", "REFERENCE_RUNS", "ReferenceRun", "find_dataset"]

DATASETS_ENV = "DISCORDKIT_DATASETS"


@dataclass(frozen=True)
class ReferenceRun:
    key: str
    label: str
    window: int
    paa_segments: int
    alphabet: int
    length: int
    hst_cps: float


REFERENCE_RUNS = [
    ReferenceRun("ecg0606", "ECG 0606", 120, 4, 4, 2299, 4),
    ReferenceRun("ecg15", "ECG 15", 300, 4, 4, 15000, 6),
    ReferenceRun("nprs44", "NPRS 44", 128, 4, 4, 24125, 6),
    ReferenceRun("video", "Video", 150, 5, 3, 11251, 8),
    ReferenceRun("nprs43", "NPRS 43", 128, 4, 4, 4000, 9),
    ReferenceRun("ecg308", "ECG 308", 300, 4, 4, 5400, 5),
    ReferenceRun("dailycommute", "Daily commute", 345, 15, 4, 17175, 15),
    ReferenceRun("ecg108", "ECG 108", 300, 4, 4, 21600, 5),
    ReferenceRun("ecg318", "ECG 318", 300, 4, 4, 586086, 8),
    ReferenceRun("ecg300", "ECG 300", 300, 4, 4, 536976, 12),
    ReferenceRun("tek17", "Shuttle TEK 17", 128, 4, 4, 5000, 14),
    ReferenceRun("dutchpower", "Dutch power", 750, 6, 3, 35040, 7),
    ReferenceRun("tek14", "Shuttle TEK 14", 128, 4, 4, 5000, 13),
    ReferenceRun("tek16", "Shuttle TEK 16", 128, 4, 4, 5000, 14),
]


def _norm(name):
    return re.sub(r"[^a-z0-9]", "", name.lower())


def find_dataset(key, directory=None):
    """Path of the file for ``key`` in ``directory`` (default: ``$DISCORDKIT_DATASETS``), or None."""
    directory = directory or os.environ.get(DATASETS_ENV)
    if not directory or not Path(directory).is_dir():
        return None
    hits = sorted(p for p in Path(directory).iterdir() if p.is_file() and _norm(p.stem).startswith(key))
    # several matches: take the closest, i.e. shortest, name
    hits.sort(key=lambda p: len(_norm(p.stem)))
    return hits[0] if hits else None
