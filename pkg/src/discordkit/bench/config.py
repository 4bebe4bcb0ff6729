"""Flat ``key = value`` benchmark configuration files.

Example::

    # blank lines and lines starting with '#' are ignored
    dataset    = sine length=20000 noise=0.0001 seed=0
    dataset    = data/ecg0606.txt      # relative to this file
    algorithms = hotsax, hst
    window     = 120
    paa        = 4
    alphabet   = 4
    discords   = 1
    runs       = 10
    seed       = 0
    output     = results.json
    format     = json

``dataset`` may repeat; every other key appears at most once.
"""

from __future__ import annotations

from pathlib import Path

from ..errors import InvalidParameterError
from .runner import BenchmarkConfig
from .synthetic import SyntheticSpec

__all__ = ["parse_config", "parse_config_text"]

_INT_KEYS = {
    "window": "window",
    "paa": "paa_segments",
    "alphabet": "alphabet",
    "discords": "k",
    "runs": "runs",
    "seed": "base_seed",
}


def _synthetic(fields, line_no):
    kwargs = {}
    for item in fields:
        key, sep, value = item.partition("=")
        if not sep or key not in ("length", "noise", "seed"):
            raise InvalidParameterError(f"line {line_no}: bad synthetic field {item!r}")
        kwargs[key] = float(value) if key == "noise" else int(value)
    if "length" not in kwargs:
        raise InvalidParameterError(f"line {line_no}: synthetic dataset needs length=")
    return SyntheticSpec(**kwargs)


def parse_config_text(text, base_dir="."):
    base_dir = Path(base_dir)
    datasets = []
    values = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().lower()
        value = value.strip()
        if not sep or not value:
            raise InvalidParameterError(f"line {line_no}: expected 'key = value', got {raw!r}")
        if key == "dataset":
            fields = value.split()
            try:
                if fields[0] == "sine":
                    datasets.append(_synthetic(fields[1:], line_no))
                else:
                    path = Path(value)
                    datasets.append(path if path.is_absolute() else base_dir / path)
            except ValueError as exc:
                raise InvalidParameterError(f"line {line_no}: {exc}") from None
            continue
        if key in values:
            raise InvalidParameterError(f"line {line_no}: duplicate key {key!r}")
        if key in _INT_KEYS:
            try:
                values[key] = int(value)
            except ValueError:
                raise InvalidParameterError(f"line {line_no}: {key} must be an integer") from None
        elif key == "algorithms":
            values[key] = [a.strip() for a in value.split(",") if a.strip()]
        elif key in ("output", "format"):
            values[key] = value
        else:
            raise InvalidParameterError(f"line {line_no}: unknown key {key!r}")

    kwargs = {_INT_KEYS.get(k, k): v for k, v in values.items()}
    if "output" in kwargs:
        out = Path(kwargs["output"])
        kwargs["output"] = str(out if out.is_absolute() else base_dir / out)
    return BenchmarkConfig(datasets=datasets, **kwargs)


def parse_config(path):
    path = Path(path)
    return parse_config_text(path.read_text(), base_dir=path.parent)
