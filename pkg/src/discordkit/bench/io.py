"""Reading series files and writing reports."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

from ..core import TimeSeries
from ..errors import SeriesParseError

__all__ = ["load_report", "load_series", "report_rows", "write_cells", "write_report", "write_series"]


def load_series(path):
    """Load whitespace- or newline-separated ASCII reals.

    Files ending in ``.json`` hold a JSON list of numbers instead.
    """
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json":
        return _load_json_series(text, path)
    values = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        column = 0
        for token in line.split():
            column = line.index(token, column) + 1
            try:
                value = float(token)
            except ValueError:
                raise SeriesParseError(
                    f"not a number: {token!r}", path, line_no, column
                ) from None
            if not math.isfinite(value):
                raise SeriesParseError(f"non-finite value {token!r}", path, line_no, column)
            values.append(value)
            column += len(token) - 1
    if not values:
        raise SeriesParseError("file contains no values", path)
    if len(values) < 2:
        raise SeriesParseError("a series needs at least 2 values", path)
    return TimeSeries(values, name=path.stem)


def _load_json_series(text, path):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SeriesParseError(exc.msg, path, exc.lineno, exc.colno) from None
    if isinstance(data, dict):
        data = data.get("points")
    if not isinstance(data, list) or len(data) < 2:
        raise SeriesParseError("expected a list of at least 2 numbers", path)
    for q, v in enumerate(data):
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            raise SeriesParseError(f"entry {q} is not a finite number: {v!r}", path)
    return TimeSeries(data, name=path.stem)


def write_series(ts, path, fmt=None):
    """Write a series as text (one value per line) or JSON.

    Both formats use shortest round-trip float formatting, so reloading gives
    bit-identical values.
    """
    path = Path(path)
    fmt = fmt or ("json" if path.suffix.lower() == ".json" else "text")
    values = [float(v) for v in ts.points]
    if fmt == "json":
        path.write_text(json.dumps(values))
    elif fmt == "text":
        path.write_text("\n".join(repr(v) for v in values) + "\n")
    else:
        raise ValueError(f"unknown series format {fmt!r}")


def _jsonable(value):
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


CSV_FIELDS = [
    "algorithm", "dataset", "window", "paa_segments", "alphabet", "k", "seed",
    "rank", "position", "nnd", "discord_calls", "distance_calls", "wall_time",
    "cps", "truncated",
]


def report_rows(reports):
    """One CSV row per discord; distances with 6 significant digits."""
    for rep in reports:
        for rank, (pos, nnd) in enumerate(zip(rep.positions, rep.nnds), start=1):
            yield {
                "algorithm": rep.algorithm,
                "dataset": rep.dataset,
                "window": rep.window,
                "paa_segments": rep.paa_segments,
                "alphabet": rep.alphabet,
                "k": rep.k,
                "seed": rep.seed,
                "rank": rank,
                "position": pos,
                "nnd": "inf" if math.isinf(nnd) else f"{nnd:.6g}",
                "discord_calls": rep.calls_per_discord[rank - 1],
                "distance_calls": rep.distance_calls,
                "wall_time": f"{rep.wall_time:.6g}",
                "cps": f"{rep.cps:.6g}",
                "truncated": int(rep.truncated),
            }


def write_report(reports, fmt="json", path=None, stream=None):
    """Write search reports as JSON (full precision) or CSV.

    ``path=None`` writes to ``stream`` (for the CLI, standard output).
    """
    reports = list(reports)
    if fmt == "json":
        payload = json.dumps([_jsonable(r.to_dict()) for r in reports], indent=2)
        _emit(payload + "\n", path, stream)
    elif fmt == "csv":
        if path is None:
            _write_csv(reports, stream)
        else:
            with open(path, "w", newline="") as fh:
                _write_csv(reports, fh)
    else:
        raise ValueError(f"unknown report format {fmt!r}")


def _write_csv(reports, fh):
    writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
    writer.writeheader()
    writer.writerows(report_rows(reports))


def _emit(text, path, stream):
    if path is None:
        stream.write(text)
    else:
        Path(path).write_text(text)


def load_report(path):
    """Read back a JSON report file as a list of dicts, restoring infinities."""
    data = json.loads(Path(path).read_text())
    for entry in data:
        entry["nnds"] = [math.inf if v == "inf" else v for v in entry["nnds"]]
    return data


CELL_FIELDS = [
    "dataset", "algorithm", "runs", "n_sequences", "mean_calls", "min_calls",
    "max_calls", "mean_time", "cps", "positions", "nnds",
]


def write_cells(cells, fmt="json", path=None, stream=None):
    """Write benchmark cell summaries; JSON also embeds every run's report."""
    cells = list(cells)
    if fmt == "json":
        payload = [
            _jsonable({**c.summary(), "reports": [r.to_dict() for r in c.reports]})
            for c in cells
        ]
        _emit(json.dumps(payload, indent=2) + "\n", path, stream)
        return
    if fmt != "csv":
        raise ValueError(f"unknown report format {fmt!r}")

    def rows():
        for c in cells:
            row = c.summary()
            row["positions"] = " ".join(str(p) for p in row["positions"])
            row["nnds"] = " ".join("inf" if math.isinf(v) else f"{v:.6g}" for v in row["nnds"])
            row["mean_time"] = f"{row['mean_time']:.6g}"
            row["cps"] = f"{row['cps']:.6g}"
            yield row

    if path is None:
        writer = csv.DictWriter(stream, fieldnames=CELL_FIELDS)
        writer.writeheader()
        writer.writerows(rows())
    else:
        with open(path, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=CELL_FIELDS)
            writer.writeheader()
            writer.writerows(rows())
