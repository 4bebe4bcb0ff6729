"""Command-line entry point: ``discordkit {search,gen,bench,profile}``.

Exit codes: 0 success, 1 bad parameters, 2 IO or parse failure, 3 internal
correctness failure (two exact searches disagreed).
"""

from __future__ import annotations

import argparse
import logging
import math
import os
import sys

from .bench import (
    SyntheticSpec,
    gen_sine_noise,
    load_series,
    parse_config,
    run_benchmark,
    search,
    write_cells,
    write_report,
    write_series,
)
from .bench.metrics import d_speedup, t_speedup, t_speedup_confident
from .core import SearchParams, compute_stats
from .errors import CorrectnessError, InvalidParameterError, SeriesParseError
from .exact import exact_nnd_profile

log = logging.getLogger("discordkit")

EXIT_OK = 0
EXIT_PARAMS = 1
EXIT_IO = 2
EXIT_CORRECTNESS = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARAMS, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="discordkit", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("search", help="find the top-k discords of a series file")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-w", "--window", type=int, required=True)
    p.add_argument("-p", "--paa", type=int, default=4)
    p.add_argument("-a", "--alphabet", type=int, default=4)
    p.add_argument("-n", "--discords", type=int, default=1)
    p.add_argument("--algo", choices=["brute", "hotsax", "hst"], default="hst")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--format", choices=["json", "csv"], default="json")

    p = sub.add_parser("gen", help="write a sine-plus-noise synthetic series")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("bench", help="run a benchmark configuration")
    p.add_argument("--config", required=True)
    p.add_argument("--runs", type=int)
    p.add_argument("--serial-timing", action="store_true",
                   help="run cells one at a time so wall times are comparable")
    p.add_argument("--out")
    p.add_argument("--format", choices=["json", "csv"])

    p = sub.add_parser("profile", help="dump the exact nnd profile as CSV")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-w", "--window", type=int, required=True)
    p.add_argument("--out")
    return parser


def _cmd_search(args):
    ts = load_series(args.input)
    params = SearchParams(args.window, args.paa, args.alphabet, args.discords, args.seed)
    report = search(ts, params, args.algo)
    log.info("%s: %d calls, cps %.2f, %.3fs", args.algo, report.distance_calls,
             report.cps, report.wall_time)
    write_report([report], args.format, args.out, sys.stdout)


def _cmd_gen(args):
    ts = gen_sine_noise(SyntheticSpec(args.length, args.noise, args.seed))
    write_series(ts, args.out)


def _cmd_bench(args):
    config = parse_config(args.config)
    if args.runs is not None:
        config.runs = args.runs
        config.__post_init__()
    cells = run_benchmark(config, serial_timing=args.serial_timing)
    for cell in cells:
        log.info("%-40s %-7s calls %12.1f  cps %9.2f  time %.3fs", cell.dataset,
                 cell.algorithm, cell.mean_calls, cell.cps, cell.mean_time)
    by_dataset = {}
    for cell in cells:
        by_dataset.setdefault(cell.dataset, {})[cell.algorithm] = cell
    for name, group in by_dataset.items():
        if "hotsax" in group and "hst" in group:
            hs, hst = group["hotsax"], group["hst"]
            note = "" if t_speedup_confident(hs.mean_time, hst.mean_time) else " (low confidence)"
            log.info("%s: D-speedup %.2f, T-speedup %.2f%s", name,
                     d_speedup(hs.mean_calls, hst.mean_calls),
                     t_speedup(hs.mean_time, hst.mean_time), note)
    fmt = args.format or config.format
    write_cells(cells, fmt, args.out or config.output, sys.stdout)


def _cmd_profile(args):
    ts = load_series(args.input)
    stats = compute_stats(ts, args.window)
    prof = exact_nnd_profile(ts, stats)
    lines = ["index,nnd,ngh"]
    for i, (d, g) in enumerate(zip(prof.nnd, prof.ngh)):
        lines.append(f"{i},{'inf' if math.isinf(d) else repr(float(d))},{'' if g < 0 else g}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


COMMANDS = {"search": _cmd_search, "gen": _cmd_gen, "bench": _cmd_bench, "profile": _cmd_profile}


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(message)s")
    try:
        COMMANDS[args.command](args)
    except InvalidParameterError as exc:
        print(f"discordkit: invalid parameter: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
    except (OSError, SeriesParseError) as exc:
        print(f"discordkit: {exc}", file=sys.stderr)
        return EXIT_IO
    except CorrectnessError as exc:
        print(f"discordkit: correctness failure: {exc}", file=sys.stderr)
        return EXIT_CORRECTNESS
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
