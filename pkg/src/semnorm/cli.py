"""Command-line pipeline: stats, detect, instances, stability, simulate.

Every subcommand is deterministic: the same inputs and flags produce
byte-identical outputs.  Exit codes distinguish failure classes:

* 2 - usage errors (unknown flags, missing arguments, bad flag values)
* 3 - decode errors (missing files, undecodable streams)
* 4 - validation errors (dimension mismatches, words under threshold, ...)

The ``SEMNORM_BACKEND`` and ``SEMNORM_THREADS`` environment variables select
the compute backend and cap kernel parallelism; see semnorm.backend.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__, aggregate, embstore, instances, stability
from .detect import (
    DEFAULT_MIN_FREQ,
    detect,
    detection_report,
    detection_table,
    render_report,
)
from .errors import ValidationError
from .simulate import simulate_pair, truth_table

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DECODE = 3
EXIT_VALIDATION = 4


def _read(path):
    try:
        return embstore.read_stream_path(path)
    except FileNotFoundError:
        raise _DecodeFailure(f"{path}: no such file")
    except IsADirectoryError:
        raise _DecodeFailure(f"{path}: is a directory, expected a stream file")
    except embstore.StreamFormatError as exc:
        raise _DecodeFailure(f"{path}: {exc}")


class _DecodeFailure(Exception):
    pass


def _write_text(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _load_exclude(path: str | None) -> set[str]:
    if path is None:
        return set()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return {line.strip() for line in fh if line.strip()}
    except FileNotFoundError:
        raise _DecodeFailure(f"{path}: no such file")


# ---------------------------------------------------------------------------
# subcommands


def _cmd_stats(args) -> int:
    stats = aggregate.accumulate_stream(_read(args.source))
    _write_text(aggregate.stats_table(stats), args.out)
    return EXIT_OK


def _cmd_detect(args) -> int:
    stats_s = aggregate.accumulate_stream(_read(args.source))
    stats_t = aggregate.accumulate_stream(_read(args.target))
    exclude = _load_exclude(args.exclude)
    scored = detect(stats_s, stats_t, args.min_freq, exclude)
    _write_text(detection_table(scored, args.log_base), args.out)
    if args.report:
        report = detection_report(scored, args.log_base)
        report["source"] = args.source
        report["target"] = args.target
        report["min_freq"] = args.min_freq
        _write_text(render_report(report), args.report)
    return EXIT_OK


def _cmd_instances(args) -> int:
    stream_s = _read(args.source)
    stream_t = _read(args.target)
    scored = instances.typical_instances(
        args.word,
        stream_s,
        stream_t,
        direction=args.direction,
        top_k=args.top_k,
        min_freq=args.min_freq,
    )
    _write_text(instances.instances_table(scored, args.sentence_width), args.out)
    return EXIT_OK


def _cmd_stability(args) -> int:
    curve = stability.stability_from_stream(_read(args.source), args.max_n)
    _write_text(stability.stability_table(curve), args.out)
    return EXIT_OK


def _cmd_simulate(args) -> int:
    pair = simulate_pair(
        n_types=args.types,
        instances_per_type=args.instances,
        dim=args.dim,
        kappa_low=args.kappa_low,
        kappa_high=args.kappa_high,
        seed=args.seed,
    )
    ext = "semb" if args.format == "binary" else "jsonl"
    paths = {
        "source": f"{args.out}.source.{ext}",
        "target": f"{args.out}.target.{ext}",
        "truth": f"{args.out}.truth.tsv",
    }
    for key, stream in (("source", pair.source), ("target", pair.target)):
        header, records = stream
        embstore.write_stream_path(header, records, paths[key], args.format)
    with open(paths["truth"], "w", encoding="utf-8", newline="\n") as fh:
        fh.write(truth_table(pair.truth))
    sys.stdout.write(json.dumps(paths, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# wiring


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semnorm",
        description=(
            "Detect word types whose meanings differ between two corpora from "
            "norms of mean contextualized word vectors, and extract the "
            "instances responsible."
        ),
    )
    parser.add_argument("--version", action="version", version=f"semnorm {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="dump per-word-type count and mean norm as TSV")
    p.add_argument("--source", required=True, help="embedding stream to aggregate")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("detect", help="rank word types by coverage between two corpora")
    p.add_argument("--source", required=True, help="source-corpus embedding stream")
    p.add_argument("--target", required=True, help="target-corpus embedding stream")
    p.add_argument("--min-freq", type=int, default=DEFAULT_MIN_FREQ,
                   help="keep types occurring strictly more often than this in both corpora")
    p.add_argument("--exclude", help="file with one word type to skip per line")
    p.add_argument("--log-base", choices=("e", "10"), default="e",
                   help="base for reported log coverage")
    p.add_argument("--out", help="TSV output path (default stdout)")
    p.add_argument("--report", help="also write a full-precision JSON report here")
    p.set_defaults(func=_cmd_detect)

    p = sub.add_parser("instances", help="rank a word's instances by representativeness")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--word", required=True, help="word type to extract instances for")
    p.add_argument("--direction", choices=("source", "target"), default="source",
                   help="which corpus to pull instances from")
    p.add_argument("--top-k", type=int, default=None, help="truncate to the K best instances")
    p.add_argument("--min-freq", type=int, default=DEFAULT_MIN_FREQ)
    p.add_argument("--sentence-width", type=int, default=0,
                   help="truncate displayed sentences to this many characters (0 = full)")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=_cmd_instances)

    p = sub.add_parser("stability", help="mean-norm stability vs occurrence count")
    p.add_argument("--source", required=True, help="embedding stream to analyze")
    p.add_argument("--max-n", type=int, required=True, help="largest occurrence count to track")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=_cmd_stability)

    p = sub.add_parser("simulate", help="write a synthetic corpus pair with ground truth")
    p.add_argument("--out", required=True, help="output path prefix")
    p.add_argument("--types", type=int, default=50, help="number of synthetic word types")
    p.add_argument("--instances", type=int, default=300, help="instances per type per corpus")
    p.add_argument("--dim", type=int, default=64, help="vector dimensionality")
    p.add_argument("--kappa-low", type=float, default=10.0,
                   help="lower bound of the log-uniform concentration range")
    p.add_argument("--kappa-high", type=float, default=300.0,
                   help="upper bound of the log-uniform concentration range")
    p.add_argument("--seed", type=int, default=0, help="RNG seed; fixes output bytes")
    p.add_argument("--format", choices=("binary", "jsonl"), default="binary")
    p.set_defaults(func=_cmd_simulate)

    return parser


def main(argv: list[str] | None = None) -> int:
    import warnings

    from . import backend

    # numba's TBB-version probe warns on some hosts; the fallback layer is fine
    warnings.filterwarnings("ignore", message="The TBB threading layer requires TBB")
    backend.apply_thread_cap()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _DecodeFailure as exc:
        print(f"semnorm: error: {exc}", file=sys.stderr)
        return EXIT_DECODE
    except ValidationError as exc:
        print(f"semnorm: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"semnorm: error: {exc}", file=sys.stderr)
        return EXIT_DECODE


if __name__ == "__main__":
    sys.exit(main())
