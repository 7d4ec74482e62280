"""Command line: text corpus in, embedding stream out.

    semnorm-embed INPUT --out stream.semb [--model M] [--corpus-label L]
                  [--format binary|jsonl] [--max-len N] [--layer N]

Skip counts (placeholder sentences, over-length sentences) go to stderr;
the stream goes to --out.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .embed import DEFAULT_MODEL, EmbedderConfig, embed_corpus
from .writer import write_stream


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semnorm-embed",
        description="Vectorize a one-sentence-per-line corpus into a semnorm embedding stream.",
    )
    parser.add_argument("input", help="UTF-8 text file, one sentence per line")
    parser.add_argument("--out", required=True, help="output stream path")
    parser.add_argument("--model", default=DEFAULT_MODEL,
                        help="Hugging Face model name or local path")
    parser.add_argument("--corpus-label", default=None,
                        help="label stored in the stream header (default: input file stem)")
    parser.add_argument("--format", choices=("binary", "jsonl"), default="binary")
    parser.add_argument("--max-len", type=int, default=512,
                        help="skip sentences longer than this many model tokens")
    parser.add_argument("--layer", type=int, default=-1,
                        help="hidden-state layer to export (-1 = final layer)")
    parser.add_argument("--batch-size", type=int, default=16)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config = EmbedderConfig(
        model=args.model,
        corpus_label=args.corpus_label
        if args.corpus_label is not None
        else Path(args.input).stem,
        max_len=args.max_len,
        output_format=args.format,
        layer=args.layer,
        batch_size=args.batch_size,
    )
    try:
        with open(args.input, "r", encoding="utf-8") as fh:
            result = embed_corpus(fh, config)
    except FileNotFoundError:
        print(f"semnorm-embed: error: {args.input}: no such file", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"semnorm-embed: error: {exc}", file=sys.stderr)
        return 1

    data = write_stream(
        result.dim, result.model_id, result.corpus_label, result.records, config.output_format
    )
    with open(args.out, "wb") as fh:
        fh.write(data)
    print(
        f"wrote {len(result.records)} records (dim {result.dim}) to {args.out}; "
        f"skipped {result.skipped_placeholder} placeholder sentence(s), "
        f"{result.skipped_too_long} over-length sentence(s)",
        file=sys.stderr,
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
