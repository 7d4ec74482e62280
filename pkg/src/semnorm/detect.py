"""Rank word types by how much wider their meanings are in one corpus.

Takes the per-type stats of a source and a target corpus, keeps the types
frequent enough in *both* (strictly more than ``min_freq`` occurrences in
each, so both mean norms are estimable), scores each with coverage, and
returns the list sorted by coverage descending.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from . import vmf
from .aggregate import TypeStats
from .errors import ValidationError

DEFAULT_MIN_FREQ = 10


@dataclass(frozen=True)
class ScoredType:
    """One ranked word type with its per-corpus frequencies and coverage."""

    word_type: str
    f_s: int
    f_t: int
    coverage: float
    log_coverage: float  # natural log; rendering may convert the base
    degenerate: bool  # a mean norm hit the upper clamp (near-identical contexts)


def detect(
    stats_s: Mapping[str, TypeStats],
    stats_t: Mapping[str, TypeStats],
    min_freq: int = DEFAULT_MIN_FREQ,
    exclude: Iterable[str] = (),
) -> list[ScoredType]:
    """Score and sort every word type present and frequent in both corpora.

    The frequency threshold is strict (n > min_freq) and applies per corpus.
    Types absent from either corpus are skipped (their coverage is
    undefined), as are types in the exclude set; exclude entries absent from
    the corpora are ignored silently.  Ties in coverage break
    lexicographically by word type, so output order is deterministic.
    """
    _check_dims(stats_s, stats_t)
    excluded = set(exclude)
    out: list[ScoredType] = []
    for word, st_s in stats_s.items():
        if word in excluded:
            continue
        st_t = stats_t.get(word)
        if st_t is None or st_s.n <= min_freq or st_t.n <= min_freq:
            continue
        raw_ls, raw_lt = st_s.l, st_t.l
        pair = vmf.coverage(raw_ls, raw_lt)
        degenerate = raw_ls > vmf.MAX_MEAN_NORM or raw_lt > vmf.MAX_MEAN_NORM
        out.append(
            ScoredType(word, st_s.n, st_t.n, pair.coverage, pair.log_coverage, degenerate)
        )
    out.sort(key=lambda r: (-r.coverage, r.word_type))
    return out


def _check_dims(stats_s, stats_t) -> None:
    ds = next((st.dim for st in stats_s.values()), None)
    dt = next((st.dim for st in stats_t.values()), None)
    if ds is not None and dt is not None and ds != dt:
        raise ValidationError(f"corpora have different dimensions: {ds} vs {dt}")


def _log_in_base(natural: float, log_base: str) -> float:
    if log_base == "e":
        return natural
    if log_base == "10":
        return natural / math.log(10.0)
    raise ValidationError(f"log base must be 'e' or '10', got {log_base!r}")


def detection_table(scored: Sequence[ScoredType], log_base: str = "e") -> str:
    """TSV report: rank, word_type, log_coverage (6 dp), f_S, f_T, degenerate_flag."""
    lines = ["rank\tword_type\tlog_coverage\tf_S\tf_T\tdegenerate"]
    for rank, row in enumerate(scored, start=1):
        lc = _log_in_base(row.log_coverage, log_base)
        flag = "true" if row.degenerate else "false"
        lines.append(
            f"{rank}\t{row.word_type}\t{lc:.6f}\t{row.f_s}\t{row.f_t}\t{flag}"
        )
    return "\n".join(lines) + "\n"


def detection_report(scored: Sequence[ScoredType], log_base: str = "e") -> dict:
    """Full-precision JSON-serializable report mirroring the TSV."""
    return {
        "log_base": log_base,
        "types": [
            {
                "rank": rank,
                "word_type": row.word_type,
                "coverage": row.coverage,
                "log_coverage": _log_in_base(row.log_coverage, log_base),
                "f_source": row.f_s,
                "f_target": row.f_t,
                "degenerate": row.degenerate,
            }
            for rank, row in enumerate(scored, start=1)
        ],
    }


def render_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
