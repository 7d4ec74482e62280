"""Extract the word instances responsible for a semantic difference.

Given a word type that the detector flagged, rank its instances in one
corpus by representativeness: how typical the instance's context is of that
corpus and how atypical of the other.  The top of the list surfaces usages
that are missing (or rare) on the other side.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import vmf
from .aggregate import accumulate
from .detect import DEFAULT_MIN_FREQ
from .embstore import InstanceRecord, StreamHeader, normalize
from .errors import ValidationError

Stream = tuple[StreamHeader, Sequence[InstanceRecord]]


@dataclass(frozen=True)
class ScoredInstance:
    instance_id: int
    sentence: str
    corpus_label: str
    score: float


def typical_instances(
    word: str,
    stream_s: Stream,
    stream_t: Stream,
    direction: str = "source",
    top_k: int | None = None,
    min_freq: int = DEFAULT_MIN_FREQ,
) -> list[ScoredInstance]:
    """Rank the instances of ``word`` in one corpus by representativeness.

    direction="source" scores the word's instances in S against (S, T);
    direction="target" swaps the corpora and scores the instances in T,
    which negates every score and reverses the ranking.  The word must occur
    strictly more than ``min_freq`` times in both corpora.  Sentences are
    carried verbatim so the output is self-contained.

    Scoring makes a second pass over the chosen stream to fetch the word's
    vectors; streams are scan-oriented and need no index.  Ties break on
    ascending instance_id; ``top_k=None`` returns all instances.
    """
    if direction not in ("source", "target"):
        raise ValidationError(f"direction must be 'source' or 'target', got {direction!r}")
    header_s, records_s = stream_s
    header_t, records_t = stream_t
    if header_s.dim != header_t.dim:
        raise ValidationError(
            f"streams have different dimensions: {header_s.dim} vs {header_t.dim}"
        )
    if top_k is not None and top_k < 1:
        raise ValidationError(f"top_k must be >= 1, got {top_k}")

    stats_s = accumulate(records_s, header_s.dim)
    stats_t = accumulate(records_t, header_t.dim)
    st_s = _require(word, stats_s, header_s.corpus_label, min_freq)
    st_t = _require(word, stats_t, header_t.corpus_label, min_freq)

    if direction == "source":
        weights = vmf.representativeness_weights(st_s, st_t)
        header, records = header_s, records_s
    else:
        weights = vmf.representativeness_weights(st_t, st_s)
        header, records = header_t, records_t

    hits = [rec for rec in records if rec.word_type == word]
    mat = np.stack([normalize(rec.vector) for rec in hits])
    scores = mat @ weights

    ranked = sorted(
        (
            ScoredInstance(rec.instance_id, rec.sentence, header.corpus_label, float(s))
            for rec, s in zip(hits, scores)
        ),
        key=lambda r: (-r.score, r.instance_id),
    )
    return ranked if top_k is None else ranked[:top_k]


def _require(word, stats, label, min_freq):
    st = stats.get(word)
    if st is None:
        raise ValidationError(f"{word!r} does not occur in corpus {label!r}")
    if st.n <= min_freq:
        raise ValidationError(
            f"{word!r} occurs only {st.n} times in corpus {label!r} "
            f"(threshold is more than {min_freq})"
        )
    return st


def _display(sentence: str, width: int) -> str:
    flat = sentence.replace("\t", " ").replace("\n", " ").replace("\r", " ")
    if width > 0 and len(flat) > width:
        return flat[: width - 1] + "\u2026"
    return flat


def instances_table(scored: Sequence[ScoredInstance], sentence_width: int = 0) -> str:
    """TSV report: rank, score (6 dp), corpus_label, instance_id, sentence.

    ``sentence_width`` > 0 truncates the displayed sentence only; stored
    stream data is never altered.
    """
    lines = ["rank\tscore\tcorpus\tinstance_id\tsentence"]
    for rank, row in enumerate(scored, start=1):
        lines.append(
            f"{rank}\t{row.score:.6f}\t{row.corpus_label}\t{row.instance_id}\t"
            f"{_display(row.sentence, sentence_width)}"
        )
    return "\n".join(lines) + "\n"
