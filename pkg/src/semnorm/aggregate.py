"""Single-pass per-word-type statistics over an embedding stream.

For every word type: the instance count ``n``, the float64 sum of its
normalized instance vectors, and from those the mean vector and its Euclidean
norm ``l`` (the mean resultant length, in [0, 1]).

Summation order is fixed and documented: records are processed in stream
order in blocks of ``CHUNK_SIZE``; within a block each type's partial sum is
computed by the active kernel backend, and block partials are folded into the
running totals in stream order.  This two-level blocked scheme keeps float64
round-off bounded by block count rather than corpus size; any partitioning of
the same records agrees with a serial reference within 1e-10 per component.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from . import kernels
from .embstore import InstanceRecord
from .errors import ValidationError

CHUNK_SIZE = 8192


@dataclass
class TypeStats:
    """Accumulated statistics for one word type in one corpus."""

    word_type: str
    n: int
    sum: np.ndarray = field(repr=False)  # float64, sum of unit vectors

    @property
    def dim(self) -> int:
        return self.sum.shape[0]

    @property
    def mean(self) -> np.ndarray:
        return self.sum / self.n

    @property
    def l(self) -> float:
        """Norm of the mean vector; 1 iff all instances identical, 0 iff balanced-opposed."""
        return float(np.linalg.norm(self.sum)) / self.n


def accumulate(
    records: Iterable[InstanceRecord], dim: int, *, chunk_size: int = CHUNK_SIZE
) -> dict[str, TypeStats]:
    """Aggregate a record iterable into per-type stats, keyed by word type.

    Every vector is normalized (in float64) before summation.  Repeated
    identical sentences are distinct instances and all count; fixed contexts
    lengthening norms is signal.  Types appear in first-seen stream order.

    Records must satisfy the stream invariants (finite, nonzero vectors);
    the embstore readers enforce this, hand-built records are trusted.
    """
    if dim <= 0:
        raise ValidationError(f"dim must be positive, got {dim}")
    index: dict[str, int] = {}
    capacity = 256
    sums = np.zeros((capacity, dim))
    counts = np.zeros(capacity, dtype=np.int64)

    buf_vecs = np.empty((chunk_size, dim))
    buf_ids = np.empty(chunk_size, dtype=np.int64)
    fill = 0

    def flush():
        nonlocal fill
        if fill == 0:
            return
        uniq, inv = np.unique(buf_ids[:fill], return_inverse=True)
        partials, cnts = kernels.accumulate_chunk(
            buf_vecs[:fill], inv.astype(np.int64), len(uniq)
        )
        sums[uniq] += partials
        counts[uniq] += cnts
        fill = 0

    for rec in records:
        vec = rec.vector
        if vec.shape[0] != dim:
            raise ValidationError(
                f"record {rec.instance_id}: vector has {vec.shape[0]} components, "
                f"stream dim is {dim}"
            )
        tid = index.get(rec.word_type)
        if tid is None:
            tid = len(index)
            index[rec.word_type] = tid
            if tid == capacity:
                flush()
                capacity *= 2
                sums = np.resize(sums, (capacity, dim))
                sums[capacity // 2 :] = 0.0
                counts = np.resize(counts, capacity)
                counts[capacity // 2 :] = 0
        buf_vecs[fill] = vec
        buf_ids[fill] = tid
        fill += 1
        if fill == chunk_size:
            flush()
    flush()

    return {
        w: TypeStats(w, int(counts[i]), sums[i].copy()) for w, i in index.items()
    }


def accumulate_stream(stream: tuple) -> dict[str, TypeStats]:
    """Aggregate a (header, records) pair as returned by embstore readers."""
    header, records = stream
    return accumulate(records, header.dim)


def merge(a: TypeStats, b: TypeStats) -> TypeStats:
    """Combine shard-level stats; equals accumulating the concatenated shards."""
    if a.word_type != b.word_type:
        raise ValidationError(
            f"cannot merge stats of {a.word_type!r} and {b.word_type!r}"
        )
    if a.dim != b.dim:
        raise ValidationError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return TypeStats(a.word_type, a.n + b.n, a.sum + b.sum)


def merge_maps(
    shards: Iterable[Mapping[str, TypeStats]],
) -> dict[str, TypeStats]:
    """Merge per-shard stats maps; shard order fixes the reduction order."""
    out: dict[str, TypeStats] = {}
    for shard in shards:
        for w, st in shard.items():
            out[w] = merge(out[w], st) if w in out else TypeStats(w, st.n, st.sum.copy())
    return out


def stats_table(stats: Mapping[str, TypeStats]) -> str:
    """TSV dump (word_type, n, l at 15 significant digits), sorted by type."""
    lines = ["word_type\tn\tl"]
    for w in sorted(stats):
        st = stats[w]
        lines.append(f"{w}\t{st.n}\t{st.l:.15g}")
    return "\n".join(lines) + "\n"
