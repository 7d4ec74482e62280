"""How fast per-type mean-vector norms stabilize with occurrence count.

For each word type take its instances in stream order, compute the norm
l_k of the mean of the first k normalized vectors, and average |l_k -
l_{k-1}| over all types having at least k instances.  The curve dropping to
near zero after a handful of occurrences is what justifies a small frequency
threshold for the detector.

Stream order is the one reproducible instance order available, so the curve
is deterministic for a given stream but order-dependent by construction
(prefix means).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .embstore import InstanceRecord, StreamHeader
from .errors import ValidationError


@dataclass
class StabilityCurve:
    """avg_diff[i] and support[i] correspond to k = i + 2, up to max_n."""

    max_n: int
    avg_diff: np.ndarray  # float64, mean |l_k - l_{k-1}| over contributing types
    support: np.ndarray  # int64, number of types with >= k instances

    @property
    def ks(self) -> np.ndarray:
        return np.arange(2, self.max_n + 1)


def stability_curve(
    records: Iterable[InstanceRecord], dim: int, max_n: int
) -> StabilityCurve:
    """Average consecutive prefix-norm differences for k = 2 .. max_n.

    Types with fewer than k instances drop out at that k; ``support`` tracks
    how many still contribute.  ``avg_diff`` is NaN where support is zero.
    Only the first max_n instances of each type are held in memory.
    """
    if max_n < 2:
        raise ValidationError(f"max_n must be >= 2, got {max_n}")
    groups: dict[str, list[np.ndarray]] = {}
    totals: dict[str, int] = {}
    for rec in records:
        vec = rec.vector
        if vec.shape[0] != dim:
            raise ValidationError(
                f"record {rec.instance_id}: vector has {vec.shape[0]} components, "
                f"stream dim is {dim}"
            )
        rows = groups.setdefault(rec.word_type, [])
        totals[rec.word_type] = totals.get(rec.word_type, 0) + 1
        if len(rows) < max_n:
            rows.append(vec.astype(np.float64))

    if not groups:
        empty = np.arange(2, max_n + 1)
        return StabilityCurve(max_n, np.full(empty.shape, np.nan), np.zeros(empty.shape, np.int64))

    lengths = np.array([len(rows) for rows in groups.values()], dtype=np.int64)
    offsets = np.zeros_like(lengths)
    np.cumsum(lengths[:-1], out=offsets[1:])
    flat = np.stack([row for rows in groups.values() for row in rows])
    flat /= np.linalg.norm(flat, axis=1, keepdims=True)

    diffs = kernels.prefix_norm_diffs(flat, offsets, lengths, max_n)
    cols = diffs[:, 2 : max_n + 1]
    contributing = ~np.isnan(cols)
    support = np.sum(contributing, axis=0).astype(np.int64)
    sums = np.where(contributing, cols, 0.0).sum(axis=0)
    avg = np.where(support > 0, sums / np.maximum(support, 1), np.nan)
    return StabilityCurve(max_n, avg, support)


def stability_table(curve: StabilityCurve) -> str:
    """TSV report: k, avg_diff, support."""
    lines = ["k\tavg_diff\tsupport"]
    for k, diff, sup in zip(curve.ks, curve.avg_diff, curve.support):
        lines.append(f"{k}\t{diff:.15g}\t{sup}")
    return "\n".join(lines) + "\n"


def stability_from_stream(stream: tuple[StreamHeader, Sequence[InstanceRecord]], max_n: int):
    header, records = stream
    return stability_curve(records, header.dim, max_n)
