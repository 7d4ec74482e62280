"""Shared builders and independent reference implementations for the tests.

The reference implementations here deliberately stay naive (plain loops,
no shared code with the package) so they can serve as oracles.
"""

import math

import numpy as np

from semnorm import embstore
from semnorm.embstore import InstanceRecord, StreamHeader
from semnorm.vmf import sample_vmf


def record(word, iid, vec, sentence=None):
    return InstanceRecord(
        word, iid, sentence if sentence is not None else f"{word} #{iid}", np.asarray(vec, "<f4")
    )


def stream_of(vectors_by_word, dim, label="corpus", model="test-model"):
    """Build an in-memory (header, records) stream from {word: [vectors]}."""
    records = []
    for word, vecs in vectors_by_word.items():
        for vec in vecs:
            records.append(record(word, len(records), vec))
    header = StreamHeader(1, dim, model, label, len(records))
    return header, records


def vmf_records(word, mu, kappa, n, seed, start_id=0, sentence_prefix=""):
    samples = sample_vmf(mu, kappa, n, seed=seed)
    return [
        record(word, start_id + i, v, f"{sentence_prefix}{word} ctx {i}")
        for i, v in enumerate(samples)
    ]


def random_unit(rng, dim):
    v = rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def orthonormal_pair(rng, dim):
    u = random_unit(rng, dim)
    v = rng.standard_normal(dim)
    v -= (v @ u) * u
    return u, v / np.linalg.norm(v)


# ---------------------------------------------------------------------------
# oracles


def serial_stats(records, dim):
    """Serial float64 reference for aggregation: one plain loop, no chunking."""
    sums = {}
    counts = {}
    for rec in records:
        v = np.asarray(rec.vector, dtype=np.float64)
        v = v / math.sqrt(float(np.dot(v, v)))
        if rec.word_type in sums:
            sums[rec.word_type] = sums[rec.word_type] + v
            counts[rec.word_type] += 1
        else:
            sums[rec.word_type] = v
            counts[rec.word_type] = 1
    return {
        w: (counts[w], sums[w], float(np.linalg.norm(sums[w] / counts[w])))
        for w in sums
    }


def brute_force_scores(word, records, stats_num, stats_den):
    """Independent per-instance representativeness: recompute the weight
    vector from raw stats and score each matching record with a scalar loop."""
    n_l = min(max(stats_num[2], 1e-9), 1.0 - 1e-6)
    d_l = min(max(stats_den[2], 1e-9), 1.0 - 1e-6)
    w_num = (stats_num[1] / stats_num[0]) / (1.0 - n_l * n_l)
    w_den = (stats_den[1] / stats_den[0]) / (1.0 - d_l * d_l)
    weights = w_num - w_den
    out = []
    for rec in records:
        if rec.word_type != word:
            continue
        v = np.asarray(rec.vector, dtype=np.float64)
        v = v / math.sqrt(float(np.dot(v, v)))
        score = sum(float(a) * float(b) for a, b in zip(weights, v))
        out.append((rec.instance_id, score))
    return out
