"""Synthetic corpus pairs with known concentration ground truth.

Real corpus pairs come with no answer key, so installations are validated
against simulated ones: each synthetic word type gets a random mean
direction shared by both corpora and an independent concentration per
corpus, instances are vMF samples, and a sidecar records the true
concentrations.  A detector run on such a pair should rank types close to
the true log concentration ratio.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .embstore import InstanceRecord, StreamHeader
from .errors import ValidationError
from .vmf import sample_vmf

MODEL_ID = "vmf-simulator"


@dataclass(frozen=True)
class TruthRow:
    word_type: str
    kappa_s: float
    kappa_t: float


@dataclass
class SimulatedPair:
    source: tuple[StreamHeader, list[InstanceRecord]]
    target: tuple[StreamHeader, list[InstanceRecord]]
    truth: list[TruthRow]


def simulate_pair(
    n_types: int = 50,
    instances_per_type: int = 300,
    dim: int = 64,
    kappa_low: float = 10.0,
    kappa_high: float = 300.0,
    seed: int = 0,
) -> SimulatedPair:
    """Build a source/target stream pair of vMF-sampled synthetic types.

    Per-corpus concentrations are drawn log-uniformly from
    [kappa_low, kappa_high].  Deterministic: the same seed yields the same
    records bit for bit.
    """
    if n_types < 1 or instances_per_type < 1:
        raise ValidationError("need at least one type and one instance per type")
    if dim < 2:
        raise ValidationError(f"dim must be >= 2, got {dim}")
    if not 0 < kappa_low <= kappa_high:
        raise ValidationError(
            f"need 0 < kappa_low <= kappa_high, got {kappa_low}, {kappa_high}"
        )

    root = np.random.SeedSequence(seed)
    param_rng = np.random.default_rng(root.spawn(1)[0])
    width = len(str(n_types - 1))

    recs_s: list[InstanceRecord] = []
    recs_t: list[InstanceRecord] = []
    truth: list[TruthRow] = []
    for idx in range(n_types):
        word = f"w{idx:0{width}d}"
        mu = param_rng.standard_normal(dim)
        mu /= np.linalg.norm(mu)
        log_lo, log_hi = np.log(kappa_low), np.log(kappa_high)
        kappa_s = float(np.exp(param_rng.uniform(log_lo, log_hi)))
        kappa_t = float(np.exp(param_rng.uniform(log_lo, log_hi)))
        truth.append(TruthRow(word, kappa_s, kappa_t))

        seed_s, seed_t = root.spawn(2)
        for kappa, child, recs in (
            (kappa_s, seed_s, recs_s),
            (kappa_t, seed_t, recs_t),
        ):
            samples = sample_vmf(mu, kappa, instances_per_type, seed=child)
            base = len(recs)
            for i, vec in enumerate(samples):
                recs.append(
                    InstanceRecord(
                        word,
                        base + i,
                        f"{word} synthetic context {i:04d}",
                        vec.astype("<f4"),
                    )
                )

    def header(label, count):
        return StreamHeader(1, dim, MODEL_ID, label, count)

    return SimulatedPair(
        (header("synthetic-source", len(recs_s)), recs_s),
        (header("synthetic-target", len(recs_t)), recs_t),
        truth,
    )


def truth_table(truth: list[TruthRow]) -> str:
    """TSV sidecar: word_type, true kappa in source, true kappa in target."""
    lines = ["word_type\tkappa_S\tkappa_T"]
    for row in truth:
        lines.append(f"{row.word_type}\t{row.kappa_s:.15g}\t{row.kappa_t:.15g}")
    return "\n".join(lines) + "\n"
