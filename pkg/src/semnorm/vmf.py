"""Directional statistics on the unit hypersphere.

Word-instance vectors are modeled as von Mises-Fisher distributed: density
proportional to exp(kappa * mu'x) for unit vectors x, with mean direction mu
and concentration kappa >= 0.  The normalization constant never matters for
any score implemented here (all comparisons are over x-dependent terms only),
so no Bessel functions are needed.

Estimation follows the closed-form approximations of Banerjee, Dhillon,
Ghosh & Sra (JMLR 2005): kappa ~= l(d - l^2)/(1 - l^2) from the mean
resultant length l, and mu = mean/l.

Two score functions compare a word type across a source corpus S and a
target corpus T:

* ``coverage``:  c = l_T (1 - l_S^2) / (l_S (1 - l_T^2)), the large-d
  approximation of the concentration ratio kappa_T / kappa_S.  Values above
  1 mean the type's contexts are more spread out (wider meanings) in S.
* ``representativeness``:  r(x) = (mean_S/(1-l_S^2) - mean_T/(1-l_T^2))' x,
  a log-likelihood-ratio surrogate scoring how much an individual instance
  x belongs to S's distribution rather than T's.

``kappa_ratio_exact`` and ``llr_weights_exact`` keep the pre-approximation
forms (with their (d - l^2) factors) so the quality of the large-d shortcut
can be measured.

Mean norms are clamped to [MIN_MEAN_NORM, MAX_MEAN_NORM] before any score:
both the coverage and the kappa formulas are singular at l = 1, which real
corpora do reach when a type's contexts are effectively identical (copied
boilerplate).  A type hitting the upper clamp is flagged degenerate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .aggregate import TypeStats
from .errors import ValidationError

MIN_MEAN_NORM = 1e-9
MAX_MEAN_NORM = 1.0 - 1e-6

# slack accepted above 1.0 for accumulated mean norms before erroring
_NORM_TOL = 1e-10


@dataclass(frozen=True)
class VmfParams:
    """Fitted mean direction (unit norm) and concentration (>= 0)."""

    mu: np.ndarray
    kappa: float

    def __post_init__(self):
        if not math.isfinite(self.kappa) or self.kappa < 0:
            raise ValidationError(f"kappa must be finite and >= 0, got {self.kappa}")
        if abs(np.linalg.norm(self.mu) - 1.0) > 1e-10:
            raise ValidationError("mu must have unit norm")


@dataclass(frozen=True)
class CoveragePair:
    """Clamped mean norms of one type in both corpora plus its coverage."""

    l_s: float
    l_t: float
    coverage: float
    log_coverage: float


def clamp_mean_norm(l: float) -> tuple[float, bool]:
    """Clamp a mean norm into [MIN_MEAN_NORM, MAX_MEAN_NORM].

    Returns the clamped value and whether the upper clamp fired (the
    degenerate-context case of effectively identical instances).
    """
    l = float(l)
    if not math.isfinite(l):
        raise ValidationError(f"mean norm must be finite, got {l}")
    if l < 0.0 or l > 1.0 + _NORM_TOL:
        raise ValidationError(f"mean norm must lie in [0, 1], got {l}")
    if l > MAX_MEAN_NORM:
        return MAX_MEAN_NORM, True
    if l < MIN_MEAN_NORM:
        return MIN_MEAN_NORM, False
    return l, False


def estimate_kappa(l: float, d: int) -> float:
    """Approximate ML concentration from mean resultant length l in dimension d.

    kappa = l (d - l^2) / (1 - l^2); strictly increasing in l for fixed d.
    l is clamped below the singularity at 1; l = 0 gives exactly 0.
    """
    if d < 2:
        raise ValidationError(f"dimension must be >= 2, got {d}")
    l = float(l)
    if not math.isfinite(l) or l < 0.0 or l > 1.0 + _NORM_TOL:
        raise ValidationError(f"mean norm must lie in [0, 1], got {l}")
    l = min(l, MAX_MEAN_NORM)
    return l * (d - l * l) / (1.0 - l * l)


def estimate_mu(stats: TypeStats) -> np.ndarray:
    """ML mean direction: mean vector scaled to unit norm (mean / l)."""
    l = stats.l
    if l == 0.0:
        raise ValidationError(
            f"{stats.word_type!r}: mean vector is zero, direction undefined"
        )
    return stats.mean / l


def fit_vmf(stats: TypeStats) -> VmfParams:
    """Convenience: both parameter estimates from one TypeStats."""
    return VmfParams(estimate_mu(stats), estimate_kappa(stats.l, stats.dim))


def coverage(l_s: float, l_t: float) -> CoveragePair:
    """Coverage score of a word type from its two mean norms.

    c = l_T (1 - l_S^2) / (l_S (1 - l_T^2)), with both norms clamped first.
    c > 1 means wider meanings in the source corpus; obeys the reciprocal
    identity c(a, b) * c(b, a) = 1.  log_coverage is the natural log.
    """
    ls, _ = clamp_mean_norm(l_s)
    lt, _ = clamp_mean_norm(l_t)
    c = lt * (1.0 - ls * ls) / (ls * (1.0 - lt * lt))
    return CoveragePair(ls, lt, c, math.log(c))


def kappa_ratio_exact(l_s: float, l_t: float, d: int) -> float:
    """Concentration ratio kappa_T / kappa_S without the large-d shortcut.

    Differs from coverage only by the (d - l^2) factors; for d >> 1 the two
    agree to relative order l^2 / d.
    """
    ls, _ = clamp_mean_norm(l_s)
    lt, _ = clamp_mean_norm(l_t)
    return estimate_kappa(lt, d) / estimate_kappa(ls, d)


def _clamped_weight(stats: TypeStats) -> np.ndarray:
    l, _ = clamp_mean_norm(stats.l)
    return stats.mean / (1.0 - l * l)


def representativeness_weights(stats_s: TypeStats, stats_t: TypeStats) -> np.ndarray:
    """Weight vector w = mean_S/(1-l_S^2) - mean_T/(1-l_T^2).

    Representativeness of any unit instance vector x is w . x, so ranking a
    batch of instances is one matrix-vector product.
    """
    if stats_s.dim != stats_t.dim:
        raise ValidationError(
            f"dimension mismatch: {stats_s.dim} vs {stats_t.dim}"
        )
    return _clamped_weight(stats_s) - _clamped_weight(stats_t)


def representativeness(x, stats_s: TypeStats, stats_t: TypeStats) -> float:
    """Score one unit instance vector against the source/target pair.

    Antisymmetric under swapping the corpora.  Positive scores mark
    instances whose contexts are typical of S but not of T.
    """
    xv = np.asarray(x, dtype=np.float64)
    if xv.shape[0] != stats_s.dim:
        raise ValidationError(
            f"instance vector has {xv.shape[0]} components, stats have {stats_s.dim}"
        )
    score = float(representativeness_weights(stats_s, stats_t) @ xv)
    if not math.isfinite(score):
        raise ValidationError("non-finite representativeness score")
    return score


def llr_weights_exact(stats_s: TypeStats, stats_t: TypeStats, d: int) -> np.ndarray:
    """Exact log-likelihood-ratio weight vector, before the large-d shortcut.

    w = ((d - l_S^2)/(1 - l_S^2)) mean_S - ((d - l_T^2)/(1 - l_T^2)) mean_T,
    i.e. kappa_S mu_S - kappa_T mu_T with the closed-form estimates plugged
    in.  Ranking instances by w . x nearly matches the representativeness
    ranking for large d; at small d the rankings can diverge.
    """
    if stats_s.dim != stats_t.dim:
        raise ValidationError(
            f"dimension mismatch: {stats_s.dim} vs {stats_t.dim}"
        )
    if d < 2:
        raise ValidationError(f"dimension must be >= 2, got {d}")
    ls, _ = clamp_mean_norm(stats_s.l)
    lt, _ = clamp_mean_norm(stats_t.l)
    ws = (d - ls * ls) / (1.0 - ls * ls)
    wt = (d - lt * lt) / (1.0 - lt * lt)
    return ws * stats_s.mean - wt * stats_t.mean


# ---------------------------------------------------------------------------
# sampling (verification oracle for the estimators and scores)


def sample_vmf(mu, kappa: float, count: int, seed=None) -> np.ndarray:
    """Draw ``count`` unit vectors from vMF(mu, kappa), deterministically per seed.

    The cosine along mu is drawn by the Ulrich/Wood rejection scheme (beta
    envelope); the orthogonal part is uniform on the tangent sphere.  kappa=0
    degenerates to the uniform distribution on the sphere.  Rows have unit
    norm within 1e-10 (renormalized once at the end).
    """
    mu = np.asarray(mu, dtype=np.float64)
    if mu.ndim != 1 or mu.size < 2:
        raise ValidationError("mu must be a 1-d vector with at least 2 components")
    norm = np.linalg.norm(mu)
    if not np.isfinite(norm) or norm == 0.0:
        raise ValidationError("mu must be a finite nonzero vector")
    if abs(norm - 1.0) > 1e-6:
        raise ValidationError("mu must have unit norm")
    mu = mu / norm
    if not math.isfinite(kappa) or kappa < 0:
        raise ValidationError(f"kappa must be finite and >= 0, got {kappa}")
    if count < 1:
        raise ValidationError(f"count must be >= 1, got {count}")

    rng = np.random.default_rng(seed)
    d = mu.size
    w = _sample_cosines(rng, float(kappa), d, count)

    # tangent directions: project gaussians off mu, renormalize
    v = rng.standard_normal((count, d))
    v -= np.outer(v @ mu, mu)
    norms = np.linalg.norm(v, axis=1)
    bad = norms < 1e-12
    while np.any(bad):  # probability ~0, but stay exact
        v[bad] = rng.standard_normal((int(bad.sum()), d))
        v[bad] -= np.outer(v[bad] @ mu, mu)
        norms[bad] = np.linalg.norm(v[bad], axis=1)
        bad = norms < 1e-12
    v /= norms[:, None]

    x = w[:, None] * mu + np.sqrt(np.maximum(0.0, 1.0 - w * w))[:, None] * v
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def _sample_cosines(rng, kappa: float, d: int, count: int) -> np.ndarray:
    """Rejection-sample the cosine between each draw and mu."""
    m = d - 1
    b = m / (math.sqrt(4.0 * kappa * kappa + m * m) + 2.0 * kappa)
    x0 = (1.0 - b) / (1.0 + b)
    c = kappa * x0 + m * math.log(1.0 - x0 * x0)

    out = np.empty(count)
    filled = 0
    while filled < count:
        todo = count - filled
        n_prop = max(64, int(todo * 1.5))
        z = rng.beta(0.5 * m, 0.5 * m, size=n_prop)
        w = (1.0 - (1.0 + b) * z) / (1.0 - (1.0 - b) * z)
        u = rng.random(n_prop)
        accepted = w[kappa * w + m * np.log1p(-x0 * w) - c >= np.log(u)][:todo]
        out[filled : filled + accepted.size] = accepted
        filled += accepted.size
    return out
