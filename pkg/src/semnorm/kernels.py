"""Hot numeric kernels with numba and pure-numpy implementations.

Every kernel here takes contiguous float64 arrays prepared by the calling
module and performs no validation; preconditions are documented per function.
``accumulate_chunk`` and ``prefix_norm_diffs`` dispatch to the backend chosen
in :mod:`semnorm.backend`; the ``_numba`` / ``_numpy`` variants stay
importable individually so benchmarks and conformance tests can compare them.
"""

from __future__ import annotations

import numpy as np

from . import backend

# ---------------------------------------------------------------------------
# pure-numpy implementations


def accumulate_chunk_numpy(vecs, ids, n_groups):
    """Normalize each row of ``vecs`` and scatter-add it into per-group sums.

    vecs: (c, d) float64, every row nonzero and finite.
    ids:  (c,) int64 compact group ids in [0, n_groups).
    Returns (partials (n_groups, d) float64, counts (n_groups,) int64).
    """
    norms = np.sqrt(np.einsum("ij,ij->i", vecs, vecs))
    unit = vecs / norms[:, None]
    partials = np.zeros((n_groups, vecs.shape[1]), dtype=np.float64)
    np.add.at(partials, ids, unit)
    counts = np.bincount(ids, minlength=n_groups).astype(np.int64)
    return partials, counts


def prefix_norm_diffs_numpy(flat, offsets, lengths, max_n):
    """Per-type absolute differences of consecutive prefix-mean norms.

    flat:    (total, d) float64 unit vectors, grouped by type.
    offsets: (t,) int64 start row of each type's block in ``flat``.
    lengths: (t,) int64 rows in each block.
    Returns (t, max_n + 1) float64; entry [ti, k] is |l_k - l_{k-1}| for
    type ti, NaN where the type has fewer than k vectors.  Columns 0 and 1
    are always NaN (the difference needs k >= 2).
    """
    t = lengths.shape[0]
    diffs = np.full((t, max_n + 1), np.nan)
    for ti in range(t):
        n = min(int(lengths[ti]), max_n)
        if n < 2:
            continue
        block = flat[offsets[ti] : offsets[ti] + n]
        prefix_means = np.cumsum(block, axis=0) / np.arange(1, n + 1)[:, None]
        l = np.linalg.norm(prefix_means, axis=1)
        diffs[ti, 2 : n + 1] = np.abs(np.diff(l))
    return diffs


# ---------------------------------------------------------------------------
# numba implementations

if backend.BACKEND == "numba":
    from numba import njit, prange

    @njit(cache=True)
    def accumulate_chunk_numba(vecs, ids, n_groups):
        c, d = vecs.shape
        partials = np.zeros((n_groups, d), dtype=np.float64)
        counts = np.zeros(n_groups, dtype=np.int64)
        for i in range(c):
            s = 0.0
            for j in range(d):
                s += vecs[i, j] * vecs[i, j]
            inv = 1.0 / np.sqrt(s)
            g = ids[i]
            for j in range(d):
                partials[g, j] += vecs[i, j] * inv
            counts[g] += 1
        return partials, counts

    @njit(cache=True, parallel=True)
    def prefix_norm_diffs_numba(flat, offsets, lengths, max_n):
        t = lengths.shape[0]
        d = flat.shape[1]
        diffs = np.full((t, max_n + 1), np.nan)
        for ti in prange(t):
            n = min(lengths[ti], max_n)
            run = np.zeros(d)
            l_prev = 0.0
            for k in range(1, n + 1):
                row = offsets[ti] + k - 1
                s = 0.0
                for j in range(d):
                    run[j] += flat[row, j]
                    s += run[j] * run[j]
                l_k = np.sqrt(s) / k
                if k >= 2:
                    diffs[ti, k] = abs(l_k - l_prev)
                l_prev = l_k
        return diffs

    accumulate_chunk = accumulate_chunk_numba
    prefix_norm_diffs = prefix_norm_diffs_numba
    backend.apply_thread_cap()
else:
    accumulate_chunk = accumulate_chunk_numpy
    prefix_norm_diffs = prefix_norm_diffs_numpy
