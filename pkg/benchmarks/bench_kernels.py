"""Benchmark the numba kernels against their pure-numpy fallbacks.

Run from the repository root:

    python3 benchmarks/bench_kernels.py [--records N] [--dim D] [--types T]

The same workloads run through both implementations; the table reports
wall-clock per call (best of the repeats) plus the max absolute deviation
between the two backends, which must sit inside the 1e-10 aggregation
tolerance.  Requires numba; use SEMNORM_BACKEND=numpy at runtime if you only
want the fallback behavior in production.
"""

import argparse
import time

import numpy as np

from semnorm import kernels

if not hasattr(kernels, "accumulate_chunk_numba"):
    raise SystemExit(
        "numba backend unavailable (SEMNORM_BACKEND=numpy or numba not installed); "
        "nothing to compare"
    )


def best_of(fn, repeats=5):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_accumulate(n_records, dim, n_types, rng):
    vecs = rng.standard_normal((n_records, dim))
    ids = rng.integers(0, n_types, size=n_records).astype(np.int64)

    kernels.accumulate_chunk_numba(vecs[:16], ids[:16], n_types)  # JIT warmup
    t_nb = best_of(lambda: kernels.accumulate_chunk_numba(vecs, ids, n_types))
    t_np = best_of(lambda: kernels.accumulate_chunk_numpy(vecs, ids, n_types))

    p_nb, c_nb = kernels.accumulate_chunk_numba(vecs, ids, n_types)
    p_np, c_np = kernels.accumulate_chunk_numpy(vecs, ids, n_types)
    assert np.array_equal(c_nb, c_np)
    return t_nb, t_np, float(np.max(np.abs(p_nb - p_np)))


def bench_prefix(n_types, per_type, dim, rng):
    flat = rng.standard_normal((n_types * per_type, dim))
    flat /= np.linalg.norm(flat, axis=1, keepdims=True)
    lengths = np.full(n_types, per_type, dtype=np.int64)
    offsets = (np.arange(n_types) * per_type).astype(np.int64)

    kernels.prefix_norm_diffs_numba(flat[:per_type], offsets[:1], lengths[:1], per_type)
    t_nb = best_of(lambda: kernels.prefix_norm_diffs_numba(flat, offsets, lengths, per_type))
    t_np = best_of(lambda: kernels.prefix_norm_diffs_numpy(flat, offsets, lengths, per_type))

    d_nb = kernels.prefix_norm_diffs_numba(flat, offsets, lengths, per_type)
    d_np = kernels.prefix_norm_diffs_numpy(flat, offsets, lengths, per_type)
    dev = float(np.nanmax(np.abs(d_nb - d_np)))
    return t_nb, t_np, dev


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--records", type=int, default=200_000)
    parser.add_argument("--dim", type=int, default=64)
    parser.add_argument("--types", type=int, default=2_000)
    parser.add_argument("--per-type", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    rows = []

    t_nb, t_np, dev = bench_accumulate(args.records, args.dim, args.types, rng)
    rows.append(("accumulate_chunk", args.records, t_nb, t_np, dev))

    t_nb, t_np, dev = bench_prefix(args.types, args.per_type, args.dim, rng)
    rows.append(("prefix_norm_diffs", args.types * args.per_type, t_nb, t_np, dev))

    print(f"{'kernel':<20}{'rows':>10}{'numba':>12}{'numpy':>12}{'speedup':>9}{'max|diff|':>12}")
    for name, n, nb, np_, dev in rows:
        print(f"{name:<20}{n:>10}{nb * 1e3:>10.2f}ms{np_ * 1e3:>10.2f}ms{np_ / nb:>9.1f}{dev:>12.2e}")


if __name__ == "__main__":
    main()
