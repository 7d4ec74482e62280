import math

import numpy as np
import pytest

from semnorm import kernels
from semnorm.errors import ValidationError
from semnorm.stability import stability_curve, stability_table

from helpers import random_unit, record, vmf_records

ONE_MINUS_SQRT2_OVER_2 = 1.0 - math.sqrt(2.0) / 2.0


def test_identical_instances_give_zero_diffs():
    recs = []
    for t in range(5):
        vec = np.eye(4)[t % 4]
        recs.extend(record(f"t{t}", 10 * t + i, vec) for i in range(8))
    curve = stability_curve(recs, 4, max_n=8)
    np.testing.assert_allclose(curve.avg_diff, 0.0, atol=1e-12)
    np.testing.assert_array_equal(curve.support, [5] * 7)


def test_hand_evaluated_two_vector_type():
    # l_1 = 1, l_2 = sqrt(2)/2, so avg_diff at k=2 is 1 - sqrt(2)/2
    recs = [record("w", 0, [1, 0]), record("w", 1, [0, 1])]
    curve = stability_curve(recs, 2, max_n=2)
    assert curve.avg_diff[0] == pytest.approx(ONE_MINUS_SQRT2_OVER_2, abs=1e-10)
    assert curve.support[0] == 1


def test_vmf_types_stabilize():
    rng = np.random.default_rng(42)
    recs = []
    for t in range(100):
        mu = random_unit(rng, 64)
        recs.extend(
            vmf_records(f"t{t:03d}", mu, 50.0, 40, seed=rng.integers(2**32), start_id=len(recs))
        )
    curve = stability_curve(recs, 64, max_n=40)
    k = curve.ks
    assert curve.avg_diff[k == 10][0] < curve.avg_diff[k == 2][0]
    assert np.all(curve.avg_diff[k >= 10] < 0.02)


def test_prefix_step_bound():
    # adding one unit vector to a k-1 prefix moves the mean norm at most 2/k
    rng = np.random.default_rng(8)
    recs = [record("w", i, rng.standard_normal(5)) for i in range(60)]
    curve = stability_curve(recs, 5, max_n=60)
    for k, diff in zip(curve.ks, curve.avg_diff):
        assert diff <= 2.0 / k + 1e-12


def test_support_tracks_dropouts_and_is_non_increasing():
    recs = [record("a", i, [1, 0]) for i in range(10)]
    recs += [record("b", 100 + i, [0, 1]) for i in range(4)]
    recs += [record("c", 200 + i, [1, 1]) for i in range(2)]
    curve = stability_curve(recs, 2, max_n=12)
    # a: 10 instances, b: 4, c: 2 -> support 3 at k=2, 2 through k=4, 1 through k=10
    np.testing.assert_array_equal(curve.support, [3, 2, 2, 1, 1, 1, 1, 1, 1, 0, 0])
    assert np.all(np.diff(curve.support) <= 0)
    # columns with no support are NaN
    assert np.isnan(curve.avg_diff[-1]) and np.isnan(curve.avg_diff[-2])
    assert not np.isnan(curve.avg_diff[0])


def test_deterministic_and_order_dependent():
    rng = np.random.default_rng(9)
    vecs = rng.standard_normal((12, 3))
    fwd = [record("w", i, v) for i, v in enumerate(vecs)]
    curve1 = stability_curve(fwd, 3, max_n=12)
    curve2 = stability_curve(fwd, 3, max_n=12)
    np.testing.assert_array_equal(curve1.avg_diff, curve2.avg_diff)
    rev = [record("w", i, v) for i, v in enumerate(vecs[::-1])]
    curve3 = stability_curve(rev, 3, max_n=12)
    assert not np.array_equal(curve1.avg_diff, curve3.avg_diff)


def test_max_n_validation():
    with pytest.raises(ValidationError):
        stability_curve([record("w", 0, [1, 0])], 2, max_n=1)


def test_empty_stream_yields_empty_support():
    curve = stability_curve([], 4, max_n=5)
    np.testing.assert_array_equal(curve.support, [0, 0, 0, 0])
    assert np.all(np.isnan(curve.avg_diff))


def test_kernel_backends_agree():
    rng = np.random.default_rng(10)
    flat = rng.standard_normal((120, 6))
    flat /= np.linalg.norm(flat, axis=1, keepdims=True)
    lengths = np.array([50, 40, 30], dtype=np.int64)
    offsets = np.array([0, 50, 90], dtype=np.int64)
    a = kernels.prefix_norm_diffs_numpy(flat, offsets, lengths, 45)
    b = kernels.prefix_norm_diffs(flat, offsets, lengths, 45)
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-10)


def test_stability_table_format():
    recs = [record("w", 0, [1, 0]), record("w", 1, [0, 1]), record("w", 2, [1, 0])]
    table = stability_table(stability_curve(recs, 2, max_n=3))
    lines = table.strip().split("\n")
    assert lines[0] == "k\tavg_diff\tsupport"
    k, diff, sup = lines[1].split("\t")
    assert (k, sup) == ("2", "1")
    assert float(diff) == pytest.approx(ONE_MINUS_SQRT2_OVER_2, abs=1e-10)
