import numpy as np
import pytest

from semnorm import vmf
from semnorm.aggregate import accumulate
from semnorm.embstore import StreamHeader, normalize
from semnorm.errors import ValidationError
from semnorm.instances import instances_table, typical_instances

from helpers import (
    brute_force_scores,
    orthonormal_pair,
    record,
    serial_stats,
    stream_of,
    vmf_records,
)


def header(dim, count, label):
    return StreamHeader(1, dim, "test-model", label, count)


def two_cluster_pair(seed, dim=64, kappa=100.0):
    """Word 'w' in S has a u-cluster and a v-cluster; in T only the v-cluster."""
    rng = np.random.default_rng(seed)
    u, v = orthonormal_pair(rng, dim)
    recs_s = vmf_records("w", u, kappa, 150, seed=rng.integers(2**32)) + vmf_records(
        "w", v, kappa, 150, seed=rng.integers(2**32), start_id=150
    )
    recs_t = vmf_records("w", v, kappa, 300, seed=rng.integers(2**32))
    u_ids = set(range(150))
    return (header(dim, 300, "S"), recs_s), (header(dim, 300, "T"), recs_t), u_ids


def test_two_cluster_top_instances_come_from_missing_sense():
    stream_s, stream_t, u_ids = two_cluster_pair(seed=0)
    top = typical_instances("w", stream_s, stream_t, top_k=20)
    assert all(r.instance_id in u_ids for r in top)


def test_full_ordering_matches_brute_force():
    stream_s, stream_t, _ = two_cluster_pair(seed=1)
    ranked = typical_instances("w", stream_s, stream_t)
    ref_s = serial_stats(stream_s[1], 64)["w"]
    ref_t = serial_stats(stream_t[1], 64)["w"]
    brute = brute_force_scores("w", stream_s[1], ref_s, ref_t)
    brute.sort(key=lambda t: (-t[1], t[0]))
    assert [r.instance_id for r in ranked] == [iid for iid, _ in brute]
    for (iid, score), row in zip(brute, ranked):
        assert row.score == pytest.approx(score, abs=1e-9)


def test_scores_match_module_level_recomputation():
    stream_s, stream_t, _ = two_cluster_pair(seed=2)
    ranked = typical_instances("w", stream_s, stream_t, top_k=25)
    stats_s = accumulate(stream_s[1], 64)["w"]
    stats_t = accumulate(stream_t[1], 64)["w"]
    by_id = {r.instance_id: r for r in stream_s[1]}
    for row in ranked:
        x = normalize(by_id[row.instance_id].vector)
        assert row.score == pytest.approx(
            vmf.representativeness(x, stats_s, stats_t), abs=1e-12
        )


def test_identical_stats_score_zero_and_fall_back_to_ids():
    rng = np.random.default_rng(3)
    vecs = rng.standard_normal((15, 8))
    stream = stream_of({"w": vecs}, 8, label="same")
    ranked = typical_instances("w", stream, stream, min_freq=10)
    assert [r.instance_id for r in ranked] == sorted(r.instance_id for r in stream[1])
    for r in ranked:
        assert r.score == pytest.approx(0.0, abs=1e-12)


def test_top_k_larger_than_instance_count_returns_all():
    stream_s, stream_t, _ = two_cluster_pair(seed=4)
    ranked = typical_instances("w", stream_s, stream_t, top_k=10_000)
    assert len(ranked) == 300


def test_direction_flag_equals_explicit_swap():
    stream_s, stream_t, _ = two_cluster_pair(seed=5)
    via_flag = typical_instances("w", stream_s, stream_t, direction="target")
    via_swap = typical_instances("w", stream_t, stream_s, direction="source")
    assert [r.instance_id for r in via_flag] == [r.instance_id for r in via_swap]
    for a, b in zip(via_flag, via_swap):
        assert a.score == b.score
        assert a.corpus_label == b.corpus_label == "T"


def test_role_swap_negates_scores_and_reverses_ranking():
    stream_s, stream_t, _ = two_cluster_pair(seed=6)
    stats_s = accumulate(stream_s[1], 64)["w"]
    stats_t = accumulate(stream_t[1], 64)["w"]
    ranked = typical_instances("w", stream_s, stream_t, direction="source")
    by_id = {r.instance_id: r for r in stream_s[1]}
    # same instances under the opposite corpus roles score the exact negation
    opposite = {
        r.instance_id: vmf.representativeness(
            normalize(by_id[r.instance_id].vector), stats_t, stats_s
        )
        for r in ranked
    }
    for row in ranked:
        assert row.score == pytest.approx(-opposite[row.instance_id], abs=1e-12)
    reversed_order = sorted(opposite, key=lambda i: (-opposite[i], i))
    assert reversed_order == [r.instance_id for r in ranked][::-1]


def test_equal_norms_reduce_to_cosine_with_difference_vector():
    # negating one coordinate preserves norms exactly, so l_S == l_T bitwise
    rng = np.random.default_rng(7)
    vecs = rng.standard_normal((40, 6)).astype("<f4")
    flipped = vecs.copy()
    flipped[:, 0] = -flipped[:, 0]
    stream_s = stream_of({"w": vecs}, 6, label="S")
    stream_t = stream_of({"w": flipped}, 6, label="T")
    stats_s = accumulate(stream_s[1], 6)["w"]
    stats_t = accumulate(stream_t[1], 6)["w"]
    assert stats_s.l == stats_t.l  # exact

    ranked = typical_instances("w", stream_s, stream_t)
    diff = stats_s.mean - stats_t.mean
    cosines = {
        rec.instance_id: float(diff @ normalize(rec.vector)) for rec in stream_s[1]
    }
    by_cosine = sorted(cosines, key=lambda i: (-cosines[i], i))
    assert [r.instance_id for r in ranked] == by_cosine


def test_unknown_word_and_threshold_errors():
    stream_s, stream_t, _ = two_cluster_pair(seed=8)
    with pytest.raises(ValidationError, match="does not occur"):
        typical_instances("missing", stream_s, stream_t)
    with pytest.raises(ValidationError, match="threshold"):
        typical_instances("w", stream_s, stream_t, min_freq=400)


def test_unknown_direction_rejected():
    stream_s, stream_t, _ = two_cluster_pair(seed=9)
    with pytest.raises(ValidationError, match="direction"):
        typical_instances("w", stream_s, stream_t, direction="sideways")


def test_dimension_mismatch_rejected():
    a = stream_of({"w": np.eye(3)}, 3)
    b = stream_of({"w": np.eye(4)}, 4)
    with pytest.raises(ValidationError, match="dimension"):
        typical_instances("w", a, b)


def test_instances_table_format_and_truncation():
    long_sentence = "x" * 300 + "\ttab\nnewline"
    recs = [record("w", i, [1.0, 0.0], long_sentence) for i in range(12)]
    stream = (header(2, 12, "lab"), recs)
    ranked = typical_instances("w", stream, stream, top_k=1)
    table = instances_table(ranked, sentence_width=40)
    lines = table.strip().split("\n")
    assert lines[0] == "rank\tscore\tcorpus\tinstance_id\tsentence"
    cells = lines[1].split("\t")
    assert cells[0] == "1" and cells[2] == "lab"
    assert len(cells) == 5  # tabs/newlines in the sentence were flattened
    assert len(cells[4]) == 40

    full = instances_table(ranked).strip().split("\n")[1].split("\t")[4]
    assert len(full) == len(long_sentence)  # stored data not altered
