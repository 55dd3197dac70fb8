import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from classsplom.data import (
    Dataset,
    generate_gaussian_blobs,
    load_csv,
    stratified_subsample,
    subsample_indices,
    write_csv,
)
from classsplom.errors import DataError
from classsplom.evaluation import auc_pair_count_oracle

from .oracles import pair_count_auc


def _write(tmp_path, text, name="d.csv"):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


def test_load_csv_minimal(tmp_path):
    p = _write(tmp_path, "0,0,a\n1,0,a\n0,1,b\n1,1,b\n")
    ds = load_csv(p, 2)
    assert (ds.n, ds.D, ds.K) == (4, 2, 2)
    assert ds.class_names == ("a", "b")
    np.testing.assert_array_equal(ds.labels, [0, 0, 1, 1])


def test_load_csv_first_appearance_order(tmp_path):
    p = _write(tmp_path, "0,0,b\n1,0,b\n0,1,a\n1,1,a\n")
    assert load_csv(p, -1).class_names == ("b", "a")


def test_load_csv_header_and_named_column(tmp_path):
    p = _write(tmp_path, "dialect,f1,f2\nx,1.5,2\ny,3,4e-1\nx,0,0\ny,1,1\n")
    ds = load_csv(p, "dialect")
    assert ds.class_names == ("x", "y")
    np.testing.assert_array_equal(ds.features[1], [3.0, 0.4])


def test_load_csv_header_detected_by_index(tmp_path):
    p = _write(tmp_path, "f1,f2,cls\n1,2,0\n3,4,0\n5,6,1\n7,8,1\n")
    ds = load_csv(p, 2)
    assert ds.n == 4
    assert ds.class_names == ("0", "1")


def test_load_csv_nan_names_row(tmp_path):
    p = _write(tmp_path, "0,0,a\n1,NaN,a\n0,1,b\n1,1,b\n")
    with pytest.raises(DataError, match="row 2"):
        load_csv(p, 2)


def test_load_csv_unparseable_cell(tmp_path):
    p = _write(tmp_path, "f1,f2,label\n0,0,a\n1,oops,a\n0,1,b\n1,1,b\n")
    with pytest.raises(DataError, match=r"row 3, column 2"):
        load_csv(p)


@pytest.mark.parametrize("text, match", [
    ("0,0,a\n1,0,a\n0,1,a\n", "at least 2 classes"),
    ("0,0,a\n1,0,a\n0,1,b\n", "'b' has 1"),
    ("0,0,a\n1,0\n0,1,b\n1,1,b\n", "columns"),
])
def test_load_csv_invariants(tmp_path, text, match):
    with pytest.raises(DataError, match=match):
        load_csv(_write(tmp_path, text), 2)


def test_load_csv_missing_file(tmp_path):
    with pytest.raises(DataError, match="cannot read"):
        load_csv(tmp_path / "absent.csv")


def test_load_csv_missing_label_column(tmp_path):
    with pytest.raises(DataError, match="not found"):
        load_csv(_write(tmp_path, "a,b,c\n1,2,x\n"), "label")


def test_csv_round_trip(tmp_path):
    ds = generate_gaussian_blobs([[0, 0, 1], [3, 1, 0], [1, 5, 2]], [0.3, 1.0, 2.5], 7, seed=5,
                                 class_names=["p", "q", "r"])
    write_csv(ds, tmp_path / "x.csv")
    assert load_csv(tmp_path / "x.csv") == ds


@pytest.mark.parametrize("features, labels, names", [
    (np.zeros((4, 1)), [0, 0, 1, 1], ["a", "b"]),
    (np.zeros((4, 2)), [0, 0, 0, 0], ["a"]),
    (np.zeros((4, 2)), [0, 0, 1, 2], ["a", "b"]),
    (np.zeros((4, 2)), [0, 0, 1, 1], ["a", "a"]),
    (np.array([[0, 0], [np.inf, 0], [1, 1], [2, 2]]), [0, 0, 1, 1], ["a", "b"]),
])
def test_dataset_invariants(features, labels, names):
    with pytest.raises(DataError):
        Dataset(features, labels, names)


def _uneven():
    rng = np.random.default_rng(0)
    sizes = [30, 5, 120, 2, 64]
    labels = np.concatenate([np.full(s, k) for k, s in enumerate(sizes)])
    rng.shuffle(labels)
    return Dataset(rng.normal(size=(len(labels), 3)), labels, [f"k{i}" for i in range(5)])


def test_subsample_use_case_count():
    ds = generate_gaussian_blobs(np.eye(5, 8), [1] * 5, 150, seed=0)
    assert stratified_subsample(ds, 100, seed=1).n == 500


def test_subsample_exhausting_is_identity():
    ds = _uneven()
    assert stratified_subsample(ds, 120, seed=9) == ds
    assert stratified_subsample(ds, 1000, seed=9) == ds


def test_subsample_deterministic():
    ds = _uneven()
    assert stratified_subsample(ds, 10, 4) == stratified_subsample(ds, 10, 4)
    assert not stratified_subsample(ds, 10, 4) == stratified_subsample(ds, 10, 5)


def test_subsample_rejects_small_quota():
    with pytest.raises(DataError):
        stratified_subsample(_uneven(), 1, 0)


@settings(max_examples=40, deadline=None)
@given(per_class=st.integers(2, 150), seed=st.integers(0, 2**32 - 1))
def test_subsample_is_ordered_subset(per_class, seed):
    ds = _uneven()
    rows = subsample_indices(ds.labels, per_class, seed)
    assert np.all(np.diff(rows) > 0)
    sub = stratified_subsample(ds, per_class, seed)
    np.testing.assert_array_equal(sub.features, ds.features[rows])
    np.testing.assert_array_equal(sub.class_counts(), np.minimum(per_class, ds.class_counts()))


def test_blobs_deterministic_and_shaped():
    a = generate_gaussian_blobs([[0, 0], [1, 1], [2, 0]], [1, 2, 3], 6, seed=42)
    b = generate_gaussian_blobs([[0, 0], [1, 1], [2, 0]], [1, 2, 3], 6, seed=42)
    assert a == b
    assert (a.n, a.D, a.K) == (18, 2, 3)
    np.testing.assert_array_equal(a.class_counts(), [6, 6, 6])


def test_blobs_rejects_nonpositive_scale():
    with pytest.raises(DataError):
        generate_gaussian_blobs([[0, 0], [1, 1]], [1, 0], 5, seed=0)


def test_blobs_far_apart_are_separable():
    # Any axis with a positive x-component separates these; x itself is the score.
    ds = generate_gaussian_blobs([[-10, 0], [10, 0]], [1, 1], 50, seed=0)
    x = ds.features[:, 0]
    pos, neg = x[ds.labels == 1], x[ds.labels == 0]
    assert pos.min() > neg.max()
    assert pair_count_auc(pos, neg) == 1.0


def test_blobs_identical_means_near_chance():
    ds = generate_gaussian_blobs([[0, 0], [0, 0]], [1, 1], 50, seed=0)
    x = ds.features[:, 0]
    auc = pair_count_auc(x[ds.labels == 0], x[ds.labels == 1])
    assert abs(auc - 0.5) <= 0.15
    assert auc == pytest.approx(auc_pair_count_oracle(x, ds.labels == 0), abs=1e-12)
