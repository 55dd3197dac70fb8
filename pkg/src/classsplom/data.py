"""Labeled dataset container, CSV ingestion, per-class subsampling and
synthetic Gaussian fixtures."""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DataError


@dataclass(frozen=True, eq=False)
class Dataset:
    """n labeled points in D dimensions with K named classes.

    ``labels[i]`` is an index into ``class_names``. Validation runs on
    construction, so every live instance satisfies the invariants.
    """

    features: np.ndarray
    labels: np.ndarray
    class_names: tuple[str, ...]

    def __post_init__(self):
        features = np.array(self.features, dtype=np.float64)
        labels = np.array(self.labels, dtype=np.int64)
        names = tuple(str(c) for c in self.class_names)
        features.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "class_names", names)

        if features.ndim != 2:
            raise DataError(f"features must be a 2-D matrix, got shape {features.shape}")
        n, d = features.shape
        if n < 1:
            raise DataError("dataset is empty")
        if d < 2:
            raise DataError(f"need at least 2 feature dimensions, got {d}")
        if labels.shape != (n,):
            raise DataError(f"expected {n} labels, got shape {labels.shape}")
        k = len(names)
        if k < 2:
            raise DataError(f"need at least 2 classes, got {k}")
        if len(set(names)) != k:
            raise DataError("class names must be unique")
        if labels.min() < 0 or labels.max() >= k:
            raise DataError(f"labels must lie in [0, {k})")
        bad = ~np.isfinite(features)
        if bad.any():
            row, col = np.argwhere(bad)[0]
            raise DataError(f"non-finite feature value at point {row}, dimension {col}")
        counts = np.bincount(labels, minlength=k)
        for c in range(k):
            if counts[c] < 2:
                raise DataError(f"class {names[c]!r} has {counts[c]} point(s); at least 2 required")

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def D(self) -> int:
        return self.features.shape[1]

    @property
    def K(self) -> int:
        return len(self.class_names)

    def class_counts(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.K)

    def class_points(self, k: int) -> np.ndarray:
        return self.features[self.labels == k]

    def subset(self, rows) -> "Dataset":
        rows = np.asarray(rows)
        return Dataset(self.features[rows], self.labels[rows], self.class_names)

    def with_features(self, features) -> "Dataset":
        return Dataset(features, self.labels, self.class_names)

    def __eq__(self, other):
        if not isinstance(other, Dataset):
            return NotImplemented
        return (
            self.class_names == other.class_names
            and np.array_equal(self.labels, other.labels)
            and np.array_equal(self.features, other.features)
        )


def factorize(values: Sequence[str]) -> tuple[np.ndarray, tuple[str, ...]]:
    """Map string labels to indices in order of first appearance."""
    index: dict[str, int] = {}
    codes = np.empty(len(values), dtype=np.int64)
    for i, v in enumerate(values):
        codes[i] = index.setdefault(v, len(index))
    return codes, tuple(index)


def _is_float(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


def load_csv(path, label_column: str | int = "label") -> Dataset:
    """Read a comma-separated file with numeric feature columns and one label column.

    A header row is recognised when none of its non-label cells parses as a
    number. ``label_column`` is either a header name or a 0-based column
    index; a name requires a header.
    """
    path = os.fspath(path)
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror or exc}") from exc
    if not rows:
        raise DataError(f"{path}: file is empty")

    width = len(rows[0])
    first = [c.strip() for c in rows[0]]
    if isinstance(label_column, str) and not label_column.lstrip("-").isdigit():
        if label_column not in first:
            raise DataError(f"{path}: label column {label_column!r} not found in header")
        label_idx = first.index(label_column)
        has_header = True
    else:
        label_idx = int(label_column)
        if label_idx < 0:
            label_idx += width
        if not 0 <= label_idx < width:
            raise DataError(f"{path}: label column index {label_column} out of range")
        others = [c for j, c in enumerate(first) if j != label_idx]
        has_header = bool(others) and not any(_is_float(c) for c in others)

    body = rows[1:] if has_header else rows
    line0 = 2 if has_header else 1
    feats = []
    raw_labels = []
    for r, row in enumerate(body):
        line = line0 + r
        if len(row) != width:
            raise DataError(f"{path}: row {line} has {len(row)} columns, expected {width}")
        values = []
        for j, cell in enumerate(row):
            if j == label_idx:
                continue
            try:
                v = float(cell)
            except ValueError:
                raise DataError(f"{path}: row {line}, column {j + 1}: cannot parse {cell!r} as a number") from None
            if not math.isfinite(v):
                raise DataError(f"{path}: row {line}, column {j + 1}: non-finite value {cell!r}")
            values.append(v)
        feats.append(values)
        raw_labels.append(row[label_idx].strip())
    if not feats:
        raise DataError(f"{path}: no data rows")

    labels, names = factorize(raw_labels)
    return Dataset(np.array(feats, dtype=np.float64).reshape(len(feats), width - 1), labels, names)


def write_csv(ds: Dataset, path, label_column: str = "label") -> None:
    """Write ``ds`` with a header row; floats use shortest round-trip repr."""
    with open(os.fspath(path), "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([f"x{j}" for j in range(ds.D)] + [label_column])
        for x, y in zip(ds.features, ds.labels):
            w.writerow([repr(float(v)) for v in x] + [ds.class_names[y]])


def subsample_indices(labels, per_class: int, seed: int) -> np.ndarray:
    """Row indices kept by :func:`stratified_subsample`, in ascending order."""
    if per_class < 2:
        raise DataError(f"per_class must be at least 2, got {per_class}")
    labels = np.asarray(labels)
    rng = np.random.default_rng(seed)
    keep = []
    for k in np.unique(labels):
        rows = np.flatnonzero(labels == k)
        if len(rows) > per_class:
            rows = np.sort(rng.choice(rows, size=per_class, replace=False))
        keep.append(rows)
    return np.sort(np.concatenate(keep))


def stratified_subsample(ds: Dataset, per_class: int, seed: int) -> Dataset:
    """Keep at most ``per_class`` uniformly drawn points of each class.

    Kept rows retain their original relative order.
    """
    return ds.subset(subsample_indices(ds.labels, per_class, seed))


def generate_gaussian_blobs(means, scales, per_class: int, seed: int,
                            class_names: Sequence[str] | None = None) -> Dataset:
    """Isotropic Gaussian classes: class k is ``means[k] + scales[k] * z``."""
    means = np.atleast_2d(np.asarray(means, dtype=np.float64))
    k, d = means.shape
    scales = np.broadcast_to(np.asarray(scales, dtype=np.float64), (k,))
    if k < 2:
        raise DataError("need at least 2 classes")
    if per_class < 2:
        raise DataError(f"per_class must be at least 2, got {per_class}")
    if np.any(scales <= 0) or not np.all(np.isfinite(scales)):
        raise DataError("scales must be positive and finite")
    if class_names is None:
        class_names = [f"c{i}" for i in range(k)]
    rng = np.random.default_rng(seed)
    feats = np.concatenate([means[i] + scales[i] * rng.standard_normal((per_class, d)) for i in range(k)])
    labels = np.repeat(np.arange(k), per_class)
    return Dataset(feats, labels, tuple(class_names))
