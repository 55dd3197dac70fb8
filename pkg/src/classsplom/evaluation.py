"""ROC curves, bootstrap AUC averages (AUCBA) and confusion-matrix statistics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .data import Dataset
from .errors import ConfigError, DataError, DegenerateError
from .projection import DEFAULT_RIDGE, LinearAxis, fisher_lda_axis

DEFAULT_BOOTSTRAP = 100
MAX_REDRAWS = 1000


@dataclass(frozen=True, eq=False)
class RocCurve:
    points: np.ndarray  # m x 2 array of (fpr, tpr), from (0, 0) to (1, 1)
    auc: float

    @property
    def fpr(self) -> np.ndarray:
        return self.points[:, 0]

    @property
    def tpr(self) -> np.ndarray:
        return self.points[:, 1]


@dataclass(frozen=True, eq=False)
class BootstrapRocSummary:
    observed: RocCurve
    bootstrap_curves: tuple[RocCurve, ...]
    aucba: float
    aucba_std: float

    @property
    def B(self) -> int:
        return len(self.bootstrap_curves)

    @property
    def bootstrap_aucs(self) -> np.ndarray:
        return np.array([c.auc for c in self.bootstrap_curves])


@dataclass(frozen=True, eq=False)
class ConfusionMatrix:
    """Rows are true classes, columns predicted classes."""

    counts: np.ndarray
    precision: np.ndarray
    recall: np.ndarray

    @property
    def true_totals(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def predicted_totals(self) -> np.ndarray:
        return self.counts.sum(axis=0)


def _check_binary(scores, is_positive) -> tuple[np.ndarray, np.ndarray]:
    s = np.asarray(scores, dtype=np.float64).ravel()
    y = np.asarray(is_positive, dtype=bool).ravel()
    if s.shape != y.shape:
        raise DataError(f"{len(s)} scores but {len(y)} labels")
    if np.isnan(s).any():
        raise DataError("scores contain NaN")
    if y.all() or not y.any():
        raise DataError("ROC needs at least one positive and one negative")
    return s, y


def roc_curve(scores, is_positive) -> RocCurve:
    """ROC from sweeping a threshold down through the distinct score values.

    Tied scores enter as one block, so ties produce diagonal segments and
    the trapezoidal area equals the Mann-Whitney statistic with half credit
    for ties. The area is accumulated in integer counts and divided once.
    """
    s, y = _check_binary(scores, is_positive)
    order = np.argsort(-s, kind="stable")
    s, y = s[order], y[order]
    # Index of the last element of each tie block.
    ends = np.flatnonzero(np.r_[s[1:] != s[:-1], True])
    tp = np.r_[0, np.cumsum(y)[ends]]
    fp = np.r_[0, (ends + 1) - tp[1:]]
    n_pos, n_neg = int(tp[-1]), int(fp[-1])
    twice_area = int(np.sum(np.diff(fp) * (tp[1:] + tp[:-1])))
    points = np.column_stack([fp / n_neg, tp / n_pos])
    return RocCurve(points=points, auc=twice_area / (2 * n_pos * n_neg))


def auc_pair_count_oracle(scores, is_positive) -> float:
    """Mann-Whitney AUC by exhaustive comparison of every positive/negative pair."""
    s, y = _check_binary(scores, is_positive)
    pos, neg = s[y], s[~y]
    wins = 0
    ties = 0
    for p in pos:
        wins += int(np.count_nonzero(p > neg))
        ties += int(np.count_nonzero(p == neg))
    return (2 * wins + ties) / (2 * len(pos) * len(neg))


def trapezoid_area(points) -> float:
    pts = np.asarray(points, dtype=np.float64)
    return float(np.sum(np.diff(pts[:, 0]) * (pts[1:, 1] + pts[:-1, 1]) / 2))


def replicate_rng(seed: int, index: int) -> np.random.Generator:
    """Generator for bootstrap replicate ``index``; independent of evaluation order."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def _one_replicate(a: np.ndarray, b: np.ndarray, ridge: float, rng: np.random.Generator) -> RocCurve:
    for _ in range(MAX_REDRAWS):
        ia = rng.integers(0, len(a), size=len(a))
        ib = rng.integers(0, len(b), size=len(b))
        oob_a = np.setdiff1d(np.arange(len(a)), ia)
        oob_b = np.setdiff1d(np.arange(len(b)), ib)
        if len(oob_a) and len(oob_b):
            break
    else:
        raise DegenerateError(f"no replicate with out-of-bag points of both classes after {MAX_REDRAWS} draws")
    axis = fisher_lda_axis(a[ia], b[ib], ridge)
    scores = np.r_[a[oob_a] @ axis.direction, b[oob_b] @ axis.direction]
    positive = np.r_[np.ones(len(oob_a), bool), np.zeros(len(oob_b), bool)]
    return roc_curve(scores, positive)


def bootstrap_aucba(ds: Dataset, class_a: int, class_b: int, ridge: float = DEFAULT_RIDGE,
                    B: int = DEFAULT_BOOTSTRAP, seed: int = 0,
                    axis: LinearAxis | None = None) -> BootstrapRocSummary:
    """Observed ROC of the pair's first discriminant axis plus ``B`` bootstrap ROCs.

    Each replicate resamples both classes with replacement (class sizes
    kept), refits the first axis on the resample and scores the out-of-bag
    points of both classes. ``aucba`` is the mean replicate AUC and
    ``aucba_std`` its population standard deviation. Class a is positive.

    ``axis`` may carry the already-fitted full-sample axis to skip a refit.
    """
    if B < 1:
        raise ConfigError(f"bootstrap count must be at least 1, got {B}")
    a = ds.class_points(class_a)
    b = ds.class_points(class_b)
    if len(a) < 2 or len(b) < 2:
        raise DataError("bootstrap needs at least 2 points in each class")
    if axis is None:
        axis = fisher_lda_axis(a, b, ridge)
    observed = roc_curve(np.r_[a @ axis.direction, b @ axis.direction],
                         np.r_[np.ones(len(a), bool), np.zeros(len(b), bool)])
    curves = tuple(_one_replicate(a, b, ridge, replicate_rng(seed, i)) for i in range(B))
    aucs = np.array([c.auc for c in curves])
    return BootstrapRocSummary(observed, curves, float(aucs.mean()), float(aucs.std()))


def confusion_matrix(true_labels: Sequence[int], predicted_labels: Sequence[int], K: int) -> ConfusionMatrix:
    t = np.asarray(true_labels, dtype=np.int64).ravel()
    p = np.asarray(predicted_labels, dtype=np.int64).ravel()
    if t.shape != p.shape:
        raise DataError(f"{len(t)} true labels but {len(p)} predictions")
    for name, v in (("true", t), ("predicted", p)):
        if len(v) and (v.min() < 0 or v.max() >= K):
            raise DataError(f"{name} label out of range [0, {K})")
    counts = np.zeros((K, K), dtype=np.int64)
    np.add.at(counts, (t, p), 1)
    return confusion_from_counts(counts)


def confusion_from_counts(counts) -> ConfusionMatrix:
    """Precision/recall for a ready-made count table (0 for empty rows or columns)."""
    counts = np.asarray(counts, dtype=np.int64)
    if counts.ndim != 2 or counts.shape[0] != counts.shape[1]:
        raise DataError("confusion counts must be a square matrix")
    if (counts < 0).any():
        raise DataError("confusion counts must be nonnegative")
    diag = np.diag(counts).astype(np.float64)
    cols = counts.sum(axis=0)
    rows = counts.sum(axis=1)
    precision = np.divide(diag, cols, out=np.zeros_like(diag), where=cols > 0)
    recall = np.divide(diag, rows, out=np.zeros_like(diag), where=rows > 0)
    return ConfusionMatrix(counts, precision, recall)
