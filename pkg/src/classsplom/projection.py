"""PCA reduction and the pairwise two-axis Fisher discriminant projection.

For a class pair (a, b) the first axis is the two-class Fisher direction
between a and b. Every point is then deflated along that axis and the second
axis is the Fisher direction separating a ∪ b from all other classes (or,
with only two classes, the leading principal direction of the deflated data).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .errors import ConfigError, DegenerateError

DEFAULT_RIDGE = 1e-6


@dataclass(frozen=True, eq=False)
class PcaModel:
    mean: np.ndarray
    components: np.ndarray  # k x D, orthonormal rows
    explained_variance: np.ndarray

    def transform(self, x) -> np.ndarray:
        return (np.asarray(x, dtype=np.float64) - self.mean) @ self.components.T

    def inverse_transform(self, z) -> np.ndarray:
        return np.asarray(z, dtype=np.float64) @ self.components + self.mean


@dataclass(frozen=True, eq=False)
class LinearAxis:
    direction: np.ndarray

    def __post_init__(self):
        w = np.array(self.direction, dtype=np.float64).ravel()
        norm = np.linalg.norm(w)
        if not np.isfinite(norm) or norm == 0.0:
            raise DegenerateError("axis direction must be a finite nonzero vector")
        if abs(norm - 1.0) > 1e-10:
            w = w / norm
        w.setflags(write=False)
        object.__setattr__(self, "direction", w)

    def project(self, x) -> np.ndarray:
        return np.asarray(x, dtype=np.float64) @ self.direction


@dataclass(frozen=True, eq=False)
class PairProjection:
    """Both discriminant axes for one class pair plus the 2-D coordinates of
    every point (pair classes and background classes alike)."""

    class_a: int
    class_b: int
    axis1: LinearAxis
    axis2: LinearAxis
    coords: np.ndarray  # n x 2
    point_class: np.ndarray

    @property
    def pair(self) -> tuple[int, int]:
        return self.class_a, self.class_b

    def pair_mask(self) -> np.ndarray:
        return (self.point_class == self.class_a) | (self.point_class == self.class_b)


def _fix_sign_largest_positive(v: np.ndarray) -> np.ndarray:
    i = int(np.argmax(np.abs(v)))
    return -v if v[i] < 0 else v


def pca_reduce(ds: Dataset, k: int) -> tuple[Dataset, PcaModel]:
    """Project the centered data onto its top-``k`` principal directions.

    Components come from the SVD of the centered data matrix; each one is
    oriented so that its largest-magnitude entry is positive.
    """
    n, d = ds.features.shape
    if not 1 <= k <= min(n - 1, d):
        raise ConfigError(f"PCA dimension {k} outside [1, {min(n - 1, d)}]")
    mean = ds.features.mean(axis=0)
    centered = ds.features - mean
    _, s, vt = np.linalg.svd(centered, full_matrices=False)
    if s[0] <= np.finfo(float).eps * max(n, d) * max(1.0, np.abs(ds.features).max()):
        raise DegenerateError("zero-variance dataset: all points are identical")
    comps = np.array([_fix_sign_largest_positive(v) for v in vt[:k]])
    var = s[:k] ** 2 / (n - 1)
    model = PcaModel(mean=mean, components=comps, explained_variance=var)
    return ds.with_features(centered @ comps.T), model


def within_class_scatter(points_a, points_b) -> np.ndarray:
    """Pooled sum of per-class centered outer products."""
    ca = points_a - points_a.mean(axis=0)
    cb = points_b - points_b.mean(axis=0)
    return ca.T @ ca + cb.T @ cb


def fisher_ratio(direction, points_a, points_b) -> float:
    """Between-class over within-class variance of the projection onto ``direction``."""
    w = np.asarray(direction, dtype=np.float64)
    points_a = np.asarray(points_a, dtype=np.float64)
    points_b = np.asarray(points_b, dtype=np.float64)
    gap = (points_a.mean(axis=0) - points_b.mean(axis=0)) @ w
    spread = w @ within_class_scatter(points_a, points_b) @ w
    return float(gap * gap / spread)


def fisher_lda_axis(points_a, points_b, ridge: float = DEFAULT_RIDGE) -> LinearAxis:
    """Two-class Fisher discriminant direction.

    Solves ``(S_w + ridge * tr(S_w) / D * I) w = mean_a - mean_b`` and
    normalises ``w``, oriented so that class a projects above class b.
    A singular system falls back to the minimum-norm least-squares
    solution; when ``S_w`` vanishes entirely the mean difference is used.

    Raises
    ------
    DegenerateError
        If no discriminating direction exists (e.g. identical class means).
    """
    a = np.atleast_2d(np.asarray(points_a, dtype=np.float64))
    b = np.atleast_2d(np.asarray(points_b, dtype=np.float64))
    if len(a) < 1 or len(b) < 1:
        raise DegenerateError("need at least one point per class")
    if ridge < 0:
        raise ConfigError(f"ridge must be nonnegative, got {ridge}")
    d = a.shape[1]
    diff = a.mean(axis=0) - b.mean(axis=0)
    sw = within_class_scatter(a, b)
    trace = np.trace(sw)
    scale = max(np.abs(a).max(), np.abs(b).max(), 1e-300)
    if np.linalg.norm(diff) <= 1e-14 * scale:
        raise DegenerateError("class means coincide: no discriminating direction")

    if trace <= 1e-14 * scale * scale:
        w = diff.copy()
    else:
        system = sw + (ridge * trace / d) * np.eye(d)
        try:
            if np.linalg.cond(system) > 1e14:
                raise np.linalg.LinAlgError
            w = np.linalg.solve(system, diff)
        except np.linalg.LinAlgError:
            w = np.linalg.lstsq(system, diff, rcond=None)[0]

    norm = np.linalg.norm(w)
    if not np.isfinite(norm) or norm == 0.0:
        raise DegenerateError("Fisher discriminant is undefined for these classes")
    w = w / norm
    if diff @ w < 0:
        w = -w
    return LinearAxis(w)


def deflate(points, axis: LinearAxis) -> np.ndarray:
    """Remove each point's component along ``axis``."""
    x = np.asarray(points, dtype=np.float64)
    w = axis.direction
    return x - np.outer(x @ w, w)


def _leading_direction(x: np.ndarray) -> np.ndarray:
    centered = x - x.mean(axis=0)
    _, s, vt = np.linalg.svd(centered, full_matrices=False)
    if s[0] <= 1e-10 * max(1.0, np.abs(x).max()) * np.sqrt(len(x)):
        raise DegenerateError("no orthogonal variance left for the second axis")
    return _fix_sign_largest_positive(vt[0])


def pair_projection(ds: Dataset, class_a: int, class_b: int, ridge: float = DEFAULT_RIDGE) -> PairProjection:
    if class_a == class_b:
        raise ConfigError("a pair needs two distinct classes")
    for c in (class_a, class_b):
        if not 0 <= c < ds.K:
            raise ConfigError(f"class index {c} out of range")
    x = ds.features
    in_a = ds.labels == class_a
    in_b = ds.labels == class_b
    axis1 = fisher_lda_axis(x[in_a], x[in_b], ridge)

    deflated = deflate(x, axis1)
    in_pair = in_a | in_b
    if ds.K > 2:
        w2 = fisher_lda_axis(deflated[in_pair], deflated[~in_pair], ridge).direction
    else:
        w2 = _leading_direction(deflated[in_pair])
    # Re-orthogonalise: the near-singular direction along axis1 amplifies rounding.
    w2 = w2 - (w2 @ axis1.direction) * axis1.direction
    if np.linalg.norm(w2) < 1e-8:
        raise DegenerateError("second axis collapsed onto the first")
    axis2 = LinearAxis(w2)

    coords = np.column_stack([x @ axis1.direction, x @ axis2.direction])
    return PairProjection(class_a, class_b, axis1, axis2, coords, ds.labels.copy())
