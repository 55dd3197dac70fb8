"""The assembled ClassSPLOM model: per-pair projections and bootstrap
summaries, plus its JSON (de)serialisation."""

from __future__ import annotations

import colorsys
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

import numpy as np

from .data import Dataset
from .errors import DataError
from .evaluation import BootstrapRocSummary, ConfusionMatrix, RocCurve, bootstrap_aucba, confusion_from_counts
from .projection import DEFAULT_RIDGE, LinearAxis, PairProjection, pair_projection

# Qualitative hues for the first ten classes.
DEFAULT_PALETTE = (
    "#1f77b4",  # blue
    "#ff7f0e",  # orange
    "#2ca02c",  # green
    "#d62728",  # red
    "#9467bd",  # purple
    "#8c564b",  # brown
    "#e377c2",  # pink
    "#17becf",  # cyan
    "#bcbd22",  # olive
    "#393b79",  # indigo
)
BACKGROUND_GREY = "#bfbfbf"  # 75% lightness neutral

FORMAT_VERSION = 1


def default_palette(k: int) -> tuple[str, ...]:
    colors = list(DEFAULT_PALETTE[:k])
    i = 0
    while len(colors) < k:
        # Golden-angle hue walk for classes beyond the fixed list.
        h = (0.13 + i * 0.381966) % 1.0
        r, g, b = colorsys.hls_to_rgb(h, 0.45, 0.65)
        c = "#{:02x}{:02x}{:02x}".format(round(r * 255), round(g * 255), round(b * 255))
        if c not in colors and c != BACKGROUND_GREY:
            colors.append(c)
        i += 1
    return tuple(colors)


@dataclass(frozen=True, eq=False)
class PairEntry:
    projection: PairProjection
    summary: BootstrapRocSummary

    @property
    def pair(self) -> tuple[int, int]:
        return self.projection.pair


@dataclass(frozen=True, eq=False)
class ClassSplomModel:
    class_names: tuple[str, ...]
    palette: tuple[str, ...]
    pairs: tuple[PairEntry, ...]
    confusion: ConfusionMatrix | None = None
    config: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        k = len(self.class_names)
        if len(self.palette) != k or len(set(p.lower() for p in self.palette)) != k:
            raise DataError(f"palette must hold {k} distinct colors")
        expected = list(combinations(range(k), 2))
        got = sorted(e.pair for e in self.pairs)
        if got != expected:
            raise DataError("model needs exactly one entry per unordered class pair (a < b)")
        if self.confusion is not None and self.confusion.counts.shape != (k, k):
            raise DataError("confusion matrix shape does not match class count")

    @property
    def K(self) -> int:
        return len(self.class_names)

    def entry(self, a: int, b: int) -> PairEntry:
        a, b = min(a, b), max(a, b)
        for e in self.pairs:
            if e.pair == (a, b):
                return e
        raise KeyError((a, b))


def analyse_pair(ds: Dataset, a: int, b: int, ridge: float, B: int, seed: int) -> PairEntry:
    pp = pair_projection(ds, a, b, ridge)
    # Per-pair seed stream keeps replicates distinct between pairs.
    pair_seed = int(np.random.SeedSequence([seed, a, b]).generate_state(1)[0])
    summary = bootstrap_aucba(ds, a, b, ridge=ridge, B=B, seed=pair_seed, axis=pp.axis1)
    return PairEntry(pp, summary)


def build_model(ds: Dataset, ridge: float = DEFAULT_RIDGE, B: int = 100, seed: int = 0,
                palette=None, confusion: ConfusionMatrix | None = None,
                config: dict[str, Any] | None = None, jobs: int = 1) -> ClassSplomModel:
    """Project and bootstrap every class pair. ``jobs > 1`` fans out over pairs;
    the result does not depend on it."""
    pairs = list(combinations(range(ds.K), 2))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            entries = list(pool.map(lambda p: analyse_pair(ds, p[0], p[1], ridge, B, seed), pairs))
    else:
        entries = [analyse_pair(ds, a, b, ridge, B, seed) for a, b in pairs]
    return ClassSplomModel(
        class_names=ds.class_names,
        palette=tuple(palette) if palette is not None else default_palette(ds.K),
        pairs=tuple(entries),
        confusion=confusion,
        config=dict(config or {}),
    )


def _roc_json(c: RocCurve) -> dict:
    return {"points": c.points.tolist(), "auc": c.auc}


def _roc_from_json(d: dict) -> RocCurve:
    return RocCurve(points=np.array(d["points"], dtype=np.float64).reshape(-1, 2), auc=float(d["auc"]))


def model_to_dict(model: ClassSplomModel) -> dict:
    pairs = []
    for e in model.pairs:
        pp, s = e.projection, e.summary
        pairs.append({
            "class_a": pp.class_a,
            "class_b": pp.class_b,
            "axis1": pp.axis1.direction.tolist(),
            "axis2": pp.axis2.direction.tolist(),
            "coords": pp.coords.tolist(),
            "observed_roc": _roc_json(s.observed),
            "bootstrap_aucs": s.bootstrap_aucs.tolist(),
            "aucba": s.aucba,
            "aucba_std": s.aucba_std,
            "bootstrap_rocs": [c.points.tolist() for c in s.bootstrap_curves],
        })
    out = {
        "format_version": FORMAT_VERSION,
        "classes": list(model.class_names),
        "palette": list(model.palette),
        "labels": model.pairs[0].projection.point_class.tolist() if model.pairs else [],
        "pairs": pairs,
        "confusion": None,
        "config": model.config,
    }
    if model.confusion is not None:
        out["confusion"] = {
            "counts": model.confusion.counts.tolist(),
            "precision": model.confusion.precision.tolist(),
            "recall": model.confusion.recall.tolist(),
        }
    return out


def model_from_dict(d: dict) -> ClassSplomModel:
    try:
        labels = np.array(d["labels"], dtype=np.int64)
        entries = []
        for p in d["pairs"]:
            pp = PairProjection(
                class_a=int(p["class_a"]),
                class_b=int(p["class_b"]),
                axis1=LinearAxis(p["axis1"]),
                axis2=LinearAxis(p["axis2"]),
                coords=np.array(p["coords"], dtype=np.float64).reshape(-1, 2),
                point_class=labels,
            )
            aucs = p["bootstrap_aucs"]
            curves = tuple(RocCurve(np.array(pts, dtype=np.float64).reshape(-1, 2), float(auc))
                           for pts, auc in zip(p["bootstrap_rocs"], aucs))
            summary = BootstrapRocSummary(_roc_from_json(p["observed_roc"]), curves,
                                          float(p["aucba"]), float(p["aucba_std"]))
            entries.append(PairEntry(pp, summary))
        confusion = None
        if d.get("confusion"):
            confusion = confusion_from_counts(d["confusion"]["counts"])
        return ClassSplomModel(tuple(d["classes"]), tuple(d["palette"]), tuple(entries),
                               confusion, dict(d.get("config") or {}))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, DataError):
            raise
        raise DataError(f"malformed model JSON: {exc}") from exc


def model_to_json(model: ClassSplomModel) -> str:
    # json writes floats with repr(), i.e. full double precision.
    return json.dumps(model_to_dict(model), indent=1, allow_nan=False) + "\n"


def export_model_json(model: ClassSplomModel, path) -> None:
    with open(os.fspath(path), "w", encoding="utf-8", newline="\n") as fh:
        fh.write(model_to_json(model))


def load_model_json(path) -> ClassSplomModel:
    try:
        with open(os.fspath(path), encoding="utf-8") as fh:
            d = json.load(fh)
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise DataError(f"{path}: invalid JSON: {exc}") from exc
    return model_from_dict(d)
