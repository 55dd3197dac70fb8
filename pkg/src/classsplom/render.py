"""Standalone SVG rendering of a ClassSPLOM.

Layout for K classes is a K x K grid. The diagonal holds one disc per class,
the lower triangle the discriminant scatterplots and the upper triangle the
ROC plots, so that cell (i, j) and its mirror (j, i) show the same pair.
Every cell group carries ``data-row``, ``data-col`` and ``data-kind``
attributes, and off-diagonal cells a ``data-pair="a-b"`` identifier.
"""

from __future__ import annotations

import os
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from xml.sax.saxutils import escape, quoteattr

import numpy as np

from .evaluation import BootstrapRocSummary
from .model import BACKGROUND_GREY, ClassSplomModel
from .projection import PairProjection

DEFAULT_CELL_SIZE = 160
POINT_RADIUS = 2
BOOTSTRAP_STROKE = "#ff0000"
BOOTSTRAP_OPACITY = 0.1
OBSERVED_STROKE = "#0000ff"
BORDER = "#808080"
SCATTER_PADDING = 0.05


@dataclass(frozen=True)
class SvgDocument:
    text: str
    width: int
    height: int

    def write(self, path) -> None:
        with open(os.fspath(path), "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.text)

    def parse(self) -> ET.Element:
        return ET.fromstring(self.text.encode("utf-8"))


def _num(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _margin(cell_size: float) -> float:
    return max(2.0, 0.06 * cell_size)


def _border(cell_size: float) -> str:
    return (f'<rect x="0.5" y="0.5" width="{_num(cell_size - 1)}" height="{_num(cell_size - 1)}" '
            f'fill="none" stroke="{BORDER}" stroke-width="1"/>')


def _scatter_transform(pp: PairProjection, box: float):
    """Shared-scale mapping from projection coordinates to box pixels."""
    pair_pts = pp.coords[pp.pair_mask()]
    center = pair_pts.mean(axis=0) if len(pair_pts) else pp.coords.mean(axis=0)
    reach = np.abs(pair_pts - center).max() if len(pair_pts) else 0.0
    if not np.isfinite(reach) or reach <= 0:
        reach = 1.0
    scale = (box / 2) / (reach * (1 + SCATTER_PADDING))
    return center, scale


def render_scatter_cell(pp: PairProjection, palette, cell_size: float = DEFAULT_CELL_SIZE,
                        clip_id: str = "clip") -> str:
    """Discriminant scatterplot fragment in cell-local pixel coordinates.

    Both axes use a single scale factor inside a square box, centered on
    the pair classes and sized to hold them with 5% padding. Background
    classes are drawn grey first, then class b, then class a; points falling
    outside the box are clipped.
    """
    m = _margin(cell_size)
    box = cell_size - 2 * m
    center, scale = _scatter_transform(pp, box)
    px = m + box / 2 + scale * (pp.coords[:, 0] - center[0])
    py = m + box / 2 - scale * (pp.coords[:, 1] - center[1])

    out = [_border(cell_size),
           f'<clipPath id={quoteattr(clip_id)}><rect x="{_num(m)}" y="{_num(m)}" '
           f'width="{_num(box)}" height="{_num(box)}"/></clipPath>',
           f'<g class="plot" clip-path="url(#{escape(clip_id)})">']

    def group(mask, fill, cls, data_class=None):
        attr = f' data-class="{data_class}"' if data_class is not None else ""
        out.append(f'<g class="{cls}"{attr}>')
        for x, y in zip(px[mask], py[mask]):
            out.append(f'<circle cx="{_num(x)}" cy="{_num(y)}" r="{POINT_RADIUS}" fill="{fill}"/>')
        out.append("</g>")

    group(~pp.pair_mask(), BACKGROUND_GREY, "points background")
    group(pp.point_class == pp.class_b, palette[pp.class_b], "points pair", pp.class_b)
    group(pp.point_class == pp.class_a, palette[pp.class_a], "points pair", pp.class_a)
    out.append("</g>")
    return "\n".join(out)


def _polyline(points: np.ndarray, m: float, box: float) -> str:
    xs = m + points[:, 0] * box
    ys = m + (1 - points[:, 1]) * box
    return " ".join(f"{_num(x)},{_num(y)}" for x, y in zip(xs, ys))


def roc_annotation(summary: BootstrapRocSummary) -> str:
    return f"AUC={summary.observed.auc:.2f}  AUCBA={summary.aucba:.2f}±{summary.aucba_std:.2f}"


def render_roc_cell(summary: BootstrapRocSummary, cell_size: float = DEFAULT_CELL_SIZE,
                    annotate: bool = True) -> str:
    """ROC plot fragment: translucent red bootstrap curves under the opaque
    blue observed curve, optionally labelled with AUC and AUCBA."""
    m = _margin(cell_size)
    box = cell_size - 2 * m
    out = [_border(cell_size),
           f'<line class="chance" x1="{_num(m)}" y1="{_num(m + box)}" x2="{_num(m + box)}" y2="{_num(m)}" '
           f'stroke="{BORDER}" stroke-width="0.5" stroke-dasharray="2,2"/>']
    for c in summary.bootstrap_curves:
        out.append(f'<polyline class="roc-bootstrap" points="{_polyline(c.points, m, box)}" fill="none" '
                   f'stroke="{BOOTSTRAP_STROKE}" stroke-width="1" opacity="{BOOTSTRAP_OPACITY}"/>')
    out.append(f'<polyline class="roc-observed" points="{_polyline(summary.observed.points, m, box)}" '
               f'fill="none" stroke="{OBSERVED_STROKE}" stroke-width="1.5" opacity="1"/>')
    if annotate:
        size = max(6.0, 0.056 * cell_size)
        out.append(f'<text class="roc-label" x="{_num(m + box)}" y="{_num(m + box - 0.4 * size)}" '
                   f'font-size="{_num(size)}" text-anchor="end" xml:space="preserve">'
                   f"{escape(roc_annotation(summary))}</text>")
    return "\n".join(out)


def _text_color(fill: str) -> str:
    if len(fill) == 7 and fill.startswith("#"):
        r, g, b = (int(fill[i:i + 2], 16) / 255 for i in (1, 3, 5))
        if 0.299 * r + 0.587 * g + 0.114 * b > 0.6:
            return "#000000"
    return "#ffffff"


def render_disc_cell(name: str, color: str, cell_size: float = DEFAULT_CELL_SIZE) -> str:
    c = cell_size / 2
    size = max(8.0, 0.12 * cell_size)
    return "\n".join([
        f'<circle class="disc" cx="{_num(c)}" cy="{_num(c)}" r="{_num(0.4 * cell_size)}" fill="{color}"/>',
        f'<text class="disc-label" x="{_num(c)}" y="{_num(c)}" font-size="{_num(size)}" text-anchor="middle" '
        f'dominant-baseline="central" fill="{_text_color(color)}">{escape(name)}</text>',
    ])


def render_classsplom(model: ClassSplomModel, cell_size: float = DEFAULT_CELL_SIZE,
                      annotate: bool = True) -> SvgDocument:
    if cell_size <= 0:
        raise ValueError("cell_size must be positive")
    k = model.K
    side = int(round(k * cell_size))
    parts = [
        '<?xml version="1.0" encoding="UTF-8" standalone="yes"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{side}" height="{side}" '
        f'viewBox="0 0 {side} {side}">',
        '<style>text { font-family: Helvetica, Arial, sans-serif; }</style>',
        f'<rect class="background" x="0" y="0" width="{side}" height="{side}" fill="#ffffff"/>',
    ]
    for i in range(k):
        for j in range(k):
            head = (f'<g class="cell" data-row="{i}" data-col="{j}" '
                    f'transform="translate({_num(j * cell_size)},{_num(i * cell_size)})"')
            if i == j:
                parts.append(f'{head} data-kind="disc" data-class="{i}">')
                parts.append(render_disc_cell(model.class_names[i], model.palette[i], cell_size))
            elif i > j:
                entry = model.entry(j, i)
                parts.append(f'{head} data-kind="scatter" data-pair="{j}-{i}">')
                parts.append(render_scatter_cell(entry.projection, model.palette, cell_size,
                                                 clip_id=f"clip-{i}-{j}"))
            else:
                entry = model.entry(i, j)
                parts.append(f'{head} data-kind="roc" data-pair="{i}-{j}">')
                parts.append(render_roc_cell(entry.summary, cell_size, annotate))
            parts.append("</g>")
    parts.append("</svg>")
    return SvgDocument("\n".join(parts) + "\n", side, side)
