"""Pairwise Fisher-discriminant class-separation views for multiclass data."""

from .data import Dataset, generate_gaussian_blobs, load_csv, stratified_subsample, write_csv
from .errors import ClassSplomError, ConfigError, DataError, DegenerateError
from .evaluation import (
    BootstrapRocSummary,
    ConfusionMatrix,
    RocCurve,
    auc_pair_count_oracle,
    bootstrap_aucba,
    confusion_matrix,
    roc_curve,
)
from .model import ClassSplomModel, PairEntry, build_model, export_model_json, load_model_json
from .projection import LinearAxis, PairProjection, PcaModel, deflate, fisher_lda_axis, pair_projection, pca_reduce
from .render import SvgDocument, render_classsplom, render_roc_cell, render_scatter_cell

__version__ = "0.1.0"
