"""Command-line entry point.

``classsplom run`` executes ingest -> subsample -> PCA -> pairwise projection
-> bootstrap -> SVG/JSON export. ``classsplom blobs`` writes a synthetic
Gaussian CSV fixture.

Exit status: 0 ok, 1 usage/config, 2 data or I/O, 3 numerical degeneracy.
"""

from __future__ import annotations

import argparse
import csv
import logging
import os
import sys
from dataclasses import asdict, dataclass

import numpy as np

from .data import Dataset, generate_gaussian_blobs, load_csv, subsample_indices, write_csv
from .errors import ClassSplomError, ConfigError, DataError
from .evaluation import DEFAULT_BOOTSTRAP, ConfusionMatrix, confusion_matrix
from .model import build_model, export_model_json
from .projection import DEFAULT_RIDGE, pca_reduce
from .render import DEFAULT_CELL_SIZE, render_classsplom

log = logging.getLogger("classsplom")

SEED_ENV = "CLASSSPLOM_SEED"


@dataclass
class RunConfig:
    input: str
    svg_output: str
    json_output: str
    label_column: str = "label"
    predictions: str | None = None
    per_class: int | None = None
    pca_dims: int | None = None
    ridge: float = DEFAULT_RIDGE
    bootstrap: int = DEFAULT_BOOTSTRAP
    seed: int = 0
    cell_size: float = DEFAULT_CELL_SIZE
    annotate: bool = True
    jobs: int = 1

    def validate(self) -> None:
        if self.bootstrap < 1:
            raise ConfigError("--bootstrap must be at least 1")
        if self.per_class is not None and self.per_class < 2:
            raise ConfigError("--per-class must be at least 2")
        if self.pca_dims is not None and self.pca_dims < 2:
            raise ConfigError("--pca-dims must be at least 2")
        if self.ridge < 0:
            raise ConfigError("--ridge must be nonnegative")
        if self.cell_size <= 0:
            raise ConfigError("--cell-size must be positive")
        if self.jobs < 1:
            raise ConfigError("--jobs must be at least 1")

    def echo(self) -> dict:
        # Paths and parallelism do not affect results; keep them out of the output bytes.
        d = asdict(self)
        for key in ("input", "svg_output", "json_output", "predictions", "jobs"):
            d.pop(key)
        return d


def read_predictions(path, class_names, n: int) -> np.ndarray:
    """One predicted class name per row, in input row order; optional header."""
    try:
        with open(os.fspath(path), newline="", encoding="utf-8") as fh:
            rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror or exc}") from exc
    values = [r[-1].strip() for r in rows]
    index = {name: i for i, name in enumerate(class_names)}
    if values and len(values) == n + 1 and values[0] not in index:
        values = values[1:]
    if len(values) != n:
        raise DataError(f"{path}: {len(values)} predictions for {n} data rows")
    out = np.empty(n, dtype=np.int64)
    for i, v in enumerate(values):
        if v not in index:
            raise DataError(f"{path}: prediction {v!r} on row {i + 1} is not a known class")
        out[i] = index[v]
    return out


def run(config: RunConfig) -> int:
    """Run the full pipeline; raises ClassSplomError subclasses on failure."""
    config.validate()
    ds = load_csv(config.input, config.label_column)
    log.info("loaded %d points, %d dimensions, %d classes", ds.n, ds.D, ds.K)

    confusion: ConfusionMatrix | None = None
    if config.predictions:
        predicted = read_predictions(config.predictions, ds.class_names, ds.n)
        confusion = confusion_matrix(ds.labels, predicted, ds.K)

    if config.per_class is not None:
        ds = ds.subset(subsample_indices(ds.labels, config.per_class, config.seed))
        log.info("subsampled to %d points", ds.n)
    if config.pca_dims is not None:
        if config.pca_dims > min(ds.n - 1, ds.D):
            raise ConfigError(f"--pca-dims {config.pca_dims} exceeds min(n-1, D) = {min(ds.n - 1, ds.D)}")
        ds, _ = pca_reduce(ds, config.pca_dims)
        log.info("reduced to %d principal components", ds.D)

    model = build_model(ds, ridge=config.ridge, B=config.bootstrap, seed=config.seed,
                        confusion=confusion, config=config.echo(), jobs=config.jobs)
    render_classsplom(model, config.cell_size, config.annotate).write(config.svg_output)
    export_model_json(model, config.json_output)
    for e in model.pairs:
        log.info("%s vs %s: AUC=%.3f AUCBA=%.3f±%.3f", ds.class_names[e.pair[0]], ds.class_names[e.pair[1]],
                 e.summary.observed.auc, e.summary.aucba, e.summary.aucba_std)
    return 0


def blobs(args) -> int:
    if args.classes < 2 or args.dim < 2:
        raise ConfigError("--classes and --dim must be at least 2")
    rng = np.random.default_rng(np.random.SeedSequence(args.seed, spawn_key=(1,)))
    means = args.separation * rng.standard_normal((args.classes, args.dim))
    ds: Dataset = generate_gaussian_blobs(means, args.scale, args.per_class, args.seed)
    write_csv(ds, args.output)
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="classsplom", description="Pairwise class-separation scatterplot matrix.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="compute and render a ClassSPLOM")
    r.add_argument("input", help="CSV file with feature columns and a label column")
    r.add_argument("--label-column", default="label", help="label column name or 0-based index (default: label)")
    r.add_argument("--predictions", help="CSV with one predicted class name per input row")
    r.add_argument("--per-class", type=int, help="subsample at most this many points per class")
    r.add_argument("--pca-dims", type=int, help="reduce to this many principal components first")
    r.add_argument("--ridge", type=float, default=DEFAULT_RIDGE)
    r.add_argument("--bootstrap", type=int, default=DEFAULT_BOOTSTRAP, help="bootstrap replicates (default: 100)")
    r.add_argument("--seed", type=int, help=f"random seed (default: ${SEED_ENV} or 0)")
    r.add_argument("--svg", default="classsplom.svg", help="output SVG path")
    r.add_argument("--json", default="classsplom.json", help="output JSON path")
    r.add_argument("--cell-size", type=float, default=DEFAULT_CELL_SIZE)
    r.add_argument("--no-annotate", action="store_true", help="omit AUC/AUCBA text in ROC cells")
    r.add_argument("--jobs", type=int, default=1, help="process class pairs in parallel")

    b = sub.add_parser("blobs", help="write a synthetic Gaussian dataset as CSV")
    b.add_argument("output")
    b.add_argument("--classes", type=int, default=5)
    b.add_argument("--dim", type=int, default=20)
    b.add_argument("--per-class", type=int, default=100)
    b.add_argument("--separation", type=float, default=0.4, help="spread of class means")
    b.add_argument("--scale", type=float, default=1.0, help="within-class standard deviation")
    b.add_argument("--seed", type=int, default=0)
    return parser


def _resolve_seed(flag: int | None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get(SEED_ENV)
    if env is None or env == "":
        return 0
    try:
        return int(env)
    except ValueError:
        raise ConfigError(f"${SEED_ENV} must be an integer, got {env!r}") from None


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        if args.command == "blobs":
            return blobs(args)
        config = RunConfig(
            input=args.input, svg_output=args.svg, json_output=args.json,
            label_column=args.label_column, predictions=args.predictions,
            per_class=args.per_class, pca_dims=args.pca_dims, ridge=args.ridge,
            bootstrap=args.bootstrap, seed=_resolve_seed(args.seed), cell_size=args.cell_size,
            annotate=not args.no_annotate, jobs=args.jobs,
        )
        return run(config)
    except ClassSplomError as exc:
        print(f"classsplom: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"classsplom: I/O error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
