"""Command-line entry point for the full HOM-kernel experiment.

Subcommands mirror the experimental narrative: generate the blob data,
train the free weights, export a dip curve, classify unseen data, and
report confusion/score artifacts with figures.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical-domain
error.
"""

import argparse
import csv
import json
import sys
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import data as data_mod
from . import evaluation, interference, plots, training
from .data import BlobSpec, Dataset, LABELS
from .encoding import FeatureMap, encode
from .mmd import class_means, classify, classify_single_mean
from .errors import (
    DataError,
    DatasetFormatError,
    HomKernelError,
    NumericalDomainError,
)
from .modes import ModeBasis, TimeGrid

_FLOAT_FMT = "{:.17g}"


class UsageError(HomKernelError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    """Flat experiment configuration; every key overridable by a flag."""

    blob_centers: tuple = data_mod.DEFAULT_BLOB_SPEC.centers
    blob_grouping: tuple = data_mod.DEFAULT_BLOB_SPEC.grouping
    blob_sigma: float = data_mod.DEFAULT_BLOB_SPEC.sigma
    points_per_blob: int = data_mod.DEFAULT_BLOB_SPEC.points_per_blob
    data_seed: int = data_mod.DEFAULT_BLOB_SPEC.seed
    test_seed: int = data_mod.DEFAULT_TEST_SEED
    feature_map: str = "polynomial-degree-2"
    basis_order: int = 3
    grid_half_width: float = 12.0
    grid_points: int = 4001
    iterations: int = 1000
    fd_step: float = 1e-4
    train_seed: int = 1
    dip_half_width: float = 5.0
    dip_points: int = 201
    shots: int = 0
    output: str = "out"

    @classmethod
    def from_file(cls, path) -> "ExperimentConfig":
        with open(path) as fh:
            raw = json.load(fh)
        known = set(cls.__dataclass_fields__)
        unknown = set(raw) - known
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        if "blob_centers" in raw:
            raw["blob_centers"] = tuple(tuple(c) for c in raw["blob_centers"])
        if "blob_grouping" in raw:
            raw["blob_grouping"] = tuple(raw["blob_grouping"])
        return cls(**raw)

    def blob_spec(self) -> BlobSpec:
        return BlobSpec(
            centers=self.blob_centers,
            grouping=self.blob_grouping,
            sigma=self.blob_sigma,
            points_per_blob=self.points_per_blob,
            seed=self.data_seed,
        )

    def fmap(self) -> FeatureMap:
        if self.feature_map == "polynomial-degree-2":
            fmap = FeatureMap.polynomial_degree_2()
        elif self.feature_map == "identity":
            fmap = FeatureMap.identity(self.basis_order)
        else:
            raise UsageError(f"unknown feature map {self.feature_map!r}")
        if fmap.output_dim != self.basis_order:
            raise UsageError(
                f"basis order {self.basis_order} does not match feature-map "
                f"output dimension {fmap.output_dim}"
            )
        return fmap

    def basis(self) -> ModeBasis:
        grid = TimeGrid(-self.grid_half_width, self.grid_half_width,
                        self.grid_points)
        return ModeBasis(order=self.basis_order, grid=grid)

    def train_config(self) -> training.TrainConfig:
        return training.TrainConfig(
            iterations=self.iterations,
            fd_step=self.fd_step,
            seed=self.train_seed,
        )

    def delays(self) -> np.ndarray:
        return np.linspace(-self.dip_half_width, self.dip_half_width,
                           self.dip_points)

    def out_dir(self) -> Path:
        path = Path(self.output)
        path.mkdir(parents=True, exist_ok=True)
        return path


def _load_config(args) -> ExperimentConfig:
    config = (
        ExperimentConfig.from_file(args.config)
        if args.config
        else ExperimentConfig()
    )
    overrides = {}
    if getattr(args, "seed", None) is not None:
        overrides["train_seed"] = args.seed
    if getattr(args, "iterations", None) is not None:
        overrides["iterations"] = args.iterations
    if getattr(args, "output", None) is not None:
        overrides["output"] = args.output
    if getattr(args, "shots", None) is not None:
        overrides["shots"] = args.shots
    return replace(config, **overrides) if overrides else config


# ---------------------------------------------------------------- weights I/O

def write_weights(path, final: np.ndarray, best: np.ndarray) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["which"] + [f"w_{i}" for i in range(len(final))])
        writer.writerow(["final"] + [_FLOAT_FMT.format(w) for w in final])
        writer.writerow(["best"] + [_FLOAT_FMT.format(w) for w in best])


def read_weights(path, which: str = "best") -> np.ndarray:
    with open(path, newline="") as fh:
        rows = {row[0]: row[1:] for row in csv.reader(fh) if row}
    if which not in rows:
        raise DatasetFormatError(f"{path}: no {which!r} weight row")
    return np.array([float(v) for v in rows[which]])


# ----------------------------------------------------------------- subcommands

def cmd_generate(args) -> int:
    config = _load_config(args)
    out = config.out_dir()
    spec = config.blob_spec()
    data_mod.write_dataset(data_mod.generate_blobs(spec), out / "train.csv")
    data_mod.write_dataset(
        data_mod.generate_test_set(spec, config.test_seed), out / "test.csv"
    )
    print(f"wrote {out / 'train.csv'} and {out / 'test.csv'}")
    return 0


def cmd_train(args) -> int:
    config = _load_config(args)
    out = config.out_dir()
    train_data = data_mod.read_dataset(out / "train.csv")
    fmap = config.fmap()
    best, trace = training.train(train_data, fmap, config.train_config())
    write_weights(out / "weights.csv", final=trace.weights[-1], best=best)
    trace.to_csv(out / "trace.csv")
    plots.trace_figure(trace, out / "trace.png")
    print(f"final MMD: {trace.costs[-1]:.6f}  best MMD: {max(trace.costs):.6f}")
    return 0


def _weights_for(args, config, fmap) -> np.ndarray:
    if getattr(args, "untrained", False):
        return np.ones(fmap.output_dim)
    return read_weights(config.out_dir() / "weights.csv", which="best")


def cmd_dip(args) -> int:
    config = _load_config(args)
    out = config.out_dir()
    fmap = config.fmap()
    basis = config.basis()
    weights = _weights_for(args, config, fmap)
    train_data = data_mod.read_dataset(out / "train.csv")
    means = class_means(train_data, fmap, weights)
    if args.pair == "means":
        a, b = means.mu_p, means.mu_q
    else:
        test_data = data_mod.read_dataset(out / "test.csv")
        if not 0 <= args.index < len(test_data):
            raise UsageError(f"--index {args.index} out of range")
        a = encode(test_data.features[args.index], fmap, weights)
        b = means.mu_q
    curve = interference.dip_curve(a, b, basis, config.delays())
    csv_path = out / args.out
    curve.to_csv(csv_path)
    name = "untrained" if getattr(args, "untrained", False) else "trained"
    plots.dip_figure({name: curve}, csv_path.with_suffix(".png"))
    print(f"wrote {csv_path} (min CC {curve.cc.min():.4f})")
    return 0


def _make_shot_kernel(n_shots: int, seed_base: int):
    """Kernel estimator from finite-shot coincidence sampling.

    Each evaluation consumes the next seed so repeated runs are
    deterministic for an identical call sequence.
    """
    counter = {"n": 0}

    def shot_kernel(a, b) -> float:
        seed = seed_base + counter["n"]
        counter["n"] += 1
        record = interference.sample_coincidences(a, b, n_shots, seed)
        return 1.0 - record.estimate

    return shot_kernel


def cmd_classify(args) -> int:
    config = _load_config(args)
    out = config.out_dir()
    fmap = config.fmap()
    weights = _weights_for(args, config, fmap)
    train_data = data_mod.read_dataset(out / "train.csv")
    means = class_means(train_data, fmap, weights)
    input_data = data_mod.read_dataset(args.input)

    kernel_fn = interference.kernel
    if config.shots:
        kernel_fn = _make_shot_kernel(config.shots, seed_base=config.train_seed)
    calibration = interference.kernel(means.mu_p, means.mu_q)

    rows = []
    for features, true_label in zip(input_data.features, input_data.labels):
        try:
            if args.single_mean:
                result = classify_single_mean(
                    features, means.mu_q, calibration, fmap, weights,
                    kernel_fn=kernel_fn,
                )
            else:
                result = classify(features, means, fmap, weights,
                                      kernel_fn=kernel_fn)
            rows.append((features, _FLOAT_FMT.format(result.score),
                         result.label, true_label))
        except NumericalDomainError:
            rows.append((features, "", "unclassifiable", true_label))

    pred_path = out / args.out
    with open(pred_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x1", "x2", "score", "label", "true_label"])
        for features, score, label, true_label in rows:
            writer.writerow([
                _FLOAT_FMT.format(features[0]), _FLOAT_FMT.format(features[1]),
                score, label, true_label,
            ])
    classified = sum(1 for row in rows if row[2] in LABELS)
    correct = sum(1 for row in rows if row[2] == row[3])
    if classified:
        print(f"accuracy: {correct / classified:.4f} on {classified} points")
    print(f"wrote {pred_path}")
    return 0


def _read_predictions(path):
    matrix_counts = np.zeros((2, 2), dtype=int)
    scores = evaluation.ScoreDistribution()
    unclassifiable = 0
    index = {label: i for i, label in enumerate(LABELS)}
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["x1", "x2", "score", "label", "true_label"]:
            raise DatasetFormatError(f"{path}: not a predictions file")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 5:
                raise DatasetFormatError(f"{path}:{lineno}: expected 5 fields")
            _, _, score, label, true_label = row
            if true_label not in LABELS:
                raise DatasetFormatError(f"{path}:{lineno}: bad true label")
            if label not in LABELS:
                unclassifiable += 1
                continue
            matrix_counts[index[label], index[true_label]] += 1
            scores.add(true_label, float(score))
    matrix = evaluation.ConfusionMatrix(matrix_counts)
    return matrix, scores, unclassifiable


def cmd_report(args) -> int:
    config = _load_config(args)
    out = config.out_dir()
    prediction_files = args.predictions or [str(out / "predictions.csv")]
    for path in prediction_files:
        path = Path(path)
        matrix, scores, unclassifiable = _read_predictions(path)
        suffix = "" if path.stem == "predictions" else f"_{path.stem}"
        text = evaluation.render_report(
            matrix, scores, matrix.accuracy, out_dir=out, suffix=suffix
        )
        plots.confusion_figure(matrix, out / f"confusion{suffix}.png",
                               title=f"confusion ({path.stem})")
        plots.score_violin_figure(scores, out / f"scores{suffix}.png",
                                  title=f"scores ({path.stem})")
        print(f"== {path} ==")
        print(text, end="")
        if unclassifiable:
            print(f"unclassifiable rows: {unclassifiable}")
    return 0


# ----------------------------------------------------------------- entry point

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="homkernel",
                     description="HOM-interference quantum kernel experiment")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", help="JSON experiment config file")
        p.add_argument("--output", help="output directory (default: out)")
        p.add_argument("--seed", type=int, help="training seed override")
        p.add_argument("--iterations", type=int, help="SGD iteration override")

    p = sub.add_parser("generate", help="write train.csv and test.csv")
    add_common(p)
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("train", help="train free weights by scheduled SGD")
    add_common(p)
    p.set_defaults(fn=cmd_train)

    p = sub.add_parser("dip", help="export a HOM dip curve")
    add_common(p)
    p.add_argument("--pair", choices=["means", "point"], default="means")
    p.add_argument("--index", type=int, default=0,
                   help="test row for --pair point")
    p.add_argument("--untrained", action="store_true",
                   help="use unit weights instead of trained ones")
    p.add_argument("--out", default="dip.csv", help="output CSV name")
    p.set_defaults(fn=cmd_dip)

    p = sub.add_parser("classify", help="classify a dataset CSV")
    add_common(p)
    p.add_argument("input", help="input dataset CSV (F1,F2,label)")
    p.add_argument("--single-mean", action="store_true", dest="single_mean",
                   help="use the calibrated single-mean rule")
    p.add_argument("--shots", type=int,
                   help="replace exact kernels with sampled estimates")
    p.add_argument("--untrained", action="store_true",
                   help="use unit weights instead of trained ones")
    p.add_argument("--out", default="predictions.csv", help="output CSV name")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("report", help="emit confusion/score artifacts")
    add_common(p)
    p.add_argument("--predictions", action="append",
                   help="predictions CSV (repeatable)")
    p.set_defaults(fn=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (DataError, FileNotFoundError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except NumericalDomainError as exc:
        print(f"numerical domain error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
