"""Classification quality reporting.

Confusion matrices are indexed (predicted, true) over the labels (P, Q)
and rendered with column-normalized percentages, i.e. per true class.
Degenerate (unclassifiable) points are excluded from the matrix and
counted separately.
"""

import csv
from dataclasses import dataclass, field
from io import StringIO
from pathlib import Path

import numpy as np

from .data import LABELS
from .errors import DegenerateEncodingError

_IDX = {label: i for i, label in enumerate(LABELS)}


@dataclass(frozen=True)
class ConfusionMatrix:
    """2x2 counts, rows predicted, columns true."""

    counts: np.ndarray

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=int)
        object.__setattr__(self, "counts", counts)
        if counts.shape != (2, 2) or np.any(counts < 0):
            raise ValueError("counts must be a nonnegative 2x2 matrix")

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def accuracy(self) -> float:
        return float(np.trace(self.counts)) / self.total if self.total else 0.0

    def percent(self, predicted: str, true: str) -> float:
        """Column-normalized percentage for one cell."""
        column = self.counts[:, _IDX[true]].sum()
        if column == 0:
            return 0.0
        return 100.0 * self.counts[_IDX[predicted], _IDX[true]] / column


@dataclass
class ScoreDistribution:
    """Classification scores keyed by true label."""

    by_true: dict = field(default_factory=lambda: {label: [] for label in LABELS})

    def add(self, true_label: str, score: float):
        self.by_true[true_label].append(score)

    def size(self) -> int:
        return sum(len(v) for v in self.by_true.values())


@dataclass(frozen=True)
class EvaluationResult:
    matrix: ConfusionMatrix
    scores: ScoreDistribution
    accuracy: float
    unclassifiable: int


def evaluate(dataset, classifier) -> EvaluationResult:
    """Apply a classifier row-wise and tally the outcome.

    `classifier` maps a feature vector to a Classification; rows that
    raise DegenerateEncodingError are counted as unclassifiable and
    excluded from the matrix.
    """
    if len(dataset) == 0:
        raise ValueError("cannot evaluate an empty dataset")
    counts = np.zeros((2, 2), dtype=int)
    scores = ScoreDistribution()
    unclassifiable = 0
    for features, true_label in zip(dataset.features, dataset.labels):
        try:
            result = classifier(features)
        except DegenerateEncodingError:
            unclassifiable += 1
            continue
        counts[_IDX[result.label], _IDX[true_label]] += 1
        scores.add(true_label, result.score)
    matrix = ConfusionMatrix(counts)
    return EvaluationResult(
        matrix=matrix,
        scores=scores,
        accuracy=matrix.accuracy,
        unclassifiable=unclassifiable,
    )


def render_report(matrix: ConfusionMatrix, scores: ScoreDistribution,
                  accuracy: float, out_dir=None, suffix: str = "") -> str:
    """Human-readable summary plus optional CSV artifacts.

    When `out_dir` is given, writes `confusion{suffix}.csv` (header
    predicted,true,count,percent) and `scores{suffix}.csv` (header
    true_label,score) into it.
    """
    text = StringIO()
    text.write(f"accuracy: {accuracy:.4f}  (n = {matrix.total})\n")
    text.write("confusion (percent of true class):\n")
    text.write("  predicted\\true " + "".join(f"{t:>10}" for t in LABELS) + "\n")
    for predicted in LABELS:
        cells = "".join(
            f"{matrix.percent(predicted, t):9.2f}%" for t in LABELS
        )
        text.write(f"  {predicted:>14} {cells}\n")
    for label in LABELS:
        values = scores.by_true[label]
        if values:
            text.write(
                f"scores[{label}]: n={len(values)} "
                f"mean={np.mean(values):+.4f} min={min(values):+.4f} "
                f"max={max(values):+.4f}\n"
            )
        else:
            text.write(f"scores[{label}]: empty\n")

    if out_dir is not None:
        out_dir = Path(out_dir)
        _write_confusion_csv(matrix, out_dir / f"confusion{suffix}.csv")
        _write_scores_csv(scores, out_dir / f"scores{suffix}.csv")
    return text.getvalue()


def _write_confusion_csv(matrix: ConfusionMatrix, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["predicted", "true", "count", "percent"])
        for predicted in LABELS:
            for true in LABELS:
                writer.writerow([
                    predicted,
                    true,
                    int(matrix.counts[_IDX[predicted], _IDX[true]]),
                    f"{matrix.percent(predicted, true):.17g}",
                ])


def _write_scores_csv(scores: ScoreDistribution, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["true_label", "score"])
        for label in LABELS:
            for score in scores.by_true[label]:
                writer.writerow([label, f"{score:.17g}"])
