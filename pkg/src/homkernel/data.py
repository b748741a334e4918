"""Synthetic blob data for the reference experiment, plus CSV I/O.

The default layout places four isotropic Gaussian blobs in an
anisotropic XOR arrangement: centers (+-8, +-0.9) with the diagonal
pairs sharing a class.  Both class means sit at the origin, so no
hyperplane separates the classes in the raw feature plane, while the
sign of F1 * F2 separates them almost perfectly after the degree-2 map.
The strong anisotropy keeps the unweighted class means nearly parallel
(small initial MMD) yet leaves the classes polynomially separable.
"""

import csv
from dataclasses import dataclass, replace

import numpy as np

from .errors import DatasetFormatError

LABEL_P = "P"
LABEL_Q = "Q"
LABELS = (LABEL_P, LABEL_Q)

CSV_HEADER = ["F1", "F2", "label"]
_FLOAT_FMT = "{:.17g}"


@dataclass(frozen=True)
class BlobSpec:
    """Four Gaussian blobs grouped two-and-two into the classes."""

    centers: tuple = ((8.0, 0.9), (-8.0, -0.9), (8.0, -0.9), (-8.0, 0.9))
    grouping: tuple = (LABEL_P, LABEL_P, LABEL_Q, LABEL_Q)
    sigma: float = 0.36
    points_per_blob: int = 250
    seed: int = 11

    def __post_init__(self):
        if len(self.centers) != 4 or len(self.grouping) != 4:
            raise ValueError("exactly four blobs are required")
        if sorted(self.grouping) != [LABEL_P, LABEL_P, LABEL_Q, LABEL_Q]:
            raise ValueError("grouping must assign two blobs to each class")
        if self.sigma <= 0:
            raise ValueError("sigma must be positive")
        if self.points_per_blob < 1:
            raise ValueError("points_per_blob must be positive")


DEFAULT_BLOB_SPEC = BlobSpec()
DEFAULT_TEST_SEED = 12


@dataclass(frozen=True)
class Dataset:
    """Labeled 2-feature points for classes P and Q."""

    features: np.ndarray
    labels: np.ndarray

    def __post_init__(self):
        features = np.asarray(self.features, dtype=float)
        labels = np.asarray(self.labels)
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)
        if features.ndim != 2 or features.shape[0] != labels.shape[0]:
            raise ValueError("features and labels must have matching rows")

    def __len__(self):
        return self.features.shape[0]

    def class_features(self, label: str) -> np.ndarray:
        return self.features[self.labels == label]

    def class_counts(self) -> dict:
        return {label: int(np.sum(self.labels == label)) for label in LABELS}


def generate_blobs(spec: BlobSpec = DEFAULT_BLOB_SPEC) -> Dataset:
    """Sample the four blobs and shuffle deterministically by seed."""
    rng = np.random.default_rng(spec.seed)
    features = []
    labels = []
    for center, label in zip(spec.centers, spec.grouping):
        features.append(
            rng.normal(loc=center, scale=spec.sigma, size=(spec.points_per_blob, 2))
        )
        labels.extend([label] * spec.points_per_blob)
    features = np.vstack(features)
    labels = np.array(labels)
    order = rng.permutation(len(labels))
    return Dataset(features=features[order], labels=labels[order])


def generate_test_set(spec: BlobSpec, test_seed: int) -> Dataset:
    """Fresh draw from the same blob layout under a different seed."""
    if test_seed == spec.seed:
        raise ValueError("test seed must differ from the training seed")
    return generate_blobs(replace(spec, seed=test_seed))


def write_dataset(dataset: Dataset, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for (f1, f2), label in zip(dataset.features, dataset.labels):
            writer.writerow([_FLOAT_FMT.format(f1), _FLOAT_FMT.format(f2), label])


def read_dataset(path) -> Dataset:
    features = []
    labels = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != CSV_HEADER:
            raise DatasetFormatError(f"{path}: expected header {CSV_HEADER}, got {header}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise DatasetFormatError(f"{path}:{lineno}: expected 3 fields, got {len(row)}")
            try:
                features.append([float(row[0]), float(row[1])])
            except ValueError as exc:
                raise DatasetFormatError(f"{path}:{lineno}: bad number ({exc})") from exc
            if row[2] not in LABELS:
                raise DatasetFormatError(f"{path}:{lineno}: unknown label {row[2]!r}")
            labels.append(row[2])
    features = np.asarray(features, dtype=float).reshape(len(labels), 2)
    return Dataset(features=features, labels=np.array(labels, dtype="<U1"))
