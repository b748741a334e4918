"""Feature maps and single-photon amplitude encodings.

A classical feature vector x is mapped to mode amplitudes
alpha_n = w_n phi_n(x) / ||w * phi(x)||, one amplitude per temporal
mode.  Amplitudes are stored as complex even though the reference
experiment uses real features.
"""

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DegenerateEncodingError, EmptyClassError, NumericalDomainError

_NORM_TOL = 1e-12

POLY2 = "polynomial-degree-2"
IDENTITY = "identity"
CUSTOM = "custom"


@dataclass(frozen=True)
class FeatureMap:
    """Feature map from input space to mode-amplitude space.

    `output_dim` must equal the mode-basis order the encoding targets.
    """

    kind: str
    output_dim: int
    fn: Optional[Callable[[np.ndarray], np.ndarray]] = None

    @classmethod
    def polynomial_degree_2(cls) -> "FeatureMap":
        """(F1, F2) -> (F1^2, F2^2, F1*F2)."""
        return cls(kind=POLY2, output_dim=3)

    @classmethod
    def identity(cls, dim: int) -> "FeatureMap":
        return cls(kind=IDENTITY, output_dim=dim)

    @classmethod
    def custom(cls, fn: Callable[[np.ndarray], np.ndarray], output_dim: int) -> "FeatureMap":
        return cls(kind=CUSTOM, output_dim=output_dim, fn=fn)


@dataclass(frozen=True)
class EncodedPhoton:
    """Unit-norm complex amplitude vector over the temporal modes."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        object.__setattr__(self, "amplitudes", amps)
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError(f"amplitudes not unit-norm: |alpha| = {norm!r}")

    def __len__(self):
        return self.amplitudes.shape[0]


def _check_features(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise NumericalDomainError("feature vector must be one-dimensional")
    if not np.all(np.isfinite(x)):
        raise NumericalDomainError("feature vector has non-finite entries")
    return x


def apply_feature_map(x, fmap: FeatureMap) -> np.ndarray:
    """Apply a feature map to a single feature vector."""
    x = _check_features(x)
    if fmap.kind == POLY2:
        if x.shape[0] != 2:
            raise NumericalDomainError(
                f"polynomial-degree-2 map needs 2 features, got {x.shape[0]}"
            )
        return np.array([x[0] ** 2, x[1] ** 2, x[0] * x[1]])
    if fmap.kind == IDENTITY:
        if x.shape[0] != fmap.output_dim:
            raise NumericalDomainError(
                f"identity map of dim {fmap.output_dim} got {x.shape[0]} features"
            )
        return x.copy()
    if fmap.kind == CUSTOM:
        out = np.asarray(fmap.fn(x), dtype=complex)
        if out.shape != (fmap.output_dim,):
            raise NumericalDomainError("custom map returned wrong dimension")
        return out
    raise ValueError(f"unknown feature map kind {fmap.kind!r}")


def feature_matrix(features: np.ndarray, fmap: FeatureMap) -> np.ndarray:
    """Feature map applied row-wise to an (n, d) array.

    Vectorized for the built-in maps; the custom map falls back to a
    row loop.
    """
    features = np.asarray(features, dtype=float)
    if fmap.kind == POLY2:
        if features.shape[1] != 2:
            raise NumericalDomainError("polynomial-degree-2 map needs 2 features")
        f1, f2 = features[:, 0], features[:, 1]
        return np.column_stack([f1 ** 2, f2 ** 2, f1 * f2])
    if fmap.kind == IDENTITY:
        if features.shape[1] != fmap.output_dim:
            raise NumericalDomainError("identity map dimension mismatch")
        return features.copy()
    return np.vstack([apply_feature_map(row, fmap) for row in features])


def _check_weights(weights, fmap: FeatureMap) -> np.ndarray:
    w = np.asarray(weights, dtype=float)
    if w.shape != (fmap.output_dim,):
        raise NumericalDomainError(
            f"weight length {w.shape} does not match map output dim {fmap.output_dim}"
        )
    if not np.all(np.isfinite(w)):
        raise NumericalDomainError("weights have non-finite entries")
    if not np.any(w):
        raise NumericalDomainError("weights must not all be zero")
    return w


def encode(x, fmap: FeatureMap, weights) -> EncodedPhoton:
    """Encode a feature vector as a normalized photon amplitude vector."""
    w = _check_weights(weights, fmap)
    mapped = apply_feature_map(x, fmap)
    weighted = w * mapped
    norm = np.linalg.norm(weighted)
    if norm <= _NORM_TOL:
        raise DegenerateEncodingError(
            f"feature vector {np.asarray(x)} maps to zero amplitude"
        )
    return EncodedPhoton(weighted.astype(complex) / norm)


def mean_embedding(points: Sequence, fmap: FeatureMap, weights):
    """Class-mean photon: average the per-point amplitude vectors, renormalize.

    Degenerate points are skipped.  Returns (EncodedPhoton, n_skipped).
    """
    points = list(points)
    if not points:
        raise EmptyClassError("mean embedding of an empty point list")
    total = np.zeros(fmap.output_dim, dtype=complex)
    skipped = 0
    for x in points:
        try:
            total += encode(x, fmap, weights).amplitudes
        except DegenerateEncodingError:
            skipped += 1
    if skipped == len(points):
        raise EmptyClassError("every point in the class is degenerate")
    mean = total / (len(points) - skipped)
    norm = np.linalg.norm(mean)
    if norm <= _NORM_TOL:
        raise DegenerateEncodingError("class-mean amplitudes cancel to zero")
    return EncodedPhoton(mean / norm), skipped
