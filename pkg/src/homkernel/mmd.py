"""Kernel-mean-embedding comparison and HOM classification rules.

MMD between two class means is measured operationally as twice the
zero-delay coincidence count, 2 * (1 - kernel(mu_P, mu_Q)), bounded by
two.  Classification of a point compares its kernel against the two
means, or against a single mean with a calibrated threshold.
"""

import warnings
from dataclasses import dataclass

from .encoding import EncodedPhoton, FeatureMap, encode, mean_embedding
from .errors import EmptyClassError
from .interference import kernel

LABEL_P = "P"
LABEL_Q = "Q"


@dataclass(frozen=True)
class ClassMeans:
    """Mean-embedded photons of the two classes."""

    mu_p: EncodedPhoton
    mu_q: EncodedPhoton


@dataclass(frozen=True)
class Classification:
    """Signed score and the label it implies (ties go to Q)."""

    score: float
    label: str


def mmd(means: ClassMeans) -> float:
    """Maximum mean discrepancy, 2 * CC between the mean photons."""
    return 2.0 * (1.0 - kernel(means.mu_p, means.mu_q))


def _label_for(score: float) -> str:
    # Deterministic tie-break: score exactly zero goes to Q.
    return LABEL_Q if score >= 0.0 else LABEL_P


def classify(x, means: ClassMeans, fmap: FeatureMap, weights,
             kernel_fn=kernel) -> Classification:
    """Two-mean HOM classifier.

    Score is kernel(photon, mu_Q) - kernel(photon, mu_P); positive
    places x in class Q.  `kernel_fn` may substitute a finite-shot
    kernel estimator.
    """
    photon = encode(x, fmap, weights)
    score = kernel_fn(photon, means.mu_q) - kernel_fn(photon, means.mu_p)
    return Classification(score=score, label=_label_for(score))


def classify_single_mean(x, mu_q: EncodedPhoton, calibration: float,
                         fmap: FeatureMap, weights,
                         kernel_fn=kernel) -> Classification:
    """Single-mean classifier against a pre-calibrated dip.

    `calibration` is kernel(mu_P, mu_Q), measured once in advance; the
    decision threshold is 1/2 - calibration/2.
    """
    if calibration > 1.0 - 1e-10:
        warnings.warn(
            "calibration ~ 1: the class means coincide and every point "
            "will be labeled Q",
            stacklevel=2,
        )
    photon = encode(x, fmap, weights)
    threshold = 0.5 - 0.5 * calibration
    score = kernel_fn(photon, mu_q) - threshold
    return Classification(score=score, label=_label_for(score))


def class_means(dataset, fmap: FeatureMap, weights) -> ClassMeans:
    """Mean embeddings of both classes of a labeled dataset."""
    points_p = dataset.class_features(LABEL_P)
    points_q = dataset.class_features(LABEL_Q)
    if len(points_p) == 0 or len(points_q) == 0:
        raise EmptyClassError("both classes must be present")
    mu_p, _ = mean_embedding(points_p, fmap, weights)
    mu_q, _ = mean_embedding(points_q, fmap, weights)
    return ClassMeans(mu_p=mu_p, mu_q=mu_q)
