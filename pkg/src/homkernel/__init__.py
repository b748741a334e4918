"""Quantum-kernel evaluation via Hong-Ou-Mandel interference.

Library for encoding feature vectors into the temporal-mode amplitudes
of single photons, evaluating kernels as beamsplitter coincidence
statistics, and running an MMD-based binary-classification experiment
trained by scheduled stochastic gradient ascent.
"""

from .data import BlobSpec, Dataset, generate_blobs, generate_test_set
from .encoding import EncodedPhoton, FeatureMap, apply_feature_map, encode, mean_embedding
from .interference import (
    DipCurve,
    ShotRecord,
    TwoPhotonOutcome,
    beamsplitter_oracle,
    coincidence,
    dip_curve,
    kernel,
    sample_coincidences,
)
from .mmd import ClassMeans, Classification, class_means, classify, classify_single_mean, mmd
from .modes import ModeBasis, OverlapMatrix, TimeGrid, hermite_polynomial, hg_mode, overlap_matrix
from .training import TrainConfig, TrainTrace, cost, numerical_gradient, schedule_lookup, sgd_step, train

__version__ = "0.1.0"

__all__ = [
    "BlobSpec", "Dataset", "generate_blobs", "generate_test_set",
    "EncodedPhoton", "FeatureMap", "apply_feature_map", "encode", "mean_embedding",
    "DipCurve", "ShotRecord", "TwoPhotonOutcome", "beamsplitter_oracle",
    "coincidence", "dip_curve", "kernel", "sample_coincidences",
    "ClassMeans", "Classification", "class_means", "classify",
    "classify_single_mean", "mmd",
    "ModeBasis", "OverlapMatrix", "TimeGrid", "hermite_polynomial", "hg_mode",
    "overlap_matrix",
    "TrainConfig", "TrainTrace", "cost", "numerical_gradient",
    "schedule_lookup", "sgd_step", "train",
]
