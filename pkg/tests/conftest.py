"""Shared fixtures: the default experiment, trained once per session."""

from dataclasses import dataclass

import numpy as np
import pytest

from homkernel import data as data_mod
from homkernel import training
from homkernel.encoding import FeatureMap
from homkernel.mmd import ClassMeans, class_means
from homkernel.modes import ModeBasis


@dataclass(frozen=True)
class Experiment:
    train_data: data_mod.Dataset
    test_data: data_mod.Dataset
    fmap: FeatureMap
    basis: ModeBasis
    weights: np.ndarray
    trace: training.TrainTrace
    means: ClassMeans
    unit_means: ClassMeans


@pytest.fixture(scope="session")
def fmap():
    return FeatureMap.polynomial_degree_2()


@pytest.fixture(scope="session")
def basis():
    return ModeBasis(order=3)


@pytest.fixture(scope="session")
def train_data():
    return data_mod.generate_blobs()


@pytest.fixture(scope="session")
def test_data():
    return data_mod.generate_test_set(
        data_mod.DEFAULT_BLOB_SPEC, data_mod.DEFAULT_TEST_SEED
    )


@pytest.fixture(scope="session")
def experiment(train_data, test_data, fmap, basis):
    """Full default experiment trained with the default config."""
    config = training.TrainConfig()
    weights, trace = training.train(train_data, fmap, config)
    return Experiment(
        train_data=train_data,
        test_data=test_data,
        fmap=fmap,
        basis=basis,
        weights=weights,
        trace=trace,
        means=class_means(train_data, fmap, weights),
        unit_means=class_means(train_data, fmap, np.ones(fmap.output_dim)),
    )
