"""Scheduled stochastic gradient ascent of MMD over the free weights.

The cost is the MMD between the two class-mean photons recomputed under
the candidate weights.  Gradients are central finite differences, the
update is w <- w + L * grad + eps with normal noise eps, and the
learning rate / noise pair follows a cost-dependent schedule.  The cost
is maximized and bounded by two.
"""

import csv
import json
from dataclasses import dataclass, field
from typing import Callable, Sequence, Tuple

import numpy as np

from .data import Dataset, LABEL_P, LABEL_Q
from .encoding import FeatureMap, feature_matrix
from .errors import (
    DegenerateEncodingError,
    EmptyClassError,
    HomKernelError,
    TrainingAbortedError,
)

_NORM_TOL = 1e-12


@dataclass(frozen=True)
class ScheduleRule:
    """One row of the hyperparameter schedule over a cost bracket."""

    cost_low: float
    cost_high: float
    learning_rate: float
    noise_sigma: float

    def __post_init__(self):
        if self.learning_rate <= 0:
            raise ValueError("learning rate must be positive")
        if self.noise_sigma < 0:
            raise ValueError("noise sigma must be nonnegative")


DEFAULT_SCHEDULE = (
    ScheduleRule(cost_low=0.0, cost_high=1.8, learning_rate=0.1, noise_sigma=0.5),
    ScheduleRule(cost_low=1.8, cost_high=1.9, learning_rate=0.01, noise_sigma=0.05),
    ScheduleRule(cost_low=1.9, cost_high=2.0, learning_rate=0.001, noise_sigma=0.05),
)

# Random initialization bounds: strictly positive start avoids
# degenerate zero-norm encodings.
INIT_LOW = 0.5
INIT_HIGH = 1.5


@dataclass(frozen=True)
class TrainConfig:
    iterations: int = 1000
    fd_step: float = 1e-4
    seed: int = 1
    schedule: tuple = DEFAULT_SCHEDULE

    def __post_init__(self):
        if self.iterations < 0:
            raise ValueError("iterations must be nonnegative")
        if self.fd_step <= 0:
            raise ValueError("fd_step must be positive")

    @classmethod
    def from_dict(cls, raw: dict) -> "TrainConfig":
        schedule = DEFAULT_SCHEDULE
        if "schedule" in raw:
            schedule = tuple(
                ScheduleRule(
                    cost_low=float(rule["cost_low"]),
                    cost_high=float(rule["cost_high"]),
                    learning_rate=float(rule["learning_rate"]),
                    noise_sigma=float(rule["noise_sigma"]),
                )
                for rule in raw["schedule"]
            )
        return cls(
            iterations=int(raw.get("iterations", 1000)),
            fd_step=float(raw.get("fd_step", 1e-4)),
            seed=int(raw.get("seed", 1)),
            schedule=schedule,
        )

    @classmethod
    def from_json(cls, path) -> "TrainConfig":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


@dataclass
class TrainTrace:
    """Per-iteration cost and weights, including the initial state."""

    iterations: list = field(default_factory=list)
    costs: list = field(default_factory=list)
    weights: list = field(default_factory=list)

    def record(self, iteration: int, cost_value: float, w: np.ndarray):
        self.iterations.append(iteration)
        self.costs.append(cost_value)
        self.weights.append(np.array(w, copy=True))

    def __len__(self):
        return len(self.iterations)

    def best_index(self) -> int:
        return int(np.argmax(self.costs))

    def to_csv(self, path):
        n = len(self.weights[0]) if self.weights else 0
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["iter", "cost"] + [f"w_{i}" for i in range(n)])
            for it, cost_value, w in zip(self.iterations, self.costs, self.weights):
                writer.writerow(
                    [it, f"{cost_value:.17g}"] + [f"{wi:.17g}" for wi in w]
                )


def _class_feature_matrices(train_data: Dataset, fmap: FeatureMap):
    phi_p = feature_matrix(train_data.class_features(LABEL_P), fmap)
    phi_q = feature_matrix(train_data.class_features(LABEL_Q), fmap)
    if phi_p.shape[0] == 0 or phi_q.shape[0] == 0:
        raise EmptyClassError("training data must contain both classes")
    return phi_p, phi_q


def _mean_amplitude(phi: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Normalized class mean of the per-point normalized amplitudes."""
    weighted = phi * w
    norms = np.linalg.norm(weighted, axis=1)
    usable = norms > _NORM_TOL
    if not np.any(usable):
        raise EmptyClassError("every point in the class is degenerate")
    mean = (weighted[usable] / norms[usable, None]).mean(axis=0)
    mean_norm = np.linalg.norm(mean)
    if mean_norm <= _NORM_TOL:
        raise DegenerateEncodingError("class-mean amplitudes cancel to zero")
    return mean / mean_norm


def make_cost_fn(train_data: Dataset, fmap: FeatureMap) -> Callable:
    """Vectorized MMD cost of the weights on a fixed training set."""
    phi_p, phi_q = _class_feature_matrices(train_data, fmap)

    def cost_fn(w: np.ndarray) -> float:
        mu_p = _mean_amplitude(phi_p, w)
        mu_q = _mean_amplitude(phi_q, w)
        overlap = abs(np.vdot(mu_p, mu_q)) ** 2
        return 2.0 * (1.0 - min(overlap, 1.0))

    return cost_fn


def cost(weights, train_data: Dataset, fmap: FeatureMap) -> float:
    """MMD between the class means recomputed under the given weights."""
    return make_cost_fn(train_data, fmap)(np.asarray(weights, dtype=float))


def numerical_gradient(weights, cost_fn: Callable, fd_step: float) -> np.ndarray:
    """Central-difference gradient of a scalar cost, per coordinate."""
    if fd_step <= 0:
        raise ValueError("fd_step must be positive")
    w = np.asarray(weights, dtype=float)
    grad = np.empty_like(w)
    for n in range(w.size):
        step = np.zeros_like(w)
        step[n] = fd_step
        grad[n] = (cost_fn(w + step) - cost_fn(w - step)) / (2.0 * fd_step)
    return grad


def schedule_lookup(cost_value: float,
                    schedule: Sequence[ScheduleRule] = DEFAULT_SCHEDULE
                    ) -> Tuple[float, float]:
    """(learning rate, noise sigma) for the bracket containing the cost.

    Bracket boundaries belong to the higher bracket; the last rule's
    upper bound is inclusive.
    """
    for i, rule in enumerate(schedule):
        last = i == len(schedule) - 1
        if rule.cost_low <= cost_value < rule.cost_high or (
            last and cost_value >= rule.cost_low
        ):
            return rule.learning_rate, rule.noise_sigma
    raise ValueError(f"cost {cost_value} below the schedule range")


def sgd_step(weights, grad, lr: float, noise_sigma: float,
             rng: np.random.Generator) -> np.ndarray:
    """One ascent step: w + lr * grad + normal(0, noise_sigma) noise."""
    w = np.asarray(weights, dtype=float)
    g = np.asarray(grad, dtype=float)
    if w.shape != g.shape:
        raise ValueError("weights and gradient must have equal shapes")
    noise = rng.normal(0.0, noise_sigma, size=w.shape) if noise_sigma > 0 else 0.0
    return w + lr * g + noise


def train(train_data: Dataset, fmap: FeatureMap,
          config: TrainConfig) -> Tuple[np.ndarray, TrainTrace]:
    """Run the scheduled SGD ascent; returns (best-cost weights, trace)."""
    cost_fn = make_cost_fn(train_data, fmap)
    rng = np.random.default_rng(config.seed)
    w = rng.uniform(INIT_LOW, INIT_HIGH, size=fmap.output_dim)
    trace = TrainTrace()
    for iteration in range(config.iterations + 1):
        try:
            cost_value = cost_fn(w)
        except HomKernelError as exc:
            raise TrainingAbortedError(
                f"cost evaluation failed at iteration {iteration}: {exc}", trace
            ) from exc
        trace.record(iteration, cost_value, w)
        if iteration == config.iterations:
            break
        lr, noise_sigma = schedule_lookup(
            min(max(cost_value, 0.0), 2.0), config.schedule
        )
        grad = numerical_gradient(w, cost_fn, config.fd_step)
        w = sgd_step(w, grad, lr, noise_sigma, rng)
    best = trace.weights[trace.best_index()]
    return np.array(best, copy=True), trace


def average_cost_curve(train_data: Dataset, fmap: FeatureMap,
                       config: TrainConfig, seeds: Sequence[int]) -> np.ndarray:
    """Mean cost-vs-iteration curve over independent restarts."""
    from dataclasses import replace

    curves = []
    for seed in seeds:
        _, trace = train(train_data, fmap, replace(config, seed=seed))
        curves.append(trace.costs)
    return np.mean(curves, axis=0)
