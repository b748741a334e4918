"""Acceptance gate: one test per criterion, each reporting PASS/FAIL.

Each test prints a single summary line (visible with -rA or on failure)
and asserts the criterion at its stated tolerance.  Run with
`pytest tests/test_acceptance.py -v` for the per-criterion verdicts.
"""

import time
from dataclasses import replace

import numpy as np
import pytest

from homkernel import data as data_mod
from homkernel import training
from homkernel.cli import main
from homkernel.encoding import EncodedPhoton, FeatureMap
from homkernel.interference import (
    beamsplitter_oracle,
    coincidence,
    default_delays,
    dip_curve,
    kernel,
    sample_coincidences,
)
from homkernel.mmd import ClassMeans, class_means, classify, mmd
from homkernel.modes import ModeBasis
from homkernel.training import TrainConfig, numerical_gradient, schedule_lookup


def report(criterion: str, ok: bool, detail: str):
    verdict = "PASS" if ok else "FAIL"
    print(f"{verdict}: criterion {criterion} — {detail}")
    assert ok, f"criterion {criterion}: {detail}"


def random_photon(rng, n):
    amps = rng.normal(size=n) + 1j * rng.normal(size=n)
    return EncodedPhoton(amps / np.linalg.norm(amps))


def test_criterion_01_hg_orthonormality():
    """N = 16 modes: max |integral u_n u_m - delta_nm| <= 1e-8 in < 1 s."""
    start = time.perf_counter()
    basis = ModeBasis(order=16)
    gram = (basis.values * basis.grid.trapezoid_weights) @ basis.values.T
    deviation = np.abs(gram - np.eye(16)).max()
    elapsed = time.perf_counter() - start
    report("1", deviation <= 1e-8 and elapsed < 1.0,
           f"orthonormality deviation {deviation:.2e} (<=1e-8), "
           f"runtime {elapsed:.2f}s (<1s)")


def test_criterion_02_analytic_dip():
    """u_0 photon pair: CC(dt) = 1 - exp(-dt^2/2) within 1e-6 on [-5, 5]."""
    start = time.perf_counter()
    photon = EncodedPhoton(np.array([1.0]))
    basis = ModeBasis(order=1)
    delays = np.linspace(-5.0, 5.0, 101)
    curve = dip_curve(photon, photon, basis, delays)
    expected = 1.0 - np.exp(-delays ** 2 / 2)
    error = np.abs(curve.cc - expected).max()
    elapsed = time.perf_counter() - start
    report("2", error <= 1e-6 and elapsed < 1.0,
           f"max |CC - analytic| {error:.2e} (<=1e-6), "
           f"runtime {elapsed:.2f}s (<1s)")


def test_criterion_03_oracle_equivalence():
    """1000 random pairs (N=8): 2*p_11 = 1 - kernel and probabilities sum to 1."""
    start = time.perf_counter()
    rng = np.random.default_rng(42)
    worst_cc = worst_sum = 0.0
    for _ in range(1000):
        a, b = random_photon(rng, 8), random_photon(rng, 8)
        outcome = beamsplitter_oracle(a, b)
        worst_cc = max(worst_cc,
                       abs(2.0 * outcome.p_11 - (1.0 - kernel(a, b))))
        worst_sum = max(worst_sum,
                        abs(outcome.p_20 + outcome.p_02 + outcome.p_11 - 1.0))
    elapsed = time.perf_counter() - start
    report("3", worst_cc <= 1e-10 and worst_sum <= 1e-10 and elapsed < 5.0,
           f"max |2 p_11 - (1-k)| {worst_cc:.2e}, max |sum-1| {worst_sum:.2e} "
           f"(<=1e-10), runtime {elapsed:.2f}s (<5s)")


def test_criterion_04_mmd_bound():
    """10^4 random mean pairs: 0 <= MMD <= 2; exact at both extremes."""
    rng = np.random.default_rng(7)
    in_range = True
    for _ in range(10_000):
        a, b = random_photon(rng, 4), random_photon(rng, 4)
        value = mmd(ClassMeans(a, b))
        in_range &= 0.0 <= value <= 2.0
    identical = random_photon(rng, 4)
    at_zero = mmd(ClassMeans(identical, identical))
    e0 = EncodedPhoton(np.array([1.0, 0.0]))
    e1 = EncodedPhoton(np.array([0.0, 1.0]))
    at_two = mmd(ClassMeans(e0, e1))
    ok = in_range and abs(at_zero) <= 1e-12 and abs(at_two - 2.0) <= 1e-12
    report("4", ok,
           f"10^4 pairs in [0,2]: {in_range}; identical -> {at_zero:.2e}, "
           f"orthogonal -> {at_two!r} (exact within 1e-12)")


def test_criterion_05_gram_positive_semidefinite():
    """100 trials: min eigenvalue of a 20x20 overlap Gram matrix >= -1e-9."""
    rng = np.random.default_rng(11)
    worst = np.inf
    for _ in range(100):
        photons = [random_photon(rng, 5) for _ in range(20)]
        gram = np.array([
            [np.vdot(a.amplitudes, b.amplitudes) for b in photons]
            for a in photons
        ])
        worst = min(worst, np.linalg.eigvalsh(gram).min())
    report("5", worst >= -1e-9,
           f"min eigenvalue over 100 trials {worst:.2e} (>= -1e-9)")


def test_criterion_06_schedule_table():
    """schedule_lookup reproduces all three (L, sigma) rows exactly."""
    expected = {1.0: (0.1, 0.5), 1.85: (0.01, 0.05), 1.95: (0.001, 0.05)}
    results = {probe: schedule_lookup(probe) for probe in expected}
    ok = results == expected
    report("6", ok, f"probe costs -> {results}")


@pytest.fixture(scope="module")
def seed_scan(train_data, fmap):
    """Twenty full training runs under the default configuration."""
    start = time.perf_counter()
    runs = []
    for seed in range(20):
        config = TrainConfig(seed=seed)
        _, trace = training.train(train_data, fmap, config)
        runs.append((trace.costs[0], max(trace.costs)))
    return runs, time.perf_counter() - start


def test_criterion_07a_mmd_convergence(seed_scan):
    """Initial MMD < 0.5 and MMD >= 1.9 within 1000 iterations, >=90% of 20 seeds."""
    runs, elapsed = seed_scan
    successes = sum(initial < 0.5 and best >= 1.9 for initial, best in runs)
    report("7a", successes >= 18 and elapsed < 300.0,
           f"{successes}/20 seeds converged (init < 0.5, best >= 1.9); "
           f"training runtime {elapsed:.0f}s (<300s)")


def test_criterion_07b_accuracy_vs_linear_baseline(experiment):
    """Trained accuracy >= 95% vs <= 70% for the best linear baseline."""
    correct = sum(
        classify(x, experiment.means, experiment.fmap,
                 experiment.weights).label == label
        for x, label in zip(experiment.test_data.features,
                            experiment.test_data.labels)
    )
    accuracy = correct / len(experiment.test_data)

    from sklearn.linear_model import LogisticRegression, Perceptron

    linear = max(
        clf.fit(experiment.train_data.features, experiment.train_data.labels)
        .score(experiment.test_data.features, experiment.test_data.labels)
        for clf in (LogisticRegression(max_iter=1000),
                    Perceptron(max_iter=1000, random_state=0))
    )
    report("7b", accuracy >= 0.95 and linear <= 0.70,
           f"trained accuracy {accuracy:.3f} (>=0.95), "
           f"best linear baseline {linear:.3f} (<=0.70)")


def test_criterion_07c_dip_curves(experiment):
    """Trained dip > 0.9 for all dt; untrained CC at dt = 0 below 0.3."""
    delays = default_delays()
    trained = dip_curve(experiment.means.mu_p, experiment.means.mu_q,
                        experiment.basis, delays)
    untrained = dip_curve(experiment.unit_means.mu_p,
                          experiment.unit_means.mu_q,
                          experiment.basis, delays)
    untrained_at_zero = untrained.cc[len(delays) // 2]
    report("7c",
           trained.cc.min() > 0.9 and untrained_at_zero < 0.3,
           f"trained dip min {trained.cc.min():.3f} (>0.9 required), "
           f"untrained CC(0) {untrained_at_zero:.3f} (<0.3)")


def test_criterion_08_shot_convergence():
    """Median |estimate - exact CC| over 100 seeds falls as 1/sqrt(n)."""
    rng = np.random.default_rng(21)
    a, b = random_photon(rng, 4), random_photon(rng, 4)
    exact = 2.0 * beamsplitter_oracle(a, b).p_11
    shots = [100, 10_000, 1_000_000]
    medians = []
    for n in shots:
        errors = [abs(sample_coincidences(a, b, n, seed=s).estimate - exact)
                  for s in range(100)]
        medians.append(np.median(errors))
    slope = np.polyfit(np.log10(shots), np.log10(medians), 1)[0]
    report("8", abs(slope + 0.5) <= 0.1,
           f"log-log error slope {slope:.3f} (within -0.5 ± 0.1); "
           f"medians {['%.2e' % m for m in medians]}")


def test_criterion_09_gradient_check():
    """numerical_gradient of f(w) = sum c_n w_n^2 matches 2 c*w to 1e-6 rel."""
    rng = np.random.default_rng(33)
    c = rng.uniform(0.5, 3.0, size=6)
    w = rng.uniform(-2.0, 2.0, size=6)
    grad = numerical_gradient(w, lambda v: float(np.sum(c * v ** 2)), 1e-4)
    analytic = 2.0 * c * w
    relative = np.abs(grad - analytic) / np.maximum(np.abs(analytic), 1e-12)
    report("9", relative.max() <= 1e-6,
           f"max relative gradient error {relative.max():.2e} (<=1e-6)")


def test_criterion_10_pipeline_determinism(tmp_path):
    """Two identical-config pipeline runs give byte-identical CSV artifacts."""
    import json

    def run_pipeline(out):
        config = out / "config.json"
        config.write_text(json.dumps({"iterations": 60, "output": str(out)}))
        for argv in (
            ["generate", "--config", str(config)],
            ["train", "--config", str(config)],
            ["dip", "--config", str(config)],
            ["classify", "--config", str(config), str(out / "test.csv")],
            ["report", "--config", str(config)],
        ):
            assert main(argv) == 0

    first, second = tmp_path / "run1", tmp_path / "run2"
    first.mkdir(), second.mkdir()
    run_pipeline(first)
    run_pipeline(second)
    names = sorted(p.name for p in first.glob("*.csv"))
    mismatched = [
        name for name in names
        if (first / name).read_bytes() != (second / name).read_bytes()
    ]
    report("10", len(names) >= 7 and not mismatched,
           f"{len(names)} CSV artifacts byte-identical "
           f"({', '.join(names)}); mismatches: {mismatched or 'none'}")
