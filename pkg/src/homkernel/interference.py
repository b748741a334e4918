"""Hong-Ou-Mandel kernel evaluation.

The kernel between two encoded photons is the squared state overlap
|sum_n conj(a_n) b_n|^2.  The normalized coincidence count at relative
delay dt is 1 - |sum_nm conj(a_n) b_m O_nm(dt)|^2; at dt = 0 it reduces
to 1 - kernel.  A brute-force two-photon beamsplitter expansion serves
as an independent physics oracle, and finite-shot Bernoulli sampling
models an idealized counting experiment.
"""

import csv
from dataclasses import dataclass

import numpy as np

from .encoding import EncodedPhoton
from .errors import BoundsError, NumericalDomainError
from .modes import ModeBasis, overlap_matrix

_CLAMP_TOL = 1e-10


def _clamp_unit(value: float, what: str) -> float:
    """Clamp values within 1e-10 of [0, 1]; larger violations are bugs."""
    if value < -_CLAMP_TOL or value > 1.0 + _CLAMP_TOL:
        raise BoundsError(f"{what} = {value!r} outside [0, 1]")
    return min(max(value, 0.0), 1.0)


def _check_pair(a: EncodedPhoton, b: EncodedPhoton):
    if len(a) != len(b):
        raise NumericalDomainError(
            f"amplitude length mismatch: {len(a)} vs {len(b)}"
        )


def kernel(a: EncodedPhoton, b: EncodedPhoton) -> float:
    """Quantum kernel |<a|b>|^2 of two encoded photons."""
    _check_pair(a, b)
    value = abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2
    return _clamp_unit(value, "kernel")


def coincidence(a: EncodedPhoton, b: EncodedPhoton, basis: ModeBasis,
                delay: float = 0.0) -> float:
    """Normalized coincidence count at a relative time delay."""
    if len(a) != basis.order or len(b) != basis.order:
        raise NumericalDomainError(
            "amplitude length does not match the basis order"
        )
    overlap = overlap_matrix(basis, delay)
    amp = np.conj(a.amplitudes) @ overlap.entries @ b.amplitudes
    return _clamp_unit(1.0 - abs(amp) ** 2, "coincidence")


@dataclass(frozen=True)
class DipCurve:
    """Sampled (delay, normalized CC) pairs of a HOM dip scan."""

    delays: np.ndarray
    cc: np.ndarray

    def __post_init__(self):
        delays = np.asarray(self.delays, dtype=float)
        cc = np.asarray(self.cc, dtype=float)
        object.__setattr__(self, "delays", delays)
        object.__setattr__(self, "cc", cc)
        if delays.shape != cc.shape or delays.ndim != 1:
            raise ValueError("delays and cc must be matching 1-d arrays")
        if np.any(np.diff(delays) <= 0):
            raise ValueError("delays must be strictly increasing")
        if np.any(cc < -_CLAMP_TOL) or np.any(cc > 1.0 + _CLAMP_TOL):
            raise BoundsError("cc values outside [0, 1]")

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["dt", "cc"])
            for dt, cc in zip(self.delays, self.cc):
                writer.writerow([f"{dt:.17g}", f"{cc:.17g}"])


def dip_curve(a: EncodedPhoton, b: EncodedPhoton, basis: ModeBasis,
              delays) -> DipCurve:
    """Coincidence versus delay over a sorted list of delays."""
    delays = np.asarray(delays, dtype=float)
    cc = np.array([coincidence(a, b, basis, dt) for dt in delays])
    return DipCurve(delays=delays, cc=cc)


def default_delays(n_points: int = 201, half_width: float = 5.0) -> np.ndarray:
    """Default dip-scan delays, covering the full decay of unit-scale modes."""
    return np.linspace(-half_width, half_width, n_points)


@dataclass(frozen=True)
class TwoPhotonOutcome:
    """Output photon-number probabilities of the 50:50 beamsplitter."""

    p_20: float
    p_02: float
    p_11: float

    def __post_init__(self):
        total = self.p_20 + self.p_02 + self.p_11
        if abs(total - 1.0) > _CLAMP_TOL:
            raise BoundsError(f"outcome probabilities sum to {total!r}")


def beamsplitter_oracle(a: EncodedPhoton, b: EncodedPhoton) -> TwoPhotonOutcome:
    """Brute-force two-photon interference at a 50:50 beamsplitter.

    Expands both photons in the shared mode basis, applies the
    beamsplitter to each mode's creation operators and collects the
    two-photon output amplitudes.  The bunched amplitudes are the
    symmetric part of the joint amplitude matrix and the coincidence
    amplitudes the antisymmetric part, which keeps this path
    independent of kernel().
    """
    _check_pair(a, b)
    joint = np.outer(a.amplitudes, b.amplitudes)
    sym = 0.5 * (joint + joint.T)
    antisym = 0.5 * (joint - joint.T)
    p_bunch = 0.5 * float(np.sum(np.abs(sym) ** 2))
    p_11 = float(np.sum(np.abs(antisym) ** 2))
    return TwoPhotonOutcome(p_20=p_bunch, p_02=p_bunch, p_11=p_11)


@dataclass(frozen=True)
class ShotRecord:
    """Finite-shot coincidence measurement and its normalized CC estimate."""

    n_shots: int
    n_coincidences: int
    estimate: float

    def __post_init__(self):
        if self.n_shots < 1:
            raise ValueError("n_shots must be positive")
        if not 0 <= self.n_coincidences <= self.n_shots:
            raise ValueError("coincidences outside [0, n_shots]")


def sample_coincidences(a: EncodedPhoton, b: EncodedPhoton, n_shots: int,
                        seed: int) -> ShotRecord:
    """Simulate n_shots ideal coincidence measurements.

    Each shot is a Bernoulli trial with the oracle's raw coincidence
    probability p_11; the estimate is the baseline-normalized CC,
    2 * (counts / shots), clamped to [0, 1].  Deterministic per seed.
    """
    if n_shots < 1:
        raise ValueError("n_shots must be positive")
    p_11 = beamsplitter_oracle(a, b).p_11
    rng = np.random.default_rng(seed)
    count = int(rng.binomial(n_shots, p_11))
    estimate = min(2.0 * count / n_shots, 1.0)
    return ShotRecord(n_shots=n_shots, n_coincidences=count, estimate=estimate)
