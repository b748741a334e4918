"""Hermite-Gaussian temporal-mode basis and delayed overlap matrices.

Time is dimensionless throughout.  The mode functions are

    u_n(t) = exp(-t^2/2) H_n(t) / (pi^(1/4) sqrt(2^n n!))

with H_n the physicists' Hermite polynomials, which makes the basis
orthonormal under plain integration over t.  Delayed overlaps
O_nm(dt) = integral u_n(t) u_m(t - dt) dt are evaluated by composite
trapezoidal quadrature on a uniform grid.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.special import gammaln

from .errors import BoundsError, GridDomainError, OrderCapError

# Above this order the default grid and float64 headroom are no longer
# validated; refuse rather than silently lose accuracy.
HERMITE_ORDER_CAP = 64

# Mode amplitude allowed at the grid edge before the basis is considered
# truncated (construction-time check, per mode).
_EDGE_TOL = 1e-12
# Looser edge tolerance for shifted modes in delayed overlaps.
_SHIFT_EDGE_TOL = 1e-8


def hermite_polynomial(n, t):
    """Physicists' Hermite polynomial H_n(t).

    Uses the stable three-term recurrence H_{n+1} = 2 t H_n - 2 n H_{n-1}.
    Accepts scalars or arrays.
    """
    if n < 0:
        raise ValueError(f"Hermite order must be nonnegative, got {n}")
    if n > HERMITE_ORDER_CAP:
        raise OrderCapError(
            f"Hermite order {n} above cap {HERMITE_ORDER_CAP}"
        )
    t = np.asarray(t, dtype=float)
    h_prev = np.ones_like(t)
    if n == 0:
        return h_prev if h_prev.ndim else float(h_prev)
    h = 2.0 * t
    for k in range(1, n):
        h, h_prev = 2.0 * t * h - 2.0 * k * h_prev, h
    return h if h.ndim else float(h)


def hg_mode(n, t):
    """Normalized Hermite-Gaussian mode u_n(t).

    The normalization constant is computed in log space (log-gamma) so
    high orders do not overflow the factorial.
    """
    log_norm = -0.25 * np.log(np.pi) - 0.5 * (n * np.log(2.0) + gammaln(n + 1))
    t = np.asarray(t, dtype=float)
    value = hermite_polynomial(n, t) * np.exp(-0.5 * t * t + log_norm)
    return value if np.ndim(value) else float(value)


@dataclass(frozen=True)
class TimeGrid:
    """Uniform quadrature grid, symmetric about t = 0."""

    t_min: float = -12.0
    t_max: float = 12.0
    n_points: int = 4001

    def __post_init__(self):
        if self.n_points < 2:
            raise ValueError("grid needs at least two points")
        if self.t_max <= self.t_min:
            raise ValueError("t_max must exceed t_min")
        if abs(self.t_min + self.t_max) > 1e-12 * max(1.0, abs(self.t_max)):
            raise ValueError("grid must be symmetric about zero")

    @cached_property
    def times(self):
        return np.linspace(self.t_min, self.t_max, self.n_points)

    @property
    def spacing(self):
        return (self.t_max - self.t_min) / (self.n_points - 1)

    @cached_property
    def trapezoid_weights(self):
        w = np.full(self.n_points, self.spacing)
        w[0] *= 0.5
        w[-1] *= 0.5
        return w


DEFAULT_GRID = TimeGrid()


@dataclass(frozen=True)
class ModeBasis:
    """First `order` Hermite-Gaussian modes sampled on a grid.

    Construction fails if any mode has not decayed below 1e-12 at the
    grid boundary, since quadrature on a truncated mode would silently
    break orthonormality.
    """

    order: int
    grid: TimeGrid = DEFAULT_GRID

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("basis order must be positive")
        if self.order > HERMITE_ORDER_CAP:
            raise OrderCapError(
                f"basis order {self.order} above cap {HERMITE_ORDER_CAP}"
            )
        edge = np.abs(self.values[:, [0, -1]]).max()
        if edge > _EDGE_TOL:
            raise GridDomainError(
                f"grid too narrow for order {self.order}: "
                f"boundary amplitude {edge:.3e} exceeds {_EDGE_TOL:.0e}"
            )

    @cached_property
    def values(self):
        """Array of shape (order, n_points): u_n on the grid."""
        return self.values_at(self.grid.times)

    def values_at(self, t):
        """All basis modes evaluated at arbitrary times, shape (order, len(t))."""
        return np.vstack([hg_mode(n, t) for n in range(self.order)])


@dataclass(frozen=True)
class OverlapMatrix:
    """Delayed mode overlaps O_nm(dt) = integral u_n(t) u_m(t - dt) dt."""

    delay: float
    entries: np.ndarray


def overlap_matrix(basis: ModeBasis, delay: float) -> OverlapMatrix:
    """Delayed overlap matrix of a basis by trapezoidal quadrature.

    Raises GridDomainError when the shifted modes have not decayed at
    the edge of the grid nearest to their displaced center.
    """
    grid = basis.grid
    edge = grid.t_max - abs(delay)
    if edge < 0 or np.abs(basis.values_at(edge)).max() > _SHIFT_EDGE_TOL:
        raise GridDomainError(
            f"delay {delay} pushes modes of order {basis.order} off the "
            f"grid [{grid.t_min}, {grid.t_max}]"
        )
    shifted = basis.values_at(grid.times - delay)
    entries = (basis.values * grid.trapezoid_weights) @ shifted.T
    worst = np.abs(entries).max()
    if worst > 1.0 + 1e-10:
        raise BoundsError(f"overlap magnitude {worst} exceeds 1")
    return OverlapMatrix(delay=float(delay), entries=entries)
