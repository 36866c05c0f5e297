"""Random variable ``X_p`` whose comparisons give prescribed pairwise marginals.

For ``p <= 1/2``, ``X_p`` is the constant ``p``. For ``p > 1/2`` it mixes
three parts:

* a point mass ``sqrt(1/p - 1)`` at ``p``;
* density ``(p + x)^-2`` on ``[1 - p, 1/2]``, mass ``(2p - 1)/(2p + 1)``;
* density ``beta_p(x) = B(x - 1/2, p - 1/2)`` on ``(1/2, p)``, with ``B`` the
  double power series of :mod:`urnvote.condorcet.coefficients` truncated to
  total degree below ``terms``.

The continuous middle part is inverted in closed form. The last part is
tabulated on a fine grid and inverted piecewise-linearly; the table is
rescaled to the analytic mass ``2/(2p+1) - sqrt(1/p - 1)`` so the three
parts always sum to one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy import integrate

from urnvote.condorcet.coefficients import float_coefficients

DEFAULT_TERMS = 200
GRID_STEP = 1e-3


def point_mass(p: float) -> float:
    return 1.0 if p <= 0.5 else math.sqrt(1.0 / p - 1.0)


def alpha_mass(p: float) -> float:
    return 0.0 if p <= 0.5 else (2 * p - 1) / (2 * p + 1)


def beta_mass(p: float) -> float:
    """Mass the ``(1/2, p)`` density must carry for ``X_p`` to be a distribution."""
    return 0.0 if p <= 0.5 else 2 / (2 * p + 1) - point_mass(p)


def alpha_cdf(p: float, y):
    """``(y - 1 + p)/(y + p)`` on ``[1 - p, 1/2]``."""
    return (y - 1 + p) / (y + p)


def alpha_inverse(p: float, f):
    """Solve ``alpha_cdf(p, y) = f``: ``y = (1 - p + f p)/(1 - f)``."""
    return (1 - p + f * p) / (1 - f)


def series_in_x(p: float, terms: int) -> np.ndarray:
    """Coefficients ``c_k = sum_l b[k, l] (p - 1/2)^l`` over ``k + l < terms``,
    so the truncated density is ``sum_k c_k (x - 1/2)^k``."""
    b = float_coefficients(terms)
    P = p - 0.5
    powers = P ** np.arange(terms)
    # b is zero outside the triangle, so a plain product respects the truncation
    return b @ powers


def last_diagonal(p: float, u, terms: int):
    """Contribution of the degree ``terms - 1`` diagonal at ``u = x - 1/2``."""
    b = float_coefficients(terms)
    P = p - 0.5
    n = terms - 1
    u = np.asarray(u, dtype=float)
    total = np.zeros_like(u)
    for k in range(n + 1):
        total += b[k, n - k] * u**k * P ** (n - k)
    return total


@dataclass(frozen=True)
class XpSampler:
    p: float
    terms: int
    gamma: float
    alpha_mass: float
    beta_mass: float
    grid: np.ndarray = field(repr=False)
    beta_cdf: np.ndarray = field(repr=False)
    beta_series: np.ndarray = field(repr=False)

    @property
    def constant(self) -> bool:
        return self.p <= 0.5

    def beta_density(self, x):
        """Truncated ``beta_p`` at ``x`` in ``[1/2, p]``."""
        return npoly.polyval(np.asarray(x, dtype=float) - 0.5, self.beta_series)

    def raw_beta_cdf(self, y):
        """Truncated series integral of ``beta_p`` from ``1/2`` to ``y``."""
        integ = npoly.polyint(self.beta_series)
        return npoly.polyval(np.asarray(y, dtype=float) - 0.5, integ)

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        if self.constant:
            return np.full(size, self.p)
        u = rng.random(size)
        out = np.full(size, self.p)
        in_alpha = (u >= self.gamma) & (u < self.gamma + self.alpha_mass)
        if in_alpha.any():
            f = (u[in_alpha] - self.gamma) / self.alpha_mass * alpha_cdf(self.p, 0.5)
            out[in_alpha] = alpha_inverse(self.p, f)
        in_beta = u >= self.gamma + self.alpha_mass
        if in_beta.any():
            w = u[in_beta] - self.gamma - self.alpha_mass
            out[in_beta] = np.interp(w, self.beta_cdf, self.grid)
        return out


def build_sampler(p: float, terms: int = DEFAULT_TERMS, step: float = GRID_STEP) -> XpSampler:
    p = float(p)
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if terms < 1:
        raise ValueError("need at least one series term")
    empty = np.zeros(0)
    if p <= 0.5:
        return XpSampler(p, terms, 1.0, 0.0, 0.0, empty, empty, empty)
    series = series_in_x(p, terms)
    points = max(2, math.ceil((p - 0.5) / step) + 1)
    grid = np.linspace(0.5, p, points)
    raw = npoly.polyval(grid - 0.5, npoly.polyint(series))
    raw = np.maximum.accumulate(np.maximum(raw, 0.0))
    target = beta_mass(p)
    if raw[-1] > 0:
        cdf = raw * (target / raw[-1])
    else:
        cdf = np.linspace(0.0, target, points)
    return XpSampler(
        p=p,
        terms=terms,
        gamma=point_mass(p),
        alpha_mass=alpha_mass(p),
        beta_mass=target,
        grid=grid,
        beta_cdf=cdf,
        beta_series=series,
    )


@dataclass(frozen=True)
class ScanRow:
    p: float
    min_beta: float
    mass_residual: float
    tail_at_K: float


def scan_point(p: float, terms: int = DEFAULT_TERMS, step: float = GRID_STEP) -> ScanRow:
    """Numerical evidence for one ``p``: smallest truncated density on the grid,
    ``|gamma + int alpha + int beta_hat - 1|`` by adaptive quadrature, and the
    largest size of the last diagonal's contribution on the grid."""
    if not 0.5 < p < 1:
        raise ValueError(f"scan needs p in (1/2, 1), got {p}")
    s = build_sampler(p, terms, step)
    dens = s.beta_density(s.grid)
    mass, _err = integrate.quad(lambda x: float(s.beta_density(x)), 0.5, p, limit=200)
    residual = abs(s.gamma + s.alpha_mass + mass - 1.0)
    tail = float(np.max(np.abs(last_diagonal(p, s.grid - 0.5, terms))))
    return ScanRow(p=p, min_beta=float(dens.min()), mass_residual=residual, tail_at_K=tail)


def conjecture_scan(p_grid, x_resolution: float = GRID_STEP, K: int = DEFAULT_TERMS) -> list[ScanRow]:
    """Evaluate :func:`scan_point` over ``p_grid``; reports, never asserts."""
    if K < 50:
        raise ValueError("the scan needs K >= 50 series diagonals")
    return [scan_point(float(p), K, x_resolution) for p in p_grid]
