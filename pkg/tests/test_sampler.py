import math

import numpy as np
import pytest
from scipy import integrate

from urnvote.condorcet.sampler import (
    alpha_cdf,
    alpha_inverse,
    alpha_mass,
    beta_mass,
    build_sampler,
    conjecture_scan,
    point_mass,
    scan_point,
)


@pytest.mark.parametrize("p", [0.55, 0.6, 0.75, 0.9, 0.95])
def test_masses_add_up(p):
    assert point_mass(p) + alpha_mass(p) + beta_mass(p) == pytest.approx(1.0, abs=1e-15)
    assert alpha_cdf(p, 0.5) == pytest.approx((2 * p - 1) / (2 * p + 1))
    quad, _ = integrate.quad(lambda x: (p + x) ** -2, 1 - p, 0.5)
    assert quad == pytest.approx(alpha_mass(p), rel=1e-12)


@pytest.mark.parametrize("f", [0.0, 0.1, 0.25, 0.3])
def test_alpha_inverse(f):
    p = 0.8
    f = min(f, alpha_cdf(p, 0.5))
    assert alpha_cdf(p, alpha_inverse(p, f)) == pytest.approx(f)


def test_constant_below_half():
    s = build_sampler(0.3)
    assert s.constant
    assert (s.sample(np.random.default_rng(0), 5) == 0.3).all()


@pytest.mark.parametrize("p", [0.6, 0.75, 0.9])
def test_truncated_mass_matches_quadrature(p):
    s = build_sampler(p, 200)
    quad, _ = integrate.quad(lambda x: float(s.beta_density(x)), 0.5, p, limit=200)
    assert abs(s.gamma + s.alpha_mass + quad - 1) < 1e-3
    assert float(s.raw_beta_cdf(p)) == pytest.approx(quad, abs=1e-10)


def test_density_meets_alpha_at_half():
    for p in (0.6, 0.8, 0.95):
        s = build_sampler(p)
        assert float(s.beta_density(0.5)) == pytest.approx((p + 0.5) ** -2)


def test_scan_envelope():
    rows = conjecture_scan(np.round(np.arange(0.55, 0.951, 0.05), 2))
    assert len(rows) == 9
    for r in rows:
        assert r.min_beta >= -1e-6
        assert r.mass_residual < 1e-3
        assert r.tail_at_K < 1e-6


def test_scan_near_half():
    r = scan_point(0.501)
    assert r.mass_residual < 1e-9
    assert point_mass(0.501) + alpha_mass(0.501) == pytest.approx(1.0, abs=0.05)


def test_scan_rejects():
    with pytest.raises(ValueError):
        scan_point(0.4)
    with pytest.raises(ValueError):
        conjecture_scan([0.7], K=10)


def test_sample_support_and_point_mass():
    p = 0.75
    s = build_sampler(p)
    x = s.sample(np.random.default_rng(1), 200_000)
    assert x.min() >= 1 - p - 1e-12 and x.max() <= p
    frac_atom = (x == p).mean()
    sd = math.sqrt(s.gamma * (1 - s.gamma) / x.size)
    assert abs(frac_atom - s.gamma) < 4 * sd
    frac_alpha = (x <= 0.5).mean()
    sd = math.sqrt(s.alpha_mass * (1 - s.alpha_mass) / x.size)
    assert abs(frac_alpha - s.alpha_mass) < 4 * sd
