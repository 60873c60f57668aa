import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sgmodel import (
    gaussian,
    phi_conjugate,
    power_gamma,
    rademacher,
    sample,
    substream,
    tau_of,
    tau_sum_bound,
    uniform_symmetric,
)
from sgmodel.errors import CapabilityError, DomainError
from sgmodel.subgaussian import SAMPLER_REGISTRY, SubGaussianSource, log_mgf


# ---------------------------------------------------------------------------
# tau computation
# ---------------------------------------------------------------------------


def test_tau_gaussian_exact(phi_sq):
    # L(lambda) = sigma^2 lambda^2 / 2 = phi(lambda sigma) with equality at every lambda
    assert tau_of(gaussian(1.0), phi_sq) == pytest.approx(1.0, abs=1e-6)
    assert tau_of(gaussian(2.0), phi_sq) == pytest.approx(2.0, abs=2e-6)


def test_tau_rademacher(phi_sq):
    # grid oracle: sup over lambda of sqrt(2 ln cosh lambda)/lambda = 1,
    # attained as lambda -> 0 (confirmed by dense-grid maximization)
    lam = np.logspace(-4, 2, 4001)
    oracle = float(np.max(np.sqrt(2.0 * np.log(np.cosh(lam))) / lam))
    assert oracle == pytest.approx(1.0, abs=1e-6)
    assert tau_of(rademacher(), phi_sq) == pytest.approx(1.0, abs=1e-6)


def test_tau_uniform(phi_sq):
    # the symmetric uniform on [-b, b] has tau = b/sqrt(3) under x^2/2
    # (the small-lambda limit dominates, like the Rademacher case)
    assert tau_of(uniform_symmetric(2.0), phi_sq) == pytest.approx(2.0 / np.sqrt(3.0), abs=1e-6)


def test_tau_explicit_source_returns_stored():
    src = SubGaussianSource(kind="explicit", tau=0.7, sampler_id="none")
    assert tau_of(src, power_gamma(2.0)) == 0.7


def test_tau_bound_is_valid_everywhere(phi_sq):
    # the defining inequality L(lambda) <= phi(lambda * tau) on a fresh grid
    for src in (gaussian(1.3), rademacher(), uniform_symmetric(0.8)):
        tau = tau_of(src, phi_sq)
        lam = np.logspace(-3, 3, 301)
        lhs = log_mgf(src, lam)
        rhs = (lam * tau) ** 2 / 2.0
        assert np.all(lhs <= rhs * (1.0 + 1e-6) + 1e-12)


def test_tau_power_family_interior_max():
    # for gamma < 2 the per-lambda minimum is attained at an interior lambda
    spec = power_gamma(1.5)
    tau = tau_of(rademacher(), spec)
    assert np.isfinite(tau) and tau > 0
    lam = np.logspace(-3, 3, 301)
    lhs = log_mgf(rademacher(), lam)
    rhs = np.abs(lam * tau) ** 1.5 / 1.5
    assert np.all(lhs <= rhs * (1.0 + 1e-5) + 1e-12)


@given(st.floats(min_value=0.1, max_value=10.0))
@settings(max_examples=20, deadline=None)
def test_tau_homogeneity(c):
    phi_sq = power_gamma(2.0)
    base = tau_of(gaussian(1.0), phi_sq)
    scaled = tau_of(gaussian(c), phi_sq)
    assert scaled == pytest.approx(c * base, rel=1e-6)


def test_log_mgf_explicit_raises():
    with pytest.raises(CapabilityError):
        log_mgf(SubGaussianSource(kind="explicit", tau=1.0), np.array([1.0]))


def test_tau_diverges_for_gaussian_under_light_phi():
    # exp(lambda^2/2) outgrows exp((lambda a)^gamma/gamma) for gamma < 2:
    # no finite standard exists and the computation must say so
    with pytest.raises(CapabilityError):
        tau_of(gaussian(1.0), power_gamma(1.5))


# ---------------------------------------------------------------------------
# sum bound
# ---------------------------------------------------------------------------


def test_tau_sum_examples():
    assert tau_sum_bound([3.0, 4.0], [1.0, 1.0], 2.0) == pytest.approx(5.0)
    assert tau_sum_bound([0.7], [-2.5], 1.3) == pytest.approx(2.5 * 0.7)
    assert tau_sum_bound([1.0, 1.0, 1.0], [1.0, 1.0, 1.0], 1.5) == pytest.approx(
        3.0 ** (2.0 / 3.0)
    )


def test_tau_sum_gaussian_equality_case(phi_sq):
    # independent Gaussians under x^2/2: the bound with s = 2 is exact
    rng = np.random.default_rng(5)
    sigmas = rng.uniform(0.1, 3.0, size=6)
    coeffs = rng.uniform(-2.0, 2.0, size=6)
    exact = float(np.sqrt(np.sum((coeffs * sigmas) ** 2)))
    assert tau_sum_bound(sigmas, coeffs, 2.0) == pytest.approx(exact, abs=1e-10)


def test_tau_sum_domain_errors():
    with pytest.raises(DomainError):
        tau_sum_bound([1.0], [1.0], 2.5)
    with pytest.raises(DomainError):
        tau_sum_bound([1.0, 2.0], [1.0], 2.0)
    with pytest.raises(DomainError):
        tau_sum_bound([0.0], [1.0], 2.0)


@given(
    st.lists(st.floats(min_value=0.1, max_value=5.0), min_size=1, max_size=6),
    st.floats(min_value=0.2, max_value=2.0),
)
@settings(max_examples=100, deadline=None)
def test_tau_sum_monotone(taus, s):
    coeffs = np.ones(len(taus))
    base = tau_sum_bound(taus, coeffs, s)
    bigger = tau_sum_bound(np.asarray(taus) * 1.5, coeffs, s)
    assert bigger >= base
    heavier = tau_sum_bound(taus, coeffs * 2.0, s)
    assert heavier >= base


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------


def test_sample_deterministic_per_seed():
    a = sample(gaussian(1.0), substream(42, 0))
    b = sample(gaussian(1.0), substream(42, 0))
    c = sample(gaussian(1.0), substream(42, 1))
    assert a == b and a != c


def test_sample_supports():
    rng = substream(7, 0)
    draws = sample(rademacher(), rng, size=500)
    assert set(np.unique(draws)) == {-1.0, 1.0}
    draws = sample(uniform_symmetric(2.0), substream(7, 1), size=500)
    assert np.all(np.abs(draws) <= 2.0)


@pytest.mark.parametrize(
    "src,var",
    [(gaussian(1.5), 2.25), (rademacher(), 1.0), (uniform_symmetric(2.0), 4.0 / 3.0)],
)
def test_sample_moments(src, var):
    draws = sample(src, substream(123, 0), size=200_000)
    se_mean = np.sqrt(var / draws.size)
    assert abs(draws.mean()) < 4.0 * se_mean
    assert draws.var() == pytest.approx(var, rel=0.03)
    assert src.variance == pytest.approx(var)


def test_explicit_sampler_registry():
    src = SubGaussianSource(kind="explicit", tau=1.0, sampler_id="missing")
    with pytest.raises(CapabilityError):
        sample(src, substream(0, 0))
    SAMPLER_REGISTRY["zeros"] = lambda rng, n: np.zeros(n)
    try:
        z = SubGaussianSource(kind="explicit", tau=1.0, sampler_id="zeros")
        assert sample(z, substream(0, 0), size=3).tolist() == [0.0, 0.0, 0.0]
    finally:
        SAMPLER_REGISTRY.pop("zeros")


def test_source_validation():
    with pytest.raises(DomainError):
        gaussian(0.0)
    with pytest.raises(DomainError):
        uniform_symmetric(-1.0)
    with pytest.raises(DomainError):
        SubGaussianSource(kind="pareto")


# ---------------------------------------------------------------------------
# Chernoff consistency: the scalar tail bound holds empirically
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("src", [gaussian(1.0), rademacher(), uniform_symmetric(1.5)])
def test_chernoff_consistency(src, phi_sq):
    tau = tau_of(src, phi_sq)
    n = 200_000
    draws = sample(src, substream(99, 0), size=n)
    for x in (0.5 * tau, 1.0 * tau, 2.0 * tau):
        bound = 2.0 * np.exp(-phi_conjugate(phi_sq, x / tau))
        p_emp = float(np.mean(draws > x))
        se = np.sqrt(max(p_emp, 1.0 / n) * (1.0 - min(p_emp, 1 - 1e-12)) / n)
        assert p_emp - 3.0 * se <= bound


def test_substream_order_independence():
    # drawing stream 5 never depends on whether streams 0..4 were used
    direct = sample(gaussian(1.0), substream(1000, 5), size=4)
    for i in range(5):
        sample(gaussian(1.0), substream(1000, i), size=100)
    again = sample(gaussian(1.0), substream(1000, 5), size=4)
    assert np.array_equal(direct, again)
