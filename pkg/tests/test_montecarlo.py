import numpy as np
import pytest
from dataclasses import replace
from hypothesis import given, settings
from hypothesis import strategies as st

from sgmodel import (
    AccuracyTarget,
    brownian_kernel,
    build_kl_model,
    custom_kernel,
    gaussian,
    grid_for_nodes,
    lp_norm,
    power_gamma,
    rademacher,
    reference_path,
    verify_plan,
)
from sgmodel.errors import CapabilityError, DomainError
from sgmodel.montecarlo import CovarianceFactorization, per_path_norms, wilson_upper
from sgmodel.subgaussian import SAMPLER_REGISTRY, SubGaussianSource, substream


@pytest.fixture(scope="module")
def plan():
    return build_kl_model(
        brownian_kernel(1.0),
        power_gamma(2.0),
        gaussian(1.0),
        AccuracyTarget(p=2.0, delta=0.35, alpha=0.05, T=1.0),
        route="theorem10",
        n_nodes=64,
        modes=8,
    )


# ---------------------------------------------------------------------------
# norm
# ---------------------------------------------------------------------------


def test_lp_norm_values(unit_grid):
    ones = np.ones(unit_grid.n)
    assert lp_norm(ones, unit_grid.w, 2.0) == pytest.approx(1.0, rel=1e-14)
    # v(t) = t on [0,1], p = 2: sqrt(1/3)
    assert lp_norm(unit_grid.t, unit_grid.w, 2.0) == pytest.approx(
        1.0 / np.sqrt(3.0), abs=1e-10
    )


def test_lp_norm_domain(unit_grid):
    with pytest.raises(DomainError):
        lp_norm(np.ones(unit_grid.n), unit_grid.w, 0.5)


@given(st.floats(min_value=0.0, max_value=100.0), st.floats(min_value=1.0, max_value=4.0))
@settings(max_examples=100, deadline=None)
def test_lp_norm_homogeneous(c, p):
    g = grid_for_nodes(1.0, 16)
    v = np.sin(3.0 * g.t) + 0.5
    assert lp_norm(c * v, g.w, p) == pytest.approx(c * lp_norm(v, g.w, p), rel=1e-10)


def test_lp_norm_triangle(unit_grid):
    rng = np.random.default_rng(4)
    for p in (1.0, 2.0, 3.5):
        for _ in range(20):
            u = rng.normal(size=unit_grid.n)
            v = rng.normal(size=unit_grid.n)
            assert lp_norm(u + v, unit_grid.w, p) <= (
                lp_norm(u, unit_grid.w, p) + lp_norm(v, unit_grid.w, p) + 1e-12
            )


def test_wilson_upper_behaviour():
    assert 0.0 < wilson_upper(0, 1000) < 0.01
    assert wilson_upper(1000, 1000) == 1.0
    assert wilson_upper(10, 1000) > 10 / 1000
    with pytest.raises(DomainError):
        wilson_upper(0, 0)


# ---------------------------------------------------------------------------
# reference paths
# ---------------------------------------------------------------------------


def test_reference_variance_matches_brownian():
    kernel = brownian_kernel(1.0)
    grid = grid_for_nodes(1.0, 64)
    fact = CovarianceFactorization(kernel, grid)
    n = 20_000
    rng = substream(31, 0)
    paths = np.array([fact.sample(rng) for _ in range(n)])
    for j in (10, 32, 55):
        t = grid.t[j]
        se = t * np.sqrt(2.0 / n)
        assert abs(paths[:, j].var() - t) < 4.0 * se


def test_reference_path_deterministic():
    kernel = brownian_kernel(1.0)
    grid = grid_for_nodes(1.0, 32)
    a = reference_path(kernel, gaussian(1.0), grid, seed=5)
    b = reference_path(kernel, gaussian(1.0), grid, seed=5)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, reference_path(kernel, gaussian(1.0), grid, seed=6))


def test_reference_path_zero_draws():
    kernel = brownian_kernel(1.0)
    grid = grid_for_nodes(1.0, 32)
    SAMPLER_REGISTRY["zeros"] = lambda rng, n: np.zeros(n)
    try:
        src = SubGaussianSource(kind="explicit", tau=1.0, sampler_id="zeros")
        assert np.all(reference_path(kernel, src, grid, seed=0) == 0.0)
    finally:
        SAMPLER_REGISTRY.pop("zeros")


def test_reference_path_capability():
    # no analytic eigenpairs and a non-Gaussian source: cannot sample X
    bare_min = custom_kernel(np.minimum, 1.0)
    grid = grid_for_nodes(1.0, 32)
    with pytest.raises(CapabilityError):
        reference_path(bare_min, rademacher(), grid, seed=0)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


def test_verify_plan_passes(plan):
    kernel = brownian_kernel(1.0)
    rep = verify_plan(plan, kernel, gaussian(1.0), n_paths=4000, seed=10)
    assert rep.passed
    assert rep.coupled
    assert rep.p_hat == rep.exceed_count / rep.n_paths
    assert rep.wilson_upper <= 0.05
    # the certified bound dominates the empirical rate
    se = np.sqrt(max(rep.p_hat, 1e-4) * (1 - rep.p_hat) / rep.n_paths)
    assert rep.theoretical_bound >= rep.p_hat - 3.0 * se


def test_verify_inflated_delta_no_exceedances(plan):
    kernel = brownian_kernel(1.0)
    easy = replace(plan, target=replace(plan.target, delta=3.5))
    rep = verify_plan(easy, kernel, gaussian(1.0), n_paths=1000, seed=1)
    assert rep.exceed_count == 0


def test_verify_tiny_delta_all_exceed(plan):
    kernel = brownian_kernel(1.0)
    hard = replace(plan, target=replace(plan.target, delta=1e-12))
    rep = verify_plan(hard, kernel, gaussian(1.0), n_paths=500, seed=1)
    assert rep.p_hat == 1.0 and not rep.passed


def test_verify_deterministic(plan):
    kernel = brownian_kernel(1.0)
    a = verify_plan(plan, kernel, gaussian(1.0), n_paths=800, seed=3)
    b = verify_plan(plan, kernel, gaussian(1.0), n_paths=800, seed=3)
    assert a.to_json() == b.to_json()


def test_coupled_exceedance_below_uncoupled(plan):
    # stripping the analytic eigenpairs forces the uncoupled (conservative)
    # route; on matched seeds the coupled rate never exceeds it
    coupled_kernel = brownian_kernel(1.0)
    uncoupled_kernel = custom_kernel(np.minimum, 1.0)
    mid = replace(plan, target=replace(plan.target, delta=0.6))
    rc = verify_plan(mid, coupled_kernel, gaussian(1.0), n_paths=1500, seed=9)
    ru = verify_plan(mid, uncoupled_kernel, gaussian(1.0), n_paths=1500, seed=9)
    assert rc.coupled and not ru.coupled
    assert rc.exceed_count <= ru.exceed_count


def test_verify_infeasible_plan_rejected(plan):
    bad = replace(plan, feasible=False)
    with pytest.raises(DomainError):
        verify_plan(bad, brownian_kernel(1.0), gaussian(1.0), n_paths=10, seed=0)


def test_report_json_has_pass_key(plan):
    import json

    rep = verify_plan(plan, brownian_kernel(1.0), gaussian(1.0), n_paths=200, seed=2)
    rec = json.loads(rep.to_json())
    for key in ("n_paths", "exceed_count", "p_hat", "wilson_upper", "alpha",
                "theoretical_bound", "pass"):
        assert key in rec


def test_per_path_norms(plan):
    norms = per_path_norms(plan, brownian_kernel(1.0), gaussian(1.0), 100, seed=4)
    assert norms.shape == (100,)
    assert np.all(norms >= 0)
    again = per_path_norms(plan, brownian_kernel(1.0), gaussian(1.0), 100, seed=4)
    assert np.array_equal(norms, again)
    # exceedance computed from the norms agrees with verify_plan
    rep = verify_plan(plan, brownian_kernel(1.0), gaussian(1.0), n_paths=100, seed=4)
    assert rep.exceed_count == int(np.sum(norms > plan.target.delta))
