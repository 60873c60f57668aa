"""Empirical verification of the accuracy/reliability contract:
P{ ||X - X_N||_{L_p(0,T)} > delta } <= alpha.

Reference paths for X come either from the analytic eigenpairs (any
coefficient source; truncated at a high N_ref with a reported variance
remainder) or, for Gaussian sources, from a symmetric square-root
factorization of the covariance matrix on the grid.

Coupling rule: when analytic eigenpairs exist, each verification path
draws one coefficient vector and feeds its first N entries to both X and
X_N, so the measured discrepancy is exactly the modelled residual.
Without analytic eigenpairs the draws are independent ("uncoupled"),
which over-counts the discrepancy and is therefore conservative.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from .bounds import tail_probability_bound
from .errors import CapabilityError, DomainError
from .karhunen_loeve import KernelSpec
from .quadrature import Grid
from .series import ModelPlan
from .subgaussian import SubGaussianSource, sample, substream

#: one-sided 95% normal quantile for the Wilson score upper bound
_Z95 = 1.6448536269514722


def lp_norm(values: np.ndarray, weights: np.ndarray, p: float) -> float:
    """(sum_i w_i |v_i|^p)^{1/p}: the quadrature L_p(0, T) norm."""
    if p < 1:
        raise DomainError("p must be >= 1")
    v = np.abs(np.asarray(values, dtype=float))
    return float((weights @ v**p) ** (1.0 / p))


def wilson_upper(exceed: int, n: int, z: float = _Z95) -> float:
    """Upper end of the Wilson score interval; well-behaved at zero counts."""
    if n < 1:
        raise DomainError("need at least one trial")
    p_hat = exceed / n
    denom = 1.0 + z * z / n
    centre = p_hat + z * z / (2.0 * n)
    half = z * np.sqrt(p_hat * (1.0 - p_hat) / n + z * z / (4.0 * n * n))
    return float(min(1.0, (centre + half) / denom))


@dataclass(frozen=True)
class VerificationReport:
    n_paths: int
    exceed_count: int
    p_hat: float
    wilson_upper: float
    alpha: float
    theoretical_bound: float
    passed: bool
    coupled: bool = True
    ref_truncation_var: float = 0.0

    def to_json(self) -> str:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return json.dumps(d, sort_keys=True)


class CovarianceFactorization:
    """Symmetric square root of B(t_i, t_j), factorized once per grid.

    Negative eigenvalues from discretization noise are clipped at zero; a
    clip beyond 1e-8 of the trace triggers a warning.
    """

    def __init__(self, kernel: KernelSpec, grid: Grid):
        K = np.asarray(kernel.B(grid.t[:, None], grid.t[None, :]), dtype=float)
        K = 0.5 * (K + K.T)
        vals, vecs = np.linalg.eigh(K)
        clipped = -float(vals[vals < 0].sum()) if np.any(vals < 0) else 0.0
        trace = float(np.trace(K))
        if trace > 0 and clipped > 1e-8 * trace:
            import warnings

            warnings.warn(
                f"covariance factorization clipped negative mass {clipped:.3e} "
                f"({clipped / trace:.2e} of the trace)",
                RuntimeWarning,
            )
        self.transform = vecs * np.sqrt(np.clip(vals, 0.0, None))[None, :]
        self.grid = grid

    def sample(self, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
        z = rng.standard_normal(self.transform.shape[1])
        return scale * (self.transform @ z)


def reference_path(
    kernel: KernelSpec,
    source: SubGaussianSource,
    grid: Grid,
    seed: int,
    n_ref: int = 512,
) -> np.ndarray:
    """One draw of the reference process X on the grid.

    Gaussian sources use the covariance factorization (exact in law);
    other sources require analytic eigenpairs and use a KL sum truncated
    at n_ref.
    """
    rng = substream(seed, 0)
    if kernel.analytic is not None:
        basis = _analytic_basis(kernel, grid, n_ref)
        xi = sample(source, rng, size=n_ref)
        return basis @ xi
    if source.kind != "gaussian":
        raise CapabilityError(
            "non-Gaussian reference paths require analytic eigenpairs for the kernel"
        )
    return CovarianceFactorization(kernel, grid).sample(rng, scale=source.sigma)


def _analytic_basis(kernel: KernelSpec, grid: Grid, n_ref: int) -> np.ndarray:
    """Columns a_k(t)/sqrt(lam_k) for k = 1..n_ref, sign-fixed like the
    Nystrom output so coupled draws cancel mode by mode."""
    an = kernel.analytic
    basis = np.empty((grid.n, n_ref))
    for k in range(1, n_ref + 1):
        col = an.eigenfunction(k, grid.t) / np.sqrt(an.eigenvalue(k))
        nz = np.nonzero(np.abs(col) > 1e-8)[0]
        if nz.size and col[nz[0]] < 0:
            col = -col
        basis[:, k - 1] = col
    return basis


def _ref_truncation_var(kernel: KernelSpec, grid: Grid, n_ref: int, var: float) -> float:
    """Integrated variance of the analytic modes dropped beyond n_ref."""
    an = kernel.analytic
    kept = np.zeros_like(grid.t)
    for k in range(1, n_ref + 1):
        kept += an.eigenfunction(k, grid.t) ** 2 / an.eigenvalue(k)
    residual = np.maximum(kernel.diagonal(grid.t) - kept, 0.0)
    return var * grid.integrate(residual)


def verify_plan(
    plan: ModelPlan,
    kernel: KernelSpec,
    source: SubGaussianSource,
    n_paths: int = 20_000,
    seed: int = 0,
    n_ref: int = 512,
) -> VerificationReport:
    """Empirical exceedance of the planned (delta, alpha) contract.

    pass requires the 95% Wilson upper confidence bound on the exceedance
    probability to stay at or below alpha.
    """
    if not plan.feasible:
        raise DomainError("cannot verify an infeasible plan")
    if plan.eigensystem is None:
        raise CapabilityError("verification requires a plan with eigendata")
    grid = plan.grid
    target = plan.target
    N = plan.n_terms
    model_basis = plan.eigensystem.mode_functions()[:, :N]

    coupled = kernel.analytic is not None
    ref_var = 0.0
    if coupled:
        n_ref = max(n_ref, N)
        ref_basis = _analytic_basis(kernel, grid, n_ref)
        diff_basis = ref_basis.copy()
        diff_basis[:, :N] -= model_basis
        ref_var = _ref_truncation_var(kernel, grid, n_ref, source.variance)
    else:
        if source.kind != "gaussian":
            raise CapabilityError(
                "uncoupled verification is only exact for Gaussian sources"
            )
        fact = CovarianceFactorization(kernel, grid)

    exceed = 0
    for i in range(n_paths):
        if coupled:
            xi = sample(source, substream(seed, i), size=n_ref)
            diff = diff_basis @ xi
        else:
            x_ref = fact.sample(substream(seed, i, 0), scale=source.sigma)
            xi = sample(source, substream(seed, i, 1), size=N)
            diff = x_ref - model_basis @ xi
        if lp_norm(diff, grid.w, target.p) > target.delta:
            exceed += 1

    upper = wilson_upper(exceed, n_paths)
    return VerificationReport(
        n_paths=n_paths,
        exceed_count=exceed,
        p_hat=exceed / n_paths,
        wilson_upper=upper,
        alpha=target.alpha,
        theoretical_bound=tail_probability_bound(plan.c_N, target, plan.spec),
        passed=bool(upper <= target.alpha),
        coupled=coupled,
        ref_truncation_var=ref_var,
    )


def per_path_norms(
    plan: ModelPlan,
    kernel: KernelSpec,
    source: SubGaussianSource,
    n_paths: int,
    seed: int,
    n_ref: int = 512,
) -> np.ndarray:
    """The L_p discrepancy norms themselves (coupled mode), for inspection."""
    if kernel.analytic is None:
        raise CapabilityError("per-path norms are implemented for coupled mode only")
    grid = plan.grid
    N = plan.n_terms
    n_ref = max(n_ref, N)
    diff_basis = _analytic_basis(kernel, grid, n_ref)
    diff_basis[:, :N] -= plan.eigensystem.mode_functions()[:, :N]
    out = np.empty(n_paths)
    for i in range(n_paths):
        xi = sample(source, substream(seed, i), size=n_ref)
        out[i] = lp_norm(diff_basis @ xi, grid.w, plan.target.p)
    return out
