"""Nystrom solution of the covariance eigenproblem, two-grid eigen-error
estimation, and the residual-standard integrals for truncated models
built from approximate eigenpairs.

Conventions
-----------
The eigenproblem is written a(t) = lam * integral_0^T B(t, s) a(s) ds,
so the reported lambda_hat are reciprocals of the operator eigenvalues
and are enumerated ascending.  Eigenfunctions are L2(0, T)-orthonormal
under the quadrature rule and sign-fixed so that the first grid node
where |a_hat_k| > 1e-8 is positive.  The truncated model is

    X_N(t) = sum_{k<=N} xi_k * a_hat_k(t) / sqrt(lambda_hat_k),

whose sample covariance converges to Var(xi) * sum a_hat a_hat'/lambda_hat.

Error model: eta_k bounds |lambda_k - lambda_hat_k| and delta_k(t)
bounds |a_k(t) - a_hat_k(t)| pointwise.  Both are produced by a two-grid
estimator (coarse n vs fine 2n solve, scaled by a safety factor), since
the eigenpairs of interesting kernels are rarely available exactly.

Residual integrals: the retained part of the error splits per mode into
an eigenfunction part delta_k/sqrt(lambda_hat_k - eta_k) and an
eigenvalue part |a_hat_k| (sqrt(lambda_hat_k) - sqrt(lambda_hat_k -
eta_k)) / sqrt(lambda_hat_k (lambda_hat_k - eta_k)); the two parts share
the same random coefficient but enter the power sum as separate
summands, so their joint worst case can be undercounted by up to a
factor sqrt(2) per mode.  The Monte Carlo verifier provides the
empirical backstop for this known slack.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable

import numpy as np

from .bounds import AccuracyTarget, check_conditions_generic
from .errors import (
    CapabilityError,
    DegeneracyError,
    DomainError,
    KernelError,
    RankError,
)
from .orlicz import OrliczSpec, check_power_convexity
from .quadrature import Grid, grid_for_nodes
from .series import ModelPlan
from .subgaussian import SubGaussianSource, sample, substream, tau_of


@dataclass(frozen=True)
class AnalyticEigenpairs:
    """Closed-form eigenpairs for oracle use and tail closure.

    tail_envelope(K, s) must upper-bound sum_{k>K} sup|a_k|^s lam_k^{-s/2}.
    """

    eigenvalue: Callable[[int], float]
    eigenfunction: Callable[[int, np.ndarray], np.ndarray]
    sup_abs: Callable[[int], float]
    tail_envelope: Callable[[int, float], float] | None = None


@dataclass(frozen=True)
class KernelSpec:
    """Covariance kernel B on [0, T]^2. B must broadcast over numpy arrays."""

    kind: str
    B: Callable[[np.ndarray, np.ndarray], np.ndarray]
    T: float
    analytic: AnalyticEigenpairs | None = None

    def diagonal(self, t: np.ndarray) -> np.ndarray:
        return np.asarray(self.B(t, t), dtype=float)


def brownian_kernel(T: float = 1.0) -> KernelSpec:
    """B(t, s) = min(t, s): eigenvalues ((k-1/2)pi/T)^2 with sine
    eigenfunctions, available analytically for oracles and coupling."""
    omega = lambda k: (k - 0.5) * np.pi / T
    amp = np.sqrt(2.0 / T)

    def envelope(K: int, s: float) -> float:
        if s <= 1.0:
            raise DomainError("tail envelope needs s > 1")
        # sum_{k>K} (k-1/2)^{-s} <= (K-1/2)^{1-s}/(s-1)
        return amp**s * (T / np.pi) ** s * (K - 0.5) ** (1.0 - s) / (s - 1.0)

    analytic = AnalyticEigenpairs(
        eigenvalue=lambda k: float(omega(k) ** 2),
        eigenfunction=lambda k, t: amp * np.sin(omega(k) * t),
        sup_abs=lambda k: float(amp),
        tail_envelope=envelope,
    )
    return KernelSpec(kind="brownian", B=np.minimum, T=float(T), analytic=analytic)


def ou_kernel(theta: float, T: float = 1.0) -> KernelSpec:
    """Exponential kernel B(t, s) = exp(-theta |t - s|)."""
    if theta <= 0:
        raise DomainError("theta must be positive")
    return KernelSpec(
        kind="ou",
        B=lambda t, s: np.exp(-theta * np.abs(t - s)),
        T=float(T),
    )


def custom_kernel(B, T: float, analytic: AnalyticEigenpairs | None = None) -> KernelSpec:
    return KernelSpec(kind="custom", B=B, T=float(T), analytic=analytic)


def rank_one_kernel(g, T: float = 1.0) -> KernelSpec:
    """B(t, s) = g(t) g(s); a single-mode Mercer kernel for tests."""
    return KernelSpec(kind="custom", B=lambda t, s: g(t) * g(s), T=float(T))


@dataclass(frozen=True)
class EigenSystem:
    """Approximate eigenpairs with error bounds, on a quadrature grid.

    lambda_hat ascending; a_hat columns quadrature-orthonormal and
    sign-fixed; eta and delta_fun are the eigenvalue and pointwise
    eigenfunction error bounds (zero when no estimate was run).
    """

    grid: Grid
    lambda_hat: np.ndarray
    a_hat: np.ndarray
    eta: np.ndarray = field(default=None)  # type: ignore[assignment]
    delta_fun: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        M = self.lambda_hat.size
        if self.a_hat.shape != (self.grid.n, M):
            raise DomainError("a_hat must be (n_nodes, M)")
        if np.any(np.diff(self.lambda_hat) < 0):
            raise DomainError("lambda_hat must be ascending")
        if self.eta is None:
            object.__setattr__(self, "eta", np.zeros(M))
        if self.delta_fun is None:
            object.__setattr__(self, "delta_fun", np.zeros_like(self.a_hat))
        if self.eta.shape != (M,) or self.delta_fun.shape != self.a_hat.shape:
            raise DomainError("error bounds must match the eigenpair shapes")

    @property
    def n_modes(self) -> int:
        return int(self.lambda_hat.size)

    def gram(self) -> np.ndarray:
        return (self.a_hat * self.grid.w[:, None]).T @ self.a_hat

    def mode_functions(self) -> np.ndarray:
        """Columns a_hat_k / sqrt(lambda_hat_k): the model basis."""
        return self.a_hat / np.sqrt(self.lambda_hat)[None, :]


def _fix_signs(a: np.ndarray) -> np.ndarray:
    a = a.copy()
    for k in range(a.shape[1]):
        nz = np.nonzero(np.abs(a[:, k]) > 1e-8)[0]
        j = nz[0] if nz.size else 0
        if a[j, k] < 0:
            a[:, k] = -a[:, k]
    return a


def nystrom_eigensystem(
    kernel: KernelSpec,
    n_nodes: int,
    M: int,
    psd_tol: float = 1e-8,
    rank_tol: float = 1e-12,
) -> EigenSystem:
    """Discretize the covariance operator on a Gauss-Legendre grid,
    symmetrize by square-root weights, and solve the dense symmetric
    eigenproblem.  Returns the M smallest lambda_hat (largest operator
    eigenvalues) with weight-corrected, L2-orthonormal eigenfunctions."""
    if not 1 <= M <= n_nodes:
        raise DomainError("need n_nodes >= M >= 1")
    grid = grid_for_nodes(kernel.T, n_nodes)
    K = np.asarray(kernel.B(grid.t[:, None], grid.t[None, :]), dtype=float)
    scale = float(np.abs(K).max()) or 1.0
    if np.abs(K - K.T).max() > 1e-10 * scale:
        raise KernelError("kernel is not symmetric on the grid")
    sw = np.sqrt(grid.w)
    A = K * np.outer(sw, sw)
    A = 0.5 * (A + A.T)
    nu, U = np.linalg.eigh(A)
    nu_max = float(nu[-1])
    if nu_max <= 0:
        raise KernelError("discretized kernel has no positive eigenvalues")
    if nu[0] < -psd_tol * nu_max:
        raise KernelError(
            f"discretized kernel is not positive semidefinite (min eigenvalue {nu[0]:.3e})"
        )
    nu_desc = nu[::-1][:M]
    U_desc = U[:, ::-1][:, :M]
    if nu_desc[-1] <= rank_tol * nu_max:
        raise RankError(f"mode {M} is below the resolvable rank of the discretization")
    a_hat = _fix_signs(U_desc / sw[:, None])
    lam = 1.0 / nu_desc  # ascending because nu_desc is descending
    return EigenSystem(grid=grid, lambda_hat=lam, a_hat=a_hat)


def nystrom_extend(kernel: KernelSpec, eig: EigenSystem, t_new: np.ndarray) -> np.ndarray:
    """Eigenfunction values between nodes:
    a_hat_k(t) = lambda_hat_k * sum_j w_j B(t, s_j) a_hat_k(s_j)."""
    Kts = np.asarray(kernel.B(np.asarray(t_new)[:, None], eig.grid.t[None, :]), dtype=float)
    return (Kts * eig.grid.w[None, :]) @ eig.a_hat * eig.lambda_hat[None, :]


def estimate_errors(
    kernel: KernelSpec,
    n_nodes: int,
    M: int,
    safety: float = 2.0,
    match_tol: float = 0.9,
) -> tuple[np.ndarray, np.ndarray]:
    """Two-grid eigen-error estimates for the n_nodes system:
    eta_k = safety * |lambda_hat^(n) - lambda_hat^(2n)| and
    delta_k(t) = safety * |a_hat^(n)(t) - a_hat^(2n)(t)| after sign
    alignment on the coarse grid.  Raises DegeneracyError when index
    matching between the grids fails."""
    if safety < 1.0:
        raise DomainError("safety factor must be >= 1")
    eig = two_grid_eigensystem(kernel, n_nodes, M, safety=safety, match_tol=match_tol)
    return eig.eta, eig.delta_fun


def two_grid_eigensystem(
    kernel: KernelSpec,
    n_nodes: int,
    M: int,
    safety: float = 2.0,
    match_tol: float = 0.9,
) -> EigenSystem:
    """The n_nodes Nystrom system with eta/delta_fun filled from a
    comparison against the 2*n_nodes solve."""
    coarse = nystrom_eigensystem(kernel, n_nodes, M)
    fine = nystrom_eigensystem(kernel, 2 * n_nodes, M)
    ext = nystrom_extend(kernel, fine, coarse.grid.t)
    w = coarse.grid.w
    delta = np.empty_like(coarse.a_hat)
    for k in range(M):
        ip = float(np.sum(w * coarse.a_hat[:, k] * ext[:, k]))
        if ip < 0:
            ext[:, k] = -ext[:, k]
            ip = -ip
        norm_ext = float(np.sqrt(np.sum(w * ext[:, k] ** 2)))
        if norm_ext == 0.0 or ip / norm_ext < match_tol:
            raise DegeneracyError(
                f"eigenpair {k + 1} does not match between grids; reduce the mode count"
            )
        delta[:, k] = safety * np.abs(coarse.a_hat[:, k] - ext[:, k])
    eta = safety * np.abs(coarse.lambda_hat - fine.lambda_hat)
    return replace(coarse, eta=eta, delta_fun=delta)


# ---------------------------------------------------------------------------
# Tail information beyond the retained modes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KLTail:
    """Closure of sum_{k>N} tau_k^s |a_k(t)|^s / lambda_k^{s/2} (power_sum)
    and of the verbatim-display variant sum tau^g a^{2g}/lambda^g
    (literal11_sum), both as exact values or upper envelopes."""

    kind: str
    power_sum: Callable[[int, np.ndarray, float], np.ndarray]
    literal11_sum: Callable[[int, np.ndarray, float], np.ndarray] | None = None


def analytic_kl_tail(kernel: KernelSpec, tau: float, terms: int = 2000) -> KLTail:
    """Tail built from the kernel's analytic eigenpairs.

    For s = 2 the diagonal identity B(t,t) = sum a_k^2/lambda_k closes the
    sum exactly; other exponents use a truncated sum plus the analytic
    remainder envelope."""
    if kernel.analytic is None:
        raise CapabilityError("kernel has no analytic eigenpairs to close the tail")
    an = kernel.analytic

    def power_sum(N: int, t: np.ndarray, s: float) -> np.ndarray:
        if s == 2.0:
            acc = kernel.diagonal(t).astype(float).copy()
            for k in range(1, N + 1):
                acc -= an.eigenfunction(k, t) ** 2 / an.eigenvalue(k)
            return tau**2 * np.maximum(acc, 0.0)
        K = N + terms
        acc = np.zeros_like(t, dtype=float)
        for k in range(N + 1, K + 1):
            acc += np.abs(an.eigenfunction(k, t)) ** s / an.eigenvalue(k) ** (s / 2.0)
        if an.tail_envelope is None:
            raise CapabilityError("analytic eigenpairs lack a tail envelope for s != 2")
        return tau**s * (acc + an.tail_envelope(K, s))

    def literal11_sum(N: int, t: np.ndarray, gamma: float) -> np.ndarray:
        K = N + terms
        acc = np.zeros_like(t, dtype=float)
        for k in range(N + 1, K + 1):
            acc += np.abs(an.eigenfunction(k, t)) ** (2 * gamma) / an.eigenvalue(k) ** gamma
        if an.tail_envelope is None:
            raise CapabilityError("analytic eigenpairs lack a tail envelope")
        return tau**gamma * (acc + an.tail_envelope(K, 2.0 * gamma))

    return KLTail(kind="closed_form", power_sum=power_sum, literal11_sum=literal11_sum)


# ---------------------------------------------------------------------------
# Residual-standard integrals
# ---------------------------------------------------------------------------


def _require_eta_margin(eig: EigenSystem, N: int):
    if not 0 <= N <= eig.n_modes:
        raise DomainError("N must lie in [0, number of modes]")
    bad = np.nonzero(eig.eta[:N] >= eig.lambda_hat[:N])[0]
    if bad.size:
        k = int(bad[0]) + 1
        raise DomainError(
            f"eigenvalue error bound eta_{k} >= lambda_hat_{k}; the mode is unusable"
        )


def _retained_s2_profile(eig: EigenSystem, taus: np.ndarray, N: int) -> np.ndarray:
    """sum_{k<=N} tau_k^2 (delta_k^2/(lam-eta) + a_hat_k^2 korr_k) with
    korr_k = (sqrt(lam) - sqrt(lam-eta))^2 / (lam (lam-eta))."""
    lam = eig.lambda_hat[:N]
    eta = eig.eta[:N]
    d = eig.delta_fun[:, :N]
    a = eig.a_hat[:, :N]
    korr = (np.sqrt(lam) - np.sqrt(lam - eta)) ** 2 / (lam * (lam - eta))
    per_mode = d**2 / (lam - eta)[None, :] + a**2 * korr[None, :]
    return (per_mode * (taus[:N] ** 2)[None, :]).sum(axis=1)


def cN_theorem9(
    eig: EigenSystem,
    taus,
    N: int,
    p: float,
    tail: KLTail,
) -> float:
    """Residual integral with per-mode error terms and an explicit tail:

    integral ( sum_{k<=N} tau_k^2 [delta_k^2/(lam_k - eta_k)
               + a_hat_k^2 (sqrt(lam_k) - sqrt(lam_k - eta_k))^2
                 / (lam_k (lam_k - eta_k))]
             + tail(N, t, 2) )^{p/2} dt.
    """
    _require_eta_margin(eig, N)
    taus = np.asarray(taus, dtype=float)
    if taus.size < N:
        raise DomainError("need a tau for every retained mode")
    profile = tail.power_sum(N, eig.grid.t, 2.0)
    if N > 0:
        profile = profile + _retained_s2_profile(eig, taus, N)
    return eig.grid.integrate(profile ** (p / 2.0))


def cN_theorem10(
    eig: EigenSystem,
    tau: float,
    N: int,
    p: float,
    kernel_diagonal: Callable[[np.ndarray], np.ndarray],
    mode: str = "consistent",
) -> float:
    """Mercer-route residual integral: no tail eigenfunctions needed.

    The truncation tail is bounded through the kernel diagonal,
    B(t,t) - sum_{k<=N} (|a_hat_k| - delta_k)_+^2 / (lam_k + eta_k),
    clamped at zero, plus the same per-mode error terms.  The prefactor
    is tau^p; mode="paper-literal" keeps the alternative tau^{p/2}
    prefactor and the un-clamped (a_hat - delta)^2 numerator on record.
    """
    if mode not in ("consistent", "paper-literal"):
        raise DomainError(f"unknown mode {mode!r}")
    _require_eta_margin(eig, N)
    t = eig.grid.t
    diag = np.asarray(kernel_diagonal(t), dtype=float)
    lam = eig.lambda_hat[:N]
    eta = eig.eta[:N]
    a = eig.a_hat[:, :N]
    d = eig.delta_fun[:, :N]
    if mode == "consistent":
        num = np.maximum(np.abs(a) - d, 0.0) ** 2
    else:
        num = (a - d) ** 2
    bracket = diag - (num / (lam + eta)[None, :]).sum(axis=1) if N > 0 else diag
    bracket = np.maximum(bracket, 0.0)
    corr = np.zeros_like(t)
    if N > 0:
        korr = (np.sqrt(lam) - np.sqrt(lam - eta)) ** 2 / (lam * (lam - eta))
        corr = (d**2 / (lam - eta)[None, :] + a**2 * korr[None, :]).sum(axis=1)
    pref = tau**p if mode == "consistent" else tau ** (p / 2.0)
    return pref * eig.grid.integrate((bracket + corr) ** (p / 2.0))


def cN_theorem11(
    eig: EigenSystem,
    taus,
    N: int,
    p: float,
    gamma: float,
    tail: KLTail,
    mode: str = "consistent",
) -> float:
    """Residual integral with the gamma power sum, 1 < gamma < 2.

    mode="consistent" (default) applies the power-sum inequality to the
    scaled coefficients a_k/sqrt(lam_k): mode k <= N contributes
    tau_k^g (delta_k/sqrt(lam_k - eta_k))^g
    + tau_k^g (|a_hat_k| (sqrt(lam_k) - sqrt(lam_k - eta_k))
               / sqrt(lam_k (lam_k - eta_k)))^g,
    the tail contributes tau^g |a_k|^g / lam_k^{g/2}, and the value
    coincides with the s = 2 formula at gamma -> 2.  mode="paper-literal"
    keeps the displayed exponents (delta^g/(lam - eta)^g, korr^g over
    (lam (lam - eta))^g, tail a^{2g}/lam^g) on record.
    """
    if not 1.0 < gamma < 2.0:
        raise DomainError("gamma must lie in (1, 2)")
    if mode not in ("consistent", "paper-literal"):
        raise DomainError(f"unknown mode {mode!r}")
    _require_eta_margin(eig, N)
    taus = np.asarray(taus, dtype=float)
    if taus.size < N:
        raise DomainError("need a tau for every retained mode")
    t = eig.grid.t
    lam = eig.lambda_hat[:N]
    eta = eig.eta[:N]
    a = np.abs(eig.a_hat[:, :N])
    d = eig.delta_fun[:, :N]
    root_gap = np.sqrt(lam) - np.sqrt(lam - eta)
    if mode == "consistent":
        fn_part = (d / np.sqrt(lam - eta)[None, :]) ** gamma
        val_part = (a * (root_gap / np.sqrt(lam * (lam - eta)))[None, :]) ** gamma
        profile = tail.power_sum(N, t, gamma)
    else:
        fn_part = d**gamma / ((lam - eta) ** gamma)[None, :]
        val_part = a**gamma * (root_gap**gamma / (lam * (lam - eta)) ** gamma)[None, :]
        if tail.literal11_sum is None:
            raise CapabilityError("tail lacks the literal-display power sum")
        profile = tail.literal11_sum(N, t, gamma)
    if N > 0:
        profile = profile + ((fn_part + val_part) * (taus[:N] ** gamma)[None, :]).sum(axis=1)
    return eig.grid.integrate(profile ** (p / gamma))


# ---------------------------------------------------------------------------
# Planner and simulator
# ---------------------------------------------------------------------------

ROUTES = ("theorem9", "theorem10", "theorem11")


def build_kl_model(
    kernel: KernelSpec,
    spec: OrliczSpec,
    source: SubGaussianSource,
    target: AccuracyTarget,
    route: str = "theorem10",
    n_nodes: int = 256,
    modes: int = 20,
    safety: float = 2.0,
    mode: str = "consistent",
    tail: KLTail | None = None,
) -> ModelPlan:
    """Plan a truncated model: solve the eigenproblem with two-grid error
    bounds, compute tau for the coefficient source, scan N upward through
    the selected residual formula, and return the first admissible plan
    (or the best infeasible one)."""
    if route not in ROUTES:
        raise DomainError(f"route must be one of {ROUTES}")
    if abs(kernel.T - target.T) > 1e-12 * max(1.0, target.T):
        raise DomainError("kernel domain and target interval length disagree")
    if route == "theorem11":
        if spec.family != "power" or not spec.gamma < 2.0:
            raise DomainError("route theorem11 requires the power family with gamma < 2")
        s = spec.gamma
    else:
        if not check_power_convexity(spec, 2.0):
            raise CapabilityError("phi(|x|^{1/2}) is not convex; s = 2 routes unavailable")
        s = 2.0
    tau = tau_of(source, spec)
    eig = two_grid_eigensystem(kernel, n_nodes, modes, safety=safety)
    if route in ("theorem9", "theorem11") and tail is None:
        tail = analytic_kl_tail(kernel, tau)

    # modes whose eigenvalue error bound swallows the eigenvalue are unusable
    bad = np.nonzero(eig.eta >= eig.lambda_hat)[0]
    n_scan = min(modes, int(bad[0])) if bad.size else modes

    def c_of(N: int) -> float:
        if route == "theorem9":
            return cN_theorem9(eig, np.full(N, tau), N, target.p, tail)
        if route == "theorem10":
            return cN_theorem10(eig, tau, N, target.p, kernel.diagonal, mode=mode)
        return cN_theorem11(eig, np.full(N, tau), N, target.p, spec.gamma, tail, mode=mode)

    best = None
    for N in range(1, n_scan + 1):
        c = c_of(N)
        rep = check_conditions_generic(c, target, spec)
        if rep.admissible:
            return ModelPlan(
                feasible=True,
                n_terms=N,
                c_N=c,
                report=rep,
                target=target,
                spec=spec,
                route=route,
                mode=mode,
                s_exponent=s,
                grid=eig.grid,
                eigensystem=eig,
                source=source,
                tau=tau,
            )
        if best is None or c < best[1]:
            best = (N, c, rep)
    if best is None:
        N, c, rep = 0, float("inf"), check_conditions_generic(float("inf"), target, spec)
    else:
        N, c, rep = best
    return ModelPlan(
        feasible=False,
        n_terms=N,
        c_N=c,
        report=rep,
        target=target,
        spec=spec,
        route=route,
        mode=mode,
        s_exponent=s,
        grid=eig.grid,
        eigensystem=eig,
        source=source,
        tau=tau,
    )


def simulate_kl(plan: ModelPlan, n_paths: int, seed: int) -> np.ndarray:
    """Independent model realizations on the plan's grid, one row per
    path; path i draws its coefficients from substream (seed, i)."""
    if not plan.feasible:
        raise DomainError("cannot simulate an infeasible plan")
    if plan.eigensystem is None or plan.source is None:
        raise DomainError("plan lacks eigendata or a coefficient source")
    basis = plan.eigensystem.mode_functions()[:, : plan.n_terms]
    out = np.empty((n_paths, basis.shape[0]))
    for i in range(n_paths):
        xi = sample(plan.source, substream(seed, i), size=plan.n_terms)
        out[i] = basis @ xi
    return out


# ---------------------------------------------------------------------------
# CSV export of eigendata
# ---------------------------------------------------------------------------


def save_eigensystem(eig: EigenSystem, directory: str | Path, schema_version: int = 1):
    """Two CSV files: eigenfunctions (t grid + one column per mode) and a
    manifest of lambda_hat / eta per mode."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    with open(directory / "eigenfunctions.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"schema_version={schema_version}"])
        writer.writerow(["t"] + [f"a_{k + 1}" for k in range(eig.n_modes)])
        for i, t in enumerate(eig.grid.t):
            writer.writerow([repr(float(t))] + [repr(float(v)) for v in eig.a_hat[i]])
    with open(directory / "eigenvalues.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"schema_version={schema_version}"])
        writer.writerow(["k", "lambda_hat", "eta"])
        for k in range(eig.n_modes):
            writer.writerow([k + 1, repr(float(eig.lambda_hat[k])), repr(float(eig.eta[k]))])
