"""Series models X(t) = sum_k xi_k a_k(t) with approximate coefficients.

A decomposition stores, per retained term k, the approximate coefficient
function a_hat_k on the quadrature grid, a pointwise error bound
delta_k(t) >= |a_k(t) - a_hat_k(t)|, and the sub-Gaussian standard tau_k
of the random coefficient.  The part of the series beyond the stored
terms must be closed by explicit tail information: a callable producing

    power_sum(N, t, s) >= sum_{k>N} tau_k^s |a_k(t)|^s

(exact for a closed form, an upper envelope otherwise).  Truncating the
tail silently would void the guarantee, so operations that need it fail
loudly when it is absent.

The residual standard integral for s in (0, 2] is

    c_N = integral_0^T ( sum_{k<=N} tau_k^s delta_k(t)^s
                         + power_sum(N, t, s) )^{p/s} dt,

with s = 2 for the piecewise family and s = gamma for the pure power
family with gamma < 2.
"""
from __future__ import annotations

import csv
import configparser
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Callable

import numpy as np

from .bounds import AccuracyTarget, ConditionReport, check_conditions_generic
from .errors import CapabilityError, ConfigError, DomainError
from .orlicz import OrliczSpec, check_power_convexity
from .quadrature import Grid, composite_gauss_legendre

if TYPE_CHECKING:  # pragma: no cover
    from .karhunen_loeve import EigenSystem
    from .subgaussian import SubGaussianSource


@dataclass(frozen=True)
class CoefficientTerm:
    """One retained term: values of a_hat_k and delta_k on the grid, tau_k."""

    a_hat: np.ndarray
    delta: np.ndarray
    tau: float

    def __post_init__(self):
        if self.a_hat.shape != self.delta.shape:
            raise DomainError("a_hat and delta must share one grid")
        if np.any(self.delta < 0):
            raise DomainError("delta_k(t) must be >= 0 everywhere")
        if self.tau <= 0:
            raise DomainError("tau_k must be positive")


@dataclass(frozen=True)
class SeriesTail:
    """Tail information beyond the retained terms.

    kind is "closed_form" (power_sum exact) or "uniform_bound" (power_sum
    is an upper envelope); either keeps the certificate valid.
    """

    kind: str
    power_sum: Callable[[int, np.ndarray, float], np.ndarray]

    def __post_init__(self):
        if self.kind not in ("closed_form", "uniform_bound"):
            raise DomainError(f"unknown tail kind {self.kind!r}")


def zero_tail() -> SeriesTail:
    """Exactly finite series: nothing beyond the stored terms."""
    return SeriesTail(kind="closed_form", power_sum=lambda N, t, s: np.zeros_like(t))


def finite_tail(terms: list[CoefficientTerm]) -> SeriesTail:
    """Tail for a finite series whose later terms are themselves stored
    approximately: |a_k| <= |a_hat_k| + delta_k gives a valid envelope."""

    def power_sum(N: int, t: np.ndarray, s: float) -> np.ndarray:
        out = np.zeros_like(t)
        for term in terms[N:]:
            out += term.tau**s * (np.abs(term.a_hat) + term.delta) ** s
        return out

    return SeriesTail(kind="uniform_bound", power_sum=power_sum)


@dataclass(frozen=True)
class SeriesDecomposition:
    terms: tuple[CoefficientTerm, ...]
    grid: Grid
    tail: SeriesTail | None = None

    def __post_init__(self):
        for k, term in enumerate(self.terms):
            if term.a_hat.shape != self.grid.t.shape:
                raise DomainError(f"term {k + 1} is not sampled on the decomposition grid")

    @property
    def n_terms(self) -> int:
        return len(self.terms)

    def tail_power_sum(self, N: int, s: float) -> np.ndarray:
        if self.tail is None:
            raise CapabilityError(
                "decomposition has no tail information; cannot certify a truncation"
            )
        out = np.asarray(self.tail.power_sum(N, self.grid.t, s), dtype=float)
        if out.shape != self.grid.t.shape:
            raise DomainError("tail power_sum must return values on the grid")
        return out


@dataclass(frozen=True)
class ModelPlan:
    """Outcome of a planning run.

    When feasible, `n_terms` is the smallest admissible truncation level
    and `report` carries both conditions with margins at that level.
    When infeasible, they describe the best (smallest-c_N) level found.
    """

    feasible: bool
    n_terms: int
    c_N: float
    report: ConditionReport
    target: AccuracyTarget
    spec: OrliczSpec
    route: str
    mode: str = "consistent"
    s_exponent: float = 2.0
    grid: Grid | None = None
    eigensystem: "EigenSystem | None" = None
    source: "SubGaussianSource | None" = None
    tau: float | None = None
    decomposition: SeriesDecomposition | None = field(default=None, repr=False)


def _residual_power_profile(dec: SeriesDecomposition, N: int, s: float) -> np.ndarray:
    """sum_{k<=N} tau_k^s delta_k(t)^s + tail(N, t, s) on the grid."""
    if N < 0 or N > dec.n_terms:
        raise DomainError("N must lie in [0, number of stored terms]")
    acc = dec.tail_power_sum(N, s)
    for term in dec.terms[:N]:
        acc = acc + term.tau**s * term.delta**s
    return acc


def residual_tau_bound(dec: SeriesDecomposition, N: int, t_index: int, s: float) -> float:
    """Pointwise standard of the residual at one grid node:
    (sum_{k<=N} tau_k^s delta_k^s + tail_s)^{1/s}."""
    profile = _residual_power_profile(dec, N, s)
    return float(profile[t_index] ** (1.0 / s))


def _cN(dec: SeriesDecomposition, N: int, p: float, s: float) -> float:
    profile = _residual_power_profile(dec, N, s)
    return dec.grid.integrate(profile ** (p / s))


def cN_theorem7(dec: SeriesDecomposition, N: int, p: float) -> float:
    """c_N with the quadratic power sum (s = 2):
    integral ( sum_{k<=N} tau_k^2 delta_k^2 + sum_{k>N} tau_k^2 a_k^2 )^{p/2} dt."""
    return _cN(dec, N, p, 2.0)


def cN_theorem8(dec: SeriesDecomposition, N: int, p: float, gamma: float) -> float:
    """c_N with the gamma power sum for the pure power family, 1 < gamma < 2."""
    if not 1.0 < gamma < 2.0:
        raise DomainError("gamma must lie in (1, 2)")
    return _cN(dec, N, p, gamma)


def series_s_exponent(spec: OrliczSpec) -> float:
    """Power-sum exponent for the given Orlicz family: gamma for the pure
    power family below 2, otherwise 2 (requires s=2 convexity)."""
    if spec.family == "power" and spec.gamma < 2.0:
        return spec.gamma
    if not check_power_convexity(spec, 2.0):
        raise CapabilityError("phi(|x|^{1/2}) is not convex; no valid power sum available")
    return 2.0


def choose_N(
    dec: SeriesDecomposition,
    target: AccuracyTarget,
    spec: OrliczSpec,
    N_max: int,
) -> ModelPlan:
    """Smallest N <= N_max whose c_N passes both admissibility conditions.

    Returns a non-feasible plan carrying the best (N, c_N) found when no
    truncation level is admissible.
    """
    if dec.n_terms < 1:
        raise DomainError("decomposition must have at least one term")
    if not 1 <= N_max <= dec.n_terms:
        raise DomainError("N_max must lie in [1, number of stored terms]")
    s = series_s_exponent(spec)
    if not check_power_convexity(spec, s):
        raise CapabilityError(f"phi(|x|^{{1/{s}}}) is not convex")
    route = "series8" if s < 2.0 else "series7"
    best: tuple[int, float, ConditionReport] | None = None
    for N in range(1, N_max + 1):
        c = _cN(dec, N, target.p, s)
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
                s_exponent=s,
                grid=dec.grid,
                decomposition=dec,
            )
        if best is None or c < best[1]:
            best = (N, c, rep)
    N, c, rep = best
    return ModelPlan(
        feasible=False,
        n_terms=N,
        c_N=c,
        report=rep,
        target=target,
        spec=spec,
        route=route,
        s_exponent=s,
        grid=dec.grid,
        decomposition=dec,
    )


def evaluate_model(
    dec: SeriesDecomposition, N: int, xi_draws: np.ndarray, grid: Grid | None = None
) -> np.ndarray:
    """Model path sum_{k<=N} xi_k a_hat_k on the grid; linear in the draws."""
    xi = np.asarray(xi_draws, dtype=float)
    if xi.size < N:
        raise DomainError("need at least N coefficient draws")
    g = grid if grid is not None else dec.grid
    out = np.zeros_like(g.t)
    for k in range(N):
        out += xi[k] * dec.terms[k].a_hat
    return out


# ---------------------------------------------------------------------------
# CSV bundle interface: one CSV per term (t, a_hat, delta_k) plus a manifest
# listing tau_k and the tail type ("finite" or "none").
# ---------------------------------------------------------------------------


def save_decomposition(dec: SeriesDecomposition, directory: str | Path, tail: str = "finite"):
    """Write a loadable CSV bundle for the decomposition."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    manifest = configparser.ConfigParser()
    manifest["decomposition"] = {
        "schema_version": "1",
        "T": repr(float(dec.grid.T)),
        "n_nodes": str(dec.grid.n),
        "tail": tail,
    }
    for k, term in enumerate(dec.terms, start=1):
        name = f"term_{k}.csv"
        with open(directory / name, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["t", "a_hat", "delta_k"])
            for t, a, d in zip(dec.grid.t, term.a_hat, term.delta):
                writer.writerow([repr(float(t)), repr(float(a)), repr(float(d))])
        manifest[f"term {k}"] = {"file": name, "tau": repr(float(term.tau))}
    with open(directory / "manifest.cfg", "w") as fh:
        manifest.write(fh)


def load_decomposition(manifest_path: str | Path) -> SeriesDecomposition:
    """Load a CSV bundle; term columns are interpolated onto the
    decomposition's quadrature grid."""
    manifest_path = Path(manifest_path)
    parser = configparser.ConfigParser()
    if not parser.read(manifest_path):
        raise ConfigError(f"cannot read manifest {manifest_path}")
    if "decomposition" not in parser:
        raise ConfigError("manifest lacks a [decomposition] section")
    head = parser["decomposition"]
    try:
        T = float(head["T"])
        n_nodes = int(head.get("n_nodes", "512"))
        tail_kind = head.get("tail", "none").strip().lower()
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"bad [decomposition] section: {exc}") from exc
    if n_nodes % 8 == 0:
        grid = composite_gauss_legendre(T, panels=n_nodes // 8, nodes_per_panel=8)
    else:
        grid = composite_gauss_legendre(T, panels=1, nodes_per_panel=n_nodes)
    terms: list[CoefficientTerm] = []
    k = 1
    while f"term {k}" in parser:
        sec = parser[f"term {k}"]
        fname = manifest_path.parent / sec["file"]
        rows = np.genfromtxt(fname, delimiter=",", names=True)
        t = np.atleast_1d(rows["t"])
        a = np.interp(grid.t, t, np.atleast_1d(rows["a_hat"]))
        d = np.interp(grid.t, t, np.atleast_1d(rows["delta_k"]))
        terms.append(CoefficientTerm(a_hat=a, delta=np.maximum(d, 0.0), tau=float(sec["tau"])))
        k += 1
    if not terms:
        raise ConfigError("manifest lists no terms")
    if tail_kind == "finite":
        tail = finite_tail(terms)
    elif tail_kind == "none":
        tail = None
    else:
        raise ConfigError(f"unknown tail type {tail_kind!r} (expected finite|none)")
    return SeriesDecomposition(terms=tuple(terms), grid=grid, tail=tail)
