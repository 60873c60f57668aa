"""Tail bound and admissibility conditions for truncated models.

A model with residual standard integral

    c_N = integral_0^T tau_phi(X(t) - X_N(t))^p dt

meets the accuracy/reliability target (delta, alpha) when

    (1)  c_N <= delta / (phi*^{-1}(ln(2/alpha)))^p          (non-strict)
    (2)  delta > c_N * f(c_N^{1/p} * p / delta^{1/p})^p     (strict)

with f the density of phi.  Condition (1) makes the exponential tail
bound 2*exp(-phi*((delta/c_N)^{1/p})) fall below alpha; condition (2) is
the validity region of that bound.  This module evaluates both, their
closed forms for the two parametric families, and the inverse solves
(largest admissible c_N, smallest certifiable delta).

delta is stored in L_p-norm units throughout; the Monte Carlo verifier
compares path norms against it directly, while the two conditions above
use it verbatim as displayed.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from .errors import DomainError
from .orlicz import OrliczSpec, phi_conjugate, phi_conjugate_inverse, phi_density


@dataclass(frozen=True)
class AccuracyTarget:
    """The modelling goal: L_p exponent, accuracy delta (norm units),
    failure probability alpha = 1 - reliability, interval length T."""

    p: float
    delta: float
    alpha: float
    T: float

    def __post_init__(self):
        if self.p < 1:
            raise DomainError("p must be >= 1")
        if not 0.0 < self.alpha < 1.0:
            raise DomainError("alpha must lie in (0, 1)")
        if self.delta <= 0:
            raise DomainError("delta must be positive")
        if self.T <= 0:
            raise DomainError("T must be positive")

    @property
    def log_two_over_alpha(self) -> float:
        return float(np.log(2.0 / self.alpha))


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of the two admissibility conditions for one c_N."""

    c_N: float
    bound_eq1: float
    eq1_ok: bool
    eq2_ok: bool
    tail_bound: float
    margin: float
    eq2_margin: float = float("nan")
    closed_form_valid: bool = True

    @property
    def admissible(self) -> bool:
        return self.eq1_ok and self.eq2_ok

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def tail_probability_bound(c: float, target: AccuracyTarget, spec: OrliczSpec) -> float:
    """min(1, 2*exp(-phi*((delta/c)^{1/p}))); 0 for a perfect model (c = 0)."""
    if c < 0:
        raise DomainError("c must be >= 0")
    if c == 0.0:
        return 0.0
    z = (target.delta / c) ** (1.0 / target.p)
    return float(min(1.0, 2.0 * np.exp(-phi_conjugate(spec, z))))


def tail_bound_valid(c: float, target: AccuracyTarget, spec: OrliczSpec) -> bool:
    """Validity condition of the tail bound:
    delta > c * f(c^{1/p} * p / delta^{1/p})^p (strict)."""
    if c < 0:
        raise DomainError("c must be >= 0")
    if c == 0.0:
        return True
    u = c ** (1.0 / target.p) * target.p / target.delta ** (1.0 / target.p)
    return target.delta > c * phi_density(spec, u) ** target.p


def _eq2_rhs(c: float, target: AccuracyTarget, spec: OrliczSpec) -> float:
    if c == 0.0:
        return 0.0
    u = c ** (1.0 / target.p) * target.p / target.delta ** (1.0 / target.p)
    return c * phi_density(spec, u) ** target.p


def check_conditions_generic(
    c_N: float, target: AccuracyTarget, spec: OrliczSpec
) -> ConditionReport:
    """Both admissibility conditions through the generic numeric path."""
    if c_N < 0:
        raise DomainError("c_N must be >= 0")
    inv = phi_conjugate_inverse(spec, target.log_two_over_alpha)
    bound_eq1 = target.delta / inv**target.p
    eq1_ok = c_N <= bound_eq1
    eq2_ok = tail_bound_valid(c_N, target, spec)
    return ConditionReport(
        c_N=c_N,
        bound_eq1=bound_eq1,
        eq1_ok=bool(eq1_ok),
        eq2_ok=bool(eq2_ok),
        tail_bound=tail_probability_bound(c_N, target, spec),
        margin=bound_eq1 - c_N,
        eq2_margin=target.delta - _eq2_rhs(c_N, target, spec),
    )


def _closed_form_report(
    c_N: float, target: AccuracyTarget, spec: OrliczSpec, gamma: float
) -> ConditionReport:
    beta = gamma / (gamma - 1.0)
    y = target.log_two_over_alpha
    bound_eq1 = target.delta / (beta * y) ** (target.p / beta)
    eq2_bound = target.delta / target.p ** (target.p * (1.0 - 1.0 / gamma))
    eq1_ok = c_N <= bound_eq1
    eq2_ok = c_N < eq2_bound
    # the closed-form conjugate branch is only proved for arguments >= 1
    closed_valid = spec.family != "piecewise" or (beta * y) ** (1.0 / beta) >= 1.0
    return ConditionReport(
        c_N=c_N,
        bound_eq1=bound_eq1,
        eq1_ok=bool(eq1_ok),
        eq2_ok=bool(eq2_ok),
        tail_bound=tail_probability_bound(c_N, target, spec),
        margin=bound_eq1 - c_N,
        eq2_margin=eq2_bound - c_N,
        closed_form_valid=bool(closed_valid),
    )


def check_conditions_power(c_N: float, target: AccuracyTarget, gamma: float) -> ConditionReport:
    """Closed forms for phi(x) = |x|^gamma/gamma, 1 < gamma <= 2:
    c_N <= delta/(beta*ln(2/alpha))^{p/beta} and c_N < delta/p^{p(1-1/gamma)}."""
    if not 1.0 < gamma <= 2.0:
        raise DomainError("power closed form requires 1 < gamma <= 2")
    from .orlicz import power_gamma

    if c_N < 0:
        raise DomainError("c_N must be >= 0")
    return _closed_form_report(c_N, target, power_gamma(gamma), gamma)


def check_conditions_piecewise(
    c_N: float, target: AccuracyTarget, gamma: float
) -> ConditionReport:
    """Same closed forms with beta = gamma/(gamma-1) < 2, for the piecewise
    family with gamma > 2.  When phi*^{-1}(ln(2/alpha)) < 1 (very large
    alpha) the closed form uses an unproved conjugate branch; the report
    carries closed_form_valid=False and the generic path is authoritative."""
    if gamma <= 2.0:
        raise DomainError("piecewise closed form requires gamma > 2")
    from .orlicz import piecewise_gamma

    if c_N < 0:
        raise DomainError("c_N must be >= 0")
    return _closed_form_report(c_N, target, piecewise_gamma(gamma), gamma)


def _passes(c: float, target: AccuracyTarget, spec: OrliczSpec) -> bool:
    rep = check_conditions_generic(c, target, spec)
    return rep.admissible


def max_admissible_cN(
    target: AccuracyTarget,
    spec: OrliczSpec,
    rel_tol: float = 1e-9,
    max_iter: int = 200,
) -> float:
    """Largest c passing both conditions (both are monotone in c)."""
    inv = phi_conjugate_inverse(spec, target.log_two_over_alpha)
    hi = max(target.delta / inv**target.p, target.delta, 1.0)
    for _ in range(200):
        if not _passes(hi, target, spec):
            break
        hi *= 2.0
    lo = 0.0
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if _passes(mid, target, spec):
            lo = mid
        else:
            hi = mid
        if hi - lo <= rel_tol * max(hi, 1e-300):
            break
    return lo


def min_certified_delta(
    c_N: float,
    alpha: float,
    p: float,
    spec: OrliczSpec,
    T: float,
    rel_tol: float = 1e-9,
    max_iter: int = 200,
) -> float:
    """Smallest delta passing both conditions for a fixed c_N."""
    if c_N <= 0:
        raise DomainError("c_N must be positive")

    def ok(delta: float) -> bool:
        return _passes(c_N, AccuracyTarget(p=p, delta=delta, alpha=alpha, T=T), spec)

    hi = max(c_N, 1.0)
    for _ in range(200):
        if ok(hi):
            break
        hi *= 2.0
    lo = 0.0
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if ok(mid):
            hi = mid
        else:
            lo = mid
        if hi - lo <= rel_tol * max(hi, 1e-300):
            break
    return hi
