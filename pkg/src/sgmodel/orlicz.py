"""Parametric Orlicz functions and their convex-duality calculus.

Three families are supported:

* ``power``     phi(x) = |x|^gamma / gamma           for 1 < gamma <= 2
* ``piecewise`` phi(x) = x^2/gamma   for |x| < 1,
                phi(x) = |x|^gamma/gamma for |x| >= 1, gamma > 2
* ``table``     a tabulated (x, phi(x)) grid, x >= 0, phi strictly
                increasing for x > 0

Both parametric families expose closed forms for the density f = phi',
the convex conjugate phi* (on its closed-form branch) and the inverse
conjugate. Everything else falls back to monotone bisection or to a
golden-section supremum, which keeps the numeric paths usable for the
table family as well.

The conjugate exponent beta always means 1/beta + 1/gamma = 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CapabilityError, DomainError, RangeError

_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class OrliczSpec:
    """One member of a parametric Orlicz family.

    Use the module-level constructors ``power_gamma``, ``piecewise_gamma``
    and ``numeric_table`` instead of instantiating directly.
    """

    family: str  # "power" | "piecewise" | "table"
    gamma: float | None = None
    table_x: np.ndarray | None = field(default=None, repr=False)
    table_phi: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.family == "power":
            if self.gamma is None or not 1.0 < self.gamma <= 2.0:
                raise DomainError("power family requires 1 < gamma <= 2")
        elif self.family == "piecewise":
            if self.gamma is None or not self.gamma > 2.0:
                raise DomainError("piecewise family requires gamma > 2")
        elif self.family == "table":
            x, p = self.table_x, self.table_phi
            if x is None or p is None or x.ndim != 1 or x.shape != p.shape or x.size < 3:
                raise DomainError("table family requires matching 1-d x/phi arrays, >= 3 points")
            if x[0] != 0.0 or p[0] != 0.0:
                raise DomainError("table must start at (0, 0)")
            if np.any(np.diff(x) <= 0):
                raise DomainError("table x must be strictly increasing")
            if np.any(np.diff(p) <= 0):
                raise DomainError("table phi must be strictly increasing for x > 0")
        else:
            raise DomainError(f"unknown Orlicz family {self.family!r}")

    @property
    def beta(self) -> float:
        """Conjugate exponent of gamma (parametric families only)."""
        if self.gamma is None:
            raise CapabilityError("beta is undefined for the table family")
        return self.gamma / (self.gamma - 1.0)


def power_gamma(gamma: float) -> OrliczSpec:
    return OrliczSpec(family="power", gamma=float(gamma))


def piecewise_gamma(gamma: float) -> OrliczSpec:
    return OrliczSpec(family="piecewise", gamma=float(gamma))


def numeric_table(x, phi) -> OrliczSpec:
    return OrliczSpec(
        family="table",
        table_x=np.asarray(x, dtype=float),
        table_phi=np.asarray(phi, dtype=float),
    )


def phi_eval(spec: OrliczSpec, x) -> float | np.ndarray:
    """phi(x); even in x, phi(0) = 0."""
    ax = np.abs(np.asarray(x, dtype=float))
    if spec.family == "power":
        out = ax**spec.gamma / spec.gamma
    elif spec.family == "piecewise":
        out = np.where(ax < 1.0, ax * ax / spec.gamma, ax**spec.gamma / spec.gamma)
    else:
        if np.any(ax > spec.table_x[-1]):
            raise RangeError("argument outside the tabulated range")
        out = np.interp(ax, spec.table_x, spec.table_phi)
    return out if np.ndim(x) else float(out)


def phi_density(spec: OrliczSpec, u) -> float | np.ndarray:
    """f(u) = phi'(u) for u >= 0, so that phi(u) = integral_0^u f."""
    uu = np.asarray(u, dtype=float)
    if np.any(uu < 0):
        raise DomainError("density argument must be >= 0")
    if spec.family == "power":
        out = uu ** (spec.gamma - 1.0)
    elif spec.family == "piecewise":
        out = np.where(uu < 1.0, 2.0 * uu / spec.gamma, uu ** (spec.gamma - 1.0))
    else:
        # one-sided finite differences on the table
        x, p = spec.table_x, spec.table_phi
        if np.any(uu > x[-1]):
            raise RangeError("argument outside the tabulated range")
        idx = np.clip(np.searchsorted(x, uu, side="right") - 1, 0, x.size - 2)
        out = (p[idx + 1] - p[idx]) / (x[idx + 1] - x[idx])
    return out if np.ndim(u) else float(out)


def _golden_max(g, lo: float, hi: float, iters: int = 200) -> float:
    """Maximum value of a unimodal g on [lo, hi] by golden-section search."""
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    gc, gd = g(c), g(d)
    for _ in range(iters):
        if gc > gd:
            b, d, gd = d, c, gc
            c = b - _GOLDEN * (b - a)
            gc = g(c)
        else:
            a, c, gc = c, d, gd
            d = a + _GOLDEN * (b - a)
            gd = g(d)
    y = 0.5 * (a + b)
    return max(g(y), gc, gd)


def _conjugate_numeric(spec: OrliczSpec, x: float) -> float:
    """sup_y (x*y - phi(y)) by grid bracketing plus golden-section refinement.

    For the table family the supremum is restricted to the tabulated range,
    which lower-bounds the true conjugate (the conservative direction for
    every downstream bound).
    """
    if x == 0.0:
        return 0.0
    g = lambda y: x * y - phi_eval(spec, y)
    if spec.family == "table":
        ys = spec.table_x
        k = int(np.argmax(x * ys - spec.table_phi))
        lo = ys[max(k - 1, 0)]
        hi = ys[min(k + 1, ys.size - 1)]
        return max(_golden_max(g, lo, hi), g(ys[k]))
    # parametric: double the bracket until the maximizer is interior
    hi = 1.0
    while g(2.0 * hi) > g(hi):
        hi *= 2.0
        if hi > 1e250:
            raise RangeError("conjugate supremum did not bracket")
    return _golden_max(g, 0.0, 2.0 * hi)


def phi_conjugate(spec: OrliczSpec, x: float, force_numeric: bool = False) -> float:
    """Young-Fenchel transform phi*(x) = sup_y (x*y - phi(y)) for x >= 0.

    Closed form x^beta/beta for the power family; for the piecewise family
    the closed form holds on x >= 1 and the numeric supremum covers
    0 <= x < 1.  ``force_numeric`` bypasses the closed forms (used by the
    duality test-suite to cross-check the numeric engine).
    """
    x = float(x)
    if x < 0:
        raise DomainError("conjugate argument must be >= 0")
    if not force_numeric:
        if spec.family == "power":
            b = spec.beta
            return x**b / b
        if spec.family == "piecewise" and x >= 1.0:
            b = spec.beta
            return x**b / b
    return _conjugate_numeric(spec, x)


def phi_conjugate_inverse(spec: OrliczSpec, y: float) -> float:
    """The unique x >= 0 with phi*(x) = y, for y >= 0.

    Closed form (beta*y)^(1/beta) for the power family; monotone bisection
    with a doubling upper bracket otherwise.
    """
    y = float(y)
    if y < 0:
        raise DomainError("inverse-conjugate argument must be >= 0")
    if y == 0.0:
        return 0.0
    if spec.family == "power":
        b = spec.beta
        return (b * y) ** (1.0 / b)
    lo, hi = 0.0, 1.0
    for _ in range(2000):
        if phi_conjugate(spec, hi) >= y:
            break
        hi *= 2.0
    else:
        raise RangeError("inverse-conjugate target not attained")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if phi_conjugate(spec, mid) < y:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-14 * max(1.0, hi):
            break
    return 0.5 * (lo + hi)


def phi_inverse(spec: OrliczSpec, v: float) -> float:
    """The unique u >= 0 with phi(u) = v (phi is strictly increasing)."""
    v = float(v)
    if v < 0:
        raise DomainError("phi inverse argument must be >= 0")
    if v == 0.0:
        return 0.0
    if spec.family == "power":
        return (spec.gamma * v) ** (1.0 / spec.gamma)
    if spec.family == "piecewise":
        g = spec.gamma
        return np.sqrt(g * v) if v < 1.0 / g else (g * v) ** (1.0 / g)
    x, p = spec.table_x, spec.table_phi
    if v > p[-1]:
        raise RangeError("phi inverse target outside the tabulated range")
    return float(np.interp(v, p, x))


def check_power_convexity(spec: OrliczSpec, s: float) -> bool:
    """True iff x -> phi(|x|^(1/s)) is convex, for s in (0, 2].

    Analytic for the parametric families; a second-difference test on the
    tabulated grid (reparametrized z = x^s) for the table family.
    """
    if not 0.0 < s <= 2.0:
        raise DomainError("s must lie in (0, 2]")
    if spec.family == "power":
        return s <= spec.gamma
    if spec.family == "piecewise":
        return True  # both branches have exponent >= 1 and the slope jumps up at 1
    z = spec.table_x**s
    slopes = np.diff(spec.table_phi) / np.diff(z)
    scale = max(1.0, float(np.abs(slopes).max()))
    return bool(np.all(np.diff(slopes) >= -1e-12 * scale))


def validate_spec(spec: OrliczSpec, grid_max: float = 1e3, n_grid: int = 200) -> list[str]:
    """Diagnostic checks of the Orlicz-function conditions on a grid.

    Returns a list of failure messages (empty when everything passes):
    strict increase on x > 0, superlinearity at infinity, sublinearity at
    zero, and a positive lower quadratic bound near zero.
    """
    problems: list[str] = []
    if spec.family == "table":
        xs = spec.table_x[1:]
    else:
        xs = np.logspace(-6, np.log10(grid_max), n_grid)
    vals = np.asarray(phi_eval(spec, xs))
    if np.any(np.diff(vals) <= 0):
        problems.append("phi is not strictly increasing on the sampled grid")
    ratio = vals / xs
    if ratio[-1] <= 1.1 * ratio[0]:
        problems.append("phi(x)/x does not grow from the small-x to the large-x end")
    if spec.family == "power" or spec.family == "piecewise":
        pass  # liminf phi/x^2 > 0 holds analytically (exponent <= 2 near zero)
    else:
        small = vals[:3] / xs[:3] ** 2
        if np.any(small <= 0):
            problems.append("phi(x)/x^2 is not positive at the smallest grid points")
    return problems
