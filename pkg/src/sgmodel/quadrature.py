"""Composite Gauss-Legendre quadrature on [0, T].

The node set doubles as the evaluation grid for every function-on-grid
in the package, so integrals of pointwise expressions reduce to a
weighted dot product.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Grid:
    """Quadrature nodes and weights on [0, T]."""

    t: np.ndarray
    w: np.ndarray
    T: float

    def __post_init__(self):
        if self.t.shape != self.w.shape or self.t.ndim != 1:
            raise ValueError("nodes and weights must be 1-d arrays of equal length")
        if self.T <= 0:
            raise ValueError("interval length T must be positive")

    @property
    def n(self) -> int:
        return self.t.size

    def integrate(self, values: np.ndarray) -> float:
        """Integral over [0, T] of a function given by its node values."""
        return float(self.w @ values)


def composite_gauss_legendre(T: float, panels: int = 64, nodes_per_panel: int = 8) -> Grid:
    """Gauss-Legendre rule repeated on `panels` equal subintervals of [0, T]."""
    if T <= 0:
        raise ValueError("T must be positive")
    if panels < 1 or nodes_per_panel < 1:
        raise ValueError("panels and nodes_per_panel must be >= 1")
    x, w = np.polynomial.legendre.leggauss(nodes_per_panel)
    edges = np.linspace(0.0, T, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    t = (half[:, None] * x[None, :] + mid[:, None]).ravel()
    wts = (half[:, None] * w[None, :]).ravel()
    return Grid(t=t, w=wts, T=float(T))


def grid_for_nodes(T: float, n_nodes: int) -> Grid:
    """Grid with exactly `n_nodes` points: 8-node panels when divisible,
    a single panel otherwise."""
    if n_nodes < 1:
        raise ValueError("n_nodes must be >= 1")
    if n_nodes % 8 == 0:
        return composite_gauss_legendre(T, panels=n_nodes // 8, nodes_per_panel=8)
    return composite_gauss_legendre(T, panels=1, nodes_per_panel=n_nodes)
