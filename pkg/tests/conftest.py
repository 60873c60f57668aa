import numpy as np
import pytest

from sgmodel import brownian_kernel, composite_gauss_legendre, power_gamma


@pytest.fixture(scope="session")
def brownian():
    return brownian_kernel(1.0)


@pytest.fixture(scope="session")
def phi_sq():
    """phi(x) = x^2/2, the quadratic standard."""
    return power_gamma(2.0)


@pytest.fixture(scope="session")
def unit_grid():
    return composite_gauss_legendre(1.0, panels=8, nodes_per_panel=8)


def brownian_lambda(k: int) -> float:
    return float(((k - 0.5) * np.pi) ** 2)


def brownian_eigenfunction(k: int, t: np.ndarray) -> np.ndarray:
    return np.sqrt(2.0) * np.sin((k - 0.5) * np.pi * t)
