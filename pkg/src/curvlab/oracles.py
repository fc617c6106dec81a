"""Brute-force references used to cross-check the optimisers.

In dimension three every plane is the orthogonal complement of a unit normal
``nu`` and ``K(nu^perp) = nu^T M nu`` with ``M = tau/2 I - rho``; the grid
oracle evaluates that quadratic form on a dense spherical lattice.
"""

from __future__ import annotations

import numpy as np
from scipy.optimize import minimize

from .curvature import CurvTensor, sectional
from .errors import WrongDimension

_EPS = np.zeros((3, 3, 3))
_EPS[0, 1, 2] = _EPS[1, 2, 0] = _EPS[2, 0, 1] = 1.0
_EPS[0, 2, 1] = _EPS[2, 1, 0] = _EPS[1, 0, 2] = -1.0


def normal_form(R: CurvTensor) -> np.ndarray:
    """Matrix ``M`` with ``K(nu^perp) = nu^T M nu`` for unit ``nu`` (n = 3 only)."""
    if R.n != 3:
        raise WrongDimension("normal form needs n = 3")
    return -0.25 * np.einsum("ijkl,ijm,klp->mp", R.comp, _EPS, _EPS)


def fibonacci_sphere(count: int) -> np.ndarray:
    k = np.arange(count) + 0.5
    z = 1.0 - 2.0 * k / count
    r = np.sqrt(1.0 - z * z)
    phi = np.pi * (1.0 + 5**0.5) * k
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def grid_inf_sectional(R: CurvTensor, points: int = 1_000_000, refine: bool = True) -> float:
    """Minimum of the sectional curvature over a lattice of plane normals, locally polished."""
    M = normal_form(R)
    nu = fibonacci_sphere(points)
    vals = np.einsum("pi,ij,pj->p", nu, M, nu)
    best = int(np.argmin(vals))
    if not refine:
        return float(vals[best])
    x0 = nu[best]

    def f(x):
        return float(x @ M @ x / (x @ x))

    res = minimize(f, x0, method="BFGS", options={"gtol": 1e-13})
    return float(min(vals[best], res.fun))


def ricci_inf_sectional(R: CurvTensor) -> float:
    """``tau/2 - max eig(rho)``, the closed form of inf K in dimension three."""
    if R.n != 3:
        raise WrongDimension("closed form needs n = 3")
    rho = np.einsum("aija->ij", R.comp)
    return float(np.trace(rho) / 2 - np.linalg.eigvalsh(rho)[-1])


def probe_min(R: CurvTensor, rng: np.random.Generator, probes: int = 2000) -> float:
    """Smallest sectional curvature over randomly drawn planes."""
    best = np.inf
    for _ in range(probes):
        u, v = rng.normal(size=(2, R.n))
        best = min(best, sectional(R, u, v))
    return float(best)


def random_curvature(n: int, rng: np.random.Generator, scale: float = 1.0) -> CurvTensor:
    """Random algebraic curvature tensor: a sum of Gauss terms of random symmetric forms."""
    A = rng.normal(size=(n + 1, n, n)) * scale
    A = 0.5 * (A + A.transpose(0, 2, 1))
    signs = rng.choice([-1.0, 1.0], size=n + 1)
    comp = np.einsum("t,til,tjk->ijkl", signs, A, A) - np.einsum("t,tik,tjl->ijkl", signs, A, A)
    return CurvTensor(n, comp)
