"""Algebraic curvature tensors at a point, in an orthonormal frame.

Sign convention: ``comp[i, j, k, l] = R(e_i, e_j, e_k, e_l)`` with the
sectional curvature of ``span(e_i, e_j)`` equal to ``comp[i, j, j, i]`` and
``rho[i, j] = sum_a comp[a, i, j, a]``.  The metric is the identity and never
stored.

``checkR`` uses the full triple sum ``sum_{abc} R_iabc R_jabc``.  For a
tensor of diagonal type this gives ``checkR_ii = 2 sum_j K_ij**2``, twice the
unnormalised sums sometimes written by hand; every equality tested downstream
is homogeneous, so the factor does not matter.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegeneratePlane,
    IndexOutOfRange,
    NonPositiveWarp,
    NotSymmetric,
    SymmetryViolation,
    WrongDimension,
)

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class CurvTensor:
    """Curvature tensor of dimension ``n`` stored densely as an ``(n,)*4`` array."""

    n: int
    comp: np.ndarray = field(repr=False)

    def __post_init__(self):
        comp = np.array(self.comp, dtype=float)
        if comp.shape != (self.n,) * 4:
            raise WrongDimension(f"expected shape {(self.n,) * 4}, got {comp.shape}")
        comp.setflags(write=False)
        object.__setattr__(self, "comp", comp)

    @property
    def norm2(self) -> float:
        return float(np.sum(self.comp**2))

    def scale(self) -> float:
        """Scale factor ``max(1, ||R||^2)`` used for relative tolerances."""
        return max(1.0, self.norm2)

    def symmetry_residuals(self) -> dict[str, float]:
        R = self.comp
        if self.n == 0:
            return {"antisym_12": 0.0, "antisym_34": 0.0, "pair": 0.0, "bianchi": 0.0}
        return {
            "antisym_12": float(np.max(np.abs(R + R.transpose(1, 0, 2, 3)))),
            "antisym_34": float(np.max(np.abs(R + R.transpose(0, 1, 3, 2)))),
            "pair": float(np.max(np.abs(R - R.transpose(2, 3, 0, 1)))),
            # R_ijkl + R_iklj + R_iljk
            "bianchi": float(
                np.max(np.abs(R + R.transpose(0, 2, 3, 1) + R.transpose(0, 3, 1, 2)))
            ),
        }

    def validate(self, tol: float = DEFAULT_TOL) -> None:
        """Raise :class:`SymmetryViolation` if any tensor symmetry fails."""
        bound = tol * max(1.0, float(np.max(np.abs(self.comp), initial=0.0)))
        bad = {k: v for k, v in self.symmetry_residuals().items() if v > bound}
        if bad:
            raise SymmetryViolation(f"curvature symmetries violated: {bad}")

    def rotated(self, Q: np.ndarray) -> "CurvTensor":
        """Components in the orthonormal frame given by the columns of ``Q``."""
        Q = np.asarray(Q, dtype=float)
        comp = np.einsum("ai,bj,ck,dl,abcd->ijkl", Q, Q, Q, Q, self.comp, optimize=True)
        return CurvTensor(self.n, comp)

    def __add__(self, other: "CurvTensor") -> "CurvTensor":
        if other.n != self.n:
            raise WrongDimension("dimension mismatch in tensor sum")
        return CurvTensor(self.n, self.comp + other.comp)

    def allclose(self, other: "CurvTensor", atol: float = 1e-10) -> bool:
        return self.n == other.n and bool(np.allclose(self.comp, other.comp, rtol=0, atol=atol))


@dataclass(frozen=True)
class DerivedCurvature:
    rho: np.ndarray
    tau: float
    checkR: np.ndarray
    checkRho: np.ndarray
    RofRho: np.ndarray
    normR2: float
    normRho2: float


@dataclass(frozen=True)
class CurvOperator:
    """Curvature operator on 2-vectors, basis ``e_i ^ e_j`` (i < j) in lexicographic order."""

    dim2: int
    mat: np.ndarray
    rank_tol: float
    rank: int
    pairs: tuple[tuple[int, int], ...]


def _orbit(i: int, j: int, k: int, l: int, v: float):
    yield (i, j, k, l), v
    yield (j, i, k, l), -v
    yield (i, j, l, k), -v
    yield (j, i, l, k), v
    yield (k, l, i, j), v
    yield (l, k, i, j), -v
    yield (k, l, j, i), -v
    yield (l, k, j, i), v


def make_curvature(
    n: int,
    entries: Iterable[Sequence[float]],
    tol: float = DEFAULT_TOL,
) -> CurvTensor:
    """Build a tensor from one representative ``(i, j, k, l, value)`` per symmetry orbit.

    Missing orbits are zero.  Entries that disagree inside an orbit, or a result
    that fails the first Bianchi identity, raise :class:`SymmetryViolation`.
    """
    comp = np.zeros((n,) * 4)
    seen = np.zeros((n,) * 4, dtype=bool)
    for entry in entries:
        i, j, k, l = (int(x) for x in entry[:4])
        v = float(entry[4])
        if min(i, j, k, l) < 0 or max(i, j, k, l) >= n:
            raise IndexOutOfRange(f"index {(i, j, k, l)} out of range for n={n}")
        if (i == j or k == l) and abs(v) > tol:
            raise SymmetryViolation(f"nonzero value {v} on antisymmetric diagonal {(i, j, k, l)}")
        for idx, w in _orbit(i, j, k, l, v):
            if seen[idx] and abs(comp[idx] - w) > tol * max(1.0, abs(w)):
                raise SymmetryViolation(
                    f"conflicting values at {idx}: {comp[idx]} vs {w}"
                )
            comp[idx] = w
            seen[idx] = True
    R = CurvTensor(n, comp)
    R.validate(tol)
    return R


def constant_curvature(n: int, c: float) -> CurvTensor:
    """Space-form tensor ``c (d_il d_jk - d_ik d_jl)``."""
    d = np.eye(n)
    comp = c * (np.einsum("il,jk->ijkl", d, d) - np.einsum("ik,jl->ijkl", d, d))
    return CurvTensor(n, comp)


def from_sectional(K: np.ndarray) -> CurvTensor:
    """Diagonal-type tensor whose only nonzero entries are the coordinate sectional curvatures."""
    K = np.asarray(K, dtype=float)
    n = K.shape[0]
    comp = np.zeros((n,) * 4)
    for i, j in combinations(range(n), 2):
        for idx, w in _orbit(i, j, j, i, K[i, j]):
            comp[idx] = w
    return CurvTensor(n, comp)


def zero_tensor(n: int) -> CurvTensor:
    return CurvTensor(n, np.zeros((n,) * 4))


def direct_sum(R1: CurvTensor, R2: CurvTensor) -> CurvTensor:
    """Curvature of a Riemannian product; all mixed components vanish."""
    n1, n2 = R1.n, R2.n
    comp = np.zeros((n1 + n2,) * 4)
    comp[:n1, :n1, :n1, :n1] = R1.comp
    comp[n1:, n1:, n1:, n1:] = R2.comp
    return CurvTensor(n1 + n2, comp)


def warped_product_point(f: float, fp: float, c: float, m: int) -> CurvTensor:
    """Pointwise curvature of ``I x_f M^m(c)`` when ``f'^2 + f f'' = c``.

    Index 0 is the interval direction.  With ``kappa = (c - fp**2) / f**2`` the
    base planes have curvature ``kappa`` and the mixed planes ``-kappa``.
    """
    if f <= 0:
        raise NonPositiveWarp(f"warping function must be positive, got {f}")
    if m < 2:
        raise WrongDimension("base dimension must be at least 2")
    kappa = (c - fp**2) / f**2
    K = np.full((m + 1, m + 1), kappa)
    K[0, :] = K[:, 0] = -kappa
    return from_sectional(K)


def three_dim_from_ricci(rho: np.ndarray, tol: float = DEFAULT_TOL) -> CurvTensor:
    """Recover a 3-dimensional curvature tensor from its Ricci tensor."""
    rho = np.asarray(rho, dtype=float)
    if rho.shape != (3, 3):
        raise WrongDimension("Ricci tensor must be 3x3")
    if np.max(np.abs(rho - rho.T)) > tol * max(1.0, np.max(np.abs(rho))):
        raise NotSymmetric("Ricci tensor is not symmetric")
    rho = 0.5 * (rho + rho.T)
    d = np.eye(3)
    tau = np.trace(rho)
    comp = (
        np.einsum("il,jk->ijkl", rho, d)
        + np.einsum("jk,il->ijkl", rho, d)
        - np.einsum("ik,jl->ijkl", rho, d)
        - np.einsum("jl,ik->ijkl", rho, d)
        - 0.5 * tau * (np.einsum("il,jk->ijkl", d, d) - np.einsum("ik,jl->ijkl", d, d))
    )
    return CurvTensor(3, comp)


def ricci(R: CurvTensor) -> np.ndarray:
    return np.einsum("aija->ij", R.comp)


def derive(R: CurvTensor) -> DerivedCurvature:
    """Ricci tensor, scalar curvature and the quadratic contractions."""
    comp = R.comp
    rho = ricci(R)
    checkR = np.einsum("iabc,jabc->ij", comp, comp, optimize=True)
    return DerivedCurvature(
        rho=rho,
        tau=float(np.trace(rho)),
        checkR=checkR,
        checkRho=rho @ rho,
        RofRho=np.einsum("iabj,ab->ij", comp, rho, optimize=True),
        normR2=float(np.sum(comp**2)),
        normRho2=float(np.sum(rho**2)),
    )


def sectional(R: CurvTensor, u, v, tol: float = 1e-12) -> float:
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    gram = (u @ u) * (v @ v) - (u @ v) ** 2
    if gram <= tol * max((u @ u) * (v @ v), np.finfo(float).tiny):
        raise DegeneratePlane("vectors do not span a plane")
    num = np.einsum("ijkl,i,j,k,l->", R.comp, u, v, v, u)
    return float(num / gram)


def sectional_matrix(R: CurvTensor) -> np.ndarray:
    """``K[i, j]`` = sectional curvature of the coordinate plane ``e_i ^ e_j`` (zero diagonal)."""
    idx = np.arange(R.n)
    K = R.comp[idx[:, None], idx[None, :], idx[None, :], idx[:, None]].copy()
    np.fill_diagonal(K, 0.0)
    return K


def jacobi(R: CurvTensor, X) -> np.ndarray:
    """Matrix of the Jacobi operator ``Y -> R(Y, X) X``."""
    X = np.asarray(X, dtype=float)
    return np.einsum("aijb,i,j->ab", R.comp, X, X)


def berger_residual(R: CurvTensor) -> np.ndarray:
    """Left-hand side of the four-dimensional quadratic curvature identity."""
    if R.n != 4:
        raise WrongDimension(f"identity is four-dimensional, got n={R.n}")
    D = derive(R)
    g = np.eye(4)
    return (
        (D.checkR - D.normR2 / 4 * g)
        - 2 * (D.checkRho - D.normRho2 / 4 * g)
        - 2 * (D.RofRho - D.normRho2 / 4 * g)
        + D.tau * (D.rho - D.tau / 4 * g)
    )


def endomorphisms(R: CurvTensor) -> np.ndarray:
    """``E[i, j]`` is the matrix of ``R(e_i, e_j)``, so ``R(e_i, e_j) e_k = sum_m E[i, j, m, k] e_m``."""
    return R.comp.transpose(0, 1, 3, 2)


def semisym_tensor(R: CurvTensor) -> np.ndarray:
    """Components of ``(R(e_i, e_j) . R)(e_k, e_l)`` as an ``(n,)*6`` array of endomorphisms."""
    E = endomorphisms(R)
    comm = np.einsum("ijab,klbc->ijklac", E, E, optimize=True)
    comm = comm - comm.transpose(2, 3, 0, 1, 4, 5)
    first = np.einsum("ijmk,mlac->ijklac", E, E, optimize=True)
    second = np.einsum("ijml,kmac->ijklac", E, E, optimize=True)
    return comm - first - second


def semisym_derivation_norm(R: CurvTensor) -> float:
    if R.n == 0:
        return 0.0
    return float(np.max(np.abs(semisym_tensor(R))))


def curvature_operator(R: CurvTensor, rank_tol: float = 1e-9) -> CurvOperator:
    pairs = tuple(combinations(range(R.n), 2))
    if not pairs:
        return CurvOperator(0, np.zeros((0, 0)), rank_tol, 0, pairs)
    I = np.array([p[0] for p in pairs])
    J = np.array([p[1] for p in pairs])
    mat = -R.comp[I[:, None], J[:, None], I[None, :], J[None, :]]
    sv = np.linalg.svd(mat, compute_uv=False)
    rank = int(np.sum(sv > rank_tol * max(1.0, sv[0])))
    return CurvOperator(len(pairs), mat, rank_tol, rank, pairs)
