"""Curvature conditions, evaluated as residuals.

Full-tensor forms (Einstein, weakly Einstein, 2-stein, semisymmetric) work on
any :class:`CurvTensor`.  The eigenvalue forms for hypersurfaces and the
basis-level 2-stein quantities for commuting shape operators are reported
separately; no implication between the two levels is assumed.

Flags compare a residual against ``tol`` times a scale: ``max(1, ||R||)`` for
residuals linear in ``R`` and ``max(1, ||R||^2)`` for quadratic ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Sequence

import numpy as np

from .curvature import DEFAULT_TOL, CurvTensor, derive, semisym_derivation_norm
from .errors import WrongDimension
from .solver import PlaneMin, inf_sectional
from .submanifold import AmbientSpace, ShapeOperatorSet, gauss_curvature, joint_eigenbasis, mean_curvature

_PERMS = tuple(permutations(range(4)))


@dataclass
class TwoSteinReport:
    f1: float
    f2: float
    trace_residual: float
    quartic_residual: float
    basis_h1: list[float] | None = None
    basis_h2: list[float] | None = None
    basis_h1_spread: float | None = None
    basis_h2_spread: float | None = None
    checkR_basis_residual: float | None = None
    h2_formula_residual: float | None = None
    h1_formula_residual: float | None = None


@dataclass
class ConditionReport:
    einstein_residual: float
    weakly_einstein_residual: float
    semisym_residual: float
    two_stein: TwoSteinReport
    tol: float
    flags: dict[str, bool] = field(default_factory=dict)


@dataclass
class ChenReport:
    lhs: float
    rhs: float
    gap: float
    equality: bool
    inf_plane: PlaneMin | None


def symmetrize4(T: np.ndarray) -> np.ndarray:
    """Full symmetrisation of a rank-4 array over its four indices."""
    return sum(T.transpose(p) for p in _PERMS) / len(_PERMS)


def quartic_coefficients(R: CurvTensor) -> np.ndarray:
    """``C[i,j,k,l] = sum_ab R_aijb R_bkla``, so ``Tr(R_X^2) = C . X^4``."""
    return np.einsum("aijb,bkla->ijkl", R.comp, R.comp, optimize=True)


def two_stein_full(R: CurvTensor) -> TwoSteinReport:
    n = R.n
    D = derive(R)
    f1 = D.tau / n
    SC = symmetrize4(quartic_coefficients(R))
    d = np.eye(n)
    Sdd = (np.einsum("ij,kl->ijkl", d, d) + np.einsum("ik,jl->ijkl", d, d) + np.einsum("il,jk->ijkl", d, d)) / 3
    f2 = 3.0 * float(np.einsum("iijj->", SC)) / (n * (n + 2))
    return TwoSteinReport(
        f1=f1,
        f2=f2,
        trace_residual=float(np.max(np.abs(D.rho - f1 * d))),
        quartic_residual=float(np.max(np.abs(SC - f2 * Sdd))),
    )


def condition_report(R: CurvTensor, tol: float = DEFAULT_TOL) -> ConditionReport:
    n = R.n
    D = derive(R)
    lin = max(1.0, float(np.sqrt(D.normR2)))
    quad = max(1.0, D.normR2)
    ein = float(np.max(np.abs(D.rho - D.tau / n * np.eye(n))))
    we = float(np.max(np.abs(D.checkR - D.normR2 / n * np.eye(n))))
    ss = semisym_derivation_norm(R)
    ts = two_stein_full(R)
    flags = {
        "einstein": ein <= tol * lin,
        "weakly_einstein": we <= tol * quad,
        "semisymmetric": ss <= tol * quad,
        "two_stein": ts.trace_residual <= tol * lin and ts.quartic_residual <= tol * quad,
    }
    return ConditionReport(ein, we, ss, ts, tol, flags)


# ---------------------------------------------------------------------------
# hypersurface eigenvalue forms
# ---------------------------------------------------------------------------


def _hypersurface_scale(kappa: np.ndarray, c: float) -> float:
    K = c + np.outer(kappa, kappa)
    np.fill_diagonal(K, 0.0)
    return max(1.0, 2.0 * float(np.sum(K**2)))


def we_hypersurface_defects(kappa: Sequence[float], c: float) -> np.ndarray:
    """Pairwise weakly Einstein expressions for a hypersurface with principal curvatures ``kappa``."""
    k = np.asarray(kappa, dtype=float)
    T1, T2 = k.sum(), (k**2).sum()
    ki, kj = k[:, None], k[None, :]
    return (ki - kj) * (2 * c * T1 + (ki + kj) * (-2 * c + T2 - ki**2 - kj**2))


def we_hypersurface_eigencheck(kappa: Sequence[float], c: float, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    k = np.asarray(kappa, dtype=float)
    if k.size < 2:
        raise WrongDimension("need at least two principal curvatures")
    worst = float(np.max(np.abs(we_hypersurface_defects(k, c))))
    return worst <= tol * _hypersurface_scale(k, c), worst


def semisym_defects(kappa: np.ndarray, c: float) -> np.ndarray:
    """``(k_i k_j + c)(k_i - k_j) k_l`` for mutually distinct ``i, j, l`` (other entries zero).

    Accepts a batch: ``kappa`` of shape ``(..., n)`` returns ``(..., n, n, n)``.
    """
    k = np.asarray(kappa, dtype=float)
    n = k.shape[-1]
    ki = k[..., :, None, None]
    kj = k[..., None, :, None]
    kl = k[..., None, None, :]
    out = (ki * kj + c) * (ki - kj) * kl
    I, J, L = np.indices((n, n, n))
    distinct = (I != J) & (J != L) & (I != L)
    return np.where(distinct, out, 0.0)


def semisym_eigencheck(kappa: Sequence[float], c: float, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    k = np.asarray(kappa, dtype=float)
    if k.size < 3:
        raise WrongDimension("need at least three principal curvatures")
    worst = float(np.max(np.abs(semisym_defects(k, c))))
    return worst <= tol * _hypersurface_scale(k, c), worst


# ---------------------------------------------------------------------------
# basis-level 2-stein data for commuting shape operators
# ---------------------------------------------------------------------------


def basis_h_values(S: ShapeOperatorSet, lam: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-direction values of the first and second 2-stein sums in a joint eigenbasis."""
    trA = np.trace(S.A, axis1=1, axis2=2)
    h1 = np.einsum("t,ti->i", trA, lam) - np.sum(lam**2, axis=0)
    trAA = np.einsum("tij,sji->ts", S.A, S.A)
    prod = lam[:, None, :] * lam[None, :, :]  # (t, s, i)
    h2 = np.einsum("ts,tsi->i", trAA, prod) - np.sum(prod**2, axis=(0, 1))
    return h1, h2


def two_stein_basis_report(amb: AmbientSpace, S: ShapeOperatorSet, tol: float = DEFAULT_TOL) -> TwoSteinReport:
    """Full 2-stein report plus the joint-eigenbasis quantities for commuting shape operators.

    Raises :class:`NotCommuting` when the shape operators do not commute.
    """
    eig = joint_eigenbasis(S, tol)
    R = gauss_curvature(amb, S)
    rep = condition_report(R, tol)
    ts = rep.two_stein
    n, c = S.n, amb.c
    h1, h2 = basis_h_values(S, eig.lam)
    ts.basis_h1 = h1.tolist()
    ts.basis_h2 = h2.tolist()
    ts.basis_h1_spread = float(np.ptp(h1))
    ts.basis_h2_spread = float(np.ptp(h2))
    D = derive(R)
    checkR_basis = eig.basis.T @ D.checkR @ eig.basis
    predicted = 2 * c**2 * (n - 1) + 4 * c * h1 + 2 * h2
    ts.checkR_basis_residual = float(np.max(np.abs(np.diag(checkR_basis) - predicted)))
    if rep.flags["weakly_einstein"] and rep.flags["einstein"]:
        h2_formula = D.normR2 / (2 * n) - c**2 * (n - 1) - 2 * c * float(np.mean(h1))
        ts.h2_formula_residual = float(np.max(np.abs(h2 - h2_formula)))
    if rep.flags["weakly_einstein"] and rep.flags["two_stein"] and c != 0:
        h1_formula = (D.normR2 / n - 2 * c**2 * (n - 1) - 2 * float(np.mean(h2))) / (4 * c)
        ts.h1_formula_residual = float(np.max(np.abs(h1 - h1_formula)))
    return ts


# ---------------------------------------------------------------------------
# Chen's basic inequality
# ---------------------------------------------------------------------------


def chen_rhs(n: int, H2: float, c: float) -> float:
    return n**2 * (n - 2) / (2 * (n - 1)) * H2 + (n + 1) * (n - 2) * c / 2


def chen_report(
    amb: AmbientSpace,
    S: ShapeOperatorSet,
    restarts: int = 64,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
) -> ChenReport:
    """Both sides of Chen's basic inequality; the infimum comes from :func:`inf_sectional`."""
    n = S.n
    R = gauss_curvature(amb, S)
    tau = derive(R).tau
    _, Hn = mean_curvature(S)
    rhs = chen_rhs(n, Hn**2, amb.c)
    if n == 2:
        return ChenReport(lhs=rhs, rhs=rhs, gap=0.0, equality=True, inf_plane=None)
    pm = inf_sectional(R, restarts=restarts, seed=seed)
    lhs = tau / 2 - pm.value
    gap = rhs - lhs
    return ChenReport(lhs=lhs, rhs=rhs, gap=gap, equality=abs(gap) <= tol * max(1.0, abs(rhs)), inf_plane=pm)


def coordinate_inf(R: CurvTensor) -> float:
    """Minimum sectional curvature over coordinate planes (an upper bound for inf K)."""
    return min(float(R.comp[i, j, j, i]) for i, j in combinations(range(R.n), 2))
