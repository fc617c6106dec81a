"""Submanifold points in space forms, described by their shape operators."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .curvature import DEFAULT_TOL, CurvTensor
from .errors import BadArity, DimensionMismatch, NotCommuting, NotSymmetric

CLUSTER_TOL = 1e-7


@dataclass(frozen=True)
class AmbientSpace:
    """Space form of constant curvature ``c``; ``N`` is the ambient dimension if known."""

    c: float
    N: int | None = None


@dataclass(frozen=True)
class ShapeOperatorSet:
    """Shape operators ``A[t]`` along an orthonormal normal frame ``xi_1 .. xi_p``."""

    A: np.ndarray = field(repr=False)
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        A = np.array(self.A, dtype=float)
        if A.ndim == 2:
            A = A[None]
        if A.ndim != 3 or A.shape[1] != A.shape[2]:
            raise DimensionMismatch(f"shape operators must be p x n x n, got {A.shape}")
        asym = np.max(np.abs(A - A.transpose(0, 2, 1)), initial=0.0)
        if asym > self.tol * max(1.0, float(np.max(np.abs(A), initial=0.0))):
            raise NotSymmetric(f"shape operator not symmetric (defect {asym:.3e})")
        A = 0.5 * (A + A.transpose(0, 2, 1))
        A.setflags(write=False)
        object.__setattr__(self, "A", A)

    @property
    def p(self) -> int:
        return self.A.shape[0]

    @property
    def n(self) -> int:
        return self.A.shape[1]

    def conjugated(self, Q: np.ndarray) -> "ShapeOperatorSet":
        """Shape operators in the tangent frame given by the columns of ``Q``."""
        return ShapeOperatorSet(np.einsum("ai,tab,bj->tij", Q, self.A, Q))

    def normal_rotated(self, O: np.ndarray) -> "ShapeOperatorSet":
        """Shape operators for the normal frame ``xi'_s = sum_t O[t, s] xi_t``."""
        return ShapeOperatorSet(np.einsum("ts,tij->sij", O, self.A))


@dataclass(frozen=True)
class EigenData:
    basis: np.ndarray
    lam: np.ndarray  # lam[t, i] = <A_t e_i, e_i>


def gauss_curvature(amb: AmbientSpace, S: ShapeOperatorSet) -> CurvTensor:
    """Induced curvature ``c (d_il d_jk - d_ik d_jl) + sum_t (A_il A_jk - A_ik A_jl)``."""
    if amb.N is not None and amb.N != S.n + S.p:
        raise DimensionMismatch(
            f"ambient dimension {amb.N} != n + p = {S.n} + {S.p}"
        )
    d = np.eye(S.n)
    A = S.A
    comp = amb.c * (np.einsum("il,jk->ijkl", d, d) - np.einsum("ik,jl->ijkl", d, d))
    comp = comp + np.einsum("til,tjk->ijkl", A, A) - np.einsum("tik,tjl->ijkl", A, A)
    return CurvTensor(S.n, comp)


def mean_curvature(S: ShapeOperatorSet) -> tuple[np.ndarray, float]:
    H = np.trace(S.A, axis1=1, axis2=2) / S.n
    return H, float(np.linalg.norm(H))


def normal_flatness(S: ShapeOperatorSet, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Pairwise commutation of the shape operators (flat normal connection in a space form)."""
    worst = 0.0
    for t in range(S.p):
        for s in range(t + 1, S.p):
            comm = S.A[t] @ S.A[s] - S.A[s] @ S.A[t]
            worst = max(worst, float(np.max(np.abs(comm))))
    return worst <= tol, worst


def _clusters(values: np.ndarray, gap: float) -> list[np.ndarray]:
    """Group indices of ascending ``values`` into runs separated by more than ``gap``."""
    order = np.argsort(values)
    groups, current = [], [order[0]]
    for a, b in zip(order[:-1], order[1:]):
        if values[b] - values[a] > gap:
            groups.append(np.array(current))
            current = []
        current.append(b)
    groups.append(np.array(current))
    return groups


def joint_eigenbasis(S: ShapeOperatorSet, tol: float = DEFAULT_TOL) -> EigenData:
    """Orthonormal basis diagonalising every shape operator.

    Columns are sorted by the tuple ``(lam[0, i], lam[1, i], ...)`` in
    descending lexicographic order.
    """
    flat, worst = normal_flatness(S, tol)
    if not flat:
        raise NotCommuting(f"shape operators do not commute (defect {worst:.3e})")
    n = S.n
    scale = max(1.0, float(np.max(np.abs(S.A), initial=0.0)))
    off = S.A - np.einsum("tii->ti", S.A)[:, :, None] * np.eye(n)
    if np.max(np.abs(off), initial=0.0) <= tol * scale:
        B = np.eye(n)
    else:
        B = np.eye(n)
        blocks = [np.arange(n)]
        for t in range(S.p):
            new_blocks = []
            for blk in blocks:
                sub = B[:, blk]
                M = sub.T @ S.A[t] @ sub
                w, V = np.linalg.eigh(0.5 * (M + M.T))
                B[:, blk] = sub @ V
                for grp in _clusters(w, max(CLUSTER_TOL, tol) * scale):
                    new_blocks.append(blk[grp])
            blocks = new_blocks
        # fix column signs: largest-magnitude entry positive
        piv = np.argmax(np.abs(B), axis=0)
        B = B * np.sign(B[piv, np.arange(n)])
    lam = np.einsum("ai,tab,bi->ti", B, S.A, B)
    gap = max(CLUSTER_TOL, tol) * scale

    def descending(i: int, j: int) -> int:
        # equal-within-gap values fall through to the next operator
        for t in range(S.p):
            d = lam[t, j] - lam[t, i]
            if abs(d) > gap:
                return 1 if d > 0 else -1
        return 0

    order = sorted(range(n), key=cmp_to_key(descending))
    B, lam = B[:, order], lam[:, order]
    D = np.einsum("ai,tab,bj->tij", B, S.A, B)
    resid = np.max(np.abs(D - lam[:, :, None] * np.eye(n)), initial=0.0)
    if resid > max(tol, 1e-10) * scale * n:
        raise NotCommuting(f"joint diagonalisation failed (off-diagonal {resid:.3e})")
    return EigenData(basis=B, lam=lam)


def classify_operator(A: np.ndarray, tol: float = CLUSTER_TOL) -> str:
    """Label a single shape operator as umbilical, cylindrical, quasi-umbilical or generic."""
    n = A.shape[0]
    w = np.linalg.eigvalsh(A)
    groups = _clusters(w, tol)
    if len(groups) == 1:
        return "umbilical"
    for grp in groups:
        if len(grp) >= n - 1:
            return "cylindrical" if abs(np.mean(w[grp])) <= tol else "quasi-umbilical"
    return "generic"


def _second_singular(M: np.ndarray) -> float:
    sv = np.linalg.svd(M, compute_uv=False)
    return float(sv[1]) if sv.size > 1 else 0.0


@dataclass(frozen=True)
class CylindricalSearch:
    attempted: bool
    found: bool
    theta: float | None
    residual: float | None


def totally_cylindrical(S: ShapeOperatorSet, tol: float = CLUSTER_TOL, grid: int = 720) -> CylindricalSearch:
    """Search the normal-frame rotation angle for a frame where every operator has rank <= 1."""
    if S.p == 1:
        r = _second_singular(S.A[0])
        return CylindricalSearch(True, r <= tol, 0.0, r)
    if S.p > 2:
        return CylindricalSearch(False, False, None, None)
    A1, A2 = S.A

    def defect(theta: float) -> float:
        c, s = np.cos(theta), np.sin(theta)
        return _second_singular(c * A1 + s * A2) + _second_singular(-s * A1 + c * A2)

    thetas = np.linspace(0.0, np.pi, grid, endpoint=False)
    vals = np.array([defect(t) for t in thetas])
    k = int(np.argmin(vals))
    h = np.pi / grid
    res = minimize_scalar(defect, bounds=(thetas[k] - h, thetas[k] + h), method="bounded",
                          options={"xatol": 1e-12})
    theta, r = (float(res.x), float(res.fun)) if res.fun < vals[k] else (float(thetas[k]), float(vals[k]))
    return CylindricalSearch(True, r <= tol * max(1.0, float(np.max(np.abs(S.A)))), theta % np.pi, r)


@dataclass(frozen=True)
class DirectionLabels:
    labels: tuple[str, ...]
    totally_cylindrical: CylindricalSearch


def classify_directions(S: ShapeOperatorSet, tol: float = CLUSTER_TOL) -> DirectionLabels:
    labels = tuple(classify_operator(A, tol) for A in S.A)
    return DirectionLabels(labels, totally_cylindrical(S, tol))


def chen_shape_operators(
    n: int,
    p: int,
    a: float,
    b: float,
    c_list: Sequence[float] = (),
    d_list: Sequence[float] = (),
) -> ShapeOperatorSet:
    """Shape operators realising equality in Chen's basic inequality.

    ``A_1 = diag(a, b, mu, ..., mu)`` with ``mu = a + b``; for ``t >= 2`` the
    only nonzero block is ``[[c_t, d_t], [d_t, -c_t]]`` in the top-left corner.
    """
    if n < 3 or p < 1 or len(c_list) != p - 1 or len(d_list) != p - 1:
        raise BadArity(
            f"need n >= 3, p >= 1 and p - 1 = {p - 1} values of c_t and d_t "
            f"(got {len(c_list)}, {len(d_list)})"
        )
    mu = a + b
    A = np.zeros((p, n, n))
    A[0] = np.diag([a, b] + [mu] * (n - 2))
    for t, (ct, dt) in enumerate(zip(c_list, d_list), start=1):
        A[t, :2, :2] = [[ct, dt], [dt, -ct]]
    return ShapeOperatorSet(A)
