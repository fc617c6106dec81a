"""Numerical optimisation: infimum of sectional curvature, generalized
Singer-Thorpe frames in dimension four, and a damped least-squares solver
for the shape-operator constraint systems.

Gradients and Jacobians are central differences (step ``1e-6`` times the
variable scale); no hand-coded derivatives.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import expm
from scipy.stats import special_ortho_group

from .curvature import CurvTensor
from .errors import NoSolution, NonConvergence, WrongDimension

log = logging.getLogger(__name__)

FD_STEP = 1e-6


# ---------------------------------------------------------------------------
# Levenberg-Marquardt
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LMResult:
    x: np.ndarray
    residual: float
    iterations: int
    nfev: int
    converged: bool


def numeric_jacobian(fun: Callable[[np.ndarray], np.ndarray], x: np.ndarray, step: float = FD_STEP) -> np.ndarray:
    cols = []
    for j in range(x.size):
        h = step * max(1.0, abs(x[j]))
        e = np.zeros_like(x)
        e[j] = h
        cols.append((fun(x + e) - fun(x - e)) / (2 * h))
    return np.column_stack(cols) if cols else np.zeros((fun(x).size, 0))


def levenberg_marquardt(
    fun: Callable[[np.ndarray], np.ndarray],
    x0,
    tol: float = 1e-12,
    max_iter: int = 200,
) -> LMResult:
    """Minimise ``||fun(x)||`` from ``x0``; converged means ``||fun(x)|| <= tol``.

    Every iteration first tries the undamped Gauss-Newton step, so a linear
    residual is solved in one step up to the finite-difference error of the
    Jacobian (about 1e-10 relative); a second step removes that.
    """
    x = np.array(x0, dtype=float)
    r = np.asarray(fun(x), dtype=float)
    cost = float(r @ r)
    nfev = 1
    lam = 0.0
    it = 0
    for it in range(1, max_iter + 1):
        if np.sqrt(cost) <= tol:
            return LMResult(x, float(np.sqrt(cost)), it - 1, nfev, True)
        J = numeric_jacobian(fun, x)
        nfev += 2 * x.size
        JtJ = J.T @ J
        g = J.T @ r
        if not np.any(g):
            break
        diag = np.maximum(np.diag(JtJ), 1e-12 * max(1.0, float(np.max(np.diag(JtJ), initial=0.0))))
        accepted = False
        while lam < 1e16:
            if lam == 0.0:
                step = np.linalg.lstsq(J, -r, rcond=None)[0]
            else:
                step = np.linalg.solve(JtJ + lam * np.diag(diag), -g)
            x_new = x + step
            r_new = np.asarray(fun(x_new), dtype=float)
            nfev += 1
            cost_new = float(r_new @ r_new)
            if cost_new < cost:
                accepted = True
                lam = 0.0 if lam <= 1e-6 else lam / 10
                break
            lam = 1e-6 if lam == 0.0 else lam * 10
        if not accepted:
            break
        small_step = np.linalg.norm(step) <= 1e-15 * (np.linalg.norm(x) + 1e-15)
        x, r, cost = x_new, r_new, cost_new
        if small_step:
            break
    res = float(np.sqrt(cost))
    return LMResult(x, res, it, nfev, res <= tol)


def refine_family_params(
    system: Callable[[np.ndarray], np.ndarray],
    x0,
    tol: float = 1e-12,
    max_iter: int = 200,
) -> np.ndarray:
    """Solve ``system(x) = 0`` near ``x0``; raises :class:`NoSolution` if it stalls above ``tol``."""
    out = levenberg_marquardt(system, x0, tol=tol, max_iter=max_iter)
    # re-verify independently of the convergence flag
    resid = float(np.linalg.norm(system(out.x)))
    if resid > tol:
        raise NoSolution(f"constraint system stalled at residual {resid:.3e}", resid)
    return out.x


# ---------------------------------------------------------------------------
# inf K over the Grassmannian of 2-planes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlaneMin:
    u: np.ndarray
    v: np.ndarray
    value: float
    restarts_used: int
    converged: bool
    spread: float | None
    iterations: int = 0


def _pair_matrix(comp: np.ndarray) -> np.ndarray:
    """``comp`` regrouped as a matrix indexed by ``(i, l)`` and ``(j, k)``."""
    n = comp.shape[0]
    return comp.transpose(0, 3, 1, 2).reshape(n * n, n * n)


def _sectional_batch(C2: np.ndarray, U: np.ndarray, V: np.ndarray) -> np.ndarray:
    b, n = U.shape
    UU = (U[:, :, None] * U[:, None, :]).reshape(b, n * n)
    VV = (V[:, :, None] * V[:, None, :]).reshape(b, n * n)
    num = np.einsum("bq,bq->b", UU @ C2, VV)
    uu = np.einsum("bi,bi->b", U, U)
    vv = np.einsum("bi,bi->b", V, V)
    uv = np.einsum("bi,bi->b", U, V)
    return num / (uu * vv - uv**2)


def _orthonormalize(U: np.ndarray, V: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    U = U / np.linalg.norm(U, axis=1, keepdims=True)
    V = V - np.einsum("bi,bi->b", U, V)[:, None] * U
    V = V / np.linalg.norm(V, axis=1, keepdims=True)
    # second pass keeps |<u,v>| at round-off level
    V = V - np.einsum("bi,bi->b", U, V)[:, None] * U
    V = V / np.linalg.norm(V, axis=1, keepdims=True)
    return U, V


def _grad_batch(comp: np.ndarray, U: np.ndarray, V: np.ndarray, h: float) -> tuple[np.ndarray, np.ndarray]:
    b, n = U.shape
    eye = np.eye(n) * h
    # perturbed copies: (b, n) for each sign and each of u, v
    Up = (U[:, None, :] + eye[None]).reshape(-1, n)
    Um = (U[:, None, :] - eye[None]).reshape(-1, n)
    Vr = np.repeat(V, n, axis=0)
    Ur = np.repeat(U, n, axis=0)
    Vp = (V[:, None, :] + eye[None]).reshape(-1, n)
    Vm = (V[:, None, :] - eye[None]).reshape(-1, n)
    gu = (_sectional_batch(comp, Up, Vr) - _sectional_batch(comp, Um, Vr)) / (2 * h)
    gv = (_sectional_batch(comp, Ur, Vp) - _sectional_batch(comp, Ur, Vm)) / (2 * h)
    Gu, Gv = gu.reshape(b, n), gv.reshape(b, n)
    # project onto the horizontal space (orthogonal complement of the plane)
    for G in (Gu, Gv):
        G -= np.einsum("bi,bi->b", U, G)[:, None] * U
        G -= np.einsum("bi,bi->b", V, G)[:, None] * V
    return Gu, Gv


def _gauge_fix(u: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Canonical orthonormal pair for span(u, v): u along the best-aligned axis."""
    P = np.outer(u, u) + np.outer(v, v)
    d = np.round(np.diag(P), 12)
    k = int(np.argmax(d))
    uu = P[:, k] / np.linalg.norm(P[:, k])
    w = v - (uu @ v) * uu
    if np.linalg.norm(w) < 0.5:
        w = u - (uu @ u) * uu
    w = w / np.linalg.norm(w)
    piv = int(np.argmax(np.round(np.abs(w), 12)))
    if w[piv] < 0:
        w = -w
    return uu, w


def plane_distance(u1, v1, u2, v2) -> float:
    """Frobenius distance between the orthogonal projectors of two planes."""
    P1 = np.outer(u1, u1) + np.outer(v1, v1)
    P2 = np.outer(u2, u2) + np.outer(v2, v2)
    return float(np.linalg.norm(P1 - P2))


def inf_sectional(
    R: CurvTensor,
    restarts: int = 64,
    seed: int = 0,
    tol: float = 1e-7,
    max_iter: int = 10_000,
) -> PlaneMin:
    """Multi-start projected gradient descent for the infimum of sectional curvature.

    All restarts run as one batch.  Each line search starts from a
    Barzilai-Borwein step (falling back to twice the last accepted step) and
    halves it until the Armijo condition holds.  Iteration stops
    for a restart when its projected gradient norm is below
    ``tol * max(1, max|R|)``.  The default sits just above the round-off
    floor of the central-difference gradient; a restart whose value stops
    improving over a window of iterations is retired as well.
    """
    n = R.n
    if n < 2:
        raise WrongDimension("need n >= 2 for a 2-plane")
    comp = _pair_matrix(np.asarray(R.comp))
    scale = max(1.0, float(np.max(np.abs(R.comp))))
    gtol = tol * scale
    seqs = np.random.SeedSequence(seed).spawn(restarts)
    starts = np.array([np.random.default_rng(s).standard_normal((2, n)) for s in seqs])
    U, V = _orthonormalize(starts[:, 0, :], starts[:, 1, :])
    f = _sectional_batch(comp, U, V)
    alpha = np.full(restarts, 0.5 / scale)
    active = np.ones(restarts, dtype=bool)
    converged = np.zeros(restarts, dtype=bool)
    window = 50
    f_mark = f.copy()
    prevX = np.zeros((restarts, 2 * n))
    prevG = np.zeros((restarts, 2 * n))
    have_prev = np.zeros(restarts, dtype=bool)
    iters = 0
    for iters in range(1, max_iter + 1):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        Gu, Gv = _grad_batch(comp, U[idx], V[idx], FD_STEP)
        gnorm = np.sqrt(np.sum(Gu**2, axis=1) + np.sum(Gv**2, axis=1))
        done = gnorm <= gtol
        converged[idx[done]] = True
        active[idx[done]] = False
        keep = ~done
        idx, Gu, Gv, gnorm = idx[keep], Gu[keep], Gv[keep], gnorm[keep]
        if idx.size == 0:
            break
        a = alpha[idx] * 2.0
        X = np.hstack([U[idx], V[idx]])
        G = np.hstack([Gu, Gv])
        sv, yv = X - prevX[idx], G - prevG[idx]
        sy = np.sum(sv * yv, axis=1)
        bb = np.where(sy > 0, np.sum(sv * sv, axis=1) / np.where(sy > 0, sy, 1.0), 0.0)
        use_bb = have_prev[idx] & (bb > 0)
        a = np.where(use_bb, np.clip(bb, 1e-8 / scale, 1e4 / scale), a)
        prevX[idx], prevG[idx] = X, G
        have_prev[idx] = True
        pending = np.ones(idx.size, dtype=bool)
        newU, newV = U[idx].copy(), V[idx].copy()
        newf = f[idx].copy()
        for _ in range(60):
            p = np.flatnonzero(pending)
            if p.size == 0:
                break
            tU, tV = _orthonormalize(U[idx[p]] - a[p, None] * Gu[p], V[idx[p]] - a[p, None] * Gv[p])
            tf = _sectional_batch(comp, tU, tV)
            ok = tf <= f[idx[p]] - 1e-4 * a[p] * gnorm[p] ** 2
            q = p[ok]
            newU[q], newV[q], newf[q] = tU[ok], tV[ok], tf[ok]
            pending[q] = False
            a[p[~ok]] *= 0.5
        # restarts whose line search failed sit at a numerical stationary point
        stuck = pending
        converged[idx[stuck]] = gnorm[stuck] <= 1e3 * gtol
        active[idx[stuck]] = False
        alpha[idx] = a
        U[idx], V[idx], f[idx] = newU, newV, newf
        if iters % window == 0:
            flat = active & (f_mark - f <= 1e-13 * scale)
            # at the noise floor the gradient never drops below gtol exactly
            converged[flat] = True
            active[flat] = False
            f_mark = f.copy()
    if not converged.any():
        raise NonConvergence(f"inf_sectional: no restart converged in {max_iter} iterations")
    f = _sectional_batch(comp, U, V)
    fixed = [_gauge_fix(U[b], V[b]) for b in range(restarts)]
    tie = 1e-12 * scale
    order = sorted(
        range(restarts),
        key=lambda b: (f[b], tuple(np.round(np.concatenate(fixed[b]), 9))),
    )
    best = order[0]
    for b in order[1:]:
        if f[b] - f[best] > tie:
            break
        if tuple(np.round(np.concatenate(fixed[b]), 9)) < tuple(np.round(np.concatenate(fixed[best]), 9)):
            best = b
    bu, bv = fixed[best]
    spread = None
    for b in order:
        if plane_distance(bu, bv, *fixed[b]) > 1e-4:
            spread = float(f[b] - f[best])
            break
    return PlaneMin(
        u=bu,
        v=bv,
        value=float(f[best]),
        restarts_used=restarts,
        converged=bool(converged[best]),
        spread=spread,
        iterations=iters,
    )


# ---------------------------------------------------------------------------
# generalized Singer-Thorpe frames (n = 4)
# ---------------------------------------------------------------------------

# canonical representatives (i<j), (k<l), (i,j) <= (k,l) with exactly three distinct indices
_PAIRS = [(i, j) for i in range(4) for j in range(i + 1, 4)]
_OFF_FORM = np.array(
    [
        (i, j, k, l)
        for a, (i, j) in enumerate(_PAIRS)
        for (k, l) in _PAIRS[a:]
        if len({i, j, k, l}) == 3
    ]
).T


@dataclass(frozen=True)
class STBasisResult:
    Q: np.ndarray
    residual: float
    entries: dict
    relations_ok: bool
    success: bool
    restarts_used: int


def _skew6(x: np.ndarray) -> np.ndarray:
    S = np.zeros((4, 4))
    iu = np.triu_indices(4, 1)
    S[iu] = x
    return S - S.T


def off_form_components(comp: np.ndarray) -> np.ndarray:
    return comp[tuple(_OFF_FORM)]


def read_st_entries(comp: np.ndarray) -> dict:
    return {
        "a": float(comp[0, 1, 1, 0]),
        "b": float(comp[0, 2, 2, 0]),
        "c": float(comp[0, 3, 3, 0]),
        "a'": float(comp[2, 3, 3, 2]),
        "b'": float(comp[1, 3, 3, 1]),
        "c'": float(comp[1, 2, 2, 1]),
        "d": float(comp[0, 1, 2, 3]),
        "e": float(comp[0, 2, 3, 1]),
    }


def st_relations_residual(entries: dict) -> float:
    """Largest of ``|a^2 - a'^2|``, ``|b^2 - b'^2|``, ``|c^2 - c'^2|``."""
    return max(abs(entries[k] ** 2 - entries[k + "'"] ** 2) for k in "abc")


def singer_thorpe_search(
    R: CurvTensor,
    seed: int = 0,
    restarts: int = 32,
    tol: float = 1e-8,
    max_iter: int = 200,
    strict: bool = False,
) -> STBasisResult:
    """Find ``Q`` in SO(4) whose frame kills every component with exactly three distinct indices.

    Restart 0 starts at the identity, the others at Haar-random rotations drawn
    from ``seed``; each restart runs Levenberg-Marquardt over the exponential
    chart ``Q0 expm(S(x))``.  Stops at the first restart reaching
    ``residual <= tol * max(1, ||R||)``.
    """
    if R.n != 4:
        raise WrongDimension(f"generalized Singer-Thorpe frames are four-dimensional, got n={R.n}")
    comp = np.asarray(R.comp)
    norm = float(np.sqrt(R.norm2))
    target = tol * max(1.0, norm)
    rng = np.random.default_rng(seed)
    best = None
    used = 0
    for k in range(restarts):
        used = k + 1
        Q0 = np.eye(4) if k == 0 else special_ortho_group.rvs(4, random_state=rng)

        def resid(x, Q0=Q0):
            Q = Q0 @ expm(_skew6(x))
            return off_form_components(np.einsum("ai,bj,ck,dl,abcd->ijkl", Q, Q, Q, Q, comp, optimize=True))

        out = levenberg_marquardt(resid, np.zeros(6), tol=target, max_iter=max_iter)
        if best is None or out.residual < best[1]:
            best = (Q0 @ expm(_skew6(out.x)), out.residual)
        if out.residual <= target:
            break
    Q, res = best
    rot = np.einsum("ai,bj,ck,dl,abcd->ijkl", Q, Q, Q, Q, comp, optimize=True)
    res = float(np.linalg.norm(off_form_components(rot)))
    entries = read_st_entries(rot)
    success = res <= target
    if not success:
        log.warning("Singer-Thorpe search failed: residual %.3e for tensor norm %.3e", res, norm)
        if strict:
            raise NonConvergence(f"no generalized Singer-Thorpe frame found (residual {res:.3e})")
    relations_ok = st_relations_residual(entries) <= tol * max(1.0, R.norm2)
    return STBasisResult(Q=Q, residual=res, entries=entries, relations_ok=bool(relations_ok),
                         success=bool(success), restarts_used=used)
