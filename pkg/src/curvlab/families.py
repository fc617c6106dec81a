"""Concrete weakly Einstein families and the branch analysis for Chen-equality submanifolds.

Each generator returns a :class:`FamilyInstance` whose ``expected`` flags are
computed from closed-form sectional curvatures, independently of the tensor
contractions in :mod:`curvlab.conditions`.  For diagonal-type tensors (the
only kind produced here) ``rho_ii = sum_j K_ij`` and ``checkR_ii = 2 sum_j K_ij**2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .conditions import condition_report
from .curvature import (
    CurvTensor,
    constant_curvature,
    derive,
    direct_sum,
    sectional_matrix,
    warped_product_point,
)
from .errors import BadArity, BadRange, FormMismatch, InputError, NoSolution, NotWeaklyEinstein
from .solver import refine_family_params
from .submanifold import AmbientSpace, ShapeOperatorSet, chen_shape_operators, gauss_curvature

FAMILY_IDS = (
    "product",
    "isoparametric_sphere",
    "isoparametric_hyperbolic",
    "chen",
    "warped",
    "r6_23",
    "r6_24",
    "r6_25",
    "r6_26",
    "r6_27",
)

# curvature-operator rank of each r6 family at generic parameters
R6_RANKS = {23: 2, 24: 4, 25: 6, 26: 6, 27: 6}


@dataclass
class FamilyInstance:
    family_id: str
    params: dict[str, float]
    ambient: AmbientSpace
    shape: ShapeOperatorSet | None
    intrinsic: CurvTensor
    expected: dict[str, bool] = field(default_factory=dict)
    expected_rank: int | None = None


@dataclass
class BranchVerdict:
    setting: str
    branch: str
    residuals: dict[str, float]
    consistent: bool


def _close(x: float, y: float, tol: float) -> bool:
    return abs(x - y) <= tol * max(1.0, abs(x), abs(y))


def diagonal_type_expectations(K: np.ndarray, tol: float = 1e-10) -> dict[str, bool]:
    """Einstein and weakly Einstein flags from a matrix of coordinate sectional curvatures."""
    K = np.array(K, dtype=float)
    np.fill_diagonal(K, 0.0)
    rho = K.sum(axis=1)
    chk = 2.0 * (K**2).sum(axis=1)
    scale = max(1.0, float(np.max(np.abs(chk), initial=0.0)))
    return {
        "einstein": bool(np.ptp(rho) <= tol * max(1.0, float(np.max(np.abs(rho))))),
        "weakly_einstein": bool(np.ptp(chk) <= tol * scale),
    }


def eigen_sectional(c: float, lam: np.ndarray) -> np.ndarray:
    """``K_ij = c + sum_t lam[t, i] lam[t, j]`` for diagonal shape operators."""
    lam = np.atleast_2d(np.asarray(lam, dtype=float))
    K = c + lam.T @ lam
    np.fill_diagonal(K, 0.0)
    return K


def _extrinsic(family_id, params, c, A, **extra) -> FamilyInstance:
    S = ShapeOperatorSet(A)
    amb = AmbientSpace(c, S.n + S.p)
    lam = np.array([np.diag(a) for a in S.A])
    expected = diagonal_type_expectations(eigen_sectional(c, lam))
    return FamilyInstance(family_id, dict(params), amb, S, gauss_curvature(amb, S), expected, **extra)


# ---------------------------------------------------------------------------
# products and warped products
# ---------------------------------------------------------------------------


def product_space_form(n1: int, c1: float, n2: int, c2: float) -> FamilyInstance:
    if n1 < 1 or n2 < 1:
        raise BadRange("factor dimensions must be at least 1")
    R = direct_sum(constant_curvature(n1, c1), constant_curvature(n2, c2))
    a, b = c1**2 * (n1 - 1), c2**2 * (n2 - 1)
    e1, e2 = (n1 - 1) * c1, (n2 - 1) * c2
    expected = {
        "weakly_einstein": _close(a, b, 1e-12),
        "einstein": _close(e1, e2, 1e-12),
        "semisymmetric": True,
    }
    params = {"n1": n1, "c1": c1, "n2": n2, "c2": c2}
    return FamilyInstance("product", params, AmbientSpace(0.0), None, R, expected)


def warped_instance(f: float, fp: float, c: float, m: int) -> FamilyInstance:
    R = warped_product_point(f, fp, c, m)
    kappa = (c - fp**2) / f**2
    expected = {"weakly_einstein": True, "einstein": abs(kappa) <= 1e-12}
    params = {"f": f, "fp": fp, "c": c, "m": m}
    return FamilyInstance("warped", params, AmbientSpace(c), None, R, expected)


# ---------------------------------------------------------------------------
# isoparametric hypersurfaces with two principal curvatures
# ---------------------------------------------------------------------------


def _iso_check(p: int, q: int, theta: float, sign: int) -> None:
    if sign not in (1, -1):
        raise BadRange("ambient_sign must be +1 or -1")
    if p < 1 or q < 1:
        raise BadRange("multiplicities must be at least 1")
    if sign == 1 and not 0 < theta < math.pi / 2:
        raise BadRange(f"theta must lie in (0, pi/2), got {theta}")
    if sign == -1 and not theta > 0:
        raise BadRange(f"theta must be positive, got {theta}")


def isoparametric_intrinsic(p: int, q: int, theta: float, sign: int) -> CurvTensor:
    """Product of two constant-curvature factors with the radii of the isoparametric pair."""
    _iso_check(p, q, theta, sign)
    if sign == 1:
        k1, k2 = 1 / math.sin(theta) ** 2, 1 / math.cos(theta) ** 2
    else:
        k1, k2 = 1 / math.sinh(theta) ** 2, -1 / math.cosh(theta) ** 2
    return direct_sum(constant_curvature(p, k1), constant_curvature(q, k2))


def isoparametric_product_hypersurface(p: int, q: int, theta: float, ambient_sign: int) -> FamilyInstance:
    """Principal curvatures ``cot/-tan`` in the sphere, ``coth/tanh`` in hyperbolic space."""
    _iso_check(p, q, theta, ambient_sign)
    if ambient_sign == 1:
        kap = [1 / math.tan(theta)] * p + [-math.tan(theta)] * q
        fid, t4 = "isoparametric_sphere", math.tan(theta) ** 4
    else:
        kap = [1 / math.tanh(theta)] * p + [math.tanh(theta)] * q
        fid, t4 = "isoparametric_hyperbolic", math.tanh(theta) ** 4
    params = {"p": p, "q": q, "theta": theta}
    inst = _extrinsic(fid, params, float(ambient_sign), np.diag(kap))
    if q > 1:
        relation = _close(t4, (p - 1) / (q - 1), 1e-12)
    else:
        relation = p == 1
    # closed-form flags must agree with the angle relation
    inst.expected["weakly_einstein"] = relation
    inst.expected["semisymmetric"] = True
    return inst


def weakly_einstein_theta(p: int, q: int, ambient_sign: int) -> float:
    """Angle with ``tan^4 = (p-1)/(q-1)`` (``tanh`` for the hyperbolic case)."""
    if p < 2 or q < 2:
        raise BadRange("both multiplicities must exceed 1")
    r = ((p - 1) / (q - 1)) ** 0.25
    if ambient_sign == 1:
        return math.atan(r)
    if r >= 1:
        raise BadRange("tanh^4 = (p-1)/(q-1) needs p < q")
    return math.atanh(r)


# ---------------------------------------------------------------------------
# Chen-equality submanifolds
# ---------------------------------------------------------------------------


def chen_instance(n, p, c, a, b, c_list=(), d_list=()) -> FamilyInstance:
    S = chen_shape_operators(int(n), int(p), a, b, c_list, d_list)
    amb = AmbientSpace(c, S.n + S.p)
    mu = a + b
    s = float(np.sum(np.square(c_list)) + np.sum(np.square(d_list)))
    K = np.full((S.n, S.n), c + mu**2)
    K[0, :] = K[:, 0] = c + a * mu
    K[1, :] = K[:, 1] = c + b * mu
    K[0, 1] = K[1, 0] = c + a * b - s
    params = {"n": n, "p": p, "ambient_c": c, "a": a, "b": b}
    for t, (ct, dt) in enumerate(zip(c_list, d_list), start=2):
        params[f"c{t}"], params[f"d{t}"] = ct, dt
    return FamilyInstance("chen", params, amb, S, gauss_curvature(amb, S), diagonal_type_expectations(K))


def chen_branch(
    n: int,
    p: int,
    c: float,
    a: float,
    b: float,
    c_list: Sequence[float] = (),
    d_list: Sequence[float] = (),
    tol: float = 1e-8,
) -> BranchVerdict:
    """Locate a weakly Einstein Chen-equality instance among the case labels.

    Raises :class:`NotWeaklyEinstein` if the instance is not weakly Einstein.
    """
    inst = chen_instance(n, p, c, a, b, c_list, d_list)
    R = inst.intrinsic
    D = derive(R)
    we = float(np.max(np.abs(D.checkR - D.normR2 / n * np.eye(n))))
    if we > tol * max(1.0, D.normR2):
        raise NotWeaklyEinstein(we)
    mu = a + b
    K = sectional_matrix(R)
    K12 = K[0, 1]
    off = K[~np.eye(n, dtype=bool)]
    res: dict[str, float] = {"weakly_einstein": we}
    H = np.trace(inst.shape.A, axis1=1, axis2=2) / n
    rho_eig = np.linalg.eigvalsh(D.rho)

    def same(x, y):
        return _close(x, y, tol)

    if abs(c) <= tol:
        setting = "euclidean"
        if np.max(np.abs(off)) <= tol:
            branch = "(i)"
            res["mu"] = abs(mu)
        elif same(a, b):
            branch = "(ii)"
            res["K12"] = abs(K12 + 2 * a**2 * math.sqrt(3 * n - 8))
            res["ricci_negative"] = max(0.0, -float(rho_eig[0]))
            if n in (3, 4):
                rank = int(np.sum(np.abs(rho_eig) > tol * max(1.0, np.max(np.abs(rho_eig)))))
                res["ricci_rank"] = float(abs(rank - (n - 2)))
            if n == 4:
                # informational: the normalisation a^2 = 1/4 does not follow from the
                # scale-invariant weakly Einstein condition, so it is not enforced
                res["a2_minus_quarter"] = abs(a**2 - 0.25)
        else:
            branch = "none"
    else:
        setting = "space_form"
        pos = c > 0
        if np.max(np.abs(off - c)) <= tol * max(1.0, abs(c)):
            branch = ("(i.a)" if pos else "(ii.a)") if p == 1 else ("(iii.a)" if pos else "(iv.a)")
        elif pos and abs(mu) <= tol:
            branch = "(i.b)" if p == 1 else "(iii.b)"
            res["K12"] = abs(K12 + c)
            res["mean_curvature"] = float(np.linalg.norm(H))
            res["ricci_negative"] = max(0.0, -float(rho_eig[0]))
            if p == 1:
                res["a2"] = abs(a**2 - 2 * c)
        elif same(a, b) and n in (3, 4):
            if pos and p == 1:
                branch = "none"
            else:
                branch = "(iii.c)" if pos else ("(ii.b)" if p == 1 else "(iv.b)")
                res["K12"] = abs(K12**2 - ((12 * n - 32) * a**4 + (4 * n - 8) * c * a**2 + c**2))
                if p == 1:
                    res["a2"] = abs(a**2 + c * (4 * n - 10) / (12 * n - 33))
        elif not pos and same(mu**2, -2 * c):
            branch = "(ii.c)" if p == 1 else "(iv.c)"
            res["mu2"] = abs(mu**2 + 2 * c)
        else:
            branch = "none"
    enforced = {k: v for k, v in res.items() if k not in ("weakly_einstein", "a2_minus_quarter")}
    consistent = branch != "none" and all(v <= tol * max(1.0, abs(c), a * a + b * b) for v in enforced.values())
    return BranchVerdict(setting, branch, res, consistent)


def _split_norm(rng: np.random.Generator, s: float, p: int) -> tuple[list[float], list[float]]:
    """Random ``c_t, d_t`` (t = 2..p) with ``sum c_t^2 + d_t^2 = s``."""
    if p == 1:
        return [], []
    v = rng.normal(size=2 * (p - 1))
    v *= math.sqrt(max(s, 0.0)) / np.linalg.norm(v)
    return v[: p - 1].tolist(), v[p - 1 :].tolist()


def random_we_chen(rng: np.random.Generator, c: float, n: int | None = None, p: int | None = None) -> dict:
    """Parameters of a random weakly Einstein Chen-equality instance in ambient curvature ``c``.

    Returns a dict with keys n, p, c, a, b, c_list, d_list.
    """
    for _ in range(1000):
        nn = n if n is not None else int(rng.integers(3, 7))
        pp = p if p is not None else int(rng.integers(1, 4))
        a = float(rng.uniform(0.3, 1.5)) * float(rng.choice([-1, 1]))
        kind = rng.integers(0, 4)
        if kind == 0:
            # constant curvature c: totally geodesic
            out = dict(a=0.0, b=0.0, s=0.0)
        elif c == 0:
            if pp < 2:
                continue
            out = dict(a=a, b=a, s=a * a * (1 + 2 * math.sqrt(3 * nn - 8)))
        elif c > 0 and kind == 1:
            if pp == 1:
                a = math.copysign(math.sqrt(2 * c), a)
            else:
                a = math.copysign(min(abs(a), math.sqrt(2 * c)), a)
            out = dict(a=a, b=-a, s=2 * c - a * a)
        elif kind == 2 or (c > 0 and kind == 3):
            if nn not in (3, 4):
                nn = int(rng.integers(3, 5)) if n is None else nn
                if nn not in (3, 4):
                    continue
            if pp == 1:
                if c > 0:
                    continue
                a = math.copysign(math.sqrt(-c * (4 * nn - 10) / (12 * nn - 33)), a)
                out = dict(a=a, b=a, s=0.0)
            else:
                disc = (12 * nn - 32) * a**4 + (4 * nn - 8) * c * a**2 + c**2
                if disc < 0:
                    continue
                roots = [c + a * a + math.sqrt(disc), c + a * a - math.sqrt(disc)]
                roots = [r for r in roots if r >= 0]
                if not roots:
                    continue
                out = dict(a=a, b=a, s=float(rng.choice(roots)))
        else:
            # mu^2 = -2c
            if c >= 0:
                continue
            mu = math.sqrt(-2 * c) * float(rng.choice([-1, 1]))
            if pp == 1:
                # (c + a b)^2 = (c + a mu)^2 (4 - n) + c^2 (n - 3) with b = mu - a
                poly = np.polysub(
                    np.polymul([-1, mu, c], [-1, mu, c]),
                    np.polyadd(np.polymul([mu, c], [mu, c]) * (4 - nn), [c * c * (nn - 3)]),
                )
                real = [r.real for r in np.roots(poly) if abs(r.imag) < 1e-10]
                real = [r for r in real if abs(2 * r - mu) > 1e-6]
                if not real:
                    continue
                a = float(rng.choice(real))
                out = dict(a=a, b=mu - a, s=0.0)
            else:
                b = mu - a
                rhs = (c + a * mu) ** 2 * (4 - nn) + c * c * (nn - 3)
                if rhs < 0:
                    continue
                roots = [r for r in (c + a * b - math.sqrt(rhs), c + a * b + math.sqrt(rhs)) if r >= 0]
                if not roots:
                    continue
                out = dict(a=a, b=b, s=float(rng.choice(roots)))
        cl, dl = _split_norm(rng, out["s"], pp)
        return dict(n=nn, p=pp, c=c, a=out["a"], b=out["b"], c_list=cl, d_list=dl)
    raise NoSolution("could not sample a weakly Einstein Chen instance")


# ---------------------------------------------------------------------------
# four-dimensional codimension-two families with flat normal connection
# ---------------------------------------------------------------------------


def st_system(a: Sequence[float], b: Sequence[float], signs: Sequence[int]) -> np.ndarray:
    """Signed relations ``a = s_a a'``, ``b = s_b b'``, ``c = s_c c'`` for diagonal ``A_1``, ``A_2``.

    ``a`` holds the diagonal of ``A_1`` and ``b`` the diagonal of ``A_2`` with ``b[0] = 0``.
    """
    a1, a2, a3, a4 = a
    _, b2, b3, b4 = b
    sa, sb, sc = signs
    return np.array([
        a1 * a2 - sa * (a3 * a4 + b3 * b4),
        a1 * a3 - sb * (a2 * a4 + b2 * b4),
        a1 * a4 - sc * (a2 * a3 + b2 * b3),
    ])


def _sign(params: Mapping[str, float], key: str, default: int = 1) -> int:
    v = params.get(key, default)
    if v not in (1, -1, 1.0, -1.0):
        raise BadRange(f"{key} must be +1 or -1, got {v}")
    return int(v)


def _need(params: Mapping[str, float], *keys: str) -> list[float]:
    missing = [k for k in keys if k not in params]
    if missing:
        raise BadArity(f"missing parameters: {missing}")
    vals = [float(params[k]) for k in keys]
    return vals


def _solve(fun: Callable[[np.ndarray], np.ndarray], x0: np.ndarray, tol: float) -> np.ndarray:
    return refine_family_params(fun, x0, tol=tol)


def r6_family(kind: int, params: Mapping[str, float], seed: int = 0, tol: float = 1e-12) -> FamilyInstance:
    """Build a member of one of the five codimension-two families in dimension four.

    Dependent parameters are solved from the full signed system by
    Levenberg-Marquardt starting from a seeded perturbation of a guess, and the
    result is re-verified.
    """
    kind = int(kind)
    rng = np.random.default_rng(seed)
    jitter = lambda x: np.asarray(x, dtype=float) * (1 + 0.2 * rng.uniform(-1, 1, size=np.shape(x)))  # noqa: E731
    P = dict(params)
    if kind == 23:
        alpha, beta, p = _need(P, "alpha", "beta", "p")
        sa = _sign(P, "sign")
        if alpha * beta * p == 0:
            raise BadRange("alpha, beta, p must be nonzero")

        def fun(x):
            return st_system([alpha, beta, 0, 0], [0, 0, p, x[0]], (sa, 1, 1))

        (q,) = _solve(fun, jitter([sa * alpha * beta / p]), tol)
        a1, a2 = [alpha, beta, 0, 0], [0, 0, p, q]
        P["q"] = q
    elif kind == 24:
        alpha, beta, gamma = _need(P, "alpha", "beta", "gamma")
        s0, sb, sc = _sign(P, "s0"), _sign(P, "sign_b", 1), _sign(P, "sign_c", -1)
        if alpha * beta * gamma == 0:
            raise BadRange("alpha, beta, gamma must be nonzero")
        a1 = [alpha, 0, beta / alpha, gamma / alpha]

        def fun(x):
            return st_system(a1, [0, s0 * alpha, x[0], x[1]], (1, sb, sc))

        guess = [sc * s0 * gamma / alpha, sb * s0 * beta / alpha]
        p, q = _solve(fun, jitter(guess), tol)
        a2 = [0, s0 * alpha, p, q]
        P.update(p=p, q=q)
    elif kind == 25:
        (alpha,) = _need(P, "alpha")
        form = int(P.get("form", 1))
        eps = float(P.get("cyl", 1.0))
        idx = int(P.get("cyl_index", 3))
        if alpha == 0 or form not in (1, 2) or idx not in (1, 2, 3):
            raise BadRange("need alpha != 0, form in {1, 2}, cyl_index in {1, 2, 3}")
        a1 = [alpha, -alpha, alpha, -alpha] if form == 1 else [alpha, alpha, alpha, -alpha]
        a2 = [0.0] * 4
        a2[idx] = eps
        signs = (1, 1, 1) if form == 1 else (-1, -1, -1)
        r = st_system(a1, a2, signs)
        if np.max(np.abs(r)) > tol * max(1.0, alpha * alpha):
            raise NoSolution("cylindrical direction breaks the relations", float(np.max(np.abs(r))))
    elif kind == 26:
        alpha, beta, p = _need(P, "alpha", "beta", "p")
        s3, s4, sc = _sign(P, "s3"), _sign(P, "s4"), _sign(P, "sign_c")
        if alpha * beta * p == 0:
            raise BadRange("alpha, beta, p must be nonzero")
        a1 = [alpha, beta / alpha, s3 * beta / alpha, s4 * alpha]
        sig = s3 * s4

        def fun(x):
            return st_system(a1, [0, p, x[0], 0], (sig, sig, sc))

        guess = (sc * s4 * alpha**2 - s3 * beta**2 / alpha**2) / p
        (q,) = _solve(fun, jitter([guess if guess != 0 else 1.0]), tol)
        if abs(q) <= 1e-9:
            raise NoSolution("dependent parameter q vanishes", 0.0)
        a2 = [0, p, q, 0]
        P["q"] = q
    elif kind == 27:
        alpha, beta, gamma, delta = _need(P, "alpha", "beta", "gamma", "delta")
        sa, sb, sc = _sign(P, "sign_a"), _sign(P, "sign_b"), _sign(P, "sign_c")
        root = _sign(P, "root")
        if alpha * beta * gamma * delta == 0:
            raise BadRange("alpha, beta, gamma, delta must be nonzero")
        a1 = [alpha, beta / alpha, gamma / alpha, delta / alpha]
        X = sa * beta - gamma * delta / alpha**2  # qr
        Y = sb * gamma - beta * delta / alpha**2  # pr
        Z = sc * delta - beta * gamma / alpha**2  # pq

        def fun(x):
            return st_system(a1, [0, *x], (sa, sb, sc))

        if X * Y * Z > 0:
            p0 = root * math.sqrt(Y * Z / X)
            guess = [p0, Z / p0, Y / p0]
        else:
            guess = [root * 1.0, 1.0, 1.0]
        p, q, r = _solve(fun, jitter(guess), tol)
        if min(abs(p), abs(q), abs(r)) <= 1e-9:
            raise NoSolution("dependent parameters must be nonzero", 0.0)
        a2 = [0, p, q, r]
        P.update(p=p, q=q, r=r)
    else:
        raise BadRange(f"unknown family kind {kind}")
    A = np.array([np.diag(a1), np.diag(a2)], dtype=float)
    P = {k: float(v) for k, v in P.items()}
    inst = _extrinsic(f"r6_{kind}", P, 0.0, A, expected_rank=R6_RANKS[kind])
    rep = condition_report(inst.intrinsic)
    if not rep.flags["weakly_einstein"]:
        raise NoSolution("solved instance is not weakly Einstein", rep.weakly_einstein_residual)
    return inst


def headline_constraint_residual(kind: int, params: Mapping[str, float]) -> float:
    """Residual of the single product constraint of a family (necessary, not sufficient)."""
    P = {k: float(v) for k, v in params.items()}
    if kind == 23:
        return abs(abs(P["p"] * P["q"]) - abs(P["alpha"] * P["beta"]))
    if kind == 24:
        return abs(P["p"] * P["q"] + P["beta"] * P["gamma"] / P["alpha"] ** 2)
    if kind == 26:
        return abs(abs(P["p"] * P["q"]) - abs(P["alpha"] ** 2 - P["beta"] ** 2 / P["alpha"] ** 2))
    raise BadRange(f"no single headline constraint for kind {kind}")


def headline_only_instance(kind: int, params: Mapping[str, float]) -> tuple[float, bool]:
    """Build an instance from the headline constraint alone.

    Returns the headline residual and whether the instance is weakly Einstein;
    a small residual with ``False`` flags a headline that is not sufficient.
    """
    P = {k: float(v) for k, v in params.items()}
    if kind == 24:
        al, be, ga = P["alpha"], P["beta"], P["gamma"]
        A1 = np.diag([al, 0, be / al, ga / al])
        A2 = np.diag([0, P.get("s0", 1) * al, P["p"], P["q"]])
    elif kind == 26:
        al, be = P["alpha"], P["beta"]
        A1 = np.diag([al, be / al, P.get("s3", 1) * be / al, P.get("s4", 1) * al])
        A2 = np.diag([0, P["p"], P["q"], 0])
    elif kind == 23:
        A1 = np.diag([P["alpha"], P["beta"], 0, 0])
        A2 = np.diag([0, 0, P["p"], P["q"]])
    else:
        raise BadRange(f"no single headline constraint for kind {kind}")
    S = ShapeOperatorSet(np.array([A1, A2]))
    rep = condition_report(gauss_curvature(AmbientSpace(0.0), S))
    return headline_constraint_residual(kind, P), rep.flags["weakly_einstein"]


def random_r6_params(kind: int, rng: np.random.Generator) -> dict[str, float]:
    """Free parameters for which the family's system is solvable."""

    def mag():
        return float(rng.uniform(0.5, 2.0) * rng.choice([-1, 1]))

    def sgn():
        return int(rng.choice([-1, 1]))

    if kind == 23:
        return {"alpha": mag(), "beta": mag(), "p": mag(), "sign": sgn()}
    if kind == 24:
        sb = sgn()
        return {"alpha": mag(), "beta": mag(), "gamma": mag(), "s0": sgn(), "sign_b": sb, "sign_c": -sb}
    if kind == 25:
        return {"alpha": mag(), "form": int(rng.integers(1, 3)), "cyl": mag(), "cyl_index": int(rng.integers(1, 4))}
    if kind == 26:
        while True:
            P = {"alpha": mag(), "beta": mag(), "p": mag(), "s3": sgn(), "s4": sgn(), "sign_c": sgn()}
            q = (P["sign_c"] * P["s4"] * P["alpha"] ** 2 - P["s3"] * P["beta"] ** 2 / P["alpha"] ** 2) / P["p"]
            if abs(q) > 0.05:
                return P
    if kind == 27:
        while True:
            P = {"alpha": mag(), "beta": mag(), "gamma": mag(), "delta": mag(),
                 "sign_a": sgn(), "sign_b": sgn(), "sign_c": sgn(), "root": sgn()}
            al = P["alpha"]
            X = P["sign_a"] * P["beta"] - P["gamma"] * P["delta"] / al**2
            Y = P["sign_b"] * P["gamma"] - P["beta"] * P["delta"] / al**2
            Z = P["sign_c"] * P["delta"] - P["beta"] * P["gamma"] / al**2
            if X * Y * Z > 0 and min(abs(X), abs(Y), abs(Z)) > 0.05:
                return P
    raise BadRange(f"unknown family kind {kind}")


def quartic_check(inst: FamilyInstance, tol: float = 1e-9) -> float:
    """Residual of the quartic satisfied by ``(A_1)_11`` and of its discriminant identity."""
    S = inst.shape
    if S is None or S.n != 4 or S.p != 2 or inst.ambient.c != 0:
        raise FormMismatch("need n = 4, p = 2, c = 0 with shape operators")
    offd = np.max(np.abs(S.A - np.einsum("tii->ti", S.A)[:, :, None] * np.eye(4)))
    if offd > tol:
        raise FormMismatch("shape operators must be diagonal")
    a = np.diag(S.A[0])
    if abs(S.A[1, 0, 0]) > tol or abs(a[0]) <= tol:
        raise FormMismatch("need (A_2)_11 = 0 and (A_1)_11 != 0")
    N2 = inst.intrinsic.norm2
    T2 = float(np.sum(a**2))
    r1 = abs(a[0] ** 4 - T2 * a[0] ** 2 + N2 / 8)
    r2 = abs(T2**2 - N2 / 2 - (a[0] ** 2 - a[1] ** 2 - a[2] ** 2 - a[3] ** 2) ** 2)
    return float(max(r1, r2))


# ---------------------------------------------------------------------------
# dispatcher used by scenario files
# ---------------------------------------------------------------------------


def _chen_lists(P: Mapping[str, float], p: int) -> tuple[list[float], list[float]]:
    cl = [float(P.get(f"c{t}", 0.0)) for t in range(2, p + 1)]
    dl = [float(P.get(f"d{t}", 0.0)) for t in range(2, p + 1)]
    return cl, dl


def build_family(family_id: str, params: Mapping[str, float], seed: int = 0) -> FamilyInstance:
    P = dict(params)
    try:
        if family_id == "product":
            return product_space_form(int(P["n1"]), float(P["c1"]), int(P["n2"]), float(P["c2"]))
        if family_id in ("isoparametric_sphere", "isoparametric_hyperbolic"):
            sign = 1 if family_id.endswith("sphere") else -1
            return isoparametric_product_hypersurface(int(P["p"]), int(P["q"]), float(P["theta"]), sign)
        if family_id == "chen":
            p = int(P["p"])
            cl, dl = _chen_lists(P, p)
            return chen_instance(int(P["n"]), p, float(P["ambient_c"]), float(P["a"]), float(P["b"]), cl, dl)
        if family_id == "warped":
            return warped_instance(float(P["f"]), float(P["fp"]), float(P["c"]), int(P["m"]))
        if family_id.startswith("r6_") and family_id in FAMILY_IDS:
            return r6_family(int(family_id[3:]), P, seed=seed)
    except KeyError as exc:
        raise BadArity(f"missing parameter {exc.args[0]!r} for family {family_id}") from None
    raise InputError(f"unknown family {family_id!r}")


# ---------------------------------------------------------------------------
# samplers for commuting shape operators
# ---------------------------------------------------------------------------


def random_rotation(rng: np.random.Generator, n: int) -> np.ndarray:
    Q, Rm = np.linalg.qr(rng.normal(size=(n, n)))
    Q = Q * np.sign(np.diag(Rm))
    if np.linalg.det(Q) < 0:
        Q[:, 0] = -Q[:, 0]
    return Q


def _rotate(rng: np.random.Generator, A: np.ndarray) -> ShapeOperatorSet:
    """Random tangent and normal frame changes of diagonal shape operators."""
    S = ShapeOperatorSet(A)
    Q = random_rotation(rng, S.n)
    O = random_rotation(rng, S.p) if S.p > 1 else np.eye(1)
    return S.conjugated(Q.T).normal_rotated(O)


def constant_curvature_commuting(rng: np.random.Generator, c: float, n: int, K: float) -> ShapeOperatorSet:
    """Commuting shape operators whose Gauss tensor has constant curvature ``K``.

    The eigenvalue vectors ``v_i = (lam[t, i])_t`` form a Gram matrix with
    off-diagonal entries ``K - c``; the diagonal is chosen large enough to be
    positive definite.
    """
    g = K - c
    d = abs(g) * (n + 1) + float(rng.uniform(0.5, 2.0))
    G = (d - g) * np.eye(n) + g * np.ones((n, n))
    L = np.linalg.cholesky(G)
    A = np.array([np.diag(L[:, t]) for t in range(n)])
    return _rotate(rng, A)


def random_einstein_we_commuting(rng: np.random.Generator) -> tuple[AmbientSpace, ShapeOperatorSet, str]:
    """Einstein and weakly Einstein instance with flat normal connection, from several constructions."""
    kind = int(rng.integers(0, 4))
    if kind == 0:
        n = int(rng.integers(3, 6))
        c = float(rng.choice([-1.0, 0.0, 1.0]))
        S = constant_curvature_commuting(rng, c, n, float(rng.uniform(-2, 2)))
        return AmbientSpace(c), S, "constant"
    if kind == 1:
        k = int(rng.integers(2, 4))
        r = float(rng.uniform(0.5, 2.0))
        A1 = np.diag([r] * k + [0.0] * k)
        A2 = np.diag([0.0] * k + [r] * k)
        return AmbientSpace(0.0), _rotate(rng, np.array([A1, A2])), "sphere-product"
    if kind == 2:
        P = random_r6_params(25, rng)
        P["form"] = 1
        inst = r6_family(25, P)
        return inst.ambient, _rotate(rng, np.array(inst.shape.A)), "r6_25"
    k = int(rng.integers(2, 4))
    A = np.diag([1.0] * k + [-1.0] * k)
    return AmbientSpace(1.0), _rotate(rng, A), "clifford"


def random_two_stein_we_commuting(rng: np.random.Generator) -> tuple[AmbientSpace, ShapeOperatorSet]:
    """2-stein, weakly Einstein, flat normal connection and ``c != 0``."""
    n = int(rng.integers(3, 6))
    c = float(rng.choice([-1.0, 1.0]))
    return AmbientSpace(c), constant_curvature_commuting(rng, c, n, float(rng.uniform(-2, 2)))


GAP_PROBE = np.array([np.diag([1.0, 1.0, 0.0, 0.0]), np.diag([0.0, 0.0, 1.0, 1.0])])


# ---------------------------------------------------------------------------
# hypersurface principal-curvature samplers
# ---------------------------------------------------------------------------


def two_valued_we(c: float, m1: int, m2: int, k1: float) -> list[float]:
    """Second principal curvatures ``k2`` making ``(k1 x m1, k2 x m2)`` weakly Einstein."""
    # 2c T + (k1 + k2)(-2c + T2 - k1^2 - k2^2) = 0, a cubic in k2
    T = np.array([m2, m1 * k1])  # T = m2 k2 + m1 k1
    T2 = np.array([m2 - 1, 0.0, (m1 - 1) * k1**2])  # T2 - k1^2 - k2^2
    poly = np.polyadd(2 * c * T, np.polymul([1, k1], np.polyadd(T2, [-2 * c])))
    roots = [r.real for r in np.roots(poly) if abs(r.imag) < 1e-9]
    return [r for r in roots if abs(r - k1) > 1e-6]


def sample_hypersurface_kappa(rng: np.random.Generator, c: float) -> np.ndarray:
    """Principal curvatures mixing generic draws with weakly Einstein and semisymmetric patterns."""
    n = int(rng.integers(3, 8))
    kind = int(rng.integers(0, 6))
    k = float(rng.uniform(0.3, 2.0) * rng.choice([-1, 1]))
    if kind == 0:
        return rng.normal(size=n)
    if kind == 1:
        return np.full(n, k)
    if kind == 2:
        out = np.zeros(n)
        out[int(rng.integers(n))] = k
        return out
    m1 = int(rng.integers(1, n))
    if kind == 3 and c != 0:
        return np.array([k] * m1 + [-c / k] * (n - m1))
    if kind in (3, 4) and c == 0:
        return np.array([k] * m1 + [-k] * (n - m1))
    roots = two_valued_we(c, m1, n - m1, k)
    if roots:
        return rng.permutation(np.array([k] * m1 + [float(rng.choice(roots))] * (n - m1)))
    return rng.normal(size=n)
