"""Verification suites run by ``curvlab verify`` and the acceptance tests.

Each suite returns a :class:`SuiteResult` holding one :class:`Case` per
checked quantity.  A case compares a measured value against a bound, either
``value <= bound`` (the usual residual check) or ``value >= bound`` (a
control that must fail, or an inequality that must hold).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import families as fam
from .conditions import (
    chen_report,
    condition_report,
    semisym_defects,
    semisym_eigencheck,
    two_stein_basis_report,
    we_hypersurface_eigencheck,
)
from .curvature import (
    berger_residual,
    constant_curvature,
    curvature_operator,
    derive,
    direct_sum,
    sectional_matrix,
)
from .errors import NotWeaklyEinstein, UnknownSuite
from .oracles import grid_inf_sectional, random_curvature, ricci_inf_sectional
from .solver import inf_sectional, plane_distance, singer_thorpe_search
from .submanifold import AmbientSpace, ShapeOperatorSet, chen_shape_operators, gauss_curvature


@dataclass
class Case:
    name: str
    value: float
    bound: float
    op: str = "le"

    @property
    def ok(self) -> bool:
        if isinstance(self.value, float) and math.isnan(self.value):
            return False
        return self.value <= self.bound if self.op == "le" else self.value >= self.bound

    def line(self) -> str:
        sym = "<=" if self.op == "le" else ">="
        return f"{'ok  ' if self.ok else 'FAIL'} {self.name}: {self.value:.3e} {sym} {self.bound:.1e}"


@dataclass
class SuiteResult:
    suite_id: str
    cases: list[Case] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.cases)

    @property
    def failures(self) -> list[Case]:
        return [c for c in self.cases if not c.ok]

    def add(self, name: str, value: float, bound: float, op: str = "le") -> None:
        self.cases.append(Case(name, float(value), float(bound), op))

    def to_dict(self) -> dict:
        return {
            "suite": self.suite_id,
            "passed": self.passed,
            "elapsed": self.elapsed,
            "cases": [{"name": c.name, "value": c.value, "bound": c.bound, "op": c.op, "ok": c.ok} for c in self.cases],
            "notes": list(self.notes),
        }


def _rng(seed: int, salt: int) -> np.random.Generator:
    return np.random.default_rng([seed, salt])


def _sym(rng: np.random.Generator, n: int, lo: float = -2.0, hi: float = 2.0) -> np.ndarray:
    M = rng.uniform(lo, hi, size=(n, n))
    return np.triu(M) + np.triu(M, 1).T


def _we_res(R) -> float:
    D = derive(R)
    return float(np.max(np.abs(D.checkR - D.normR2 / R.n * np.eye(R.n))))


# ---------------------------------------------------------------------------


def suite_berger(seed: int = 0, count: int = 200) -> SuiteResult:
    """Four-dimensional quadratic identity on random Gauss tensors."""
    out = SuiteResult("berger")
    rng = _rng(seed, 1)
    worst = 0.0
    for k in range(count):
        c = float(rng.choice([-1.0, 0.0, 1.0]))
        if k % 2 == 0:
            Q = fam.random_rotation(rng, 4)
            A = np.array([Q @ np.diag(rng.uniform(-2, 2, 4)) @ Q.T for _ in range(2)])
        else:
            A = np.array([_sym(rng, 4), _sym(rng, 4)])
        R = gauss_curvature(AmbientSpace(c), ShapeOperatorSet(A))
        rel = float(np.max(np.abs(berger_residual(R)))) / max(1.0, R.norm2)
        worst = max(worst, rel)
    out.add(f"max relative residual over {count} tensors", worst, 1e-9)
    return out


def suite_product(seed: int = 0) -> SuiteResult:
    out = SuiteResult("product")
    tol = 1e-10
    we = fam.product_space_form(2, math.sqrt(2), 3, -1.0)
    rep = condition_report(we.intrinsic, tol)
    out.add("S2(sqrt2) x H3(-1) weakly Einstein residual", rep.weakly_einstein_residual, tol)
    out.add("S2(sqrt2) x H3(-1) Einstein residual (must fail)", rep.einstein_residual, tol, "ge")
    ein = fam.product_space_form(2, 2.0, 3, 1.0)
    rep = condition_report(ein.intrinsic, tol)
    out.add("S2(2) x S3(1) Einstein residual", rep.einstein_residual, tol)
    out.add("S2(2) x S3(1) weakly Einstein residual (must fail)", rep.weakly_einstein_residual, tol, "ge")
    opp = fam.product_space_form(2, 1.0, 2, -1.0)
    out.add("M2(1) x M2(-1) weakly Einstein residual", condition_report(opp.intrinsic, tol).weakly_einstein_residual, tol)
    return out


def suite_chen_euclid(seed: int = 0, count: int = 100) -> SuiteResult:
    out = SuiteResult("chen-euclid")
    tol = 1e-10
    a = 0.5
    inst = fam.chen_instance(4, 2, 0.0, a, a, [math.sqrt(5) / 2], [0.0])
    R = inst.intrinsic
    D = derive(R)
    out.add("certificate weakly Einstein residual", _we_res(R), tol)
    out.add("rho - diag(0,0,2,2)", np.max(np.abs(D.rho - np.diag([0, 0, 2, 2]))), tol)
    rank = int(np.sum(np.abs(np.linalg.eigvalsh(D.rho)) > 1e-8))
    out.add("Ricci rank - 2", abs(rank - 2), 0)
    K12 = sectional_matrix(R)[0, 1]
    out.add("K12 + 1", abs(K12 + 1), tol)
    out.add("K12 + 2 a^2 sqrt(3n - 8)", abs(K12 + 2 * a * a * math.sqrt(4)), tol)
    v = fam.chen_branch(4, 2, 0.0, a, a, [math.sqrt(5) / 2], [0.0])
    out.add("branch is (ii)", 0.0 if v.branch == "(ii)" and v.consistent else 1.0, 0)
    out.notes.append(_completeness(out, seed, 0.0, count))
    return out


def _completeness(out: SuiteResult, seed: int, c: float, count: int) -> str:
    rng = _rng(seed, 30 + int(c) + 1)
    labels: dict[str, int] = {}
    bad = 0
    for _ in range(count):
        d = fam.random_we_chen(rng, c)
        try:
            v = fam.chen_branch(d["n"], d["p"], c, d["a"], d["b"], d["c_list"], d["d_list"])
        except NotWeaklyEinstein:
            bad += 1
            continue
        labels[v.branch] = labels.get(v.branch, 0) + 1
        bad += v.branch == "none" or not v.consistent
    out.add(f"c={c:g}: random instances unlabelled or inconsistent", bad, 0)
    return f"c={c:g} branch counts: " + ", ".join(f"{k}={labels[k]}" for k in sorted(labels))


def suite_chen_spaceform(seed: int = 0, count: int = 100) -> SuiteResult:
    out = SuiteResult("chen-spaceform")
    tol = 1e-10
    a = math.sqrt(2 / 3)
    v = fam.chen_branch(3, 1, -1.0, a, a, tol=tol)
    out.add("(n=3, c=-1, a=b=sqrt(2/3)) weakly Einstein residual", v.residuals["weakly_einstein"], tol)
    out.add("label (ii.b)", 0.0 if v.branch == "(ii.b)" and v.consistent else 1.0, 0)
    s = math.sqrt(2)
    v = fam.chen_branch(5, 1, 1.0, s, -s, tol=tol)
    inst = fam.chen_instance(5, 1, 1.0, s, -s)
    rho = derive(inst.intrinsic).rho
    out.add("(n=5, c=1, a=-b=sqrt2) weakly Einstein residual", v.residuals["weakly_einstein"], tol)
    out.add("label (i.b)", 0.0 if v.branch == "(i.b)" and v.consistent else 1.0, 0)
    out.add("rho - diag(2,2,4,4,4)", np.max(np.abs(rho - np.diag([2, 2, 4, 4, 4]))), tol)
    out.add("mean curvature", v.residuals["mean_curvature"], tol)
    for c in (-1.0, 1.0):
        out.notes.append(_completeness(out, seed, c, count))
    return out


def suite_isoparametric(seed: int = 0) -> SuiteResult:
    out = SuiteResult("isoparametric")
    tol = 1e-9
    th = math.atan(2**-0.5)
    inst = fam.isoparametric_product_hypersurface(2, 5, th, 1)
    rep = condition_report(inst.intrinsic, tol)
    out.add("p=2, q=5 sphere: weakly Einstein residual", rep.weakly_einstein_residual, tol)
    out.add("p=2, q=5 sphere: semisymmetry residual", rep.semisym_residual, tol)
    out.add("p=2, q=5 sphere: Einstein residual (must fail)", rep.einstein_residual, tol, "ge")
    intr = fam.isoparametric_intrinsic(2, 5, th, 1)
    out.add("sphere: induced vs product tensor", np.max(np.abs(inst.intrinsic.comp - intr.comp)), 1e-10)
    ctrl = fam.isoparametric_product_hypersurface(2, 5, th + 0.05, 1)
    out.add("theta + 0.05 control: weakly Einstein residual (must fail)",
            condition_report(ctrl.intrinsic).weakly_einstein_residual, 1e-3, "ge")
    th_h = math.atanh(0.25**0.25)
    hyp = fam.isoparametric_product_hypersurface(2, 5, th_h, -1)
    rep = condition_report(hyp.intrinsic, tol)
    out.add("tanh^4 = 1/4 hyperbolic: weakly Einstein residual", rep.weakly_einstein_residual, tol)
    out.add("hyperbolic: Einstein residual (must fail)", rep.einstein_residual, tol, "ge")
    intr = fam.isoparametric_intrinsic(2, 5, th_h, -1)
    out.add("hyperbolic: induced vs product tensor", np.max(np.abs(hyp.intrinsic.comp - intr.comp)), 1e-10)
    cl = fam.isoparametric_product_hypersurface(3, 3, math.pi / 4, 1)
    out.add("p = q, theta = pi/4: Einstein residual", condition_report(cl.intrinsic).einstein_residual, tol)
    # the relation over a range of multiplicities
    worst = 0.0
    for p in range(2, 6):
        for q in range(2, 7):
            for sign in (1, -1):
                if sign == -1 and p >= q:
                    continue
                t = fam.weakly_einstein_theta(p, q, sign)
                i = fam.isoparametric_product_hypersurface(p, q, t, sign)
                worst = max(worst, condition_report(i.intrinsic).weakly_einstein_residual / i.intrinsic.scale())
    out.add("relation sweep p in 2..5, q in 2..6: relative residual", worst, tol)
    return out


def suite_hypersurface(seed: int = 0, count: int = 500, fuzz: int = 100_000) -> SuiteResult:
    """Eigenvalue forms against the full tensor, plus the hypersurface lemmas."""
    out = SuiteResult("hypersurface")
    tol = 1e-8
    for ci, c in enumerate((-1.0, 0.0, 1.0)):
        rng = _rng(seed, 60 + ci)
        dis_we = dis_ss = 0
        pattern_bad = 0
        c0_semisym_we_nonein = 0
        for _ in range(count):
            k = fam.sample_hypersurface_kappa(rng, c)
            R = gauss_curvature(AmbientSpace(c), ShapeOperatorSet(np.diag(k)))
            rep = condition_report(R, tol)
            we = we_hypersurface_eigencheck(k, c, tol)[0]
            ss = semisym_eigencheck(k, c, tol)[0]
            dis_we += we != rep.flags["weakly_einstein"]
            dis_ss += ss != rep.flags["semisymmetric"]
            if c == 0:
                pattern_bad += rep.flags["weakly_einstein"] != _we_pattern(k)
                c0_semisym_we_nonein += (
                    rep.flags["weakly_einstein"] and rep.flags["semisymmetric"] and not rep.flags["einstein"]
                )
        out.add(f"c={c:g}: weakly Einstein eigencheck disagreements", dis_we, 0)
        out.add(f"c={c:g}: semisymmetry eigencheck disagreements", dis_ss, 0)
        if c == 0:
            out.add("c=0: weakly Einstein vs umbilical/flat/+-kappa pattern mismatches", pattern_bad, 0)
            out.add("c=0: semisymmetric weakly Einstein non-Einstein points", c0_semisym_we_nonein, 0)
    _semisym_rank(out, seed, fuzz)
    _two_valued(out)
    _semisym_products(out, seed)
    return out


def _we_pattern(k: np.ndarray, tol: float = 1e-7) -> bool:
    scale = max(1.0, float(np.max(np.abs(k))))
    if np.ptp(k) <= tol * scale:
        return True
    if int(np.sum(np.abs(k) > tol * scale)) <= 1:
        return True
    vals = np.unique(np.round(k / (tol * scale)) * tol * scale)
    return len(vals) == 2 and abs(vals[0] + vals[1]) <= 2 * tol * scale


def _semisym_rank(out: SuiteResult, seed: int, fuzz: int) -> None:
    rng = _rng(seed, 70)
    alphabet = np.array([0.0, 1.0, -1.0, 2.0, -2.0, 0.5, -0.5])
    bad = passing = 0
    for n in (3, 4, 5):
        for c in (-1.0, 1.0):
            K = alphabet[rng.integers(0, len(alphabet), size=(fuzz // 6, n))]
            worst = np.max(np.abs(semisym_defects(K, c)), axis=(1, 2, 3))
            ok = worst <= 1e-9
            passing += int(ok.sum())
            for k in K[ok]:
                rank = int(np.sum(k != 0))
                distinct = len(np.unique(k))
                bad += not ((rank == n and distinct <= 2) or rank <= 1)
    out.add(f"fuzz: semisymmetric points ({passing} found) violating rank n / rank <= 1", bad, 0)
    structured = 0
    for c in (-1.0, 1.0):
        for n in (3, 4, 5, 6):
            a = float(rng.uniform(0.3, 2.0))
            for k in (np.full(n, a), np.array([a] * 2 + [-c / a] * (n - 2)), np.eye(n)[0] * a):
                structured += not semisym_eigencheck(k, c, 1e-9)[0]
    out.add("structured semisymmetric samples failing the eigencheck", structured, 0)


def _two_valued(out: SuiteResult) -> None:
    """Multiplicity-one two-valued weakly Einstein points, with and without semisymmetry."""
    found = semisym = 0
    for c in (-1.0, 1.0):
        for n in range(3, 8):
            for k1 in np.linspace(-3, 3, 61):
                if abs(k1) < 1e-9:
                    continue
                for k2 in fam.two_valued_we(c, 1, n - 1, float(k1)):
                    k = np.array([k1] + [k2] * (n - 1))
                    rep = condition_report(gauss_curvature(AmbientSpace(c), ShapeOperatorSet(np.diag(k))), 1e-8)
                    if rep.flags["weakly_einstein"] and not rep.flags["einstein"]:
                        found += 1
                        semisym += rep.flags["semisymmetric"]
    out.notes.append(
        f"{found} pointwise weakly Einstein non-Einstein shape operators with a simple principal "
        "curvature exist; the multiplicity claim needs more than the algebra at a point"
    )
    out.add("of those, semisymmetric ones", semisym, 0)


def _semisym_products(out: SuiteResult, seed: int) -> None:
    rng = _rng(seed, 71)
    worst = 0.0
    for _ in range(50):
        c = float(rng.choice([-1.0, 1.0]))
        m1, m2 = int(rng.integers(2, 4)), int(rng.integers(2, 4))
        a = float(rng.uniform(0.3, 2.0) * rng.choice([-1, 1]))
        b = -c / a
        R = gauss_curvature(AmbientSpace(c), ShapeOperatorSet(np.diag([a] * m1 + [b] * m2)))
        P = direct_sum(constant_curvature(m1, c + a * a), constant_curvature(m2, c + b * b))
        worst = max(worst, float(np.max(np.abs(R.comp - P.comp))))
    out.add("two-valued semisymmetric points vs product of space forms", worst, 1e-10)


def chen_form_sample(rng: np.random.Generator, margin: float = 0.05) -> tuple[float, ShapeOperatorSet]:
    """Random Chen-form shape operators whose plane e1^e2 is an isolated minimum.

    Near-ties between K12 and another coordinate curvature make the
    minimising plane ill-conditioned, so such draws are rejected.
    """
    while True:
        n, p = int(rng.integers(3, 6)), int(rng.integers(1, 3))
        c = float(rng.choice([-1.0, 0.0, 1.0]))
        a, b = rng.uniform(-1.5, 1.5, size=2)
        cl, dl = rng.uniform(-1.5, 1.5, size=(2, p - 1))
        S = chen_shape_operators(n, p, float(a), float(b), cl.tolist(), dl.tolist())
        K = sectional_matrix(gauss_curvature(AmbientSpace(c), S))
        others = K[np.triu_indices(n, 1)][1:]
        if np.min(others) - K[0, 1] >= margin:
            return c, S


def suite_chen_inequality(seed: int = 0, count: int = 100, eq_count: int = 50, grid_count: int = 20) -> SuiteResult:
    out = SuiteResult("chen-inequality")
    rng = _rng(seed, 80)
    worst_gap = np.inf
    for k in range(count):
        n, p = int(rng.integers(3, 6)), int(rng.integers(1, 3))
        c = float(rng.choice([-1.0, 0.0, 1.0]))
        S = ShapeOperatorSet(np.array([_sym(rng, n) for _ in range(p)]))
        worst_gap = min(worst_gap, chen_report(AmbientSpace(c), S, seed=seed + k).gap)
    out.add(f"min gap over {count} random submanifolds", worst_gap, -1e-9, "ge")
    not_eq, worst_dist = 0, 0.0
    for k in range(eq_count):
        c, S = chen_form_sample(rng)
        rep = chen_report(AmbientSpace(c), S, seed=seed + k)
        not_eq += not rep.equality
        e = np.eye(S.n)
        worst_dist = max(worst_dist, plane_distance(rep.inf_plane.u, rep.inf_plane.v, e[0], e[1]))
    out.add(f"Chen-form instances without equality (of {eq_count})", not_eq, 0)
    out.add("max distance of minimising plane to e1^e2", worst_dist, 1e-5)
    worst = 0.0
    for k in range(grid_count):
        R = random_curvature(3, rng)
        v = inf_sectional(R, seed=seed + k).value
        worst = max(worst, abs(v - grid_inf_sectional(R)), abs(v - ricci_inf_sectional(R)))
    out.add(f"n=3 optimiser vs grid and Ricci oracles ({grid_count} tensors)", worst, 1e-6)
    return out


def suite_two_stein(seed: int = 0, count: int = 100) -> SuiteResult:
    out = SuiteResult("two-stein")
    tol = 1e-8
    rng = _rng(seed, 90)
    spread = formula = 0.0
    const_worst = 0.0
    for _ in range(count):
        amb, S, _ = fam.random_einstein_we_commuting(rng)
        ts = two_stein_basis_report(amb, S, tol)
        spread = max(spread, ts.basis_h2_spread)
        formula = max(formula, ts.h2_formula_residual if ts.h2_formula_residual is not None else np.inf)
        const_worst = max(const_worst, _flat_two_stein_spread(amb, S, tol))
    out.add("Einstein + weakly Einstein: max h2 spread", spread, tol)
    out.add("Einstein + weakly Einstein: h2 formula residual", formula, tol)
    ein = h1 = 0.0
    for _ in range(count):
        amb, S = fam.random_two_stein_we_commuting(rng)
        ts = two_stein_basis_report(amb, S, tol)
        R = gauss_curvature(amb, S)
        ein = max(ein, condition_report(R, tol).einstein_residual)
        h1 = max(h1, ts.h1_formula_residual if ts.h1_formula_residual is not None else np.inf)
        const_worst = max(const_worst, _flat_two_stein_spread(amb, S, tol))
    out.add("2-stein + weakly Einstein, c != 0: Einstein residual", ein, tol)
    out.add("2-stein + weakly Einstein, c != 0: h1 formula residual", h1, tol)
    out.add("2-stein with flat normal connection: sectional curvature spread", const_worst, tol)
    amb = AmbientSpace(0.0)
    S = ShapeOperatorSet(fam.GAP_PROBE)
    ts = two_stein_basis_report(amb, S, tol)
    out.add("gap probe: basis-level h1 spread", ts.basis_h1_spread, tol)
    out.add("gap probe: basis-level h2 spread", ts.basis_h2_spread, tol)
    out.add("gap probe: full quartic residual (must fail)", ts.quartic_residual, 0.1, "ge")
    out.notes.append("gap probe: basis-level pass / full quartic fail")
    return out


def _flat_two_stein_spread(amb: AmbientSpace, S: ShapeOperatorSet, tol: float) -> float:
    R = gauss_curvature(amb, S)
    if not condition_report(R, tol).flags["two_stein"]:
        return 0.0
    # constant curvature: R equals its constant-curvature part
    K = derive(R).tau / (R.n * (R.n - 1))
    return float(np.max(np.abs(R.comp - constant_curvature(R.n, K).comp)))


def suite_r6(seed: int = 0, count: int = 50) -> SuiteResult:
    out = SuiteResult("r6")
    tol = 1e-8
    rng = _rng(seed, 100)
    for kind in (23, 24, 25, 26, 27):
        we = qc = 0.0
        rank_bad = flag_bad = 0
        for k in range(count):
            inst = fam.r6_family(kind, fam.random_r6_params(kind, rng), seed=seed + k)
            rep = condition_report(inst.intrinsic, tol)
            we = max(we, rep.weakly_einstein_residual)
            qc = max(qc, fam.quartic_check(inst))
            rank_bad += curvature_operator(inst.intrinsic).rank != inst.expected_rank
            flag_bad += any(rep.flags[k2] != v for k2, v in inst.expected.items())
        out.add(f"r6_{kind}: weakly Einstein residual", we, tol)
        out.add(f"r6_{kind}: quartic residual", qc, tol)
        out.add(f"r6_{kind}: rank {fam.R6_RANKS[kind]} mismatches", rank_bad, 0)
        out.add(f"r6_{kind}: expected-flag mismatches", flag_bad, 0)
    res, ok = fam.headline_only_instance(24, dict(alpha=1, beta=1, gamma=2, p=1, q=-2))
    out.add("r6_24 headline-only p=1, q=-2: headline residual", res, 1e-12)
    out.add("r6_24 headline-only p=1, q=-2: weakly Einstein (flagged, must fail)", float(not ok), 1.0, "ge")
    out.notes.append("r6_24 product constraint alone is not sufficient: flagged instance alpha=1, beta=1, gamma=2, p=1, q=-2")
    return out


def singer_thorpe_instances(seed: int = 0, count: int = 100) -> list[tuple[str, object, bool]]:
    """Weakly Einstein 4-dimensional tensors from the Chen and r6 families, randomly rotated.

    Returns (label, tensor, is_einstein) triples.
    """
    rng = _rng(seed, 110)
    items = []
    half = count // 2
    while len(items) < half:
        d = fam.random_we_chen(rng, 0.0, n=4, p=int(rng.integers(2, 4)))
        if d["a"] == 0:
            continue
        inst = fam.chen_instance(4, d["p"], 0.0, d["a"], d["b"], d["c_list"], d["d_list"])
        items.append(("chen", inst))
    kinds = (23, 24, 25, 26, 27)
    for k in range(count - half):
        kind = kinds[k % 5]
        P = fam.random_r6_params(kind, rng)
        if kind == 23 and k % 10 == 0:
            P["sign"] = 1
        if kind == 25 and k % 10 == 2:
            P["form"] = 1
        items.append((f"r6_{kind}", fam.r6_family(kind, P, seed=seed + k)))
    out = []
    for label, inst in items:
        Q = fam.random_rotation(rng, 4)
        R = inst.intrinsic.rotated(Q)
        out.append((label, R, condition_report(R, 1e-8).flags["einstein"]))
    return out


def suite_singer_thorpe(seed: int = 0, count: int = 100) -> SuiteResult:
    out = SuiteResult("singer-thorpe")
    worst = rel = ein_worst = 0.0
    fails = n_ein = 0
    for k, (label, R, einstein) in enumerate(singer_thorpe_instances(seed, count)):
        res = singer_thorpe_search(R, seed=seed + k)
        if not res.success:
            fails += 1
        worst = max(worst, res.residual)
        e = res.entries
        rel = max(rel, abs(e["a"] ** 2 - e["a'"] ** 2), abs(e["b"] ** 2 - e["b'"] ** 2), abs(e["c"] ** 2 - e["c'"] ** 2))
        if einstein:
            n_ein += 1
            ein_worst = max(ein_worst, abs(e["a"] - e["a'"]), abs(e["b"] - e["b'"]), abs(e["c"] - e["c'"]))
    out.add(f"search failures (of {count})", fails, 0)
    out.add("max off-form residual", worst, 1e-6)
    out.add("max |a^2 - a'^2|, |b^2 - b'^2|, |c^2 - c'^2|", rel, 1e-6)
    out.add("Einstein subset size", n_ein, 1, "ge")
    out.add("Einstein subset: max |a - a'|, |b - b'|, |c - c'|", ein_worst, 1e-6)
    return out


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "berger": suite_berger,
    "product": suite_product,
    "chen-euclid": suite_chen_euclid,
    "chen-spaceform": suite_chen_spaceform,
    "hypersurface": suite_hypersurface,
    "isoparametric": suite_isoparametric,
    "chen-inequality": suite_chen_inequality,
    "two-stein": suite_two_stein,
    "r6": suite_r6,
    "singer-thorpe": suite_singer_thorpe,
}


def run_suite(suite_id: str, seed: int = 0) -> SuiteResult:
    if suite_id not in SUITES:
        raise UnknownSuite(f"unknown suite {suite_id!r}; known: {', '.join(SUITES)}")
    t0 = time.perf_counter()
    res = SUITES[suite_id](seed=seed)
    res.elapsed = time.perf_counter() - t0
    return res
