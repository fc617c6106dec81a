"""Command line front end.

Exit codes: 0 when every requested condition holds, 1 when one fails (or a
search finds no solution), 2 on malformed input, 3 when an optimiser fails to
converge.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict
from pathlib import Path
from typing import Any, Sequence

import jsonschema
import numpy as np

from . import families as fam
from .conditions import chen_report, condition_report, two_stein_basis_report
from .curvature import curvature_operator
from .errors import CurvLabError, InputError, NoSolution, NonConvergence, NotWeaklyEinstein, SchemaError
from .scenario import Scenario, dumps, family_scenario, load_scenario
from .solver import inf_sectional, refine_family_params
from .submanifold import normal_flatness
from .suites import SUITES, run_suite

CONDITIONS = ("einstein", "weakly_einstein", "semisymmetric", "two_stein", "chen_equality", "expected")

SEARCH_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "family_id": {"enum": list(fam.FAMILY_IDS)},
        "params": {"type": "object", "additionalProperties": {"type": "number"}},
        "target": {"enum": ["weakly_einstein", "einstein"]},
        "seed": {"type": "integer"},
    },
    "required": ["family_id", "params"],
    "additionalProperties": False,
}


def _plane(pm) -> dict | None:
    if pm is None:
        return None
    d = asdict(pm)
    d["u"], d["v"] = pm.u.tolist(), pm.v.tolist()
    return d


def build_report(scn: Scenario, restarts: int = 64, seed: int | None = None, tol: float | None = None) -> dict:
    """Evaluate every applicable condition for a scenario."""
    tol = scn.tolerance if tol is None else tol
    seed = scn.seed if seed is None else seed
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    R = scn.tensor()
    rep = condition_report(R, tol)
    timings["conditions"] = time.perf_counter() - t0
    out: dict[str, Any] = {
        "scenario": scn.to_dict(),
        "conditions": {
            "einstein_residual": rep.einstein_residual,
            "weakly_einstein_residual": rep.weakly_einstein_residual,
            "semisym_residual": rep.semisym_residual,
            "tol": rep.tol,
            "flags": dict(rep.flags),
        },
        "two_stein": asdict(rep.two_stein),
        "curvature_operator_rank": curvature_operator(R).rank,
    }
    ext = scn.shape()
    if ext is not None:
        amb, S = ext
        t0 = time.perf_counter()
        cr = chen_report(amb, S, restarts=restarts, seed=seed, tol=tol)
        out["chen"] = {"lhs": cr.lhs, "rhs": cr.rhs, "gap": cr.gap, "equality": cr.equality,
                       "inf_plane": _plane(cr.inf_plane)}
        out["conditions"]["flags"]["chen_equality"] = cr.equality
        timings["chen"] = time.perf_counter() - t0
        if normal_flatness(S, tol)[0]:
            out["two_stein"] = asdict(two_stein_basis_report(amb, S, tol))
    inst = scn.family()
    if inst is not None:
        mism = {k: v for k, v in inst.expected.items() if rep.flags.get(k) != v}
        out["expected"] = dict(inst.expected)
        out["conditions"]["flags"]["expected"] = not mism
        if inst.family_id == "chen":
            P = inst.params
            p = int(P["p"])
            cl, dl = fam._chen_lists(P, p)
            try:
                v = fam.chen_branch(int(P["n"]), p, P["ambient_c"], P["a"], P["b"], cl, dl, tol=max(tol, 1e-8))
                out["branch"] = asdict(v)
            except NotWeaklyEinstein as exc:
                out["branch"] = {"setting": None, "branch": "none", "residuals": {"weakly_einstein": exc.residual},
                                 "consistent": False}
        if inst.family_id.startswith("r6_"):
            out["quartic_residual"] = fam.quartic_check(inst)
    out["timings"] = timings
    return out


def _require(arg: str | None) -> list[str]:
    if not arg:
        return []
    names = [a.strip().replace("-", "_") for a in arg.split(",") if a.strip()]
    bad = [n for n in names if n not in CONDITIONS]
    if bad:
        raise InputError(f"unknown condition(s) {bad}; known: {', '.join(CONDITIONS)}")
    return names


def _exit_for(report: dict, required: Sequence[str]) -> int:
    flags = report["conditions"]["flags"]
    for name in required:
        if name not in flags:
            raise InputError(f"condition {name!r} does not apply to this scenario")
        if not flags[name]:
            return 1
    return 0


def _text(report: dict) -> str:
    c = report["conditions"]
    lines = [
        f"einstein_residual         {c['einstein_residual']:.6e}",
        f"weakly_einstein_residual  {c['weakly_einstein_residual']:.6e}",
        f"semisym_residual          {c['semisym_residual']:.6e}",
    ]
    ts = report["two_stein"]
    lines += [
        f"two_stein.f1              {ts['f1']:.6e}",
        f"two_stein.f2              {ts['f2']:.6e}",
        f"two_stein.trace_residual  {ts['trace_residual']:.6e}",
        f"two_stein.quartic_residual {ts['quartic_residual']:.6e}",
    ]
    for key in ("basis_h1_spread", "basis_h2_spread", "checkR_basis_residual", "h2_formula_residual",
                "h1_formula_residual"):
        if ts.get(key) is not None:
            lines.append(f"two_stein.{key} {ts[key]:.6e}")
    lines.append(f"curvature_operator_rank   {report['curvature_operator_rank']}")
    if "chen" in report:
        ch = report["chen"]
        lines.append(f"chen lhs {ch['lhs']:.6e} rhs {ch['rhs']:.6e} gap {ch['gap']:.6e}")
    if "branch" in report:
        b = report["branch"]
        lines.append(f"branch {b['setting']} {b['branch']} consistent={b['consistent']}")
        for k, v in b["residuals"].items():
            lines.append(f"branch.{k} {v:.6e}")
    if "quartic_residual" in report:
        lines.append(f"quartic_residual {report['quartic_residual']:.6e}")
    lines.append("flags: " + ", ".join(f"{k}={'true' if v else 'false'}" for k, v in c["flags"].items()))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _check_one(path: Path, args) -> tuple[int, dict | str]:
    try:
        scn = load_scenario(path)
        rep = build_report(scn, args.restarts, args.seed, args.tol)
        return _exit_for(rep, _require(args.require)), rep
    except InputError as exc:
        return 2, f"input error: {exc}"
    except NonConvergence as exc:
        return 3, f"no convergence: {exc}"
    except CurvLabError as exc:
        return 1, f"error: {exc}"


def cmd_check(args) -> int:
    _require(args.require)
    target = Path(args.path)
    paths = sorted(target.glob("*.json")) if target.is_dir() else [target]
    if target.is_dir() and not paths:
        raise InputError(f"no scenario files in {target}")
    with ThreadPoolExecutor() as pool:
        results = list(pool.map(lambda p: _check_one(p, args), paths))
    code = max(c for c, _ in results)
    if args.json:
        docs = [{"path": str(p), "exit": c, **({"report": r} if isinstance(r, dict) else {"error": r})}
                for p, (c, r) in zip(paths, results)]
        print(dumps(docs if target.is_dir() else docs[0]))
    else:
        for p, (c, r) in zip(paths, results):
            if target.is_dir():
                print(f"== {p} (exit {c})")
            print(_text(r) if isinstance(r, dict) else r)
    return code


def cmd_infk(args) -> int:
    scn = load_scenario(args.path)
    R = scn.tensor()
    seed = scn.seed if args.seed is None else args.seed
    pm = inf_sectional(R, restarts=args.restarts, seed=seed)
    doc = _plane(pm)
    if args.json:
        print(dumps(doc))
    else:
        print(f"inf K = {pm.value:.12g}")
        print("u = " + " ".join(f"{x:.12g}" for x in pm.u))
        print("v = " + " ".join(f"{x:.12g}" for x in pm.v))
        print(f"restarts {pm.restarts_used}, converged {pm.converged}, spread {pm.spread}")
    return 0


def cmd_verify(args) -> int:
    res = run_suite(args.suite, seed=args.seed or 0)
    if args.json:
        print(dumps(res.to_dict()))
    else:
        for c in res.cases:
            print(c.line())
        for n in res.notes:
            print(f"note: {n}")
        print(f"{res.suite_id}: {'PASS' if res.passed else 'FAIL'} ({res.elapsed:.2f}s)")
    return 0 if res.passed else 1


def solve_product(params: dict, target: str, seed: int) -> fam.FamilyInstance:
    """Find ``c2`` making a product of space forms weakly Einstein (or Einstein)."""
    n1, c1, n2 = int(params["n1"]), float(params["c1"]), int(params["n2"])
    rng = np.random.default_rng(seed)
    x0 = [float(rng.uniform(0.5, 1.5) * rng.choice([-1, 1]))]
    if target == "einstein":
        def fun(x):
            return np.array([(n1 - 1) * c1 - (n2 - 1) * x[0]])
    else:
        def fun(x):
            return np.array([c1**2 * (n1 - 1) - x[0] ** 2 * (n2 - 1)])
    (c2,) = refine_family_params(fun, x0)
    return fam.product_space_form(n1, c1, n2, float(c2))


def cmd_search(args) -> int:
    try:
        doc = json.loads(Path(args.path).read_text(encoding="utf-8"))
        jsonschema.validate(doc, SEARCH_SCHEMA)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"{args.path}: {exc}") from None
    except jsonschema.ValidationError as exc:
        raise SchemaError(f"invalid search spec: {exc.message}") from None
    seed = int(doc.get("seed", 0)) if args.seed is None else args.seed
    fid, params = doc["family_id"], doc["params"]
    if fid == "product" and "c2" not in params:
        inst = solve_product(params, doc.get("target", "weakly_einstein"), seed)
    else:
        inst = fam.build_family(fid, params, seed)
    tol = args.tol or 1e-9
    scn_doc = family_scenario(inst, seed, tol)
    report = build_report(Scenario.from_dict(scn_doc), args.restarts, seed, tol)
    target = doc.get("target", "weakly_einstein")
    ok = report["conditions"]["flags"][target]
    if args.out:
        Path(args.out).write_text(dumps(scn_doc) + "\n", encoding="utf-8")
    if args.json:
        print(dumps({"scenario": scn_doc, "report": report, "certified": ok}))
    else:
        print("solved parameters: " + ", ".join(f"{k}={v!r}" for k, v in scn_doc["family"]["params"].items()))
        print(_text(report))
        print(f"certified {target}: {ok}")
    return 0 if ok else 1


def _kv(items: Sequence[str]) -> dict[str, float | int]:
    out: dict[str, float | int] = {}
    for item in items:
        key, sep, val = item.partition("=")
        if not sep:
            raise InputError(f"expected key=value, got {item!r}")
        try:
            out[key] = int(val) if val.lstrip("+-").isdigit() else float(val)
        except ValueError:
            raise InputError(f"parameter {key!r} is not a number: {val!r}") from None
    return out


def cmd_families(args) -> int:
    seed = args.seed or 0
    inst = fam.build_family(args.family_id, _kv(args.params), seed)
    doc = family_scenario(inst, seed, args.tol or 1e-9)
    print(dumps(doc))
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="tolerance (default: scenario value or 1e-9)")
    common.add_argument("--seed", type=int, default=None, help="random seed (default: scenario value or 0)")
    common.add_argument("--restarts", type=int, default=64, help="restarts for the inf K search")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--require", default=None, help="comma-separated conditions that must hold")

    ap = argparse.ArgumentParser(prog="curvlab", description=__doc__.splitlines()[0], parents=[common])
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check", parents=[common], help="evaluate a scenario file or a directory of them")
    p.add_argument("path")
    p.set_defaults(func=cmd_check)
    p = sub.add_parser("infk", parents=[common], help="infimum of sectional curvature")
    p.add_argument("path")
    p.set_defaults(func=cmd_infk)
    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", help=", ".join(SUITES))
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("search", parents=[common], help="solve a family's dependent parameters")
    p.add_argument("path")
    p.add_argument("--out", default=None, help="write the solved scenario here")
    p.set_defaults(func=cmd_search)
    p = sub.add_parser("families", parents=[common], help="family generators")
    fsub = p.add_subparsers(dest="action", required=True)
    e = fsub.add_parser("emit", parents=[common], help="print a family scenario")
    e.add_argument("family_id", choices=fam.FAMILY_IDS)
    e.add_argument("params", nargs="*", help="key=value pairs")
    e.set_defaults(func=cmd_families)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except NonConvergence as exc:
        print(f"no convergence: {exc}", file=sys.stderr)
        return 3
    except NoSolution as exc:
        print(f"no solution: {exc}", file=sys.stderr)
        return 1
    except CurvLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
