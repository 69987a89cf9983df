"""Scenario runner.

Reads a scenario JSON file, runs its commands in order, and writes a single
JSON report.  Exit status: 0 when every command passes, 1 when any command
reports failure, 2 on scenario validation or parse errors.  Reports are
deterministic byte for byte given the same scenario and flags; wall-clock
timings only appear behind --timings because they would break that.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .category import identity_arrow, central_factor, cstar_residuals, pair_swap_family
from .commutant import (
    FinPremonCat,
    commutant,
    double_commutant,
    endo_algebra,
    is_von_neumann,
    span_category,
)
from .causal import check_causality, check_isotony
from .crossed import CrossedContext, covariance_residual, crossed_product
from .linalg import identity_factor_defect
from .scenario import Scenario, ScenarioError, load_scenario

__all__ = ["main", "run_scenario"]

_DEFAULT_TOL = 1e-9


def _matrix_json(m) -> list:
    return [[[float(v.real), float(v.imag)] for v in row] for row in m]


def _dims_json(cat: FinPremonCat) -> list:
    return [{"dom": d.name, "cod": c.name, "dim": n} for d, c, n in cat.dims()]


def _bases_json(cat: FinPremonCat) -> list:
    out = []
    for d, c in cat.universe.pairs():
        sub = cat.homs[(d, c)]
        out.append(
            {
                "dom": d.name,
                "cod": c.name,
                "matrices": [_matrix_json(f.mat) for f in sub.basis],
            }
        )
    return out


def _attach_cat(entry: dict, cat: FinPremonCat, emit: str):
    if emit in ("dims", "full"):
        entry["dims"] = _dims_json(cat)
    if emit == "full":
        entry["bases"] = _bases_json(cat)


def _close_flag(sc: Scenario) -> bool:
    return sc.dagger_close


def _cmd_centre(sc: Scenario, tol: float, emit: str, workers: int) -> dict:
    family = pair_swap_family(sc.ctx)
    cat = commutant(family, sc.universe, tol, workers=workers)
    h = sc.ctx.hdim
    defect = 0.0
    ok = True
    for f in cat.all_arrows():
        defect = max(defect, identity_factor_defect(f.mat, f.dom.dim, f.cod.dim, h))
        if central_factor(f, tol) is None:
            ok = False
    entry = {"command": "centre", "pass": ok, "max_factor_defect": defect}
    _attach_cat(entry, cat, emit)
    return entry


def _cmd_commutant(sc: Scenario, tol: float, emit: str, workers: int) -> dict:
    cat = commutant(
        sc.generators, sc.universe, tol, auto_close=_close_flag(sc), workers=workers
    )
    entry = {"command": "commutant", "pass": True}
    _attach_cat(entry, cat, emit)
    return entry


def _cmd_double_commutant(sc: Scenario, tol: float, emit: str, workers: int) -> dict:
    cat = double_commutant(
        sc.generators, sc.universe, tol, auto_close=_close_flag(sc), workers=workers
    )
    entry = {"command": "double-commutant", "pass": True}
    _attach_cat(entry, cat, emit)
    return entry


def _cmd_vn_check(sc: Scenario, tol: float, emit: str, workers: int) -> dict:
    cat = span_category(sc.generators, sc.universe, tol)
    report = is_von_neumann(cat, tol, workers=workers)
    entry = {
        "command": "vn-check",
        "pass": report.passed,
        "failures": [
            {"dom": d.name, "cod": c.name, "dim": a, "closure_dim": b}
            for d, c, a, b in report.failures
        ],
    }
    _attach_cat(entry, cat, emit)
    return entry


def _cmd_endo_algebra(sc: Scenario, tol: float, emit: str, workers: int) -> dict:
    cat = double_commutant(
        sc.generators, sc.universe, tol, auto_close=_close_flag(sc), workers=workers
    )
    basis = endo_algebra(cat)
    entry = {"command": "endo-algebra", "pass": True, "dim": len(basis)}
    if emit == "full":
        entry["basis"] = [_matrix_json(m) for m in basis]
    return entry


def _cmd_cstar_check(sc: Scenario, tol: float, emit: str, workers: int) -> dict:
    gens = sc.generators
    pairs = [(s, t) for s in gens for t in gens if t.cod == s.dom]
    if not pairs:
        pairs = [(s, identity_arrow(s.dom, sc.ctx)) for s in gens]
    whisk = max(sc.universe.objects, key=lambda o: o.dim)
    keys = ("submult", "cstar_id", "whisker_left_norm", "whisker_right_norm")
    worst = {k: 0.0 for k in keys}
    scale = 1.0
    for s, t in pairs:
        res = cstar_residuals(s, t, whisk)
        for k in keys:
            worst[k] = max(worst[k], res[k])
        scale = max(scale, s.norm() * t.norm(), s.norm() ** 2)
    ok = all(worst[k] <= tol * scale for k in keys)
    return {"command": "cstar-check", "pass": ok, "max_residuals": worst}


def _cmd_crossed_product(sc: Scenario, tol: float, emit: str, workers: int) -> dict:
    cat = crossed_product(
        sc.generators,
        sc.rep,
        sc.universe,
        tol,
        auto_close=_close_flag(sc),
        workers=workers,
    )
    entry = {
        "command": "crossed-product",
        "pass": True,
        "endo_dim": len(endo_algebra(cat)),
    }
    _attach_cat(entry, cat, emit)
    return entry


def _cmd_covariance(sc: Scenario, tol: float, emit: str, workers: int) -> dict:
    cc = CrossedContext(sc.ctx, sc.group)
    worst = 0.0
    scale = 1.0
    for f in sc.generators:
        scale = max(scale, f.norm())
        for g in range(sc.group.order):
            worst = max(worst, covariance_residual(g, f, sc.rep, cc))
    return {
        "command": "covariance",
        "pass": worst <= tol * scale,
        "max_residual": worst,
    }


def _cone_json(cone) -> list:
    return [[cone.lo.t, cone.lo.x], [cone.hi.t, cone.hi.x]]


def _cmd_causality(sc: Scenario, tol: float, emit: str, workers: int) -> dict:
    iso = check_isotony(sc.net, tol)
    cau = check_causality(sc.net, tol)
    worst = None
    if cau.worst is not None:
        ca, cb, r = cau.worst
        worst = {"cone_a": _cone_json(ca), "cone_b": _cone_json(cb), "residual": r}
    return {
        "command": "causality",
        "pass": iso.passed and cau.passed,
        "isotony": {
            "pass": iso.passed,
            "violations": [
                {
                    "inner": _cone_json(inner),
                    "outer": _cone_json(outer),
                    "dom": dom,
                    "cod": cod,
                }
                for inner, outer, dom, cod in iso.violations
            ],
        },
        "causality": {
            "pass": cau.passed,
            "max_residual": 0.0 if cau.worst is None else cau.worst[2],
            "worst": worst,
            "violations": len(cau.violations),
        },
    }


_RUNNERS = {
    "centre": _cmd_centre,
    "commutant": _cmd_commutant,
    "double-commutant": _cmd_double_commutant,
    "vn-check": _cmd_vn_check,
    "endo-algebra": _cmd_endo_algebra,
    "cstar-check": _cmd_cstar_check,
    "crossed-product": _cmd_crossed_product,
    "covariance": _cmd_covariance,
    "causality": _cmd_causality,
}


def run_scenario(
    input_path: str,
    output_path: str | None = None,
    tol: float | None = None,
    emit_bases: str = "dims",
    threads: int = 1,
    timings: bool = False,
) -> int:
    """Run a scenario file and write the report; returns the exit status."""
    try:
        sc = load_scenario(input_path)
        effective_tol = tol if tol is not None else (sc.tol if sc.tol is not None else _DEFAULT_TOL)
        workers = threads if threads > 0 else (os.cpu_count() or 1)

        results = []
        for cmd in sc.commands:
            start = time.perf_counter()
            try:
                entry = _RUNNERS[cmd](sc, effective_tol, emit_bases, workers)
            except ValueError as e:
                # engine-level input rejection (e.g. generators not dagger-closed)
                raise ScenarioError(f"$.commands[{sc.commands.index(cmd)}]", str(e)) from None
            if timings:
                entry["wall_ms"] = round((time.perf_counter() - start) * 1e3, 3)
            results.append(entry)
    except ScenarioError as e:
        print(f"scenario error: {e}", file=sys.stderr)
        return 2

    report = {
        "schema": 1,
        "tol": effective_tol,
        "scenario": sc.normalized,
        "results": results,
        "pass": all(r["pass"] for r in results),
    }
    text = json.dumps(report, indent=2) + "\n"
    if output_path is None:
        sys.stdout.write(text)
    else:
        with open(output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0 if report["pass"] else 1


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="vncat",
        description="Run a scenario file through the hidden-factor category toolkit.",
    )
    ap.add_argument("--input", required=True, help="scenario JSON file")
    ap.add_argument("--output", default=None, help="report path (default: stdout)")
    ap.add_argument("--tol", type=float, default=None, help="override the scenario tolerance")
    ap.add_argument(
        "--emit-bases",
        choices=("none", "dims", "full"),
        default="dims",
        help="how much hom-space detail reports carry (default: dims)",
    )
    ap.add_argument(
        "--threads",
        type=int,
        default=1,
        help="hom-pair solver threads; 0 picks the cpu count (default: 1)",
    )
    ap.add_argument(
        "--timings",
        action="store_true",
        help="add wall_ms per command (reports stop being byte-reproducible)",
    )
    args = ap.parse_args(argv)
    if args.tol is not None and not (0 < args.tol < 1):
        ap.error("--tol must be strictly between 0 and 1")
    if args.threads < 0:
        ap.error("--threads must be >= 0")
    return run_scenario(
        args.input,
        output_path=args.output,
        tol=args.tol,
        emit_bases=args.emit_bases,
        threads=args.threads,
        timings=args.timings,
    )


if __name__ == "__main__":
    sys.exit(main())
