"""Command-line interface.

Subcommands:

* ``repro``  — recompute the two worked integer examples and compare every
  quantity against its known closed-form value; exit 0 iff all match.
* ``check``  — evaluate catalog entries on matrices given as JSON files.
* ``sweep``  — run seeded ensemble trials over selected entries and fold the
  per-trial reports into per-entry summaries (JSON/CSV output).
* ``list``   — print the catalog.

Exit codes: 0 pass, 1 violation or mismatch, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .ensembles import EnsembleSpec, draw, draw_arity, spec_to_json, worked_example
from .inequalities import (
    QuantityCache,
    catalog_entry,
    catalog_list,
    evaluate,
    evaluate_entries,
)
from .matcore import abs_parts, load_matrix, op_norm
from .quantities import numerical_radius, spectral_radius_psd_product
from .tolerances import TOL_CMP

__all__ = ["main", "run_repro", "run_sweep", "SweepSummary"]

_THREADS_ENV = "NUMRAD_THREADS"


# --- repro --------------------------------------------------------------------


def _value_check(name, got, expected, tol):
    got = float(got)
    return {
        "name": name,
        "got": got,
        "expected": float(expected),
        "tol": float(tol),
        "passed": bool(abs(got - float(expected)) <= float(tol)),
    }


def run_repro(overrides=None, *, grid=None, refine_tol=None, tol_cmp=None):
    """Recompute the worked examples. Returns (passed, checks, reports).

    ``overrides`` maps check names to replacement expected values (used to
    exercise the failure path of the harness itself).
    """
    overrides = dict(overrides or {})
    checks = []

    def add(name, got, expected, tol):
        if name in overrides:
            expected = overrides.pop(name)
        checks.append(_value_check(name, got, expected, tol))

    # 2x2 example: known positive parts, product spectral radius 9, and the
    # product-radius bound strictly tighter than the squared-norm bound.
    A = worked_example("example2x2")
    absA, absAstar = abs_parts(A)
    add("2x2.abs_A_deviation", np.abs(absA - np.array([[1, 1], [1, 4]])).max(), 0.0, 1e-9)
    add(
        "2x2.abs_Astar_deviation",
        np.abs(absAstar - np.array([[4, 1], [1, 1]])).max(),
        0.0,
        1e-9,
    )
    add("2x2.r_abs_product", spectral_radius_psd_product(absA, absAstar), 9.0, 1e-9)
    add("2x2.norm_A_squared", op_norm(A @ A), math.sqrt(59.0 + 10.0 * math.sqrt(34.0)), 1e-9)
    add(
        "2x2.numerical_radius",
        numerical_radius(A, grid=grid, refine_tol=refine_tol).value,
        3.5,
        1e-6,
    )
    cache2 = QuantityCache((A,), grid=grid, refine_tol=refine_tol)
    rep_main = evaluate("I-MAIN", (A,), tol_cmp=tol_cmp, cache=cache2)
    rep_kit = evaluate("I-KIT03", (A,), tol_cmp=tol_cmp, cache=cache2)
    add("2x2.bound_gap", rep_kit.rhs - rep_main.rhs, 0.14552057833116328, 1e-6)

    # 3x3 example: w = ||A||/2 although the product spectral radius is
    # nonzero, and r(|A||A*|) = ||A^2|| although w sits strictly below the
    # squared-norm bound.
    C = worked_example("example3x3")
    absC, absCstar = abs_parts(C)
    wC = numerical_radius(C, grid=grid, refine_tol=refine_tol).value
    nC = op_norm(C)
    add("3x3.numerical_radius", wC, 1.5, 1e-9)
    add("3x3.op_norm", nC, 3.0, 1e-9)
    add("3x3.half_norm_gap", wC - 0.5 * nC, 0.0, 1e-9)
    add("3x3.r_abs_product", spectral_radius_psd_product(absC, absCstar), 1.0, 1e-9)
    add("3x3.norm_A_squared", op_norm(C @ C), 1.0, 1e-9)
    rhs_sq = 0.5 * (nC + math.sqrt(op_norm(C @ C)))
    add("3x3.squared_norm_rhs", rhs_sq, 2.0, 1e-9)
    add("3x3.strict_gap", rhs_sq - wC, 0.5, 1e-6)
    rep_main3 = evaluate("I-MAIN", (C,), tol_cmp=tol_cmp)

    if overrides:
        raise ValueError(f"unknown repro check name(s): {', '.join(sorted(overrides))}")
    passed = all(c["passed"] for c in checks)
    return passed, checks, [rep_main, rep_kit, rep_main3]


def _cmd_repro(args) -> int:
    overrides = {}
    for item in args.expect or []:
        name, _, value = item.partition("=")
        if not _:
            raise ValueError(f"--expect wants NAME=VALUE, got {item!r}")
        overrides[name] = float(value)
    passed, checks, reports = run_repro(
        overrides, grid=args.grid, refine_tol=args.refine_tol, tol_cmp=args.tol_cmp
    )
    if args.json:
        payload = {
            "passed": passed,
            "checks": checks,
            "reports": [r.to_json() for r in reports],
        }
        json.dump(payload, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        for c in checks:
            status = "PASS" if c["passed"] else "FAIL"
            print(
                f"{status} {c['name']:<24} got {c['got']:.15g}  "
                f"expected {c['expected']:.15g}  tol {c['tol']:g}"
            )
        n_ok = sum(c["passed"] for c in checks)
        print(f"repro: {'PASS' if passed else 'FAIL'} ({n_ok}/{len(checks)} checks)")
    return 0 if passed else 1


# --- check --------------------------------------------------------------------


def _parse_kv_floats(items):
    out = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"expected KEY=VALUE, got {item!r}")
        out[name] = float(value)
    return out


def _report_line(rep) -> str:
    if not rep.applicable:
        reason = rep.details.get("reason", "precondition failed")
        extra = ""
        if "intertwine_residual" in rep.details:
            extra = f" (residual {rep.details['intertwine_residual']:.3e})"
        return f"{rep.inequality_id:<12} sign={rep.sign:<3} not applicable: {reason}{extra}"
    verdict = "holds" if rep.holds else "VIOLATED"
    return (
        f"{rep.inequality_id:<12} sign={rep.sign:<3} {verdict:<8} "
        f"lhs={rep.lhs:.12g} rhs={rep.rhs:.12g} slack={rep.slack:.6g}"
    )


def _cmd_check(args) -> int:
    mats = tuple(load_matrix(path) for path in args.files)
    params = _parse_kv_floats(args.param)
    if args.inequality == "all":
        ids = [e.inequality_id for e in catalog_list() if e.arity == len(mats)]
        if not ids:
            raise ValueError(f"no catalog entry takes {len(mats)} matrices")
    else:
        ids = [args.inequality]
        entry = catalog_entry(args.inequality)
        if entry.arity != len(mats):
            raise ValueError(
                f"{entry.inequality_id} expects {entry.arity} matrices, got {len(mats)}"
            )
    cache = QuantityCache(mats, grid=args.grid, refine_tol=args.refine_tol)
    reports = evaluate_entries(
        ids, mats, signs=args.sign, tol_cmp=args.tol_cmp, params=params, cache=cache
    )
    if args.json:
        json.dump([r.to_json() for r in reports], sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        for rep in reports:
            print(_report_line(rep))
    violated = sum(1 for r in reports if r.applicable and not r.holds)
    if violated and not args.json:
        print(f"{violated} applicable entr{'y' if violated == 1 else 'ies'} violated")
    return 1 if violated else 0


# --- sweep --------------------------------------------------------------------


@dataclass
class SweepSummary:
    """Aggregate of one (entry, sign) pair over a sweep: violation count,
    slack statistics over applicable trials, and for every co-swept entry of
    the same sign the fraction of co-applicable trials on which this entry's
    rhs is strictly smaller."""

    inequality_id: str
    sign: str
    trials: int
    applicable: int
    violations: int
    min_slack: float | None
    mean_slack: float | None
    max_slack: float | None
    tighter_than: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "id": self.inequality_id,
            "sign": self.sign,
            "trials": self.trials,
            "applicable": self.applicable,
            "violations": self.violations,
            "min_slack": self.min_slack,
            "mean_slack": self.mean_slack,
            "max_slack": self.max_slack,
            "tighter_than": self.tighter_than,
        }


def run_sweep(
    spec: EnsembleSpec,
    entry_ids,
    trials: int,
    *,
    tol_cmp=None,
    grid=None,
    refine_tol=None,
    threads: int = 1,
    params=None,
):
    """Run ``trials`` seeded draws, evaluating every entry (both signs).

    Returns (summaries, rows): rows are per-(trial, entry, sign) report dicts
    in deterministic trial order regardless of ``threads``.
    """
    arity = draw_arity(spec)
    for iid in entry_ids:
        entry = catalog_entry(iid)
        if entry.arity != arity:
            raise ValueError(
                f"{entry.inequality_id} expects {entry.arity} matrices but family "
                f"{spec.family!r} yields {arity} per trial"
            )

    def one(t: int):
        drawn = draw(spec, t)
        mats = drawn if isinstance(drawn, tuple) else (drawn,)
        cache = QuantityCache(mats, grid=grid, refine_tol=refine_tol)
        return evaluate_entries(entry_ids, mats, tol_cmp=tol_cmp, params=params, cache=cache)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            per_trial = list(ex.map(one, range(trials)))
    else:
        per_trial = [one(t) for t in range(trials)]

    keys = [(r.inequality_id, r.sign) for r in per_trial[0]] if per_trial else []
    rows = []
    for t, reps in enumerate(per_trial):
        for rep in reps:
            row = {"trial": t}
            row.update(rep.to_json())
            rows.append(row)

    summaries = []
    by_key = {
        key: [reps[i] for reps in per_trial] for i, key in enumerate(keys)
    }
    for key in keys:
        mine = by_key[key]
        slacks = [r.slack for r in mine if r.applicable]
        violations = sum(1 for r in mine if r.applicable and not r.holds)
        tighter = {}
        for other in keys:
            if other == key or other[1] != key[1]:
                continue
            theirs = by_key[other]
            both = [
                (a.rhs, b.rhs)
                for a, b in zip(mine, theirs)
                if a.applicable and b.applicable
            ]
            if both:
                tighter[other[0]] = sum(1 for a, b in both if a < b) / len(both)
        summaries.append(
            SweepSummary(
                inequality_id=key[0],
                sign=key[1],
                trials=trials,
                applicable=len(slacks),
                violations=violations,
                min_slack=min(slacks) if slacks else None,
                mean_slack=(sum(slacks) / len(slacks)) if slacks else None,
                max_slack=max(slacks) if slacks else None,
                tighter_than=tighter,
            )
        )
    return summaries, rows


_CSV_COLUMNS = ("id", "sign", "trial", "lhs", "rhs", "slack", "holds", "applicable")


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_rows_csv(path, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(_CSV_COLUMNS)
        for row in rows:
            writer.writerow([_csv_cell(row.get(col)) for col in _CSV_COLUMNS])


def _sweep_payload(spec, entry_ids, trials, tol_cmp, summaries, rows) -> dict:
    return {
        "spec": spec_to_json(spec),
        "trials": trials,
        "tol_cmp": TOL_CMP if tol_cmp is None else tol_cmp,
        "entries": list(entry_ids),
        "summaries": [s.to_json() for s in summaries],
        "reports": rows,
    }


def _parse_family_params(items):
    out = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"expected KEY=VALUE, got {item!r}")
        try:
            out[name] = json.loads(value)
        except json.JSONDecodeError:
            out[name] = value
    return out


def _cmd_sweep(args) -> int:
    fam_params = _parse_family_params(args.family_param)
    if args.count is not None:
        fam_params["count"] = args.count
    spec = EnsembleSpec(family=args.family, n=args.n, seed=args.seed, params=fam_params)
    if args.entries in (None, "all"):
        entry_ids = [e.inequality_id for e in catalog_list() if e.arity == draw_arity(spec)]
        if not entry_ids:
            raise ValueError(
                f"no catalog entry matches arity {draw_arity(spec)} of family {args.family!r}"
            )
    else:
        entry_ids = [x.strip() for x in args.entries.split(",") if x.strip()]
    params = _parse_kv_floats(args.param)
    threads = args.threads if args.threads is not None else int(os.environ.get(_THREADS_ENV, "1"))
    summaries, rows = run_sweep(
        spec,
        entry_ids,
        args.trials,
        tol_cmp=args.tol_cmp,
        grid=args.grid,
        refine_tol=args.refine_tol,
        threads=max(1, threads),
        params=params,
    )
    if args.out:
        if args.out.endswith(".json"):
            payload = _sweep_payload(spec, entry_ids, args.trials, args.tol_cmp, summaries, rows)
            with open(args.out, "w", encoding="utf-8") as fh:
                json.dump(payload, fh, indent=1)
                fh.write("\n")
        elif args.out.endswith(".csv"):
            _write_rows_csv(args.out, rows)
        else:
            raise ValueError(f"--out must end in .json or .csv, got {args.out!r}")
    total_violations = 0
    for s in summaries:
        total_violations += s.violations
        slack = (
            f"slack[min/mean/max]={s.min_slack:.6g}/{s.mean_slack:.6g}/{s.max_slack:.6g}"
            if s.applicable
            else "no applicable trials"
        )
        tighter = "".join(
            f" tighter_than[{k}]={v:.3f}" for k, v in sorted(s.tighter_than.items())
        )
        print(
            f"{s.inequality_id:<12} sign={s.sign:<3} trials={s.trials} "
            f"applicable={s.applicable} violations={s.violations} {slack}{tighter}"
        )
    print(f"sweep: {'PASS' if total_violations == 0 else 'FAIL'} ({total_violations} violations)")
    return 1 if total_violations else 0


# --- list ---------------------------------------------------------------------


def _cmd_list(args) -> int:
    for e in catalog_list():
        signs = "+/-" if e.signed else "n/a"
        pre = e.precondition if e.precondition else "-"
        print(f"{e.inequality_id:<12} arity={e.arity} signs={signs:<4} pre: {pre}")
        print(f"{'':<12} {e.statement}")
    return 0


# --- parser -------------------------------------------------------------------


def _add_tolerance_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol-cmp", type=float, default=None, help="comparison tolerance (default 1e-8)")
    p.add_argument("--grid", type=int, default=None, help="angle-grid size (default 1024)")
    p.add_argument(
        "--refine-tol", type=float, default=None, help="angle refinement width (default 1e-12)"
    )


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="numrad",
        description="Numerical-radius toolkit: worked-example reproduction, "
        "inequality checks and verification sweeps.",
    )
    sub = p.add_subparsers(dest="cmd", required=True)

    pr = sub.add_parser("repro", help="recompute the worked examples against known values")
    pr.add_argument("--json", action="store_true", help="emit a JSON report")
    pr.add_argument(
        "--expect",
        action="append",
        metavar="NAME=VALUE",
        help="override an expected value (testing aid; repeatable)",
    )
    _add_tolerance_flags(pr)
    pr.set_defaults(func=_cmd_repro)

    pc = sub.add_parser("check", help="evaluate catalog entries on matrix JSON files")
    pc.add_argument("files", nargs="+", help="matrix files ({'n', 're', 'im'} JSON)")
    pc.add_argument("--inequality", default="all", help="catalog id or 'all' (default)")
    pc.add_argument("--sign", choices=["+", "-", "both"], default="both")
    pc.add_argument(
        "--param", action="append", metavar="KEY=VALUE", help="entry parameter, e.g. s=0.25"
    )
    pc.add_argument("--json", action="store_true", help="emit JSON reports")
    _add_tolerance_flags(pc)
    pc.set_defaults(func=_cmd_check)

    ps = sub.add_parser("sweep", help="run seeded ensemble trials over catalog entries")
    ps.add_argument("--family", required=True)
    ps.add_argument("--n", required=True, type=int)
    ps.add_argument("--trials", required=True, type=int)
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--entries", default=None, help="comma-separated ids (default: all matching)")
    ps.add_argument("--count", type=int, default=None, help="i.i.d. draws per trial (generic families)")
    ps.add_argument(
        "--family-param",
        action="append",
        metavar="KEY=VALUE",
        help="family parameter (JSON value), e.g. psd=true or alpha=3",
    )
    ps.add_argument("--param", action="append", metavar="KEY=VALUE", help="entry parameter")
    ps.add_argument("--out", default=None, help="write reports to PATH.json or PATH.csv")
    ps.add_argument(
        "--threads",
        type=int,
        default=None,
        help=f"worker threads (default ${_THREADS_ENV} or 1); output is thread-count invariant",
    )
    _add_tolerance_flags(ps)
    ps.set_defaults(func=_cmd_sweep)

    pl = sub.add_parser("list", help="print the inequality catalog")
    pl.set_defaults(func=_cmd_list)
    return p


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
