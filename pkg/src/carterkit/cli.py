"""Command-line front end.

Exit codes: 0 for a definite answer (including "no Carter subgroup"), 1 for
usage or parse errors, 2 when an engine capacity or budget limit is hit.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from contextlib import contextmanager
from typing import Any

from .carter import (brute_force_carter, carter_find, check_condition_E, nilpotent_subgroups_enum,
                     verify_carter)
from .errors import CapacityError, CarterKitError, SpecSyntaxError
from .grpspec import BuiltGroup, build, build_paper_example, parse_spec, render
from .homs import quotient_group
from .inducedaut import Section, induced_aut
from .series import ENUM_BUDGET, chief_series
from .subgroups import is_nilpotent, normalizer, p_part, sylow_subgroup

SCHEMA = 1
COMMANDS = ["carter", "exists", "brute", "chief-series", "condition-e", "verify-paper-example"]


class _Timer:
    def __init__(self) -> None:
        self.phases: dict[str, float] = {}
        self.current = "setup"

    @contextmanager
    def phase(self, name: str):
        self.current = name
        t = time.perf_counter()
        try:
            yield
        finally:
            self.phases[name] = round(self.phases.get(name, 0.0) + time.perf_counter() - t, 6)


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="carterkit", description="Carter subgroups of permutation groups")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        if name != "verify-paper-example":
            src = p.add_mutually_exclusive_group(required=True)
            src.add_argument("--spec", metavar="FILE", help="construction file")
            src.add_argument("--expr", metavar="STRING", help="construction text")
            p.add_argument("--series-hints", metavar="NAMES",
                           help="comma-separated named normal subgroups (default: all recorded hints)")
        p.add_argument("--json", action="store_true", help="emit one JSON document")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--budget", type=int, default=ENUM_BUDGET, help="element enumeration budget")
        p.add_argument("--threads", type=int, default=0, help="accepted for compatibility; runs are sequential")
    return ap


def _hints(bg: BuiltGroup, names: str | None) -> list:
    if names is None:
        return bg.hints()
    out = []
    for n in [s.strip() for s in names.split(",") if s.strip()]:
        if n not in bg.named_subgroups:
            raise SpecSyntaxError(f"unknown named subgroup {n!r}; known: {sorted(bg.named_subgroups)}", 0, 0)
        H = bg.named_subgroups[n]
        if not H.is_normal_in(bg.group):
            raise SpecSyntaxError(f"hint {n!r} is not normal", 0, 0)
        out.append(H)
    return out


def _gens(H) -> list[str]:
    return [g.cycle_string() for g in H.generators]


# --- subcommands ---------------------------------------------------------------------

def _cmd_carter(bg, args, timer) -> dict:
    with timer.phase("carter"):
        out = carter_find(bg.group, _hints(bg, args.series_hints), args.budget, args.seed)
    return out.to_dict()


def _cmd_exists(bg, args, timer) -> dict:
    d = _cmd_carter(bg, args, timer)
    return {"status": d["status"]}


def _cmd_brute(bg, args, timer) -> dict:
    with timer.phase("enumeration"):
        en = nilpotent_subgroups_enum(bg.group, args.budget)
    carter = [c for c in en.classes if c.self_normalizing]
    return {
        "nilpotent_class_orders": en.orders(),
        "carter_classes": [{"order": c.order, "class_size": c.class_size, "generators": _gens(c.group)}
                           for c in carter],
    }


def _cmd_chief(bg, args, timer) -> dict:
    with timer.phase("chief_series"):
        cs = chief_series(bg.group, _hints(bg, args.series_hints), args.budget, args.seed)
    return cs.to_dict()


def _cmd_condition_e(bg, args, timer) -> dict:
    with timer.phase("chief_series"):
        cs = chief_series(bg.group, _hints(bg, args.series_hints), args.budget, args.seed)
    with timer.phase("condition_e"):
        rep = check_condition_E(bg.group, cs, args.budget, args.seed)
    return {"chief_series": cs.to_dict(), "condition_e": rep.to_dict()}


def verify_paper_example_script(budget: int = ENUM_BUDGET, seed: int = 0, timer: _Timer | None = None) -> dict:
    """Statements 1-4 for the degree-56 counterexample; each with PASS/FAIL and data."""
    timer = timer or _Timer()
    with timer.phase("build"):
        bg = build_paper_example()
    G, N, L = bg.group, bg.named_subgroups, bg.extras["L"]
    GM, H = N["GcapM"], N["H"]
    triv = G.subgroup([])
    statements = []

    with timer.phase("statement1"):
        factors = []
        for name, sec in [("G/GcapM", Section(G, G, GM)), ("GcapM/H", Section(G, GM, H)),
                          ("T1", Section(G, N["T1"], triv)), ("T2", Section(G, N["T2"], triv))]:
            res = induced_aut(G, sec, seed)
            A = res.aut_group
            row: dict[str, Any] = {"factor": name, "aut_order": A.order(), "identity_check": res.check()}
            if sec.B.is_trivial():
                P = sylow_subgroup(A, 3, seed)
                row["equals_L"] = A.equals(L)
                row["sylow3_order"] = P.order()
                row["carter_is_sylow3"] = verify_carter(A, P).ok
                row["ok"] = row["equals_L"] and A.order() == 29484 and row["carter_is_sylow3"] and row["identity_check"]
            else:
                row["ok"] = row["identity_check"] and carter_find(A, budget=budget, seed=seed).exists
            factors.append(row)
        PL = sylow_subgroup(L, 3, seed)
        l_ok = PL.order() == 81 and normalizer(L, PL).order() == 81
        statements.append({"statement": 1, "factors": factors, "L_order": L.order(),
                           "L_sylow3_self_normalizing": l_ok,
                           "pass": l_ok and all(r["ok"] for r in factors)})

    with timer.phase("statement2"):
        out = carter_find(GM, [H], budget, seed)
        sub_ok = out.exists and out.subgroup.order() == p_part(GM.order(), 3) == 2187
        statements.append({"statement": 2, "outcome": out.to_dict(), "is_sylow3": sub_ok,
                           "pass": bool(sub_ok and out.certificate and out.certificate.ok)})

    with timer.phase("statement3"):
        q = quotient_group(G, GM, seed=seed)
        Q = q.image
        statements.append({"statement": 3, "quotient_order": Q.order(), "nilpotent": is_nilpotent(Q),
                           "pass": Q.order() == 2 and is_nilpotent(Q)})

    with timer.phase("statement4"):
        cs = chief_series(G, [GM, H], budget, seed)
        rep = check_condition_E(G, cs, budget, seed)
        fail = rep.failure
        brute = brute_force_carter(fail.aut_group, budget) if fail is not None else None
        qh = quotient_group(G, H, seed=seed).image
        qh_classes = brute_force_carter(qh, budget)
        overall = carter_find(G, [GM, H], budget, seed)
        w = overall.witness
        ok4 = (not rep.satisfied and fail is not None and fail.label == "PSL(2,27)" and fail.aut_order == 9828
               and brute == [] and qh.order() == 6 and not qh.is_abelian()
               and [c.order() for c in qh_classes] == [2] and overall.status == "not_exists"
               and w is not None and w.group.order() == 9828)
        statements.append({"statement": 4, "chief_factor_orders": cs.factor_orders(),
                           "condition_e": rep.to_dict(), "witness_brute_force_carter_classes": len(brute or []),
                           "G_mod_H_order": qh.order(), "G_mod_H_abelian": qh.is_abelian(),
                           "G_mod_H_carter_orders": [c.order() for c in qh_classes],
                           "outcome": overall.to_dict(), "pass": ok4})

    return {"group_order": G.order(), "degree": G.degree, "statements": statements,
            "outcome": overall.status, "all_pass": all(s["pass"] for s in statements)}


HANDLERS = {"carter": _cmd_carter, "exists": _cmd_exists, "brute": _cmd_brute,
            "chief-series": _cmd_chief, "condition-e": _cmd_condition_e}


# --- rendering ---------------------------------------------------------------------------

def _human(report: dict) -> str:
    cmd = report["command"]
    out = report.get("outcome", {})
    lines = [f"command: {cmd}"]
    if report.get("input"):
        lines.append(f"input: {report['input']}  (order {report.get('group_order')})")
    if "error" in report:
        lines.append(f"error in phase {report['error']['phase']}: {report['error']['message']}")
        return "\n".join(lines)
    if cmd in ("carter", "exists"):
        lines.append(f"status: {out['status']}")
        if "subgroup" in out:
            lines.append(f"Carter subgroup of order {out['subgroup']['order']}: {' '.join(out['subgroup']['generators'])}")
        if "witness" in out:
            w = out["witness"]
            lines.append(f"witness: group of order {w['order']} ({w['label']}) lacks a Carter subgroup")
    elif cmd == "brute":
        lines.append(f"nilpotent subgroup classes (orders): {out['nilpotent_class_orders']}")
        cl = out["carter_classes"]
        lines.append("Carter classes: " + (", ".join(f"order {c['order']}" for c in cl) if cl else "none"))
    elif cmd == "chief-series":
        for f in out["factors"]:
            name = " = ".join(f["label"]["names"]) or f["label"]["kind"]
            lines.append(f"factor of order {f['order']}: ({name})^{f['k']}")
    elif cmd == "condition-e":
        for c in out["condition_e"]["cells"]:
            lines.append(f"level {c['level']} factor {c['factor']} ({c['label']}): Aut order {c['aut_order']}, "
                         f"Carter {'yes' if c['exists'] else 'no'} [{c['method']}]")
        lines.append("condition (E) " + ("holds" if out["condition_e"]["satisfied"] else "fails"))
    elif cmd == "verify-paper-example":
        for s in out["statements"]:
            lines.append(f"statement {s['statement']}: {'PASS' if s['pass'] else 'FAIL'}")
        lines.append(f"outcome: {out['outcome']}")
    return "\n".join(lines)


def strip_timings(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "timings"}


def run(argv: list[str] | None = None) -> tuple[int, dict]:
    """Execute a command; returns the exit code and the report."""
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return (0 if e.code == 0 else 1), {"schema": SCHEMA, "command": None,
                                           "error": {"phase": "usage", "message": "invalid arguments"}}
    timer = _Timer()
    report: dict[str, Any] = {"schema": SCHEMA, "command": args.command, "seed": args.seed, "budget": args.budget}
    code = 0
    try:
        if args.command == "verify-paper-example":
            report["input"] = "(paper_example)"
            report["outcome"] = verify_paper_example_script(args.budget, args.seed, timer)
            report["group_order"] = report["outcome"]["group_order"]
            if not report["outcome"]["all_pass"]:
                failed = [s["statement"] for s in report["outcome"]["statements"] if not s["pass"]]
                report["failed_statements"] = failed
        else:
            with timer.phase("parse"):
                text = open(args.spec, encoding="utf-8").read() if args.spec else args.expr
                ast = parse_spec(text)
                report["input"] = render(ast)
            with timer.phase("build"):
                bg = build(ast)
            report["group_order"] = bg.group.order()
            report["outcome"] = HANDLERS[args.command](bg, args, timer)
    except SpecSyntaxError as e:
        code = 1
        report["error"] = {"phase": timer.current, "message": str(e), "line": e.line, "column": e.column}
    except OSError as e:
        code = 1
        report["error"] = {"phase": timer.current, "message": str(e)}
    except CapacityError as e:
        code = 2
        report["error"] = {"phase": timer.current, "message": str(e),
                           "path": list(e.path) if e.path else []}
        report["limits_hit"] = [str(e)]
    except CarterKitError as e:
        code = 1
        report["error"] = {"phase": timer.current, "message": str(e)}
    report["timings"] = timer.phases
    return code, report


def main(argv: list[str] | None = None) -> int:
    code, report = run(argv)
    if report.get("command") is None:
        return code  # argparse has already printed usage or help
    as_json = "--json" in (argv if argv is not None else sys.argv[1:])
    if as_json:
        sys.stdout.write(json.dumps(report, sort_keys=True) + "\n")
    else:
        sys.stdout.write(_human(report) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
