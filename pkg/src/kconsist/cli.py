"""Command-line front end.

Every command prints one report (JSON by default) and exits with

* 0 when the question was decided, whatever the verdict,
* 1 on usage, parse, monoid or capability errors,
* 2 when a search ran out of budget or no procedure applies.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Any

from . import __version__
from ._search import DEFAULT_BUDGET, BudgetExceeded
from .consistency import (BUDGET, CONSISTENT, INCONSISTENT, UNDECIDABLE, ConsistencyError,
                          ConsistencyVerdict, check_global, check_pairwise, generate_counterexample,
                          transport_via_p3)
from .covers import (CoverError, LiftedRelation, canonical_lift, chase_up_to_free_cover,
                     find_pairwise_consistent_lifts, generate_cover_counterexample,
                     lift_global_witness, make_cover)
from .hypergraph import HypergraphError, check_acyclic, primal_chordal_conformal
from .io import (InstanceError, instance_to_json, load_instance, parse_element, parse_monoid_arg,
                 relation_to_json, schema_from_json)
from .joins import JoinError, JoinMethod, join, sparsity
from .monoids import CapabilityError, MonoidError
from .relations import RelationError, verify_witness
from .transport import (Undecidable, is_balanced, solve, solve_componentwise, solve_exhaustive,
                        solve_lattice, solve_northwest, solve_semifield)

FIXTURES = Path(__file__).with_name("fixtures")


class UsageError(ValueError):
    pass


def _exit_for(outcome: str) -> int:
    return 2 if outcome in (BUDGET, UNDECIDABLE) else 0


def _matrix(m, d) -> list:
    return [[m.to_literal(x) for x in row] for row in d]


def verdict_to_json(v: ConsistencyVerdict, relations) -> dict:
    names = [R.name or f"R{i + 1}" for i, R in enumerate(relations)]
    out: dict[str, Any] = {"level": v.level, "outcome": v.outcome, "method": v.method}
    if v.failing is not None and v.outcome != CONSISTENT:
        out["failing"] = [names[i] for i in v.failing]
    if v.reason:
        out["reason"] = v.reason
    if v.block is not None:
        out["block"] = v.block
    wits = []
    for idx in sorted(v.witnesses, key=lambda t: (len(t), t)):
        if len(idx) < 2:
            continue
        W = v.witnesses[idx]
        wits.append({"subset": [names[i] for i in idx],
                     "verified": verify_witness(W, [relations[i] for i in idx]),
                     "relation": relation_to_json(W)})
    if wits:
        out["witnesses"] = wits
    if v.detail.get("subsets"):
        out["search"] = v.detail["subsets"]
    return out


# ---------------------------------------------------------------------------
# commands


def _relations(opts):
    inst = load_instance(opts.instance)
    if not inst.relations:
        raise InstanceError(f"{opts.instance}: no relations")
    return inst


def cmd_check_acyclic(opts):
    path = Path(opts.instance)
    data = json.loads(path.read_text())
    if "edges" in data:
        H = schema_from_json(data)
    else:
        H = load_instance(path).schema_or_relations()
    cert = check_acyclic(H)
    prim = primal_chordal_conformal(H)
    report = cert.to_json(H)
    report["chordal"] = prim.chordal
    report["conformal"] = prim.conformal
    if prim.cycle:
        report["chordless_cycle"] = list(prim.cycle)
    if prim.clique:
        report["uncovered_clique"] = H.sorted_edge(prim.clique)
    return report, 0


def cmd_check_pairwise(opts):
    inst = _relations(opts)
    v = check_pairwise(inst.relations, budget=opts.budget)
    return verdict_to_json(v, inst.relations), _exit_for(v.outcome)


def cmd_check_global(opts):
    inst = _relations(opts)
    v = check_global(inst.relations, budget=opts.budget)
    return verdict_to_json(v, inst.relations), _exit_for(v.outcome)


_TRANSPORT = {
    "northwest": solve_northwest, "lattice": solve_lattice, "semifield": solve_semifield,
}


def cmd_solve_transport(opts):
    inst = load_instance(opts.instance)
    t = inst.transport
    if t is None:
        raise InstanceError(f"{opts.instance}: no 'b'/'c' vectors")
    m = t.monoid
    report: dict[str, Any] = {"monoid": m.name, "shape": list(t.shape)}
    if not is_balanced(t):
        report["verdict"] = "unbalanced"
        return report, 0
    method = opts.method
    try:
        if method == "auto":
            sol, method = solve(t, budget=opts.budget)
        elif method == "exhaustive":
            sol = solve_exhaustive(t, budget=opts.budget)
        elif method == "componentwise":
            sol = solve_componentwise(t, budget=opts.budget)
        elif method == "p3":
            sol = transport_via_p3(t, budget=opts.budget)
        else:
            sol = _TRANSPORT[method](t)
    except BudgetExceeded:
        report.update(verdict=BUDGET, method=method)
        return report, 2
    except Undecidable as exc:
        report.update(verdict=UNDECIDABLE, reason=str(exc))
        return report, 2
    report["method"] = method
    if sol is None:
        report["verdict"] = "infeasible"
    else:
        report["verdict"] = "feasible"
        report["matrix"] = _matrix(m, sol.d)
        report["verified"] = sol.verify()
    return report, 0


def cmd_join(opts):
    inst = _relations(opts)
    rels = inst.relations
    R = inst.relation(opts.left) if opts.left else rels[0]
    if opts.right:
        S = inst.relation(opts.right)
    elif len(rels) >= 2:
        S = rels[1]
    else:
        raise UsageError("join needs two relations")
    W = join(R, S, JoinMethod(opts.method), budget=opts.budget)
    W = W.renamed(f"{R.name or 'R'}*{S.name or 'S'}")
    k, bound = sparsity(W, R, S)
    return {"method": opts.method, "witness": verify_witness(W, [R, S]),
            "relation": relation_to_json(W),
            "support": f"support: |W'|={k}, bound=|R'|+|S'|={bound}"}, 0


def _schema_arg(path: str):
    data = json.loads(Path(path).read_text())
    if "edges" in data:
        return schema_from_json(data)
    return load_instance(path).schema_or_relations()


def cmd_counterexample(opts):
    H = _schema_arg(opts.schema)
    m = parse_monoid_arg(opts.monoid)
    c = parse_element(m, opts.element)
    cx = generate_counterexample(H, m, c)
    report = instance_to_json(m, cx.relations, schema=H.to_json())
    report["core"] = cx.certificate.core_name
    report["a"] = m.to_literal(cx.a)
    report["k"], report["d"] = cx.k, cx.d
    report["parity_certificate"] = cx.parity_certificate()
    code = 0
    if not opts.no_verify:
        p = check_pairwise(cx.relations, budget=opts.budget)
        g = check_global(cx.relations, budget=opts.budget)
        report["pairwise"] = p.outcome
        report["global"] = g.outcome
        code = max(_exit_for(p.outcome), _exit_for(g.outcome))
    return report, code


def cmd_lift(opts):
    inst = _relations(opts)
    cv = make_cover(opts.cover, inst.monoid)
    v = check_global(inst.relations, budget=opts.budget)
    if v.consistent:
        W = v.witnesses[tuple(range(len(inst.relations)))]
        lifts, _ = lift_global_witness(W, inst.relations, cv)
        strategy = "global-witness"
    else:
        lifts = [canonical_lift(R, cv) for R in inst.relations]
        strategy = "direct"
    report = instance_to_json(inst.monoid, inst.relations, inst.domains)
    report["cover"] = {"kind": opts.cover}
    report["upstairs"] = cv.upstairs.descriptor()
    report["lifts"] = [relation_to_json(L.lifted) for L in lifts]
    report["strategy"] = strategy
    return report, 0


def cmd_chase_free_cover(opts):
    inst = _relations(opts)
    if len(inst.lifts) != len(inst.relations):
        raise InstanceError("need one lift per relation")
    cv = make_cover(inst.cover or "free", inst.monoid)
    lifts = []
    for R, L in zip(inst.relations, inst.lifts):
        if L.monoid != cv.upstairs:
            raise InstanceError("lifts do not live over the cover's source monoid")
        lifts.append(LiftedRelation(R, L, cv))
    try:
        W = chase_up_to_free_cover(lifts)
    except (CoverError, ConsistencyError) as exc:
        return {"outcome": INCONSISTENT, "reason": str(exc)}, 0
    return {"outcome": CONSISTENT, "verified": verify_witness(W, inst.relations),
            "relation": relation_to_json(W.renamed("W"))}, 0


def cmd_cover_counterexample(opts):
    H = _schema_arg(opts.schema)
    m = parse_monoid_arg(opts.monoid)
    c = parse_element(m, opts.element)
    cv = make_cover(opts.cover, m)
    c_star = parse_element(cv.upstairs, opts.preimage) if opts.preimage else None
    cc = generate_cover_counterexample(H, m, c, cv, c_star)
    report = instance_to_json(m, cc.base.relations, schema=H.to_json())
    report["cover"] = {"kind": opts.cover}
    report["upstairs"] = cv.upstairs.descriptor()
    report["lifts"] = [relation_to_json(L.lifted) for L in cc.lifts]
    report["a"] = m.to_literal(cc.base.a)
    report["a_star"] = cv.upstairs.to_literal(cc.upstairs.a)
    code = 0
    if not opts.no_verify:
        up = check_pairwise([L.lifted for L in cc.lifts], budget=opts.budget)
        down = check_global(cc.base.relations, budget=opts.budget)
        report["lifts_pairwise"] = up.outcome
        report["global"] = down.outcome
        code = max(_exit_for(up.outcome), _exit_for(down.outcome))
    return report, code


def cmd_lift_search(opts):
    inst = _relations(opts)
    cv = make_cover(opts.cover, inst.monoid)
    if not cv.upstairs.caps.bounded and not cv.upstairs.caps.finite:
        raise CapabilityError("bounded lift search needs an enumerable upstairs monoid")
    if cv.upstairs.caps.finite:
        pool = cv.upstairs.enumerate()
    else:
        pool = [cv.upstairs.parse(i) for i in range(opts.bound + 1)]
    res = find_pairwise_consistent_lifts(inst.relations, cv, pool)
    report = {"cover": opts.cover, "bound": opts.bound, "combinations": res.combinations,
              "pairs_checked": res.checked_pairs, "found": res.found}
    if res.found:
        report["lifts"] = [relation_to_json(L.lifted) for L in res.lifts]
    return report, 0


# ---------------------------------------------------------------------------
# self-test


def _lookup(report: Any, dotted: str):
    cur = report
    for part in dotted.split("."):
        if isinstance(cur, list):
            cur = cur[int(part)]
        else:
            cur = cur[part]
    return cur


def _random_checks(count: int, seed: int) -> list[dict]:
    from .generators import random_inner_consistent_pair
    from .joins import northwest_join, standard_join, vorobev_join
    from .monoids import make_builtin

    rng = random.Random(seed)
    cases = [("northwest", make_builtin("N"), northwest_join),
             ("vorobev", make_builtin("Q"), vorobev_join),
             ("standard", make_builtin("B"), standard_join)]
    out = []
    for name, m, fn in cases:
        ok = 0
        for _ in range(count):
            R, S = random_inner_consistent_pair(m, rng)
            W = fn(R, S)
            ok += verify_witness(W, [R, S]) and (name != "northwest" or len(W) <= len(R) + len(S))
        out.append({"fixture": f"random-{name}", "passed": ok == count,
                    "detail": f"{ok}/{count} random pairs witnessed"})
    return out


def cmd_selftest(opts):
    root = Path(opts.fixtures) if opts.fixtures else FIXTURES
    if not root.is_dir():
        raise UsageError(f"fixture directory {root} does not exist")
    results = []
    parser = build_parser()
    for path in sorted(root.glob("*.json")):
        data = json.loads(path.read_text())
        tags = data.get("tags", [])
        if opts.tag and opts.tag not in tags:
            continue
        for check in data.get("expect", []):
            argv = [a.replace("{fixture}", str(path)).replace("{dir}", str(root))
                    for a in check["argv"]]
            if not any("{fixture}" in a for a in check["argv"]):
                argv.append(str(path))
            sub = _fill_defaults(parser.parse_args(argv))
            try:
                report, code = sub.func(sub)
            except Exception as exc:  # a crash is a failed fixture
                report, code = {"error": f"{type(exc).__name__}: {exc}"}, 1
            problems = []
            if code != check.get("exit", 0):
                problems.append(f"exit {code}")
            for key, want in check.get("report", {}).items():
                try:
                    got = _lookup(report, key)
                except (KeyError, IndexError, TypeError):
                    got = "<missing>"
                if got != want:
                    problems.append(f"{key}={got!r}, expected {want!r}")
            results.append({"fixture": path.stem, "command": check["argv"][0],
                            "tags": tags, "passed": not problems,
                            "detail": "; ".join(problems) or "ok"})
    if opts.random:
        results += _random_checks(opts.random, opts.seed)
    passed = sum(r["passed"] for r in results)
    report = {"seed": opts.seed, "passed": passed, "failed": len(results) - passed,
              "results": results}
    return report, 0 if passed == len(results) else 2


# ---------------------------------------------------------------------------
# parser and entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS,
                        help=f"search node limit (default {DEFAULT_BUDGET})")

    p = argparse.ArgumentParser(prog="kconsist", parents=[common],
                                description="Consistency of monoid-annotated relations.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, instance=True):
        sp = sub.add_parser(name, help=help_, parents=[common])
        if instance:
            sp.add_argument("instance")
        sp.set_defaults(func=fn)
        return sp

    add("check-acyclic", cmd_check_acyclic, "acyclicity certificate of a schema")
    add("check-pairwise", cmd_check_pairwise, "decide pairwise consistency")
    add("check-global", cmd_check_global, "decide global consistency")
    sp = add("solve-transport", cmd_solve_transport, "solve a transportation instance")
    sp.add_argument("--method", default="auto",
                    choices=["auto", "northwest", "exhaustive", "componentwise", "lattice",
                             "semifield", "p3"])
    sp = add("join", cmd_join, "join two relations")
    sp.add_argument("--method", default="northwest", choices=[m.value for m in JoinMethod])
    sp.add_argument("--left")
    sp.add_argument("--right")
    for name, fn, help_ in [("counterexample", cmd_counterexample,
                             "pairwise but not globally consistent relations"),
                            ("cover-counterexample", cmd_cover_counterexample,
                             "counterexample together with consistent lifts")]:
        sp = add(name, fn, help_, instance=False)
        sp.add_argument("--schema", required=True)
        sp.add_argument("--monoid", required=True)
        sp.add_argument("--element", required=True)
        sp.add_argument("--no-verify", action="store_true")
        if name == "cover-counterexample":
            sp.add_argument("--cover", default="free")
            sp.add_argument("--preimage")
    sp = add("lift", cmd_lift, "lift relations along a cover")
    sp.add_argument("--cover", default="free")
    add("chase-free-cover", cmd_chase_free_cover, "chase lifted relations and push down")
    sp = add("lift-search", cmd_lift_search, "bounded search for pairwise consistent lifts")
    sp.add_argument("--cover", default="truncation")
    sp.add_argument("--bound", type=int, default=4)
    sp = add("selftest", cmd_selftest, "run the bundled fixtures", instance=False)
    sp.add_argument("--fixtures")
    sp.add_argument("--tag")
    sp.add_argument("--random", type=int, default=0,
                    help="also run this many random join checks per join method")
    return p


def _fill_defaults(opts):
    for name, default in (("format", "json"), ("seed", 0), ("budget", DEFAULT_BUDGET)):
        if not hasattr(opts, name):
            setattr(opts, name, default)
    return opts


def _render_text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict) and "attributes" in obj and "tuples" in obj:
        lines.append(f"{pad}{obj.get('name') or 'R'}({' '.join(obj['attributes'])})")
        for row in obj["tuples"]:
            vals = " ".join(str(row["values"][a]) for a in obj["attributes"])
            lines.append(f"{pad}  {vals} : {json.dumps(row['annotation'])}")
        return lines
    if isinstance(obj, dict):
        for k, v in obj.items():
            nested = isinstance(v, dict) or (
                isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v))
            if nested:
                lines.append(f"{pad}{k}:")
                lines += _render_text(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
        return lines
    if isinstance(obj, list):
        for x in obj:
            if isinstance(x, (dict, list)):
                lines.append(f"{pad}-")
                lines += _render_text(x, indent + 1)
            else:
                lines.append(f"{pad}- {json.dumps(x)}")
        return lines
    return [f"{pad}{obj}"]


def _error(code: str, message: str, fmt: str) -> int:
    report = {"error": {"code": code, "message": message}}
    if fmt == "text":
        print(f"error [{code}]: {message}")
    else:
        print(json.dumps(report, indent=2))
    print(f"kconsist: {code}: {message}", file=sys.stderr)
    return 1


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        opts = _fill_defaults(parser.parse_args(argv))
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    fmt = opts.format
    try:
        report, code = opts.func(opts)
    except FileNotFoundError as exc:
        return _error("io-error", str(exc), fmt)
    except (InstanceError, json.JSONDecodeError) as exc:
        return _error("parse-error", str(exc), fmt)
    except CapabilityError as exc:
        return _error("capability-error", str(exc), fmt)
    except MonoidError as exc:
        return _error("monoid-error", str(exc), fmt)
    except HypergraphError as exc:
        return _error("schema-error", str(exc), fmt)
    except (RelationError, JoinError, CoverError, ConsistencyError) as exc:
        return _error("input-error", str(exc), fmt)
    except UsageError as exc:
        return _error("usage-error", str(exc), fmt)
    except BudgetExceeded as exc:
        report, code = {"outcome": BUDGET, "reason": str(exc)}, 2
    except Undecidable as exc:
        report, code = {"outcome": UNDECIDABLE, "reason": str(exc)}, 2
    report = {"command": opts.command, **report}
    if fmt == "text":
        print("\n".join(_render_text(report)))
    else:
        print(json.dumps(report, indent=2))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
