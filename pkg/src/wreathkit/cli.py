"""Command-line front end: ``wreathkit <command> [instance] [flags]``.

Instances are JSON objects with a ``kind`` tag; tables are written as CSV
and everything else as sorted-key JSON, so equal inputs give equal bytes.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import coxeter as cx
from . import grigorchuk as gg
from .acceptance import CHECKS
from .cayley import cayley_ball, graph_isomorphic, verify_isomorphism
from .commensurate import CommAction, natural_action, pw_length, second_length, default_ell1, symmetrize
from .epsets import EPSet
from .growth import MemoryBudgetExceeded, ball_sizes, default_budget_bytes, growth_report
from .groups import FiniteGroup, GroupError, cyclic, dihedral, direct_product, subgroup, symmetric, trivial, whole
from .radicals import (ClosureVerdict, conj_closure, grigorchuk_instance, membership, predict_B, predict_W,
                       radical_conditions_trivial, shift_instance, wy_var2_instance)
from .walls import Walling, WallingError, cnd_check, cut_weight, distance_matrix, l1_distance, l1_embed
from .wreath import CycleUnion, FiniteAction, ShiftLine, WindowEscape, WreathProduct

KINDS = ("wreath", "walls", "commaction", "radical", "coxeter", "grigorchuk")


class SchemaError(ValueError):
    def __init__(self, field: str, message: str, line: int | None = None):
        self.field, self.line = field, line
        where = f"line {line}, " if line is not None else ""
        super().__init__(f"{where}field '{field}': {message}")


@dataclass
class InstanceFile:
    kind: str
    body: dict
    path: str = ""
    obj: object = None           # the constructed object
    extra: dict = field(default_factory=dict)


# -- parsing ---------------------------------------------------------------------

def _get(body: dict, key: str, where: str = "", default=...):
    if key not in body:
        if default is ...:
            raise SchemaError(where + key, "missing")
        return default
    return body[key]


def parse_group(desc, where: str = "B") -> FiniteGroup:
    if not isinstance(desc, dict):
        raise SchemaError(where, "expected a group object")
    kind = _get(desc, "kind", where + ".")
    try:
        if kind == "cyclic":
            return cyclic(int(_get(desc, "n", where + ".")))
        if kind == "dihedral":
            return dihedral(int(_get(desc, "n", where + ".")))
        if kind == "symmetric":
            return symmetric(int(_get(desc, "n", where + ".")))
        if kind == "product":
            factors = _get(desc, "factors", where + ".")
            if not factors:
                raise SchemaError(where + ".factors", "empty product")
            G = parse_group(factors[0], f"{where}.factors[0]")
            for i, f in enumerate(factors[1:], start=1):
                G = direct_product(G, parse_group(f, f"{where}.factors[{i}]"))
            return G
        if kind == "table":
            import numpy as np
            return FiniteGroup.from_table(np.array(_get(desc, "table", where + ".")), name=desc.get("name", "T"))
    except GroupError as e:
        raise SchemaError(where, str(e)) from None
    raise SchemaError(where + ".kind", f"unknown group kind {kind!r}")


def parse_subgroup(B: FiniteGroup, desc, where: str = "A"):
    if desc in (None, "trivial"):
        return trivial(B)
    if desc == "whole":
        return whole(B)
    if isinstance(desc, list):
        try:
            return subgroup(B, [int(x) for x in desc])
        except GroupError as e:
            raise SchemaError(where, str(e)) from None
    raise SchemaError(where, "expected 'trivial', 'whole' or a list of element ids")


def parse_hset(body: dict):
    kind = _get(body, "H_kind")
    window = body.get("X_window", [-32, 32])
    if kind == "Z":
        if not (isinstance(window, list) and len(window) == 2):
            raise SchemaError("X_window", "expected [lo, hi] for H_kind Z")
        return ShiftLine(int(window[0]), int(window[1]))
    if kind == "cycles":
        return CycleUnion(int(window))
    if kind == "finite":
        H = parse_group(_get(body, "H"), "H")
        table = body.get("action")
        return FiniteAction.regular(H) if table is None else FiniteAction(H, table)
    if kind == "grigorchuk":
        return gg.GrigorchukOrbit(body.get("ray", "1^inf"), int(body.get("level", 16)), int(body.get("radius", 8)))
    raise SchemaError("H_kind", f"unknown H kind {kind!r}")


def _parse_value(v):
    if v in ("inf", "oo", "infinity"):
        return cx.INF
    if isinstance(v, int) and v >= 1:
        return v
    raise SchemaError("rule", f"bad Coxeter entry {v!r}")


def parse_coxeter(body: dict) -> cx.CoxeterMatrix:
    lo, hi = _get(body, "window")
    if "rule" in body:
        rule = body["rule"]
        table = {int(k): _parse_value(v) for k, v in rule.items() if k != "default"}
        default = _parse_value(rule.get("default", "inf"))
        return cx.CoxeterMatrix.from_rule(lambda d: table.get(d, default), lo, hi, body.get("name", "rule"))
    if "entries" in body:
        entries = {}
        for i, j, m in body["entries"]:
            entries[(i, j)] = entries[(j, i)] = _parse_value(m)
        return cx.CoxeterMatrix(list(range(lo, hi)),
                                lambda s, t: 1 if s == t else entries.get((s, t), 2), [], body.get("name", "explicit"))
    raise SchemaError("rule", "expected 'rule' or 'entries'")


def _parse_epset(desc, where: str) -> EPSet:
    if desc == "N":
        return EPSet.ray_up(0)
    if isinstance(desc, dict):
        k = desc.get("kind")
        if k == "ray_up":
            return EPSet.ray_up(int(desc["from"]))
        if k == "ray_down":
            return EPSet.ray_down(int(desc["to"]))
        if k == "finite":
            return EPSet.finite(desc["points"])
        if k == "periodic":
            return EPSet.periodic(desc["residues"], int(desc["period"]))
    raise SchemaError(where, f"bad subset descriptor {desc!r}")


def _build(inst: InstanceFile) -> None:
    b = inst.body
    if inst.kind == "wreath":
        B = parse_group(_get(b, "B"))
        A = parse_subgroup(B, b.get("A"))
        inst.obj = WreathProduct(B, parse_hset(b), A)
        gens = b.get("generators", "standard")
        if gens != "standard" and not isinstance(gens, list):
            raise SchemaError("generators", "expected 'standard' or a list of B element ids")
        inst.extra["gens_B"] = None if gens == "standard" else [int(g) for g in gens]
    elif inst.kind == "walls":
        try:
            if "file" in b:
                inst.obj = Walling.from_text((Path(inst.path).parent / b["file"]).read_text())
            else:
                n = int(_get(b, "ground"))
                walls = []
                for i, w in enumerate(_get(b, "walls")):
                    if not (isinstance(w, list) and len(w) == 2):
                        raise SchemaError(f"walls[{i}]", "expected [weight, bitmask]")
                    walls.append((int(w[1]), Fraction(str(w[0]))))
                for i, (m, _) in enumerate(walls):
                    if not 0 < m < (1 << n) - 1:
                        raise SchemaError(f"walls[{i}]", "wall is empty or the whole ground")
                inst.obj = Walling(list(range(n)), walls)
        except WallingError as e:
            raise SchemaError("walls", str(e)) from None
    elif inst.kind == "commaction":
        B = parse_group(b.get("B", {"kind": "cyclic", "n": 2}))
        Ms = b.get("M", ["N"])
        act = CommAction(tuple(_parse_epset(m, f"M[{i}]") for i, m in enumerate(Ms))) if Ms != ["N"] else natural_action()
        if b.get("symmetrize", False):
            act = symmetrize(act)
        w = int(b.get("window", 64))
        inst.obj = (WreathProduct(B, ShiftLine(-w, w)), act)
    elif inst.kind == "radical":
        name = _get(b, "instance")
        makers = {"wy_var2": lambda: wy_var2_instance(int(b.get("max_len", 8))),
                  "shift": lambda: shift_instance(),
                  "grigorchuk": lambda: grigorchuk_instance(int(b.get("level", 12)), int(b.get("radius", 6)))}
        if name not in makers:
            raise SchemaError("instance", f"unknown radical instance {name!r}; known: {sorted(makers)}")
        inst.obj = makers[name]()
    elif inst.kind == "coxeter":
        inst.obj = parse_coxeter(b)
    elif inst.kind == "grigorchuk":
        try:
            inst.obj = gg.Ray.parse(b.get("ray", "1^inf"))
        except ValueError as e:
            raise SchemaError("ray", str(e)) from None


def parse_instance(path) -> InstanceFile:
    text = Path(path).read_text()
    try:
        body = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError("<json>", e.msg, e.lineno) from None
    if not isinstance(body, dict):
        raise SchemaError("<root>", "expected a JSON object")
    kind = body.get("kind")
    if kind not in KINDS:
        raise SchemaError("kind", f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    inst = InstanceFile(kind, body, str(path))
    _build(inst)
    return inst


# -- element encoding --------------------------------------------------------------

def _decode_element(W: WreathProduct, d: dict, where: str):
    try:
        lamp = {(tuple(x) if isinstance(x, list) else x): int(v) for x, v in d.get("lamp", [])}
        return W.make(lamp, d.get("top", W.hset.identity()))
    except (TypeError, ValueError, KeyError) as e:
        raise SchemaError(where, f"bad element: {e}") from None


def _encode_element(u) -> dict:
    return {"lamp": [[list(x) if isinstance(x, tuple) else x, b] for x, b in u.lamp], "top": u.top}


def _dump(obj) -> str:
    def default(o):
        if isinstance(o, Fraction):
            return str(o)
        if o == cx.INF:
            return "inf"
        return str(o)
    return json.dumps(obj, sort_keys=True, indent=2, default=default) + "\n"


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# -- commands -----------------------------------------------------------------------

def _budget(args) -> int | None:
    return args.budget_bytes if args.budget_bytes is not None else default_budget_bytes()


def cmd_growth(args) -> int:
    inst = parse_instance(args.instance)
    if inst.kind == "wreath":
        W = inst.obj
        table = ball_sizes(W.standard_generators(inst.extra["gens_B"]), W.compose, W.canonical, args.radius,
                           W.identity(), _budget(args))
    elif inst.kind == "grigorchuk":
        table = ball_sizes(list(gg.LETTERS), lambda u, s: gg.reduce(u + s), gg.portrait, args.radius, "",
                           _budget(args))
    else:
        raise SchemaError("kind", f"growth needs a wreath or grigorchuk instance, got {inst.kind!r}")
    _write(table.to_csv(), args.out)
    if args.report:
        rep = growth_report(table)
        Path(args.report).write_text(_dump(rep.__dict__ | {"better_fit": rep.better_fit}))
    return 0


def cmd_iso(args) -> int:
    balls = []
    for path in (args.instance, args.other):
        inst = parse_instance(path)
        if inst.kind != "wreath":
            raise SchemaError("kind", f"{path}: iso needs wreath instances")
        W = inst.obj
        balls.append(cayley_ball(W.standard_generators(inst.extra["gens_B"]), W.compose, W.canonical, args.radius,
                                 W.identity(), _budget(args)))
    iso, mapping = graph_isomorphic(balls[0], balls[1], rooted=not args.unrooted)
    ok = iso and verify_isomorphism(balls[0], balls[1], mapping, rooted=not args.unrooted)
    result = {"isomorphic": ok, "radius": args.radius, "vertices": [g.n for g in balls],
              "edges": [len(g.edges) for g in balls]}
    if ok and args.witness:
        Path(args.witness).write_text("".join(f"{i} {j}\n" for i, j in enumerate(mapping)))
    if args.graphs:
        for k, g in enumerate(balls):
            Path(f"{args.graphs}.{k}.txt").write_text(g.to_text())
    _write(_dump(result), args.out)
    return 0 if ok else 1


def cmd_walls_check(args) -> int:
    inst = parse_instance(args.instance)
    if inst.kind != "walls":
        raise SchemaError("kind", "walls-check needs a walls instance")
    w = inst.obj
    D = distance_matrix(w)
    pts = range(w.n)
    metric = all(D[i][i] == 0 and D[i][j] == D[j][i] for i in pts for j in pts) and all(
        D[i][k] <= D[i][j] + D[j][k] for i in pts for j in pts for k in pts)
    emb = l1_embed(w)
    l1 = all(l1_distance(emb[i], emb[j]) == D[i][j] for i in pts for j in pts)
    cnd = cnd_check(D, args.tol)
    monotone = True
    if w.n <= 16:
        for F in range(1, 1 << w.n):
            mem = [i for i in pts if F >> i & 1]
            if cut_weight(w, F) < max((D[i][j] for i in mem for j in mem), default=0):
                monotone = False
                break
    result = {"pseudo_metric": metric, "l1_exact": l1, "cnd": cnd, "monotone_cut_bound": monotone,
              "distance": [[str(x) for x in row] for row in D]}
    _write(_dump(result), args.out)
    return 0 if metric and l1 and cnd and monotone else 1


def cmd_pw_lengths(args) -> int:
    inst = parse_instance(args.instance)
    if inst.kind != "commaction":
        raise SchemaError("kind", "pw-lengths needs a commaction instance")
    W, act = inst.obj
    ell1 = default_ell1(W.B, W.A)
    records = [{"generator": h, "ell0": act.ell0(h)} for h in inst.body.get("generators", [1, -1])]
    for i, d in enumerate(inst.body.get("elements", [])):
        try:
            g = _decode_element(W, d, f"elements[{i}]")
            records.append({"element": _encode_element(g), "ell": pw_length(g, act, W),
                            "ell_prime": second_length(g, ell1)})
        except WindowEscape as e:
            raise SchemaError(f"elements[{i}]", str(e)) from None
    _write(_dump(records), args.out)
    return 0


def cmd_radical(args) -> int:
    inst = parse_instance(args.instance)
    if inst.kind != "radical":
        raise SchemaError("kind", "radical needs a radical instance")
    R = inst.obj
    W = R.wreath()
    dW, dB = predict_W(R), predict_B(R) if R.BH is not None else None
    out = {"instance": R.name, "W": dW.summary(), "B": dB.summary() if dB else None,
           "trivial_by_conditions": radical_conditions_trivial(R), "elements": []}
    ok = True
    for i, d in enumerate(inst.body.get("elements", [])):
        g = _decode_element(W, d, f"elements[{i}]")
        v: ClosureVerdict = conj_closure(g, W, budget=args.budget)
        member = membership(g, dW, W.hset)
        # soundness: a predicted member never escapes
        ok &= not (member and v.kind == "Escaped")
        out["elements"].append({"element": _encode_element(g), "member_W": member,
                                "verdict": json.loads(v.to_json(W))})
    _write(_dump(out), args.out)
    return 0 if ok else 1


def cmd_coxeter(args) -> int:
    inst = parse_instance(args.instance)
    if inst.kind != "coxeter":
        raise SchemaError("kind", "coxeter needs a coxeter instance")
    m = inst.obj
    rep = cx.validate(m)
    out = {"valid": rep.ok, "violations": {k: len(v) for k, v in rep.__dict__.items()}}
    ok = rep.ok
    if args.probe is not None:
        p = args.probe
        try:
            out["probe"] = {"p": p, "mu": m(0, p), "order_under_mu": cx.dihedral_order(m(0, p)),
                            "independent": cx.independence_probe(p, m)}
            ok &= out["probe"]["independent"]
        except cx.InfiniteEntry as e:
            out["probe"] = {"p": p, "error": str(e)}
            ok = False
    try:
        r = cx.compact_presented(m, raise_unstable=False)
        out["compact_presentation"] = {"compactly_presented": r.compactly_presented, "orbit_counts": r.orbit_counts,
                                       "note": r.note}
    except cx.OracleUnstable as e:  # pragma: no cover - raise_unstable=False
        out["compact_presentation"] = {"error": str(e)}
    _write(_dump(out), args.out)
    return 0 if ok else 1


def _run_check(n: int):
    return CHECKS[n]().to_dict()


def cmd_suite(args) -> int:
    numbers = args.only or sorted(CHECKS)
    if args.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_run_check, numbers))
    else:
        results = [_run_check(n) for n in numbers]
    for r in results:
        print(f"criterion {r['criterion']:>2} {'PASS' if r['passed'] else 'FAIL'}  {r['title']}", file=sys.stderr)
    summary = {"passed": all(r["passed"] for r in results),
               "criteria": [{k: v for k, v in r.items() if k != "seconds" or args.timings} for r in results]}
    _write(_dump(summary), args.out)
    return 0 if summary["passed"] else 1


# -- entry point ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wreathkit", description="Wreath products, walls, radicals and Coxeter checks.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=1, help="worker processes (outputs do not depend on it)")
    common.add_argument("--budget-bytes", type=int, default=None,
                        help="memory cap for enumerations (default: WREATHKIT_BUDGET_MB)")
    common.add_argument("--out", default=None, help="write the main output here instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("growth", parents=[common], help="ball sizes as CSV")
    p.add_argument("instance")
    p.add_argument("--radius", type=int, default=5)
    p.add_argument("--report", default=None, help="also write growth fits as JSON")
    p.set_defaults(fn=cmd_growth)

    p = sub.add_parser("iso", parents=[common], help="Cayley-ball isomorphism of two wreath instances")
    p.add_argument("instance")
    p.add_argument("other")
    p.add_argument("--radius", type=int, default=3)
    p.add_argument("--witness", default=None, help="write the vertex map, one 'u v' per line")
    p.add_argument("--graphs", default=None, help="prefix for exporting both balls")
    p.add_argument("--unrooted", action="store_true")
    p.set_defaults(fn=cmd_iso)

    p = sub.add_parser("walls-check", parents=[common], help="metric, L1 and CND checks of a walling")
    p.add_argument("instance")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(fn=cmd_walls_check)

    p = sub.add_parser("pw-lengths", parents=[common], help="lengths from a commensurating action")
    p.add_argument("instance")
    p.set_defaults(fn=cmd_pw_lengths)

    p = sub.add_parser("radical", parents=[common], help="radical formulas and conjugacy-closure verdicts")
    p.add_argument("instance")
    p.add_argument("--budget", type=int, default=20_000, help="class-size budget for the closure search")
    p.set_defaults(fn=cmd_radical)

    p = sub.add_parser("coxeter", parents=[common], help="Coxeter matrix validation and independence probe")
    p.add_argument("instance")
    p.add_argument("--probe", type=int, default=None)
    p.set_defaults(fn=cmd_coxeter)

    p = sub.add_parser("suite", parents=[common], help="run the acceptance criteria")
    p.add_argument("--only", type=int, nargs="*", default=None)
    p.add_argument("--timings", action="store_true", help="include runtimes (output no longer reproducible)")
    p.set_defaults(fn=cmd_suite)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SchemaError as e:
        print(f"{getattr(args, 'instance', '')}: schema error: {e}", file=sys.stderr)
        return 2
    except (MemoryBudgetExceeded, WindowEscape, gg.LevelExhausted) as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return 3
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
