"""Command-line front end: ``kholes <subcommand> ...``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import signal
import sys
import time
from fractions import Fraction

from . import __version__, bounds, census, generators, grid, harness, relations
from .census import GonClass
from .geom import GeometryError, PointSet, format_points, parse_points


class _Timeout(Exception):
    pass


def _json_default(o):
    if isinstance(o, Fraction):
        return relations.format_rational(o)
    if isinstance(o, GonClass):
        return o.value
    if isinstance(o, (set, frozenset, tuple)):
        return list(o)
    if hasattr(o, "item"):
        return o.item()
    raise TypeError(f"not serialisable: {type(o).__name__}")


def _read_set(path: str) -> PointSet:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return PointSet(parse_points(text))


def _class(text: str) -> GonClass:
    return GonClass(text)


# --- subcommands --------------------------------------------------------------------

def cmd_generate(a):
    spec = generators.GeneratorSpec(a.family, n=a.n or 0, m=a.m or 0, k=a.k, seed=a.seed,
                                    params={"box": a.box} if a.box else {})
    S = spec.build()
    text = format_points(S.points)
    if a.out:
        with open(a.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        return {"n": S.n, "out": a.out}, True
    sys.stdout.write(text)
    return None, True


def _count_one(S: PointSet, a) -> int:
    if a.objects == "islands":
        return census.count_islands(S, a.k)
    return census.count_gons(S, a.k, _class(a.cls), a.objects == "holes", jobs=a.jobs).count


def cmd_count(a):
    rows = []
    if a.input:
        S = _read_set(a.input)
        rows.append({"n": S.n, "k": a.k, "class": a.cls, "objects": a.objects, "count": _count_one(S, a)})
    else:
        if not a.family or not a.sizes:
            raise SystemExit("count needs --in FILE or --family F --sizes N [N ...]")
        for n in a.sizes:
            S = generators.GeneratorSpec(a.family, n=n, m=n, k=a.k, seed=a.seed).build()
            rows.append({"n": S.n, "k": a.k, "class": a.cls, "objects": a.objects, "count": _count_one(S, a)})
    if a.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=["n", "k", "class", "objects", "count"], lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        sys.stdout.write(buf.getvalue())
        return None, True
    return (rows[0] if len(rows) == 1 else {"series": rows}), True


def cmd_crossing(a):
    S = _read_set(a.input)
    return {"n": S.n, "crossing_number": census.crossing_number(S)}, True


def cmd_polygonizations(a):
    S = _read_set(a.input)
    res = {"n": S.n, "count": census.polygonization_count(S)}
    if a.list:
        res["cycles"] = census.polygonizations(S)
    return res, True


def _point(text: str):
    x, y = text.split(",")
    return (int(x), int(y))


def cmd_grid(a):
    g = grid.GridSpec(a.m)
    if a.op == "prime4holes":
        return {"m": a.m, "k": a.k, "count": grid.count_prime_k_holes(g, a.k, max_k=a.max_k)}, True
    if a.op == "rowholes":
        valid, total = grid.count_row_structured_prime_holes(g, a.k)
        need = grid.row_hole_lower_bound(a.m, a.k)
        ok = valid == total and valid >= need
        return {"m": a.m, "k": a.k, "valid": valid, "candidates": total, "lower_bound": need,
                "violations": total - valid}, ok
    if a.op == "segtriangles":
        if a.p and a.q:
            t = grid.grid_segment_empty_triangles(g, _point(a.p), _point(a.q))
            return {"m": a.m, "p": a.p, "q": a.q, "nondegenerate": t.nondegenerate,
                    "degenerate": t.degenerate}, True
        best, (p, q) = grid.max_segment_triangles(g)
        return {"m": a.m, "max_total": best, "argmax": [list(p), list(q)]}, True
    if a.op == "phi-check":
        bad = []
        block = g.central_block()
        for d in range(1, a.m):
            if 3 * d >= a.m:
                break
            for x in block:
                for y in block:
                    if grid.prime_partners_at_distance(g, (x, y), d) != 8 * grid.euler_phi(d):
                        bad.append([x, y, d])
        return {"m": a.m, "violations": bad}, not bad
    raise SystemExit(f"unknown grid op {a.op}")


def _c4(text: str) -> Fraction:
    if text == "lower":
        return relations.C4.lower
    if text == "upper":
        return relations.C4.upper
    return Fraction(text)


def cmd_relations(a):
    space = relations.profile_space(a.k, a.strategy)
    cls = _class(a.cls)
    res = {"k": a.k, "class": a.cls, "provenance": space.provenance, "complete": space.complete,
           "profiles": [p.astuple() for p in space.sorted()]}
    if a.k >= 7 and not space.complete:
        res["note"] = "best effort: profile space not certified complete"
    if a.objective == "tight":
        res["relation"] = relations.relation_record(relations.optimize_tight(space, cls))
    else:
        c4 = _c4(a.c4)
        fn = relations.optimize_upper if a.objective == "upper" else relations.optimize_lower
        c, x = fn(space, cls, c4)
        coeff = relations.bound_coefficient(c, x, a.k, c4)
        res["relation"] = {"c": relations.format_rational(c), "x": relations.format_rational(x),
                           "c4": relations.format_rational(c4),
                           "coefficient": relations.format_rational(coeff), "coefficient_approx": float(coeff)}
    return res, True


def cmd_bounds(a):
    res = {"k": a.k}
    if a.k >= 4:
        res["convex_max_threshold"] = bounds.convex_max_threshold(a.k)
        if a.n is not None:
            res["khole_upper_expression"] = relations.format_rational(
                bounds.khole_upper_expression(a.n, a.k, a.T or 0))
    rows = []
    for b in bounds.published_bounds(a.k).rows:
        row = {"quantity": b.quantity, "relation": b.relation, "text": b.text,
               "informational": b.informational}
        if a.n is not None and b.value is not None:
            row["main_term_at_n"] = relations.format_rational(b.evaluate(a.n))
        rows.append(row)
    res["published"] = rows
    if a.n is not None and a.n % 2 == 0 and (a.n - a.k) % 2 == 0 and 4 <= a.k <= a.n:
        res["double_chain_factor"] = relations.format_rational(bounds.dc_khole_lower_factor(a.n, a.k))
    return res, True


def cmd_verify(a):
    cfg = harness.VerifyConfig(jobs=a.jobs, k7_patience=a.k7_patience, db9_path=a.db9, progress=True)
    report = harness.run_suite(a.suite, cfg)
    return report.to_dict(timings=not a.no_timing), report.ok


COMMANDS = {
    "generate": cmd_generate, "count": cmd_count, "crossing": cmd_crossing,
    "polygonizations": cmd_polygonizations, "grid": cmd_grid, "relations": cmd_relations,
    "bounds": cmd_bounds, "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=0, help="worker processes (0 = all cores)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--timeout-secs", type=float, default=0, help="0 disables the timeout")
    common.add_argument("--no-timing", action="store_true", help="omit runtimes for byte-stable output")

    p = argparse.ArgumentParser(prog="kholes", description="Exact k-gon and k-hole counting.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[common])
    g.add_argument("--family", required=True, choices=generators.FAMILIES)
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--k", type=int, default=4)
    g.add_argument("--box", type=int)
    g.add_argument("--out")

    c = sub.add_parser("count", parents=[common])
    c.add_argument("--in", dest="input")
    c.add_argument("--family", choices=generators.FAMILIES)
    c.add_argument("--sizes", type=int, nargs="+")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--class", dest="cls", default="general", choices=[x.value for x in GonClass])
    c.add_argument("--objects", default="holes", choices=["gons", "holes", "islands"])
    c.add_argument("--format", default="json", choices=["json", "csv"])

    x = sub.add_parser("crossing", parents=[common])
    x.add_argument("--in", dest="input", required=True)

    pz = sub.add_parser("polygonizations", parents=[common])
    pz.add_argument("--in", dest="input", required=True)
    pz.add_argument("--list", action="store_true")

    gr = sub.add_parser("grid", parents=[common])
    gr.add_argument("--m", type=int, required=True)
    gr.add_argument("--op", required=True, choices=["prime4holes", "rowholes", "segtriangles", "phi-check"])
    gr.add_argument("--k", type=int, default=4)
    gr.add_argument("--max-k", type=int, default=grid.DEFAULT_MAX_K)
    gr.add_argument("--p")
    gr.add_argument("--q")

    r = sub.add_parser("relations", parents=[common])
    r.add_argument("--k", type=int, required=True)
    r.add_argument("--class", dest="cls", default="general", choices=[x.value for x in GonClass])
    r.add_argument("--strategy", default="grid:6", help="grid:M | random:N:SEED | db:FILE")
    r.add_argument("--objective", default="tight", choices=["tight", "upper", "lower"])
    r.add_argument("--c4", default="lower", help="lower | upper | a rational such as 379972/1000000")

    b = sub.add_parser("bounds", parents=[common])
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--n", type=int)
    b.add_argument("--T", type=int)

    v = sub.add_parser("verify", parents=[common])
    v.add_argument("suite", nargs="?", default="all", choices=sorted(harness.SUITES) + ["all"])
    v.add_argument("--k7-patience", type=int, default=0)
    v.add_argument("--db9", help="order-type database file for n=9")
    return p


def _params(a) -> dict:
    skip = {"command", "timeout_secs", "no_timing"}
    return {k: v for k, v in sorted(vars(a).items()) if k not in skip}


def main(argv=None) -> int:
    a = build_parser().parse_args(argv)
    if a.timeout_secs and a.timeout_secs > 0:
        def on_alarm(signum, frame):
            raise _Timeout()
        signal.signal(signal.SIGALRM, on_alarm)
        signal.setitimer(signal.ITIMER_REAL, a.timeout_secs)
    t0 = time.perf_counter()
    try:
        results, ok = COMMANDS[a.command](a)
    except _Timeout:
        print(json.dumps({"command": a.command, "error": f"timed out after {a.timeout_secs} s"}), file=sys.stderr)
        return 3
    except (GeometryError, ValueError, OSError) as e:
        print(json.dumps({"command": a.command, "error": str(e)}), file=sys.stderr)
        return 2
    finally:
        if a.timeout_secs and a.timeout_secs > 0:
            signal.setitimer(signal.ITIMER_REAL, 0)
    if results is not None:
        envelope = {
            "tool_version": __version__,
            "command": a.command,
            "params": _params(a),
            "results": results,
            "runtime_ms": None if a.no_timing else int((time.perf_counter() - t0) * 1000),
        }
        print(json.dumps(envelope, indent=2, sort_keys=True, default=_json_default))
    return 0 if ok else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
