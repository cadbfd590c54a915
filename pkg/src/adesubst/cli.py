"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 bad usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import checks, fock, parts, rootsys, subst, theta
from .cyclo import Cyclo
from .series import MultiSeries

FORMATS = ("json", "csv", "pretty")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# output


def _coeff_text(c: Cyclo) -> str:
    if c.is_rational():
        return str(c.as_fraction())
    return json.dumps(c.to_json(), separators=(",", ":"))


def _coeff_pretty(c: Cyclo) -> str:
    return str(c) if c.is_rational() else f"{c}  {_coeff_text(c)}"


def render_series(s: MultiSeries, fmt: str) -> str:
    if fmt == "json":
        return s.dumps()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([f"v{i}" for i in s.variables] + ["coeff"])
        for e, c in s.items():
            w.writerow(list(e) + [_coeff_text(c)])
        return buf.getvalue().rstrip("\n")
    lines = [f"variables {list(s.variables)}, truncation {s.truncation}"]
    for e, c in s.items():
        mono = " + ".join(f"{x}α{i}" if x != 1 else f"α{i}" for i, x in zip(s.variables, e) if x)
        lines.append(f"  {'e^-(' + mono + ')' if mono else '1'}: {_coeff_pretty(c)}")
    return "\n".join(lines)


def render_qseries(q: theta.QSeries, fmt: str) -> str:
    if fmt == "json":
        return q.dumps()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["exponent", "coefficient"])
        for e, c in q.items():
            w.writerow([str(e), _coeff_text(c)])
        return buf.getvalue().rstrip("\n")
    return "\n".join(f"q^{e}: {_coeff_pretty(c)}" for e, c in q.items())


def render_rows(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, separators=(",", ":"), ensure_ascii=False)
    if not rows:
        return ""
    keys = list(rows[0])
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(keys)
        for r in rows:
            w.writerow([json.dumps(r[k]) if isinstance(r[k], (list, dict)) else r[k] for k in keys])
        return buf.getvalue().rstrip("\n")
    return "\n".join("  ".join(f"{k}={r[k]}" for k in keys) for r in rows)


# ---------------------------------------------------------------------------
# argument helpers


def _diagram(text: str) -> rootsys.Diagram:
    try:
        return rootsys.parse_diagram(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _affine(text: str) -> rootsys.Diagram:
    d = _diagram(text)
    if not d.affine:
        raise UsageError(f"{text} is not an affine diagram (add a trailing ~)")
    return d


def _iplus(text: str, d: rootsys.Diagram, proper: bool = True) -> frozenset[int]:
    try:
        s = rootsys.parse_subset(text, d)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if not s:
        raise UsageError("I+ must be nonempty")
    if proper and s == frozenset(d.vertices):
        raise UsageError("I+ must be a proper subset of the vertices")
    return s


def _type_a(d: rootsys.Diagram) -> int:
    if d.family != "A":
        raise UsageError("partition enumeration is only available in type A; use the theta command")
    return d.rank


def _partition(text: str) -> parts.Partition:
    try:
        return parts.parse_partition(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _labels(n: int, text: str) -> frozenset[int]:
    return _iplus(text, rootsys.build_diagram("A", n, True), proper=False)


# ---------------------------------------------------------------------------
# commands


def cmd_describe(args) -> int:
    d = _diagram(args.type)
    rows = rootsys.numbering_table(d)
    if args.format == "pretty":
        print(f"{d.name}: vertices {list(d.vertices)}")
    print(render_rows(rows, args.format))
    return 0


def cmd_subst(args) -> int:
    d = _affine(args.type)
    Ip = _iplus(args.iplus, d)
    sub = subst.build(d, frozenset(d.vertices) - Ip)
    rows = subst.describe(sub)
    c = subst.c_constant(sub, subst.fundamental(0))
    if args.format == "json":
        print(json.dumps({
            "images": rows,
            "c_Lambda0": c.to_json(),
            "lambda_fin": {str(j): str(x) for j, x in sub.lam_fin.items()},
        }, separators=(",", ":"), ensure_ascii=False))
    else:
        print(render_rows(rows, args.format))
        if args.format == "pretty":
            print(f"c(Λ0) = {_coeff_pretty(c)}")
    return 0


def cmd_series(args) -> int:
    d = _affine(args.type)
    n = _type_a(d)
    if args.kind == "full":
        s = parts.enumerate_Z_full(n, args.truncate)
    else:
        if args.iplus is None:
            raise UsageError("series quot needs --iplus")
        s = parts.enumerate_Z_quot(n, _iplus(args.iplus, d), args.truncate)
    print(render_series(s, args.format))
    return 0


def cmd_theta(args) -> int:
    d = _affine(args.type)
    if args.kind == "full":
        s = theta.theta_full(d, args.truncate)
    else:
        if args.iplus is None:
            raise UsageError("theta quot needs --iplus")
        s = theta.theta_quot(d, _iplus(args.iplus, d), args.truncate)
    print(render_series(s, args.format))
    return 0


def cmd_qseries(args) -> int:
    d = _affine(args.type)
    Ip = _iplus(args.iplus, d)
    s = theta.theta_quot(d, Ip, args.order)
    q = theta.q_specialize(s, rootsys.marks(d))
    print(render_qseries(q, args.format))
    return 0


def cmd_parts(args) -> int:
    n = args.n
    if n < 1:
        raise UsageError("--n must be at least 1")
    Ip = _labels(n, args.iplus)
    if args.action == "project":
        lam = _partition(args.partition)
        mu = parts.project(lam, Ip, n)
        rows = [{
            "partition": parts.format_partition(lam),
            "projection": parts.format_partition(mu),
            "multiweight": list(parts.multiweight(mu, n)),
        }]
    elif args.action == "fiber":
        mu = _partition(args.partition)
        if not parts.is_generated(mu, Ip, n):
            raise UsageError(f"{args.partition} is not generated by I+={sorted(Ip)}")
        rows = [
            {"partition": parts.format_partition(lam), "size": parts.size(lam)}
            for lam in parts.fiber(mu, Ip, n)
        ]
    else:
        weights = tuple(1 if c in Ip else 0 for c in range(n + 1))
        found = [
            lam for lam, _ in parts.partitions_by_weight(n, weights, args.bound)
            if parts.is_generated(lam, Ip, n)
        ]
        rows = [
            {
                "partition": parts.format_partition(lam),
                "weight": list(parts.restrict_weight(parts.multiweight(lam, n), Ip)),
            }
            for lam in sorted(found, key=lambda p: (parts.size(p), p))
        ]
    print(render_rows(rows, args.format))
    return 0


def cmd_fock(args) -> int:
    if args.action == "verify":
        if args.n < 1:
            raise UsageError("--n must be at least 1")
        failures = fock.check_relations(args.n, args.samples, args.max_boxes, seed=args.seed)
        for f in failures:
            print(f"FAIL {f}")
        print(f"{'PASS' if not failures else 'FAIL'} fock relations: n={args.n} "
              f"samples={args.samples} max_boxes={args.max_boxes} seed={args.seed}")
        return 0 if not failures else 1
    try:
        M = fock.rectangle_module(args.n, args.a, args.b, args.c)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    problems = M.relation_failures()
    report = {
        "n": M.n, "a": M.a, "b": M.b, "c": M.c,
        "width": M.width, "height": M.height, "labels": M.labels,
        "dimension": M.dimension,
        "dimension_is_binomial": M.dimension_ok(),
        "highest_weight": M.highest_weight_ok(),
        "relations": not problems,
        "singular_vectors": M.singular_dimension(),
    }
    print(render_rows([report], args.format))
    ok = report["dimension_is_binomial"] and report["highest_weight"] and not problems
    return 0 if ok and report["singular_vectors"] == 1 else 1


def cmd_verify(args) -> int:
    try:
        results = checks.run_suite(args.suite, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    failed = 0
    for c, ok, detail in results:
        line = f"{'PASS' if ok else 'FAIL'} {c.suite}/{c.name}: {checks.INVARIANTS[c.name]}"
        if not ok:
            failed += 1
            line += f"\n    {detail}"
        print(line)
    print(f"{len(results) - failed}/{len(results)} checks passed (suite={args.suite}, seed={args.seed})")
    return 0 if not failed else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="pretty")
    common.add_argument("--seed", type=int, default=0)

    ap = argparse.ArgumentParser(
        prog="adesubst",
        description="Euler-characteristic series of affine ADE quiver varieties and their checks.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("describe", parents=[common], help="vertex numbering, neighbours and marks")
    p.add_argument("--type", required=True, help="diagram, e.g. A2~, D4~, E6")
    p.set_defaults(func=cmd_describe)

    p = sub.add_parser("subst", parents=[common], help="root-of-unity substitution")
    p.add_argument("action", choices=["describe"])
    p.add_argument("--type", required=True)
    p.add_argument("--iplus", required=True, help="comma-separated vertices kept as variables")
    p.set_defaults(func=cmd_subst)

    p = sub.add_parser("series", parents=[common], help="series by partition enumeration (type A)")
    p.add_argument("kind", choices=["full", "quot"])
    p.add_argument("--type", required=True)
    p.add_argument("--iplus")
    p.add_argument("--truncate", type=int, default=6)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("theta", parents=[common], help="series from the theta formula")
    p.add_argument("kind", choices=["full", "quot"])
    p.add_argument("--type", required=True)
    p.add_argument("--iplus")
    p.add_argument("--truncate", type=int, default=6)
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("qseries", parents=[common], help="q-specialized quotient series")
    p.add_argument("--type", required=True)
    p.add_argument("--iplus", required=True)
    p.add_argument("--order", type=int, default=20)
    p.set_defaults(func=cmd_qseries)

    p = sub.add_parser("parts", parents=[common], help="colored partitions")
    p.add_argument("action", choices=["project", "fiber", "enumerate"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--iplus", required=True)
    p.add_argument("--partition", default="")
    p.add_argument("--bound", type=int, default=4)
    p.set_defaults(func=cmd_parts)

    p = sub.add_parser("fock", parents=[common], help="Fock space operators")
    p.add_argument("action", choices=["verify", "rectangle"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=300)
    p.add_argument("--max-boxes", type=int, default=20)
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--b", type=int, default=0)
    p.add_argument("--c", type=int, default=0)
    p.set_defaults(func=cmd_fock)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=list(checks.SUITES) + ["all"])
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    for name in ("truncate", "order", "bound", "samples", "max_boxes"):
        if getattr(args, name, 0) is not None and getattr(args, name, 0) < 0:
            ap.error(f"--{name.replace('_', '-')} must be nonnegative")
    try:
        return args.func(args)
    except UsageError as exc:
        ap.error(str(exc))
    except ArithmeticError as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
