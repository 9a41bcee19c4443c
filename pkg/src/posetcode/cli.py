"""Command-line front end.

Exit status: 0 success, 2 bad parameters, 3 a checked property failed,
4 the enumeration budget was exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict
from fractions import Fraction
from pathlib import Path

from . import sweep as sweeps
from .agcodes import (
    AGCodeSpec,
    MdsInequalityParams,
    build_ag_code,
    clipped_column_weights,
    mds_inequality,
    parse_divisor,
    parse_places,
)
from .codes import (
    BudgetExceeded,
    DuplicatePoints,
    ParameterOutOfRange,
    RSCodeSpec,
    build_code,
    compare_metrics,
    default_budget,
    min_distance,
    singleton_report,
    weight_enumerator,
)
from .gf import FieldError, parse_field
from .poset import BottleneckShape, PosetError, bottleneck, chain_union
from .serialize import CodeFileError, load_code, save_code
from .worked import GoldenMismatch, run as run_example

EXIT_OK, EXIT_PARAM, EXIT_PROPERTY, EXIT_BUDGET = 0, 2, 3, 4


# -- helpers -----------------------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _frac(x) -> str:
    return str(x) if not isinstance(x, Fraction) or x.denominator != 1 else str(x.numerator)


def _budget(args) -> int:
    return args.budget if args.budget is not None else default_budget()


# -- worked example -----------------------------------------------------------------


def cmd_worked_example(args) -> int:
    res = run_example(args.golden)
    enum = res["enumerator"]
    if args.format == "json":
        doc = {
            "field": 5, "points": [1, 3, 4], "s": 2, "t": 4, "b_row": 1,
            "rows": [asdict(r) for r in res["rows"]],
            "length": res["length"], "dim": res["dim"], "distance": res["distance"],
            "weight_enumerator": {str(k): v for k, v in enum.as_dict().items()},
            "weight_polynomial": enum.polynomial(),
        }
        _emit(args, json.dumps(doc, indent=2) + "\n")
        return EXIT_OK
    head = ("polynomial", "hyperderivative", "codeword", "weight")
    table = [head] + [(r.polynomial, r.hyperderivative, r.codeword, str(r.weight)) for r in res["rows"]]
    widths = [max(len(row[i]) for row in table) for i in range(4)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in table]
    lines.append("")
    lines.append(f"{len(res['rows'])} codewords, parameters [{res['length']},{res['dim']},{res['distance']}]")
    lines.append(f"weight enumerator {enum.polynomial()}")
    lines.append("all rows match the golden table")
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


# -- sweep ----------------------------------------------------------------------------


def cmd_sweep(args) -> int:
    grid: dict = {}
    if args.q:
        grid["qs"] = args.q
    if args.s:
        grid["s_values"] = args.s
    if args.grid == "bottleneck":
        grid.update(t_rule=args.t_rule, extra_t=args.extra_t)
    elif args.extra_t or args.t_rule != "stated":
        raise ParameterOutOfRange("--t-rule and --extra-t apply to the bottleneck grid only")
    report = sweeps.SWEEPS[args.grid](workers=args.workers, budget=_budget(args), **grid)
    _emit(args, report.text())
    return EXIT_OK if report.ok else EXIT_PROPERTY


# -- code ------------------------------------------------------------------------------


def cmd_code_build(args) -> int:
    F = parse_field(args.q)
    code = build_code(RSCodeSpec(F, args.points, args.s, args.t, args.b_row))
    save_code(code, args.out)
    print(f"wrote {args.out}: {code!r}")
    return EXIT_OK


def _weights_text(enum, fmt: str) -> str:
    counts = enum.as_dict()
    if fmt == "json":
        return json.dumps({"counts": {str(k): v for k, v in counts.items()}, "total": enum.total,
                           "polynomial": enum.polynomial(),
                           "min_distance": enum.min_nonzero_weight}, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["weight", "count"])
    w.writerows(counts.items())
    return buf.getvalue()


def cmd_code_weights(args) -> int:
    code = load_code(args.code)
    enum = weight_enumerator(code, _budget(args), args.workers)
    _emit(args, _weights_text(enum, args.format))
    return EXIT_OK


def cmd_code_check_mds(args) -> int:
    code = load_code(args.code)
    if code.dim == 0:
        raise ParameterOutOfRange("the zero code has no minimum distance")
    rep = singleton_report(code, min_distance(code, _budget(args), args.workers))
    if args.format == "json":
        text = json.dumps(rep.as_dict(), indent=2) + "\n"
    else:
        text = (f"n={rep.n} k={rep.k} d={rep.d} singleton slack={rep.slack} "
                f"{'MDS' if rep.mds else 'not MDS'}\n")
    _emit(args, text)
    return EXIT_PROPERTY if args.expect_mds and not rep.mds else EXIT_OK


def cmd_code_compare(args) -> int:
    F = parse_field(args.q)
    cmp = compare_metrics(F, args.points, args.s, args.t, _budget(args), args.workers)
    rows = cmp.rows()
    if args.format == "json":
        text = json.dumps({
            "r": cmp.r, "s": cmp.s, "t": cmp.t, "agrees_with_closed_form": cmp.agrees,
            "rows": [{"quantity": a, "C1": _frac(b), "C2": _frac(c), "remark": d} for a, b, c, d in rows],
        }, indent=2) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["quantity", "C1", "C2", "remark"])
        w.writerows((a, _frac(b), _frac(c), d) for a, b, c, d in rows)
        text = buf.getvalue()
    else:
        n1, n2 = cmp.nrt, cmp.bottleneck
        lines = [f"C1 (NRT):        [{n1.length},{n1.dim},{n1.distance}]",
                 f"C2 (bottleneck): [{n2.length},{n2.dim},{n2.distance}]", ""]
        wa = max(len(r[0]) for r in rows)
        for a, b, c, d in rows:
            lines.append(f"{a.ljust(wa)}  {_frac(b):>6}  {_frac(c):>6}  {d}")
        lines.append("")
        lines.append("matches closed form" if cmp.agrees else "DIFFERS from closed form")
        text = "\n".join(lines) + "\n"
    _emit(args, text)
    return EXIT_OK if cmp.agrees else EXIT_PROPERTY


# -- poset ------------------------------------------------------------------------------


def cmd_poset_show(args) -> int:
    P = chain_union(args.s, args.r) if args.b_row is None else bottleneck(BottleneckShape(args.s, args.r, args.b_row))
    _emit(args, P.to_dot() if args.format == "dot" else P.to_json())
    return EXIT_OK


# -- ag -----------------------------------------------------------------------------------


def cmd_ag_build(args) -> int:
    F = parse_field(args.q)
    places = parse_places(F, args.places)
    code = build_ag_code(AGCodeSpec(F, places, parse_divisor(args.divisor, places), args.s),
                         constrained=not args.unconstrained)
    save_code(code, args.out)
    print(f"wrote {args.out}: {code!r}")
    return EXIT_OK


def cmd_ag_verify(args) -> int:
    code = load_code(args.code)
    spec = code.spec
    if not isinstance(spec, AGCodeSpec):
        raise CodeFileError(f"{args.code} does not hold an AG code")
    constrained = code.meta.get("constrained", True)
    r, s, deg = spec.r, spec.s, spec.degree
    d = min_distance(code, _budget(args), args.workers) if code.dim else None
    checks = [("d >= rs - deg G", d is not None and d >= r * s - deg, f"{d} >= {r * s - deg}")]
    if constrained:
        checks.append(("dim >= deg G - r + 2", code.dim >= deg - r + 2, f"{code.dim} >= {deg - r + 2}"))
        total = None if d is None else code.dim + d
        checks.append(("dim + d = rs - r + 2", total == r * s - r + 2, f"{total} = {r * s - r + 2}"))
    else:
        checks.append(("dim >= deg G + 1", code.dim >= deg + 1, f"{code.dim} >= {deg + 1}"))
    diag = [{"basis": str(f), "clipped_column_weights": clipped_column_weights(f, spec)} for f in code.basis]
    ok = all(c[1] for c in checks)
    if args.format == "json":
        text = json.dumps({
            "length": code.length, "dim": code.dim, "distance": d, "degree": deg, "r": r, "s": s,
            "constrained": constrained,
            "checks": [{"bound": a, "holds": b, "values": c} for a, b, c in checks],
            "basis_diagnostics": diag, "ok": ok,
        }, indent=2) + "\n"
    else:
        lines = [f"AG code: length {code.length}, dim {code.dim}, distance {d}, deg G = {deg}, r = {r}, s = {s}"]
        lines += [f"  {'PASS' if b else 'FAIL'}  {a}: {c}" for a, b, c in checks]
        lines += [f"  basis {x['basis']}: clipped column weights {x['clipped_column_weights']}" for x in diag]
        text = "\n".join(lines) + "\n"
    _emit(args, text)
    return EXIT_OK if ok else EXIT_PROPERTY


def cmd_ag_mds_ineq(args) -> int:
    rep = mds_inequality(MdsInequalityParams(args.g, args.r, args.s, args.k, args.h, args.Ak))
    if args.format == "json":
        text = json.dumps(rep.as_dict(), indent=2) + "\n"
    else:
        lines = [f"C(r+s+k-g, r-1) * A_k = {rep.lhs}  vs  h = {rep.rhs}: "
                 f"{'holds' if rep.holds else 'does not hold'}"]
        for v in rep.violations:
            lines.append(f"hypothesis violated: {v}")
        lines.append(f"verdict: {str(rep.verdict).lower()}")
        if rep.verdict:
            lines.append(f"implied distance bound: d >= {rep.distance_bound}")
            lines.append(f"implied dimension bound (as stated): dim >= {rep.dim_bound_stated}")
            lines.append(f"dimension bound from deg G = {rep.divisor_degree}: dim >= {rep.dim_bound_from_degree}")
            if rep.mds:
                lines.append("g = k - 1: the code is MDS")
        lines += [f"note: {n}" for n in rep.notes()]
        text = "\n".join(lines) + "\n"
    _emit(args, text)
    return EXIT_OK


# -- parser ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=_positive, default=None,
                        help="maximum number of codewords to enumerate (env POSETCODE_BUDGET)")
    common.add_argument("--workers", type=_positive, default=1, help="worker processes for enumeration")
    common.add_argument("--out", help="write the table to this file instead of stdout")

    p = argparse.ArgumentParser(prog="posetcode", description="Evaluation codes in NRT and bottleneck poset metrics.")
    sub = p.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("worked-example", parents=[common], help="reproduce the GF(5) worked example")
    ex.add_argument("--format", choices=("pretty", "json"), default="pretty")
    ex.add_argument("--golden", help="golden CSV to compare against (default: the bundled table)")
    ex.set_defaults(func=cmd_worked_example)

    sw = sub.add_parser("sweep", parents=[common], help="exhaustive parameter sweeps")
    sw.add_argument("--grid", choices=tuple(sweeps.SWEEPS), default="bottleneck")
    sw.add_argument("--q", type=_int_list, help="field orders, e.g. 3,4,5")
    sw.add_argument("--s", type=_int_list, help="row counts, e.g. 2,3")
    sw.add_argument("--t-rule", choices=("stated", "strict"), default="stated",
                    help="lowest t: r(b_row-1)+1 (stated) or r*b_row (strict)")
    sw.add_argument("--extra-t", type=int, default=0, help="extend the t range by this much on both ends")
    sw.set_defaults(func=cmd_sweep)

    code = sub.add_parser("code", help="Reed-Solomon type codes").add_subparsers(dest="action", required=True)
    b = code.add_parser("build", parents=[common])
    b.add_argument("--q", required=True, help='field, e.g. "5" or "2^3"')
    b.add_argument("--points", type=_int_list, required=True, help="evaluation points as element codes")
    b.add_argument("--s", type=_positive, required=True)
    b.add_argument("--t", type=_positive, required=True)
    b.add_argument("--b-row", type=_positive, default=None, help="constant row; omit for the NRT code")
    b.set_defaults(func=cmd_code_build)
    w = code.add_parser("weights", parents=[common])
    w.add_argument("code")
    w.add_argument("--format", choices=("csv", "json"), default="csv")
    w.set_defaults(func=cmd_code_weights)
    m = code.add_parser("check-mds", parents=[common])
    m.add_argument("code")
    m.add_argument("--expect-mds", action="store_true", help="exit 3 unless the code is MDS")
    m.add_argument("--format", choices=("pretty", "json"), default="pretty")
    m.set_defaults(func=cmd_code_check_mds)
    c = code.add_parser("compare", parents=[common])
    c.add_argument("--q", required=True)
    c.add_argument("--points", type=_int_list, required=True)
    c.add_argument("--s", type=_positive, required=True)
    c.add_argument("--t", type=_positive, required=True)
    c.add_argument("--format", choices=("pretty", "csv", "json"), default="pretty")
    c.set_defaults(func=cmd_code_compare)

    poset = sub.add_parser("poset", help="metric posets").add_subparsers(dest="action", required=True)
    ps = poset.add_parser("show", parents=[common])
    ps.add_argument("--s", type=_positive, required=True)
    ps.add_argument("--r", type=_positive, required=True)
    ps.add_argument("--b-row", type=int, default=None, help="collapsed row; omit for the disjoint chains")
    ps.add_argument("--format", choices=("dot", "json"), default="dot")
    ps.set_defaults(func=cmd_poset_show)

    ag = sub.add_parser("ag", help="genus-0 AG codes").add_subparsers(dest="action", required=True)
    ab = ag.add_parser("build", parents=[common])
    ab.add_argument("--q", required=True)
    ab.add_argument("--places", required=True, help='evaluation places, e.g. "1,3,4" or "1,2,inf"')
    ab.add_argument("--divisor", required=True, help='e.g. "P1:0,P2:0,P3:0,Pinf:3"')
    ab.add_argument("--s", type=_positive, required=True)
    ab.add_argument("--unconstrained", action="store_true", help="use all of L(G) with the NRT metric")
    ab.set_defaults(func=cmd_ag_build)
    av = ag.add_parser("verify", parents=[common])
    av.add_argument("code")
    av.add_argument("--format", choices=("pretty", "json"), default="pretty")
    av.set_defaults(func=cmd_ag_verify)
    mi = ag.add_parser("mds-ineq", parents=[common])
    for name in ("--g", "--r", "--s", "--k", "--h", "--Ak"):
        mi.add_argument(name, type=int, required=True)
    mi.add_argument("--format", choices=("pretty", "json"), default="pretty")
    mi.set_defaults(func=cmd_ag_mds_ineq)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except GoldenMismatch as exc:
        print(f"golden mismatch: {exc}", file=sys.stderr)
        return EXIT_PROPERTY
    except (ParameterOutOfRange, DuplicatePoints, FieldError, PosetError, CodeFileError,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())
