"""``klr`` command line.

Exit status: 0 on success, 1 when a verification finds a counterexample,
2 on usage or validation errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Sequence

from . import flag_oracle, kltables
from .coxeter import CartanType, CoxeterSystem, Element, format_word, get_system, label, parse_word
from .hecke import HeckeAlgebra
from .kltables import KLTable, TableStore
from .multiplicity import SUITES, Multiplicities, verify_suite

FORMATS = ("text", "csv", "json")


class UsageError(Exception):
    pass


def _rows_out(columns: Sequence[str], rows: list[Sequence], fmt: str, text: str) -> str:
    if fmt == "text":
        return text
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        w.writerows(rows)
        return buf.getvalue()
    return json.dumps([dict(zip(columns, r)) for r in rows], indent=1) + "\n"


def _system(args) -> CoxeterSystem:
    return get_system(CartanType.parse(args.type))


def _element(W: CoxeterSystem, text: str, name: str) -> Element:
    word = parse_word(text)
    x = W.element(word)
    if x.word != word:
        print(f"note: {name}={text or 'e'} is {label(x)} in canonical form", file=sys.stderr)
    return x


def _tables(args, W: CoxeterSystem) -> tuple[KLTable, KLTable | None]:
    if not getattr(args, "table", None):
        if getattr(args, "dual_table", None):
            raise UsageError("--dual-table needs --table")
        return kltables.default_table(W), None
    table = kltables.load(args.table, W.cartan)
    dual = None
    if args.dual_table:
        dual = kltables.load(args.dual_table, W.cartan.dual())
    else:
        dual = kltables.dual_table(table, TableStore())
    return table, dual


# -- commands -----------------------------------------------------------------


def cmd_group(args) -> int:
    W = _system(args)
    w0 = W.longest_element()
    z = _element(W, args.z, "z") if args.z is not None else W.identity
    x = _element(W, args.x, "x") if args.x is not None else w0
    listing = W.interval(z, x) if (args.z is not None or args.x is not None or args.list) else []
    cols = ("element", "length")
    rows = [(format_word(y.word), len(y)) for y in listing]
    text = [f"type {W.cartan}", f"order {W.order()}", f"w0 {label(w0)} (length {len(w0)})"]
    if listing:
        text.append(f"interval [{label(z)}, {label(x)}]: {len(listing)} elements")
        text.extend(f"  {label(y)}" for y in listing)
    print(_rows_out(cols, rows, args.format, "\n".join(text) + "\n"), end="")
    return 0


def cmd_kl(args) -> int:
    W = _system(args)
    table, _ = _tables(args, W)
    if (args.y is None) != (args.x is None):
        raise UsageError("give both --y and --x, or neither for a full dump")
    if args.y is not None:
        y, x = _element(W, args.y, "y"), _element(W, args.x, "x")
        entries = [(y.word, x.word, table.h(y, x))]
        text = f"{table.h(y, x)}\n"
    else:
        entries = list(table.items())
        text = "".join(f"{format_word(yw) or 'e'} | {format_word(xw) or 'e'} : {p}\n"
                       for yw, xw, p in entries)
    rows = [(format_word(yw), format_word(xw), str(p)) for yw, xw, p in entries]
    print(_rows_out(("y", "x", "polynomial"), rows, args.format, text), end="")
    return 0


def cmd_rpoly(args) -> int:
    W = _system(args)
    y, x = _element(W, args.y, "y"), _element(W, args.x, "x")
    r = HeckeAlgebra.of(W).r_poly(y, x)
    if args.as_R:
        R = r.to_R(len(x) - len(y))
        value = _q_poly(R)
    else:
        value = str(r)
    rows = [(format_word(y.word), format_word(x.word), value)]
    print(_rows_out(("y", "x", "R" if args.as_R else "r"), rows, args.format, value + "\n"), end="")
    return 0


def _q_poly(R: dict[int, int]) -> str:
    if not R:
        return "0"
    from .laurent import LaurentPoly
    return str(LaurentPoly(R)).replace("v", "q")


def cmd_mult(args) -> int:
    W = _system(args)
    table, dual = _tables(args, W)
    z, x = _element(W, args.z, "z"), _element(W, args.x, "x")
    calc = Multiplicities(table, dual)
    m = calc.jh_poly(z, x)
    value = str(m.ungraded()) if args.ungraded else str(m.poly)
    rows = [(format_word(z.word), format_word(x.word), value)]
    col = "multiplicity" if args.ungraded else "polynomial"
    print(_rows_out(("z", "x", col), rows, args.format, value + "\n"), end="")
    return 0


def cmd_poincare(args) -> int:
    W = _system(args)
    table, dual = _tables(args, W)
    z, x = _element(W, args.z, "z"), _element(W, args.x, "x")
    p = Multiplicities(table, dual).richardson_poincare(z, x)
    rows = [(format_word(z.word), format_word(x.word), str(p))]
    print(_rows_out(("z", "x", "polynomial"), rows, args.format, f"{p}\n"), end="")
    return 0


def cmd_verify(args) -> int:
    W = _system(args)
    table, dual = _tables(args, W)
    report = verify_suite(W, table, args.suite, dual=dual, jobs=args.jobs)
    out = {"text": report.to_text, "csv": report.to_csv, "json": report.to_json}[args.format]()
    if args.output:
        Path(args.output).write_text(out, encoding="utf-8")
        print(report.to_text(), end="")
    else:
        print(out, end="")
    return 0 if report.ok else 1


def cmd_oracle(args) -> int:
    n, q = args.n, args.q
    W = get_system(CartanType("A", n - 1))
    tally = flag_oracle.richardson_tally(n, q, jobs=args.jobs)
    rows = []
    mismatches = 0
    for y in W.enumerate():
        for yp in W.enumerate():
            count = tally.get((y.word, yp.word), 0)
            row = [format_word(y.word), format_word(yp.word), q, count]
            if args.compare:
                R = flag_oracle.r_value(y, yp, q)
                verdict = "OK" if R == count else "MISMATCH"
                mismatches += verdict != "OK"
                row += [R, verdict]
            rows.append(row)
    cols = ["y", "y_prime", "q", "count"] + (["R_value", "verdict"] if args.compare else [])
    text_rows = [f"({', '.join(str(c) if i > 1 else (c or 'e') for i, c in enumerate(r))})"
                 for r in rows]
    total = sum(tally.values())
    summary = f"{total} flags in F_{q}^{n} (expected {flag_oracle.flag_count(n, q)})"
    if args.compare:
        summary += f"; {len(rows) - mismatches}/{len(rows)} pairs agree with R(q)"
    text = "\n".join([f"# {', '.join(cols)}"] + text_rows + [summary]) + "\n"
    print(_rows_out(cols, rows, args.format, text), end="")
    return 1 if mismatches else 0


def cmd_table(args) -> int:
    if args.action == "validate":
        if not args.file:
            raise UsageError("table validate needs a FILE")
        expected = CartanType.parse(args.type) if args.type else None
        t = kltables.load(args.file, expected)
        print(f"valid: {t.cartan} ell={t.ell}, {len(t.polys)} nonzero entries")
        return 0
    if args.file:
        t = kltables.load(args.file, CartanType.parse(args.type) if args.type else None)
    else:
        if not args.type:
            raise UsageError("table export needs --type or a FILE")
        t = kltables.default_table(CartanType.parse(args.type))
    text = kltables.dumps(t)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        print(text, end="")
    return 0


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="klr", description=(
        "Kazhdan-Lusztig combinatorics, tilting multiplicities and Richardson "
        "Poincare polynomials for finite Weyl groups."))
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def common(sp, type_required=True, tables=False):
        sp.add_argument("--type", required=type_required, help="Cartan type, e.g. A3, B2")
        sp.add_argument("--format", choices=FORMATS, default="text")
        if tables:
            sp.add_argument("--table", metavar="FILE", help="ell > 0 table (JSON); default ell = 0")
            sp.add_argument("--dual-table", metavar="FILE",
                            help="table for the Langlands dual type")
        return sp

    sp = common(sub.add_parser("group", help="order, w0 and Bruhat intervals"))
    sp.add_argument("--z", help="lower end of the interval (word)")
    sp.add_argument("--x", help="upper end of the interval (word)")
    sp.add_argument("--list", action="store_true", help="list all elements")
    sp.set_defaults(func=cmd_group)

    sp = common(sub.add_parser("kl", help="KL polynomial h_{y,x} or a full table dump"),
                tables=True)
    sp.add_argument("--y")
    sp.add_argument("--x")
    sp.set_defaults(func=cmd_kl)

    sp = common(sub.add_parser("rpoly", help="r-polynomial r_{y,x}"))
    sp.add_argument("--y", required=True)
    sp.add_argument("--x", required=True)
    sp.add_argument("--as-R", action="store_true", help="print R_{y,x}(q) instead")
    sp.set_defaults(func=cmd_rpoly)

    sp = common(sub.add_parser("mult", help="graded multiplicity [T_x : L_z<i>]"), tables=True)
    sp.add_argument("--z", required=True)
    sp.add_argument("--x", required=True)
    sp.add_argument("--ungraded", action="store_true", help="evaluate at v = 1")
    sp.set_defaults(func=cmd_mult)

    sp = common(sub.add_parser("poincare", help="Poincare polynomial on X^z_x"), tables=True)
    sp.add_argument("--z", required=True)
    sp.add_argument("--x", required=True)
    sp.set_defaults(func=cmd_poincare)

    sp = common(sub.add_parser("verify", help="exhaustive identity checks"), tables=True)
    sp.add_argument("--suite", choices=SUITES + ("all",), default="all")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--output", metavar="FILE", help="write the report here")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("oracle", help="finite-field point counts (type A)")
    sp.add_argument("--n", type=int, required=True, help="flags in F_q^n")
    sp.add_argument("--q", type=int, required=True, help="field size (prime power)")
    sp.add_argument("--compare", action="store_true", help="compare with R_{y,y'}(q)")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--format", choices=FORMATS, default="text")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("table", help="validate or export KL tables")
    sp.add_argument("action", choices=("validate", "export"))
    sp.add_argument("file", nargs="?", help="table file (JSON)")
    sp.add_argument("--type", help="expected / exported Cartan type")
    sp.add_argument("--output", metavar="FILE")
    sp.set_defaults(func=cmd_table)
    return p


_EXPECTED = (
    UsageError,
    ValueError,
    LookupError,
    kltables.TableSchemaError,
    kltables.TableInvariantError,
    OSError,
)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _EXPECTED as exc:
        print(f"klr: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
