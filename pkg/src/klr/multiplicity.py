"""Graded tilting multiplicities and Richardson Poincare polynomials.

With ``hd`` the table of the Langlands dual type and ``w0`` the longest
element, the graded multiplicity of ``L_z<i>`` in ``T_x`` is

    sum_{z <= y <= x} hd_{w0 y, w0 z}(v) * hd_{y,x}(v^-1)                (bar form)
  = sum_{z <= y <= y' <= x} hd_{w0 y, w0 z}(v) r_{y,y'}(v) hd_{y',x}(v)   (r form)

and the Poincare polynomial of the geometric extension on the Richardson
variety ``X^z_x`` (for the type of the table ``h`` itself) is
``v^(|x|-|z|)`` times the r form evaluated with ``h``.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

from .coxeter import CoxeterSystem, Element, format_word, label
from .hecke import HeckeAlgebra
from .kltables import KLTable, TableStore, dual_table
from .laurent import ZERO, LaurentPoly

__all__ = [
    "EmptyVariety",
    "GradedMultiplicity",
    "Multiplicities",
    "Report",
    "ReportRow",
    "SUITES",
    "jh_poly",
    "jh_poly_r",
    "richardson_poincare",
    "ungraded_mult",
    "verify_suite",
]

log = logging.getLogger(__name__)

SUITES = ("duality", "reciprocity", "parity", "agreement", "positivity")

Word = tuple[int, ...]


class EmptyVariety(ValueError):
    """The Richardson variety ``X^z_x`` is empty because ``z`` is not below ``x``."""


@dataclass(frozen=True)
class GradedMultiplicity:
    z: Element
    x: Element
    poly: LaurentPoly

    def ungraded(self) -> int:
        return int(self.poly.eval(1))


class Multiplicities:
    """Formulas for one table and its dual, with shared memo tables.

    ``table`` supplies ``h`` (used by the Richardson formula); ``dual``
    supplies ``hd`` (used by the multiplicity formulas) and defaults to
    :func:`dual_table` of ``table``.
    """

    def __init__(self, table: KLTable, dual: KLTable | None = None,
                 store: TableStore | None = None):
        self.table = table
        self._dual = dual
        self._store = store
        if dual is not None and (dual.cartan != table.cartan.dual() or dual.ell != table.ell):
            raise ValueError(f"{dual.cartan} (ell={dual.ell}) is not the dual "
                             f"of {table.cartan} (ell={table.ell})")
        self.system: CoxeterSystem = table.system
        self.hecke = HeckeAlgebra.of(self.system)
        self.w0 = self.system.longest_element()
        self._w0x: dict[Element, Element] = {}
        self._inner: dict[tuple[int, Word, Word], LaurentPoly] = {}

    @property
    def dual(self) -> KLTable:
        # resolved on first use: the Richardson formula never needs it
        if self._dual is None:
            self._dual = dual_table(self.table, self._store)
        return self._dual

    def _check(self, *els: Element) -> None:
        for el in els:
            if el.system is not self.system:
                raise ValueError(f"{el!r} does not belong to {self.system!r}")

    def w0_times(self, x: Element) -> Element:
        out = self._w0x.get(x)
        if out is None:
            out = self._w0x[x] = self.system.multiply(self.w0, x)
        return out

    # -- the two sums -----------------------------------------------------

    def _bar_form(self, z: Element, x: Element, tab: KLTable, flip: bool = False) -> LaurentPoly:
        # flip=True evaluates the mirrored sum hd(v^-1) * hd(v)
        w0z = self.w0_times(z)
        total = ZERO
        for y in self.system.interval(z, x):
            left = tab.h(self.w0_times(y), w0z)
            right = tab.h(y, x)
            if flip:
                left = left.bar()
            else:
                right = right.bar()
            total = total + left * right
        return total

    def _inner_sum(self, y: Element, x: Element, tab: KLTable) -> LaurentPoly:
        # sum_{y <= y' <= x} r_{y,y'} h_{y',x}; independent of z
        key = (id(tab), y.word, x.word)
        hit = self._inner.get(key)
        if hit is None:
            hit = ZERO
            for yp in self.system.interval(y, x):
                hit = hit + self.hecke.r_poly(y, yp) * tab.h(yp, x)
            self._inner[key] = hit
        return hit

    def _r_form(self, z: Element, x: Element, tab: KLTable) -> LaurentPoly:
        w0z = self.w0_times(z)
        total = ZERO
        for y in self.system.interval(z, x):
            total = total + tab.h(self.w0_times(y), w0z) * self._inner_sum(y, x, tab)
        return total

    # -- public formulas --------------------------------------------------

    def jh_poly(self, z: Element, x: Element) -> GradedMultiplicity:
        self._check(z, x)
        return GradedMultiplicity(z, x, self._bar_form(z, x, self.dual))

    def jh_poly_mirrored(self, z: Element, x: Element) -> LaurentPoly:
        """The right-hand side of the numerical duality identity."""
        self._check(z, x)
        return self._bar_form(z, x, self.dual, flip=True)

    def jh_poly_r(self, z: Element, x: Element) -> GradedMultiplicity:
        self._check(z, x)
        return GradedMultiplicity(z, x, self._r_form(z, x, self.dual))

    def richardson_poincare(self, z: Element, x: Element) -> LaurentPoly:
        self._check(z, x)
        if not self.system.bruhat_leq(z, x):
            raise EmptyVariety(f"X^z_x is empty: {label(z)} is not <= {label(x)}")
        return self._r_form(z, x, self.table).shift(len(x) - len(z))

    def ungraded_mult(self, z: Element, x: Element) -> int:
        return self.jh_poly(z, x).ungraded()

    # -- identity suites --------------------------------------------------

    def check_pair(self, suite: str, z: Element, x: Element) -> tuple[LaurentPoly, str | None]:
        """Return ``(jh value, None)`` on success or ``(jh value, complaint)``."""
        jh = self.jh_poly(z, x).poly
        if suite == "agreement":
            other = self.jh_poly_r(z, x).poly
            return jh, None if other == jh else f"r form gives {other}"
        if suite == "duality":
            other = self.jh_poly_mirrored(z, x)
            return jh, None if other == jh else f"mirrored sum gives {other}"
        if suite == "reciprocity":
            other = self.jh_poly(self.w0_times(x), self.w0_times(z)).poly.bar()
            return jh, None if other == jh else f"bar(jh(w0x, w0z)) = {other}"
        if suite == "parity":
            d = (len(x) - len(z)) % 2
            if any((e - d) % 2 for e in jh.support):
                return jh, f"exponents not all = {d} mod 2"
            rp = self.richardson_poincare(z, x)
            if any(e % 2 for e in rp.support):
                return jh, f"Poincare polynomial {rp} has odd exponents"
            return jh, None
        if suite == "positivity":
            if any(c < 0 for _, c in jh.items()):
                return jh, "negative coefficient"
            rp = self.richardson_poincare(z, x)
            if any(c < 0 for _, c in rp.items()):
                return jh, f"Poincare polynomial {rp} has a negative coefficient"
            if rp[0] < 1:
                return jh, f"Poincare polynomial {rp} has constant term {rp[0]}"
            if rp[0] != 1:
                log.info("constant term %d for X^%s_%s", rp[0], label(z), label(x))
            return jh, None
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")


def _calc(z: Element, x: Element, table: KLTable, dual: KLTable | None,
          store: TableStore | None) -> Multiplicities:
    if z.system is not x.system:
        raise ValueError("z and x come from different systems")
    calc = Multiplicities(table, dual, store)
    calc._check(z, x)
    return calc


def jh_poly(z: Element, x: Element, table: KLTable, dual: KLTable | None = None,
            store: TableStore | None = None) -> GradedMultiplicity:
    return _calc(z, x, table, dual, store).jh_poly(z, x)


def jh_poly_r(z: Element, x: Element, table: KLTable, dual: KLTable | None = None,
              store: TableStore | None = None) -> GradedMultiplicity:
    return _calc(z, x, table, dual, store).jh_poly_r(z, x)


def richardson_poincare(z: Element, x: Element, table: KLTable) -> LaurentPoly:
    if z.system is not x.system:
        raise ValueError("z and x come from different systems")
    return Multiplicities(table).richardson_poincare(z, x)


def ungraded_mult(z: Element, x: Element, table: KLTable, dual: KLTable | None = None,
                  store: TableStore | None = None) -> int:
    return _calc(z, x, table, dual, store).ungraded_mult(z, x)


# -- reports ------------------------------------------------------------------


@dataclass(frozen=True)
class ReportRow:
    z: str
    x: str
    polynomial: str
    suite: str
    status: str


@dataclass
class Report:
    cartan: str
    suites: list[str]
    rows: list[ReportRow] = field(default_factory=list)

    @property
    def failures(self) -> list[ReportRow]:
        return [r for r in self.rows if r.status != "OK"]

    @property
    def ok(self) -> bool:
        return not self.failures

    def pairs_checked(self, suite: str | None = None) -> int:
        return sum(1 for r in self.rows if suite is None or r.suite == suite)

    def strict_pairs(self, suite: str | None = None) -> int:
        return sum(1 for r in self.rows if (suite is None or r.suite == suite) and r.z != r.x)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["z", "x", "polynomial", "suite", "status"])
        for r in self.rows:
            w.writerow([r.z, r.x, r.polynomial, r.suite, r.status])
        return buf.getvalue()

    def to_json(self) -> str:
        obj = {
            "cartan": self.cartan,
            "suites": [
                {"suite": s, "pairs_checked": self.pairs_checked(s),
                 "strict_pairs": self.strict_pairs(s),
                 "failures": sum(1 for r in self.failures if r.suite == s)}
                for s in self.suites
            ],
            "rows": [asdict(r) for r in self.rows],
        }
        return json.dumps(obj, indent=1) + "\n"

    def to_text(self) -> str:
        lines = []
        for s in self.suites:
            n_fail = sum(1 for r in self.failures if r.suite == s)
            verdict = "PASS" if n_fail == 0 else f"FAIL ({n_fail} counterexamples)"
            lines.append(f"{self.cartan} {s}: {verdict}, {self.pairs_checked(s)} pairs z <= x "
                         f"({self.strict_pairs(s)} with z < x)")
        for r in self.failures:
            lines.append(f"  {r.suite}: z={r.z or 'e'} x={r.x or 'e'} jh={r.polynomial} {r.status}")
        return "\n".join(lines) + "\n"


_WORKER: Multiplicities | None = None


def _worker_init(table: KLTable, dual: KLTable) -> None:
    global _WORKER
    _WORKER = Multiplicities(table, dual)


def _run_chunk(calc: Multiplicities, suite: str,
               chunk: Sequence[tuple[Word, Word]]) -> list[ReportRow]:
    W = calc.system
    rows = []
    for zw, xw in chunk:
        poly, complaint = calc.check_pair(suite, W.element(zw), W.element(xw))
        rows.append(ReportRow(format_word(zw), format_word(xw), str(poly), suite,
                              "OK" if complaint is None else f"FAIL: {complaint}"))
    return rows


def _worker_chunk(args: tuple[str, list[tuple[Word, Word]]]) -> list[ReportRow]:
    assert _WORKER is not None
    return _run_chunk(_WORKER, *args)


def _chunks(items: list, n: int) -> Iterable[list]:
    size = max(1, -(-len(items) // (4 * n)))
    for i in range(0, len(items), size):
        yield items[i:i + size]


def verify_suite(system: CoxeterSystem, table: KLTable, suite: str = "all", *,
                 dual: KLTable | None = None, store: TableStore | None = None,
                 jobs: int = 1) -> Report:
    """Check one identity suite (or ``"all"``) on every pair ``z <= x``.

    Rows come out in ``(|z|, z, |x|, x)`` order whatever ``jobs`` is.
    """
    if table.cartan != system.cartan:
        raise ValueError(f"table is for {table.cartan}, system is {system.cartan}")
    suites = list(SUITES) if suite == "all" else [suite]
    for s in suites:
        if s not in SUITES:
            raise ValueError(f"unknown suite {s!r}; choose from {', '.join(SUITES)} or all")
    calc = Multiplicities(table, dual, store)
    pairs = [(z.word, x.word) for z, x in system.comparable_pairs()]
    report = Report(str(system.cartan), suites)
    if jobs <= 1:
        for s in suites:
            report.rows.extend(_run_chunk(calc, s, pairs))
        return report
    tasks = [(s, chunk) for s in suites for chunk in _chunks(pairs, jobs)]
    with ProcessPoolExecutor(max_workers=jobs, initializer=_worker_init,
                             initargs=(calc.table, calc.dual)) as pool:
        for rows in pool.map(_worker_chunk, tasks):
            report.rows.extend(rows)
    return report
