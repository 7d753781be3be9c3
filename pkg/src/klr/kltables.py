"""Tables of l-Kazhdan-Lusztig polynomials ``h_{y,x}``.

For ``ell = 0`` the table is computed from the Hecke algebra. For ``ell > 0``
the polynomials (stalks of parity sheaves) are external data read from JSON::

    {"cartan": "B3", "ell": 2, "provenance": "...",
     "polys": {"<y-word>|<x-word>": [[exp, coeff], ...], ...}}

Words are the canonical comma-separated reduced words of :mod:`klr.coxeter`
(``""`` is the identity). Absent keys mean zero. Generators of a type and of
its Langlands dual are identified by index (B_n and C_n share numbering).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from .coxeter import CartanType, CoxeterSystem, Element, format_word, get_system, parse_word
from .hecke import HeckeAlgebra, HeckeElement
from .laurent import ONE, ZERO, LaurentPoly

__all__ = [
    "KLTable",
    "MissingDualTable",
    "TableInvariantError",
    "TableSchemaError",
    "TableStore",
    "Violation",
    "default_table",
    "dual_table",
    "dumps",
    "load",
    "loads",
    "save",
    "validate",
]

Word = tuple[int, ...]


class TableSchemaError(ValueError):
    """The table file does not follow the JSON layout."""


class MissingDualTable(LookupError):
    """No table for the Langlands dual type is available."""


@dataclass(frozen=True)
class Violation:
    rule: str
    y: str
    x: str
    detail: str = ""

    def __str__(self) -> str:
        where = f"(y={self.y or 'e'}, x={self.x or 'e'})"
        return f"{self.rule} at {where}" + (f": {self.detail}" if self.detail else "")


class TableInvariantError(ValueError):
    def __init__(self, violations: list[Violation]):
        self.violations = violations
        lines = "\n".join(f"  {v}" for v in violations[:20])
        more = f"\n  ... {len(violations) - 20} more" if len(violations) > 20 else ""
        super().__init__(f"{len(violations)} invariant violation(s):\n{lines}{more}")


@dataclass(frozen=True)
class KLTable:
    cartan: CartanType
    ell: int
    polys: dict[tuple[Word, Word], LaurentPoly] = field(compare=True)
    provenance: str = field(default="", compare=False)

    @property
    def system(self) -> CoxeterSystem:
        return get_system(self.cartan)

    def h(self, y: Element | Word, x: Element | Word) -> LaurentPoly:
        yw = y.word if isinstance(y, Element) else tuple(y)
        xw = x.word if isinstance(x, Element) else tuple(x)
        return self.polys.get((yw, xw), ZERO)

    def column(self, x: Element) -> HeckeElement:
        """``b_x = sum_y h_{y,x} delta_y``."""
        W = self.system
        return HeckeElement(W, {W.element(yw): p for (yw, xw), p in self.polys.items()
                                if xw == x.word})

    def items(self) -> Iterator[tuple[Word, Word, LaurentPoly]]:
        """Entries in canonical order: by x, then y, each by (length, ShortLex)."""
        for (yw, xw) in sorted(self.polys, key=lambda k: (len(k[1]), k[1], len(k[0]), k[0])):
            yield yw, xw, self.polys[(yw, xw)]

    def __hash__(self) -> int:
        return hash((self.cartan, self.ell, frozenset(self.polys.items())))


def default_table(system: CoxeterSystem | CartanType | str) -> KLTable:
    """The ``ell = 0`` table of ordinary Kazhdan-Lusztig polynomials."""
    W = system if isinstance(system, CoxeterSystem) else get_system(system)
    alg = HeckeAlgebra.of(W)
    polys = {}
    for x in W.enumerate():
        for y, p in alg.kl_column(x).items():
            polys[(y.word, x.word)] = p
    return KLTable(W.cartan, 0, polys, provenance="computed: Kazhdan-Lusztig recursion")


def validate(table: KLTable) -> list[Violation]:
    """All invariant violations, diagonal and support rules first."""
    W = table.system
    out: list[Violation] = []
    elements = W.enumerate()
    for x in elements:
        if table.h(x, x) != ONE:
            out.append(Violation("diagonal != 1", format_word(x.word), format_word(x.word),
                                 f"h = {table.h(x, x)}"))
    for yw, xw, p in table.items():
        y, x = W.element(yw), W.element(xw)
        ys, xs = format_word(yw), format_word(xw)
        if not W.bruhat_leq(y, x):
            out.append(Violation("support: y not <= x", ys, xs, f"h = {p}"))
        if any(c < 0 for _, c in p.items()):
            out.append(Violation("negative coefficient", ys, xs, f"h = {p}"))
    if out:
        return out
    alg = HeckeAlgebra.of(W)
    for x in elements:
        check = alg.bar_invariance_check(table.column(x))
        if not check:
            out.append(Violation(
                "bar-invariance", format_word(check.failing.word), format_word(x.word),
                f"bar(h) = {check.lhs} but sum h*r = {check.rhs}"))
    return out


# -- JSON ---------------------------------------------------------------------


def _poly_to_pairs(p: LaurentPoly) -> list[list[int]]:
    return [[e, c] for e, c in p.items()]


def _pairs_to_poly(raw: object, key: str) -> LaurentPoly:
    if not isinstance(raw, list):
        raise TableSchemaError(f"{key}: expected a list of [exp, coeff] pairs")
    seen: list[int] = []
    terms = []
    for pair in raw:
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(t, int) and not isinstance(t, bool) for t in pair)):
            raise TableSchemaError(f"{key}: bad pair {pair!r}")
        e, c = pair
        if e in seen:
            raise TableSchemaError(f"{key}: duplicate exponent {e}")
        if seen and e < seen[-1]:
            raise TableSchemaError(f"{key}: pairs not sorted by exponent")
        if c == 0:
            raise TableSchemaError(f"{key}: zero coefficient at exponent {e}")
        seen.append(e)
        terms.append((e, c))
    return LaurentPoly(terms)


def to_json_obj(table: KLTable) -> dict:
    polys = {f"{format_word(yw)}|{format_word(xw)}": _poly_to_pairs(p)
             for yw, xw, p in table.items()}
    obj = {"cartan": str(table.cartan), "ell": table.ell}
    if table.provenance:
        obj["provenance"] = table.provenance
    obj["polys"] = polys
    return obj


def dumps(table: KLTable) -> str:
    obj = to_json_obj(table)
    head = {k: v for k, v in obj.items() if k != "polys"}
    lines = [json.dumps(head)[:-1] + ', "polys": {']
    entries = [f"  {json.dumps(k)}: {json.dumps(v)}" for k, v in obj["polys"].items()]
    lines.append(",\n".join(entries))
    lines.append("}}")
    return "\n".join(lines) + "\n"


def save(table: KLTable, path: str | Path) -> None:
    Path(path).write_text(dumps(table), encoding="utf-8")


def loads(text: str, expected: CartanType | str | None = None, *, check: bool = True) -> KLTable:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TableSchemaError(f"not valid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise TableSchemaError("top level must be an object")
    unknown = set(obj) - {"cartan", "ell", "polys", "provenance"}
    if unknown:
        raise TableSchemaError(f"unknown keys: {sorted(unknown)}")
    for k in ("cartan", "ell", "polys"):
        if k not in obj:
            raise TableSchemaError(f"missing key {k!r}")
    try:
        cartan = CartanType.parse(obj["cartan"]) if isinstance(obj["cartan"], str) else None
    except ValueError as exc:
        raise TableSchemaError(str(exc)) from None
    if cartan is None:
        raise TableSchemaError("cartan must be a string such as 'B3'")
    if expected is not None:
        if isinstance(expected, str):
            expected = CartanType.parse(expected)
        if cartan != expected:
            raise TableSchemaError(f"table is for {cartan}, expected {expected}")
    ell = obj["ell"]
    if not isinstance(ell, int) or isinstance(ell, bool) or ell < 0:
        raise TableSchemaError("ell must be a nonnegative integer")
    prov = obj.get("provenance", "")
    if not isinstance(prov, str):
        raise TableSchemaError("provenance must be a string")
    if not isinstance(obj["polys"], dict):
        raise TableSchemaError("polys must be an object")
    W = get_system(cartan)
    polys: dict[tuple[Word, Word], LaurentPoly] = {}
    for key, raw in obj["polys"].items():
        if key.count("|") != 1:
            raise TableSchemaError(f"bad key {key!r}; expected '<y-word>|<x-word>'")
        ytxt, xtxt = key.split("|")
        try:
            yw, xw = parse_word(ytxt), parse_word(xtxt)
            y, x = W.element(yw), W.element(xw)
        except ValueError as exc:
            raise TableSchemaError(f"{key}: {exc}") from None
        if y.word != yw or x.word != xw:
            raise TableSchemaError(f"{key}: words must be canonical reduced words "
                                   f"({format_word(y.word)}|{format_word(x.word)})")
        p = _pairs_to_poly(raw, key)
        if p:
            polys[(yw, xw)] = p
    table = KLTable(cartan, ell, polys, provenance=prov)
    if check:
        violations = validate(table)
        if violations:
            raise TableInvariantError(violations)
    return table


def load(path: str | Path, expected: CartanType | str | None = None,
         store: TableStore | None = None) -> KLTable:
    """Read and validate a table file; optionally register it in ``store``."""
    table = loads(Path(path).read_text(encoding="utf-8"), expected)
    if store is not None:
        store.add(table)
    return table


# -- Langlands duality --------------------------------------------------------


class TableStore:
    """Loaded tables keyed by ``(cartan, ell)``; used to resolve dual tables."""

    def __init__(self, tables: list[KLTable] | None = None):
        self._tables: dict[tuple[CartanType, int], KLTable] = {}
        for t in tables or []:
            self.add(t)

    def add(self, table: KLTable) -> None:
        self._tables[(table.cartan, table.ell)] = table

    def get(self, cartan: CartanType, ell: int) -> KLTable | None:
        return self._tables.get((cartan, ell))

    def __contains__(self, key: tuple[CartanType, int]) -> bool:
        return key in self._tables


def dual_table(table: KLTable, store: TableStore | None = None) -> KLTable:
    """Table for the Langlands dual type.

    For ``ell = 0`` the polynomials only depend on the Coxeter system and are
    relabelled unchanged. For ``ell > 0`` a self-dual type returns the table
    itself; otherwise the dual table must be present in ``store``.
    """
    dual = table.cartan.dual()
    if table.ell == 0:
        if dual == table.cartan:
            return table
        return KLTable(dual, 0, dict(table.polys), provenance=table.provenance)
    if dual == table.cartan:
        return table
    found = store.get(dual, table.ell) if store is not None else None
    if found is None:
        raise MissingDualTable(f"no ell={table.ell} table loaded for {dual}, "
                               f"the dual type of {table.cartan}")
    return found
