"""Hecke algebra of a finite Weyl group over ``Z[v, v^-1]``.

Conventions: standard basis ``delta_x`` with quadratic relation
``(delta_s + v)(delta_s - v^-1) = 0``, so ``delta_s^-1 = delta_s + (v - v^-1)``.
The canonical basis is ``b_x = sum_y h_{y,x} delta_y`` with ``h_{x,x} = 1`` and
``h_{y,x}`` in ``v Z[v]`` for ``y < x``; ``b_s = delta_s + v``.
r-polynomials are read off ``bar(delta_x) = sum_y (-1)^(|x|-|y|) r_{y,x} delta_y``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Mapping, Union

from .coxeter import CoxeterSystem, Element, MixedSystemError, label
from .laurent import ONE, V, V_INV, ZERO, LaurentPoly

__all__ = [
    "BarCheck",
    "HeckeAlgebra",
    "HeckeElement",
    "bar_delta",
    "bar_invariance_check",
    "delta_mult",
    "kl_poly",
    "r_poly",
]

Coeff = Union[int, LaurentPoly]

_V_MINUS_VINV = V - V_INV
_VINV_MINUS_V = V_INV - V


class HeckeElement:
    """Finitely supported combination ``sum_x a_x delta_x``; immutable."""

    __slots__ = ("system", "_terms")

    def __init__(self, system: CoxeterSystem, terms: Mapping[Element, Coeff] | None = None):
        self.system = system
        clean: dict[Element, LaurentPoly] = {}
        for x, c in (terms or {}).items():
            if x.system is not system:
                raise MixedSystemError(f"{x!r} does not belong to {system!r}")
            c = LaurentPoly._coerce(c)
            if c:
                clean[x] = c
        self._terms = clean

    @classmethod
    def delta(cls, x: Element) -> HeckeElement:
        return cls(x.system, {x: ONE})

    @classmethod
    def _from_acc(cls, system: CoxeterSystem, acc: dict[Element, LaurentPoly]) -> HeckeElement:
        obj = cls.__new__(cls)
        obj.system = system
        obj._terms = {x: c for x, c in acc.items() if c}
        return obj

    @property
    def terms(self) -> dict[Element, LaurentPoly]:
        return dict(self._terms)

    def coeff(self, x: Element) -> LaurentPoly:
        return self._terms.get(x, ZERO)

    def support(self) -> list[Element]:
        return sorted(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.system is other.system and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def _same(self, other: HeckeElement) -> None:
        if other.system is not self.system:
            raise MixedSystemError("Hecke elements from different systems")

    def __add__(self, other: HeckeElement) -> HeckeElement:
        self._same(other)
        acc = dict(self._terms)
        for x, c in other._terms.items():
            acc[x] = acc.get(x, ZERO) + c
        return HeckeElement._from_acc(self.system, acc)

    def __neg__(self) -> HeckeElement:
        return HeckeElement._from_acc(self.system, {x: -c for x, c in self._terms.items()})

    def __sub__(self, other: HeckeElement) -> HeckeElement:
        return self + (-other)

    def scale(self, c: Coeff) -> HeckeElement:
        return HeckeElement._from_acc(self.system, {x: a * c for x, a in self._terms.items()})

    def __mul__(self, other: HeckeElement | Coeff) -> HeckeElement:
        if not isinstance(other, HeckeElement):
            return self.scale(other)
        self._same(other)
        out = HeckeElement(self.system)
        for y, c in other._terms.items():
            part = self
            for s in y.word:
                part = delta_mult(part, s)
            out = out + part.scale(c)
        return out

    def __rmul__(self, c: Coeff) -> HeckeElement:
        return self.scale(c)

    def bar(self) -> HeckeElement:
        """Bar involution: ``v -> v^-1`` and ``delta_x -> delta_{x^-1}^-1``."""
        alg = HeckeAlgebra.of(self.system)
        acc: dict[Element, LaurentPoly] = {}
        for x, a in self._terms.items():
            ab = a.bar()
            for y, c in alg.bar_delta(x)._terms.items():
                acc[y] = acc.get(y, ZERO) + ab * c
        return HeckeElement._from_acc(self.system, acc)

    def render(self) -> str:
        """One ``word : polynomial`` line per term, in (length, ShortLex) order."""
        return "\n".join(f"{label(x)} : {self._terms[x]}" for x in self.support())

    def __repr__(self) -> str:
        inner = ", ".join(f"[{x}]: {self._terms[x]}" for x in self.support())
        return f"HeckeElement({{{inner}}})"


@dataclass(frozen=True)
class BarCheck:
    """Outcome of :func:`bar_invariance_check`; falsy on failure."""

    ok: bool
    failing: Element | None = None
    lhs: LaurentPoly | None = None
    rhs: LaurentPoly | None = None

    def __bool__(self) -> bool:
        return self.ok


class HeckeAlgebra:
    """Per-system memo tables for bar(delta_x), r-polynomials and KL columns."""

    def __init__(self, system: CoxeterSystem):
        self.system = system
        self._lock = threading.Lock()
        self._bar: dict[Element, HeckeElement] = {}
        self._kl: dict[Element, dict[Element, LaurentPoly]] = {}

    @classmethod
    def of(cls, system: CoxeterSystem) -> HeckeAlgebra:
        alg = system.__dict__.get("_hecke")
        if alg is None:
            with system._lock:
                alg = system.__dict__.setdefault("_hecke", cls(system))
        return alg

    # -- standard basis ---------------------------------------------------

    def delta_mult(self, h: HeckeElement, s: int) -> HeckeElement:
        """Right multiplication by ``delta_s``."""
        W = self.system
        if h.system is not W:
            raise MixedSystemError("Hecke element from a different system")
        if s not in W.generators:
            raise ValueError(f"generator {s} not in 1..{W.rank}")
        acc: dict[Element, LaurentPoly] = {}
        for x, a in h._terms.items():
            xs = W.right_mult(x, s)
            acc[xs] = acc.get(xs, ZERO) + a
            if W.is_right_descent(x, s):
                acc[x] = acc.get(x, ZERO) + a * _VINV_MINUS_V
        return HeckeElement._from_acc(W, acc)

    def bar_delta(self, x: Element) -> HeckeElement:
        """``bar(delta_x)`` as the product of ``delta_s^-1`` along the word of ``x``."""
        hit = self._bar.get(x)
        if hit is not None:
            return hit
        W = self.system
        if x.system is not W:
            raise MixedSystemError(f"{x!r} does not belong to {W!r}")
        if not x.word:
            out = HeckeElement.delta(x)
        else:
            s = x.word[-1]
            prev = self.bar_delta(W.right_mult(x, s))
            out = self.delta_mult(prev, s) + prev.scale(_V_MINUS_VINV)
        self._bar[x] = out
        return out

    def r_poly(self, y: Element, x: Element) -> LaurentPoly:
        W = self.system
        W._check(y, x)
        c = self.bar_delta(x).coeff(y)
        return -c if (len(x) - len(y)) % 2 else c

    # -- canonical basis --------------------------------------------------

    def kl_column(self, x: Element) -> dict[Element, LaurentPoly]:
        """``{y: h_{y,x}}`` over ``y <= x`` (nonzero entries only)."""
        hit = self._kl.get(x)
        if hit is not None:
            return hit
        W = self.system
        if x.system is not W:
            raise MixedSystemError(f"{x!r} does not belong to {W!r}")
        if not x.word:
            col = {x: ONE}
        else:
            s = x.word[-1]
            xp = W.right_mult(x, s)
            prev = self.kl_column(xp)
            # b_{x'} * b_s, with b_s = delta_s + v
            acc: dict[Element, LaurentPoly] = {}
            for y, c in prev.items():
                ys = W.right_mult(y, s)
                acc[ys] = acc.get(ys, ZERO) + c
                bump = c.shift(-1) if W.is_right_descent(y, s) else c.shift(1)
                acc[y] = acc.get(y, ZERO) + bump
            # mu(z, x') is the coefficient of v in h_{z,x'}
            for z, c in prev.items():
                mu = c[1]
                if mu and z != xp and W.is_right_descent(z, s):
                    for y, d in self.kl_column(z).items():
                        acc[y] = acc.get(y, ZERO) - d * mu
            col = {y: c for y, c in acc.items() if c}
        self._kl[x] = col
        return col

    def kl_poly(self, y: Element, x: Element) -> LaurentPoly:
        self.system._check(y, x)
        return self.kl_column(x).get(y, ZERO)

    def kl_basis(self, x: Element) -> HeckeElement:
        return HeckeElement(self.system, self.kl_column(x))

    def bar_invariance_check(self, h: HeckeElement) -> BarCheck:
        """Check ``bar(a_x) = sum_w a_w r_{x,w}`` for every ``x`` below the support.

        Holds for all ``x`` exactly when ``h`` is bar-invariant; the first
        failing ``x`` in (length, ShortLex) order is reported.
        """
        W = self.system
        support = h.support()
        if not support:
            return BarCheck(True)
        below = [x for x in W.enumerate() if any(W.bruhat_leq(x, w) for w in support)]
        for x in below:
            rhs = ZERO
            for w, a in h._terms.items():
                if W.bruhat_leq(x, w):
                    rhs = rhs + a * self.r_poly(x, w)
            lhs = h.coeff(x).bar()
            if lhs != rhs:
                return BarCheck(False, x, lhs, rhs)
        return BarCheck(True)


def delta_mult(h: HeckeElement, s: int) -> HeckeElement:
    return HeckeAlgebra.of(h.system).delta_mult(h, s)


def bar_delta(x: Element) -> HeckeElement:
    return HeckeAlgebra.of(x.system).bar_delta(x)


def r_poly(y: Element, x: Element) -> LaurentPoly:
    if y.system is not x.system:
        raise MixedSystemError("elements from different systems")
    return HeckeAlgebra.of(x.system).r_poly(y, x)


def kl_poly(y: Element, x: Element) -> LaurentPoly:
    if y.system is not x.system:
        raise MixedSystemError("elements from different systems")
    return HeckeAlgebra.of(x.system).kl_poly(y, x)


def bar_invariance_check(h: HeckeElement) -> BarCheck:
    return HeckeAlgebra.of(h.system).bar_invariance_check(h)

