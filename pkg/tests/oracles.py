"""Independent reference computations used only by the tests.

Nothing here calls the Bruhat, r-polynomial or KL code under test: Bruhat
order comes from the subword property, R-polynomials from the classical
recursion on right descents, and KL polynomials from solving the
bar-invariance equations top-down.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from klr.coxeter import CoxeterSystem, Element
from klr.laurent import LaurentPoly

Q = LaurentPoly.monomial(1)  # reused as the variable q
ONE = LaurentPoly.const(1)


def lower_set_by_subwords(W: CoxeterSystem, x: Element) -> frozenset[tuple[int, ...]]:
    """Canonical words of every product of a subword of x's reduced word."""
    word = x.word
    out = set()
    for mask in itertools.product((0, 1), repeat=len(word)):
        out.add(W.element([s for s, keep in zip(word, mask) if keep]).word)
    return frozenset(out)


class Oracle:
    def __init__(self, W: CoxeterSystem):
        self.W = W
        self.elements = W.enumerate()
        self.lower = {x: lower_set_by_subwords(W, x) for x in self.elements}
        self.R = lru_cache(maxsize=None)(self._R)

    def leq(self, y: Element, x: Element) -> bool:
        return y.word in self.lower[x]

    def _R(self, y: Element, x: Element) -> LaurentPoly:
        """Classical R_{y,x}(q) as a polynomial in q."""
        if not self.leq(y, x):
            return LaurentPoly()
        if y == x:
            return ONE
        W = self.W
        s = next(s for s in W.generators if W.is_right_descent(x, s))
        xs = W.right_mult(x, s)
        ys = W.right_mult(y, s)
        if W.is_right_descent(y, s):
            return self.R(ys, xs)
        return (Q - 1) * self.R(y, xs) + Q * self.R(ys, xs)

    def r(self, y: Element, x: Element) -> LaurentPoly:
        """v^(|x|-|y|) R_{y,x}(v^-2)."""
        d = len(x) - len(y)
        return LaurentPoly((d - 2 * k, c) for k, c in self.R(y, x).items())

    def kl_column(self, x: Element) -> dict[Element, LaurentPoly]:
        """The unique bar-invariant delta_x + sum_{y<x} c_y delta_y with c_y in vZ[v].

        bar(sum_w c_w delta_w) has delta_y coefficient
        sum_w bar(c_w) (-1)^(|w|-|y|) r_{y,w}, so c_y - bar(c_y) equals the
        sum over y < w <= x; c_y is the positive-degree part of that sum.
        """
        below = sorted((y for y in self.elements if self.leq(y, x)), reverse=True)
        c: dict[Element, LaurentPoly] = {x: ONE}
        for y in below:
            if y == x:
                continue
            p = LaurentPoly()
            for w, cw in c.items():
                if w != y and self.leq(y, w):
                    term = cw.bar() * self.r(y, w)
                    p = p + (-term if (len(w) - len(y)) % 2 else term)
            positive = LaurentPoly((e, a) for e, a in p.items() if e > 0)
            assert p == positive - positive.bar(), "bar-invariance system is inconsistent"
            if positive:
                c[y] = positive
        return c


def q_trace(h: LaurentPoly, d: int, q: int) -> int:
    """q^(d/2) h(q^-1/2): the Frobenius trace of a stalk with Poincare data h."""
    total = 0
    for e, c in h.items():
        assert (d - e) % 2 == 0
        total += c * q ** ((d - e) // 2)
    return total


def poincare_at(p: LaurentPoly, q: int) -> int:
    """A polynomial in v^2 evaluated at v^2 = q."""
    assert all(e % 2 == 0 and e >= 0 for e in p.support)
    return sum(c * q ** (e // 2) for e, c in p.items())
