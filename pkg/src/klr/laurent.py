"""Integer Laurent polynomials in one variable ``v``.

Values are immutable and kept in canonical form (no zero coefficients), so
structural equality is polynomial equality.

>>> a = LaurentPoly.parse("v^-1 - v")
>>> str(a * a)
'v^-2 - 2 + v^2'
>>> str(a.bar())
'-v^-1 + v'
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

__all__ = ["LaurentPoly", "MalformedPolynomial", "ZERO", "ONE", "V", "V_INV"]


class MalformedPolynomial(ValueError):
    """Raised for unparsable text or inputs violating a parity precondition."""


Scalar = Union[int, "LaurentPoly"]


class LaurentPoly:
    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, int] = {}
        for exp, c in items:
            if not isinstance(exp, int) or not isinstance(c, int):
                raise TypeError("exponents and coefficients must be integers")
            acc[exp] = acc.get(exp, 0) + c
        self._coeffs = {e: acc[e] for e in sorted(acc) if acc[e] != 0}
        self._hash: int | None = None

    @classmethod
    def _raw(cls, coeffs: dict[int, int]) -> LaurentPoly:
        # caller guarantees: no zero values
        obj = cls.__new__(cls)
        obj._coeffs = {e: coeffs[e] for e in sorted(coeffs)}
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> LaurentPoly:
        return cls._raw({exp: coeff}) if coeff else cls._raw({})

    @classmethod
    def const(cls, c: int) -> LaurentPoly:
        return cls.monomial(0, c)

    # -- inspection -------------------------------------------------------

    @property
    def coeffs(self) -> dict[int, int]:
        """Copy of the exponent -> coefficient map, sorted by exponent."""
        return dict(self._coeffs)

    def items(self):
        return self._coeffs.items()

    def __getitem__(self, exp: int) -> int:
        return self._coeffs.get(exp, 0)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def support(self) -> list[int]:
        return list(self._coeffs)

    @property
    def degree(self) -> int | None:
        return max(self._coeffs) if self._coeffs else None

    @property
    def valuation(self) -> int | None:
        return min(self._coeffs) if self._coeffs else None

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._coeffs.items()))
        return self._hash

    # -- ring operations --------------------------------------------------

    @staticmethod
    def _coerce(x: Scalar) -> LaurentPoly:
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return LaurentPoly.const(x)
        raise TypeError(f"cannot combine LaurentPoly with {type(x).__name__}")

    def __add__(self, other: Scalar) -> LaurentPoly:
        other = self._coerce(other)
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other: Scalar) -> LaurentPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other: Scalar) -> LaurentPoly:
        return self._coerce(other) - self

    def __mul__(self, other: Scalar) -> LaurentPoly:
        if isinstance(other, int):
            if other == 0:
                return ZERO
            return LaurentPoly._raw({e: c * other for e, c in self._coeffs.items()})
        other = self._coerce(other)
        out: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                k = e1 + e2
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if len(self._coeffs) == 1:
                (e, c), = self._coeffs.items()
                if c in (1, -1):
                    return LaurentPoly.monomial(-e * -n, c ** -n)
            raise ValueError("only unit monomials have negative powers")
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``v^k``."""
        return LaurentPoly._raw({e + k: c for e, c in self._coeffs.items()})

    # -- involution, evaluation, renormalisation --------------------------

    def bar(self) -> LaurentPoly:
        """The ring involution ``v -> v^-1``."""
        return LaurentPoly._raw({-e: c for e, c in self._coeffs.items()})

    def eval(self, t: int | Fraction) -> Fraction:
        """Exact value at ``v = t``; ``t = 0`` raises ZeroDivisionError."""
        t = Fraction(t)
        if t == 0:
            raise ZeroDivisionError("Laurent polynomial evaluated at v = 0")
        return sum((c * t**e for e, c in self._coeffs.items()), Fraction(0))

    def to_R(self, d: int) -> dict[int, int]:
        """Return the polynomial ``R(q)`` with ``self = v^d R(v^-2)``.

        The result is a map ``power of q -> coefficient``. Exponents of
        the wrong parity, or ones above ``d``, raise MalformedPolynomial.
        """
        out: dict[int, int] = {}
        for e, c in self._coeffs.items():
            if (d - e) % 2:
                raise MalformedPolynomial(
                    f"exponent {e} has the wrong parity for d = {d}")
            k = (d - e) // 2
            if k < 0:
                raise MalformedPolynomial(
                    f"exponent {e} exceeds d = {d}; R would not be a polynomial")
            out[k] = c
        return dict(sorted(out.items()))

    @classmethod
    def from_R(cls, R: Mapping[int, int], d: int) -> LaurentPoly:
        """Inverse of :meth:`to_R`: ``v^d R(v^-2)``."""
        return cls((d - 2 * k, c) for k, c in R.items())

    # -- text ------------------------------------------------------------

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts: list[str] = []
        for e, c in self._coeffs.items():
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                mono = "v" if e == 1 else f"v^{e}"
                body = mono if a == 1 else f"{a}*{mono}"
            if not parts:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly('{self}')"

    _TERM = re.compile(r"^(?:(\d+)(?:\*(?=v)|(?=v)|$))?(v(?:\^(-?\d+))?)?$")

    @classmethod
    def parse(cls, text: str) -> LaurentPoly:
        """Parse the grammar produced by ``str``: ``v^-1 + 2*v^2 - 3``."""
        s = text.replace(" ", "")
        if not s:
            raise MalformedPolynomial("empty polynomial text")
        if s == "0":
            return ZERO
        tokens: list[str] = []
        start = 0
        for i in range(1, len(s)):
            # a sign right after '^' belongs to the exponent
            if s[i] in "+-" and s[i - 1] != "^":
                tokens.append(s[start:i])
                start = i
        tokens.append(s[start:])
        terms: list[tuple[int, int]] = []
        for tok in tokens:
            sign = -1 if tok.startswith("-") else 1
            body = tok.lstrip("+-")
            m = cls._TERM.match(body)
            if not body or not m or (m.group(1) is None and m.group(2) is None):
                raise MalformedPolynomial(f"bad term {tok!r} in {text!r}")
            coeff = int(m.group(1)) if m.group(1) is not None else 1
            if m.group(2) is None:
                exp = 0
            else:
                exp = int(m.group(3)) if m.group(3) is not None else 1
            terms.append((exp, sign * coeff))
        return cls(terms)


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
V = LaurentPoly.monomial(1)
V_INV = LaurentPoly.monomial(-1)
