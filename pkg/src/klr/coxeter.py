"""Finite Weyl groups acting on their root lattice.

An element is stored as the integer matrix of its action on the root
lattice (simple-root basis) together with its ShortLex-minimal reduced
word. Generators are numbered ``1..rank`` in Bourbaki order.

>>> W = CoxeterSystem.from_type("A2")
>>> len(W.enumerate())
6
>>> W.longest_element().word
(1, 2, 1)
>>> W.bruhat_leq(W.element("1"), W.element("2,1"))
True
"""

from __future__ import annotations

import functools
import re
import threading
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

import numpy as np

__all__ = [
    "CartanType",
    "CoxeterSystem",
    "Element",
    "MixedSystemError",
    "cartan_matrix",
    "format_word",
    "get_system",
    "label",
    "parse_word",
]

Word = tuple[int, ...]

_RANK_OK = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}

_DUAL_FAMILY = {"A": "A", "B": "C", "C": "B", "D": "D", "E": "E", "F": "F", "G": "G"}


class MixedSystemError(ValueError):
    """Elements from different Coxeter systems were combined."""


@dataclass(frozen=True, order=True)
class CartanType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _RANK_OK:
            raise ValueError(f"unknown Cartan family {self.family!r}")
        if not isinstance(self.rank, int) or not _RANK_OK[self.family](self.rank):
            raise ValueError(f"illegal rank {self.rank} for type {self.family}")

    @classmethod
    def parse(cls, text: str) -> CartanType:
        m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", text)
        if not m:
            raise ValueError(f"cannot parse Cartan type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def dual(self) -> CartanType:
        """Langlands dual type (B and C swap; every other family is fixed)."""
        return CartanType(_DUAL_FAMILY[self.family], self.rank)

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def cartan_matrix(ct: CartanType) -> np.ndarray:
    """Cartan matrix ``a[i, j] = <alpha_i^vee, alpha_j>`` (Bourbaki numbering)."""
    n = ct.rank
    a = 2 * np.eye(n, dtype=np.int64)

    def link(i: int, j: int, aij: int = -1, aji: int = -1) -> None:
        a[i - 1, j - 1] = aij
        a[j - 1, i - 1] = aji

    f = ct.family
    if f in "ABC":
        for i in range(1, n):
            link(i, i + 1)
        if f == "B":
            link(n - 1, n, -1, -2)
        elif f == "C":
            link(n - 1, n, -2, -1)
    elif f == "D":
        for i in range(1, n - 1):
            link(i, i + 1)
        link(n - 2, n)
    elif f == "E":
        link(1, 3)
        link(2, 4)
        for i in range(3, n):
            link(i, i + 1)
    elif f == "F":
        link(1, 2)
        link(2, 3, -1, -2)
        link(3, 4)
    elif f == "G":
        link(1, 2, -3, -1)
    return a


_BOND_ORDER = {0: 2, 1: 3, 2: 4, 3: 6}


def parse_word(text: str) -> Word:
    """``"2,1,3"`` -> ``(2, 1, 3)``; the empty string is the identity."""
    text = text.strip()
    if not text or text in ("e", "()"):
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise ValueError(f"cannot parse word {text!r}") from None


def format_word(word: Sequence[int]) -> str:
    return ",".join(str(i) for i in word)


def label(x: Element) -> str:
    """Human-facing name: the word, or ``e`` for the identity."""
    return format_word(x.word) or "e"


def get_system(cartan: CartanType | str) -> CoxeterSystem:
    """Shared system instance per Cartan type, so memo caches are reused."""
    if isinstance(cartan, str):
        cartan = CartanType.parse(cartan)
    return _shared_system(cartan)


@functools.lru_cache(maxsize=None)
def _shared_system(cartan: CartanType) -> CoxeterSystem:
    return CoxeterSystem(cartan)


class Element:
    """A Weyl group element; build these through a :class:`CoxeterSystem`."""

    __slots__ = ("system", "word", "matrix", "_inv", "_hash")

    def __init__(self, system: CoxeterSystem, word: Word, matrix: np.ndarray, inverse: np.ndarray):
        self.system = system
        self.word = word
        self.matrix = matrix
        self._inv = inverse
        self._hash = hash(word)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.system is other.system and self.word == other.word

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: Element) -> bool:
        # (length, ShortLex) ordering used for all canonical listings
        return (len(self.word), self.word) < (len(other.word), other.word)

    def __mul__(self, other: Element) -> Element:
        return self.system.multiply(self, other)

    def __len__(self) -> int:
        return len(self.word)

    @property
    def length(self) -> int:
        return len(self.word)

    def root_length(self) -> int:
        """Number of positive roots sent to negative roots."""
        images = self.matrix @ self.system.positive_roots.T
        return int(np.sum(np.all(images <= 0, axis=0)))

    def inverse(self) -> Element:
        return self.system.from_matrix(self._inv)

    def __str__(self) -> str:
        return format_word(self.word)

    def __repr__(self) -> str:
        return f"Element({self.system.cartan}, [{self}])"


class CoxeterSystem:
    """Finite Weyl group ``(W, S)`` of a given Cartan type.

    Memo caches (elements, products by generators, Bruhat comparisons) are
    plain dicts guarded by a lock for writers; every cached value is a pure
    function of its key, so concurrent readers see correct results.
    """

    def __init__(self, cartan: CartanType):
        self.cartan = cartan
        self.cartan_matrix = cartan_matrix(cartan)
        self.rank = cartan.rank
        self.generators: tuple[int, ...] = tuple(range(1, self.rank + 1))
        a = self.cartan_matrix
        self.coxeter_matrix = np.array(
            [[1 if i == j else _BOND_ORDER[int(a[i, j] * a[j, i])] for j in range(self.rank)]
             for i in range(self.rank)],
            dtype=np.int64,
        )
        self._refl = []
        for i in range(self.rank):
            m = np.eye(self.rank, dtype=np.int64)
            m[i, :] -= a[i, :]
            m.setflags(write=False)
            self._refl.append(m)
        self.positive_roots = self._positive_roots()
        self._lock = threading.Lock()
        self._by_word: dict[Word, Element] = {}
        self._lmul: dict[tuple[int, Word], Element] = {}
        self._rmul: dict[tuple[Word, int], Element] = {}
        self._bruhat: dict[tuple[Word, Word], bool] = {}
        self._all: list[Element] | None = None
        self._w0: Element | None = None
        eye = np.eye(self.rank, dtype=np.int64)
        eye.setflags(write=False)
        self.identity = self._intern((), eye, eye)

    @classmethod
    def from_type(cls, cartan: CartanType | str) -> CoxeterSystem:
        if isinstance(cartan, str):
            cartan = CartanType.parse(cartan)
        return cls(cartan)

    def __repr__(self) -> str:
        return f"CoxeterSystem({self.cartan})"

    def _positive_roots(self) -> np.ndarray:
        simple = [tuple(int(k == i) for k in range(self.rank)) for i in range(self.rank)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for beta in frontier:
                b = np.array(beta, dtype=np.int64)
                for r in self._refl:
                    img = tuple(int(c) for c in r @ b)
                    if all(c >= 0 for c in img) and img not in seen:
                        seen.add(img)
                        nxt.append(img)
            frontier = nxt
        roots = np.array(sorted(seen, key=lambda t: (sum(t), t)), dtype=np.int64)
        roots.setflags(write=False)
        return roots

    # -- element construction ---------------------------------------------

    def _intern(self, word: Word, matrix: np.ndarray, inverse: np.ndarray) -> Element:
        el = self._by_word.get(word)
        if el is None:
            with self._lock:
                el = self._by_word.setdefault(word, Element(self, word, matrix, inverse))
        return el

    def _canonical(self, matrix: np.ndarray, inverse: np.ndarray) -> Element:
        # greedy smallest left descent yields the ShortLex-minimal reduced word
        word: list[int] = []
        m, minv = matrix, inverse
        while True:
            s = next((i for i in range(self.rank) if minv[:, i].sum() < 0), None)
            if s is None:
                break
            word.append(s + 1)
            m = self._refl[s] @ m
            minv = minv @ self._refl[s]
        key = tuple(word)
        el = self._by_word.get(key)
        if el is not None:
            return el
        matrix = np.array(matrix, dtype=np.int64)
        inverse = np.array(inverse, dtype=np.int64)
        matrix.setflags(write=False)
        inverse.setflags(write=False)
        return self._intern(key, matrix, inverse)

    def element(self, word: Iterable[int] | str = ()) -> Element:
        """Element for an arbitrary (not necessarily reduced) word."""
        if isinstance(word, str):
            word = parse_word(word)
        word = tuple(word)
        el = self._by_word.get(word)
        if el is not None:
            return el
        m = np.eye(self.rank, dtype=np.int64)
        minv = np.eye(self.rank, dtype=np.int64)
        for s in word:
            if s not in self.generators:
                raise ValueError(f"generator {s} not in 1..{self.rank}")
            m = m @ self._refl[s - 1]
            minv = self._refl[s - 1] @ minv
        return self._canonical(m, minv)

    def from_matrix(self, matrix: np.ndarray) -> Element:
        """Element acting on the root lattice by ``matrix``."""
        matrix = np.asarray(matrix, dtype=np.int64)
        if matrix.shape != (self.rank, self.rank):
            raise ValueError("matrix shape does not match the rank")
        inverse = np.rint(np.linalg.inv(matrix)).astype(np.int64)
        if not np.array_equal(matrix @ inverse, np.eye(self.rank, dtype=np.int64)):
            raise ValueError("matrix is not invertible over the integers")
        el = self._canonical(matrix, inverse)
        if not np.array_equal(el.matrix, matrix):
            raise ValueError("matrix is not a Weyl group element")
        return el

    def gen(self, s: int) -> Element:
        return self.element((s,))

    # -- arithmetic -------------------------------------------------------

    def _check(self, *els: Element) -> None:
        for el in els:
            if el.system is not self:
                raise MixedSystemError(f"{el!r} does not belong to {self!r}")

    def multiply(self, a: Element, b: Element) -> Element:
        self._check(a, b)
        if not b.word:
            return a
        if not a.word:
            return b
        return self._canonical(a.matrix @ b.matrix, b._inv @ a._inv)

    def left_mult(self, s: int, x: Element) -> Element:
        """``s * x`` for a generator ``s``."""
        key = (s, x.word)
        out = self._lmul.get(key)
        if out is None:
            self._check(x)
            out = self._canonical(self._refl[s - 1] @ x.matrix, x._inv @ self._refl[s - 1])
            self._lmul[key] = out
        return out

    def right_mult(self, x: Element, s: int) -> Element:
        """``x * s`` for a generator ``s``."""
        key = (x.word, s)
        out = self._rmul.get(key)
        if out is None:
            self._check(x)
            out = self._canonical(x.matrix @ self._refl[s - 1], self._refl[s - 1] @ x._inv)
            self._rmul[key] = out
        return out

    def length(self, x: Element) -> int:
        self._check(x)
        return len(x.word)

    def is_left_descent(self, s: int, x: Element) -> bool:
        return bool(x._inv[:, s - 1].sum() < 0)

    def is_right_descent(self, x: Element, s: int) -> bool:
        return bool(x.matrix[:, s - 1].sum() < 0)

    def descents(self, x: Element, side: Literal["left", "right"] = "left") -> frozenset[int]:
        self._check(x)
        if side == "left":
            return frozenset(s for s in self.generators if self.is_left_descent(s, x))
        if side == "right":
            return frozenset(s for s in self.generators if self.is_right_descent(x, s))
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")

    def longest_element(self) -> Element:
        if self._w0 is None:
            x = self.identity
            while True:
                s = next((s for s in self.generators if not self.is_right_descent(x, s)), None)
                if s is None:
                    break
                x = self.right_mult(x, s)
            self._w0 = x
        return self._w0

    # -- Bruhat order -----------------------------------------------------

    def bruhat_leq(self, y: Element, x: Element) -> bool:
        """``y <= x`` in Bruhat order, by the lifting property."""
        self._check(y, x)
        return self._leq(y, x)

    def _leq(self, y: Element, x: Element) -> bool:
        ly, lx = len(y.word), len(x.word)
        if ly > lx:
            return False
        if ly == lx:
            return y.word == x.word
        if ly == 0:
            return True
        key = (y.word, x.word)
        hit = self._bruhat.get(key)
        if hit is not None:
            return hit
        s = x.word[0]
        sx = self.left_mult(s, x)
        if self.is_left_descent(s, y):
            res = self._leq(self.left_mult(s, y), sx)
        else:
            res = self._leq(y, sx)
        self._bruhat[key] = res
        return res

    def enumerate(self) -> list[Element]:
        """All elements, ordered by length then ShortLex word."""
        if self._all is None:
            layer = [self.identity]
            seen = {self.identity.word}
            out: list[Element] = []
            while layer:
                out.extend(sorted(layer))
                nxt = []
                for x in layer:
                    for s in self.generators:
                        if not self.is_right_descent(x, s):
                            y = self.right_mult(x, s)
                            if y.word not in seen:
                                seen.add(y.word)
                                nxt.append(y)
                layer = nxt
            self._all = out
        return list(self._all)

    def order(self) -> int:
        return len(self.enumerate())

    def interval(self, z: Element, x: Element) -> list[Element]:
        """All ``y`` with ``z <= y <= x`` in canonical order."""
        self._check(z, x)
        if not self._leq(z, x):
            return []
        lz, lx = len(z.word), len(x.word)
        return [y for y in self.enumerate()
                if lz <= len(y.word) <= lx and self._leq(z, y) and self._leq(y, x)]

    def comparable_pairs(self) -> list[tuple[Element, Element]]:
        """All ``(z, x)`` with ``z <= x``, ordered by ``(|z|, z, |x|, x)``."""
        els = self.enumerate()
        return [(z, x) for z in els for x in els if self._leq(z, x)]
