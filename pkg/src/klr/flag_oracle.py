"""Point counts of open Richardson varieties in GL_n / B over a finite field.

A complete flag ``F_1 < ... < F_n = F_q^n`` is stored as an ``n x n`` matrix
whose first ``i`` rows span ``F_i``. Row ``k`` is normalised to have leading
entry 1 and zeros in the leading columns of rows ``1..k-1``, which makes the
matrix unique per flag.

The counts are compared against the R-polynomials ``R_{y,y'}(q)`` obtained
from the Hecke algebra.
"""

from __future__ import annotations

import functools
import itertools
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .coxeter import CartanType, CoxeterSystem, Element, get_system
from .hecke import r_poly

__all__ = [
    "FiniteField",
    "FlagPoint",
    "GuardError",
    "RichardsonCount",
    "count_open_richardson",
    "enumerate_flags",
    "flag_count",
    "opposite_flag",
    "relative_position",
    "richardson_tally",
    "standard_flag",
]

GUARD_N = 4
GUARD_Q = (2, 3, 4, 5)


class GuardError(ValueError):
    """Parameters exceed the desk-scale limits (set KLR_GUARD_OFF=1 to lift)."""


def _prime_power(q: int) -> tuple[int, int] | None:
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, m = 0, q
    while m % p == 0:
        m //= p
        k += 1
    return (p, k) if m == 1 else None


class FiniteField:
    """``F_q`` with elements ``0..q-1`` and precomputed operation tables.

    For ``q = p^k`` an element's base-``p`` digits are its coefficients in
    ``F_p[t] / (f)`` for the smallest monic irreducible ``f`` of degree ``k``.
    """

    def __init__(self, q: int):
        pk = _prime_power(q)
        if pk is None:
            raise ValueError(f"{q} is not a prime power")
        self.q = q
        self.p, self.k = pk
        p, k = pk
        if k == 1:
            self.add = [[(a + b) % p for b in range(q)] for a in range(q)]
            self.mul = [[(a * b) % p for b in range(q)] for a in range(q)]
        else:
            modulus = self._irreducible(p, k)
            digits = [self._digits(a) for a in range(q)]
            self.add = [[self._number([(x + y) % p for x, y in zip(digits[a], digits[b])])
                         for b in range(q)] for a in range(q)]
            self.mul = [[self._number(self._polymul(digits[a], digits[b], modulus))
                         for b in range(q)] for a in range(q)]
        self.neg = [self.add[a].index(0) for a in range(q)]
        self.inv = [0] + [self.mul[a].index(1) for a in range(1, q)]

    def _digits(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.k)]

    def _number(self, digits: Sequence[int]) -> int:
        return sum(d * self.p**i for i, d in enumerate(digits))

    def _polymul(self, a: Sequence[int], b: Sequence[int], modulus: Sequence[int]) -> list[int]:
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
        # modulus is monic of degree k, given low-to-high with k+1 entries
        for deg in range(len(prod) - 1, k - 1, -1):
            c = prod[deg]
            if c:
                for i in range(k + 1):
                    prod[deg - k + i] = (prod[deg - k + i] - c * modulus[i]) % p
        return prod[:k]

    @staticmethod
    def _irreducible(p: int, k: int) -> list[int]:
        for low in itertools.product(range(p), repeat=k):
            f = list(low) + [1]
            # no roots and no factor of degree <= k/2: brute-force by trial division
            if all(FiniteField._remainder(f, g, p) for d in range(1, k // 2 + 1)
                   for g in FiniteField._monics(p, d)):
                return f
        raise AssertionError("no irreducible polynomial found")

    @staticmethod
    def _monics(p: int, d: int) -> Iterator[list[int]]:
        for low in itertools.product(range(p), repeat=d):
            yield list(low) + [1]

    @staticmethod
    def _remainder(f: list[int], g: list[int], p: int) -> bool:
        r = list(f)
        dg = len(g) - 1
        for deg in range(len(r) - 1, dg - 1, -1):
            c = r[deg]
            if c:
                for i in range(dg + 1):
                    r[deg - dg + i] = (r[deg - dg + i] - c * g[i]) % p
        return any(r[:dg])

    def rank(self, rows: Sequence[Sequence[int]]) -> int:
        """Rank of a matrix over ``F_q`` by Gaussian elimination."""
        m = [list(r) for r in rows]
        if not m:
            return 0
        add, mul, neg, inv = self.add, self.mul, self.neg, self.inv
        rank, ncols = 0, len(m[0])
        for col in range(ncols):
            piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
            if piv is None:
                continue
            m[rank], m[piv] = m[piv], m[rank]
            scale = inv[m[rank][col]]
            m[rank] = [mul[scale][a] for a in m[rank]]
            for i in range(len(m)):
                if i != rank and m[i][col]:
                    f = neg[m[i][col]]
                    m[i] = [add[a][mul[f][b]] for a, b in zip(m[i], m[rank])]
            rank += 1
            if rank == len(m):
                break
        return rank


@functools.lru_cache(maxsize=None)
def field(q: int) -> FiniteField:
    return FiniteField(q)


@dataclass(frozen=True)
class FlagPoint:
    q: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.basis)

    def subspace(self, i: int) -> tuple[tuple[int, ...], ...]:
        return self.basis[:i]


def _guard(n: int, q: int, override: bool) -> None:
    if _prime_power(q) is None:
        raise ValueError(f"q = {q} is not a prime power")
    if n < 2:
        raise ValueError("flags need n >= 2")
    if override or os.environ.get("KLR_GUARD_OFF") == "1":
        return
    if n > GUARD_N or q not in GUARD_Q:
        raise GuardError(f"n = {n}, q = {q} is outside n <= {GUARD_N}, q in {GUARD_Q}; "
                         "set KLR_GUARD_OFF=1 to override")


def _next_rows(n: int, q: int, pivots: frozenset[int]) -> Iterator[tuple[tuple[int, ...], int]]:
    free = [c for c in range(n) if c not in pivots]
    for lead_pos, lead in enumerate(free):
        tail = free[lead_pos + 1:]
        for vals in itertools.product(range(q), repeat=len(tail)):
            row = [0] * n
            row[lead] = 1
            for c, a in zip(tail, vals):
                row[c] = a
            yield tuple(row), lead


def _extend(n: int, q: int, rows: tuple, pivots: frozenset[int]) -> Iterator[FlagPoint]:
    if len(rows) == n:
        yield FlagPoint(q, rows)
        return
    for row, lead in _next_rows(n, q, pivots):
        yield from _extend(n, q, rows + (row,), pivots | {lead})


def enumerate_flags(n: int, q: int, *, override: bool = False,
                    shard: int | None = None) -> Iterator[FlagPoint]:
    """Stream every complete flag in ``F_q^n`` exactly once.

    ``shard`` restricts to flags whose first line is the ``shard``-th choice.
    """
    _guard(n, q, override)
    for i, (row, lead) in enumerate(_next_rows(n, q, frozenset())):
        if shard is None or shard == i:
            yield from _extend(n, q, (row,), frozenset({lead}))


def flag_count(n: int, q: int) -> int:
    """``prod_{i=1..n} (q^i - 1) / (q - 1)``."""
    out = 1
    for i in range(1, n + 1):
        out *= (q**i - 1) // (q - 1)
    return out


def standard_flag(n: int, q: int) -> FlagPoint:
    return FlagPoint(q, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def opposite_flag(n: int, q: int) -> FlagPoint:
    return FlagPoint(q, tuple(tuple(int(j == n - 1 - i) for j in range(n)) for i in range(n)))


def _type_a(n: int) -> CoxeterSystem:
    return get_system(CartanType("A", n - 1))


def permutation_element(perm: Sequence[int]) -> Element:
    """Weyl group element of ``A_{n-1}`` sending ``e_i`` to ``e_{perm[i]}`` (0-based)."""
    n = len(perm)
    W = _type_a(n)
    m = np.zeros((n - 1, n - 1), dtype=np.int64)
    for j in range(n - 1):
        a, b = perm[j], perm[j + 1]
        # e_a - e_b in the simple-root basis e_k - e_{k+1}
        lo, hi, sign = (a, b, 1) if a < b else (b, a, -1)
        for k in range(lo, hi):
            m[k, j] = sign
    return W.from_matrix(m)


def relative_position(E: FlagPoint, F: FlagPoint) -> Element:
    """Permutation ``w`` with ``w(i) = j`` where ``dim(E_i & F_j)`` jumps in both indices."""
    if E.n != F.n or E.q != F.q:
        raise ValueError("flags of different dimension or field")
    n, K = E.n, field(E.q)
    d = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            d[i][j] = i + j - K.rank(E.basis[:i] + F.basis[:j])
    perm = [0] * n
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if d[i][j] - d[i - 1][j] - d[i][j - 1] + d[i - 1][j - 1] == 1:
                perm[i - 1] = j - 1
    return permutation_element(perm)


def _tally_shard(args: tuple[int, int, int | None]) -> Counter:
    n, q, shard = args
    W = _type_a(n)
    w0 = W.longest_element()
    std, opp = standard_flag(n, q), opposite_flag(n, q)
    out: Counter = Counter()
    for F in enumerate_flags(n, q, override=True, shard=shard):
        schubert = relative_position(std, F)
        # opp = w0.std, so F lies in the opposite cell of y when pos(opp, F) * w0 = y
        opposite = W.multiply(relative_position(opp, F), w0)
        out[(opposite.word, schubert.word)] += 1
    return out


@functools.lru_cache(maxsize=None)
def _tally_cached(n: int, q: int) -> dict:
    return dict(_tally_shard((n, q, None)))


def richardson_tally(n: int, q: int, *, jobs: int = 1,
                     override: bool = False) -> dict[tuple[tuple[int, ...], tuple[int, ...]], int]:
    """Number of flags in each open Richardson cell, keyed by ``(y word, y' word)``."""
    _guard(n, q, override)
    if jobs <= 1:
        return dict(_tally_cached(n, q))
    n_shards = (q**n - 1) // (q - 1)
    total: Counter = Counter()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_tally_shard, [(n, q, s) for s in range(n_shards)]):
            total.update(part)
    return dict(total)


def r_value(y: Element, y_prime: Element, q: int) -> int:
    """``R_{y,y'}(q)`` from the renormalised r-polynomial."""
    R = r_poly(y, y_prime).to_R(len(y_prime) - len(y))
    return sum(c * q**k for k, c in R.items())


@dataclass(frozen=True)
class RichardsonCount:
    y: Element
    y_prime: Element
    q: int
    count: int
    R_value: int

    @property
    def verdict(self) -> str:
        return "OK" if self.count == self.R_value else "MISMATCH"


def count_open_richardson(y: Element, y_prime: Element, q: int, *,
                          override: bool = False) -> RichardsonCount:
    """Count flags in ``B y' B / B`` and ``B^- y B / B`` by full enumeration."""
    W = y.system
    if y_prime.system is not W or W.cartan.family != "A":
        raise ValueError("y and y' must lie in one type A system")
    n = W.rank + 1
    tally = richardson_tally(n, q, override=override)
    count = tally.get((y.word, y_prime.word), 0)
    return RichardsonCount(y, y_prime, q, count, r_value(y, y_prime, q))
