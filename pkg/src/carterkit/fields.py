"""Small finite fields GF(q), q <= 32, and the action of PSL(2, q) on the projective line.

Field elements are integers 0..q-1 encoding coefficient vectors in base p
(constant term first). Non-prime fields use Conway polynomials, so the
residue of x is a primitive element.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

from .perm import Permutation

# monic Conway polynomials, coefficients from the constant term up (leading 1 omitted)
CONWAY = {
    (2, 2): (1, 1),
    (2, 3): (1, 1, 0),
    (2, 4): (1, 1, 0, 0),
    (2, 5): (1, 0, 1, 0, 0),
    (3, 2): (2, 2),
    (3, 3): (1, 2, 0),
    (5, 2): (2, 4),
}


def prime_power(q: int) -> tuple[int, int] | None:
    """``(p, e)`` with ``q == p**e`` or None."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    return (p, e) if r == 1 else None


class GF:
    def __init__(self, q: int):
        pe = prime_power(q)
        if pe is None:
            raise ValueError(f"{q} is not a prime power")
        self.q = q
        self.p, self.e = pe
        if self.e > 1 and pe not in CONWAY:
            raise ValueError(f"no Conway polynomial tabulated for GF({q})")
        self._build_tables()

    def _vec(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.e)]

    def _int(self, v) -> int:
        return sum(c * self.p**i for i, c in enumerate(v))

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def power(self, a: int, n: int) -> int:
        if a == 0:
            return 0 if n else 1
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    @property
    def primitive(self) -> int:
        return self._exp[1 % (self.q - 1)]

    def _build_tables(self) -> None:
        p, e, q = self.p, self.e, self.q
        self._add = [[self._int([(x + y) % p for x, y in zip(self._vec(a), self._vec(b))])
                      for b in range(q)] for a in range(q)]
        self._neg = [self._int([(-x) % p for x in self._vec(a)]) for a in range(q)]
        if e == 1:
            g = next(g for g in range(1, q) if _mult_order_mod(g, q) == q - 1) if q > 2 else 1
            powers = [pow(g, k, q) for k in range(q - 1)]
        else:
            poly = CONWAY[(p, e)]
            cur = [1] + [0] * (e - 1)
            powers = []
            for _ in range(q - 1):
                powers.append(self._int(cur))
                # multiply by x and reduce by the Conway polynomial
                top = cur[-1]
                cur = [0] + cur[:-1]
                cur = [(c - top * poly[i]) % p for i, c in enumerate(cur)]
        if len(set(powers)) != q - 1:
            raise ValueError(f"defining polynomial for GF({q}) is not primitive")
        self._exp = powers
        self._log = {a: k for k, a in enumerate(powers)}


def _mult_order_mod(g: int, n: int) -> int:
    k, x = 1, g % n
    while x != 1:
        x = x * g % n
        k += 1
    return k


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)


INF = -1


def _point_index(x: int) -> int:
    # projective line ordered as infinity, 0, 1, ..., q-1
    return 0 if x == INF else x + 1


def mobius(F: GF, a: int, b: int, c: int, d: int) -> Permutation:
    """``x -> (a x + b) / (c x + d)`` on the q + 1 projective points."""
    images = [0] * (F.q + 1)
    for x in [INF] + list(range(F.q)):
        if x == INF:
            y = INF if c == 0 else F.mul(a, F.inv(c))
        else:
            num = F.add(F.mul(a, x), b)
            den = F.add(F.mul(c, x), d)
            y = INF if den == 0 else F.mul(num, F.inv(den))
        images[_point_index(x)] = _point_index(y)
    return Permutation(images)


def frobenius(F: GF) -> Permutation:
    images = [0] * (F.q + 1)
    for x in range(F.q):
        images[_point_index(x)] = _point_index(F.power(x, F.p))
    return Permutation(images)


def psl2_generators(q: int) -> list[Permutation]:
    F = field(q)
    w2 = F.mul(F.primitive, F.primitive)
    return [
        mobius(F, 1, 1, 0, 1),              # x -> x + 1
        mobius(F, w2, 0, 0, 1),             # x -> w^2 x
        mobius(F, 0, F.neg(1), 1, 0),       # x -> -1/x
    ]


def psl2_order(q: int) -> int:
    return q * (q * q - 1) // gcd(2, q - 1)
