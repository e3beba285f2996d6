"""Permutations on {0, ..., n-1}.

Composition is left-to-right: ``(p * q)(x) == q(p(x))``. Conjugation follows
the same convention, ``p ^ g == ~g * p * g``.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Sequence

from .errors import PermutationError


class Permutation(tuple):
    """An immutable permutation stored as its image tuple."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int] = ()):
        p = tuple.__new__(cls, images)
        if sorted(p) != list(range(len(p))):
            raise PermutationError(f"not a bijection on 0..{len(p) - 1}: {tuple(p)}")
        return p

    @classmethod
    def _raw(cls, images: Iterable[int]) -> "Permutation":
        # no validation; internal fast path
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return tuple.__new__(cls, range(degree))

    @property
    def degree(self) -> int:
        return len(self)

    def __call__(self, x: int) -> int:
        return self[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if len(self) != len(other):
            raise PermutationError(f"degree mismatch: {len(self)} vs {len(other)}")
        return tuple.__new__(Permutation, map(other.__getitem__, self))

    def __invert__(self) -> "Permutation":
        inv = [0] * len(self)
        for i, j in enumerate(self):
            inv[j] = i
        return tuple.__new__(Permutation, inv)

    def __pow__(self, n: int) -> "Permutation":
        if n < 0:
            return (~self) ** (-n)
        result = Permutation.identity(len(self))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __xor__(self, g: "Permutation") -> "Permutation":
        return ~g * self * g

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()}, degree={len(self)})"

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self))

    def cycles(self, include_fixed: bool = False) -> list[list[int]]:
        seen = [False] * len(self)
        out = []
        for i in range(len(self)):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = self[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self[j]
            if len(cyc) > 1 or include_fixed:
                out.append(cyc)
        return out

    def cycle_string(self) -> str:
        cs = self.cycles()
        if not cs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cs)

    def order(self) -> int:
        o = 1
        for c in self.cycles():
            o = o * len(c) // gcd(o, len(c))
        return o

    def support(self) -> list[int]:
        return [i for i, x in enumerate(self) if i != x]

    def first_moved(self) -> int | None:
        for i, x in enumerate(self):
            if i != x:
                return i
        return None

    def commutator(self, other: "Permutation") -> "Permutation":
        """``[p, q] = p^-1 q^-1 p q``."""
        return ~self * ~other * self * other

    def restrict(self, points: Sequence[int]) -> "Permutation":
        """Action on ``points`` (which must be invariant), relabelled 0..len-1."""
        pos = {x: i for i, x in enumerate(points)}
        try:
            return tuple.__new__(Permutation, (pos[self[x]] for x in points))
        except KeyError:
            raise PermutationError("point set is not invariant") from None


def perm_from_cycles(degree: int, cycles: Iterable[Sequence[int]]) -> Permutation:
    """The product of disjoint cycles; points not mentioned are fixed."""
    images = list(range(degree))
    seen: set[int] = set()
    for cyc in cycles:
        for x in cyc:
            if not 0 <= x < degree:
                raise PermutationError(f"point {x} out of range for degree {degree}")
            if x in seen:
                raise PermutationError(f"point {x} repeated")
            seen.add(x)
        for a, b in zip(cyc, list(cyc[1:]) + list(cyc[:1])):
            images[a] = b
    return Permutation._raw(images)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` then ``q``."""
    return p * q


def shift(p: Sequence[int], offset: int, degree: int) -> Permutation:
    """Embed ``p`` on the points ``offset..offset+len(p)-1`` of a larger domain."""
    images = list(range(degree))
    for i, x in enumerate(p):
        images[offset + i] = offset + x
    return Permutation._raw(images)
