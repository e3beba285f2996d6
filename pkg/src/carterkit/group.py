"""Permutation groups backed by a base and strong generating set."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import CapacityError, PermutationError
from .perm import Permutation

MAX_ORDER = 10**9
MAX_DEGREE = 10_000


@dataclass
class StabChain:
    """Stabilizer chain: ``base``, per-level strong generators and transversals.

    ``trans[i][x]`` maps ``base[i]`` to ``x`` and fixes ``base[:i]``.
    """

    degree: int
    base: list[int] = field(default_factory=list)
    gens: list[list[Permutation]] = field(default_factory=list)
    trans: list[dict[int, Permutation]] = field(default_factory=list)
    tinv: list[dict[int, Permutation]] = field(default_factory=list)

    def order(self) -> int:
        o = 1
        for t in self.trans:
            o *= len(t)
        return o

    def sift(self, g: Permutation, start: int = 0) -> tuple[Permutation, int]:
        """Strip ``g`` through levels ``start..``; returns residue and stop level."""
        base, tinv = self.base, self.tinv
        for i in range(start, len(base)):
            d = g[base[i]]
            u = tinv[i].get(d)
            if u is None:
                return g, i
            g = tuple.__new__(Permutation, map(u.__getitem__, g))
        return g, len(base)

    def contains(self, g: Permutation) -> bool:
        h, _ = self.sift(g)
        return all(i == x for i, x in enumerate(h))

    def strong_generators(self) -> list[Permutation]:
        seen = []
        ids = set()
        for lvl in self.gens:
            for s in lvl:
                if id(s) not in ids:
                    ids.add(id(s))
                    seen.append(s)
        return seen

    def random_element(self, rng: random.Random) -> Permutation:
        g = Permutation.identity(self.degree)
        for t in reversed(self.trans):
            keys = list(t)
            g = g * t[keys[rng.randrange(len(keys))]] if len(keys) > 1 else g
        return g

    def elements(self) -> Iterator[Permutation]:
        n = self.degree
        levels = [list(t.values()) for t in reversed(self.trans)]
        ident = Permutation.identity(n)
        if not levels:
            yield ident
            return
        for combo in itertools.product(*levels):
            g = ident
            for u in combo:
                g = g * u
            yield g

    def level_group_gens(self, i: int) -> list[Permutation]:
        return self.gens[i] if i < len(self.gens) else []

    # --- construction helpers -------------------------------------------
    def _add_level(self, point: int) -> None:
        ident = Permutation.identity(self.degree)
        self.base.append(point)
        self.gens.append([])
        self.trans.append({point: ident})
        self.tinv.append({point: ident})

    def _add_gen(self, level: int, g: Permutation) -> None:
        self.gens[level].append(g)
        t, ti = self.trans[level], self.tinv[level]
        gens = self.gens[level]
        frontier = list(t)
        # new generator applied to the whole orbit, then close under all gens
        new = []
        for x in frontier:
            y = g[x]
            if y not in t:
                u = t[x] * g
                t[y] = u
                ti[y] = ~u
                new.append(y)
        while new:
            nxt = []
            for x in new:
                for s in gens:
                    y = s[x]
                    if y not in t:
                        u = t[x] * s
                        t[y] = u
                        ti[y] = ~u
                        nxt.append(y)
            new = nxt


def _check_capacity(chain: StabChain) -> None:
    if chain.order() > MAX_ORDER:
        raise CapacityError(f"group order exceeds the engine limit {MAX_ORDER}")


def schreier_sims(gens: Sequence[Permutation], degree: int, base_prefix: Sequence[int] = ()) -> StabChain:
    """Deterministic Schreier-Sims; new base points are first moved points."""
    if degree > MAX_DEGREE:
        raise CapacityError(f"degree {degree} exceeds the engine limit {MAX_DEGREE}")
    ident = Permutation.identity(degree)
    chain = StabChain(degree)
    for b in base_prefix:
        chain._add_level(b)
    gens = [g for g in dict.fromkeys(gens) if g != ident]
    for g in gens:
        if all(g[b] == b for b in chain.base):
            chain._add_level(g.first_moved())
    for g in gens:
        for i, b in enumerate(chain.base):
            chain._add_gen(i, g)
            if g[b] != b:
                break
    i = len(chain.base) - 1
    while i >= 0:
        restarted = False
        t, ti = chain.trans[i], chain.tinv[i]
        for d in list(t):
            u = t[d]
            for s in list(chain.gens[i]):
                sg = u * s * ti[s[d]]
                if sg == ident:
                    continue
                h, j = chain.sift(sg, i + 1)
                if h == ident:
                    continue
                if j == len(chain.base):
                    chain._add_level(h.first_moved())
                for lvl in range(i + 1, j + 1):
                    chain._add_gen(lvl, h)
                _check_capacity(chain)
                i = j
                restarted = True
                break
            if restarted:
                break
        if not restarted:
            i -= 1
    _check_capacity(chain)
    return chain


def random_schreier_sims(sample, degree: int, order: int, base_prefix: Sequence[int] = ()) -> StabChain:
    """Build a chain from random elements of a group of known order.

    Exact: stops only once the product of basic orbit lengths reaches ``order``.
    """
    ident = Permutation.identity(degree)
    chain = StabChain(degree)
    for b in base_prefix:
        chain._add_level(b)
    misses = 0
    while chain.order() < order:
        g = sample()
        h, j = chain.sift(g)
        if h == ident:
            misses += 1
            if misses > 10_000:
                raise RuntimeError("random Schreier-Sims failed to converge")
            continue
        if j == len(chain.base):
            chain._add_level(h.first_moved())
        for lvl in range(0, j + 1):
            chain._add_gen(lvl, h)
    if chain.order() != order:
        raise RuntimeError("random Schreier-Sims overshot the known order")
    return chain


class PermGroup:
    """A permutation group given by generators; the BSGS index is built lazily.

    Subgroups carry a ``parent`` reference to the group they were taken in.
    """

    def __init__(self, generators: Iterable[Sequence[int]] = (), degree: int | None = None,
                 parent: "PermGroup | None" = None, name: str | None = None):
        gens = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
        if degree is None:
            if not gens:
                raise PermutationError("degree required for a group without generators")
            degree = len(gens[0])
        for g in gens:
            if len(g) != degree:
                raise PermutationError(f"generator of degree {len(g)} in a group of degree {degree}")
        self.degree = degree
        ident = Permutation.identity(degree)
        self.generators: list[Permutation] = [g for g in dict.fromkeys(gens) if g != ident]
        self.parent = parent
        self.name = name
        self._chain: StabChain | None = None

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<PermGroup{label} degree={self.degree} gens={len(self.generators)}>"

    # --- index --------------------------------------------------------------
    @property
    def chain(self) -> StabChain:
        if self._chain is None:
            self._chain = schreier_sims(self.generators, self.degree)
        return self._chain

    def build_index(self) -> "PermGroup":
        self.chain
        return self

    def chain_with_base(self, prefix: Sequence[int], seed: int = 0) -> StabChain:
        """A stabilizer chain whose base starts with ``prefix``."""
        c = self.chain
        if list(c.base[: len(prefix)]) == list(prefix):
            return c
        if c.order() == 1:
            return StabChain(self.degree)
        rng = random.Random(seed)
        return random_schreier_sims(lambda: c.random_element(rng), self.degree, c.order(), prefix)

    def order(self) -> int:
        return self.chain.order()

    def __len__(self) -> int:
        return self.order()

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def contains(self, g: Sequence[int]) -> bool:
        if len(g) != self.degree:
            raise PermutationError(f"degree mismatch: {len(g)} vs {self.degree}")
        if not isinstance(g, Permutation):
            g = Permutation(g)
        return self.chain.contains(g)

    __contains__ = contains

    def is_trivial(self) -> bool:
        return not self.generators

    def orbit(self, x: int) -> set[int]:
        seen = {x}
        todo = [x]
        while todo:
            y = todo.pop()
            for g in self.generators:
                z = g[y]
                if z not in seen:
                    seen.add(z)
                    todo.append(z)
        return seen

    def orbits(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for x in range(self.degree):
            if x not in seen:
                o = self.orbit(x)
                seen |= o
                out.append(sorted(o))
        return out

    def moved_points(self) -> list[int]:
        pts: set[int] = set()
        for g in self.generators:
            pts.update(g.support())
        return sorted(pts)

    def random_element(self, rng: random.Random) -> Permutation:
        return self.chain.random_element(rng)

    def elements(self) -> Iterator[Permutation]:
        return self.chain.elements()

    # --- subgroup relations ---------------------------------------------------
    def subgroup(self, gens: Iterable[Sequence[int]], name: str | None = None) -> "PermGroup":
        return PermGroup(gens, degree=self.degree, parent=self, name=name)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(other.contains(g) for g in self.generators)

    def equals(self, other: "PermGroup") -> bool:
        """Equality as sets, by order plus one-sided containment."""
        return (self.degree == other.degree and self.order() == other.order()
                and self.is_subgroup_of(other))

    def normalizes(self, H: "PermGroup") -> bool:
        return all(H.contains(h ^ g) for g in self.generators for h in H.generators)

    def is_normal_in(self, G: "PermGroup") -> bool:
        return G.normalizes(self)

    def is_abelian(self) -> bool:
        gs = self.generators
        return all(a * b == b * a for i, a in enumerate(gs) for b in gs[i + 1:])

    def pointwise_stabilizer(self, points: Sequence[int]) -> "PermGroup":
        pts = list(points)
        c = self.chain_with_base(pts)
        k = len(pts)
        # levels beyond the prefix generate the pointwise stabilizer
        gens = [g for lvl in c.gens[k:] for g in lvl]
        for lvl in c.gens[:k]:
            for g in lvl:
                if all(g[p] == p for p in pts):
                    gens.append(g)
        H = PermGroup(gens, degree=self.degree, parent=self)
        stab_order = 1
        for t in c.trans[k:]:
            stab_order *= len(t)
        H._chain = StabChain(self.degree, c.base[k:], [list(x) for x in c.gens[k:]],
                             c.trans[k:], c.tinv[k:]) if stab_order > 1 else None
        if stab_order == 1:
            H.generators = []
        return H

    def stabilizer(self, x: int) -> "PermGroup":
        return self.pointwise_stabilizer([x])

    def restrict(self, points: Sequence[int]) -> "PermGroup":
        """Image of the action on an invariant point set, relabelled 0..len-1."""
        return PermGroup([g.restrict(points) for g in self.generators], degree=len(points))

    def fingerprint(self) -> tuple:
        return (self.degree, self.order(), tuple(sorted(len(o) for o in self.orbits())))


def build_index(G: PermGroup) -> PermGroup:
    return G.build_index()


def order(G: PermGroup) -> int:
    return G.order()


def contains(G: PermGroup, g: Sequence[int]) -> bool:
    return G.contains(g)


def orbit(G: PermGroup, x: int) -> set[int]:
    return G.orbit(x)


def trivial_group(degree: int) -> PermGroup:
    return PermGroup([], degree=degree)


def group_from_chain(chain: StabChain, parent: PermGroup | None = None) -> PermGroup:
    G = PermGroup(chain.strong_generators(), degree=chain.degree, parent=parent)
    if G.generators:
        G._chain = chain
    return G
