"""Homomorphisms between permutation groups and faithful quotient representations.

A homomorphism is stored by generator images. Kernels, preimages and lifts
are computed in the graph group ``{(g, phi(g))}`` acting on the disjoint
union of the source and target domains.
"""

from __future__ import annotations

import random
from typing import Callable, Sequence

from .errors import CapacityError, CarterKitError
from .group import PermGroup, StabChain
from .perm import Permutation

QUOTIENT_DEGREE_CAP = 10_000


class Hom:
    def __init__(self, source: PermGroup, gen_images: Sequence[Permutation], target_degree: int,
                 func: Callable[[Permutation], Permutation] | None = None, name: str = ""):
        if len(gen_images) != len(source.generators):
            raise ValueError("one image per source generator required")
        self.source = source
        self.gen_images = list(gen_images)
        self.target_degree = target_degree
        self.image = PermGroup(self.gen_images, degree=target_degree)
        self._func = func
        self.name = name
        self._graph: PermGroup | None = None
        self._img_first: StabChain | None = None
        self._src_first: StabChain | None = None

    def __repr__(self) -> str:
        return f"<Hom {self.name} {self.source.degree}->{self.target_degree}>"

    # --- graph group --------------------------------------------------------
    @property
    def graph(self) -> PermGroup:
        if self._graph is None:
            n = self.source.degree
            gens = [Permutation._raw(list(g) + [n + x for x in y])
                    for g, y in zip(self.source.generators, self.gen_images)]
            D = PermGroup(gens, degree=n + self.target_degree)
            if D.order() != self.source.order():
                raise CarterKitError("generator images do not define a homomorphism")
            self._graph = D
        return self._graph

    def _image_first_chain(self) -> StabChain:
        if self._img_first is None:
            n = self.source.degree
            self._img_first = self.graph.chain_with_base([n + b for b in self.image.chain.base])
        return self._img_first

    def _source_first_chain(self) -> StabChain:
        if self._src_first is None:
            self._src_first = self.graph.chain_with_base(list(self.source.chain.base))
        return self._src_first

    # --- evaluation ---------------------------------------------------------------
    def __call__(self, g: Permutation) -> Permutation:
        if self._func is not None:
            return self._func(g)
        n, m = self.source.degree, self.target_degree
        c = self._source_first_chain()
        k = len(self.source.chain.base)
        r = Permutation._raw(list(g) + list(range(n, n + m)))
        r, _ = _sift_levels(c, r, k)
        if any(r[i] != i for i in range(n)):
            raise CarterKitError("element not in the source group")
        w = ~r
        return Permutation._raw([w[n + y] - n for y in range(m)])

    def lift(self, y: Permutation) -> Permutation:
        """Some source element mapping to ``y``."""
        n, m = self.source.degree, self.target_degree
        c = self._image_first_chain()
        k = len(self.image.chain.base)
        r = Permutation._raw(list(range(n)) + [n + x for x in y])
        r, _ = _sift_levels(c, r, k)
        if any(r[n + i] != n + i for i in range(m)):
            raise CarterKitError("element not in the image")
        w = ~r
        return Permutation._raw(w[:n])

    def kernel(self) -> PermGroup:
        n = self.source.degree
        if self.image.order() == self.source.order():
            return self.source.subgroup([])
        c = self._image_first_chain()
        k = len(self.image.chain.base)
        gens = [Permutation._raw(s[:n]) for lvl in c.gens[k:] for s in lvl]
        K = self.source.subgroup(gens)
        expected = self.source.order() // self.image.order()
        if K.order() != expected:
            raise CarterKitError("kernel order mismatch")
        return K

    def preimage(self, S: PermGroup) -> PermGroup:
        gens = list(self.kernel().generators) + [self.lift(y) for y in S.generators]
        return self.source.subgroup(gens)

    def image_of(self, H: PermGroup) -> PermGroup:
        return PermGroup([self(h) for h in H.generators], degree=self.target_degree, parent=self.image)

    def is_injective(self) -> bool:
        return self.image.order() == self.source.order()

    def then(self, other: "Hom") -> "Hom":
        """Composite ``self`` followed by ``other``."""
        imgs = [other(y) for y in self.gen_images]
        f, g = self, other
        return Hom(self.source, imgs, other.target_degree, func=lambda x: g(f(x)),
                   name=f"{self.name}*{other.name}")


def _sift_levels(c: StabChain, r: Permutation, k: int) -> tuple[Permutation, int]:
    for i in range(min(k, len(c.base))):
        u = c.tinv[i].get(r[c.base[i]])
        if u is None:
            return r, i
        r = r * u
    return r, k


# --- concrete actions ------------------------------------------------------------

def action_hom(G: PermGroup, domain: Sequence, act: Callable, name: str = "action") -> Hom:
    """Action of ``G`` on a finite invariant ``domain`` via ``act(x, g)``."""
    index = {x: i for i, x in enumerate(domain)}

    def func(g: Permutation) -> Permutation:
        return Permutation._raw([index[act(x, g)] for x in domain])

    imgs = [func(g) for g in G.generators]
    return Hom(G, imgs, len(domain), func=func, name=name)


def restriction_hom(G: PermGroup, points: Sequence[int]) -> Hom:
    pts = list(points)

    def func(g: Permutation) -> Permutation:
        return g.restrict(pts)

    return Hom(G, [func(g) for g in G.generators], len(pts), func=func, name="restriction")


def block_action_hom(G: PermGroup, blocks: Sequence[Sequence[int]]) -> Hom:
    where = {}
    for i, b in enumerate(blocks):
        for x in b:
            where[x] = i

    def func(g: Permutation) -> Permutation:
        return Permutation._raw([where[g[b[0]]] for b in blocks])

    return Hom(G, [func(g) for g in G.generators], len(blocks), func=func, name="blocks")


def _coset_key(c: StabChain, x: Permutation) -> Permutation:
    """Canonical element of the right coset ``U x`` for ``U`` with chain ``c``."""
    y = x
    for i, b in enumerate(c.base):
        best = min(c.trans[i], key=lambda d: y[d])
        y = c.trans[i][best] * y
    return y


def coset_action_hom(G: PermGroup, U: PermGroup, cap: int = QUOTIENT_DEGREE_CAP) -> Hom:
    """Action of ``G`` on the right cosets of ``U`` by right multiplication."""
    index = G.order() // U.order()
    if index > cap:
        raise CapacityError(f"coset action of degree {index} exceeds the cap {cap}")
    c = U.chain
    ident = G.identity
    keys = {_coset_key(c, ident): 0}
    reps = [ident]
    i = 0
    while i < len(reps):
        for g in G.generators:
            k = _coset_key(c, reps[i] * g)
            if k not in keys:
                keys[k] = len(reps)
                reps.append(k)
        i += 1
    if len(reps) != index:
        raise CarterKitError("coset enumeration incomplete")

    def func(g: Permutation) -> Permutation:
        return Permutation._raw([keys[_coset_key(c, r * g)] for r in reps])

    return Hom(G, [func(g) for g in G.generators], index, func=func, name="cosets")


def identity_hom(G: PermGroup) -> Hom:
    return Hom(G, list(G.generators), G.degree, func=lambda g: g, name="identity")


def _moved_blocks(G: PermGroup, blocks: list[list[int]]) -> list[list[int]]:
    where = {x: i for i, b in enumerate(blocks) for x in b}
    moved = {i for g in G.generators for i, b in enumerate(blocks) if where[g[b[0]]] != i}
    return [b for i, b in enumerate(blocks) if i in moved]


def quotient_group(G: PermGroup, N: PermGroup, cap: int = QUOTIENT_DEGREE_CAP, seed: int = 0) -> Hom:
    """Epimorphism from ``G`` onto a faithful permutation representation of ``G/N``.

    Tries the action on the orbits of ``N`` first, then the action on cosets of
    a subgroup containing ``N`` with trivial core modulo ``N``.
    """
    target = G.order() // N.order()
    if N.order() == 1:
        return identity_hom(G)
    if target == 1:
        return Hom(G, [Permutation.identity(1)] * len(G.generators), 1,
                   func=lambda g: Permutation.identity(1), name="trivial")
    blocks = _moved_blocks(G, N.orbits())
    if blocks:
        h = block_action_hom(G, blocks)
        if h.image.order() == target:
            return h
    best = coset_action_hom(G, N, cap)
    if target <= 3:
        return best
    # look for a core-free subgroup of the quotient with small index
    rng = random.Random(seed)
    cands = list(G.generators) + [a * b for a in G.generators for b in G.generators]
    cands += [G.random_element(rng) for _ in range(20)]
    tried = set()
    for x in cands:
        if N.contains(x):
            continue
        U = G.subgroup(N.generators + [x])
        key = U.order()
        idx = G.order() // key
        if idx >= best.target_degree or (key, x) in tried:
            continue
        tried.add((key, x))
        h = coset_action_hom(G, U, cap)
        if h.image.order() == target:
            best = h
    return best
