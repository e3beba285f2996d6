"""Induced automorphism groups of sections and the embedding into a wreath product.

For a section ``A/B`` of an ambient group and a subgroup ``H``, the group
``N_H(A) ∩ N_H(B)`` acts on ``A/B`` by conjugation. The image of that action is
``Aut_H(A/B)`` and its kernel is ``C_H(A/B)``. Images are realized as
permutation groups, either on the support of ``A`` or, when that action is not
faithful on ``A``, on a conjugation-invariant generating set of ``A``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import CarterKitError
from .group import PermGroup
from .homs import Hom, action_hom, quotient_group, restriction_hom
from .perm import Permutation
from .subgroups import centralizer, normalizer


@dataclass
class Section:
    ambient: PermGroup
    A: PermGroup
    B: PermGroup

    def __post_init__(self) -> None:
        if not self.B.is_subgroup_of(self.A) or not self.A.is_subgroup_of(self.ambient):
            raise ValueError("section needs B <= A <= ambient")
        if not self.A.normalizes(self.B):
            raise ValueError("B must be normal in A")

    @property
    def order(self) -> int:
        return self.A.order() // self.B.order()


@dataclass
class InducedAutResult:
    aut_group: PermGroup
    kernel: PermGroup
    map: Hom
    normalizer: PermGroup

    def check(self, samples: int = 20, seed: int = 0) -> bool:
        """Order identity plus sampled triviality of the kernel's action."""
        if self.aut_group.order() * self.kernel.order() != self.normalizer.order():
            return False
        rng = random.Random(seed)
        for _ in range(samples):
            if not self.kernel.is_trivial() and not self.map(self.kernel.random_element(rng)).is_identity():
                return False
        return True


def _conjugation_domain(N: PermGroup, A: PermGroup) -> list[Permutation]:
    """Orbits of the generators of ``A`` under conjugation by ``N``; sorted."""
    dom = set(g for g in A.generators if not g.is_identity())
    todo = list(dom)
    while todo:
        x = todo.pop()
        for g in N.generators:
            y = x ^ g
            if y not in dom:
                dom.add(y)
                todo.append(y)
    return sorted(dom)


def _faithful_conjugation_action(N: PermGroup, A: PermGroup) -> Hom:
    """A homomorphism on ``N`` with kernel ``C_N(A)``, for ``N`` normalizing ``A``."""
    pts = sorted(A.moved_points())
    if pts:
        r = restriction_hom(N, pts)
        Ar = PermGroup([a.restrict(pts) for a in A.generators], degree=len(pts))
        if centralizer(r.image, Ar).is_trivial():
            return r
    dom = _conjugation_domain(N, A)
    if not dom:
        return Hom(N, [Permutation.identity(1)] * len(N.generators), 1,
                   func=lambda g: Permutation.identity(1), name="trivial")
    return action_hom(N, dom, lambda x, g: x ^ g, name="conjugation")


def induced_aut(H: PermGroup, sec: Section, seed: int = 0) -> InducedAutResult:
    """``Aut_H(A/B)`` with kernel ``C_H(A/B)``."""
    N = normalizer(H, sec.A)
    if not sec.B.is_trivial():
        N = normalizer(N, sec.B)
    if sec.B.is_trivial():
        hom = _faithful_conjugation_action(N, sec.A)
    else:
        U = PermGroup(list(N.generators) + list(sec.A.generators), degree=H.degree)
        q = quotient_group(U, U.subgroup(sec.B.generators), seed=seed)
        Nbar = q.image_of(N)
        Abar = q.image_of(sec.A)
        inner = _faithful_conjugation_action(Nbar, Abar)
        imgs = [inner(q(g)) for g in N.generators]
        hom = Hom(N, imgs, inner.target_degree, func=lambda g: inner(q(g)), name="section")
    K = hom.kernel()
    return InducedAutResult(hom.image, K, hom, N)


def induced_aut_quotient_invariance(G: PermGroup, Hn: PermGroup, sec: Section, seed: int = 0) -> dict:
    """Compare ``Aut_G(A/B)`` with ``Aut_{G/H}(A/B)`` for ``H <= B``.

    Returns both orders and whether ``n -> (phi1(n), phi2(n))`` is the graph of
    an isomorphism of the two action groups.
    """
    if not Hn.is_subgroup_of(sec.B):
        raise ValueError("the normal subgroup must lie inside the section's lower term")
    direct = induced_aut(G, sec, seed)
    q = quotient_group(G, Hn, seed=seed)
    Gbar = q.image
    sbar = Section(Gbar, q.image_of(sec.A), q.image_of(sec.B))
    via = induced_aut(Gbar, sbar, seed)
    N = direct.normalizer
    a1 = direct.aut_group
    a2 = via.aut_group
    pairs = [Permutation._raw(list(direct.map(g)) + [a1.degree + x for x in via.map(q(g))])
             for g in N.generators]
    graph = PermGroup(pairs, degree=a1.degree + a2.degree)
    iso = graph.order() == a1.order() == a2.order()
    return {"order_direct": a1.order(), "order_quotient": a2.order(), "isomorphic": iso,
            "equal": iso and a1.order() == a2.order()}


# --- wreath embedding ---------------------------------------------------------------

@dataclass
class WreathEmbedding:
    hom: Hom
    blocks: list[list[int]]
    factors: list[PermGroup]
    aut_groups: list[PermGroup] = field(default_factory=list)

    @property
    def injective(self) -> bool:
        return self.hom.image.order() == self.hom.source.order()

    def block_kernel(self) -> PermGroup:
        """Elements of the source fixing every block, i.e. ``G ∩ A``."""
        from .homs import block_action_hom
        return block_action_hom(self.hom.image, self.blocks).kernel()

    def projection(self, i: int) -> Hom:
        """Projection of the block kernel (in image coordinates) onto block ``i``."""
        return restriction_hom(self.block_kernel(), self.blocks[i])


def wreath_embed(G: PermGroup, socle_factors: list[PermGroup]) -> WreathEmbedding:
    """Embed ``G`` into ``(Aut_G(T_1) x ... x Aut_G(T_k)) ⋊ Sym_k``.

    ``socle_factors`` are the simple direct factors of a minimal normal
    subgroup ``H`` with trivial centralizer.
    """
    Hs = G.subgroup([t for T in socle_factors for t in T.generators])
    if not centralizer(G, Hs).is_trivial():
        raise CarterKitError("wreath embedding needs a minimal normal subgroup with trivial centralizer")
    supports = [sorted(T.moved_points()) for T in socle_factors]
    flat = [x for s in supports for x in s]
    if len(flat) == len(set(flat)):
        hom = restriction_hom(G, flat)
        blocks, pos = [], 0
        for s in supports:
            blocks.append(list(range(pos, pos + len(s))))
            pos += len(s)
    else:
        dom = _conjugation_domain(G, Hs)
        owner = []
        for x in dom:
            hits = [i for i, T in enumerate(socle_factors) if T.contains(x)]
            if len(hits) != 1:
                raise CarterKitError("socle generators do not split across the simple factors")
            owner.append(hits[0])
        order = sorted(range(len(dom)), key=lambda i: (owner[i], dom[i]))
        dom = [dom[i] for i in order]
        hom = action_hom(G, dom, lambda x, g: x ^ g, name="conjugation")
        blocks = [[j for j, i in enumerate(order) if owner[i] == b] for b in range(len(socle_factors))]
    emb = WreathEmbedding(hom, blocks, list(socle_factors))
    if not emb.injective:
        raise CarterKitError("wreath embedding is not injective")
    for i, T in enumerate(socle_factors):
        NT = normalizer(G, T)
        emb.aut_groups.append(PermGroup([hom(g).restrict(blocks[i]) for g in NT.generators],
                                        degree=len(blocks[i])))
    return emb
