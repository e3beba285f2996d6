"""Backtrack search over a stabilizer chain.

Elements of ``G`` are enumerated by their base images in lexicographic order
(base points first, then remaining points ascending). Two generic prunings
apply to every subgroup search:

* a candidate image must be minimal in its orbit under the stabilizer, in the
  subgroup found so far, of the images already fixed;
* once the subgroup found so far contains the stabilizer ``G^(i)`` of the
  current level, the whole subtree is decided by testing a single element.

Property-specific pruning is supplied by the caller as ``prune(level, images)``.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .errors import CapacityError
from .group import PermGroup, StabChain
from .perm import Permutation

DEFAULT_NODE_BUDGET = 10**8

Prune = Callable[[int, list], bool]


class _Search:
    def __init__(self, G: PermGroup, test: Callable[[Permutation], bool], known: Sequence[Permutation],
                 prune: Prune | None, node_budget: int, coset_stabilizer: PermGroup | None = None,
                 first_only: bool = False):
        self.G = G
        self.c: StabChain = G.chain
        self.base = list(self.c.base)
        self.m = len(self.base)
        n = G.degree
        self.rank = {p: i for i, p in enumerate(self.base)}
        for x in range(n):
            self.rank.setdefault(x, self.m + x)
        self.test = test
        self.prune = prune
        self.node_budget = node_budget
        self.nodes = 0
        self.first_only = first_only
        self.found: Permutation | None = None
        # subgroup search grows K; coset search keeps a fixed stabilizer
        self.grow = coset_stabilizer is None
        self.K = coset_stabilizer if coset_stabilizer is not None else G.subgroup(known)
        self._reset_caches()

    def _reset_caches(self) -> None:
        self._stab_cache: dict[tuple, PermGroup] = {}
        self._level_in_K: dict[int, bool] = {}

    def _K_stab(self, images: tuple) -> PermGroup:
        S = self._stab_cache.get(images)
        if S is None:
            if not images:
                S = self.K
            else:
                parent = self._K_stab(images[:-1])
                S = parent.stabilizer(images[-1]) if not parent.is_trivial() else parent
            self._stab_cache[images] = S
        return S

    def _level_contained(self, i: int) -> bool:
        v = self._level_in_K.get(i)
        if v is None:
            gens = self.c.gens[i] if i < self.m else []
            v = all(self.K.contains(s) for s in gens)
            self._level_in_K[i] = v
        return v

    def _is_minimal(self, gamma: int, images: tuple) -> bool:
        S = self._K_stab(images)
        if S.is_trivial():
            return True
        r = self.rank[gamma]
        return all(self.rank[y] >= r for y in S.orbit(gamma))

    def _accept(self, g: Permutation) -> None:
        if self.first_only:
            self.found = g
            return
        if self.K.contains(g):
            return
        if self.test(g):
            self.K = self.G.subgroup(self.K.generators + [g])
            self._reset_caches()

    def run(self) -> None:
        self._dfs(0, Permutation.identity(self.G.degree), ())

    def _dfs(self, i: int, p: Permutation, images: tuple) -> None:
        if self.found is not None:
            return
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise CapacityError(f"backtrack node budget {self.node_budget} exceeded")
        if i == self.m or self._level_contained(i):
            if self.first_only:
                if self.test(p):
                    self.found = p
            else:
                self._accept(p)
            return
        trans = self.c.trans[i]
        cands = sorted(((p[d], d) for d in trans), key=lambda t: self.rank[t[0]])
        for gamma, d in cands:
            if self.grow and not self._is_minimal(gamma, images):
                continue
            new_images = images + (gamma,)
            if self.prune is not None and not self.prune(i, list(new_images)):
                continue
            self._dfs(i + 1, trans[d] * p, new_images)
            if self.found is not None:
                return


def subgroup_search(G: PermGroup, test: Callable[[Permutation], bool], known: Sequence[Permutation] = (),
                    prune: Prune | None = None, node_budget: int = DEFAULT_NODE_BUDGET) -> PermGroup:
    """The subgroup of ``G`` of elements satisfying ``test``.

    ``test`` must define a subgroup and ``known`` must lie in it; ``prune`` must
    never reject a partial base image of a satisfying element.
    """
    s = _Search(G, test, known, prune, node_budget)
    s.run()
    K = s.K
    K.parent = G
    K.search_nodes = s.nodes
    return K


def element_search(G: PermGroup, test: Callable[[Permutation], bool], stabilizer: PermGroup | None = None,
                   prune: Prune | None = None, node_budget: int = DEFAULT_NODE_BUDGET) -> Permutation | None:
    """First element of ``G`` (in base-image order) satisfying ``test``, or None.

    When the solutions form a union of left cosets ``stabilizer * g`` the
    stabilizer is used to cut subtrees.
    """
    stab = stabilizer if stabilizer is not None else G.subgroup([])
    s = _Search(G, test, (), prune, node_budget, coset_stabilizer=stab, first_only=True)
    s.run()
    return s.found
