"""Subgroup machinery: normalizers, centralizers, series, Sylow and Hall subgroups."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .backtrack import DEFAULT_NODE_BUDGET, element_search, subgroup_search
from .errors import NotSolvableError
from .group import PermGroup
from .perm import Permutation


# --- arithmetic helpers --------------------------------------------------------

def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def p_part(n: int, p: int) -> int:
    r = 1
    while n % p == 0:
        n //= p
        r *= p
    return r


def is_prime_power(n: int) -> bool:
    return n > 1 and len(prime_factors(n)) == 1


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


# --- stabilizer bookkeeping ---------------------------------------------------

class _StabilizerTower:
    """Cached point stabilizers ``H_{x1,...,xk}`` keyed by the point tuple."""

    def __init__(self, H: PermGroup):
        self.H = H
        self.cache: dict[tuple, PermGroup] = {(): H}

    def __call__(self, pts: tuple) -> PermGroup:
        S = self.cache.get(pts)
        if S is None:
            parent = self(pts[:-1])
            S = parent if parent.is_trivial() else parent.stabilizer(pts[-1])
            self.cache[pts] = S
        return S

    def orbit_size(self, pts: tuple, x: int) -> int:
        S = self(pts)
        return 1 if S.is_trivial() else len(S.orbit(x))


def _orbit_size_prune(G: PermGroup, H: PermGroup, V: PermGroup | None = None):
    """Base images must carry stabilizer-orbit lengths of ``H`` onto those of ``V``."""
    V = H if V is None else V
    base = G.chain.base
    th, tv = _StabilizerTower(H), _StabilizerTower(V)
    h_size = {}
    v_size = {}
    for o in H.orbits():
        for x in o:
            h_size[x] = len(o)
    for o in V.orbits():
        for x in o:
            v_size[x] = len(o)

    def prune(i: int, images: list) -> bool:
        gamma = images[-1]
        beta = base[i]
        if h_size[beta] != v_size[gamma]:
            return False
        return th.orbit_size(tuple(base[:i]), beta) == tv.orbit_size(tuple(images[:-1]), gamma)

    return prune


# --- normalizers and centralizers -----------------------------------------------

def normalizer(G: PermGroup, H: PermGroup, node_budget: int = DEFAULT_NODE_BUDGET) -> PermGroup:
    """``N_G(H)`` by backtrack search."""
    if H.is_trivial() or G.normalizes(H):
        return _as_subgroup(G, G.generators)
    known = [h for h in H.generators if G.contains(h)]
    hg = H.generators

    def test(g: Permutation) -> bool:
        return all(H.contains(h ^ g) for h in hg)

    N = subgroup_search(G, test, known, _orbit_size_prune(G, H), node_budget)
    return N


def _propagation_prune(G: PermGroup, S: Sequence[Permutation]):
    """Partial base images extended along the action of ``S`` must stay a partial bijection."""
    base = G.chain.base

    def prune(i: int, images: list) -> bool:
        fwd: dict[int, int] = {}
        back: dict[int, int] = {}
        todo = list(zip(base[: i + 1], images))
        while todo:
            a, b = todo.pop()
            if a in fwd:
                if fwd[a] != b:
                    return False
                continue
            if b in back:
                return False
            fwd[a] = b
            back[b] = a
            for s in S:
                todo.append((s[a], s[b]))
        return True

    return prune


def centralizer(G: PermGroup, H: PermGroup | Permutation | Iterable[Permutation],
                node_budget: int = DEFAULT_NODE_BUDGET) -> PermGroup:
    """``C_G(H)`` for a subgroup, a single element, or a list of elements."""
    if isinstance(H, PermGroup):
        S = list(H.generators)
    elif isinstance(H, Permutation):
        S = [H]
    else:
        S = list(H)
    S = [s for s in S if not s.is_identity()]
    if not S or all(g * s == s * g for g in G.generators for s in S):
        return _as_subgroup(G, G.generators)
    known = [s for s in S if G.contains(s) and all(s * t == t * s for t in S)]

    def test(g: Permutation) -> bool:
        return all(s * g == g * s for s in S)

    return subgroup_search(G, test, known, _propagation_prune(G, S), node_budget)


def conjugating_element(G: PermGroup, U: PermGroup, V: PermGroup,
                        node_budget: int = DEFAULT_NODE_BUDGET) -> Permutation | None:
    """Some ``g`` in ``G`` with ``U^g == V``, or None."""
    if U.order() != V.order():
        return None
    if U.equals(V):
        return G.identity
    if sorted(len(o) for o in U.orbits()) != sorted(len(o) for o in V.orbits()):
        return None
    ug = U.generators

    def test(g: Permutation) -> bool:
        return all(V.contains(u ^ g) for u in ug)

    stab = normalizer(G, U, node_budget)
    return element_search(G, test, stabilizer=stab, prune=_orbit_size_prune(G, U, V), node_budget=node_budget)


def are_conjugate(G: PermGroup, U: PermGroup, V: PermGroup) -> bool:
    return conjugating_element(G, U, V) is not None


def intersection(A: PermGroup, B: PermGroup, node_budget: int = DEFAULT_NODE_BUDGET) -> PermGroup:
    """``A ∩ B`` by backtrack over ``A``, pruned by reachability of base images in ``B``."""
    if A.order() > B.order():
        A, B = B, A
    if A.is_subgroup_of(B):
        return _as_subgroup(A, A.generators)
    if A.order() <= 5000:
        return A.subgroup([g for g in A.elements() if B.contains(g)])
    base = A.chain.base
    Bc = B.chain_with_base(base)

    def prune(i: int, images: list) -> bool:
        # is there b in B with base[j]^b == images[j] for j <= i?
        u_inv = Permutation.identity(A.degree)
        for j, gamma in enumerate(images):
            if j >= len(Bc.base) or Bc.base[j] != base[j]:
                return True
            d = u_inv[gamma]
            t = Bc.tinv[j].get(d)
            if t is None:
                return False
            u_inv = u_inv * t
        return True

    known = [g for g in A.generators if B.contains(g)]
    return subgroup_search(A, B.contains, known, prune, node_budget)


# --- closures and series ------------------------------------------------------------

def _as_subgroup(G: PermGroup, gens: Iterable[Permutation], name: str | None = None) -> PermGroup:
    H = G.subgroup(gens, name=name)
    if G._chain is not None and H.generators == G.generators:
        H._chain = G._chain
    return H


def normal_closure(G: PermGroup, S: PermGroup | Iterable[Permutation], stop_order: int | None = None) -> PermGroup:
    """Smallest normal subgroup of ``G`` containing ``S``.

    With ``stop_order`` the computation may stop early, returning a subgroup
    of order at least ``stop_order`` that is not necessarily normal.
    """
    gens = list(S.generators) if isinstance(S, PermGroup) else list(S)
    N = G.subgroup(gens)
    full = G.order()
    limit = full if stop_order is None else min(stop_order, full)
    i = 0
    while i < len(N.generators):
        if N.order() >= limit:
            return _as_subgroup(G, G.generators) if N.order() == full else N
        n = N.generators[i]
        for g in G.generators:
            c = n ^ g
            if not N.contains(c):
                N = G.subgroup(N.generators + [c])
        i += 1
    return N


@dataclass
class SeriesData:
    terms: list[PermGroup]

    def orders(self) -> list[int]:
        return [t.order() for t in self.terms]

    @property
    def terminal(self) -> PermGroup:
        return self.terms[-1]


def commutator_subgroup(G: PermGroup, A: PermGroup, B: PermGroup) -> PermGroup:
    """``[A, B]`` for ``A``, ``B`` normal in ``G``."""
    comms = [a.commutator(b) for a in A.generators for b in B.generators]
    return normal_closure(G, [c for c in comms if not c.is_identity()])


def derived_subgroup(G: PermGroup) -> PermGroup:
    return commutator_subgroup(G, G, G)


def derived_series(G: PermGroup) -> SeriesData:
    terms = [G]
    while True:
        D = derived_subgroup(terms[-1])
        if D.order() == terms[-1].order():
            break
        terms.append(D)
        if D.is_trivial():
            break
    return SeriesData(terms)


def is_solvable(G: PermGroup) -> bool:
    cached = getattr(G, "_solvable", None)
    if cached is not None:
        return cached
    n = G.order()
    # Burnside p^a q^b and odd order
    if n % 2 == 1 or len(prime_factors(n)) <= 2:
        G._solvable = True
    else:
        G._solvable = derived_series(G).terminal.is_trivial()
    return G._solvable


def lower_central_series(G: PermGroup) -> SeriesData:
    terms = [G]
    while not terms[-1].is_trivial():
        L = commutator_subgroup(G, G, terms[-1])
        if L.order() == terms[-1].order():
            break
        terms.append(L)
    return SeriesData(terms)


def is_nilpotent(G: PermGroup) -> bool:
    if G.is_trivial() or is_prime_power(G.order()):
        return True
    return lower_central_series(G).terminal.is_trivial()


def center(G: PermGroup) -> PermGroup:
    return centralizer(G, G)


# --- Sylow and Hall ----------------------------------------------------------------

def order_modulo(y: Permutation, P: PermGroup) -> int:
    """Least ``k > 0`` with ``y**k`` in ``P``."""
    for k in divisors(y.order()):
        if P.contains(y**k):
            return k
    raise AssertionError("unreachable: y**order(y) is the identity")


def sylow_subgroup(G: PermGroup, p: int, seed: int = 0, node_budget: int = DEFAULT_NODE_BUDGET) -> PermGroup:
    """A Sylow ``p``-subgroup, grown one factor ``p`` at a time inside normalizers."""
    target = p_part(G.order(), p)
    P = G.subgroup([])
    rng = random.Random(seed)
    while P.order() < target:
        N = normalizer(G, P, node_budget) if not P.is_trivial() else G
        z = None
        for y in _candidates(N, rng):
            m = order_modulo(y, P)
            if m % p == 0:
                z = y ** (m // p)
                break
        P = G.subgroup(P.generators + [z])
    P.parent = G
    return P


def _candidates(N: PermGroup, rng: random.Random, limit: int = 100_000):
    for g in N.generators:
        yield g
    for a in N.generators:
        for b in N.generators:
            yield a * b
    for _ in range(limit):
        yield N.random_element(rng)
    raise RuntimeError("no suitable element found among sampled words")


def hall_pprime_solvable(G: PermGroup, p: int, seed: int = 0) -> PermGroup:
    """A Hall ``p'``-subgroup of a solvable group."""
    from .solvable import hall_pprime
    if not is_solvable(G):
        raise NotSolvableError("Hall subgroups are only computed for solvable groups")
    return hall_pprime(G, p, seed)
