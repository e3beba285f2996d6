"""Minimal normal subgroups, chief series and labels for simple chief factors."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd

from .errors import CapacityError, NotSimpleError
from .group import PermGroup
from .homs import Hom, quotient_group  # noqa: F401  (quotient_group is part of this module's surface)
from .perm import Permutation
from .subgroups import normal_closure, prime_factors

ENUM_BUDGET = 100_000
DETERMINISTIC_SIMPLICITY = 5000


def _gen_key(H: PermGroup) -> tuple:
    return (H.order(), sorted(tuple(g) for g in H.generators))


def conjugacy_class_reps(G: PermGroup, budget: int = ENUM_BUDGET) -> list[tuple[Permutation, int]]:
    """``(representative, class size)`` pairs, representatives least in their class."""
    if G.order() > budget:
        raise CapacityError(f"element enumeration of order {G.order()} exceeds budget {budget}")
    seen: set[Permutation] = set()
    out = []
    for x in sorted(G.elements()):
        if x in seen:
            continue
        cls = {x}
        todo = [x]
        while todo:
            y = todo.pop()
            for g in G.generators:
                z = y ^ g
                if z not in cls:
                    cls.add(z)
                    todo.append(z)
        seen |= cls
        out.append((x, len(cls)))
    return out


def _prime_power_of(x: Permutation) -> list[Permutation]:
    o = x.order()
    return [x ** (o // r) for r in prime_factors(o)] if o > 1 else []


def _descend(G: PermGroup, M: PermGroup, rng: random.Random, tries: int = 20) -> PermGroup:
    """Shrink the normal subgroup ``M`` through normal closures of prime-order elements."""
    while True:
        smaller = None
        for _ in range(tries):
            x = M.random_element(rng)
            for y in _prime_power_of(x):
                C = normal_closure(G, [y], stop_order=M.order())
                if C.order() < M.order():
                    smaller = C
                    break
            if smaller is not None:
                break
        if smaller is None:
            return M
        M = smaller


def _minimal_elements(cands: list[PermGroup]) -> list[PermGroup]:
    uniq: list[PermGroup] = []
    for C in sorted(cands, key=_gen_key):
        if not any(U.equals(C) for U in uniq):
            uniq.append(C)
    mins = [C for C in uniq
            if not any(U.order() < C.order() and U.is_subgroup_of(C) for U in uniq)]
    return sorted(mins, key=_gen_key)


def minimal_normal_subgroups(G: PermGroup, hints: list[PermGroup] | None = None,
                             budget: int = ENUM_BUDGET, seed: int = 0, within: PermGroup | None = None,
                             sampled_fallback: bool = False) -> list[PermGroup]:
    """Minimal normal subgroups of ``G`` (optionally only those inside ``within``).

    Exact when ``|G| <= budget``. Otherwise the search descends from the hint
    subgroups (or from ``G``) through normal closures of sampled elements.
    """
    if G.is_trivial():
        return []
    if G.order() <= budget:
        region = within if within is not None else G
        cands = [normal_closure(G, [x]) for x, _ in conjugacy_class_reps(G, budget)
                 if x.order() > 1 and _is_prime(x.order()) and region.contains(x)]
        return [G.subgroup(C.generators) for C in _minimal_elements(cands)]
    starts = list(hints or [])
    if within is not None:
        starts = [H for H in starts if H.is_subgroup_of(within)] or [within]
    if not starts:
        if not sampled_fallback:
            raise CapacityError("minimal normal subgroups of a large group need hints")
        starts = [G]
    found: list[PermGroup] = []
    for i, S in enumerate(sorted(starts, key=_gen_key)):
        for j in range(3):
            M = _descend(G, S, random.Random(seed * 7919 + 31 * i + j))
            if any(M.equals(F) for F in found):
                break
            if M.is_abelian() and M.order() <= budget:
                from .solvable import minimal_normal_in
                M = minimal_normal_in(G, M)
            found.append(M)
    return [G.subgroup(C.generators) for C in _minimal_elements(found)]


def _is_prime(n: int) -> bool:
    return n > 1 and prime_factors(n) == [n]


# --- simple factor labels -----------------------------------------------------------

@dataclass(frozen=True)
class SimpleTypeLabel:
    kind: str            # cyclic | alternating | psl2 | other
    order: int
    names: tuple[str, ...] = ()
    ambiguous: bool = False

    def __str__(self) -> str:
        if self.kind == "cyclic":
            return f"C{self.order}"
        return " = ".join(self.names) if self.names else f"simple group of order {self.order}"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "order": self.order, "names": list(self.names), "ambiguous": self.ambiguous}


def _simple_order_table() -> dict[int, tuple[str, list[str]]]:
    from math import factorial
    table: dict[int, tuple[str, list[str]]] = {}
    for n in range(5, 10):
        table.setdefault(factorial(n) // 2, ("alternating", []))[1].append(f"A{n}")
    for q in [4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32]:
        o = q * (q * q - 1) // gcd(2, q - 1)
        table.setdefault(o, ("psl2", []))[1].append(f"PSL(2,{q})")
    return table


SIMPLE_ORDERS = _simple_order_table()
# orders where two non-isomorphic simple groups exist; only one is tabulated
AMBIGUOUS_ORDERS = {20160}


def is_simple(T: PermGroup, seed: int = 0, samples: int = 40) -> tuple[bool, PermGroup | None]:
    """Simplicity test; exhaustive over classes for small orders, sampled otherwise."""
    n = T.order()
    if n == 1:
        return False, None
    if _is_prime(n):
        return True, None
    if n <= DETERMINISTIC_SIMPLICITY:
        xs = [x for x, _ in conjugacy_class_reps(T) if not x.is_identity()]
    else:
        rng = random.Random(seed)
        xs = [y for _ in range(samples) for y in _prime_power_of(T.random_element(rng))]
    for x in xs:
        C = normal_closure(T, [x])
        if C.order() < n:
            return False, C
    return True, None


def identify_simple_factor(T: PermGroup, seed: int = 0) -> SimpleTypeLabel:
    ok, witness = is_simple(T, seed)
    if not ok:
        raise NotSimpleError("group is not simple", witness)
    n = T.order()
    if _is_prime(n):
        return SimpleTypeLabel("cyclic", n, (f"C{n}",))
    if n in SIMPLE_ORDERS:
        kind, names = SIMPLE_ORDERS[n]
        return SimpleTypeLabel(kind, n, tuple(names), n in AMBIGUOUS_ORDERS)
    return SimpleTypeLabel("other", n, (), n in AMBIGUOUS_ORDERS)


# --- chief series -------------------------------------------------------------------

@dataclass
class ChiefFactor:
    upper: PermGroup                 # G_i
    lower: PermGroup                 # G_{i+1}
    components: list[PermGroup]      # T_{i,j}, each containing G_{i+1}
    label: SimpleTypeLabel

    @property
    def k(self) -> int:
        return len(self.components)

    @property
    def order(self) -> int:
        return self.upper.order() // self.lower.order()

    @property
    def abelian(self) -> bool:
        return self.label.kind == "cyclic"


@dataclass
class ChiefSeriesData:
    group: PermGroup
    terms: list[PermGroup]
    factors: list[ChiefFactor] = field(default_factory=list)

    def factor_orders(self) -> list[int]:
        return [f.order for f in self.factors]

    def to_dict(self) -> dict:
        return {
            "term_orders": [t.order() for t in self.terms],
            "factors": [{"order": f.order, "k": f.k, "label": f.label.to_dict()} for f in self.factors],
        }


def _decompose(Q: PermGroup, Mbar: PermGroup, seed: int, budget: int) -> tuple[list[PermGroup], SimpleTypeLabel]:
    """Split a minimal normal subgroup of ``Q`` into its simple direct factors."""
    if Mbar.is_abelian():
        p = prime_factors(Mbar.order())[0]
        basis: list[Permutation] = []
        span = Q.subgroup([])
        for x in sorted(Mbar.generators):
            if not span.contains(x):
                basis.append(x)
                span = Q.subgroup(basis)
        # generators of an elementary abelian group may be redundant but never too few
        return [Q.subgroup([b]) for b in basis], SimpleTypeLabel("cyclic", p, (f"C{p}",))
    Tbar = minimal_normal_subgroups(Mbar, hints=[Mbar], budget=budget, seed=seed)[0]
    comps = [Tbar]
    i = 0
    while i < len(comps):
        for g in Q.generators:
            C = Q.subgroup([t ^ g for t in comps[i].generators])
            if not any(C.equals(D) for D in comps):
                comps.append(C)
        i += 1
    if Tbar.order() ** len(comps) != Mbar.order():
        raise AssertionError("chief factor is not a direct power of its simple component")
    return comps, identify_simple_factor(PermGroup(Tbar.generators, degree=Q.degree), seed)


def chief_series(G: PermGroup, hints: list[PermGroup] | None = None, budget: int = ENUM_BUDGET,
                 seed: int = 0) -> ChiefSeriesData:
    """A chief series of ``G`` refining the chain of normal ``hints``."""
    chain = [G] + sorted(hints or [], key=lambda H: -H.order()) + [G.subgroup([])]
    for H in hints or []:
        if not H.is_normal_in(G):
            raise ValueError("series hints must be normal subgroups")
    for a, b in zip(chain, chain[1:]):
        if not b.is_subgroup_of(a):
            raise ValueError("series hints must be totally ordered by inclusion")
    levels: list[ChiefFactor] = []
    for upper, lower in reversed(list(zip(chain, chain[1:]))):
        current = lower
        while current.order() < upper.order():
            hom = quotient_group(G, current, seed=seed)
            Q = hom.image
            Ubar = hom.image_of(upper)
            hint_imgs = [hom.image_of(H) for H in chain if H.order() < upper.order() and current.is_subgroup_of(H)
                         and H.order() > current.order()]
            Ms = minimal_normal_subgroups(Q, hints=hint_imgs or [Ubar], budget=budget, seed=seed, within=Ubar)
            Mbar = Ms[0]
            comps, label = _decompose(Q, Mbar, seed, budget)
            M = hom.preimage(Mbar)
            pulled = [hom.preimage(C) for C in comps]
            levels.append(ChiefFactor(M, current, pulled, label))
            current = M
    levels.reverse()
    terms = [f.upper for f in levels] + [G.subgroup([])]
    if levels:
        terms[0] = G
        levels[0].upper = G
    return ChiefSeriesData(G, terms, levels)


def verify_chief_series(G: PermGroup, cs: ChiefSeriesData, samples: int = 50, seed: int = 0) -> bool:
    """Each term is normal in ``G`` and no sampled element closes to an intermediate normal subgroup."""
    rng = random.Random(seed)
    for f in cs.factors:
        if not f.upper.is_normal_in(G) or not f.lower.is_normal_in(G):
            return False
        if f.label.order ** f.k != f.order:
            return False
        for _ in range(samples):
            x = f.upper.random_element(rng)
            if f.lower.contains(x):
                continue
            C = normal_closure(G, list(f.lower.generators) + [x])
            if C.order() != f.upper.order():
                return False
    return True
