"""Carter subgroups: construction in solvable groups, the existence criterion
over a chief series, the general recursive construction, and a brute-force
oracle over nilpotent subgroups.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .errors import CapacityError, NotSolvableError, VerificationError
from .group import PermGroup
from .homs import block_action_hom, quotient_group, restriction_hom
from .inducedaut import Section, induced_aut, wreath_embed
from .perm import Permutation
from .series import (ENUM_BUDGET, ChiefSeriesData, SimpleTypeLabel, _decompose, identify_simple_factor,
                     minimal_normal_subgroups)
from .solvable import hall_pprime, minimal_normal_solvable
from .subgroups import (centralizer, intersection, is_nilpotent, is_solvable, lower_central_series,
                        normalizer, p_part, prime_factors, sylow_subgroup)


# --- certificates ----------------------------------------------------------------------

@dataclass
class CarterCertificate:
    nilpotent: bool
    self_normalizing: bool
    lower_central_orders: list[int]
    normalizer_order: int
    order: int

    @property
    def ok(self) -> bool:
        return self.nilpotent and self.self_normalizing

    @property
    def reason(self) -> str:
        if self.ok:
            return "nilpotent and self-normalizing"
        return "not nilpotent" if not self.nilpotent else "not self-normalizing"

    def to_dict(self) -> dict:
        return {"order": self.order, "nilpotent": self.nilpotent, "self_normalizing": self.self_normalizing,
                "lower_central_orders": self.lower_central_orders, "normalizer_order": self.normalizer_order}


def verify_carter(G: PermGroup, K: PermGroup, strict: bool = False) -> CarterCertificate:
    """Lower central series of ``K`` and the order of ``N_G(K)``.

    With ``strict`` a failing property raises ``VerificationError``.
    """
    if not K.is_subgroup_of(G):
        raise VerificationError("candidate is not a subgroup of the group")
    lcs = lower_central_series(K)
    nil = lcs.terminal.is_trivial()
    N = normalizer(G, K)
    cert = CarterCertificate(nil, N.order() == K.order(), lcs.orders(), N.order(), K.order())
    if strict and not cert.ok:
        raise VerificationError(f"Carter check failed: {cert.reason}")
    return cert


# --- solvable groups -----------------------------------------------------------------

def carter_solvable(G: PermGroup, seed: int = 0) -> PermGroup:
    """A Carter subgroup of a solvable group.

    Recursion: for a minimal normal ``p``-subgroup ``Y``, lift a Carter subgroup
    of ``G/Y`` to ``K1`` and return ``N_{K1}(Q)`` for a Hall ``p'``-subgroup ``Q``
    of ``K1``.
    """
    if not is_solvable(G):
        raise NotSolvableError("Carter subgroups are constructed directly only in solvable groups")
    return _carter_solvable(G, seed)


def _carter_solvable(G: PermGroup, seed: int) -> PermGroup:
    if is_nilpotent(G):
        return G.subgroup(G.generators)
    Y = minimal_normal_solvable(G)
    p = prime_factors(Y.order())[0]
    hom = quotient_group(G, Y, seed=seed)
    Kbar = _carter_solvable(hom.image, seed)
    K1 = hom.preimage(Kbar)
    Q = hall_pprime(K1, p, seed)
    K = normalizer(K1, Q)
    return G.subgroup(K.generators)


# --- nilpotent subgroup enumeration ----------------------------------------------------

@dataclass
class SubgroupClass:
    group: PermGroup
    order: int
    class_size: int
    normalizer_order: int

    @property
    def self_normalizing(self) -> bool:
        return self.normalizer_order == self.order


@dataclass
class NilpotentEnumeration:
    classes: list[SubgroupClass]
    complete: bool = True

    def orders(self) -> list[int]:
        return sorted(c.order for c in self.classes)


class _ElementTable:
    def __init__(self, G: PermGroup):
        self.elems = sorted(G.elements())
        self.index = {g: i for i, g in enumerate(self.elems)}
        self.orders = [g.order() for g in self.elems]
        self.conj = [[self.index[e ^ g] for e in self.elems] for g in G.generators]
        self.one = self.index[G.identity]
        self.primes = prime_factors(G.order())
        self.pelems = {p: [i for i, o in enumerate(self.orders) if o > 1 and len(prime_factors(o)) == 1
                           and o % p == 0] for p in self.primes}
        self.ppow = {p: {i: self.index[self.elems[i] ** p] for i in self.pelems[p]} for p in self.primes}

    def normalizes(self, x: int, gens: list[int], S: frozenset) -> bool:
        g = self.elems[x]
        return all(self.index[self.elems[s] ^ g] in S for s in gens)

    def extend(self, S: frozenset, x: int, p: int) -> frozenset:
        xs = [self.elems[self.one]]
        for _ in range(p - 1):
            xs.append(xs[-1] * self.elems[x])
        return frozenset(self.index[self.elems[s] * y] for s in S for y in xs)

    def is_nilpotent(self, U: frozenset) -> bool:
        n = len(U)
        for r in prime_factors(n):
            count = sum(1 for i in U if self.orders[i] == 1 or
                        (len(prime_factors(self.orders[i])) == 1 and self.orders[i] % r == 0))
            if count != p_part(n, r):
                return False
        return True

    def orbit(self, U: frozenset) -> set[frozenset]:
        orb = {U}
        todo = [U]
        while todo:
            V = todo.pop()
            for c in self.conj:
                W = frozenset(c[i] for i in V)
                if W not in orb:
                    orb.add(W)
                    todo.append(W)
        return orb


def nilpotent_subgroups_enum(G: PermGroup, budget: int = ENUM_BUDGET) -> NilpotentEnumeration:
    """All nilpotent subgroups of ``G`` up to conjugacy, by cyclic extension.

    Every nontrivial nilpotent ``U`` has a normal subgroup ``S`` of prime index
    ``p`` with ``U = <S, x>`` for a ``p``-element ``x`` normalizing ``S``; the
    search extends one representative per conjugacy class. Classes are found
    as orbits of the conjugation action on element sets.
    """
    if G.order() > budget:
        raise CapacityError(f"subgroup enumeration of order {G.order()} exceeds budget {budget}",
                            partial=NilpotentEnumeration([], complete=False))
    t = _ElementTable(G)
    n = G.order()
    triv = frozenset([t.one])
    seen: set[frozenset] = {triv}
    bad: set[frozenset] = set()
    reps: list[tuple[frozenset, list[int], int]] = [(triv, [], 1)]
    i = 0
    while i < len(reps):
        S, gens, _ = reps[i]
        i += 1
        for p in t.primes:
            covered: set[int] = set(S)
            for x in t.pelems[p]:
                if x in covered or t.ppow[p][x] not in S or not t.normalizes(x, gens, S):
                    continue
                U = t.extend(S, x, p)
                covered |= U
                if U in seen or U in bad:
                    continue
                if not t.is_nilpotent(U):
                    bad.add(U)
                    continue
                orb = t.orbit(U)
                seen |= orb
                reps.append((U, gens + [x], len(orb)))
    classes = []
    for U, gens, size in sorted(reps, key=lambda r: (len(r[0]), sorted(r[0]))):
        H = G.subgroup([t.elems[j] for j in gens])
        classes.append(SubgroupClass(H, len(U), size, n // size))
    return NilpotentEnumeration(classes)


def brute_force_carter(G: PermGroup, budget: int = ENUM_BUDGET) -> list[PermGroup]:
    """Nilpotent self-normalizing subgroups of ``G``, one per conjugacy class."""
    return [c.group for c in nilpotent_subgroups_enum(G, budget).classes if c.self_normalizing]


# --- outcomes ----------------------------------------------------------------------------

@dataclass
class Witness:
    group: PermGroup
    label: SimpleTypeLabel | None = None
    level: int | None = None
    factor: int | None = None
    path: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {"order": self.group.order(), "degree": self.group.degree,
                "label": str(self.label) if self.label else None,
                "level": self.level, "factor": self.factor, "path": list(self.path)}


@dataclass
class CarterOutcome:
    status: str                                  # "exists" | "not_exists"
    subgroup: PermGroup | None = None
    witness: Witness | None = None
    certificate: CarterCertificate | None = None
    method: str = ""

    @property
    def exists(self) -> bool:
        return self.status == "exists"

    def to_dict(self) -> dict:
        d: dict[str, Any] = {"status": self.status, "method": self.method}
        if self.subgroup is not None:
            d["subgroup"] = {"order": self.subgroup.order(),
                             "generators": [g.cycle_string() for g in self.subgroup.generators]}
        if self.certificate is not None:
            d["certificate"] = self.certificate.to_dict()
        if self.witness is not None:
            d["witness"] = self.witness.to_dict()
        return d


def _label_of(X: PermGroup, seed: int) -> SimpleTypeLabel | None:
    """Label of the socle of an almost simple group (or of the group itself)."""
    try:
        mins = minimal_normal_subgroups(X, hints=[X], seed=seed)
        return identify_simple_factor(mins[0], seed) if len(mins) == 1 else None
    except Exception:  # labels are for reporting only
        return None


class _Finder:
    def __init__(self, budget: int, seed: int):
        self.budget = budget
        self.seed = seed
        self.memo: list[tuple[PermGroup, CarterOutcome]] = []

    def _lookup(self, G: PermGroup) -> CarterOutcome | None:
        for X, out in self.memo:
            if X.degree == G.degree and X.order() == G.order() and X.equals(G):
                return out
        return None

    def _exists(self, G: PermGroup, K: PermGroup, method: str) -> CarterOutcome:
        cert = verify_carter(G, K)
        if not cert.ok:
            raise VerificationError(f"constructed subgroup failed the Carter check ({cert.reason}) via {method}")
        return CarterOutcome("exists", G.subgroup(K.generators), certificate=cert, method=method)

    def find(self, G: PermGroup, hints: list[PermGroup], path: tuple[str, ...]) -> CarterOutcome:
        hit = self._lookup(G)
        if hit is not None:
            return hit
        try:
            out = self._find(G, hints, path)
        except CapacityError as e:
            if not e.path:
                e.path = path
            raise
        self.memo.append((G, out))
        return out

    def _find(self, G: PermGroup, hints: list[PermGroup], path: tuple[str, ...]) -> CarterOutcome:
        if is_nilpotent(G):
            return self._exists(G, G, "nilpotent")
        if is_solvable(G):
            return self._exists(G, _carter_solvable(G, self.seed), "solvable")
        hints = [H for H in hints if 1 < H.order() < G.order()]
        H = minimal_normal_subgroups(G, hints=hints or [G], budget=self.budget, seed=self.seed)[0]
        hom = quotient_group(G, H, seed=self.seed)
        up_hints = [hom.image_of(X) for X in hints if H.is_subgroup_of(X) and X.order() > H.order()]
        out_bar = self.find(hom.image, up_hints, path + ("G/H",))
        if not out_bar.exists:
            return out_bar
        K = hom.preimage(out_bar.subgroup)
        if K.order() < G.order():
            down = [X for X in hints if X.is_subgroup_of(K)] + [H]
            out_k = self.find(K, down, path + ("preimage",))
            if not out_k.exists:
                return out_k
            return self._exists(G, out_k.subgroup, "preimage")
        # G/H is nilpotent and H is a nonabelian minimal normal subgroup
        C = centralizer(G, H)
        if not C.is_trivial():
            homc = quotient_group(G, C, seed=self.seed)
            out_c = self.find(homc.image, [homc.image_of(H)], path + ("G/C",))
            if not out_c.exists:
                return out_c
            Kp = homc.preimage(out_c.subgroup)
            return self._exists(G, _carter_solvable(Kp, self.seed), "centralizer quotient")
        comps, label = _decompose(G, H, self.seed, self.budget)
        if len(comps) == 1:
            return self._almost_simple(G, label, path)
        return self._wreath(G, comps, label, path)

    def _almost_simple(self, G: PermGroup, label: SimpleTypeLabel, path: tuple[str, ...]) -> CarterOutcome:
        for p in prime_factors(G.order()):
            P = sylow_subgroup(G, p, self.seed)
            if normalizer(G, P).order() == P.order():
                return self._exists(G, P, f"self-normalizing Sylow {p}-subgroup")
        if G.order() > self.budget:
            raise CapacityError(f"almost simple group of order {G.order()} exceeds the enumeration budget",
                                path=path)
        found = brute_force_carter(G, self.budget)
        if found:
            return self._exists(G, found[0], "brute force")
        return CarterOutcome("not_exists", witness=Witness(G, label, path=path), method="brute force")

    def _wreath(self, G: PermGroup, comps: list[PermGroup], label: SimpleTypeLabel,
                path: tuple[str, ...]) -> CarterOutcome:
        emb = wreath_embed(G, comps)
        X = emb.hom.image
        GA = block_action_hom(X, emb.blocks).kernel()
        Ks = []
        for i, blk in enumerate(emb.blocks):
            Ai = restriction_hom(GA, blk).image
            out = self.find(Ai, [], path + (f"Aut(T{i + 1})",))
            if not out.exists:
                w = out.witness or Witness(Ai)
                return CarterOutcome("not_exists", witness=Witness(w.group, w.label or label, path=w.path),
                                     method="factor automorphism group")
            Ks.append(out.subgroup)
        Y = GA
        for blk, Ki in zip(emb.blocks, Ks):
            r = restriction_hom(Y, blk)
            Y = r.preimage(intersection(r.image, Ki))
        M = _carter_solvable(Y, self.seed)
        Rgens = []
        for T, blk, Ki in zip(comps, emb.blocks, Ks):
            Tx = emb.hom.image_of(T)
            r = restriction_hom(Tx, blk)
            Rgens += r.preimage(intersection(r.image, Ki)).generators
        NM = normalizer(X, M)
        S = X.subgroup(list(NM.generators) + Rgens)
        Kx = _carter_solvable(S, self.seed)
        K = G.subgroup([emb.hom.lift(y) for y in Kx.generators])
        return self._exists(G, K, "wreath embedding")


def carter_find(G: PermGroup, hints: list[PermGroup] | None = None, budget: int = ENUM_BUDGET,
                seed: int = 0) -> CarterOutcome:
    """Decide whether ``G`` has a Carter subgroup and construct one if so.

    ``hints`` are normal subgroups used to locate minimal normal subgroups in
    groups too large to enumerate.
    """
    return _Finder(budget, seed).find(G, list(hints or []), ())


# --- condition (E) ----------------------------------------------------------------------

@dataclass
class ECell:
    level: int
    factor: int
    label: str
    aut_order: int
    exists: bool | None
    method: str
    aut_group: PermGroup | None = None

    def to_dict(self) -> dict:
        return {"level": self.level, "factor": self.factor, "label": self.label, "aut_order": self.aut_order,
                "exists": self.exists, "method": self.method}


@dataclass
class ConditionEReport:
    cells: list[ECell] = field(default_factory=list)
    satisfied: bool = True
    failure: ECell | None = None
    conjugacy_flags: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"satisfied": self.satisfied, "cells": [c.to_dict() for c in self.cells],
                "failure": self.failure.to_dict() if self.failure else None,
                "conjugacy_flags": self.conjugacy_flags}


def _decide(X: PermGroup, budget: int, seed: int, finder: _Finder,
            flags: list[str]) -> tuple[bool, str]:
    if is_solvable(X):
        return True, "solvable"
    if X.order() <= budget:
        found = brute_force_carter(X, budget)
        if len(found) > 1:
            flags.append(f"{len(found)} Carter classes in a group of order {X.order()}")
        return bool(found), "brute force"
    return finder.find(X, [], ("cell",)).exists, "recursion"


def _component_orbits(K: PermGroup, comps: list[PermGroup]) -> list[int]:
    """Index of a representative for each component under conjugation by ``K``."""
    rep = list(range(len(comps)))
    for i, T in enumerate(comps):
        if rep[i] != i:
            continue
        orbit = [T]
        j = 0
        while j < len(orbit):
            for g in K.generators:
                C = K.subgroup([t ^ g for t in orbit[j].generators])
                if not any(C.equals(D) for D in orbit):
                    orbit.append(C)
            j += 1
        for m in range(i + 1, len(comps)):
            if rep[m] == m and any(comps[m].equals(D) for D in orbit):
                rep[m] = i
    return rep


def check_condition_E(G: PermGroup, series: ChiefSeriesData, budget: int = ENUM_BUDGET,
                      seed: int = 0) -> ConditionEReport:
    """Evaluate the existence criterion cell by cell, stopping at the first failure."""
    report = ConditionEReport()
    finder = _Finder(budget, seed)
    for i, f in enumerate(series.factors):
        if i == 0:
            Kt = G
        else:
            hom = quotient_group(G, f.upper, seed=seed)
            hints = [hom.image_of(t) for t in series.terms[1:i]]
            out = finder.find(hom.image, hints, (f"G/G{i}",))
            if not out.exists:
                report.cells.append(ECell(i, 0, str(f.label), 0, None, "quotient has no Carter subgroup"))
                continue
            Kt = hom.preimage(out.subgroup)
        reps = _component_orbits(Kt, f.components)
        decided: dict[int, tuple[bool, str, PermGroup]] = {}
        for j, T in enumerate(f.components):
            if reps[j] in decided:
                ok, method, A = decided[reps[j]]
                method = method if method.endswith("(conjugate factor)") else method + " (conjugate factor)"
            else:
                res = induced_aut(Kt, Section(G, T, f.lower), seed)
                A = res.aut_group
                ok, method = _decide(A, budget, seed, finder, report.conjugacy_flags)
                decided[j] = (ok, method, A)
            cell = ECell(i, j, str(f.label), A.order(), ok, method, A)
            report.cells.append(cell)
            if not ok:
                report.satisfied = False
                report.failure = cell
                return report
    return report
