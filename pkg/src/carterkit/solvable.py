"""Solvable-group routines: elementary abelian minimal normal subgroups and Hall p'-subgroups."""

from __future__ import annotations

from .errors import CapacityError, NotSolvableError
from .group import PermGroup
from .homs import quotient_group
from .subgroups import derived_series, normal_closure, normalizer, p_part, prime_factors, sylow_subgroup

ENUMERATION_LIMIT = 100_000


def _sorted_elements(G: PermGroup) -> list:
    if G.order() > ENUMERATION_LIMIT:
        raise CapacityError(f"cannot enumerate a group of order {G.order()}")
    return sorted(G.elements())


def minimal_normal_in(G: PermGroup, M: PermGroup) -> PermGroup:
    """A minimal normal subgroup of ``G`` inside the normal subgroup ``M``.

    Descends through normal closures of single elements; ``M`` must be small
    enough to enumerate.
    """
    changed = True
    while changed:
        changed = False
        for x in _sorted_elements(M):
            if x.is_identity():
                continue
            C = normal_closure(G, [x])
            if C.order() < M.order():
                M = C
                changed = True
                break
    return M


def minimal_normal_solvable(G: PermGroup) -> PermGroup:
    """A minimal normal subgroup of a solvable group; it is elementary abelian."""
    series = derived_series(G)
    D = series.terms[-2] if series.terminal.is_trivial() and len(series.terms) > 1 else None
    if D is None:
        raise NotSolvableError("group is not solvable")
    p = prime_factors(D.order())[0]
    omega = [x for x in _sorted_elements(D) if (x ** p).is_identity()]
    M = minimal_normal_in(G, G.subgroup(omega))
    if not (M.is_abelian() and all((g ** p).is_identity() for g in M.generators)):
        raise AssertionError("minimal normal subgroup of a solvable group is not elementary abelian")
    M.parent = G
    return M


def hall_pprime(G: PermGroup, p: int, seed: int = 0) -> PermGroup:
    """Hall ``p'``-subgroup of a solvable group, built along a chief series."""
    n = G.order()
    if n % p != 0:
        return G
    if p_part(n, p) == n:
        return G.subgroup([])
    Y = minimal_normal_solvable(G)
    q = prime_factors(Y.order())[0]
    hom = quotient_group(G, Y, seed=seed)
    Hbar = hall_pprime(hom.image, p, seed)
    Hhat = hom.preimage(Hbar)
    if q != p:
        return Hhat
    if Hhat.order() < n:
        return hall_pprime(Hhat, p, seed)
    # Y is a normal Sylow p-subgroup: find a complement via a Frattini argument
    Z = minimal_normal_solvable(hom.image)
    r = prime_factors(Z.order())[0]
    Zpre = hom.preimage(Z)
    Q0 = sylow_subgroup(Zpre, r, seed)
    N = normalizer(G, Q0)
    if N.order() < n:
        return hall_pprime(N, p, seed)
    hom2 = quotient_group(G, Q0, seed=seed)
    return hom2.preimage(hall_pprime(hom2.image, p, seed))
