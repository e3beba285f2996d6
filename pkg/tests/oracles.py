"""Independent reference computations on plain tuples, by exhaustive enumeration.

Nothing here imports the package; permutations are tuples of images and are
composed left to right, ``mul(p, q)[x] == q[p[x]]``.
"""

from __future__ import annotations

from itertools import combinations


def mul(p, q):
    return tuple(q[x] for x in p)


def inv(p):
    r = [0] * len(p)
    for i, x in enumerate(p):
        r[x] = i
    return tuple(r)


def conj(p, g):
    return mul(mul(inv(g), p), g)


def closure(gens, degree):
    """All elements generated by ``gens``, by breadth-first multiplication."""
    e = tuple(range(degree))
    out = {e}
    todo = [e]
    gens = [tuple(g) for g in gens]
    while todo:
        x = todo.pop()
        for g in gens:
            y = mul(x, g)
            if y not in out:
                out.add(y)
                todo.append(y)
    return frozenset(out)


def order_of(p):
    e = tuple(range(len(p)))
    k, x = 1, p
    while x != e:
        x = mul(x, p)
        k += 1
    return k


def normalizer(G, S):
    return frozenset(g for g in G if frozenset(conj(s, g) for s in S) == S)


def centralizer(G, S):
    return frozenset(g for g in G if all(mul(g, s) == mul(s, g) for s in S))


def is_normal(G, S):
    return len(normalizer(G, S)) == len(G)


def normal_closure(G, S, degree):
    return closure({conj(s, g) for s in S for g in G}, degree)


def prime_factors(n):
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


def is_nilpotent(S):
    """Unique Sylow subgroup for every prime."""
    n = len(S)
    for p in prime_factors(n):
        pp = 1
        while n % (pp * p) == 0:
            pp *= p
        count = sum(1 for x in S if len(prime_factors(order_of(x))) <= 1 and order_of(x) % p in (0, 1)
                    and (order_of(x) == 1 or prime_factors(order_of(x)) == [p]))
        if count != pp:
            return False
    return True


def all_subgroups(G, degree):
    """Every subgroup, as joins of cyclic subgroups until no new subgroup appears."""
    cyclic = {closure([g], degree) for g in G}
    subs = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        new = set()
        for A in frontier:
            for C in cyclic:
                if not C <= A:
                    J = closure(list(A | C), degree)
                    if J not in subs:
                        new.add(J)
        subs |= new
        frontier = new
    return subs


def carter_subgroups(G, degree):
    """All nilpotent self-normalizing subgroups (not up to conjugacy)."""
    return [S for S in all_subgroups(G, degree) if is_nilpotent(S) and normalizer(G, S) == S]


def conjugacy_classes_of_subgroups(G, subs):
    classes = []
    left = set(subs)
    while left:
        S = left.pop()
        cls = {frozenset(conj(s, g) for s in S) for g in G}
        left -= cls
        classes.append(cls)
    return classes


def normal_subgroups(G, degree):
    """Joins of normal closures of single elements; every normal subgroup is one."""
    atoms = {}
    for g in G:
        if g not in atoms:
            N = normal_closure(G, [g], degree)
            for h in G:
                atoms.setdefault(conj(g, h), N)
    atoms = set(atoms.values())
    subs = set(atoms)
    frontier = set(atoms)
    while frontier:
        new = set()
        for A in frontier:
            for B in atoms:
                if not B <= A:
                    J = closure(list(A | B), degree)
                    if J not in subs:
                        new.add(J)
        subs |= new
        frontier = new
    return list(subs)


def minimal_normal_subgroups(G, degree):
    ns = [S for S in normal_subgroups(G, degree) if len(S) > 1]
    return [S for S in ns if not any(T < S for T in ns)]


def derived_series_orders(G, degree):
    out = [len(G)]
    cur = G
    while True:
        comms = {mul(mul(inv(a), inv(b)), mul(a, b)) for a, b in combinations(cur, 2)}
        nxt = closure(comms, degree) if comms else frozenset([tuple(range(degree))])
        if len(nxt) == len(cur):
            return out
        out.append(len(nxt))
        cur = nxt
        if len(cur) == 1:
            return out
