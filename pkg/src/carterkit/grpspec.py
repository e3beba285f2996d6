"""A small prefix language for building permutation groups.

::

    expr  := "(" kind args ")"
    kinds := sym n | alt n | cyclic n | dihedral n | psl2 q | psigmal2 q
           | direct expr expr+ | wreath expr k | subgroup expr gens
           | semidirect expr gens | gens degree gens | paper_example
    gens  := "(" gen+ ")"        gen := cycle | "(" cycle+ ")"
    cycle := "(" int+ ")"        points are 0-based; "#" starts a comment

``wreath A k`` acts on ``k`` copies of the domain of ``A`` with ``Sym_k``
permuting the copies. ``semidirect A gens`` extends ``A`` by permutations of
its domain that normalize it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from math import factorial

from .errors import SpecSyntaxError
from .fields import CONWAY, field as gf, frobenius, prime_power, psl2_generators, psl2_order
from .group import PermGroup
from .perm import Permutation, perm_from_cycles, shift

MAX_SPEC_DEGREE = 1000
MAX_Q = 32

ARITY = {
    "sym": "n", "alt": "n", "cyclic": "n", "dihedral": "n", "psl2": "q", "psigmal2": "q",
    "direct": "exprs", "wreath": "expr k", "subgroup": "expr gens", "semidirect": "expr gens",
    "gens": "n gens", "paper_example": "",
}

Cycles = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Node:
    kind: str
    params: tuple = ()
    children: tuple["Node", ...] = ()
    gens: tuple[Cycles, ...] = ()
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


# --- tokenizer and parser -------------------------------------------------------------

def _tokens(text: str):
    line, col, i = 1, 1, 0
    while i < len(text):
        c = text[i]
        if c == "#":
            while i < len(text) and text[i] != "\n":
                i += 1
            continue
        if c == "\n":
            line, col, i = line + 1, 1, i + 1
            continue
        if c.isspace():
            i, col = i + 1, col + 1
            continue
        if c in "()":
            yield c, line, col
            i, col = i + 1, col + 1
            continue
        j = i
        while j < len(text) and not text[j].isspace() and text[j] not in "()#":
            j += 1
        yield text[i:j], line, col
        col += j - i
        i = j
    yield None, line, col


class _Parser:
    def __init__(self, text: str):
        self.toks = list(_tokens(text))
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def take(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, want: str):
        tok, line, col = self.take()
        if tok != want:
            raise SpecSyntaxError(f"expected {want!r}, found {tok or 'end of input'!r}", line, col)

    def integer(self) -> int:
        tok, line, col = self.take()
        if tok is None or not tok.lstrip("-").isdigit():
            raise SpecSyntaxError(f"expected an integer, found {tok or 'end of input'!r}", line, col)
        return int(tok)

    def cycle(self) -> tuple[int, ...]:
        self.expect("(")
        pts = []
        while self.peek()[0] not in (")", None):
            pts.append(self.integer())
        self.expect(")")
        if not pts:
            _, line, col = self.toks[self.pos - 1]
            raise SpecSyntaxError("empty cycle", line, col)
        return tuple(pts)

    def generator(self) -> Cycles:
        self.expect("(")
        if self.peek()[0] == "(":
            cycles = []
            while self.peek()[0] == "(":
                cycles.append(self.cycle())
            self.expect(")")
            return tuple(cycles)
        self.pos -= 1
        return (self.cycle(),)

    def gens_block(self) -> tuple[Cycles, ...]:
        self.expect("(")
        gens = []
        while self.peek()[0] == "(":
            gens.append(self.generator())
        self.expect(")")
        return tuple(gens)

    def expr(self) -> Node:
        _, line, col = self.peek()
        self.expect("(")
        kind, kl, kc = self.take()
        if kind not in ARITY:
            raise SpecSyntaxError(f"unknown construction {kind!r}", kl, kc)
        shape = ARITY[kind]
        if shape in ("n", "q"):
            node = Node(kind, (self.integer(),), line=line, column=col)
        elif shape == "exprs":
            kids = []
            while self.peek()[0] == "(":
                kids.append(self.expr())
            if len(kids) < 2:
                raise SpecSyntaxError("direct needs at least two factors", line, col)
            node = Node(kind, (), tuple(kids), line=line, column=col)
        elif shape == "expr k":
            child = self.expr()
            node = Node(kind, (self.integer(),), (child,), line=line, column=col)
        elif shape == "expr gens":
            child = self.expr()
            node = Node(kind, (), (child,), self.gens_block(), line=line, column=col)
        elif shape == "n gens":
            n = self.integer()
            node = Node(kind, (n,), (), self.gens_block(), line=line, column=col)
        else:
            node = Node(kind, line=line, column=col)
        self.expect(")")
        return node


def parse_spec(text: str) -> Node:
    """Parse one construction; raises ``SpecSyntaxError`` with a position."""
    p = _Parser(text)
    node = p.expr()
    tok, line, col = p.peek()
    if tok is not None:
        raise SpecSyntaxError(f"trailing input {tok!r}", line, col)
    validate(node)
    return node


def validate(node: Node) -> None:
    """Parameter ranges per construction kind."""
    def bad(msg: str):
        raise SpecSyntaxError(msg, node.line, node.column)

    k = node.kind
    if k in ("sym", "alt", "cyclic", "dihedral", "gens"):
        n = node.params[0]
        lo = 3 if k == "dihedral" else 1
        if not lo <= n <= MAX_SPEC_DEGREE:
            bad(f"{k} parameter {n} outside {lo}..{MAX_SPEC_DEGREE}")
    if k in ("psl2", "psigmal2"):
        q = node.params[0]
        pe = prime_power(q) if q >= 2 else None
        if pe is None or q > MAX_Q:
            bad(f"q = {q} is not a prime power <= {MAX_Q}")
        if pe[1] > 1 and pe not in CONWAY:
            bad(f"no field table for q = {q}")
    if k == "wreath" and not 1 <= node.params[0] <= MAX_SPEC_DEGREE:
        bad("wreath needs k >= 1")
    for g in node.gens:
        for c in g:
            if len(set(c)) != len(c) or min(c) < 0:
                bad(f"bad cycle {c}")
    for c in node.children:
        validate(c)
    if degree_of(node) > MAX_SPEC_DEGREE:
        bad(f"degree {degree_of(node)} exceeds {MAX_SPEC_DEGREE}")


def degree_of(node: Node) -> int:
    k = node.kind
    if k in ("sym", "alt", "cyclic", "dihedral", "gens"):
        return node.params[0]
    if k in ("psl2", "psigmal2"):
        return node.params[0] + 1
    if k == "direct":
        return sum(degree_of(c) for c in node.children)
    if k == "wreath":
        return degree_of(node.children[0]) * node.params[0]
    if k in ("subgroup", "semidirect"):
        return degree_of(node.children[0])
    return 56


def render(node: Node) -> str:
    """Canonical text for a construction; ``parse_spec(render(n)) == n``."""
    def gens(gs):
        return "(" + " ".join(
            "(" + " ".join(map(str, g[0])) + ")" if len(g) == 1
            else "(" + " ".join("(" + " ".join(map(str, c)) + ")" for c in g) + ")"
            for g in gs) + ")"

    k = node.kind
    if k in ("sym", "alt", "cyclic", "dihedral", "psl2", "psigmal2"):
        return f"({k} {node.params[0]})"
    if k == "direct":
        return "(direct " + " ".join(render(c) for c in node.children) + ")"
    if k == "wreath":
        return f"(wreath {render(node.children[0])} {node.params[0]})"
    if k in ("subgroup", "semidirect"):
        return f"({k} {render(node.children[0])} {gens(node.gens)})"
    if k == "gens":
        return f"(gens {node.params[0]} {gens(node.gens)})"
    return "(paper_example)"


# --- builders -------------------------------------------------------------------------

@dataclass
class BuiltGroup:
    group: PermGroup
    named_subgroups: dict[str, PermGroup]
    provenance: Node | None
    normal: set[str] = field(default_factory=set)
    extras: dict[str, PermGroup] = field(default_factory=dict)

    def hints(self) -> list[PermGroup]:
        """Recorded normal subgroups, proper and nontrivial, largest first, forming a chain."""
        G = self.group
        cands = [self.named_subgroups[n] for n in sorted(self.normal)]
        cands = [H for H in cands if 1 < H.order() < G.order()]
        cands.sort(key=lambda H: -H.order())
        chain: list[PermGroup] = []
        for H in cands:
            if all(H.is_subgroup_of(C) for C in chain) and not any(H.order() == C.order() for C in chain):
                chain.append(H)
        return chain


def _perm(degree: int, cycles: Cycles) -> Permutation:
    for c in cycles:
        if max(c) >= degree:
            raise SpecSyntaxError(f"point {max(c)} outside degree {degree}", 0, 0)
    return reduce(lambda a, b: a * b, (perm_from_cycles(degree, [c]) for c in cycles),
                  Permutation.identity(degree))


def _sym(n: int) -> list[Permutation]:
    if n == 1:
        return []
    if n == 2:
        return [perm_from_cycles(2, [(0, 1)])]
    return [perm_from_cycles(n, [(0, 1)]), perm_from_cycles(n, [tuple(range(n))])]


def _alt(n: int) -> list[Permutation]:
    if n < 3:
        return []
    return [perm_from_cycles(n, [(i, i + 1, i + 2)]) for i in range(n - 2)][:1] + \
        ([perm_from_cycles(n, [tuple(range(n))] if n % 2 else [tuple(range(1, n))])] if n > 3 else [])


def build(node: Node) -> BuiltGroup:
    """Materialize a construction as a permutation group."""
    k = node.kind
    n = degree_of(node)
    named: dict[str, PermGroup] = {}
    normal: set[str] = set()
    extras: dict[str, PermGroup] = {}
    if k == "paper_example":
        return build_paper_example()
    if k == "sym":
        G = PermGroup(_sym(n), degree=n)
    elif k == "alt":
        G = PermGroup(_alt(n), degree=n)
    elif k == "cyclic":
        G = PermGroup([perm_from_cycles(n, [tuple(range(n))])] if n > 1 else [], degree=n)
    elif k == "dihedral":
        refl = perm_from_cycles(n, [(i, n - i) for i in range(1, (n + 1) // 2)])
        G = PermGroup([perm_from_cycles(n, [tuple(range(n))]), refl], degree=n)
        named["rotations"] = G.subgroup(G.generators[:1])
        normal.add("rotations")
    elif k in ("psl2", "psigmal2"):
        q = node.params[0]
        S = psl2_generators(q)
        gens = S + ([frobenius(gf(q))] if k == "psigmal2" and prime_power(q)[1] > 1 else [])
        G = PermGroup(gens, degree=n)
        named["socle"] = G.subgroup(S)
        normal.add("socle")
    elif k == "direct":
        gens, off = [], 0
        for i, c in enumerate(node.children):
            sub = build(c).group
            fg = [shift(g, off, n) for g in sub.generators]
            gens += fg
            named[f"factor{i + 1}"] = PermGroup(fg, degree=n)
            normal.add(f"factor{i + 1}")
            off += sub.degree
        G = PermGroup(gens, degree=n)
        for nm in list(named):
            named[nm].parent = G
    elif k == "wreath":
        A = build(node.children[0]).group
        m, copies = A.degree, node.params[0]
        base = [shift(g, i * m, n) for i in range(copies) for g in A.generators]
        top = [Permutation([(x + m) % n for x in range(n)])] if copies > 1 else []
        if copies > 2:
            top.append(Permutation([x + m if x < m else x - m if x < 2 * m else x for x in range(n)]))
        G = PermGroup(base + top, degree=n)
        named["base"] = G.subgroup(base)
        normal.add("base")
    elif k in ("subgroup", "semidirect"):
        inner = build(node.children[0])
        A = inner.group
        gens = [_perm(n, g) for g in node.gens]
        if k == "subgroup":
            bad = [g for g in gens if not A.contains(g)]
            if bad:
                raise SpecSyntaxError("subgroup generator outside the ambient group", node.line, node.column)
            G = PermGroup(gens, degree=n)
            named["ambient"] = A
        else:
            for g in gens:
                if not all(A.contains(a ^ g) for a in A.generators):
                    raise SpecSyntaxError("semidirect generators must normalize the base group",
                                          node.line, node.column)
            G = PermGroup(list(A.generators) + gens, degree=n)
            named["base"] = G.subgroup(A.generators)
            normal.add("base")
    elif k == "gens":
        G = PermGroup([_perm(n, g) for g in node.gens], degree=n)
    else:
        raise SpecSyntaxError(f"unknown construction {k!r}", node.line, node.column)
    bg = BuiltGroup(G, named, node, normal, extras)
    _check(bg)
    return bg


def _check(bg: BuiltGroup) -> None:
    G = bg.group
    for name, H in bg.named_subgroups.items():
        if name == "ambient":
            continue
        if not H.is_subgroup_of(G):
            raise AssertionError(f"named subgroup {name} is not inside the group")
        if name in bg.normal and not H.is_normal_in(G):
            raise AssertionError(f"hint {name} is not normal")


def build_paper_example() -> BuiltGroup:
    """Two copies of PSL(2,27) on 28 points each, extended by (phi, phi^-1) and the swap.

    Named subgroups: ``H``/``socle`` (PSL(2,27)^2), ``GcapM`` (H extended by
    ``(phi, phi^-1)``), ``T1``, ``T2`` and ``sigma``. ``extras["L"]`` is
    PSL(2,27) extended by the Frobenius map on 28 points.
    """
    n = 56
    F = gf(27)
    S = psl2_generators(27)
    phi = frobenius(F)
    t1 = [shift(g, 0, n) for g in S]
    t2 = [shift(g, 28, n) for g in S]
    pp = Permutation(list(phi) + [28 + x for x in ~phi])
    sigma = Permutation(list(range(28, 56)) + list(range(28)))
    G = PermGroup(t1 + t2 + [pp, sigma], degree=n, name="G")
    H = G.subgroup(t1 + t2, name="H")
    named = {
        "H": H,
        "socle": H,
        "GcapM": G.subgroup(t1 + t2 + [pp], name="GcapM"),
        "T1": G.subgroup(t1, name="T1"),
        "T2": G.subgroup(t2, name="T2"),
        "sigma": G.subgroup([sigma], name="sigma"),
    }
    L = PermGroup(S + [phi], degree=28, name="L")
    bg = BuiltGroup(G, named, Node("paper_example"), {"H", "socle", "GcapM"}, {"L": L})
    _check(bg)
    return bg


def build_spec(text: str) -> BuiltGroup:
    return build(parse_spec(text))


def expected_order(node: Node) -> int | None:
    """Closed-form order for family constructions (used as a cross-check)."""
    k, p = node.kind, node.params
    if k == "sym":
        return factorial(p[0])
    if k == "alt":
        return max(1, factorial(p[0]) // 2)
    if k == "cyclic":
        return p[0]
    if k == "dihedral":
        return 2 * p[0]
    if k == "psl2":
        return psl2_order(p[0])
    if k == "psigmal2":
        return psl2_order(p[0]) * prime_power(p[0])[1]
    if k == "direct":
        orders = [expected_order(c) for c in node.children]
        return None if None in orders else reduce(lambda a, b: a * b, orders)
    if k == "wreath":
        a = expected_order(node.children[0])
        return None if a is None else a ** p[0] * factorial(p[0])
    return None
