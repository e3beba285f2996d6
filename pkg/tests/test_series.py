import math

import pytest
from hypothesis import given, settings, strategies as st

from carterkit import PermGroup, Permutation, perm_from_cycles
from carterkit.errors import CapacityError, NotSimpleError
from carterkit.series import (AMBIGUOUS_ORDERS, SimpleTypeLabel, chief_series, identify_simple_factor,
                              minimal_normal_subgroups, verify_chief_series)

from conftest import tuples
import oracles


def test_minimal_normal_examples(spec):
    S4 = spec("(sym 4)")
    [V] = minimal_normal_subgroups(S4)
    assert V.order() == 4 and V.contains(perm_from_cycles(4, [[0, 1], [2, 3]]))
    [C3] = minimal_normal_subgroups(spec("(sym 3)"))
    assert C3.order() == 3 and C3.contains(perm_from_cycles(3, [[0, 1, 2]]))
    A5 = spec("(alt 5)")
    [M] = minimal_normal_subgroups(A5)
    assert M.equals(A5)


def test_large_group_needs_hints(example56):
    with pytest.raises(CapacityError):
        minimal_normal_subgroups(example56.group, budget=1000)
    [M] = minimal_normal_subgroups(example56.group, hints=[example56.named_subgroups["H"]])
    assert M.equals(example56.named_subgroups["H"])


def test_labels(spec):
    lab = identify_simple_factor(spec("(alt 5)"))
    assert lab.order == 60 and lab.kind == "alternating"
    assert set(lab.names) == {"A5", "PSL(2,4)", "PSL(2,5)"}
    assert identify_simple_factor(spec("(psl2 4)")) == lab
    assert str(identify_simple_factor(spec("(cyclic 7)"))) == "C7"
    lab27 = identify_simple_factor(spec("(psl2 27)"))
    assert str(lab27) == "PSL(2,27)" and not lab27.ambiguous
    # A8 and PSL(3,4) share order 20160
    assert 20160 in AMBIGUOUS_ORDERS
    assert identify_simple_factor(spec("(alt 8)")).ambiguous


def test_label_rejects_non_simple(spec):
    with pytest.raises(NotSimpleError):
        identify_simple_factor(spec("(sym 4)"))


def test_chief_series_examples(spec):
    cs = chief_series(spec("(sym 4)"))
    assert cs.factor_orders() == [2, 3, 4]
    assert [f.k for f in cs.factors] == [1, 1, 2]
    cs = chief_series(spec("(alt 5)"))
    assert cs.factor_orders() == [60] and cs.factors[0].k == 1


def test_chief_series_of_large_example(example56):
    N = example56.named_subgroups
    cs = chief_series(example56.group, [N["GcapM"], N["H"]])
    assert cs.factor_orders() == [2, 3, 9828 ** 2]
    assert [f.k for f in cs.factors] == [1, 1, 2]
    assert str(cs.factors[2].label) == "PSL(2,27)"
    assert verify_chief_series(example56.group, cs)


def test_bad_hints_rejected(spec):
    S4 = spec("(sym 4)")
    with pytest.raises(ValueError):
        chief_series(S4, [S4.subgroup([perm_from_cycles(4, [[0, 1]])])])


@pytest.mark.parametrize("text", ["(sym 3)", "(dihedral 4)", "(wreath (sym 3) 2)", "(direct (alt 5) (cyclic 2))",
                                  "(wreath (alt 5) 2)", "(psigmal2 9)", "(cyclic 12)", "(direct (sym 3) (sym 3))"])
def test_chief_series_structure(spec, text):
    G = spec(text)
    cs = chief_series(G)
    assert math.prod(cs.factor_orders()) == G.order()
    assert verify_chief_series(G, cs)
    for f in cs.factors:
        assert f.order == f.label.order ** f.k
        assert len(f.components) == f.k


@st.composite
def small_groups(draw):
    n = draw(st.integers(3, 6))
    gens = [Permutation(draw(st.permutations(list(range(n))))) for _ in range(draw(st.integers(1, 3)))]
    return PermGroup(gens, degree=n)


@settings(max_examples=30, deadline=None)
@given(small_groups())
def test_minimal_normal_and_chief_series_match_oracle(G):
    Ge = tuples(G)
    ref = set(oracles.minimal_normal_subgroups(Ge, G.degree))
    got = {tuples(M) for M in minimal_normal_subgroups(G)}
    assert got == ref
    cs = chief_series(G)
    normals = {S for S in oracles.normal_subgroups(Ge, G.degree)}
    terms = [tuples(t) for t in cs.terms]
    assert terms[0] == Ge and len(terms[-1]) == 1
    for up, low in zip(terms, terms[1:]):
        assert up in normals and low < up
        assert not any(low < S < up for S in normals)
