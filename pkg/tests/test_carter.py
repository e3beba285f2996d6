import pytest
from hypothesis import given, settings, strategies as st

from carterkit import PermGroup, Permutation, perm_from_cycles
from carterkit.carter import (brute_force_carter, carter_find, carter_solvable, check_condition_E,
                              nilpotent_subgroups_enum, verify_carter)
from carterkit.errors import CapacityError, NotSolvableError
from carterkit.series import chief_series
from carterkit.subgroups import are_conjugate, is_solvable

from conftest import tuples
import oracles


def test_verify_carter_examples(spec):
    S3 = spec("(sym 3)")
    assert verify_carter(S3, S3.subgroup([perm_from_cycles(3, [[0, 1]])])).ok
    cert = verify_carter(S3, S3.subgroup([perm_from_cycles(3, [[0, 1, 2]])]))
    assert not cert.ok and cert.reason == "not self-normalizing"
    D = spec("(dihedral 4)")
    assert verify_carter(D, D).ok
    cert = verify_carter(S3, S3)
    assert not cert.ok and cert.reason == "not nilpotent"


def test_carter_solvable_examples(spec):
    S3, S4 = spec("(sym 3)"), spec("(sym 4)")
    assert carter_solvable(S3).order() == 2
    assert carter_solvable(S4).order() == 8
    C = spec("(cyclic 12)")
    assert carter_solvable(C).equals(C)
    with pytest.raises(NotSolvableError):
        carter_solvable(spec("(alt 5)"))


def test_enumeration_examples(spec):
    assert nilpotent_subgroups_enum(spec("(cyclic 6)")).orders() == [1, 2, 3, 6]
    assert nilpotent_subgroups_enum(spec("(sym 3)")).orders() == [1, 2, 3]
    assert nilpotent_subgroups_enum(spec("(alt 5)")).orders() == [1, 2, 3, 4, 5]


def test_enumeration_budget(spec):
    with pytest.raises(CapacityError) as e:
        nilpotent_subgroups_enum(spec("(sym 6)"), budget=100)
    assert e.value.partial is not None


def test_brute_force_examples(spec):
    assert brute_force_carter(spec("(alt 5)")) == []
    [K] = brute_force_carter(spec("(sym 4)"))
    assert K.order() == 8


def test_brute_force_on_psl2_27(spec):
    assert brute_force_carter(spec("(psl2 27)")) == []


def test_carter_find_examples(spec):
    D = spec("(dihedral 8)")
    out = carter_find(D)
    assert out.exists and out.subgroup.equals(D)
    S4 = spec("(sym 4)")
    out = carter_find(S4)
    assert out.exists and out.subgroup.order() == 8 and out.certificate.ok
    assert are_conjugate(S4, out.subgroup, brute_force_carter(S4)[0])
    out = carter_find(spec("(alt 5)"))
    assert out.status == "not_exists" and out.witness.group.order() == 60


def test_carter_find_nonsolvable_with_carter_subgroup(spec):
    G = spec("(psigmal2 27)")
    out = carter_find(G)
    assert out.exists and out.subgroup.order() == 81 and verify_carter(G, out.subgroup).ok


def test_condition_e_examples(spec):
    S4 = spec("(sym 4)")
    assert check_condition_E(S4, chief_series(S4)).satisfied
    A5 = spec("(alt 5)")
    rep = check_condition_E(A5, chief_series(A5))
    assert not rep.satisfied and rep.failure.level == 0 and rep.failure.aut_order == 60


def test_large_example_not_exists(example56):
    N = example56.named_subgroups
    out = carter_find(example56.group, [N["GcapM"], N["H"]])
    assert out.status == "not_exists"
    assert out.witness.group.order() == 9828 and str(out.witness.label) == "PSL(2,27)"


def test_large_example_condition_e(example56):
    G, N = example56.group, example56.named_subgroups
    rep = check_condition_E(G, chief_series(G, [N["GcapM"], N["H"]]))
    assert not rep.satisfied
    assert rep.failure.label == "PSL(2,27)" and rep.failure.aut_order == 9828
    assert [c.aut_order for c in rep.cells[:2]] == [1, 2]


@st.composite
def small_groups(draw):
    n = draw(st.integers(3, 5))
    gens = [Permutation(draw(st.permutations(list(range(n))))) for _ in range(draw(st.integers(1, 3)))]
    return PermGroup(gens, degree=n)


@settings(max_examples=40, deadline=None)
@given(small_groups())
def test_brute_force_matches_lattice_oracle(G):
    Ge = tuples(G)
    ref = oracles.carter_subgroups(Ge, G.degree)
    ref_classes = oracles.conjugacy_classes_of_subgroups(Ge, ref)
    got = brute_force_carter(G)
    assert len(got) == len(ref_classes)
    for K in got:
        assert any(tuples(K) in cls for cls in ref_classes)
    assert carter_find(G).exists == bool(ref)
    if is_solvable(G):
        assert tuples(carter_solvable(G)) in ref_classes[0]
