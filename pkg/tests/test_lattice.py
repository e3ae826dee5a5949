import pytest

from oracles import atoms as oracle_atoms
from oracles import covers as oracle_covers
from oracles import glb, is_lattice, lub, relation
from qlat.lattice import FiniteOrtholattice, atoms, covers, verify_lattice
from qlat.report import QlatInputError


def benzene():
    return FiniteOrtholattice.from_pairs(
        ["0", "a", "b", "b'", "a'", "1"],
        [("0", "a"), ("a", "b"), ("b", "1"), ("0", "b'"), ("b'", "a'"), ("a'", "1")],
        ortho={"0": "1", "1": "0", "a": "a'", "a'": "a", "b": "b'", "b'": "b"},
    )


def pentagon():
    return FiniteOrtholattice.from_pairs(
        ["0", "x", "y", "z", "1"], [("0", "x"), ("x", "y"), ("y", "1"), ("0", "z"), ("z", "1")]
    )


def test_power_set_is_lattice():
    rep = verify_lattice(FiniteOrtholattice.power_set(2))
    assert rep.passed and rep.witness is None


def test_missing_reflexivity_reported():
    L = FiniteOrtholattice.from_pairs(
        ["0", "a", "1"], [("0", "0"), ("1", "1"), ("0", "a"), ("a", "1"), ("0", "1")], closure=False
    )
    rep = verify_lattice(L)
    assert rep.failed
    assert rep.witness == ("a", "a")
    assert rep.clause == "reflexivity"


def test_pentagon_is_a_lattice():
    L = pentagon()
    assert is_lattice(relation(L))  # oracle agrees
    assert verify_lattice(L).passed


def test_non_lattice_reports_missing_join():
    # two maximal elements, no top
    L = FiniteOrtholattice.from_pairs(["0", "p", "q"], [("0", "p"), ("0", "q")])
    rep = verify_lattice(L)
    assert rep.failed and rep.clause == "top"


def test_meet_join_in_boolean_cube():
    L = FiniteOrtholattice.power_set(3)
    i12, i23 = L.index("{1,2}"), L.index("{2,3}")
    assert L.labels[L.meet(i12, i23)] == "{2}"
    assert L.labels[L.join(i12, i23)] == "{1,2,3}"


def test_bound_identities():
    L = benzene()
    for a in L.elements():
        assert L.meet(a, L.top) == a
        assert L.join(a, L.bottom) == a


def test_benzene_join_of_atom_and_complement():
    L = benzene()
    a, bp = L.index("a"), L.index("b'")
    assert L.join(a, bp) == L.top
    assert lub(relation(L), a, bp) == L.top


def test_atoms():
    assert sorted(FiniteOrtholattice.power_set(3).labels[x] for x in atoms(FiniteOrtholattice.power_set(3))) == [
        "{1}", "{2}", "{3}"
    ]
    chain = FiniteOrtholattice.from_pairs(["0", "a", "1"], [("0", "a"), ("a", "1")])
    assert [chain.labels[x] for x in atoms(chain)] == ["a"]
    L = benzene()
    assert sorted(L.labels[x] for x in atoms(L)) == ["a", "b'"]
    assert atoms(L) == oracle_atoms(relation(L))


def test_covers():
    L = FiniteOrtholattice.power_set(3)
    one, one_two, full = L.index("{1}"), L.index("{1,2}"), L.index("{1,2,3}")
    assert covers(L, one, one_two)
    assert not covers(L, one, full)
    B = benzene()
    assert not covers(B, B.bottom, B.top)


def test_covers_precondition():
    L = FiniteOrtholattice.power_set(2)
    with pytest.raises(QlatInputError):
        covers(L, L.index("{1}"), L.index("{2}"))


@pytest.mark.parametrize("make", [benzene, pentagon, lambda: FiniteOrtholattice.power_set(3)])
def test_meet_join_match_brute_force(make):
    L = make()
    R = relation(L)
    for a in L.elements():
        for b in L.elements():
            assert L.meet(a, b) == glb(R, a, b)
            assert L.join(a, b) == lub(R, a, b)


@pytest.mark.parametrize("make", [benzene, pentagon])
def test_duality(make):
    L = make()
    D = L.dual()
    for a in L.elements():
        for b in L.elements():
            assert L.meet(a, b) == D.join(a, b)


def test_atoms_are_covers_of_bottom():
    L = pentagon()
    R = relation(L)
    assert atoms(L) == [x for x in L.elements() if oracle_covers(R, L.bottom, x)]


def test_malformed_input():
    with pytest.raises(QlatInputError):
        FiniteOrtholattice(["a", "b"], [[True]])
    with pytest.raises(QlatInputError):
        FiniteOrtholattice(["a", "a"], [[True, False], [False, True]])
    with pytest.raises(QlatInputError, match="undeclared element 'z'"):
        FiniteOrtholattice.from_pairs(["a"], [("a", "z")])
    with pytest.raises(QlatInputError):
        FiniteOrtholattice(["a"], [[True]], ortho=[3])


def test_element_cap(monkeypatch):
    monkeypatch.setenv("QLAT_MAX_ELEMENTS", "3")
    with pytest.raises(QlatInputError, match="cap"):
        FiniteOrtholattice.power_set(2)


def test_hasse_dump():
    lines = FiniteOrtholattice.from_pairs(["0", "a", "1"], [("0", "a"), ("a", "1")]).hasse_lines()
    assert lines == ["0 -< a", "a -< 1", "1 -< ."]
