import pytest

from conftest import load
from qlat.lattice import FiniteOrtholattice, atoms
from qlat.report import QlatInputError
from qlat.sps import (
    ClosureSystem,
    StatePropertySystem,
    YesNo,
    cartan,
    check_atomicity,
    check_state_determination,
    closure_from_actuality,
    is_superposition,
    leq_witness_state,
    property_orthogonal,
    property_state,
    state_property_orthogonal,
)

WOOD_STATES = ["dry-European", "wet-European", "dry-Ebony", "wet-Ebony"]


def names(S, props):
    return {S.lattice.labels[a] for a in props}


def boolean_wood():
    # every subset of the four wood states is a property
    labels = []
    sets = list(range(16))
    for m in sets:
        labels.append("{" + ",".join(WOOD_STATES[i] for i in range(4) if m >> i & 1) + "}")
    L = FiniteOrtholattice.from_sets(labels, sets, ortho=[15 ^ m for m in sets])
    ortho = [15 ^ (1 << i) for i in range(4)]
    return StatePropertySystem(WOOD_STATES, L, sets, ortho)


def test_cartan_examples():
    wood = load("wood.qlat")
    assert names(wood, cartan(wood, wood.state_index("dry-European"))) == {"float", "burn", "float∧burn", "1"}
    q = load("qubit3.qlat")
    for p in range(len(q.states)):
        assert q.lattice.top in cartan(q, p)
        assert q.lattice.bottom not in cartan(q, p)
    assert names(q, cartan(q, q.state_index("x+"))) == {"[x+]", "1"}


def test_property_state_examples():
    wood = load("wood.qlat")
    # strongest actual property of dry European wood: the float-and-burn conjunction
    assert wood.lattice.labels[property_state(wood, wood.state_index("dry-European"))] == "float∧burn"
    trivial = StatePropertySystem.from_actuality_sets(["p"], {"0": [], "1": ["p"]})
    assert property_state(trivial, 0) == trivial.lattice.top
    q = load("qubit3.qlat")
    assert q.lattice.labels[property_state(q, q.state_index("z+"))] == "[z+]"


@pytest.mark.parametrize("name", ["qubit3.qlat", "qubit4.qlat", "classical2.qlat", "boolean-wood"])
def test_property_state_is_strongest_actual(name):
    S = boolean_wood() if name == "boolean-wood" else load(name)
    L = S.lattice
    for p in range(len(S.states)):
        ps = property_state(S, p)
        assert S.is_actual(p, ps)
        assert all(L.leq(ps, a) for a in cartan(S, p))


def test_state_determination():
    assert check_state_determination(load("wood.qlat")).passed
    dup = StatePropertySystem.from_actuality_sets(["p", "q"], {"a": ["p", "q"]})
    rep = check_state_determination(dup)
    assert rep.failed and rep.witness == ("p", "q")
    assert check_state_determination(StatePropertySystem.from_actuality_sets(["p"], {})).passed


def test_atomicity_examples():
    S = boolean_wood()
    assert check_atomicity(S).passed
    assert {S.lattice.labels[property_state(S, p)] for p in range(4)} == {"{" + s + "}" for s in WOOD_STATES}
    # one state p; the atom {2} is actual nowhere, so no state reaches it
    orphan = StatePropertySystem(["p"], FiniteOrtholattice.power_set(2), [0, 1, 0, 1])
    rep = check_atomicity(orphan)
    assert rep.failed and rep.clause == "orphan-atom"
    # chain 0 < a < 1 with a actual nowhere: both states land on the top
    L = FiniteOrtholattice.from_pairs(["0", "a", "1"], [("0", "a"), ("a", "1")])
    chain = StatePropertySystem(["p", "q"], L, [0, 0, 3])
    rep = check_atomicity(chain)
    assert rep.failed and rep.witness == ("p",) and rep.clause == "property-state-not-atom"


def test_wood_fixture_atomicity_fails_at_wet_european():
    # the eight-property wood lattice has no property singling out wet European wood:
    # the meet of float and fireproof is 0, which is not actual anywhere
    wood = load("wood.qlat")
    p = wood.state_index("wet-European")
    assert property_state(wood, p) == wood.lattice.bottom
    rep = check_atomicity(wood)
    assert rep.failed and rep.witness == ("wet-European",)


def test_superposition():
    q = load("qubit3.qlat")
    zp, zm, xp = (q.state_index(s) for s in ("z+", "z-", "x+"))
    assert is_superposition(q, zp, zp, zm)
    assert is_superposition(q, xp, zp, zm)
    wood = load("wood.qlat")
    dE, wE, dB = (wood.state_index(s) for s in ("dry-European", "wet-European", "dry-Ebony"))
    assert not is_superposition(wood, dB, dE, wE)
    for r in range(3):
        for p in range(3):
            assert is_superposition(q, r, p, p) == (cartan(q, p) <= cartan(q, r))


def test_orthogonality():
    q = load("qubit3.qlat")
    zp, zm, xp = q.prop("[z+]"), q.prop("[z-]"), q.prop("[x+]")
    assert property_orthogonal(q, zp, zm)
    assert property_orthogonal(q, q.lattice.bottom, xp)
    assert not property_orthogonal(q, zp, xp)
    assert state_property_orthogonal(q, q.state_index("z-"), zp)
    assert not state_property_orthogonal(q, q.state_index("x+"), zp)


def test_yes_no_semantics():
    t1, t2 = YesNo(0b0011, 0b1100), YesNo(0b0101, 0b1010)
    assert t1.inverse() == YesNo(0b1100, 0b0011)
    prod = YesNo.product(t1, t2)
    assert prod.yes == 0b0001
    assert prod.no == 0b1000
    with pytest.raises(QlatInputError):
        YesNo(1, 1)


def test_wood_product_test_is_indeterminate_on_dry_ebony():
    wood = load("wood.qlat")
    dB = wood.state_index("dry-Ebony")
    for label in ("float∧burn", "sink∧fireproof"):
        assert wood.indeterminate(wood.prop(label)) >> dB & 1
    a, b = wood.prop("sink"), wood.prop("sink∧fireproof")
    assert wood.states[leq_witness_state(wood, a, b)] == "dry-Ebony"
    assert leq_witness_state(wood, wood.prop("float∧burn"), wood.prop("float")) is None


def test_validation():
    chain = FiniteOrtholattice.from_pairs(["0", "a", "b", "1"], [("0", "a"), ("a", "b"), ("b", "1")])
    with pytest.raises(QlatInputError, match="upward"):
        StatePropertySystem(["p"], chain, [0, 1, 0, 1])
    L = FiniteOrtholattice.from_pairs(["0", "a", "1"], [("0", "a"), ("a", "1")])
    with pytest.raises(QlatInputError, match="top"):
        StatePropertySystem(["p"], L, [0, 0, 0])
    with pytest.raises(QlatInputError, match="itself"):
        StatePropertySystem(["p"], L, [0, 0, 1], state_ortho=[1])
    with pytest.raises(QlatInputError, match="symmetric"):
        StatePropertySystem(["p", "q"], L, [0, 0, 3], state_ortho=[2, 0])
    with pytest.raises(QlatInputError, match="same actuality"):
        StatePropertySystem.from_actuality_sets(["p"], {"a": ["p"], "b": ["p"]})


def test_state_ortho_derived_from_tests():
    S = StatePropertySystem.from_actuality_sets(["p", "q", "r"], {"a": ["p"]}, certain_no={"a": ["q"]})
    assert S.state_ortho == (0b010, 0b001, 0)


def test_closure_examples():
    S = StatePropertySystem.from_actuality_sets(["p", "q", "r"], {})
    fam = closure_from_actuality(S, [["p"], ["q"], ["r"]])
    assert set(fam.members) == {0b001, 0b010, 0b100, 0, 0b111}
    assert set(closure_from_actuality(S, []).members) == {0b111}
    with pytest.raises(QlatInputError):
        closure_from_actuality(S, [["zz"]])


def test_closure_of_overlapping_rectangles():
    # 3x3 grid, state (i, j) has index 3*i + j
    def rect(rows, cols):
        return sum(1 << (3 * i + j) for i in rows for j in cols)

    r1, r2 = rect([0, 1], [0, 1]), rect([1, 2], [1, 2])
    fam = ClosureSystem.generate(9, [r1, r2])
    assert rect([1], [1]) in fam.members
    assert fam.closure(1 << 4) == rect([1], [1])
    assert fam.closure(1 << 0) == r1
