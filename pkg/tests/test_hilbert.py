import math
from fractions import Fraction

import numpy as np
import pytest

from qlat import exact
from qlat.axioms import full_report
from qlat.hilbert import (
    Subspace,
    born_probability,
    generate_subspace_lattice,
    join_subspace,
    leq_projector,
    meet_subspace,
    ortho_projector,
    sample_sps,
    tensor,
)
from qlat.lattice import FiniteOrtholattice
from qlat.report import ClosureExplosion, QlatInputError

from oracles import eye, from_qqi, matmul, matsub


def line(*v):
    return Subspace.span([list(v)])


def test_leq_projector_examples():
    p = line(1, 0).projector
    assert leq_projector(p, p)
    assert leq_projector(Subspace.span([[1, 0, 0]]).projector, Subspace.span([[1, 0, 0], [0, 1, 0]]).projector)
    assert not leq_projector(line(1, 0).projector, line(1, 1).projector)


def test_leq_projector_errors():
    with pytest.raises(QlatInputError):
        leq_projector(line(1, 0).projector, Subspace.span([[1, 0, 0]]).projector)
    with pytest.raises(QlatInputError):
        leq_projector(exact.qmatrix([[1, 1], [0, 0]]), line(1, 0).projector)


def test_projector_equations_exact():
    pa = Subspace.span([[1, 1, 0]]).projector
    pb = Subspace.span([[1, 1, 0], [0, 0, 1]]).projector
    A, B, I = from_qqi(pa), from_qqi(pb), eye(3)
    # (I - Pb)(I - Pa) = I - Pb
    assert matmul(matsub(I, B), matsub(I, A)) == matsub(I, B)
    # I - (I - Pa) = Pa
    assert matsub(I, matsub(I, A)) == A
    # Pa (I - Pa) = 0
    assert all(z == (0, 0) for row in matmul(A, matsub(I, A)) for z in row)
    assert (ortho_projector(pa) == exact.identity(3) - pa).all()


def test_meet_and_join_of_lines():
    d, e1 = line(1, 1), line(1, 0)
    assert meet_subspace(d, e1).rank == 0
    assert join_subspace(d, e1).rank == 2


def test_float_meet_join():
    a = Subspace.span([np.array([1, 1j, 0]) / math.sqrt(2), np.array([0, 0, 1.0])])
    b = Subspace.span([np.array([1.0, 0, 0]), np.array([0, 0, 1.0])])
    assert meet_subspace(a, b).rank == 1
    assert join_subspace(a, b).rank == 3


def test_generated_lattices():
    assert generate_subspace_lattice([line(1, 0)]).size == 4
    L = generate_subspace_lattice([line(1, 0), line(1, 1)])
    assert L.size == 6
    verdicts = {r.axiom: r.verdict for r in full_report(L)}
    assert all(verdicts[a] == "pass" for a in ("completeness", "orthocomplementation", "covering-law", "weak-modularity"))
    B = generate_subspace_lattice([Subspace.span([[1, 0, 0]]), Subspace.span([[0, 1, 0]]), Subspace.span([[0, 0, 1]])])
    assert B.size == 8
    R = FiniteOrtholattice.power_set(3)
    # same shape as the Boolean cube: rank profile 1, 3, 3, 1
    assert sorted(m.rank for m in B.payload) == sorted(bin(s).count("1") for s in R.payload)


def test_closure_explosion():
    seeds = [Subspace.span([[1, 0, 0]]), Subspace.span([[1, 1, 0]]), Subspace.span([[1, 1, 1]])]
    with pytest.raises(ClosureExplosion):
        generate_subspace_lattice(seeds, max_elements=6)


def test_degenerate_seed():
    with pytest.raises(QlatInputError):
        Subspace.from_projector(exact.qmatrix([[1, 1], [0, 1]]))


def test_float_and_exact_lattices_agree():
    ex = generate_subspace_lattice([line(1, 0), line(1, 1), Subspace.span([[1, exact.QQi(0, 1)]])])
    fl = generate_subspace_lattice([
        Subspace.span([np.array([1, 0], dtype=complex)]),
        Subspace.span([np.array([1, 1], dtype=complex)]),
        Subspace.span([np.array([1, 1j])]),
    ])
    assert ex.size == fl.size == 8
    for a, b in zip(ex.payload, fl.payload):
        assert np.allclose(exact.to_complex(a.projector), b.projector, atol=1e-9)


def test_tensor_and_born():
    i2 = exact.identity(2)
    assert (tensor(i2, i2) == exact.identity(4)).all()
    psi = exact.qvector([1, 0])
    assert born_probability(line(1, 0).projector, psi) == 1
    singlet = np.array([0, 1, -1, 0]) / math.sqrt(2)
    p0 = np.diag([1.0, 0.0])
    assert born_probability(tensor(p0, np.eye(2)), singlet) == pytest.approx(0.5, abs=1e-12)
    with pytest.raises(QlatInputError):
        born_probability(p0, np.array([1.0, 1.0]))


def test_born_exact_half():
    psi = exact.qvector([Fraction(3, 5), Fraction(4, 5)])
    assert born_probability(line(1, 0).projector, psi) == Fraction(9, 25)


def test_sample_sps_examples():
    zp, zm, xp = [1, 0], [0, 1], [1, 1]
    S = sample_sps([zp, zm], [line(*zp)], ["z+", "z-"], ["[z+]"])
    a = S.prop("[z+]")
    assert S.indeterminate(a) == 0
    S = sample_sps([zp, zm, xp], [line(*zp)], ["z+", "z-", "x+"], ["[z+]"])
    assert S.indeterminate(S.prop("[z+]")) == 0b100
    S = sample_sps([zp, zm], [])
    assert S.lattice.labels == ("0", "1")
