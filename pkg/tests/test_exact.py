from fractions import Fraction

import numpy as np
import pytest

from qlat import exact
from qlat.exact import QQi, SurdVector


def test_gaussian_rational_arithmetic():
    a, b = QQi(1, 2), QQi(Fraction(1, 2), -1)
    assert a * b == QQi(Fraction(5, 2), Fraction(0))
    assert (a / b) * b == a
    assert a.conjugate() == QQi(1, -2)
    assert a.abs2() == 5
    assert a - a == 0 and not (a - a)
    with pytest.raises(ZeroDivisionError):
        a / QQi()


def test_refuses_float_complex():
    with pytest.raises(TypeError):
        QQi.coerce(1j)


def test_nullspace_and_rref():
    m = exact.qmatrix([[1, 2, 0], [2, 4, 1]])
    basis = exact.nullspace(m)
    assert len(basis) == 1
    assert all(not z for z in m @ basis[0])
    reduced, pivots = exact.rref(m)
    assert pivots == [0, 2]


def test_projector_from_complex_vector():
    v = exact.qvector([1, QQi(0, 1)])
    p = exact.projector_from_orthogonal(exact.orthogonalize([v]), 2)
    assert (p @ p == p).all()
    assert p[0, 1] == QQi(0, Fraction(-1, 2))


@pytest.mark.parametrize("r, expected", [(2, (Fraction(1), 2)), (Fraction(1, 2), (Fraction(1, 2), 2)), (8, (Fraction(2), 2)), (9, (Fraction(3), 1))])
def test_sqrt_rational(r, expected):
    assert exact.sqrt_rational(r) == expected


def test_surd_vector():
    e1 = exact.qvector([1, 0])
    half = SurdVector.scaled(e1, Fraction(1, 2))  # e1 / sqrt2
    assert half.norm2_rational() == Fraction(1, 2)
    assert half + half == SurdVector.scaled(e1, 2)
    assert np.allclose(half.to_complex(), [2 ** -0.5, 0])
    assert (half - half).is_zero()
