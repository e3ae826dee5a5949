"""Exact arithmetic over the Gaussian rationals Q(i), plus square-root terms.

Matrices are numpy object arrays of :class:`QQi`, so ``@``, ``+`` and
``np.kron`` work unchanged. :class:`SurdVector` represents sums
``sum_m sqrt(m) * v_m`` with squarefree integers ``m`` and Q(i) vectors
``v_m``; it keeps normalisations such as 1/sqrt(2) exact.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import numpy as np


class QQi:
    """Gaussian rational ``re + im*i`` with Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        # Fraction(x) is slow even when x already is one; this is the hot path
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @staticmethod
    def coerce(x) -> "QQi":
        if type(x) is QQi:
            return x
        if isinstance(x, (Rational, int)):
            return QQi(x)
        if isinstance(x, complex):
            raise TypeError("refusing to coerce a float complex into exact arithmetic")
        raise TypeError(f"cannot coerce {type(x).__name__} to QQi")

    def __add__(self, other):
        if type(other) is QQi:
            o = other
        else:
            try:
                o = QQi.coerce(other)
            except TypeError:
                return NotImplemented
        return QQi(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __sub__(self, other):
        if type(other) is QQi:
            o = other
        else:
            try:
                o = QQi.coerce(other)
            except TypeError:
                return NotImplemented
        return QQi(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return QQi.coerce(other) - self

    def __mul__(self, other):
        if type(other) is QQi:
            o = other
        else:
            try:
                o = QQi.coerce(other)
            except TypeError:
                return NotImplemented
        return QQi(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = QQi.coerce(other)
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("QQi division by zero")
        return QQi((self.re * o.re + self.im * o.im) / d, (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        return QQi.coerce(other) / self

    def conjugate(self):
        return QQi(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __eq__(self, other):
        try:
            o = QQi.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


def qmatrix(rows) -> np.ndarray:
    """Object array of QQi from nested numbers (ints, Fractions, QQi)."""
    arr = np.asarray(rows, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        out[idx] = QQi.coerce(x)
    return out


def qvector(entries) -> np.ndarray:
    return qmatrix(list(entries))


def is_exact(m: np.ndarray) -> bool:
    return m.dtype == object


def identity(n: int) -> np.ndarray:
    return qmatrix(np.eye(n, dtype=int).tolist())


def zeros(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    for idx in np.ndindex(*out.shape):
        out[idx] = QQi()
    return out


def adjoint(m: np.ndarray) -> np.ndarray:
    return np.vectorize(lambda z: z.conjugate(), otypes=[object])(m.T)


def inner(u: np.ndarray, v: np.ndarray) -> QQi:
    """<u, v>, conjugate-linear in the first slot."""
    total = QQi()
    for a, b in zip(u, v):
        total = total + a.conjugate() * b
    return total


def to_complex(m: np.ndarray) -> np.ndarray:
    return np.vectorize(complex, otypes=[complex])(m) if is_exact(m) else np.asarray(m, dtype=complex)


def rref(m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = m.copy()
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i, c]), None)
        if pivot is None:
            continue
        if pivot != r:
            a[[r, pivot]] = a[[pivot, r]]
        inv = QQi(1) / a[r, c]
        a[r] = a[r] * inv
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] = a[i] - a[r] * a[i, c]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def nullspace(m: np.ndarray) -> list[np.ndarray]:
    """Basis of {x : m x = 0}."""
    reduced, pivots = rref(m)
    cols = m.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = zeros(cols)
        v[f] = QQi(1)
        for row, p in enumerate(pivots):
            v[p] = -reduced[row, f]
        basis.append(v)
    return basis


def column_basis(m: np.ndarray) -> list[np.ndarray]:
    """Independent columns of m spanning its range."""
    _, pivots = rref(m)
    return [m[:, c].copy() for c in pivots]


def orthogonalize(vectors) -> list[np.ndarray]:
    """Gram-Schmidt without normalisation; dependent vectors are dropped."""
    out = []
    for v in vectors:
        w = v.copy()
        for u in out:
            w = w - u * (inner(u, w) / inner(u, u))
        if any(w):
            out.append(w)
    return out


def projector_from_orthogonal(basis, n: int) -> np.ndarray:
    """Sum of v v* / |v|^2; only the upper triangle is computed (P is Hermitian)."""
    acc = [[[Fraction(0), Fraction(0)] for _ in range(n)] for _ in range(n)]
    for v in basis:
        r = 1 / inner(v, v).re
        parts = [(z.re * r, z.im * r, z.re, z.im) for z in v]
        for i, (ar, ai, _, _) in enumerate(parts):
            if not (ar or ai):
                continue
            row = acc[i]
            for j in range(i, n):
                _, _, br, bi = parts[j]
                # a * conj(b)
                row[j][0] += ar * br + ai * bi
                row[j][1] += ai * br - ar * bi
    p = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(i, n):
            re, im = acc[i][j]
            p[i, j] = QQi(re, im)
            p[j, i] = QQi(re, -im)
    return p


def _squarefree_split(n: int) -> tuple[int, int]:
    """n = s*s*m with m squarefree; returns (s, m)."""
    s, m, d = 1, 1, 2
    while d * d <= n:
        while n % (d * d) == 0:
            n //= d * d
            s *= d
        if n % d == 0:
            n //= d
            m *= d
        d += 1
    return s, m * n


def sqrt_rational(r) -> tuple[Fraction, int]:
    """sqrt(r) = c * sqrt(m) with rational c and squarefree integer m."""
    r = Fraction(r)
    if r < 0:
        raise ValueError("square root of a negative rational")
    if r == 0:
        return Fraction(0), 1
    # sqrt(p/q) = sqrt(p*q)/q
    s, m = _squarefree_split(r.numerator * r.denominator)
    return Fraction(s, r.denominator), m


class SurdVector:
    """Exact vector ``sum_m sqrt(m) * terms[m]`` with squarefree keys."""

    def __init__(self, terms: dict, dim: int):
        self.dim = dim
        self.terms = {m: v for m, v in terms.items() if any(v)}

    @classmethod
    def scaled(cls, v: np.ndarray, square_factor) -> "SurdVector":
        """``sqrt(square_factor) * v``."""
        c, m = sqrt_rational(square_factor)
        return cls({m: v * QQi(c)}, len(v))

    def __add__(self, other: "SurdVector") -> "SurdVector":
        terms = dict(self.terms)
        for m, v in other.terms.items():
            terms[m] = terms[m] + v if m in terms else v
        return SurdVector(terms, self.dim)

    def __sub__(self, other: "SurdVector") -> "SurdVector":
        return self + SurdVector({m: -v for m, v in other.terms.items()}, other.dim)

    def apply(self, matrix: np.ndarray) -> "SurdVector":
        return SurdVector({m: matrix @ v for m, v in self.terms.items()}, matrix.shape[0])

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, SurdVector):
            return NotImplemented
        return (self - other).is_zero()

    def norm2(self) -> dict:
        """||self||^2 as ``{m: coefficient}`` meaning ``sum sqrt(m) * coefficient``."""
        out: dict[int, QQi] = {}
        for m1, v1 in self.terms.items():
            for m2, v2 in self.terms.items():
                ip = inner(v1, v2)
                if not ip:
                    continue
                s, m = _squarefree_split(m1 * m2)
                out[m] = out.get(m, QQi()) + ip * s
        return {m: c for m, c in out.items() if c}

    def norm2_rational(self) -> Fraction:
        """Squared norm, which must come out rational."""
        n2 = self.norm2()
        if set(n2) - {1}:
            raise ValueError("squared norm is irrational")
        value = n2.get(1, QQi())
        if value.im:
            raise ValueError("squared norm has an imaginary part")
        return value.re

    def to_complex(self) -> np.ndarray:
        out = np.zeros(self.dim, dtype=complex)
        for m, v in self.terms.items():
            out = out + to_complex(v) * np.sqrt(m)
        return out

    def __repr__(self):
        return "SurdVector(" + " + ".join(f"sqrt({m})*{list(v)}" for m, v in sorted(self.terms.items())) + ")"
