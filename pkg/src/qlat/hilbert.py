"""Subspaces and projectors of finite-dimensional complex inner-product spaces.

Two numeric modes share one API. Inputs made only of rationals (ints,
Fractions, :class:`~qlat.exact.QQi`) stay exact; anything else becomes
complex128 and comparisons use ``EPS``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Optional, Sequence

import numpy as np

from . import exact
from .exact import QQi
from .lattice import FiniteOrtholattice
from .report import ClosureExplosion, QlatInputError

EPS = 1e-9


def _is_rational_entry(x) -> bool:
    return isinstance(x, (QQi, Rational)) and not isinstance(x, bool)


def as_matrix(m) -> np.ndarray:
    """Exact object array when every entry is rational, else complex128."""
    if isinstance(m, np.ndarray) and m.dtype == object:
        return exact.qmatrix(m)
    arr = np.asarray(m, dtype=object)
    if arr.size and all(_is_rational_entry(x) for x in arr.flat):
        return exact.qmatrix(arr)
    return np.asarray(m, dtype=complex)


def _adj(m: np.ndarray) -> np.ndarray:
    return exact.adjoint(m) if exact.is_exact(m) else m.conj().T


def _identity_like(m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    return exact.identity(n) if exact.is_exact(m) else np.eye(n, dtype=complex)


def matrices_equal(a: np.ndarray, b: np.ndarray) -> bool:
    if a.shape != b.shape:
        return False
    if exact.is_exact(a) and exact.is_exact(b):
        return bool(np.all(a == b))
    return bool(np.allclose(exact.to_complex(a), exact.to_complex(b), atol=EPS, rtol=0))


def is_zero_matrix(m: np.ndarray) -> bool:
    if exact.is_exact(m):
        return not any(m.flat)
    return bool(np.all(np.abs(m) < EPS))


def is_projector(p: np.ndarray) -> bool:
    return p.ndim == 2 and p.shape[0] == p.shape[1] and matrices_equal(p @ p, p) and matrices_equal(_adj(p), p)


def _check_pair(pa: np.ndarray, pb: np.ndarray):
    if pa.shape != pb.shape:
        raise QlatInputError(f"dimension mismatch: {pa.shape} vs {pb.shape}")
    for p in (pa, pb):
        if not is_projector(p):
            raise QlatInputError("input is not an orthogonal projector")


def leq_projector(pa, pb) -> bool:
    """a below b: Pa Pb = Pb Pa = Pa."""
    pa, pb = as_matrix(pa), as_matrix(pb)
    _check_pair(pa, pb)
    return matrices_equal(pa @ pb, pa) and matrices_equal(pb @ pa, pa)


def ortho_projector(pa) -> np.ndarray:
    pa = as_matrix(pa)
    if not is_projector(pa):
        raise QlatInputError("input is not an orthogonal projector")
    return _identity_like(pa) - pa


class Subspace:
    """A subspace held as a basis plus its projector.

    In exact mode the basis is orthogonal but not normalised (normalising
    would leave Q(i)); the projector is still exact. In float mode the
    basis is orthonormal.
    """

    def __init__(self, dim: int, basis: Sequence[np.ndarray], exact_mode: bool):
        self.dim = dim
        self.exact = exact_mode
        if exact_mode:
            self.basis = exact.orthogonalize([exact.qvector(v) for v in basis])
            self.projector = exact.projector_from_orthogonal(self.basis, dim)
        else:
            self.basis = _float_orthonormal(basis) if len(basis) else []
            self.projector = sum((np.outer(v, v.conj()) for v in self.basis), np.zeros((dim, dim), dtype=complex))

    @classmethod
    def span(cls, vectors, dim: Optional[int] = None) -> "Subspace":
        vectors = [list(v) for v in vectors]
        if dim is None:
            if not vectors:
                raise QlatInputError("dimension needed for the span of no vectors")
            dim = len(vectors[0])
        if any(len(v) != dim for v in vectors):
            raise QlatInputError("vectors of mixed dimension")
        exact_mode = all(_is_rational_entry(x) for v in vectors for x in v)
        return cls(dim, vectors, exact_mode)

    @classmethod
    def from_projector(cls, p) -> "Subspace":
        p = as_matrix(p)
        if not is_projector(p):
            raise QlatInputError("input is not an orthogonal projector")
        return cls(p.shape[0], _range_basis(p), exact.is_exact(p))

    @classmethod
    def zero(cls, dim: int, exact_mode: bool = True) -> "Subspace":
        return cls(dim, [], exact_mode)

    @classmethod
    def full(cls, dim: int, exact_mode: bool = True) -> "Subspace":
        eye = np.eye(dim, dtype=int).tolist()
        return cls(dim, eye if exact_mode else [np.array(r, dtype=complex) for r in eye], exact_mode)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def key(self):
        """Hashable identity for exact subspaces (the projector entries)."""
        if not self.exact:
            raise TypeError("float subspaces are compared with a tolerance")
        return tuple(self.projector.flat)

    def same_as(self, other: "Subspace") -> bool:
        return self.dim == other.dim and matrices_equal(self.projector, other.projector)

    def __le__(self, other: "Subspace") -> bool:
        return leq_projector(self.projector, other.projector)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, rank={self.rank}, exact={self.exact})"


def _float_orthonormal(vectors) -> list[np.ndarray]:
    m = np.column_stack([np.asarray(v, dtype=complex) for v in vectors])
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    return [u[:, i] for i in range(len(s)) if s[i] > EPS]


def _range_basis(p: np.ndarray) -> list[np.ndarray]:
    if exact.is_exact(p):
        return exact.column_basis(p)
    return _float_orthonormal([p[:, i] for i in range(p.shape[1])]) if not is_zero_matrix(p) else []


def _null_basis(m: np.ndarray) -> list[np.ndarray]:
    if exact.is_exact(m):
        return exact.nullspace(m)
    _, s, vh = np.linalg.svd(m)
    rank = int(np.sum(s > EPS))
    return [vh[i].conj() for i in range(rank, vh.shape[0])]


def _same_space(s1: Subspace, s2: Subspace):
    if s1.dim != s2.dim:
        raise QlatInputError(f"dimension mismatch: {s1.dim} vs {s2.dim}")


def _mode_pair(s1: Subspace, s2: Subspace) -> tuple[np.ndarray, np.ndarray, bool]:
    if s1.exact and s2.exact:
        return s1.projector, s2.projector, True
    return exact.to_complex(s1.projector), exact.to_complex(s2.projector), False


def ortho_subspace(s: Subspace) -> Subspace:
    return Subspace(s.dim, _null_basis(s.projector), s.exact) if s.rank else Subspace.full(s.dim, s.exact)


def meet_subspace(s1: Subspace, s2: Subspace) -> Subspace:
    """Intersection: common kernel of (I - P1) and (I - P2)."""
    _same_space(s1, s2)
    p1, p2, ex = _mode_pair(s1, s2)
    eye = _identity_like(p1)
    return Subspace(s1.dim, _null_basis(np.vstack([eye - p1, eye - p2])), ex)


def join_subspace(s1: Subspace, s2: Subspace) -> Subspace:
    """Span closure of the union of the two ranges."""
    _same_space(s1, s2)
    p1, p2, ex = _mode_pair(s1, s2)
    both = np.hstack([p1, p2])
    if is_zero_matrix(both):
        return Subspace.zero(s1.dim, ex)
    return Subspace(s1.dim, _range_basis(both), ex)


def generate_subspace_lattice(
    seeds: Sequence[Subspace],
    max_elements: int = 256,
    labels: Optional[Sequence[str]] = None,
) -> FiniteOrtholattice:
    """Close seeds plus 0 and the full space under meet, join and ortho.

    Insertion order is deterministic; the returned lattice carries the
    subspaces as ``payload`` and is ordered by :func:`leq_projector`.
    """
    if not seeds:
        raise QlatInputError("at least one seed subspace is required")
    dim = seeds[0].dim
    if any(s.dim != dim for s in seeds):
        raise QlatInputError("seeds must share one ambient dimension")
    if dim > 8:
        raise QlatInputError("ambient dimension is capped at 8")
    for s in seeds:
        if not is_projector(s.projector):
            raise QlatInputError("degenerate seed: not a projector")
    ex = all(s.exact for s in seeds)
    if not ex:
        seeds = [s if not s.exact else Subspace(dim, [exact.to_complex(v) for v in s.basis], False) for s in seeds]
    names = list(labels) if labels is not None else [f"s{i}" for i in range(len(seeds))]
    members: list[Subspace] = []
    member_labels: list[str] = []
    index: dict = {}

    def add(s: Subspace, label: Optional[str] = None) -> bool:
        if ex:
            k = s.key()
            if k in index:
                return False
            index[k] = len(members)
        elif any(s.same_as(m) for m in members):
            return False
        members.append(s)
        member_labels.append(label if label is not None else f"x{len(members) - 1}")
        if len(members) > max_elements:
            raise ClosureExplosion(f"subspace closure exceeds {max_elements} elements")
        return True

    add(Subspace.zero(dim, ex), "0")
    add(Subspace.full(dim, ex), "1")
    for s, name in zip(seeds, names):
        add(s, name)
    done = 0
    while done < len(members):
        # process members[done] against everything before it
        s = members[done]
        add(ortho_subspace(s))
        for t in members[: done + 1]:
            add(meet_subspace(s, t))
            add(join_subspace(s, t))
        done += 1
    n = len(members)
    projs = [m.projector for m in members]
    leq = [[_incl(projs[a], projs[b]) for b in range(n)] for a in range(n)]
    ortho = []
    for m in members:
        o = ortho_subspace(m)
        ortho.append(next(i for i, x in enumerate(members) if x.same_as(o)))
    return FiniteOrtholattice(member_labels, leq, ortho, payload=members)


def _incl(pa: np.ndarray, pb: np.ndarray) -> bool:
    return matrices_equal(pa @ pb, pa)


def tensor(a, b) -> np.ndarray:
    """Kronecker product."""
    a, b = as_matrix(a), as_matrix(b)
    if exact.is_exact(a) != exact.is_exact(b):
        a, b = exact.to_complex(a), exact.to_complex(b)
    return np.kron(a, b)


def born_probability(p, psi):
    """||P psi||^2 for a unit vector psi (exact Fraction in exact mode)."""
    p = as_matrix(p)
    psi = as_matrix(psi)
    if exact.is_exact(p) and exact.is_exact(psi):
        n2 = exact.inner(psi, psi)
        if n2 != 1:
            raise QlatInputError(f"state vector not normalised (norm^2 = {n2})")
        v = p @ psi
        return exact.inner(v, v).re
    p, psi = exact.to_complex(p), exact.to_complex(psi)
    if abs(np.vdot(psi, psi).real - 1) > EPS:
        raise QlatInputError("state vector not normalised")
    v = p @ psi
    return float(np.vdot(v, v).real)


def born_ratio(p, psi):
    """||P psi||^2 / ||psi||^2; accepts unnormalised vectors."""
    p, psi = as_matrix(p), as_matrix(psi)
    if exact.is_exact(p) and exact.is_exact(psi):
        n2 = exact.inner(psi, psi).re
        v = p @ psi
        return exact.inner(v, v).re / n2
    p, psi = exact.to_complex(p), exact.to_complex(psi)
    v = p @ psi
    return float(np.vdot(v, v).real / np.vdot(psi, psi).real)


def _is_one(x) -> bool:
    return x == 1 if isinstance(x, Fraction) else abs(x - 1) < EPS


def _is_nought(x) -> bool:
    return x == 0 if isinstance(x, Fraction) else abs(x) < EPS


def sample_sps(
    directions: Sequence,
    properties: Sequence[Subspace],
    state_labels: Optional[Sequence[str]] = None,
    property_labels: Optional[Sequence[str]] = None,
    close: bool = False,
):
    """State-property system sampled from vectors and subspaces.

    A property is actual in a state when the Born probability is 1 and
    certainly absent when it is 0; states are orthogonal when their inner
    product vanishes. Directions need not be normalised. The property set is
    the given subspaces plus 0 and the full space, ordered by inclusion; with
    ``close`` it is first closed under meet, join and ortho.
    """
    from .sps import StatePropertySystem

    vecs = [as_matrix(list(d)) for d in directions]
    if not vecs:
        raise QlatInputError("at least one direction is required")
    dim = len(vecs[0])
    if any(len(v) != dim for v in vecs) or any(p.dim != dim for p in properties):
        raise QlatInputError("directions and properties must share one dimension")
    ex = all(exact.is_exact(v) for v in vecs) and all(p.exact for p in properties)
    if not ex:
        vecs = [exact.to_complex(v) for v in vecs]
    m = len(vecs)
    slabels = list(state_labels) if state_labels is not None else [f"p{i}" for i in range(m)]
    plabels = list(property_labels) if property_labels is not None else [f"a{i}" for i in range(len(properties))]

    if close and properties:
        lattice = generate_subspace_lattice(properties, labels=plabels)
        subspaces = list(lattice.payload)
    else:
        subspaces, names = [], []
        for s, name in [(Subspace.zero(dim, ex), "0"), (Subspace.full(dim, ex), "1"), *zip(properties, plabels)]:
            if any(s.same_as(t) for t in subspaces):
                continue
            subspaces.append(s)
            names.append(name)
        n = len(subspaces)
        leq = [[_incl(subspaces[a].projector, subspaces[b].projector) for b in range(n)] for a in range(n)]
        ortho = []
        for s in subspaces:
            o = ortho_subspace(s)
            hit = next((i for i, t in enumerate(subspaces) if t.same_as(o)), None)
            if hit is None:
                ortho = None
                break
            ortho.append(hit)
        lattice = FiniteOrtholattice(names, leq, ortho, payload=subspaces)

    actual, certain_no = [], []
    for s in subspaces:
        yes = no = 0
        for i, v in enumerate(vecs):
            prob = born_ratio(s.projector, v)
            if _is_one(prob):
                yes |= 1 << i
            elif _is_nought(prob):
                no |= 1 << i
        actual.append(yes)
        certain_no.append(no)
    state_ortho = [0] * m
    for i in range(m):
        for j in range(m):
            if i != j:
                ip = exact.inner(vecs[i], vecs[j]) if ex else np.vdot(vecs[i], vecs[j])
                if (not ip) if ex else abs(ip) < EPS:
                    state_ortho[i] |= 1 << j
    return StatePropertySystem(slabels, lattice, actual, state_ortho, certain_no)
