"""Joint measurements of two commuting yes-no tests, and spin correlations.

The EPR-style construction picks phi in the range of P1(I-P2) and chi in
the range of (I-P1)P2, forms psi = (phi + chi)/sqrt(2) and shows that the
outcome pairs (x1, y1) and (x2, y2) get probability zero although each test
alone has both outcomes possible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import exact
from .exact import SurdVector
from .hilbert import EPS, as_matrix, is_projector, is_zero_matrix, matrices_equal, tensor
from .report import DemoNotApplicable, QlatInputError

OUTCOMES = (("x1", "y1"), ("x1", "y2"), ("x2", "y1"), ("x2", "y2"))


@dataclass(frozen=True)
class JointMeasurement:
    """Projectors P1 (outcomes I1 of M1) and P2 (outcomes I2 of M2) on one space."""

    p1: np.ndarray
    p2: np.ndarray

    def __post_init__(self):
        p1, p2 = as_matrix(self.p1), as_matrix(self.p2)
        if exact.is_exact(p1) != exact.is_exact(p2):
            p1, p2 = exact.to_complex(p1), exact.to_complex(p2)
        if p1.shape != p2.shape:
            raise QlatInputError(f"dimension mismatch: {p1.shape} vs {p2.shape}")
        for p in (p1, p2):
            if not is_projector(p):
                raise QlatInputError("joint measurement needs orthogonal projectors")
        if not matrices_equal(p1 @ p2, p2 @ p1):
            raise QlatInputError("the two projectors do not commute")
        object.__setattr__(self, "p1", p1)
        object.__setattr__(self, "p2", p2)

    @classmethod
    def from_tensor(cls, p, q) -> "JointMeasurement":
        """P1 = P (x) I and P2 = I (x) Q."""
        p, q = as_matrix(p), as_matrix(q)
        eye_p = exact.identity(p.shape[0]) if exact.is_exact(p) else np.eye(p.shape[0])
        eye_q = exact.identity(q.shape[0]) if exact.is_exact(q) else np.eye(q.shape[0])
        return cls(tensor(p, eye_q), tensor(eye_p, q))

    @property
    def dim(self) -> int:
        return self.p1.shape[0]

    @property
    def exact(self) -> bool:
        return exact.is_exact(self.p1)

    def identity(self) -> np.ndarray:
        return exact.identity(self.dim) if self.exact else np.eye(self.dim, dtype=complex)

    def joint_projectors(self) -> dict:
        """Spectral projectors of the combined measurement for the four outcome blocks."""
        eye = self.identity()
        q1, q2 = eye - self.p1, eye - self.p2
        return {
            ("x1", "y1"): self.p1 @ self.p2,
            ("x1", "y2"): self.p1 @ q2,
            ("x2", "y1"): q1 @ self.p2,
            ("x2", "y2"): q1 @ q2,
        }


@dataclass
class DemoReport:
    probabilities: dict
    marginals: dict
    identities: dict
    phi: object
    chi: object
    psi: object
    exact: bool
    verdict: str = ""
    separate: bool = False
    notes: list = field(default_factory=list)


def _first_range_vector(r: np.ndarray) -> Optional[np.ndarray]:
    for k in range(r.shape[1]):
        col = r[:, k]
        if (any(col) if exact.is_exact(r) else np.linalg.norm(col) > EPS):
            return col.copy()
    return None


def epr_contradiction_demo(J: JointMeasurement) -> DemoReport:
    eye = J.identity()
    for name, p in (("P1", J.p1), ("P2", J.p2)):
        if is_zero_matrix(p) or is_zero_matrix(eye - p):
            raise DemoNotApplicable(f"{name} is 0 or I: the measurement has a single outcome")
    blocks = J.joint_projectors()
    f = _first_range_vector(blocks[("x1", "y2")])
    c = _first_range_vector(blocks[("x2", "y1")])
    if f is None or c is None:
        raise DemoNotApplicable("P1(I-P2) or (I-P1)P2 has zero range")
    if J.exact:
        return _exact_demo(J, blocks, f, c)
    return _float_demo(J, blocks, f, c)


def _exact_demo(J, blocks, f, c) -> DemoReport:
    eye = J.identity()
    # phi = f/|f|, chi = c/|c|, psi = phi/sqrt2 + chi/sqrt2; radicals tracked exactly
    nf, nc = exact.inner(f, f).re, exact.inner(c, c).re
    phi = SurdVector.scaled(f, 1 / nf)
    chi = SurdVector.scaled(c, 1 / nc)
    psi = SurdVector.scaled(f, Fraction(1, 2) / nf) + SurdVector.scaled(c, Fraction(1, 2) / nc)
    half_phi = SurdVector.scaled(f, Fraction(1, 2) / nf)
    half_chi = SurdVector.scaled(c, Fraction(1, 2) / nc)
    zero = SurdVector({}, J.dim)
    images = {
        "P1 psi = phi/sqrt2": psi.apply(J.p1) == half_phi,
        "(I-P1) psi = chi/sqrt2": psi.apply(eye - J.p1) == half_chi,
        "P2 psi = chi/sqrt2": psi.apply(J.p2) == half_chi,
        "(I-P2) psi = phi/sqrt2": psi.apply(eye - J.p2) == half_phi,
        "P1(I-P2) psi = phi/sqrt2": psi.apply(blocks[("x1", "y2")]) == half_phi,
        "(I-P1)P2 psi = chi/sqrt2": psi.apply(blocks[("x2", "y1")]) == half_chi,
        "P1 P2 psi = 0": psi.apply(blocks[("x1", "y1")]) == zero,
        "(I-P1)(I-P2) psi = 0": psi.apply(blocks[("x2", "y2")]) == zero,
    }
    probs = {k: psi.apply(p).norm2_rational() for k, p in blocks.items()}
    marg = {
        "x1": psi.apply(J.p1).norm2_rational(),
        "x2": psi.apply(eye - J.p1).norm2_rational(),
        "y1": psi.apply(J.p2).norm2_rational(),
        "y2": psi.apply(eye - J.p2).norm2_rational(),
    }
    return _finish(DemoReport(probs, marg, images, phi, chi, psi, True))


def _float_demo(J, blocks, f, c) -> DemoReport:
    eye = J.identity()
    phi = f / np.linalg.norm(f)
    chi = c / np.linalg.norm(c)
    psi = (phi + chi) / math.sqrt(2)

    def close(u, v):
        return bool(np.allclose(u, v, atol=EPS, rtol=0))

    images = {
        "P1 psi = phi/sqrt2": close(J.p1 @ psi, phi / math.sqrt(2)),
        "(I-P1) psi = chi/sqrt2": close((eye - J.p1) @ psi, chi / math.sqrt(2)),
        "P2 psi = chi/sqrt2": close(J.p2 @ psi, chi / math.sqrt(2)),
        "(I-P2) psi = phi/sqrt2": close((eye - J.p2) @ psi, phi / math.sqrt(2)),
        "P1(I-P2) psi = phi/sqrt2": close(blocks[("x1", "y2")] @ psi, phi / math.sqrt(2)),
        "(I-P1)P2 psi = chi/sqrt2": close(blocks[("x2", "y1")] @ psi, chi / math.sqrt(2)),
        "P1 P2 psi = 0": close(blocks[("x1", "y1")] @ psi, 0 * psi),
        "(I-P1)(I-P2) psi = 0": close(blocks[("x2", "y2")] @ psi, 0 * psi),
    }

    def prob(p):
        v = p @ psi
        return float(np.vdot(v, v).real)

    probs = {k: prob(p) for k, p in blocks.items()}
    marg = {"x1": prob(J.p1), "x2": prob(eye - J.p1), "y1": prob(J.p2), "y2": prob(eye - J.p2)}
    return _finish(DemoReport(probs, marg, images, phi, chi, psi, False))


def _finish(rep: DemoReport) -> DemoReport:
    def possible(x):
        return x > EPS if not isinstance(x, Fraction) else x > 0

    single = all(possible(rep.marginals[k]) for k in ("x1", "x2", "y1", "y2"))
    joint_missing = [k for k in OUTCOMES if not possible(rep.probabilities[k])]
    rep.separate = not (single and joint_missing)
    if single and joint_missing:
        missing = ", ".join(f"({a},{b})" for a, b in joint_missing)
        rep.verdict = (
            f"M1 and M2 each have both outcomes possible, yet {missing} never occur jointly: "
            "M1 and M2 are not separate measurements"
        )
    else:
        rep.verdict = "no contradiction exhibited"
    return rep


# spin correlations

def spin_projector(theta: float) -> np.ndarray:
    """Projector on spin-up along angle theta in the x-z plane."""
    v = np.array([math.cos(theta / 2), math.sin(theta / 2)], dtype=complex)
    return np.outer(v, v.conj())


SINGLET = np.array([0, 1, -1, 0], dtype=complex) / math.sqrt(2)


def correlation(state: Sequence[complex], theta_a: float, theta_b: float) -> float:
    """Expectation of the product of +-1 outcomes, from the four joint Born probabilities."""
    psi = np.asarray(state, dtype=complex)
    if abs(np.vdot(psi, psi).real - 1) > EPS:
        raise QlatInputError("state vector not normalised")
    eye = np.eye(2)
    pa, pb = spin_projector(theta_a), spin_projector(theta_b)
    total = 0.0
    for sa, qa in ((1, pa), (-1, eye - pa)):
        for sb, qb in ((1, pb), (-1, eye - pb)):
            v = np.kron(qa, qb) @ psi
            total += sa * sb * float(np.vdot(v, v).real)
    return total


def singlet_correlation(theta_a: float, theta_b: float) -> float:
    return correlation(SINGLET, theta_a, theta_b)


def chsh_value(state: Sequence[complex], angles: Sequence[float]) -> float:
    """S = E(a,b) - E(a,b') + E(a',b) + E(a',b') for angles (a, a', b, b')."""
    a, a2, b, b2 = angles
    return (
        correlation(state, a, b)
        - correlation(state, a, b2)
        + correlation(state, a2, b)
        + correlation(state, a2, b2)
    )
