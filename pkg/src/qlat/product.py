"""Separated product of two finite state-property systems.

States are pairs (p, q). Properties are generated by joint separate tests:
rectangles A x B (both tests say yes) and crosses (A x S2) u (S1 x B) (at
least one says yes). The family is closed under intersection and under the
orthogonal-set map F -> {s : s orthogonal to every f in F} until nothing
new appears. Pair orthogonality: (p,q) _|_ (p',q') iff p _|_ p' or q _|_ q'.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .axioms import detect_ssr, full_report
from .lattice import FiniteOrtholattice, atoms, bits, max_elements, popcount
from .report import AxiomReport, ClosureExplosion, QlatInputError
from .sps import StatePropertySystem, property_orthogonal

MAX_PRODUCT_STATES = 64


@dataclass(frozen=True)
class SeparatedProductSystem:
    left: StatePropertySystem
    right: StatePropertySystem
    members: tuple  # closed state sets as bitsets, sorted by (size, value)
    system: StatePropertySystem

    @property
    def lattice(self) -> FiniteOrtholattice:
        return self.system.lattice

    @property
    def states(self) -> tuple:
        return self.system.states

    def state_index(self, p: Union[int, str], q: Union[int, str]) -> int:
        if isinstance(p, str):
            p = self.left.state_index(p)
        if isinstance(q, str):
            q = self.right.state_index(q)
        if not (0 <= p < len(self.left.states) and 0 <= q < len(self.right.states)):
            raise QlatInputError(f"unknown product state ({p}, {q})")
        return p * len(self.right.states) + q

    def rectangle(self, a_set: int, b_set: int) -> int:
        return _rectangle(a_set, b_set, len(self.left.states), len(self.right.states))

    def cross(self, a_set: int, b_set: int) -> int:
        return _cross(a_set, b_set, len(self.left.states), len(self.right.states))

    def member_index(self, state_set: int) -> int:
        try:
            return self.members.index(state_set)
        except ValueError:
            raise QlatInputError("state set is not a property of the product") from None


def _rectangle(a: int, b: int, n1: int, n2: int) -> int:
    out = 0
    for p in bits(a):
        out |= b << (p * n2)
    return out


def _cross(a: int, b: int, n1: int, n2: int) -> int:
    return _rectangle(a, (1 << n2) - 1, n1, n2) | _rectangle((1 << n1) - 1, b, n1, n2)


def _pair_ortho(S1: StatePropertySystem, S2: StatePropertySystem) -> list[int]:
    n1, n2 = len(S1.states), len(S2.states)
    rows = []
    for p in range(n1):
        for q in range(n2):
            rows.append(_cross(S1.state_ortho[p], S2.state_ortho[q], n1, n2))
    return rows


def build_separated_product(
    S1: StatePropertySystem,
    S2: StatePropertySystem,
    extended: bool = False,
    cap: Optional[int] = None,
) -> SeparatedProductSystem:
    """Generate the closed family and the induced state-property system.

    With ``extended`` the certain-no sets of the factor tests also seed
    rectangles and crosses (inverse product tests).
    """
    n1, n2 = len(S1.states), len(S2.states)
    n = n1 * n2
    if n > MAX_PRODUCT_STATES:
        raise QlatInputError(f"{n} product states exceed the limit of {MAX_PRODUCT_STATES}")
    for name, S in (("left", S1), ("right", S2)):
        if S.lattice.bottom is None or S.lattice.top is None:
            raise QlatInputError(f"{name} factor lacks a bottom or top property")
    cap = min(cap or max_elements(), 1 << n)
    full = (1 << n) - 1
    orth = _pair_ortho(S1, S2)

    def perp(f: int) -> int:
        out = full
        for s in bits(f):
            out &= orth[s]
        return out

    sets1 = sorted(set(S1.actual) | (set(S1.certain_no) if extended else set()))
    sets2 = sorted(set(S2.actual) | (set(S2.certain_no) if extended else set()))
    generators = []
    for a in sets1:
        for b in sets2:
            generators.append(_rectangle(a, b, n1, n2))
            generators.append(_cross(a, b, n1, n2))

    family = {full, 0}

    def absorb(g: int):
        if g in family:
            return
        family.update({g & f for f in list(family)})
        if len(family) > cap:
            raise ClosureExplosion(f"separated product family exceeds {cap} members")

    for g in generators:
        absorb(g)
    while True:
        extra = sorted({perp(f) for f in family} - family)
        if not extra:
            break
        for g in extra:
            absorb(g)

    members = tuple(sorted(family, key=lambda m: (popcount(m), m)))
    labels = [f"({S1.states[i // n2]},{S2.states[i % n2]})" for i in range(n)]
    index = {m: k for k, m in enumerate(members)}
    ortho = [index[perp(m)] for m in members]
    lattice = FiniteOrtholattice.from_sets([_set_label(m, labels, full) for m in members], members, ortho, payload=members)
    certain_no = [perp(m) for m in members]
    system = StatePropertySystem(labels, lattice, list(members), orth, certain_no)
    return SeparatedProductSystem(S1, S2, members, system)


def _set_label(mask: int, labels, full: int) -> str:
    if mask == 0:
        return "0"
    if mask == full:
        return "1"
    return "{" + " ".join(labels[i] for i in bits(mask)) + "}"


@dataclass(frozen=True)
class Plane:
    """Join of two atoms of the product lattice."""

    state_set: int
    states: tuple
    cardinality: int
    atoms_below: int
    orthogonal: bool

    @property
    def two_point(self) -> bool:
        return self.atoms_below == 2


def join_of_product_atoms(SP: SeparatedProductSystem, s1: tuple, s2: tuple) -> Plane:
    """Lattice join of the atoms at product states ``s1 = (p1, q1)`` and ``s2 = (p2, q2)``."""
    i, j = SP.state_index(*s1), SP.state_index(*s2)
    L = SP.lattice
    k = L.join(_atom_at(SP, i), _atom_at(SP, j))
    mask = SP.members[k]
    ats = [a for a in atoms(L) if L.leq(a, k)]
    S = SP.system
    orth = bool(S.state_ortho[i] >> j & 1)
    return Plane(mask, S.state_set_labels(mask), popcount(mask), len(ats), orth)


def _atom_at(SP: SeparatedProductSystem, s: int) -> int:
    # smallest member containing the state
    best = None
    for k, m in enumerate(SP.members):
        if m >> s & 1 and (best is None or popcount(m) < popcount(SP.members[best])):
            best = k
    return best


def three_points_per_line_check(target: Union[FiniteOrtholattice, StatePropertySystem, SeparatedProductSystem]) -> AxiomReport:
    """Every join of two non-orthogonal atoms must hold a third atom.

    Orthogonal atom pairs spanning only two points are listed in the note but
    do not fail the check.
    """
    if isinstance(target, SeparatedProductSystem):
        target = target.system
    S = target if isinstance(target, StatePropertySystem) else None
    L = S.lattice if S is not None else target

    def orthogonal(a, b):
        return property_orthogonal(S, a, b) if S is not None else L.orthogonal(a, b)

    ats = atoms(L)
    atom_mask = sum(1 << a for a in ats)
    bad, benign = [], 0
    for x, a in enumerate(ats):
        for b in ats[x + 1:]:
            j = L.join(a, b)
            if popcount(L.down[j] & atom_mask) == 2:
                if orthogonal(a, b):
                    benign += 1
                else:
                    bad.append((a, b))
    note = f"{len(bad)} non-orthogonal and {benign} orthogonal two-point planes"
    if bad:
        return AxiomReport(
            "three-points-per-line", "fail",
            witness=tuple(L.labels[i] for i in bad[0]), witness_indices=bad[0], clause="two-point-plane",
            note=note, all_witnesses=tuple(tuple(L.labels[i] for i in p) for p in bad),
        )
    return AxiomReport.ok("three-points-per-line", note=note)


def nonorthogonal_ssr_report(S: StatePropertySystem) -> AxiomReport:
    """Fails with the first pair of distinct atoms separated by a superselection
    rule that are not orthogonal."""
    L = S.lattice
    ats = atoms(L)
    bad = []
    for x, a in enumerate(ats):
        for b in ats[x + 1:]:
            if detect_ssr(S, a, b) and not property_orthogonal(S, a, b):
                bad.append((a, b))
    if bad:
        return AxiomReport(
            "ssr", "fail", witness=tuple(L.labels[i] for i in bad[0]), witness_indices=bad[0],
            clause="nonorthogonal-ssr-atoms", note=f"{len(bad)} such atom pairs",
            all_witnesses=tuple(tuple(L.labels[i] for i in p) for p in bad),
        )
    return AxiomReport.ok("ssr", note="every ssr-separated atom pair is orthogonal")


def separated_axiom_report(SP: SeparatedProductSystem) -> list[AxiomReport]:
    """Axioms 1-6 on the product, then the ssr diagnostic and the three-points check."""
    reports = full_report(SP.system)
    reports.append(nonorthogonal_ssr_report(SP.system))
    reports.append(three_points_per_line_check(SP.system))
    return reports
