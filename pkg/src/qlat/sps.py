"""Finite state-property systems: actuality, orthogonality, property states.

A property is encoded by its yes-no test as the pair (certain-yes states,
certain-no states); the remaining states are indeterminate. Actuality is
membership in the certain-yes set. All state sets are bitsets over the
state indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .lattice import FiniteOrtholattice, atoms, bits
from .report import AxiomReport, QlatInputError


@dataclass(frozen=True)
class YesNo:
    """Certain-yes and certain-no state sets of a yes-no test."""

    yes: int
    no: int

    def __post_init__(self):
        if self.yes & self.no:
            raise QlatInputError("a state cannot be both certain-yes and certain-no")

    def inverse(self) -> "YesNo":
        return YesNo(self.no, self.yes)

    @staticmethod
    def product(*tests: "YesNo") -> "YesNo":
        """Disjunction experiment: pick any component freely.

        Yes is certain only if every component gives yes with certainty, and
        likewise for no; otherwise the outcome depends on the choice.
        """
        if not tests:
            raise QlatInputError("product test needs at least one component")
        yes, no = tests[0].yes, tests[0].no
        for t in tests[1:]:
            yes &= t.yes
            no &= t.no
        return YesNo(yes, no)


class StatePropertySystem:
    """States, a property lattice, actuality and state orthogonality.

    ``actual[a]`` and ``certain_no[a]`` are state bitsets for property index
    ``a``; ``state_ortho[p]`` is the bitset of states orthogonal to ``p``.
    Validation happens here and inconsistent input is rejected.
    """

    def __init__(
        self,
        states: Sequence[str],
        lattice: FiniteOrtholattice,
        actual: Sequence[int],
        state_ortho: Optional[Sequence[int]] = None,
        certain_no: Optional[Sequence[int]] = None,
    ):
        m = len(states)
        if m == 0:
            raise QlatInputError("a state-property system needs at least one state")
        if len(set(states)) != m:
            raise QlatInputError("duplicate state labels")
        n = lattice.size
        if len(actual) != n:
            raise QlatInputError(f"actuality needs one state set per property ({n})")
        full = (1 << m) - 1
        if any(x & ~full for x in actual):
            raise QlatInputError("actuality references an unknown state")
        self.states = tuple(str(s) for s in states)
        self.lattice = lattice
        self.actual = tuple(actual)
        self.full = full

        if lattice.top is None or lattice.bottom is None:
            raise QlatInputError("property lattice needs a bottom and a top")
        if actual[lattice.top] != full:
            p = next(bits(full & ~actual[lattice.top]))
            raise QlatInputError(f"top property must be actual in every state (not in {self.states[p]!r})")
        if actual[lattice.bottom]:
            p = next(bits(actual[lattice.bottom]))
            raise QlatInputError(f"bottom property is actual in {self.states[p]!r}")
        for a in lattice.elements():
            for b in bits(lattice.up[a]):
                if actual[a] & ~actual[b]:
                    p = next(bits(actual[a] & ~actual[b]))
                    raise QlatInputError(
                        f"actuality not upward closed: {lattice.labels[a]} <= {lattice.labels[b]} "
                        f"but only the former is actual in {self.states[p]!r}"
                    )

        if state_ortho is None:
            state_ortho = _ortho_from_tests(m, actual, certain_no) if certain_no is not None else [0] * m
        if len(state_ortho) != m:
            raise QlatInputError("state orthogonality needs one row per state")
        for p in range(m):
            if state_ortho[p] >> p & 1:
                raise QlatInputError(f"state {self.states[p]!r} is orthogonal to itself")
            for q in bits(state_ortho[p]):
                if q >= m or not state_ortho[q] >> p & 1:
                    raise QlatInputError("state orthogonality must be symmetric")
        self.state_ortho = tuple(state_ortho)

        if certain_no is None:
            certain_no = [self.orthogonal_states(actual[a]) for a in lattice.elements()]
        if len(certain_no) != n:
            raise QlatInputError("certain-no sets need one entry per property")
        for a in lattice.elements():
            if certain_no[a] & actual[a]:
                raise QlatInputError(f"property {lattice.labels[a]!r} is both certain-yes and certain-no somewhere")
        self.certain_no = tuple(certain_no)

    @classmethod
    def from_actuality_sets(
        cls,
        states: Sequence[str],
        properties: Mapping[str, Iterable[str]],
        state_ortho: Optional[Iterable[tuple[str, str]]] = None,
        certain_no: Optional[Mapping[str, Iterable[str]]] = None,
        ortho: Optional[Mapping[str, str]] = None,
    ) -> "StatePropertySystem":
        """Order properties by inclusion of their actuality sets.

        A bottom ``"0"`` (never actual) and top ``"1"`` (always actual) are added
        when no listed property plays that role.
        """
        index = {s: i for i, s in enumerate(states)}

        def mask(names) -> int:
            out = 0
            for s in names:
                if s not in index:
                    raise QlatInputError(f"unknown state {s!r}")
                out |= 1 << index[s]
            return out

        labels = list(properties)
        sets = [mask(properties[k]) for k in labels]
        full = (1 << len(states)) - 1
        nos = None
        if certain_no is not None:
            nos = [mask(certain_no.get(k, ())) for k in labels]
        if 0 not in sets:
            labels.append("0")
            sets.append(0)
            if nos is not None:
                nos.append(full)
        if full not in sets:
            labels.append("1")
            sets.append(full)
            if nos is not None:
                nos.append(0)
        if len(set(sets)) != len(sets):
            seen = {}
            for k, s in zip(labels, sets):
                if s in seen:
                    raise QlatInputError(f"properties {seen[s]!r} and {k!r} have the same actuality set")
                seen[s] = k
        omap = None
        if ortho is not None:
            pos = {k: i for i, k in enumerate(labels)}
            full_map = dict(ortho)
            full_map.setdefault(labels[sets.index(0)], labels[sets.index(full)])
            full_map.setdefault(labels[sets.index(full)], labels[sets.index(0)])
            for k, v in list(full_map.items()):
                full_map.setdefault(v, k)
            if set(full_map) >= set(labels):
                omap = [pos[full_map[k]] for k in labels]
        lattice = FiniteOrtholattice.from_sets(labels, sets, ortho=omap, payload=sets)
        rows = None
        if state_ortho is not None:
            rows = [0] * len(states)
            for p, q in state_ortho:
                i, j = mask([p]), mask([q])
                rows[index[p]] |= j
                rows[index[q]] |= i
        return cls(states, lattice, sets, rows, nos)

    # basic queries

    def state_index(self, label: str) -> int:
        try:
            return self.states.index(label)
        except ValueError:
            raise QlatInputError(f"unknown state {label!r}") from None

    def prop(self, label: str) -> int:
        return self.lattice.index(label)

    def is_actual(self, p: int, a: int) -> bool:
        return bool(self.actual[a] >> p & 1)

    def indeterminate(self, a: int) -> int:
        return self.full & ~(self.actual[a] | self.certain_no[a])

    def orthogonal_states(self, states_mask: int) -> int:
        """States orthogonal to every state in ``states_mask``."""
        out = self.full
        for q in bits(states_mask):
            out &= self.state_ortho[q]
        return out

    def state_set_labels(self, mask: int) -> tuple[str, ...]:
        return tuple(self.states[i] for i in bits(mask))

    def __repr__(self) -> str:
        return f"StatePropertySystem(states={len(self.states)}, properties={self.lattice.size})"


def _ortho_from_tests(m: int, actual, certain_no) -> list[int]:
    # p and q are orthogonal when some test is certain-yes on one and certain-no on the other
    rows = [0] * m
    for yes, no in zip(actual, certain_no):
        for p in bits(yes):
            rows[p] |= no
        for q in bits(no):
            rows[q] |= yes
    return rows


def cartan(S: StatePropertySystem, p: int) -> frozenset[int]:
    """Indices of the properties actual in state ``p``."""
    return frozenset(a for a in S.lattice.elements() if S.actual[a] >> p & 1)


def property_state(S: StatePropertySystem, p: int) -> int:
    """Meet of all properties actual in ``p``."""
    return S.lattice.meet_all(sorted(cartan(S, p)))


def check_state_determination(S: StatePropertySystem) -> AxiomReport:
    seen: dict[frozenset, int] = {}
    for p in range(len(S.states)):
        key = cartan(S, p)
        if key in seen:
            q = seen[key]
            return AxiomReport(
                "state-determination", "fail",
                witness=(S.states[q], S.states[p]), witness_indices=(q, p), clause="same-cartan-set",
            )
        seen[key] = p
    return AxiomReport.ok("state-determination")


def check_atomicity(S: StatePropertySystem) -> AxiomReport:
    """Property states are atoms, and every atom is some state's property state."""
    L = S.lattice
    ats = set(atoms(L))
    reached = set()
    for p in range(len(S.states)):
        ps = L.infimum(sorted(cartan(S, p)))
        if ps is None or ps not in ats:
            return AxiomReport(
                "atomicity", "fail",
                witness=(S.states[p],), witness_indices=(p,), clause="property-state-not-atom",
            )
        reached.add(ps)
    for a in sorted(ats - reached):
        return AxiomReport(
            "atomicity", "fail", witness=(L.labels[a],), witness_indices=(a,), clause="orphan-atom",
        )
    return AxiomReport.ok("atomicity")


def is_superposition(S: StatePropertySystem, r: int, p: int, q: int) -> bool:
    """r is a superposition of p and q: cartan(p) & cartan(q) <= cartan(r)."""
    return (cartan(S, p) & cartan(S, q)) <= cartan(S, r)


def property_orthogonal(S: StatePropertySystem, a: int, b: int) -> bool:
    """Every state making ``a`` actual is orthogonal to every state making ``b`` actual."""
    return (S.actual[b] & ~S.orthogonal_states(S.actual[a])) == 0


def state_property_orthogonal(S: StatePropertySystem, p: int, a: int) -> bool:
    return (S.actual[a] & ~S.state_ortho[p]) == 0


def leq_witness_state(S: StatePropertySystem, a: int, b: int) -> Optional[int]:
    """First state where ``a`` is actual but ``b`` is not, or None if a is stronger than b."""
    diff = S.actual[a] & ~S.actual[b]
    return next(bits(diff)) if diff else None


@dataclass(frozen=True)
class ClosureSystem:
    """Intersection-closed family of subsets of ``range(size)``, as bitsets."""

    size: int
    members: frozenset

    @property
    def ground(self) -> int:
        return (1 << self.size) - 1

    @classmethod
    def generate(cls, size: int, generators: Iterable[int], cap: Optional[int] = None) -> "ClosureSystem":
        ground = (1 << size) - 1
        family = {ground}
        for g in generators:
            if g & ~ground:
                raise QlatInputError("generator references an unknown state")
            family |= {g & f for f in family}
            if cap is not None and len(family) > cap:
                from .report import ClosureExplosion

                raise ClosureExplosion(f"closure family exceeds {cap} members")
        return cls(size, frozenset(family))

    def closure(self, x: int) -> int:
        out = self.ground
        for f in self.members:
            if x & ~f == 0:
                out &= f
        return out

    def is_closed(self, x: int) -> bool:
        return x in self.members

    def sorted_members(self) -> list[int]:
        return sorted(self.members, key=lambda m: (bin(m).count("1"), m))


def closure_from_actuality(S: StatePropertySystem, generators: Iterable[Iterable[str]]) -> ClosureSystem:
    """Smallest intersection-closed family over S's states containing the generators."""
    masks = []
    for gen in generators:
        m = 0
        for label in gen:
            m |= 1 << S.state_index(label)
        masks.append(m)
    return ClosureSystem.generate(len(S.states), masks)
