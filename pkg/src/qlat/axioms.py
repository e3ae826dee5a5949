"""Order-theoretic axiom checkers, superselection and classicality tests.

Every checker is exhaustive and scans tuples in lexicographic index order,
so the reported witness is the smallest violating tuple.
"""

from __future__ import annotations

from itertools import product
from typing import TYPE_CHECKING, Iterable, Union

from .lattice import FiniteOrtholattice, atoms, bits, verify_lattice
from .report import AxiomReport, QlatInputError

if TYPE_CHECKING:
    from .sps import StatePropertySystem


def _fail(L: FiniteOrtholattice, axiom: str, idx: tuple, clause: str = "", extra=()) -> AxiomReport:
    return AxiomReport(
        axiom, "fail",
        witness=tuple(L.labels[i] for i in idx),
        witness_indices=tuple(idx),
        clause=clause,
        all_witnesses=tuple(extra),
    )


def _require_ortho(L: FiniteOrtholattice, axiom: str):
    if L.ortho is None:
        raise QlatInputError(f"{axiom}: lattice has no orthocomplementation map")


def check_orthocomplementation(L: FiniteOrtholattice) -> AxiomReport:
    """a'' = a and a ^ a' = 0 for each a, then a <= b => b' <= a' for each pair."""
    _require_ortho(L, "orthocomplementation")
    o = L.ortho
    for a in L.elements():
        if o[o[a]] != a:
            return _fail(L, "orthocomplementation", (a,), "involution")
        if L._meet(a, o[a]) != L.bottom:
            return _fail(L, "orthocomplementation", (a,), "meet-with-complement")
    for a in L.elements():
        for b in bits(L.up[a]):
            if not L.leq(o[b], o[a]):
                return _fail(L, "orthocomplementation", (a, b), "order-reversal")
    return AxiomReport.ok("orthocomplementation")


def check_atomicity_lattice(L: FiniteOrtholattice) -> AxiomReport:
    """Lattice-only form of atomicity: every non-zero element lies above an atom.

    With a state layer available use :func:`qlat.sps.check_atomicity`, which
    ties atoms to property states.
    """
    if L.bottom is None:
        return AxiomReport.not_applicable("atomicity", "no bottom element")
    atom_mask = 0
    for a in atoms(L):
        atom_mask |= 1 << a
    for x in L.elements():
        if x != L.bottom and not (L.down[x] & atom_mask):
            return _fail(L, "atomicity", (x,), "no-atom-below")
    return AxiomReport.ok("atomicity", note="order-theoretic (no state layer)")


def check_covering_law(L: FiniteOrtholattice, all_witnesses: bool = False) -> AxiomReport:
    """For atom a and b with a ^ b = 0, a v b must cover b.

    The witness is ``(a, b, c)`` with ``b < c < a v b``.
    """
    found = []
    for a in atoms(L):
        for b in L.elements():
            if L._meet(a, b) != L.bottom:
                continue
            j = L._join(a, b)
            between = L.up[b] & L.down[j] & ~(1 << b | 1 << j)
            if between:
                triple = (a, b, next(bits(between)))
                if not all_witnesses:
                    return _fail(L, "covering-law", triple, "not-covered")
                found.append(triple)
    if found:
        return _fail(L, "covering-law", found[0], "not-covered",
                     extra=[tuple(L.labels[i] for i in t) for t in found])
    return AxiomReport.ok("covering-law")


def check_weak_modularity(L: FiniteOrtholattice, all_witnesses: bool = False) -> AxiomReport:
    """For a <= b: (a v b') ^ b = a. Witness ``(a, b)``."""
    _require_ortho(L, "weak-modularity")
    o = L.ortho
    found = []
    for a in L.elements():
        for b in bits(L.up[a]):
            if L._meet(L._join(a, o[b]), b) != a:
                if not all_witnesses:
                    return _fail(L, "weak-modularity", (a, b), "orthomodular-identity")
                found.append((a, b))
    if found:
        return _fail(L, "weak-modularity", found[0], "orthomodular-identity",
                     extra=[tuple(L.labels[i] for i in t) for t in found])
    return AxiomReport.ok("weak-modularity")


def generated_subalgebra(L: FiniteOrtholattice, generators: Iterable[int]) -> list[int]:
    """Smallest subset containing 0, 1 and the generators, closed under ^, v and '."""
    _require_ortho(L, "boolean-sublattice")
    members = {L.bottom, L.top, *generators}
    frontier = list(members)
    while frontier:
        new = set()
        for x in frontier:
            new.add(L.ortho[x])
        current = list(members | new)
        for x in frontier:
            for y in current:
                new.add(L.meet(x, y))
                new.add(L.join(x, y))
        new -= members
        members |= new
        frontier = list(new)
    return sorted(members)


def check_boolean_sublattice(L: FiniteOrtholattice, a: int, b: int) -> AxiomReport:
    """Is the sub-ortholattice generated by a <= b Boolean (distributive, complemented)?"""
    if not L.leq(a, b):
        raise QlatInputError(f"boolean-sublattice needs {L.labels[a]} <= {L.labels[b]}")
    sub = generated_subalgebra(L, (a, b))
    for x in sub:
        if L.meet(x, L.ortho[x]) != L.bottom or L.join(x, L.ortho[x]) != L.top:
            return _fail(L, "boolean-sublattice", (x,), "complement")
    for x, y, z in product(sub, repeat=3):
        if L.meet(x, L.join(y, z)) != L.join(L.meet(x, y), L.meet(x, z)):
            return _fail(L, "boolean-sublattice", (x, y, z), "distributivity")
    return AxiomReport.ok("boolean-sublattice", note=f"{len(sub)} elements generated")


def detect_ssr(S: "StatePropertySystem", a: int, b: int) -> bool:
    """True iff every state making a v b actual makes a or b actual."""
    j = S.lattice.join(a, b)
    return (S.actual[j] & ~(S.actual[a] | S.actual[b])) == 0


def is_classical_property(S: "StatePropertySystem", a: int) -> bool:
    """No state leaves the test of ``a`` indeterminate."""
    return S.indeterminate(a) == 0


def ssr_atom_pairs(S: "StatePropertySystem") -> list[tuple[int, int, bool]]:
    """Distinct atom pairs separated by a superselection rule, with orthogonality flag."""
    from .sps import property_orthogonal

    ats = atoms(S.lattice)
    out = []
    for i, a in enumerate(ats):
        for b in ats[i + 1:]:
            if detect_ssr(S, a, b):
                out.append((a, b, property_orthogonal(S, a, b)))
    return out


def _guarded(fn, axiom, *args) -> AxiomReport:
    try:
        return fn(*args)
    except QlatInputError as exc:
        return AxiomReport.not_applicable(axiom, str(exc))


def full_report(target: Union[FiniteOrtholattice, "StatePropertySystem"]) -> list[AxiomReport]:
    """Run every applicable checker in axiom order; failures never suppress later checks."""
    from .sps import StatePropertySystem, check_atomicity, check_state_determination

    if isinstance(target, StatePropertySystem):
        L = target.lattice
        state_checks = [
            _guarded(check_state_determination, "state-determination", target),
            _guarded(check_atomicity, "atomicity", target),
        ]
    else:
        L = target
        state_checks = [_guarded(check_atomicity_lattice, "atomicity", L)]
    completeness = verify_lattice(L)
    reports = [completeness, _guarded(check_orthocomplementation, "orthocomplementation", L)]
    reports.extend(state_checks)
    if completeness.passed:
        reports.append(_guarded(check_covering_law, "covering-law", L))
        reports.append(_guarded(check_weak_modularity, "weak-modularity", L))
    else:
        reports.append(AxiomReport.not_applicable("covering-law", "order is not a lattice"))
        reports.append(AxiomReport.not_applicable("weak-modularity", "order is not a lattice"))
    return reports


def replay_witness(target, report: AxiomReport) -> bool:
    """Re-evaluate the defining condition at a failure witness.

    Returns True iff the witness really violates the axiom. Uses only the
    raw order rows and ortho map, not the checkers above.
    """
    from .sps import StatePropertySystem

    if not report.failed:
        raise ValueError("only failing reports carry a witness")
    S = target if isinstance(target, StatePropertySystem) else None
    L = target.lattice if S is not None else target
    w = report.witness_indices
    le = L.leq

    def glb(*xs):
        cands = [z for z in L.elements() if all(le(z, x) for x in xs)]
        best = [z for z in cands if all(le(c, z) for c in cands)]
        return best[0] if len(best) == 1 else None

    def lub(*xs):
        cands = [z for z in L.elements() if all(le(x, z) for x in xs)]
        best = [z for z in cands if all(le(z, c) for c in cands)]
        return best[0] if len(best) == 1 else None

    def is_atom(x):
        return x != L.bottom and all(z in (L.bottom, x) for z in L.elements() if le(z, x))

    axiom, clause = report.axiom, report.clause
    if axiom == "completeness":
        if clause == "reflexivity":
            return not le(w[0], w[0])
        if clause == "antisymmetry":
            return w[0] != w[1] and le(w[0], w[1]) and le(w[1], w[0])
        if clause == "transitivity":
            return le(w[0], w[1]) and le(w[1], w[2]) and not le(w[0], w[2])
        if clause == "meet":
            return glb(w[0], w[1]) is None
        if clause == "join":
            return lub(w[0], w[1]) is None
        if clause in ("bottom", "top"):
            ext = [z for z in L.elements() if all((le(z, y) if clause == "bottom" else le(y, z)) for y in L.elements())]
            return not ext
    o = L.ortho
    if axiom == "orthocomplementation":
        if clause == "involution":
            return o[o[w[0]]] != w[0]
        if clause == "meet-with-complement":
            return glb(w[0], o[w[0]]) != L.bottom
        if clause == "order-reversal":
            return le(w[0], w[1]) and not le(o[w[1]], o[w[0]])
    if axiom == "covering-law":
        a, b, c = w
        j = lub(a, b)
        return is_atom(a) and glb(a, b) == L.bottom and le(b, c) and le(c, j) and c not in (b, j)
    if axiom == "weak-modularity":
        a, b = w
        return le(a, b) and glb(lub(a, o[b]), b) != a
    if axiom == "atomicity" and S is None:
        x = w[0]
        return x != L.bottom and not any(is_atom(z) and le(z, x) for z in L.elements())
    if axiom == "atomicity" and S is not None:
        return _replay_atomicity(S, report, glb, is_atom)
    if axiom == "state-determination":
        p, q = w
        return p != q and all(bool(S.actual[x] >> p & 1) == bool(S.actual[x] >> q & 1) for x in L.elements())
    raise ValueError(f"no replay rule for {axiom}/{clause}")


def _replay_atomicity(S, report, glb, is_atom) -> bool:
    L = S.lattice
    if report.clause == "property-state-not-atom":
        p = report.witness_indices[0]
        actual = [x for x in L.elements() if S.actual[x] >> p & 1]
        ps = actual[0]
        for x in actual[1:]:
            ps = glb(ps, x)
        return not is_atom(ps)
    if report.clause == "orphan-atom":
        a = report.witness_indices[0]
        for p in range(len(S.states)):
            actual = [x for x in L.elements() if S.actual[x] >> p & 1]
            ps = actual[0]
            for x in actual[1:]:
                ps = glb(ps, x)
            if ps == a:
                return False
        return is_atom(a)
    raise ValueError(f"no replay rule for atomicity/{report.clause}")
