"""Finite property lattices, state-property systems and separated products."""

from pathlib import Path

from .report import AxiomReport, ClosureExplosion, DemoNotApplicable, ParseError, QlatInputError
from .lattice import FiniteOrtholattice, atoms, covers, verify_lattice
from .axioms import (
    check_atomicity_lattice,
    check_boolean_sublattice,
    check_covering_law,
    check_orthocomplementation,
    check_weak_modularity,
    detect_ssr,
    full_report,
    is_classical_property,
    replay_witness,
)
from .sps import StatePropertySystem, YesNo, cartan, check_atomicity, check_state_determination, property_state

FIXTURES = Path(__file__).resolve().parent / "fixtures"

__version__ = "0.1.0"
