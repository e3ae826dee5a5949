"""Axiom reports and the error hierarchy shared by every checker."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

AXIOMS = (
    "completeness",
    "orthocomplementation",
    "state-determination",
    "atomicity",
    "covering-law",
    "weak-modularity",
    "ssr",
    "classicality",
    "boolean-sublattice",
    "three-points-per-line",
)


class QlatInputError(ValueError):
    """Malformed input: distinct from an axiom failing on well-formed input."""


class ParseError(QlatInputError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"{line}:{column}: {message}")


class ClosureExplosion(QlatInputError):
    """A fixpoint construction outgrew its element cap."""


class DemoNotApplicable(QlatInputError):
    """The projector configuration cannot exhibit the superposition construction."""


@dataclass(frozen=True)
class AxiomReport:
    """Verdict of one checker.

    ``witness`` holds element/state labels, ``witness_indices`` the same tuple
    as indices so the failing condition can be replayed. ``clause`` names the
    sub-condition that broke (e.g. ``"transitivity"``). A verdict of ``"n/a"``
    means the checker could not run on this input; ``note`` says why.
    """

    axiom: str
    verdict: str
    witness: Optional[tuple] = None
    witness_indices: Optional[tuple] = None
    clause: str = ""
    note: str = ""
    all_witnesses: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if self.verdict not in ("pass", "fail", "n/a"):
            raise ValueError(f"bad verdict {self.verdict!r}")
        if (self.verdict == "fail") != (self.witness is not None):
            raise ValueError("a witness is present exactly when the verdict is fail")

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    @property
    def failed(self) -> bool:
        return self.verdict == "fail"

    @classmethod
    def ok(cls, axiom: str, note: str = "") -> "AxiomReport":
        return cls(axiom, "pass", note=note)

    @classmethod
    def not_applicable(cls, axiom: str, note: str) -> "AxiomReport":
        return cls(axiom, "n/a", note=note)

    def to_dict(self) -> dict:
        out = {"axiom": self.axiom, "verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = list(self.witness)
            out["clause"] = self.clause
        if self.note:
            out["note"] = self.note
        return out

    def line(self) -> str:
        text = f"{self.axiom:<22} {self.verdict.upper()}"
        if self.witness is not None:
            text += f"  witness=({', '.join(str(w) for w in self.witness)})"
            if self.clause:
                text += f" [{self.clause}]"
        if self.note:
            text += f"  ({self.note})"
        return text
