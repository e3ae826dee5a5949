"""Regenerate the shipped .qlat fixtures under src/qlat/fixtures."""

import argparse
from fractions import Fraction
from pathlib import Path

from qlat import exact
from qlat.hilbert import Subspace, sample_sps
from qlat.io import (
    FORMAT_VERSION,
    HilbertSeedsBody,
    LatticeBody,
    ProductJobBody,
    PropertyDecl,
    Seed,
    SpecDocument,
    SpsBody,
    lattice_document,
    serialize,
    sps_document,
)
from qlat.lattice import FiniteOrtholattice

DEFAULT_OUT = Path(__file__).resolve().parents[1] / "src" / "qlat" / "fixtures"


def lattice(elements, order, ortho=None):
    return SpecDocument(FORMAT_VERSION, "lattice", LatticeBody(tuple(elements), tuple(order), ortho and tuple(ortho)))


def wood():
    states = ("dry-European", "wet-European", "dry-Ebony", "wet-Ebony")
    props = (
        PropertyDecl("float"),
        PropertyDecl("burn"),
        PropertyDecl("sink", inverse="float"),
        PropertyDecl("fireproof", inverse="burn"),
        PropertyDecl("float∧burn", product=("float", "burn")),
        PropertyDecl("sink∧fireproof", product=("sink", "fireproof")),
        PropertyDecl("0"),
        PropertyDecl("1"),
    )
    # Ebony is heavier than water; wet wood does not burn
    table = {
        "dry-European": ("yes", "yes"),
        "wet-European": ("yes", "no"),
        "dry-Ebony": ("no", "yes"),
        "wet-Ebony": ("no", "no"),
    }
    triples = []
    for s in states:
        f, b = table[s]
        triples += [(s, "float", f), (s, "burn", b), (s, "0", "no"), (s, "1", "yes")]
    return SpecDocument(FORMAT_VERSION, "sps", SpsBody(states, props, tuple(triples)))


def qubit(with_x_minus: bool):
    dirs = {"z+": [1, 0], "z-": [0, 1], "x+": [1, 1], "x-": [1, -1]}
    names = ["z+", "z-", "x+"] + (["x-"] if with_x_minus else [])
    vecs = [exact.qvector(dirs[n]) for n in names]
    props = [Subspace.span([v]) for v in vecs]
    S = sample_sps(vecs, props, names, [f"[{n}]" for n in names])
    return sps_document(S)


def classical2():
    vecs = [exact.qvector([1, 0]), exact.qvector([0, 1])]
    S = sample_sps(vecs, [Subspace.span([v]) for v in vecs], ["c0", "c1"], ["[c0]", "[c1]"])
    return sps_document(S)


def c2_lines():
    def q(re, im=0):
        re, im = Fraction(re), Fraction(im)
        return (re, im)

    seeds = (
        Seed("e1", ((q(1), q(0)),)),
        Seed("d", ((q(1), q(1)),)),
        Seed("c", ((q(1), q(0, 1)),)),
    )
    return SpecDocument(FORMAT_VERSION, "hilbert-seeds", HilbertSeedsBody(2, seeds))


def job(left, right):
    return SpecDocument(FORMAT_VERSION, "product-job", ProductJobBody(left, right))


def fixtures() -> dict:
    return {
        "boolean8.qlat": lattice_document(FiniteOrtholattice.power_set(3, ["x", "y", "z"])),
        "benzene.qlat": lattice(
            ["0", "a", "b", "b'", "a'", "1"],
            [("0", "a"), ("a", "b"), ("b", "1"), ("0", "b'"), ("b'", "a'"), ("a'", "1")],
            [("0", "1"), ("a", "a'"), ("b", "b'")],
        ),
        "mo2.qlat": lattice(
            ["0", "a", "a'", "b", "b'", "1"],
            [(x, y) for x in ("a", "a'", "b", "b'") for y in ("1",)] + [("0", x) for x in ("a", "a'", "b", "b'")],
            [("0", "1"), ("a", "a'"), ("b", "b'")],
        ),
        "chain4.qlat": lattice(["0", "x", "y", "1"], [("0", "x"), ("x", "y"), ("y", "1")]),
        "wood.qlat": wood(),
        "qubit3.qlat": qubit(False),
        "qubit4.qlat": qubit(True),
        "classical2.qlat": classical2(),
        "c2_lines.qlat": c2_lines(),
        "qubit_pair.qlat": job("qubit4.qlat", "qubit4.qlat"),
        "classical_qubit.qlat": job("classical2.qlat", "qubit4.qlat"),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=DEFAULT_OUT)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for name, doc in fixtures().items():
        (args.out / name).write_text(serialize(doc), encoding="utf-8")
        print(f"wrote {args.out / name}")


if __name__ == "__main__":
    main()
