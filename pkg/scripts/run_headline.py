"""Separated product of two qubit samples, and of a classical bit with a qubit.

Prints the axiom report for each product and the two-point planes that
break the covering law.
"""

import argparse

from qlat import FIXTURES
from qlat.io import build, parse_spec
from qlat.product import build_separated_product, join_of_product_atoms, separated_axiom_report


def load(name):
    return build(parse_spec(FIXTURES / name))


def show(title, SP):
    print(f"== {title}: {len(SP.states)} states, {SP.lattice.size} properties")
    for rep in separated_axiom_report(SP):
        print("  " + rep.line())


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--factor", default="qubit4.qlat", help="qubit sample fixture used on both sides")
    ap.add_argument("--extended", action="store_true")
    args = ap.parse_args()

    q = load(args.factor)
    SP = build_separated_product(q, q, extended=args.extended)
    show(f"{args.factor} x {args.factor}", SP)
    plane = join_of_product_atoms(SP, ("z+", "z+"), ("x+", "x+"))
    print(f"  join of (z+,z+) and (x+,x+): states {', '.join(plane.states)}; "
          f"{plane.atoms_below} atoms below; orthogonal={plane.orthogonal}")

    show(f"classical2.qlat x {args.factor}", build_separated_product(load("classical2.qlat"), q, extended=args.extended))


if __name__ == "__main__":
    main()
