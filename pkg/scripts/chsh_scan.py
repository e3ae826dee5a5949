"""Scan |S| for the singlet and for product states over an angle grid."""

import argparse
import math

import numpy as np

from qlat.demo import SINGLET, chsh_value


def up(theta):
    return np.array([math.cos(theta / 2), math.sin(theta / 2)], dtype=complex)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=16, help="grid points per angle")
    args = ap.parse_args()

    base = (0.0, math.pi / 2, math.pi / 4, 3 * math.pi / 4)
    grid = np.linspace(0, 2 * math.pi, args.points, endpoint=False)
    s = chsh_value(SINGLET, base)
    print(f"singlet at (0, pi/2, pi/4, 3pi/4): S = {s:+.12f}, |S| = {abs(s):.12f}")

    best, where = 0.0, None
    for alpha in grid:
        for beta in grid:
            state = np.kron(up(alpha), up(beta))
            for gamma in grid:
                v = abs(chsh_value(state, [gamma + x for x in base]))
                if v > best:
                    best, where = v, (alpha, beta, gamma)
    print(f"product states over {args.points}^3 grid: max |S| = {best:.12f} at alpha, beta, gamma = "
          + ", ".join(f"{x:.4f}" for x in where))
    ket00 = np.array([1, 0, 0, 0], dtype=complex)
    best = max(abs(chsh_value(ket00, (0.0, a2, b, b2))) for a2 in grid for b in grid for b2 in grid)
    print(f"|00> with angles (0, a', b, b') over {args.points}^3 grid: max |S| = {best:.12f}")
    print(f"local bound 2, quantum bound {2 * math.sqrt(2):.12f}")


if __name__ == "__main__":
    main()
