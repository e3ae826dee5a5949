"""Brute-force reference implementations used as test oracles.

Nothing here calls the package's own meet/join/checker code: every
function works from the raw order relation and scans all candidates.
"""

from fractions import Fraction
from itertools import product
from math import gcd


def relation(L):
    n = L.size
    return [[L.leq(a, b) for b in range(n)] for a in range(n)]


def is_partial_order(R):
    n = len(R)
    if not all(R[a][a] for a in range(n)):
        return False
    for a, b in product(range(n), repeat=2):
        if a != b and R[a][b] and R[b][a]:
            return False
    for a, b, c in product(range(n), repeat=3):
        if R[a][b] and R[b][c] and not R[a][c]:
            return False
    return True


def glb(R, *xs):
    n = len(R)
    lower = [y for y in range(n) if all(R[y][x] for x in xs)]
    best = [g for g in lower if all(R[y][g] for y in lower)]
    return best[0] if len(best) == 1 else None


def lub(R, *xs):
    n = len(R)
    upper = [y for y in range(n) if all(R[x][y] for x in xs)]
    best = [g for g in upper if all(R[g][y] for y in upper)]
    return best[0] if len(best) == 1 else None


def bottom(R):
    return glb(R, *range(len(R)))


def top(R):
    return lub(R, *range(len(R)))


def is_lattice(R):
    n = len(R)
    return is_partial_order(R) and all(
        glb(R, a, b) is not None and lub(R, a, b) is not None for a in range(n) for b in range(n)
    )


def atoms(R):
    z = bottom(R)
    n = len(R)
    return [x for x in range(n) if x != z and all(y in (z, x) for y in range(n) if R[y][x])]


def covers(R, b, c):
    return b != c and R[b][c] and not any(
        x not in (b, c) and R[b][x] and R[x][c] for x in range(len(R))
    )


def ortho_violations(R, o):
    n = len(R)
    z = bottom(R)
    out = []
    for a in range(n):
        if o[o[a]] != a or glb(R, a, o[a]) != z:
            out.append((a,))
    for a, b in product(range(n), repeat=2):
        if R[a][b] and not R[o[b]][o[a]]:
            out.append((a, b))
    return out


def covering_violations(R):
    n = len(R)
    z = bottom(R)
    out = []
    for a in atoms(R):
        for b in range(n):
            if glb(R, a, b) != z:
                continue
            j = lub(R, a, b)
            for c in range(n):
                if c not in (b, j) and R[b][c] and R[c][j]:
                    out.append((a, b, c))
    return out


def wm_violations(R, o):
    n = len(R)
    return [
        (a, b) for a in range(n) for b in range(n)
        if R[a][b] and glb(R, lub(R, a, o[b]), b) != a
    ]


# Gaussian rationals as (re, im) Fraction pairs, nested-list matrices

def c(re, im=0):
    return (Fraction(re), Fraction(im))


def cmul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def cadd(x, y):
    return (x[0] + y[0], x[1] + y[1])


def _scaled(M):
    # common denominator D and Gaussian-integer entries, M = N / D
    D = 1
    for row in M:
        for re, im in row:
            D = D * re.denominator // gcd(D, re.denominator)
            D = D * im.denominator // gcd(D, im.denominator)
    return D, [[(int(re * D), int(im * D)) for re, im in row] for row in M]


def matmul(A, B):
    da, NA = _scaled(A)
    db, NB = _scaled(B)
    k, m = len(B), len(B[0])
    out = []
    for ra in NA:
        row = []
        for j in range(m):
            sr = si = 0
            for t in range(k):
                (ar, ai), (br, bi) = ra[t], NB[t][j]
                sr += ar * br - ai * bi
                si += ar * bi + ai * br
            row.append((Fraction(sr, da * db), Fraction(si, da * db)))
        out.append(row)
    return out


def matsub(A, B):
    return [[(x[0] - y[0], x[1] - y[1]) for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def eye(n):
    return [[c(1 if i == j else 0) for j in range(n)] for i in range(n)]


def from_qqi(M):
    return [[(z.re, z.im) for z in row] for row in M]
