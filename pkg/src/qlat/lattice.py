"""Finite bounded lattices given by an explicit order relation.

The order is stored as bitset rows (Python ints): ``down[x]`` has bit ``y``
set when ``y <= x`` and ``up[x]`` has bit ``y`` set when ``x <= y``. Meets
and joins are computed on demand from these rows.
"""

from __future__ import annotations

import os
from typing import Iterable, Iterator, Optional, Sequence

from .report import AxiomReport, QlatInputError

DEFAULT_MAX_ELEMENTS = 4096


def max_elements() -> int:
    raw = os.environ.get("QLAT_MAX_ELEMENTS")
    if raw is None:
        return DEFAULT_MAX_ELEMENTS
    try:
        value = int(raw)
    except ValueError:
        raise QlatInputError(f"QLAT_MAX_ELEMENTS must be an integer, got {raw!r}")
    if value < 1:
        raise QlatInputError("QLAT_MAX_ELEMENTS must be positive")
    return value


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class FiniteOrtholattice:
    """A finite poset with optional orthocomplementation candidate.

    Nothing about the order is assumed at construction time beyond shape
    and index ranges; :func:`verify_lattice` decides whether it is a lattice.
    Elements are identified by index; ``labels`` are metadata.
    """

    def __init__(
        self,
        labels: Sequence[str],
        leq: Sequence[Sequence[bool]],
        ortho: Optional[Sequence[int]] = None,
        bottom: Optional[int] = None,
        top: Optional[int] = None,
        payload: Optional[Sequence] = None,
    ):
        n = len(labels)
        if n == 0:
            raise QlatInputError("a lattice needs at least one element")
        cap = max_elements()
        if n > cap:
            raise QlatInputError(f"{n} elements exceed the cap of {cap} (QLAT_MAX_ELEMENTS)")
        if len(set(labels)) != n:
            raise QlatInputError("duplicate element labels")
        if len(leq) != n or any(len(row) != n for row in leq):
            raise QlatInputError(f"order relation must be {n}x{n}")
        self.labels = tuple(str(x) for x in labels)
        self.size = n
        up = [0] * n
        down = [0] * n
        for a in range(n):
            row = leq[a]
            for b in range(n):
                if row[b]:
                    up[a] |= 1 << b
                    down[b] |= 1 << a
        self.up = tuple(up)
        self.down = tuple(down)
        if ortho is not None:
            ortho = tuple(int(x) for x in ortho)
            if len(ortho) != n or any(not 0 <= x < n for x in ortho):
                raise QlatInputError("ortho map must send every element to an element index")
        self.ortho = ortho
        full = (1 << n) - 1
        if bottom is None:
            bottom = next((x for x in range(n) if up[x] == full), None)
        if top is None:
            top = next((x for x in range(n) if down[x] == full), None)
        for name, value in (("bottom", bottom), ("top", top)):
            if value is not None and not 0 <= value < n:
                raise QlatInputError(f"{name} index {value} out of range")
        self.bottom = bottom
        self.top = top
        self.payload = tuple(payload) if payload is not None else None
        self._by_down = {}
        self._by_up = {}
        for x in range(n):
            self._by_down.setdefault(down[x], x)
            self._by_up.setdefault(up[x], x)
        self._inf_cache: dict[int, Optional[int]] = {}

    # construction helpers

    @classmethod
    def from_pairs(
        cls,
        labels: Sequence[str],
        pairs: Iterable[tuple[str, str]],
        ortho: Optional[dict] = None,
        closure: bool = True,
        payload=None,
    ) -> "FiniteOrtholattice":
        """Build from generating pairs ``(a, b)`` meaning ``a <= b``.

        With ``closure`` the reflexive-transitive closure is taken; without it
        the pairs are the whole relation, which is how malformed orders reach
        :func:`verify_lattice`.
        """
        index = {label: i for i, label in enumerate(labels)}
        n = len(labels)
        rel = [[False] * n for _ in range(n)]
        for a, b in pairs:
            if a not in index or b not in index:
                missing = a if a not in index else b
                raise QlatInputError(f"order pair references undeclared element {missing!r}")
            rel[index[a]][index[b]] = True
        if closure:
            for i in range(n):
                rel[i][i] = True
            for k in range(n):
                for i in range(n):
                    if rel[i][k]:
                        rk = rel[k]
                        ri = rel[i]
                        for j in range(n):
                            if rk[j]:
                                ri[j] = True
        omap = None
        if ortho is not None:
            omap = [None] * n
            for a, b in ortho.items():
                if a not in index or b not in index:
                    missing = a if a not in index else b
                    raise QlatInputError(f"ortho pair references undeclared element {missing!r}")
                omap[index[a]] = index[b]
            if any(x is None for x in omap):
                undefined = labels[omap.index(None)]
                raise QlatInputError(f"ortho map undefined at {undefined!r}")
        return cls(labels, rel, omap, payload=payload)

    @classmethod
    def from_sets(cls, labels, sets: Sequence[int], ortho=None, payload=None) -> "FiniteOrtholattice":
        """Lattice of subsets (bitsets) ordered by inclusion."""
        n = len(sets)
        rel = [[(sets[a] & ~sets[b]) == 0 for b in range(n)] for a in range(n)]
        return cls(labels, rel, ortho, payload=payload)

    @classmethod
    def power_set(cls, n: int, labels: Optional[Sequence[str]] = None) -> "FiniteOrtholattice":
        """Boolean algebra 2^n with set complement."""
        names = labels or [str(i + 1) for i in range(n)]
        sets = list(range(1 << n))
        elem_labels = ["{" + ",".join(names[i] for i in bits(s)) + "}" for s in sets]
        full = (1 << n) - 1
        return cls.from_sets(elem_labels, sets, ortho=[full ^ s for s in sets], payload=sets)

    def dual(self) -> "FiniteOrtholattice":
        """Order-reversed lattice on the same element indices."""
        n = self.size
        rel = [[bool(self.up[b] >> a & 1) for b in range(n)] for a in range(n)]
        return FiniteOrtholattice(self.labels, rel, self.ortho, self.top, self.bottom, self.payload)

    # order queries

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise QlatInputError(f"unknown element {label!r}") from None

    def leq(self, a: int, b: int) -> bool:
        return bool(self.up[a] >> b & 1)

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.leq(a, b)

    def elements(self) -> range:
        return range(self.size)

    def infimum(self, members: Iterable[int]) -> Optional[int]:
        """Greatest lower bound of ``members``; None when it does not exist."""
        lower = (1 << self.size) - 1
        for m in members:
            lower &= self.down[m]
        x = self._by_down.get(lower)
        if x is None or self.down[x] != lower:
            return None
        return x

    def _meet(self, a: int, b: int) -> Optional[int]:
        return self.infimum((a, b))

    def _join(self, a: int, b: int) -> Optional[int]:
        # supremum as the infimum of all upper bounds
        upper = self.up[a] & self.up[b]
        if upper in self._inf_cache:
            return self._inf_cache[upper]
        x = self.infimum(bits(upper)) if upper else None
        if x is not None and not (upper >> x & 1):
            x = None
        self._inf_cache[upper] = x
        return x

    def meet(self, a: int, b: int) -> int:
        x = self._meet(a, b)
        if x is None:
            raise QlatInputError(f"no meet for ({self.labels[a]}, {self.labels[b]})")
        return x

    def join(self, a: int, b: int) -> int:
        x = self._join(a, b)
        if x is None:
            raise QlatInputError(f"no join for ({self.labels[a]}, {self.labels[b]})")
        return x

    def meet_all(self, members: Iterable[int]) -> int:
        x = self.infimum(members)
        if x is None:
            raise QlatInputError("subset has no infimum")
        return x

    def orth(self, a: int) -> int:
        if self.ortho is None:
            raise QlatInputError("lattice has no orthocomplementation map")
        return self.ortho[a]

    def orthogonal(self, a: int, b: int) -> bool:
        """Lattice orthogonality: ``a <= b'``."""
        return self.leq(a, self.orth(b))

    def __repr__(self) -> str:
        return f"FiniteOrtholattice(size={self.size}, ortho={'yes' if self.ortho else 'no'})"

    def hasse_lines(self) -> list[str]:
        """Plain-text covering-relation dump, one element per line."""
        out = []
        for b in range(self.size):
            ups = [self.labels[c] for c in bits(self.up[b]) if c != b and _covers(self, b, c)]
            out.append(f"{self.labels[b]} -< {' '.join(ups) if ups else '.'}")
        return out


def _covers(L: FiniteOrtholattice, b: int, c: int) -> bool:
    return b != c and (L.up[b] & L.down[c]) == (1 << b | 1 << c)


def verify_lattice(L: FiniteOrtholattice) -> AxiomReport:
    """Completeness check: partial order, bounds, all binary meets and joins."""
    n = L.size
    for a in range(n):
        if not L.leq(a, a):
            return _fail_completeness(L, (a, a), "reflexivity")
    for a in range(n):
        for b in bits(L.up[a]):
            if b != a and L.leq(b, a):
                return _fail_completeness(L, (a, b), "antisymmetry")
    for a in range(n):
        for b in bits(L.up[a]):
            extra = L.up[b] & ~L.up[a]
            if extra:
                c = next(bits(extra))
                return _fail_completeness(L, (a, b, c), "transitivity")
    if L.bottom is None or L.up[L.bottom] != (1 << n) - 1:
        return AxiomReport("completeness", "fail", witness=("bottom",), witness_indices=(), clause="bottom")
    if L.top is None or L.down[L.top] != (1 << n) - 1:
        return AxiomReport("completeness", "fail", witness=("top",), witness_indices=(), clause="top")
    for a in range(n):
        for b in range(a + 1, n):
            if L._meet(a, b) is None:
                return _fail_completeness(L, (a, b), "meet")
            if L._join(a, b) is None:
                return _fail_completeness(L, (a, b), "join")
    return AxiomReport.ok("completeness")


def _fail_completeness(L, idx, clause) -> AxiomReport:
    return AxiomReport(
        "completeness", "fail",
        witness=tuple(L.labels[i] for i in idx), witness_indices=tuple(idx), clause=clause,
    )


def atoms(L: FiniteOrtholattice) -> list[int]:
    """Elements other than bottom whose only strict lower bound is bottom."""
    if L.bottom is None:
        return []
    bot = 1 << L.bottom
    return [x for x in range(L.size) if x != L.bottom and L.down[x] == bot | 1 << x]


def covers(L: FiniteOrtholattice, b: int, c: int) -> bool:
    """True iff ``c`` covers ``b``: ``b < c`` with nothing strictly between."""
    if not L.leq(b, c):
        raise QlatInputError(f"covers needs {L.labels[b]} <= {L.labels[c]}")
    return _covers(L, b, c)
