"""Permutation groups: stabilizer chains and indexed element tables.

Every group carries a deterministic Schreier-Sims stabilizer chain (base
points chosen as the smallest point moved by the pending generator), which
answers order and membership for groups of order up to about 10^6.

Groups of order at most ``TABLE_CAP`` additionally get an element table:
elements are numbered in lexicographic order of their image arrays (so the
identity is element 0) and products, inverses and commutators are numpy
lookups.  Almost every structural computation in the package runs on these
indices.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceeded
from .perms import Permutation

TABLE_CAP = 5000


class _Level:
    __slots__ = ("point", "gens", "transversal")

    def __init__(self, point: int):
        self.point = point
        self.gens: list[Permutation] = []
        # orbit point -> u with point^u == orbit point (0-based)
        self.transversal: dict[int, Permutation] = {}

    def rebuild(self, degree: int) -> None:
        ident = Permutation.identity(degree)
        trans = {self.point: ident}
        queue = [self.point]
        for beta in queue:
            u = trans[beta]
            for s in self.gens:
                gamma = s.images[beta]
                if gamma not in trans:
                    trans[gamma] = u * s
                    queue.append(gamma)
        self.transversal = trans


class PermGroup:
    """A permutation group given by generators on the points 1..degree."""

    def __init__(self, degree: int, generators: Iterable[Permutation] = ()):
        gens = tuple(generators)
        for g in gens:
            if g.degree != degree:
                raise ValueError(f"generator {g} has degree {g.degree}, expected {degree}")
        self.degree = degree
        self.generators = gens
        self._levels = self._schreier_sims()

    # -- stabilizer chain -------------------------------------------------

    def _strip(self, levels: list[_Level], g: Permutation, start: int):
        for j in range(start, len(levels)):
            lev = levels[j]
            beta = g.images[lev.point]
            u = lev.transversal.get(beta)
            if u is None:
                return g, j
            g = g * u.inverse()
        return g, len(levels)

    def _schreier_sims(self) -> list[_Level]:
        levels: list[_Level] = []
        strong = [g for g in self.generators if not g.is_identity()]
        if not strong:
            return levels

        def add_base_point(h: Permutation) -> None:
            levels.append(_Level(h.moved_points()[0] - 1))

        for s in strong:
            if all(s.images[lev.point] == lev.point for lev in levels):
                add_base_point(s)
        for idx, lev in enumerate(levels):
            lev.gens = [s for s in strong
                        if all(s.images[levels[k].point] == levels[k].point for k in range(idx))]
            lev.rebuild(self.degree)

        i = len(levels) - 1
        while i >= 0:
            lev = levels[i]
            restart = False
            for beta in sorted(lev.transversal):
                u = lev.transversal[beta]
                for s in lev.gens:
                    gamma = s.images[beta]
                    g = u * s * lev.transversal[gamma].inverse()
                    if g.is_identity():
                        continue
                    h, j = self._strip(levels, g, i + 1)
                    if h.is_identity():
                        continue
                    if j == len(levels):
                        add_base_point(h)
                    for lv in range(i + 1, j + 1):
                        levels[lv].gens.append(h)
                        levels[lv].rebuild(self.degree)
                    i = j
                    restart = True
                    break
                if restart:
                    break
            if not restart:
                i -= 1
        return levels

    @property
    def base(self) -> list[int]:
        return [lev.point + 1 for lev in self._levels]

    def strong_generators(self) -> list[Permutation]:
        return list(self._levels[0].gens) if self._levels else []

    def orbit_lengths(self) -> list[int]:
        return [len(lev.transversal) for lev in self._levels]

    def order(self) -> int:
        n = 1
        for k in self.orbit_lengths():
            n *= k
        return n

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        h, _ = self._strip(self._levels, g, 0)
        return h.is_identity()

    __contains__ = contains

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def random_element(self, rng) -> Permutation:
        """Uniform element: product of random transversal elements, bottom level first."""
        g = self.identity()
        for lev in reversed(self._levels):
            keys = sorted(lev.transversal)
            g = g * lev.transversal[keys[rng.randbelow(len(keys))]]
        return g

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(other.contains(g) for g in self.generators)

    def same_group(self, other: "PermGroup") -> bool:
        return (self.order() == other.order() and self.is_subgroup_of(other))

    # -- chain-level constructions (no element table needed) -------------

    def normal_closure_of(self, gens: Sequence[Permutation]) -> "PermGroup":
        """Normal closure in this group of the given elements."""
        cur = [g for g in gens if not g.is_identity()]
        N = PermGroup(self.degree, cur)
        changed = True
        while changed:
            changed = False
            for n in list(N.generators):
                for s in self.generators:
                    c = n.conj(s)
                    if not N.contains(c):
                        cur.append(c)
                        N = PermGroup(self.degree, cur)
                        changed = True
        return N

    def commutator_with(self, A: "PermGroup", B: "PermGroup") -> "PermGroup":
        """[A, B] as the normal closure in <A, B> of commutators of generators."""
        comms = [a.comm(b) for a in A.generators for b in B.generators]
        join = PermGroup(self.degree, A.generators + B.generators)
        return join.normal_closure_of(comms)

    # -- element table ----------------------------------------------------

    @property
    def is_small(self) -> bool:
        return self.order() <= TABLE_CAP

    @cached_property
    def table(self) -> "ElementTable":
        if not self.is_small:
            raise CapExceeded(f"group of order {self.order()} exceeds table cap {TABLE_CAP}")
        return ElementTable(self)

    def elements(self) -> list[Permutation]:
        """All elements in canonical (lexicographic image) order."""
        return self.table.perms

    def index(self, g: Permutation) -> int:
        return self.table.index(g)

    def element(self, i: int) -> Permutation:
        return self.table.perms[i]

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators) or "()"
        return f"PermGroup(degree={self.degree}, order={self.order()}, gens=[{gens}])"

    def __reduce__(self):
        return (PermGroup, (self.degree, self.generators))


def enumerate_by_closure(degree: int, gens: Sequence[Permutation]) -> set[Permutation]:
    """Breadth-first closure of a generating set; the oracle for chain orders."""
    ident = Permutation.identity(degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = x * s
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


class ElementTable:
    """Indexed elements of a small group with numpy product tables."""

    def __init__(self, group: PermGroup):
        self.group = group
        elems = self._all_elements(group)
        elems.sort()
        self.perms: list[Permutation] = elems
        self.size = len(elems)
        self.degree = group.degree
        arr = np.array([p.images for p in elems], dtype=np.int64).reshape(self.size, group.degree)
        self.images = arr
        self._build_lookup()
        self.mul = self._build_mul()
        inv = np.empty(self.size, dtype=np.int64)
        rows, cols = np.nonzero(self.mul == 0)
        inv[rows] = cols
        self.inv = inv

    @staticmethod
    def _all_elements(group: PermGroup) -> list[Permutation]:
        out = [group.identity()]
        for lev in reversed(group._levels):
            us = list(lev.transversal.values())
            out = [x * u for x in out for u in us]
        return out

    def _build_lookup(self) -> None:
        # an element is determined by the images of the base points
        base = [lev.point for lev in self.group._levels]
        self._base = np.array(base, dtype=np.int64)
        deg = max(self.degree, 1)
        if len(base) and len(base) * np.log2(deg) < 62:
            self._radix = deg ** np.arange(len(base), dtype=np.int64)
            keys = self.images[:, self._base] @ self._radix
            self._order = np.argsort(keys, kind="stable")
            self._sorted_keys = keys[self._order]
            self._dict = None
        else:
            self._radix = None
            self._dict = {p.images: i for i, p in enumerate(self.perms)}

    def lookup_rows(self, rows: np.ndarray) -> np.ndarray:
        """Indices of the elements whose image arrays are the given rows."""
        if self._radix is None:
            return np.array([self._dict[tuple(r)] for r in rows.tolist()], dtype=np.int64)
        if not len(self._base):
            return np.zeros(len(rows), dtype=np.int64)
        keys = rows[:, self._base] @ self._radix
        return self._order[np.searchsorted(self._sorted_keys, keys)]

    def index(self, g: Permutation) -> int:
        if g.degree != self.degree:
            raise ValueError("degree mismatch")
        i = int(self.lookup_rows(np.array([g.images], dtype=np.int64))[0])
        if self.perms[i] != g:
            raise ValueError(f"{g} is not an element of the group")
        return i

    def _build_mul(self) -> np.ndarray:
        n = self.size
        dtype = np.int16 if n < 2 ** 15 else np.int32
        mul = np.empty((n, n), dtype=dtype)
        E = self.images
        for a in range(n):
            # (a*b)[i] = b[a[i]]
            mul[a] = self.lookup_rows(E[:, E[a]])
        return mul

    @cached_property
    def comm(self) -> np.ndarray:
        """comm[a, b] = [a, b] = a^-1 b^-1 a b."""
        inv = self.inv
        m = self.mul
        left = m[inv[:, None], inv[None, :]]
        right = m
        return m[left, right]

    @cached_property
    def orders(self) -> np.ndarray:
        return np.array([p.order() for p in self.perms], dtype=np.int64)

    def conj_all(self, x: int) -> np.ndarray:
        """x^g for every g, indexed by g."""
        g = np.arange(self.size)
        return self.mul[self.mul[self.inv, x], g]

    def power(self, x: int, k: int) -> int:
        out = 0
        base = x
        while k:
            if k & 1:
                out = int(self.mul[out, base])
            base = int(self.mul[base, base])
            k >>= 1
        return out
