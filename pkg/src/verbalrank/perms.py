"""Permutations on the points 1..n.

Internally a permutation is the tuple of images of 0..n-1.  Products act on
the right, as in GAP: ``(p * q)`` applies ``p`` first, then ``q``.  With this
convention the commutator is ``[x, y] = x^-1 y^-1 x y`` and conjugation is
``x^g = g^-1 x g``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a bijection on 1..{len(self.images)}: {self.images}")

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @classmethod
    def from_images(cls, images: Sequence[int]) -> "Permutation":
        """Build from a 1-based image list, ``images[i-1]`` being the image of ``i``."""
        return cls(tuple(int(x) - 1 for x in images))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        img = list(range(degree))
        seen: set[int] = set()
        for cyc in cycles:
            cyc = [int(c) for c in cyc]
            for c in cyc:
                if not 1 <= c <= degree:
                    raise ValueError(f"point {c} outside 1..{degree}")
                if c in seen:
                    raise ValueError(f"point {c} appears in two cycles")
                seen.add(c)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a - 1] = b - 1
        return cls(tuple(img))

    @classmethod
    def parse(cls, text: str, degree: int) -> "Permutation":
        """Parse disjoint-cycle notation such as ``(1 2 3)(4 5)`` or ``()``."""
        stripped = text.strip()
        rest = _CYCLE_RE.sub("", stripped).strip()
        if rest or not stripped:
            raise ValueError(f"malformed cycle notation: {text!r}")
        cycles = []
        for body in _CYCLE_RE.findall(stripped):
            pts = [p for p in re.split(r"[\s,]+", body.strip()) if p]
            if pts:
                cycles.append([int(p) for p in pts])
        return cls.from_cycles(cycles, degree)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        """Image of a 1-based point."""
        return self.images[point - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        img = self.images
        return Permutation(tuple(other.images[i] for i in img))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def __invert__(self) -> "Permutation":
        return self.inverse()

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = Permutation.identity(self.degree)
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self, g: "Permutation") -> "Permutation":
        """``self^g = g^-1 self g``."""
        return g.inverse() * self * g

    def comm(self, other: "Permutation") -> "Permutation":
        return self.inverse() * other.inverse() * self * other

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, 1-based, each starting at its smallest point."""
        seen = [False] * self.degree
        out = []
        for i in range(self.degree):
            if seen[i] or self.images[i] == i:
                continue
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j + 1)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if not self.is_identity() else 1

    def moved_points(self) -> list[int]:
        return [i + 1 for i, j in enumerate(self.images) if i != j]

    def extend(self, degree: int, shift: int = 0) -> "Permutation":
        """Embed into a larger degree, relabelling point ``i`` as ``i + shift``."""
        img = list(range(degree))
        for i, j in enumerate(self.images):
            img[i + shift] = j + shift
        return Permutation(tuple(img))

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation({self}, degree={self.degree})"
