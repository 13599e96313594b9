"""Named groups, constructions, and the group file format.

Group files look like::

    degree: 4
    gens:
    (1 2)
    (1 2 3 4)

Blank lines and lines starting with ``#`` are ignored; the identity is ``()``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from sympy import isprime

from .groups import PermGroup
from .perms import Permutation


def _cycle(n: int, degree: int | None = None) -> Permutation:
    return Permutation.from_cycles([range(1, n + 1)], degree or n)


def cyclic(n: int) -> PermGroup:
    if n == 1:
        return PermGroup(1, [])
    return PermGroup(n, [_cycle(n)])


def dihedral(n: int) -> PermGroup:
    """Dihedral group of order 2n; n = 2 gives the Klein four-group on 4 points."""
    if n == 2:
        return elementary_abelian(2, 2)
    if n < 2:
        raise ValueError("dihedral needs n >= 2")
    refl = Permutation.from_images([1] + list(range(n, 1, -1)))
    return PermGroup(n, [_cycle(n), refl])


def symmetric(n: int) -> PermGroup:
    if n == 1:
        return PermGroup(1, [])
    if n == 2:
        return cyclic(2)
    return PermGroup(n, [Permutation.from_cycles([[1, 2]], n), _cycle(n)])


def alternating(n: int) -> PermGroup:
    if n <= 2:
        return PermGroup(max(n, 1), [])
    gens = [Permutation.from_cycles([[1, 2, k]], n) for k in range(3, n + 1)]
    return PermGroup(n, gens)


def elementary_abelian(p: int, k: int) -> PermGroup:
    """C_p^k acting on k disjoint blocks of p points."""
    deg = p * k
    gens = [Permutation.from_cycles([range(b * p + 1, b * p + p + 1)], deg) for b in range(k)]
    return PermGroup(max(deg, 1), gens)


def direct_product(A: PermGroup, B: PermGroup) -> PermGroup:
    """A x B acting on the disjoint union of the two point sets."""
    deg = A.degree + B.degree
    gens = [g.extend(deg) for g in A.generators]
    gens += [g.extend(deg, shift=A.degree) for g in B.generators]
    return PermGroup(deg, gens)


def quaternion() -> PermGroup:
    """Q8 in its regular representation."""
    i = Permutation.from_cycles([[1, 2, 3, 4], [5, 6, 7, 8]], 8)
    j = Permutation.from_cycles([[1, 5, 3, 7], [2, 8, 4, 6]], 8)
    return PermGroup(8, [i, j])


def _matrix_group_on_vectors(mats, p: int) -> PermGroup:
    vecs = [v for v in itertools.product(range(p), repeat=2) if any(v)]
    pos = {v: k for k, v in enumerate(vecs)}
    gens = []
    for (a, b), (c, d) in mats:
        img = [pos[((a * x + b * y) % p, (c * x + d * y) % p)] for x, y in vecs]
        gens.append(Permutation(tuple(img)))
    return PermGroup(len(vecs), gens)


def sl23() -> PermGroup:
    """SL(2,3) acting on the 8 nonzero vectors of F_3^2."""
    return _matrix_group_on_vectors([((1, 1), (0, 1)), ((1, 0), (1, 1))], 3)


def psl2(q: int) -> PermGroup:
    """PSL(2,q), q an odd prime, on the q+1 points of the projective line."""
    if not isprime(q) or q == 2:
        raise ValueError("psl2 expects an odd prime")
    inf = q
    squares = sorted({x * x % q for x in range(1, q)})
    gen_sq = next(s for s in squares if s != 1) if len(squares) > 1 else 1

    def mobius(a, b, c, d):
        img = []
        for x in range(q + 1):
            if x == inf:
                img.append(inf if c == 0 else a * pow(c, -1, q) % q)
                continue
            num, den = (a * x + b) % q, (c * x + d) % q
            img.append(inf if den == 0 else num * pow(den, -1, q) % q)
        return Permutation(tuple(img))

    gens = [mobius(1, 1, 0, 1), mobius(gen_sq, 0, 0, 1), mobius(0, q - 1, 1, 0)]
    return PermGroup(q + 1, [g for g in gens if not g.is_identity()])


def frobenius_affine(p: int, k: int) -> PermGroup:
    """C_p x| C_k acting on Z/p by x -> x+1 and x -> r x, r of order k."""
    r = next(a for a in range(1, p) if pow(a, k, p) == 1 and all(pow(a, j, p) != 1 for j in range(1, k)))
    t = Permutation(tuple((x + 1) % p for x in range(p)))
    m = Permutation(tuple(r * x % p for x in range(p)))
    return PermGroup(p, [t, m])


# -- finite fields and the Frobenius family ---------------------------------

class GF:
    """GF(p^m) with elements coded as integers sum c_k p^k."""

    def __init__(self, p: int, m: int):
        if not isprime(p) or m < 1:
            raise ValueError("GF needs a prime p and m >= 1")
        self.p, self.m, self.q = p, m, p ** m
        self.modulus = self._irreducible()
        self.primitive = next(x for x in range(1, self.q) if self.mult_order(x) == self.q - 1)

    def _coeffs(self, x: int) -> list[int]:
        return [(x // self.p ** k) % self.p for k in range(self.m)]

    def _code(self, cs) -> int:
        return sum(c * self.p ** k for k, c in enumerate(cs))

    def _polymulmod(self, a, b, mod) -> list[int]:
        p, m = self.p, len(mod) - 1
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
        for d in range(len(prod) - 1, m - 1, -1):
            c = prod[d]
            if c:
                for k in range(m + 1):
                    prod[d - m + k] = (prod[d - m + k] - c * mod[k]) % p
        return (prod + [0] * m)[:m]

    def _irreducible(self) -> list[int]:
        # first monic polynomial of degree m with no factor of degree <= m/2
        p, m = self.p, self.m
        if m == 1:
            return [0, 1]
        for tail in itertools.product(range(p), repeat=m):
            f = list(tail) + [1]
            if f[0] == 0:
                continue
            if all(self._has_remainder(f, list(g) + [1])
                   for d in range(1, m // 2 + 1) for g in itertools.product(range(p), repeat=d)):
                return f
        raise RuntimeError("no irreducible polynomial found")

    def _has_remainder(self, f, g) -> bool:
        r = list(f)
        dg = len(g) - 1
        for d in range(len(r) - 1, dg - 1, -1):
            c = r[d]
            if c:
                for k in range(dg + 1):
                    r[d - dg + k] = (r[d - dg + k] - c * g[k]) % self.p
        return any(r[:dg])

    def add(self, x: int, y: int) -> int:
        return self._code([(a + b) % self.p for a, b in zip(self._coeffs(x), self._coeffs(y))])

    def mul(self, x: int, y: int) -> int:
        return self._code(self._polymulmod(self._coeffs(x), self._coeffs(y), self.modulus))

    def power(self, x: int, k: int) -> int:
        out = 1
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def mult_order(self, x: int) -> int:
        y, k = x, 1
        while y != 1:
            y = self.mul(y, x)
            k += 1
            if k > self.q:
                return 0
        return k


@dataclass
class FrobeniusData:
    group: PermGroup
    kernel_gens: list[Permutation]
    complement_gen: Permutation
    complement_order: int
    field: GF


def coprime_part(a: int, n: int) -> int:
    """Largest divisor of a coprime to n."""
    g = math.gcd(a, n)
    while g > 1:
        a //= g
        g = math.gcd(a, n)
    return a


def frobenius_group(p: int, m: int, n: int | None = None) -> FrobeniusData:
    """F x| K with F = (GF(p^m), +) and K the n'-part of GF(p^m)^*.

    The group acts on the p^m field elements (point = code + 1): F by
    translations along a basis, K by multiplication with a generator.
    """
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    n = p if n is None else n
    if n % p:
        raise ValueError(f"p={p} must divide n={n} so that F^n = 1")
    F = GF(p, m)
    k_order = coprime_part(F.q - 1, n)
    if k_order == 1:
        raise ValueError(f"complement would be trivial for (p, m, n) = ({p}, {m}, {n})")
    kappa = F.power(F.primitive, (F.q - 1) // k_order)
    kernel = [Permutation(tuple(F.add(x, p ** b) for x in range(F.q))) for b in range(m)]
    comp = Permutation(tuple(F.mul(x, kappa) for x in range(F.q)))
    return FrobeniusData(PermGroup(F.q, kernel + [comp]), kernel, comp, k_order, F)


# -- group files ---------------------------------------------------------------

def parse_group_text(text: str) -> PermGroup:
    degree = None
    gens: list[Permutation] = []
    in_gens = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("degree:"):
            try:
                degree = int(line.split(":", 1)[1])
            except ValueError:
                raise ValueError(f"line {lineno}: bad degree") from None
            continue
        if line.startswith("gens:"):
            if degree is None:
                raise ValueError(f"line {lineno}: 'gens:' before 'degree:'")
            in_gens = True
            rest = line.split(":", 1)[1].strip()
            if rest:
                gens.append(Permutation.parse(rest, degree))
            continue
        if not in_gens:
            raise ValueError(f"line {lineno}: unexpected {line!r}")
        try:
            gens.append(Permutation.parse(line, degree))
        except ValueError as e:
            raise ValueError(f"line {lineno}: {e}") from None
    if degree is None:
        raise ValueError("missing 'degree:' header")
    return PermGroup(degree, gens)


def read_group_file(path) -> PermGroup:
    return parse_group_text(Path(path).read_text())


def format_group(G: PermGroup) -> str:
    lines = [f"degree: {G.degree}", "gens:"]
    lines += [str(g) for g in G.generators]
    return "\n".join(lines) + "\n"


# -- catalog ------------------------------------------------------------------

@dataclass
class CatalogEntry:
    name: str
    recipe: str
    expected_order: int
    build: Callable[[], PermGroup]

    def construct(self) -> PermGroup:
        G = self.build()
        if G.order() != self.expected_order:
            raise RuntimeError(f"{self.name}: order {G.order()} != expected {self.expected_order}")
        return G


def _entries() -> dict[str, CatalogEntry]:
    e = {}

    def add(name, recipe, order, build):
        e[name] = CatalogEntry(name, recipe, order, build)

    add("C2", "cyclic 2", 2, lambda: cyclic(2))
    add("C6", "cyclic 6", 6, lambda: cyclic(6))
    add("V4", "elementary_abelian 2 2", 4, lambda: elementary_abelian(2, 2))
    add("S3", "symmetric 3", 6, lambda: symmetric(3))
    add("D8", "dihedral 4", 8, lambda: dihedral(4))
    add("Q8", "quaternion", 8, quaternion)
    add("A4", "alternating 4", 12, lambda: alternating(4))
    add("S4", "symmetric 4", 24, lambda: symmetric(4))
    add("SL(2,3)", "sl23", 24, sl23)
    add("C3^2:C8", "semidirect 3 2", 72, lambda: frobenius_group(3, 2, 3).group)
    for n in range(3, 17):
        if n != 4:
            add(f"D{2 * n}", f"dihedral {n}", 2 * n, lambda n=n: dihedral(n))
    for k in (1, 2, 3, 4):
        add(f"C2^{k}", f"elementary_abelian 2 {k}", 2 ** k, lambda k=k: elementary_abelian(2, k))
    add("S3xC4", "direct_product S3 C4", 24, lambda: direct_product(symmetric(3), cyclic(4)))
    add("F20", "semidirect affine 5 4", 20, lambda: frobenius_affine(5, 4))
    add("F21", "semidirect affine 7 3", 21, lambda: frobenius_affine(7, 3))
    add("A5", "alternating 5", 60, lambda: alternating(5))
    add("S5", "symmetric 5", 120, lambda: symmetric(5))
    add("PSL(2,7)", "psl 2 7", 168, lambda: psl2(7))
    add("PSL(2,5)", "psl 2 5", 60, lambda: psl2(5))
    add("A5xS4", "direct_product A5 S4", 1440, lambda: direct_product(alternating(5), symmetric(4)))
    add("S4xC2", "direct_product S4 C2", 48, lambda: direct_product(symmetric(4), cyclic(2)))
    return e


CATALOG = _entries()

SMOKE = ["C2", "C6", "V4", "S3", "D8", "Q8", "A4", "S4", "SL(2,3)", "C3^2:C8"]
FULL = SMOKE + [
    "D10", "D12", "D14", "D16", "D18", "D20", "D22", "D24", "D26", "D28", "D30", "D32",
    "C2^1", "C2^2", "C2^3", "C2^4", "S3xC4", "F20", "F21", "S4xC2",
    "A5", "PSL(2,5)", "S5", "PSL(2,7)", "A5xS4",
]


def get_group(name: str) -> PermGroup:
    """A catalog group by name, or a recipe such as ``symmetric 4`` or ``file:path``."""
    if name in CATALOG:
        return CATALOG[name].construct()
    return build_recipe(name)


def build_recipe(recipe: str) -> PermGroup:
    if recipe.startswith("file:"):
        return read_group_file(recipe[5:])
    parts = recipe.split()
    kind, args = parts[0], parts[1:]
    try:
        if kind == "cyclic":
            return cyclic(int(args[0]))
        if kind == "dihedral":
            return dihedral(int(args[0]))
        if kind == "symmetric":
            return symmetric(int(args[0]))
        if kind == "alternating":
            return alternating(int(args[0]))
        if kind == "elementary_abelian":
            return elementary_abelian(int(args[0]), int(args[1]))
        if kind == "direct_product":
            return direct_product(get_group(args[0]), get_group(args[1]))
        if kind == "semidirect":
            p, m = int(args[0]), int(args[1])
            n = int(args[2]) if len(args) > 2 else p
            return frobenius_group(p, m, n).group
        if kind == "quaternion":
            return quaternion()
        if kind == "sl23":
            return sl23()
        if kind == "psl":
            return psl2(int(args[1]))
    except (IndexError, ValueError) as e:
        raise ValueError(f"bad group recipe {recipe!r}: {e}") from None
    raise ValueError(f"unknown group {recipe!r}")


def build_catalog(profile: str = "smoke") -> list[tuple[str, PermGroup]]:
    if profile == "smoke":
        names = SMOKE
    elif profile == "full":
        names = FULL
    else:
        raise ValueError(f"unknown profile {profile!r}")
    return [(name, CATALOG[name].construct()) for name in names]


# -- corpus words -------------------------------------------------------------

CORPUS_WORDS = [
    "gamma2",
    "gamma3",
    "gamma4",
    "delta2",
    "[x1,[x2,x3]]",
    "[x1,[x2,x3],x4]",
    "[[x1,x2,x3],[x4,x5]]",
    "[[x1,x2],[x3,x4,x5]]",
    "[[x1,x2],[x3,x4],x5]",
    "[[x1,x2,x3],[x4,x5,x6]]",
]
