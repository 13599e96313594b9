"""Structural invariants: series, Sylow and Fitting theory, nonsoluble length."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from sympy import factorint, isprime

from .subgroups import (
    GroupLike, SubgroupHandle, closure_mask, commutator_subgroup, core, derived_subgroup,
    from_mask, full, is_normal, join, normal_closure, normal_subgroups, normalizer,
    quotient, trivial, conjugacy_classes,
)


@dataclass
class SeriesReport:
    kind: str
    terms: list[SubgroupHandle]
    terminal: bool
    length: int | None
    notes: dict = field(default_factory=dict)

    def orders(self) -> list[int]:
        return [H.order() for H in self.terms]


def prime_divisors(n: int) -> list[int]:
    return sorted(factorint(n)) if n > 1 else []


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


# -- series -----------------------------------------------------------------

def derived_series(G: GroupLike) -> SeriesReport:
    G = full(G)
    terms = [G]
    while True:
        D = derived_subgroup(terms[-1])
        if D == terms[-1]:
            break
        terms.append(D)
    terminal = terms[-1].is_trivial()
    return SeriesReport("derived", terms, terminal, len(terms) - 1 if terminal else None)


def lower_central_series(G: GroupLike) -> SeriesReport:
    G = full(G)
    terms = [G]
    while True:
        C = commutator_subgroup(G, terms[-1], G)
        if C == terms[-1]:
            break
        terms.append(C)
    terminal = terms[-1].is_trivial()
    return SeriesReport("lower_central", terms, terminal, len(terms) - 1 if terminal else None)


def lift(G: SubgroupHandle, N: SubgroupHandle, fn) -> SubgroupHandle:
    """Preimage in G of fn(G/N); fn maps a group to a subgroup handle of it."""
    if N.is_trivial():
        return fn(G)
    Q, proj = quotient(G, N)
    return proj.preimage(fn(Q))


def upper_fitting_series(G: GroupLike) -> SeriesReport:
    """1 = F_0 < F_1 < ... with F_i/F_{i-1} = Fit(G/F_{i-1})."""
    G = full(G)
    terms = [trivial(G)]
    while terms[-1] != G:
        F = lift(G, terms[-1], fitting_subgroup)
        if F == terms[-1]:
            break
        terms.append(F)
    terminal = terms[-1] == G
    return SeriesReport("upper_fitting", terms, terminal, len(terms) - 1 if terminal else None)


def structure_series(G: GroupLike, kind: str) -> SeriesReport:
    kinds = {
        "derived": derived_series,
        "lower_central": lower_central_series,
        "upper_fitting": upper_fitting_series,
        "nonsoluble_layers": nonsoluble_layers,
    }
    if kind not in kinds:
        raise ValueError(f"unknown series kind {kind!r}")
    return kinds[kind](G)


def derived_length(G: GroupLike) -> int | None:
    return derived_series(G).length


def fitting_height(G: GroupLike) -> int | None:
    return upper_fitting_series(G).length


# -- Sylow and Fitting --------------------------------------------------------

def sylow_subgroup(G: GroupLike, p: int) -> SubgroupHandle:
    """A Sylow p-subgroup, grown one normalizing p-element at a time.

    If P is a p-subgroup that is not Sylow then p divides |N(P)/P|, so some
    g in N(P) \\ P has g^p in P and <P, g> has order p|P|.  The smallest such g
    (in canonical element order) is taken at each step, making the result
    deterministic.
    """
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    G = full(G)
    t = G.host.table
    target = p_part(G.order(), p)
    P = trivial(G)
    while P.order() < target:
        Nm = normalizer(G, P)
        cand = Nm.indices[~P.mask[Nm.indices]]
        powers = np.array([t.power(int(g), p) for g in cand], dtype=np.int64)
        g = int(cand[P.mask[powers]][0])
        idx = np.concatenate([P.gen_indices, [g]])
        P = SubgroupHandle(G.host, [t.perms[i] for i in idx], closure_mask(t, idx, P.mask))
    return P


def p_core(G: GroupLike, p: int) -> SubgroupHandle:
    G = full(G)
    return core(G, sylow_subgroup(G, p))


def fitting_subgroup(G: GroupLike) -> SubgroupHandle:
    """Fit(G) as the product of the p-cores."""
    G = full(G)
    cores = [p_core(G, p) for p in prime_divisors(G.order())]
    return join(trivial(G), *cores)


@lru_cache(maxsize=None)
def _prime_of(n: int) -> int:
    # the prime of a prime power, 1 for n = 1, 0 otherwise
    f = factorint(n)
    return next(iter(f)) if len(f) == 1 else (1 if n == 1 else 0)


def is_nilpotent(G: GroupLike) -> bool:
    """Elements of coprime prime-power orders commute (equivalent to nilpotency)."""
    G = full(G)
    t = G.host.table
    idx = G.indices
    orders = t.orders[idx]
    primes = np.array([_prime_of(int(o)) for o in orders])
    keep = primes > 1
    idx, primes = idx[keep], primes[keep]
    if not idx.size:
        return True
    clash = primes[:, None] != primes[None, :]
    return bool((t.comm[np.ix_(idx, idx)][clash] == 0).all())


def is_nilpotent_by_sylow(G: GroupLike) -> bool:
    """Every Sylow subgroup normal; the slow oracle for :func:`is_nilpotent`."""
    G = full(G)
    return all(is_normal(sylow_subgroup(G, p), G) for p in prime_divisors(G.order()))


def is_soluble(G: GroupLike) -> bool:
    return derived_series(G).terminal


def is_metanilpotent(G: GroupLike) -> bool:
    G = full(G)
    Q, _ = quotient(G, fitting_subgroup(G))
    return is_nilpotent(Q)


def is_perfect(G: GroupLike) -> bool:
    G = full(G)
    return derived_subgroup(G) == G


def is_simple(G: GroupLike) -> bool:
    G = full(G)
    if G.order() == 1:
        return False
    for cls in conjugacy_classes(G)[1:]:
        if normal_closure(G, [int(cls[0])]) != G:
            return False
    return True


def is_abelian(G: GroupLike) -> bool:
    G = full(G)
    g = G.gen_indices
    if not g.size:
        return True
    return bool((G.host.table.comm[np.ix_(g, g)] == 0).all())


def classify(G: GroupLike) -> dict[str, bool]:
    G = full(G)
    return {
        "abelian": is_abelian(G),
        "nilpotent": is_nilpotent(G),
        "soluble": is_soluble(G),
        "metanilpotent": is_metanilpotent(G),
        "perfect": is_perfect(G),
        "simple": is_simple(G),
    }


# -- soluble radical and nonsoluble length ----------------------------------

def soluble_radical(G: GroupLike) -> SubgroupHandle:
    """Join of the soluble normal closures of single conjugacy classes."""
    G = full(G)
    R = trivial(G)
    for cls in conjugacy_classes(G)[1:]:
        x = int(cls[0])
        if R.mask[x]:
            continue
        N = normal_closure(G, [x])
        if is_soluble(N):
            R = join(R, N)
    return R


def minimal_normal_subgroups(G: GroupLike) -> list[SubgroupHandle]:
    normals = [N for N in normal_subgroups(G) if not N.is_trivial()]
    return [N for N in normals if not any(M != N and M <= N for M in normals)]


def socle(G: GroupLike) -> SubgroupHandle:
    G = full(G)
    return join(trivial(G), *minimal_normal_subgroups(G))


def nonsoluble_layers(G: GroupLike) -> SeriesReport:
    """Radical/socle peeling R_0 <= S_1 <= R_1 <= ... <= G.

    R_k/S_k is the soluble radical of G/S_k and S_{k+1}/R_k is the socle of
    G/R_k, a direct product of nonabelian simple groups.  The number of socle
    layers is the nonsoluble length.
    """
    G = full(G)
    terms = []
    lam = 0
    bottom = trivial(G)
    while True:
        R = lift(G, bottom, soluble_radical)
        terms.append(R)
        if R == G:
            break
        S = lift(G, R, socle)
        terms.append(S)
        lam += 1
        bottom = S
    return SeriesReport("nonsoluble_layers", terms, True, lam)


def nonsoluble_length(G: GroupLike) -> int:
    return nonsoluble_layers(G).length


def perfect_core(G: GroupLike) -> SubgroupHandle:
    """G^(infinity), the last term of the derived series."""
    return derived_series(G).terms[-1]


def t_subgroup(G: GroupLike) -> SubgroupHandle:
    """Intersection of the normal N with lambda(G/N) <= 1."""
    G = full(G)
    mask = G.mask.copy()
    for N in normal_subgroups(G):
        Q, _ = quotient(G, N)
        if nonsoluble_length(Q) <= 1:
            mask &= N.mask
    return from_mask(G.host, mask)


def t_series(G: GroupLike) -> list[SubgroupHandle]:
    """T_1 = G^(infinity), T_{i+1} = T(T_i), stopping at the trivial group.

    Each T_i is computed inside its own permutation group so that normality
    refers to T_i itself.
    """
    G = full(G)
    host = G.host
    out = []
    T = perfect_core(G)
    while not T.is_trivial():
        out.append(T)
        sub = full(T.group)
        nxt = t_subgroup(sub)
        T = SubgroupHandle(host, nxt.gens)
    return out


def nonsoluble_length_via_t(G: GroupLike) -> int:
    return len(t_series(G))
