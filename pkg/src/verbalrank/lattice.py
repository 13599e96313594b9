"""Subgroup lattices, minimal generator counts, rank and Frattini subgroups.

The lattice is enumerated by cyclic extension: starting from the trivial
group, every known subgroup is joined with every cyclic subgroup it does not
contain.  Run breadth-first, the level at which a subgroup is first reached is
the least number of cyclic subgroups whose join it is, i.e. its minimal number
of generators d(H).  So one sweep yields both the lattice and every d(H).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapExceeded
from .subgroups import GroupLike, SubgroupHandle, closure_mask, from_mask, full, sort_subgroups, trivial

LATTICE_CAP = 384


@dataclass
class Lattice:
    group: SubgroupHandle
    subgroups: list[SubgroupHandle]
    min_gens: dict[bytes, int]

    def d(self, H: SubgroupHandle) -> int:
        return self.min_gens[H.key]

    def below(self, H: SubgroupHandle) -> list[SubgroupHandle]:
        return [K for K in self.subgroups if K <= H]

    def rank(self, H: SubgroupHandle | None = None) -> int:
        H = self.group if H is None else H
        return max(self.d(K) for K in self.below(H))

    def maximal_subgroups(self) -> list[SubgroupHandle]:
        G = self.group
        proper = [H for H in self.subgroups if H != G]
        return [M for M in proper if not any(K != M and M <= K for K in proper)]


def _cyclic_subgroups(H: SubgroupHandle) -> list[tuple[int, SubgroupHandle]]:
    t = H.host.table
    seen: dict[bytes, tuple[int, SubgroupHandle]] = {}
    covered = np.zeros(t.size, dtype=bool)
    for g in H.indices[1:]:
        if covered[g]:
            continue
        C = from_mask(H.host, closure_mask(t, np.array([g])), hint=[int(g)])
        # generators of the same cyclic group are covered by this one
        powers_gen = [int(g)]
        for k in range(2, t.orders[g]):
            if np.gcd(k, t.orders[g]) == 1:
                powers_gen.append(t.power(int(g), k))
        covered[powers_gen] = True
        seen.setdefault(C.key, (int(g), C))
    return list(seen.values())


def _sweep(H: SubgroupHandle, stop_at: SubgroupHandle | None = None):
    """Breadth-first cyclic extension inside H; returns {key: (subgroup, level)}."""
    t = H.host.table
    cyclics = _cyclic_subgroups(H)
    triv = trivial(H)
    found = {triv.key: (triv, 0)}
    frontier = [triv]
    level = 0
    while frontier:
        level += 1
        nxt = []
        for K in frontier:
            for g, C in cyclics:
                if K.mask[g]:
                    continue
                idx = np.concatenate([K.gen_indices, [g]])
                m = closure_mask(t, idx, K.mask)
                J = SubgroupHandle(H.host, [t.perms[i] for i in idx], m)
                if J.key not in found:
                    found[J.key] = (J, level)
                    nxt.append(J)
                    if stop_at is not None and J.key == stop_at.key:
                        return found
        frontier = nxt
    return found


def _cache(H: SubgroupHandle) -> dict:
    return H.host.__dict__.setdefault("_lattice_cache", {})


def lattice(G: GroupLike, cap: int = LATTICE_CAP) -> Lattice:
    G = full(G)
    if G.order() > cap:
        raise CapExceeded(f"lattice of a group of order {G.order()} exceeds cap {cap}")
    cache = _cache(G)
    if G.key in cache:
        return cache[G.key]
    found = _sweep(G)
    subs = sort_subgroups(K for K, _ in found.values())
    lat = Lattice(G, subs, {k: lev for k, (_, lev) in found.items()})
    cache[G.key] = lat
    return lat


def subgroup_lattice(G: GroupLike, cap: int = LATTICE_CAP) -> list[SubgroupHandle]:
    """All subgroups of G in canonical order (by order, then element indices)."""
    return lattice(G, cap).subgroups


def min_generators(H: GroupLike) -> int:
    """d(H), the least size of a generating set."""
    H = full(H)
    n = H.order()
    if n == 1:
        return 0
    t = H.host.table
    if (t.orders[H.indices] == n).any():
        return 1
    for lat in _cache(H).values():
        if H.key in lat.min_gens:
            return lat.min_gens[H.key]
    return _sweep(H, stop_at=H)[H.key][1]


def rank(G: GroupLike, cap: int = LATTICE_CAP) -> int:
    """Largest d(H) over all subgroups H of G."""
    return lattice(G, cap).rank()


def frattini_subgroup(G: GroupLike, cap: int = LATTICE_CAP) -> SubgroupHandle:
    G = full(G)
    lat = lattice(G, cap)
    mask = G.mask.copy()
    for M in lat.maximal_subgroups():
        mask &= M.mask
    return from_mask(G.host, mask)
