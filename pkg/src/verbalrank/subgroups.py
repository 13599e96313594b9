"""Subgroups of a host permutation group and the basic operations on them.

A :class:`SubgroupHandle` is a subgroup given by generators inside a host
group.  When the host has an element table the handle also carries its
element set as host indices, and all operations below work on boolean masks
over the table.  Hosts above the table cap fall back to stabilizer-chain
arithmetic for the few operations that make sense there (generation, normal
closure, commutator subgroups).
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import NotNormal
from .groups import PermGroup
from .perms import Permutation


class SubgroupHandle:
    def __init__(self, host: PermGroup, gens: Sequence[Permutation], elements=None):
        self.host = host
        self.gens = tuple(g for g in gens if not g.is_identity())
        if elements is None and host.is_small:
            t = host.table
            idx = np.array([t.index(g) for g in self.gens], dtype=np.int64)
            elements = closure_mask(t, idx)
        if elements is not None and not isinstance(elements, np.ndarray):
            m = np.zeros(host.table.size, dtype=bool)
            m[list(elements)] = True
            elements = m
        self._mask = elements

    # -- views ------------------------------------------------------------

    @property
    def mask(self) -> np.ndarray:
        if self._mask is None:
            raise ValueError("element set unavailable: host exceeds table cap")
        return self._mask

    @cached_property
    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    @cached_property
    def elements(self) -> frozenset[int]:
        return frozenset(self.indices.tolist())

    @cached_property
    def group(self) -> PermGroup:
        return PermGroup(self.host.degree, self.gens)

    @cached_property
    def gen_indices(self) -> np.ndarray:
        t = self.host.table
        return np.array([t.index(g) for g in self.gens], dtype=np.int64)

    def order(self) -> int:
        if self._mask is not None:
            return int(self._mask.sum())
        return self.group.order()

    def is_trivial(self) -> bool:
        return self.order() == 1

    def contains(self, g: Union[Permutation, int]) -> bool:
        if isinstance(g, (int, np.integer)):
            return bool(self.mask[g])
        if self._mask is not None:
            try:
                return bool(self._mask[self.host.index(g)])
            except ValueError:
                return False
        return self.group.contains(g)

    __contains__ = contains

    def perms(self) -> list[Permutation]:
        return [self.host.element(i) for i in self.indices]

    def __le__(self, other: "SubgroupHandle") -> bool:
        if self._mask is not None and other._mask is not None:
            return bool(np.all(other._mask[self._mask]))
        return all(other.contains(g) for g in self.gens)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubgroupHandle):
            return NotImplemented
        if self._mask is not None and other._mask is not None:
            return bool(np.array_equal(self._mask, other._mask))
        return self.order() == other.order() and self <= other

    @cached_property
    def key(self) -> bytes:
        return np.packbits(self.mask).tobytes()

    def __hash__(self) -> int:
        return hash(self.key)

    def as_group(self) -> PermGroup:
        return self.group

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.gens) or "()"
        return f"SubgroupHandle(order={self.order()}, gens=[{gens}])"


GroupLike = Union[PermGroup, SubgroupHandle]


def full(G: GroupLike) -> SubgroupHandle:
    if isinstance(G, SubgroupHandle):
        return G
    return SubgroupHandle(G, G.generators)


def closure_mask(table, gens: np.ndarray, start: np.ndarray | None = None) -> np.ndarray:
    """Mask of the subgroup generated by ``gens`` (plus an optional start mask)."""
    mask = np.zeros(table.size, dtype=bool) if start is None else start.copy()
    mask[0] = True
    gens = np.unique(np.asarray(gens, dtype=np.int64))
    if not gens.size:
        return mask
    mask[gens] = True
    frontier = np.flatnonzero(mask)
    while frontier.size:
        new = np.unique(table.mul[np.ix_(frontier, gens)])
        new = new[~mask[new]]
        mask[new] = True
        frontier = new
    return mask


def from_mask(host: PermGroup, mask: np.ndarray, hint: Iterable[int] = ()) -> SubgroupHandle:
    """Handle for a mask known to be a subgroup; generators chosen greedily."""
    t = host.table
    gens: list[int] = []
    cur = np.zeros(t.size, dtype=bool)
    cur[0] = True
    target = int(mask.sum())
    candidates = list(hint) + np.flatnonzero(mask).tolist()
    for i in candidates:
        if cur.sum() == target:
            break
        if not cur[i] and mask[i]:
            gens.append(int(i))
            cur = closure_mask(t, np.array(gens))
    return SubgroupHandle(host, [t.perms[i] for i in gens], cur)


def trivial(G: GroupLike) -> SubgroupHandle:
    host = full(G).host
    return SubgroupHandle(host, [])


def _as_indices(host: PermGroup, S) -> np.ndarray:
    out = []
    for s in S:
        out.append(int(s) if isinstance(s, (int, np.integer)) else host.index(s))
    return np.array(out, dtype=np.int64)


def _check_inside(G: SubgroupHandle, S) -> None:
    for s in S:
        if not G.contains(s):
            raise ValueError(f"element {s} lies outside the host group")


def generated(G: GroupLike, S) -> SubgroupHandle:
    """Smallest subgroup of G containing S (permutations or host indices)."""
    G = full(G)
    S = list(S)
    _check_inside(G, S)
    host = G.host
    if host.is_small:
        idx = _as_indices(host, S)
        mask = closure_mask(host.table, idx)
        return SubgroupHandle(host, [host.element(i) for i in idx], mask)
    return SubgroupHandle(host, S)


def normal_closure(G: GroupLike, S) -> SubgroupHandle:
    G = full(G)
    S = list(S)
    _check_inside(G, S)
    host = G.host
    if not host.is_small:
        N = G.group.normal_closure_of(S)
        return SubgroupHandle(host, N.generators)
    t = host.table
    ggens = G.gen_indices
    gens = np.unique(_as_indices(host, S))
    gens = gens[gens != 0]
    while True:
        mask = closure_mask(t, gens)
        if not gens.size or not ggens.size:
            break
        conj = t.mul[t.mul[t.inv[ggens][:, None], gens[None, :]], ggens[:, None]]
        new = np.unique(conj[~mask[conj]])
        if not new.size:
            break
        gens = np.concatenate([gens, new])
    return SubgroupHandle(host, [t.perms[i] for i in gens], mask)


def commutator_subgroup(G: GroupLike, A: GroupLike, B: GroupLike) -> SubgroupHandle:
    """[A, B]: normal closure in <A, B> of the commutators of generators."""
    G, A, B = full(G), full(A), full(B)
    host = G.host
    if not host.is_small:
        C = host.commutator_with(A.group, B.group)
        return SubgroupHandle(host, C.generators)
    t = host.table
    a, b = A.gen_indices, B.gen_indices
    comms = t.comm[np.ix_(a, b)].ravel() if a.size and b.size else np.array([], dtype=np.int64)
    AB = generated(G, np.concatenate([a, b]))
    return normal_closure(AB, comms)


def derived_subgroup(G: GroupLike) -> SubgroupHandle:
    G = full(G)
    return commutator_subgroup(G, G, G)


def intersection(A: SubgroupHandle, B: SubgroupHandle) -> SubgroupHandle:
    return from_mask(A.host, A.mask & B.mask)


def join(*subs: SubgroupHandle) -> SubgroupHandle:
    host = subs[0].host
    gens = [g for H in subs for g in H.gens]
    if host.is_small:
        t = host.table
        idx = np.concatenate([H.gen_indices for H in subs])
        return SubgroupHandle(host, [t.perms[i] for i in idx], closure_mask(t, idx))
    return SubgroupHandle(host, gens)


def conjugate_elements(t, xs: np.ndarray, gs: np.ndarray) -> np.ndarray:
    """Array [g, x] -> x^g."""
    return t.mul[t.mul[t.inv[gs][:, None], xs[None, :]], gs[:, None]]


def is_normal(N: SubgroupHandle, G: GroupLike) -> bool:
    G = full(G)
    if not N <= G:
        return False
    t = G.host.table
    if not N.gen_indices.size or not G.gen_indices.size:
        return True
    return bool(N.mask[conjugate_elements(t, N.gen_indices, G.gen_indices)].all())


def require_normal(N: SubgroupHandle, G: GroupLike) -> None:
    if not is_normal(N, G):
        raise NotNormal(f"{N} is not normal in {G}")


def normalizer(G: GroupLike, H: SubgroupHandle) -> SubgroupHandle:
    G = full(G)
    t = G.host.table
    gs = G.indices
    ok = np.ones(gs.size, dtype=bool)
    if H.gen_indices.size:
        ok = H.mask[conjugate_elements(t, H.gen_indices, gs)].all(axis=1)
    m = np.zeros(t.size, dtype=bool)
    m[gs[ok]] = True
    return from_mask(G.host, m, hint=G.gen_indices)


def core(G: GroupLike, H: SubgroupHandle) -> SubgroupHandle:
    """Largest normal subgroup of G inside H."""
    G = full(G)
    t = G.host.table
    K = H.mask.copy()
    ggens = G.gen_indices
    if not ggens.size:
        return from_mask(G.host, K)
    while True:
        xs = np.flatnonzero(K)
        ok = K[conjugate_elements(t, xs, ggens)].all(axis=0)
        if ok.all():
            break
        K[xs[~ok]] = False
    return from_mask(G.host, K)


def conjugacy_classes(G: GroupLike) -> list[np.ndarray]:
    """Classes of G as sorted index arrays, ordered by smallest member."""
    G = full(G)
    t = G.host.table
    gs = G.indices
    seen = np.zeros(t.size, dtype=bool)
    out = []
    for x in gs:
        if seen[x]:
            continue
        cls = np.unique(t.mul[t.mul[t.inv[gs], x], gs])
        seen[cls] = True
        out.append(cls)
    return out


def normal_subgroups(G: GroupLike) -> list[SubgroupHandle]:
    """All normal subgroups, as joins of normal closures of single classes."""
    G = full(G)
    host = G.host
    atoms = {}
    for cls in conjugacy_classes(G):
        N = normal_closure(G, [int(cls[0])])
        atoms.setdefault(N.key, N)
    found = {trivial(G).key: trivial(G)}
    frontier = list(found.values())
    atom_list = list(atoms.values())
    while frontier:
        nxt = []
        for N in frontier:
            for A in atom_list:
                if A <= N:
                    continue
                M = join(N, A)
                if M.key not in found:
                    found[M.key] = M
                    nxt.append(M)
        frontier = nxt
    return sort_subgroups(found.values())


def sort_subgroups(subs: Iterable[SubgroupHandle]) -> list[SubgroupHandle]:
    return sorted(subs, key=lambda H: (H.order(), H.indices.tolist()))


class Projection:
    """The natural map G -> G/N realised through the coset action."""

    def __init__(self, G: SubgroupHandle, N: SubgroupHandle, Q: PermGroup,
                 coset_of: np.ndarray, reps: np.ndarray):
        self.source = G
        self.kernel = N
        self.image = Q
        self.coset_of = coset_of  # host index -> coset number (-1 outside G)
        self.reps = reps

    def __call__(self, g: Union[Permutation, int]) -> Permutation:
        t = self.source.host.table
        x = g if isinstance(g, (int, np.integer)) else t.index(g)
        if not self.source.mask[x]:
            raise ValueError("element outside the source group")
        img = self.coset_of[t.mul[self.reps, x]]
        return Permutation(tuple(int(i) for i in img))

    @cached_property
    def _coset_image(self) -> np.ndarray:
        # quotient-table index of the image of each coset
        Qt = self.image.table
        return np.array([Qt.index(self(int(r))) for r in self.reps], dtype=np.int64)

    def subgroup(self, H: SubgroupHandle) -> SubgroupHandle:
        """Image of a subgroup of the source."""
        return SubgroupHandle(self.image, [self(int(i)) for i in H.gen_indices])

    def preimage(self, K: SubgroupHandle) -> SubgroupHandle:
        cosets = np.flatnonzero(K.mask[self._coset_image])
        m = np.isin(self.coset_of, cosets) & self.source.mask
        return from_mask(self.source.host, m, hint=self.kernel.gen_indices)


def quotient(G: GroupLike, N: SubgroupHandle) -> tuple[PermGroup, Projection]:
    """G/N as a permutation group on the right cosets of N."""
    G = full(G)
    require_normal(N, G)
    t = G.host.table
    coset_of = np.full(t.size, -1, dtype=np.int64)
    reps = []
    n_idx = N.indices
    for g in G.indices:
        if coset_of[g] >= 0:
            continue
        coset_of[t.mul[n_idx, g]] = len(reps)
        reps.append(int(g))
    reps = np.array(reps, dtype=np.int64)
    k = len(reps)
    gens = []
    for x in G.gen_indices:
        img = coset_of[t.mul[reps, x]]
        p = Permutation(tuple(int(i) for i in img))
        if not p.is_identity():
            gens.append(p)
    Q = PermGroup(k, gens)
    return Q, Projection(G, N, Q, coset_of, reps)


def center(G: GroupLike) -> SubgroupHandle:
    G = full(G)
    t = G.host.table
    gs = G.gen_indices
    if not gs.size:
        return G
    mask = G.mask.copy()
    mask[G.indices] = (t.comm[np.ix_(G.indices, gs)] == 0).all(axis=1)
    return from_mask(G.host, mask)
