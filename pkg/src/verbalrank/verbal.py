"""Word values and verbal subgroups inside a permutation group.

For a multilinear commutator word the indeterminates of ``[a, b]`` are
disjoint, so the value set factorises::

    values([a, b]) = { [u, v] : u in values(a), v in values(b) }

where each leaf ranges over its own argument set.  Evaluating bottom-up over
sets gives exactly ``{w(g_1, ..., g_n)}`` at a cost of sum |A||B| commutator
lookups instead of |G|^n word evaluations.  The budget counts those lookups.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import BudgetExceeded
from .groups import PermGroup
from .perms import Permutation
from .rng import LCG64
from .structure import derived_series
from .subgroups import GroupLike, SubgroupHandle, closure_mask, from_mask, full, join, normal_closure
from .words import Leaf, Node, Vertex, WordTree, substitute_derived

TUPLE_BUDGET = 10 ** 8


@dataclass
class ValueSet:
    """Values of a word in a group.

    ``indices`` holds host-table indices when the host has a table; ``perms``
    is used for sampled values in larger hosts.
    """
    group: SubgroupHandle
    word: str
    indices: np.ndarray | None
    mode: str
    seed: int | None = None
    draws: int | None = None
    evaluations: int = 0
    perms: list[Permutation] = field(default_factory=list)

    @property
    def exhaustive(self) -> bool:
        return self.mode == "exhaustive"

    @property
    def elements(self) -> frozenset[int]:
        return frozenset(self.indices.tolist())

    def __len__(self) -> int:
        return len(self.indices) if self.indices is not None else len(self.perms)

    def as_perms(self) -> list[Permutation]:
        if self.indices is None:
            return list(self.perms)
        host = self.group.host
        return [host.element(i) for i in self.indices]

    def dump(self) -> list[str]:
        """Sorted element list in cycle notation."""
        return [str(p) for p in sorted(self.as_perms())]


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self, n: int) -> None:
        self.used += n
        if self.used > self.limit:
            raise BudgetExceeded(f"exhaustive evaluation needs more than {self.limit} steps")


def _eval_sets(t, v: Vertex, leaf_set: Callable[[int], np.ndarray], budget: _Budget) -> np.ndarray:
    if isinstance(v, Leaf):
        return leaf_set(v.index)
    A = _eval_sets(t, v.left, leaf_set, budget)
    B = _eval_sets(t, v.right, leaf_set, budget)
    budget.spend(A.size * B.size)
    return np.unique(t.comm[np.ix_(A, B)])


def _eval_tuple(v: Vertex, args) -> Permutation:
    if isinstance(v, Leaf):
        return args[v.index - 1]
    return _eval_tuple(v.left, args).comm(_eval_tuple(v.right, args))


def evaluate(w: WordTree, args: Sequence[Permutation]) -> Permutation:
    """w(g_1, ..., g_n) for explicit permutations."""
    if len(args) != w.n:
        raise ValueError(f"{w} takes {w.n} arguments, got {len(args)}")
    return _eval_tuple(w.root, list(args))


def values_from_sets(G: GroupLike, w: WordTree, leaf_sets: Sequence, budget: int = TUPLE_BUDGET,
                     label: str | None = None) -> ValueSet:
    """{w(y_1, ..., y_n) : y_j in leaf_sets[j-1]} by bottom-up set evaluation."""
    G = full(G)
    t = G.host.table
    arrays = [np.unique(np.asarray(s, dtype=np.int64)) for s in leaf_sets]
    if len(arrays) != w.n:
        raise ValueError("one argument set per indeterminate required")
    b = _Budget(budget)
    vals = _eval_sets(t, w.root, lambda j: arrays[j - 1], b)
    return ValueSet(G, label or str(w), vals, "exhaustive", evaluations=b.used)


def w_values(G: GroupLike, w: WordTree, mode: str = "exhaustive", budget: int = TUPLE_BUDGET,
             seed: int = 1, draws: int = 1000) -> ValueSet:
    """The set G_w of w-values (exact), or a reproducible random sample of it."""
    G = full(G)
    if mode == "exhaustive":
        return values_from_sets(G, w, [G.indices] * w.n, budget)
    if mode == "sampled":
        return _sample_values(G, w, seed, draws)
    raise ValueError(f"unknown mode {mode!r}")


def _sample_values(G: SubgroupHandle, w: WordTree, seed: int, draws: int) -> ValueSet:
    rng = LCG64(seed)
    host = G.host
    if host.is_small:
        t = host.table
        pool = G.indices
        out = set()
        for _ in range(draws):
            args = [t.perms[pool[rng.randbelow(pool.size)]] for _ in range(w.n)]
            out.add(t.index(evaluate(w, args)))
        return ValueSet(G, str(w), np.array(sorted(out), dtype=np.int64), "sampled",
                        seed, draws, draws)
    grp = G.group
    vals = {evaluate(w, [grp.random_element(rng) for _ in range(w.n)]) for _ in range(draws)}
    return ValueSet(G, str(w), None, "sampled", seed, draws, draws, perms=sorted(vals))


def _generated_by(G: SubgroupHandle, idx: np.ndarray) -> SubgroupHandle:
    t = G.host.table
    return from_mask(G.host, closure_mask(t, idx), hint=idx)


def verbal_subgroup(G: GroupLike, w: WordTree, mode: str = "exhaustive",
                    budget: int = TUPLE_BUDGET, seed: int = 1, draws: int = 1000):
    """(w(G), verified).

    Sampled mode takes the normal closure of sampled values, then checks a
    second independent sample for membership, absorbing any stragglers.  It
    never reports verified=True.
    """
    G = full(G)
    vs = w_values(G, w, mode, budget, seed, draws)
    if vs.exhaustive:
        return _generated_by(G, vs.indices), True
    gens = vs.as_perms()
    N = normal_closure(G, gens)
    check = _sample_values(G, w, seed ^ 0x9E3779B97F4A7C15, draws)
    extra = [g for g in check.as_perms() if not N.contains(g)]
    if extra:
        N = normal_closure(G, gens + extra)
    return N, False


def subgroup_from_values(vs: ValueSet) -> SubgroupHandle:
    return _generated_by(vs.group, vs.indices)


def commutator_closure(G: GroupLike, X) -> np.ndarray:
    """Smallest superset of X closed under taking commutators, as sorted indices."""
    G = full(G)
    t = G.host.table
    cur = np.unique(np.asarray([x if isinstance(x, (int, np.integer)) else t.index(x) for x in X],
                               dtype=np.int64))
    while True:
        new = np.union1d(cur, t.comm[np.ix_(cur, cur)].ravel()) if cur.size else cur
        if new.size == cur.size:
            return cur
        cur = new


def is_commutator_closed(G: GroupLike, X: np.ndarray) -> bool:
    t = full(G).host.table
    X = np.asarray(X, dtype=np.int64)
    return bool(np.isin(t.comm[np.ix_(X, X)], X).all())


def values_from_set(G: GroupLike, X, w: WordTree, budget: int = TUPLE_BUDGET) -> ValueSet:
    """X_w = {w(y_1, ..., y_n) : y_j in X}."""
    X = np.asarray(list(X), dtype=np.int64)
    return values_from_sets(G, w, [X] * w.n, budget, label=f"{w} over X")


# -- tuple-indexed verbal subgroups --------------------------------------------

class DerivedTerms:
    """G^(k) for all k, with indices past the stable point clamped."""

    def __init__(self, G: GroupLike):
        self.series = derived_series(G)
        self.terms = self.series.terms
        self.cap = len(self.terms) - 1

    def __getitem__(self, k: int) -> SubgroupHandle:
        return self.terms[min(k, self.cap)]


def _clamp(i: Sequence[int], cap: int) -> tuple[int, ...]:
    return tuple(min(k, cap) for k in i)


def tuple_verbal(G: GroupLike, w: WordTree, i: Sequence[int], budget: int = TUPLE_BUDGET,
                 terms: DerivedTerms | None = None, cross_check: bool = True) -> SubgroupHandle:
    """w(i): generated by w(g_1, ..., g_n) with g_j in G^(i_j).

    With ``cross_check`` the result is compared with w_i(G) for the extension
    w_i of w; a mismatch raises RuntimeError.
    """
    G = full(G)
    if len(i) != w.n:
        raise ValueError(f"tuple of length {len(i)} for a word in {w.n} indeterminates")
    terms = terms or DerivedTerms(G)
    vs = values_from_sets(G, w, [terms[k].indices for k in i], budget)
    W = subgroup_from_values(vs)
    if cross_check:
        wi = substitute_derived(w, _clamp(i, terms.cap))
        other, _ = verbal_subgroup(G, wi, budget=budget)
        if other != W:
            raise RuntimeError(f"w(i) != w_i(G) for w={w}, i={tuple(i)}")
    return W


def _plus_tuples(i: Sequence[int], cap: int) -> list[tuple[int, ...]]:
    # every j > i dominates some i + e_k, and w(.) is order-reversing
    out = []
    for k in range(len(i)):
        j = list(i)
        j[k] += 1
        out.append(_clamp(j, cap))
    return sorted(set(out))


def tuple_verbal_plus(G: GroupLike, w: WordTree, i: Sequence[int], budget: int = TUPLE_BUDGET,
                      terms: DerivedTerms | None = None, cross_check: bool = False) -> SubgroupHandle:
    """w(i+): product of w(j) over all j > i."""
    G = full(G)
    terms = terms or DerivedTerms(G)
    parts = [tuple_verbal(G, w, j, budget, terms, cross_check) for j in _plus_tuples(i, terms.cap)]
    return join(*parts)


def tuple_verbal_plus_exhaustive(G: GroupLike, w: WordTree, i: Sequence[int],
                                 budget: int = TUPLE_BUDGET) -> SubgroupHandle:
    """w(i+) as the join over every j > i in the box {0..cap+1}^n; oracle for the fast path."""
    import itertools

    G = full(G)
    terms = DerivedTerms(G)
    top = terms.cap + 1
    parts = []
    for j in itertools.product(range(top + 1), repeat=len(i)):
        if all(a >= b for a, b in zip(j, i)) and tuple(j) != tuple(i):
            parts.append(tuple_verbal(G, w, j, budget, terms, cross_check=False))
    return join(*parts)


# -- primes and power words ------------------------------------------------------

def is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def p_partition(vs: ValueSet, p: int) -> tuple[np.ndarray, np.ndarray]:
    """(X_{w,p}, Y_{w,p}): the p-elements among the values, and their conjugacy closure."""
    if not vs.exhaustive:
        raise ValueError("p_partition needs an exhaustive value set")
    G = vs.group
    t = G.host.table
    orders = t.orders[vs.indices]
    X = vs.indices[np.array([is_p_power(int(o), p) for o in orders], dtype=bool)]
    gs = G.indices
    if X.size:
        Y = np.unique(t.mul[t.mul[t.inv[gs][:, None], X[None, :]], gs[:, None]])
    else:
        Y = X
    return X, Y


def power_all(t, xs: np.ndarray, k: int) -> np.ndarray:
    out = np.zeros_like(xs)
    base = xs.copy()
    while k:
        if k & 1:
            out = t.mul[out, base]
        base = t.mul[base, base]
        k >>= 1
    return out.astype(np.int64)


def power_values(G: GroupLike, n: int) -> ValueSet:
    """{g^n : g in G}."""
    if n < 1:
        raise ValueError("n must be positive")
    G = full(G)
    t = G.host.table
    vals = np.unique(power_all(t, G.indices, n))
    return ValueSet(G, f"x^{n}", vals, "exhaustive", evaluations=G.order())


def power_verbal(G: GroupLike, n: int) -> SubgroupHandle:
    return subgroup_from_values(power_values(G, n))


def is_inverse_closed(vs: ValueSet) -> bool:
    t = vs.group.host.table
    return bool(np.isin(t.inv[vs.indices], vs.indices).all())


def is_conjugation_closed(vs: ValueSet) -> bool:
    t = vs.group.host.table
    gs = vs.group.gen_indices
    if not gs.size:
        return True
    conj = t.mul[t.mul[t.inv[gs][:, None], vs.indices[None, :]], gs[:, None]]
    return bool(np.isin(conj, vs.indices).all())
