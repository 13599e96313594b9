"""Lattices, d(H), rank and Frattini subgroups."""

import itertools

import numpy as np
import pytest

from verbalrank.catalog import cyclic, elementary_abelian, get_group
from verbalrank.errors import CapExceeded
from verbalrank.lattice import frattini_subgroup, lattice, min_generators, rank, subgroup_lattice
from verbalrank.subgroups import closure_mask, full

from conftest import group

SMALL = ["C2", "C6", "V4", "S3", "D8", "Q8", "A4", "S4", "C2^3", "D12", "F20", "SL(2,3)"]


def brute_subgroups(G, k):
    """Subgroups generated by at most k elements, as element frozensets."""
    t = G.host.table
    out = set()
    for r in range(k + 1):
        for combo in itertools.combinations(G.indices.tolist(), r):
            out.add(frozenset(np.flatnonzero(closure_mask(t, np.array(combo, dtype=np.int64))).tolist()))
    return out


def brute_d(H):
    t = H.host.table
    for k in range(H.order() + 1):
        for combo in itertools.combinations(H.indices.tolist(), k):
            if closure_mask(t, np.array(combo, dtype=np.int64)).sum() == H.order():
                return k


@pytest.mark.parametrize("name", SMALL)
def test_lattice_and_d_oracle(name):
    G = group(name)
    lat = lattice(G)
    r = max(lat.d(H) for H in lat.subgroups)
    assert {H.elements for H in lat.subgroups} == brute_subgroups(G, r)
    for H in lat.subgroups:
        assert G.order() % H.order() == 0
        assert lat.d(H) == brute_d(H)
        assert min_generators(H) == lat.d(H)


def test_examples():
    assert len(subgroup_lattice(group("S4"))) == 30
    assert len(subgroup_lattice(full(cyclic(2)))) == 2
    assert rank(group("S4")) == 2
    assert rank(full(elementary_abelian(2, 3))) == 3
    assert min_generators(group("V4")) == 2
    assert min_generators(group("C6")) == 1


def test_cap():
    with pytest.raises(CapExceeded):
        lattice(group("A5xS4"))


def test_rank_monotone():
    G = group("S4")
    lat = lattice(G)
    for H in lat.subgroups:
        assert rank(H) <= lat.rank()
        assert rank(H) == lat.rank(H)


def test_frattini():
    assert frattini_subgroup(group("S4")).is_trivial()
    assert frattini_subgroup(full(cyclic(4))).order() == 2
    assert frattini_subgroup(group("Q8")).order() == 2
    assert frattini_subgroup(group("D16")).order() == 4


def test_deterministic_order():
    a = [H.indices.tolist() for H in subgroup_lattice(full(get_group("D12")))]
    b = [H.indices.tolist() for H in subgroup_lattice(full(get_group("D12")))]
    assert a == b
