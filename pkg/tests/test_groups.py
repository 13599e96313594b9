"""Stabilizer chains and subgroup operations against brute-force oracles."""

import itertools

import numpy as np
import pytest

from verbalrank.catalog import FULL, get_group, symmetric
from verbalrank.errors import NotNormal
from verbalrank.groups import PermGroup, enumerate_by_closure
from verbalrank.perms import Permutation
from verbalrank.subgroups import (
    center, commutator_subgroup, conjugacy_classes, derived_subgroup, full, generated,
    is_normal, normal_closure, normal_subgroups, quotient, trivial,
)

from conftest import group

SMALL = [n for n in FULL if get_group(n).order() <= 200]


def P(text, n):
    return Permutation.parse(text, n)


@pytest.mark.parametrize("name", FULL)
def test_chain_order_matches_closure(name):
    G = get_group(name)
    assert G.order() == len(enumerate_by_closure(G.degree, G.generators))


def test_examples():
    assert PermGroup(4, [P("(1 2)", 4), P("(1 2 3 4)", 4)]).order() == 24
    assert PermGroup(5, []).order() == 1
    assert PermGroup(5, [P("(1 2 3)", 5), P("(3 4 5)", 5)]).order() == 60


def test_degree_mismatch():
    with pytest.raises(ValueError):
        PermGroup(4, [P("(1 2)", 3)])


def test_membership():
    S4 = symmetric(4)
    A4 = PermGroup(4, [P("(1 2 3)", 4), P("(2 3 4)", 4)])
    assert A4.contains(P("(1 2)(3 4)", 4))
    assert not A4.contains(P("(1 2)", 4))
    assert A4.is_subgroup_of(S4) and not S4.is_subgroup_of(A4)


@pytest.mark.parametrize("name", ["S4", "SL(2,3)", "C3^2:C8", "F20", "D12"])
def test_table_consistent(name):
    G = group(name)
    t = G.host.table
    perms = t.perms
    assert perms[0].is_identity()
    rng = np.random.default_rng(0)
    for a, b in rng.integers(0, t.size, size=(50, 2)):
        assert perms[t.mul[a, b]] == perms[a] * perms[b]
        assert perms[t.comm[a, b]] == perms[a].comm(perms[b])
        assert perms[t.inv[a]] == perms[a].inverse()
        assert t.orders[a] == perms[a].order()


def _all_commutators(G):
    els = G.host.elements()
    return {a.comm(b) for a in els for b in els}


@pytest.mark.parametrize("name", SMALL)
def test_derived_subgroup_oracle(name):
    G = group(name)
    D = derived_subgroup(G)
    oracle = enumerate_by_closure(G.host.degree, sorted(_all_commutators(G)))
    assert D.order() == len(oracle)
    assert all(D.contains(g) for g in oracle)


def test_commutator_symmetric_and_trivial():
    G = group("S4")
    A = generated(G, [P("(1 2 3 4)", 4)])
    B = generated(G, [P("(1 2)", 4)])
    assert commutator_subgroup(G, A, B) == commutator_subgroup(G, B, A)
    T = trivial(G)
    assert commutator_subgroup(G, T, T).is_trivial()


def test_normal_closure_examples():
    G = group("S4")
    V = normal_closure(G, [P("(1 2)(3 4)", 4)])
    assert V.order() == 4
    brute = set()
    for g in G.host.elements():
        brute.add(P("(1 2)(3 4)", 4).conj(g))
    assert {str(x) for x in V.perms() if not x.is_identity()} == {str(x) for x in brute}


def test_outside_element_rejected():
    G = group("A4")
    with pytest.raises(ValueError):
        generated(G, [P("(1 2)", 4)])


@pytest.mark.parametrize("name", ["S4", "D8", "Q8", "SL(2,3)", "A5"])
def test_normal_subgroups_brute(name):
    G = group(name)
    found = {N.key for N in normal_subgroups(G)}
    # any normal subgroup is a union of classes and generated by them
    classes = conjugacy_classes(G)
    t = G.host.table
    brute = set()
    for k in range(len(classes) + 1):
        for combo in itertools.combinations(classes[1:], k):
            idx = np.concatenate([classes[0], *combo])
            mask = np.zeros(t.size, dtype=bool)
            mask[idx] = True
            if mask.sum() and G.order() % mask.sum() == 0:
                H = generated(G, idx)
                if H.order() == mask.sum():
                    brute.add(H.key)
    assert found == brute


def test_quotient():
    G = group("S4")
    V = normal_closure(G, [P("(1 2)(3 4)", 4)])
    Q, proj = quotient(G, V)
    assert Q.order() == 6
    assert any(x * y != y * x for x in Q.generators for y in Q.generators)
    assert quotient(G, G)[0].order() == 1
    assert quotient(G, trivial(G))[0].order() == 24
    A4 = derived_subgroup(G)
    QA = proj.subgroup(A4)
    assert QA.order() == 3
    assert is_normal(QA, full(Q))
    assert proj.preimage(QA) == A4
    with pytest.raises(NotNormal):
        quotient(G, generated(G, [P("(1 2)", 4)]))


def test_center():
    assert center(group("Q8")).order() == 2
    assert center(group("S4")).order() == 1
    assert center(group("C6")).order() == 6
