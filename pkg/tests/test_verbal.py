"""Word values, verbal subgroups, tuple-indexed subgroups and power words."""

import itertools

import numpy as np
import pytest

from verbalrank.catalog import CORPUS_WORDS, FULL, SMOKE, frobenius_group, get_group
from verbalrank.errors import BudgetExceeded
from verbalrank.groups import enumerate_by_closure
from verbalrank.perms import Permutation
from verbalrank.structure import derived_series
from verbalrank.subgroups import full, generated
from verbalrank.verbal import (
    commutator_closure, evaluate, is_commutator_closed, is_conjugation_closed, is_inverse_closed,
    p_partition, power_values, power_verbal, tuple_verbal, tuple_verbal_plus,
    tuple_verbal_plus_exhaustive, values_from_set, verbal_subgroup, w_values,
)
from verbalrank.words import delta, gamma, parse_word, substitute_derived, word_from_spec

from conftest import group


def brute_values(G, w):
    els = G.host.elements()
    return {evaluate(w, args) for args in itertools.product(els, repeat=w.n)}


def test_gamma2_s4():
    G = group("S4")
    vs = w_values(G, gamma(2))
    oracle = brute_values(G, gamma(2))
    assert {str(p) for p in vs.as_perms()} == {str(p) for p in oracle}
    assert len(vs) == 12
    assert all(p.order() in (1, 2, 3) for p in oracle)
    W, verified = verbal_subgroup(G, gamma(2))
    assert W.order() == 12 and verified


@pytest.mark.parametrize("name", ["S3", "D8", "Q8", "A4", "SL(2,3)"])
@pytest.mark.parametrize("spec", ["gamma2", "gamma3", "[x1,[x2,x3]]", "delta2"])
def test_values_brute_force(name, spec):
    G = group(name)
    w = word_from_spec(spec)
    if G.order() ** w.n > 400_000:
        pytest.skip("brute force too large")
    assert set(w_values(G, w).as_perms()) == brute_values(G, w)


def test_trivial_words():
    G = group("D8")
    assert len(w_values(G, parse_word("x1"))) == 8
    assert len(w_values(group("C6"), gamma(2))) == 1


def test_examples():
    assert verbal_subgroup(group("S4"), delta(2))[0].order() == 4
    A5 = group("A5")
    assert len(w_values(A5, gamma(2))) == 60
    assert verbal_subgroup(A5, gamma(2))[0].order() == 60


@pytest.mark.parametrize("name", FULL)
def test_delta_n_is_derived_series(name):
    G = group(name)
    terms = derived_series(G).terms
    for n in range(min(len(terms), 3)):
        assert verbal_subgroup(G, delta(n))[0] == terms[n]


@pytest.mark.parametrize("name", SMOKE)
def test_value_sets_closed(name):
    G = group(name)
    for spec in CORPUS_WORDS:
        vs = w_values(G, word_from_spec(spec))
        assert is_conjugation_closed(vs)
        # not assumed anywhere; recorded as an empirical fact on this corpus
        assert is_inverse_closed(vs)


def test_budget():
    with pytest.raises(BudgetExceeded):
        w_values(group("S4"), gamma(3), budget=100)


def test_sampled_mode():
    G = group("S4")
    a = w_values(G, gamma(3), "sampled", seed=5, draws=50)
    b = w_values(G, gamma(3), "sampled", seed=5, draws=50)
    assert a.dump() == b.dump() and not a.exhaustive
    assert set(a.indices) <= set(w_values(G, gamma(3)).indices)
    W, verified = verbal_subgroup(G, gamma(3), "sampled", seed=5, draws=200)
    assert not verified
    assert W == verbal_subgroup(G, gamma(3))[0]


def test_sampled_mode_large_host():
    G = group("A5xS4")
    W, verified = verbal_subgroup(G, gamma(2), "sampled", seed=3, draws=200)
    assert W.order() == 720 and not verified


# -- commutator closure and X_w -------------------------------------------------------

def naive_closure(perms):
    cur = set(perms)
    while True:
        new = cur | {a.comm(b) for a in cur for b in cur}
        if new == cur:
            return cur
        cur = new


def test_commutator_closure():
    G = group("S4")
    t = G.host.table
    X = [Permutation.parse("(1 2)", 4), Permutation.parse("(1 2 3 4)", 4)]
    C = commutator_closure(G, X)
    assert {t.perms[i] for i in C} == naive_closure(X)
    assert is_commutator_closed(G, C)
    assert np.array_equal(commutator_closure(G, G.indices), G.indices)
    assert commutator_closure(G, [0]).tolist() == [0]


def test_values_from_set():
    G = group("S4")
    assert np.array_equal(values_from_set(G, G.indices, gamma(3)).indices, w_values(G, gamma(3)).indices)
    V = derived_series(G).terms[2]
    assert values_from_set(G, V.indices, gamma(2)).indices.tolist() == [0]
    C = commutator_closure(G, G.gen_indices)
    A4 = derived_series(G).terms[1]
    assert A4.mask[values_from_set(G, C, gamma(3)).indices].all()


# -- tuple-indexed subgroups ------------------------------------------------------------

def test_tuple_verbal_examples():
    G = group("S4")
    assert tuple_verbal(G, gamma(2), (0, 0)) == verbal_subgroup(G, gamma(2))[0]
    assert tuple_verbal(G, gamma(2), (1, 1)).order() == 4


@pytest.mark.parametrize("name", ["S4", "SL(2,3)", "C3^2:C8", "D16"])
def test_tuple_verbal_monotone_and_extension(name):
    G = group(name)
    w = gamma(3)
    cap = derived_series(G).length
    box = list(itertools.product(range(cap + 2), repeat=3))
    vals = {i: tuple_verbal(G, w, i, cross_check=False) for i in box}
    for i in box:
        assert vals[i] == verbal_subgroup(G, substitute_derived(w, [min(k, cap) for k in i]))[0]
    for i, j in itertools.product(box, repeat=2):
        if all(a >= b for a, b in zip(j, i)):
            assert vals[j] <= vals[i]


@pytest.mark.parametrize("name", ["S4", "SL(2,3)", "D8"])
def test_tuple_plus_matches_oracle(name):
    G = group(name)
    cap = derived_series(G).length
    for i in itertools.product(range(cap + 1), repeat=2):
        assert tuple_verbal_plus(G, gamma(2), i) == tuple_verbal_plus_exhaustive(G, gamma(2), i)


# -- primes and powers ------------------------------------------------------------------

def test_p_partition():
    G = group("S4")
    vs = w_values(G, gamma(2))
    X, Y = p_partition(vs, 2)
    assert sorted(str(G.host.element(i)) for i in X) == ["()", "(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)"]
    assert set(X) <= set(Y)
    X5, Y5 = p_partition(vs, 5)
    assert X5.tolist() == [0] and Y5.tolist() == [0]
    with pytest.raises(ValueError):
        p_partition(w_values(G, gamma(2), "sampled"), 2)


def test_power_words():
    G = group("S4")
    assert power_verbal(G, 1) == G
    assert power_verbal(G, 12).is_trivial()
    assert set(power_values(G, 2).indices) == {G.host.index(g ** 2) for g in G.host.elements()}
    F = full(frobenius_group(3, 2, 3).group)
    assert power_verbal(F, 3) == F
    with pytest.raises(ValueError):
        power_values(G, 0)
