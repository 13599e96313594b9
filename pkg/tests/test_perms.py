import pytest
from hypothesis import given, strategies as st

from verbalrank.perms import Permutation
from verbalrank.rng import LCG64


def perms(degree):
    return st.permutations(range(degree)).map(lambda p: Permutation(tuple(p)))


def test_parse_and_print():
    g = Permutation.parse("(1 2 3)(4 5)", 6)
    assert g(1) == 2 and g(3) == 1 and g(5) == 4 and g(6) == 6
    assert str(g) == "(1 2 3)(4 5)"
    assert str(Permutation.parse("()", 3)) == "()"


@pytest.mark.parametrize("bad", ["(1 2", "1 2", "(1 2)(2 3)", "(0 1)", "(1 9)", ""])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        Permutation.parse(bad, 4)


def test_not_bijective():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


def test_product_acts_on_the_right():
    a = Permutation.parse("(1 2)", 3)
    b = Permutation.parse("(2 3)", 3)
    # 1 -a-> 2 -b-> 3
    assert (a * b)(1) == 3


@given(perms(6), perms(6))
def test_group_laws(a, b):
    e = Permutation.identity(6)
    assert a * a.inverse() == e
    assert (a * b).inverse() == b.inverse() * a.inverse()
    assert a.comm(b) == a.inverse() * b.inverse() * a * b
    assert a.comm(b).inverse() == b.comm(a)
    assert a ** a.order() == e
    assert a.conj(b) == b.inverse() * a * b


@given(perms(7))
def test_cycle_round_trip(a):
    assert Permutation.parse(str(a), 7) == a


def test_lcg_reproducible():
    a, b = LCG64(42), LCG64(42)
    xs = [a.next() for _ in range(5)]
    assert xs == [b.next() for _ in range(5)]
    assert xs[0] == (42 * 6364136223846793005 + 1442695040888963407) % 2 ** 64
    r = LCG64(7)
    assert all(0 <= r.randbelow(10) < 10 for _ in range(100))
