import cmath
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from leglab.cyclotomic import CycInt, cyclotomic_poly, is_root_of_unity, totient


def cyc(order):
    return st.lists(st.integers(-20, 20), min_size=order, max_size=order).map(lambda c: CycInt(order, c))


ORDERS = st.sampled_from((1, 2, 3, 4, 5, 6, 8, 12, 15))


def test_cyclotomic_poly_degree():
    for n in range(1, 40):
        assert len(cyclotomic_poly(n)) - 1 == totient(n)


def test_canonical_form():
    z = CycInt.zeta(3)
    assert 1 + z + z * z == 0
    assert CycInt.zeta(4) ** 2 == -1


def test_equality_across_orders():
    assert CycInt.zeta(3).lift(6) == CycInt.zeta(3)
    assert CycInt.zeta(6, 2) == CycInt.zeta(3)
    assert CycInt.integer(5, 12) == 5


@given(ORDERS.flatmap(lambda n: st.tuples(cyc(n), cyc(n), cyc(n))))
def test_ring_axioms(t):
    a, b, c = t
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == 0


@given(ORDERS.flatmap(lambda n: st.tuples(cyc(n), cyc(n))))
def test_embedding_is_a_homomorphism(t):
    a, b = t
    assert cmath.isclose((a * b).embed(), a.embed() * b.embed(), abs_tol=1e-6)
    assert cmath.isclose(a.conj().embed(), a.embed().conjugate(), abs_tol=1e-6)


@pytest.mark.parametrize("n", (3, 5, 8, 12))
def test_galois_action_permutes_roots(n):
    for a in range(1, n):
        if gcd(a, n) == 1:
            assert is_root_of_unity(CycInt.zeta(n).galois(a)) is not None


def test_is_root_of_unity():
    assert is_root_of_unity(-CycInt.zeta(5)) is not None
    assert is_root_of_unity(CycInt.integer(2)) is None
