import pytest
from hypothesis import given
from hypothesis import strategies as st

from leglab.errors import DomainError
from leglab.finite_field import (
    Arith,
    character,
    char_value,
    discrete_log,
    field_of_size,
    make_field,
    prime_power,
    quadratic_character,
)

SIZES = (2, 3, 4, 5, 8, 9, 25, 27, 49, 64, 81, 121)


def test_prime_power():
    assert prime_power(81) == (3, 4)
    with pytest.raises(DomainError):
        prime_power(12)


@pytest.mark.parametrize("q", SIZES)
def test_field_axioms_exhaustive(q):
    F = field_of_size(q)
    A = Arith(F)
    for a in range(q):
        assert A.add(a, A.neg(a)) == 0
        if a:
            assert A.mul(a, A.inv(a)) == 1
            assert A.pow(a, q - 1) == 1
    g = F.gen_power(1)
    assert F.order_of(g) == q - 1


@given(st.sampled_from(SIZES), st.data())
def test_distributive(q, data):
    A = Arith(field_of_size(q))
    a, b, c = (data.draw(st.integers(0, q - 1)) for _ in range(3))
    assert A.mul(a, A.add(b, c)) == A.add(A.mul(a, b), A.mul(a, c))
    assert A.sub(A.add(a, b), b) == a


@pytest.mark.parametrize("q", (9, 25, 27, 49))
def test_discrete_log_roundtrip(q):
    F = field_of_size(q)
    for m in range(q - 1):
        assert discrete_log(F, F.gen_power(m)) == m


@pytest.mark.parametrize("q", (5, 9, 13, 25))
def test_quadratic_character_matches_squares(q):
    F = field_of_size(q)
    lam = quadratic_character(F)
    squares = {F.mul(x, x) for x in range(1, q)}
    for x in range(1, q):
        v = char_value(lam, x)
        assert (v.index % v.order == 0) == (x in squares)


def test_character_orthogonality_row_sum():
    F = make_field(7)
    chi = character(F, 2)
    total = [0] * chi.value_order
    for x in range(1, 7):
        r = char_value(chi, x)
        total[(r.index * chi.value_order // r.order) % chi.value_order] += 1
    assert len(set(total)) == 1
