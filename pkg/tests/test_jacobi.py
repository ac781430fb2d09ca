import pytest

from leglab.errors import DomainError
from leglab.jacobi import (
    PRIME_RELATION_READINGS,
    VALIDATED_PRIME_READING,
    Purity,
    Variant,
    congruent_one_mod_two,
    is_pure,
    jacobi_J_o,
    jacobi_Jprime_o,
    prime_relation_readings,
    purity_check,
    squared_relation_holds,
    stickelberger_cross_check,
    stickelberger_valuations,
    weil_size_ok,
)
from leglab.residue_groups import balanced_mod, orbits_mod_d

CELLS = ((3, 3, 4), (3, 3, 5), (3, 9, 5), (5, 5, 3), (5, 5, 6), (7, 7, 3), (7, 7, 9), (3, 3, 10), (11, 11, 3))


def _orbits(cells=CELLS):
    for p, q, d in cells:
        for o in orbits_mod_d(d, q):
            yield p, q, d, o


def test_j_is_minus_three_at_small_cell():
    (o,) = orbits_mod_d(4, 3)
    assert jacobi_J_o(3, 3, 4, o).value ** 2 == 9


@pytest.mark.parametrize("p,q,d,o", list(_orbits()))
def test_weil_size(p, q, d, o):
    assert weil_size_ok(jacobi_J_o(p, q, d, o))
    assert weil_size_ok(jacobi_Jprime_o(p, q, d, o))


@pytest.mark.parametrize("p,q,d,o", list(_orbits()))
def test_purity_matches_balanced(p, q, d, o):
    J = jacobi_J_o(p, q, d, o)
    bal = o.e > 2 and balanced_mod(p, o.e)
    assert is_pure(J) == bal
    assert (purity_check(J, bal) is Purity.NOT_PURE) == (not bal)


@pytest.mark.parametrize("p,q,d,o", list(_orbits()))
def test_validated_prime_reading(p, q, d, o):
    assert prime_relation_readings(p, q, d, o)[VALIDATED_PRIME_READING]


@pytest.mark.parametrize("p,q,d,o", list(_orbits()))
def test_conjugated_squared_relation(p, q, d, o):
    assert squared_relation_holds(p, q, d, o, conjugate=True)


def test_literal_squared_relation_fails_at_7_7_3():
    # chi_i(16) has order 3 here, so the unconjugated form cannot hold
    o = orbits_mod_d(3, 7)[0]
    assert not squared_relation_holds(7, 7, 3, o, conjugate=False)
    assert not prime_relation_readings(7, 7, 3, o)[PRIME_RELATION_READINGS[0]]


@pytest.mark.parametrize("p,q,d,o", list(_orbits(((2, 4, 3), (2, 8, 7), (2, 16, 5), (2, 4, 15)))))
def test_char2_prime_sum_purity_matches_balanced(p, q, d, o):
    J = jacobi_Jprime_o(p, q, d, o)
    assert weil_size_ok(J)
    assert is_pure(J) == balanced_mod(2, o.e)


@pytest.mark.parametrize("p,q,d,o", list(_orbits()))
def test_odd_sum_is_one_mod_two(p, q, d, o):
    assert congruent_one_mod_two(jacobi_J_o(p, q, d, o).value)


@pytest.mark.parametrize("p,q,d,o", list(_orbits()))
def test_stickelberger_matches_reduction(p, q, d, o):
    J = jacobi_J_o(p, q, d, o)
    prof = stickelberger_valuations(p, q, d, o)
    assert all(stickelberger_cross_check(J, prof).values())
    if o.e > 2 and balanced_mod(p, o.e):
        assert prof.is_constant_half


def test_prime_variant_allows_two():
    o = orbits_mod_d(3, 4)[0]
    stickelberger_valuations(2, 4, 3, o, Variant.PRIME)
    with pytest.raises(DomainError):
        stickelberger_valuations(2, 4, 3, o, Variant.STANDARD)


def test_relation_is_for_odd_p():
    with pytest.raises(DomainError):
        prime_relation_readings(2, 4, 3, orbits_mod_d(3, 4)[0])
