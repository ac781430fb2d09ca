from fractions import Fraction

import pytest

from leglab.errors import DomainError, ResourceError
from leglab.lfunction import (
    QMod,
    analytic_rank,
    bsd_quantities,
    closed_form_coefficient,
    lfunction_factors,
    log_coefficient,
    parse_qmod,
    pointcount_coefficient,
    rank_formula,
    rank_formula_char2,
    rank_relation_check,
    verify_lfunction,
)


def test_small_cells():
    L = lfunction_factors(3, 3, 4)
    assert L.expanded() == "1 - 9T^2"
    assert analytic_rank(L) == 1
    assert analytic_rank(lfunction_factors(3, 9, 4)) == 2
    L = lfunction_factors(5, 5, 4)
    assert L.expanded() == "1 + 6T + 25T^2"
    assert analytic_rank(L) == 0


def test_log_coefficients():
    L = lfunction_factors(3, 3, 4)
    assert [log_coefficient(L, n) for n in (1, 2, 4)] == [0, -18, -162]


@pytest.mark.parametrize("p,q,d", ((3, 3, 4), (3, 3, 5), (5, 5, 4), (5, 5, 6), (7, 7, 4), (3, 9, 4)))
def test_oracle_agrees(p, q, d):
    v = verify_lfunction(p, q, d, 3)
    assert v.ok, v.mismatches()


def test_p_divides_d_uses_prime_to_p_part():
    L = lfunction_factors(3, 3, 6)
    assert L.reduced_d == 2
    assert verify_lfunction(3, 3, 6, 3).ok


def test_closed_form_matches_pointcount():
    for n in (1, 2):
        assert closed_form_coefficient(5, 4, n) == pointcount_coefficient(5, 4, n)


def test_pointcount_respects_bound():
    with pytest.raises(ResourceError):
        pointcount_coefficient(3, 4, 5, bound=1000)


def test_isogenous_curve_same_l_function():
    assert lfunction_factors(5, 5, 4, "E'").polynomial() == lfunction_factors(5, 5, 4).polynomial()


def test_rank_formula_matches_analytic():
    for p, q, d in ((3, 3, 4), (3, 9, 4), (5, 5, 4), (5, 25, 8), (7, 7, 8)):
        assert rank_formula(p, q, d).rank == analytic_rank(lfunction_factors(p, q, d))


def test_rank_formula_qmod():
    assert parse_qmod("1 mod 39") == QMod(1, 39)
    assert rank_formula(7, "1 mod 39", 39).rank == 36
    with pytest.raises(DomainError):
        parse_qmod("x mod y")


def test_rank_formula_char2():
    assert rank_formula_char2(4, 3).rank == 2


def test_rank_relation_and_bsd():
    assert rank_relation_check(3, 1, 9)
    r = bsd_quantities(3, 1, 9)
    assert r.d == 4
    assert r.disc_Wd == 9
    assert r.predicted_constraint == 16
    assert r.tamagawa_ratio == Fraction(r.tamagawa_u, r.tamagawa_u2)
    for p, f in ((3, 1), (5, 1), (3, 2), (7, 1)):
        q = p ** (2 * f) if p ** (2 * f) % 4 == 1 else p ** (4 * f)
        assert bsd_quantities(p, f, q).predicted_constraint * Fraction(q) ** ((2 * (p**f - 1)) // 4) == (
            2 ** (p**f + 1) * p ** (f * (p**f - 1))
        )
