import pytest
from hypothesis import given
from hypothesis import strategies as st
from math import gcd

from leglab.errors import DomainError, ResourceError
from leglab.residue_groups import (
    Classification,
    all_subgroups,
    balanced_mod,
    classify_cyclic,
    generated_subgroup,
    is_balanced,
    minimal_balanced_subgroups,
    multiplicative_order,
    orbits_mod_d,
    scan_balanced,
)


def test_mod_39_examples():
    assert is_balanced(39, generated_subgroup(39, [7])).balanced
    assert is_balanced(39, generated_subgroup(39, [29])).balanced
    rep = is_balanced(39, generated_subgroup(39, [16]))
    assert not rep.balanced
    assert rep.subgroup.order == 3
    assert rep.classification is Classification.NOT_BALANCED


def test_per_coset_counts_sum_to_subgroup_order():
    rep = is_balanced(39, generated_subgroup(39, [7]))
    for _, a, b in rep.per_coset:
        assert a + b == rep.subgroup.order


def test_classifications():
    assert classify_cyclic(2, 3) is Classification.MINUS_ONE
    assert classify_cyclic(3, 55) is Classification.SPORADIC
    assert classify_cyclic(2, 7) is Classification.NOT_BALANCED


def test_domain_errors():
    with pytest.raises(DomainError):
        balanced_mod(3, 6)
    with pytest.raises(DomainError):
        generated_subgroup(39, [13])


def test_orbits_exclude_zero_and_half():
    orbits = orbits_mod_d(10, 3)
    covered = sorted(x for o in orbits for x in o.elements)
    assert covered == [1, 2, 3, 4, 6, 7, 8, 9]
    for o in orbits:
        g = gcd(10, o.representative)
        assert o.e == 10 // g and o.i_prime == o.representative // g


def test_minimal_balanced_subgroups_are_balanced():
    for H in minimal_balanced_subgroups(39):
        assert is_balanced(39, H).balanced


def test_scan_counts():
    c = scan_balanced(3, 60)
    assert sum(c.counts.values()) == len(c.classes)
    assert 55 in c.sporadic


@given(st.integers(3, 400), st.integers(2, 50))
def test_minus_one_is_balanced(d, g):
    if gcd(g, d) != 1:
        return
    H = generated_subgroup(d, [g, d - 1])
    assert is_balanced(d, H).balanced


@given(st.integers(3, 300), st.integers(2, 50))
def test_balanced_subgroups_have_even_order(d, g):
    if gcd(g, d) != 1:
        return
    H = generated_subgroup(d, [g])
    if is_balanced(d, H).balanced:
        assert H.order % 2 == 0
        assert balanced_mod(g, d)


@given(st.integers(3, 200), st.integers(2, 40))
def test_balanced_is_inherited_by_supergroups(d, g):
    if gcd(g, d) != 1:
        return
    H = generated_subgroup(d, [g])
    if is_balanced(d, H).balanced:
        for K in all_subgroups(d):
            if H.element_set <= K.element_set:
                assert is_balanced(d, K).balanced


def test_multiplicative_order():
    assert multiplicative_order(2, 7) == 3
    assert multiplicative_order(16, 39) == 3
