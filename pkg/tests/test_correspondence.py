import pytest

from leglab.correspondence import (
    INEFFECTIVE_MUTATIONS,
    PHI_MUTATIONS,
    PHI_PRIME_MUTATIONS,
    Mode,
    MultiPoly,
    mutation_controls,
    reduce_relations,
    verify_phi_identity,
    verify_phi_prime_identity,
)
from leglab.errors import DomainError

PHI_CELLS = ((3, 9, 4), (5, 5, 4), (5, 25, 3), (7, 7, 3))
PRIME_CELLS = ((3, 9, 4), (5, 5, 4), (2, 4, 3), (2, 8, 7))


def test_multipoly_reduction():
    x = MultiPoly.var(5, "x")
    z = MultiPoly.var(5, "z")
    rz = x * x + MultiPoly.const(5, 1)
    P = z**5 - z * rz
    assert reduce_relations(P, 4, rz, MultiPoly.const(5, 1)).is_zero


@pytest.mark.parametrize("p,q,d", PHI_CELLS)
@pytest.mark.parametrize("mode", list(Mode))
def test_phi_identity(p, q, d, mode):
    r = verify_phi_identity(p, q, d, mode, trials=30)
    assert r.holds and r.witness is None


@pytest.mark.parametrize("p,q,d", PRIME_CELLS)
@pytest.mark.parametrize("mode", list(Mode))
def test_phi_prime_identity(p, q, d, mode):
    assert verify_phi_prime_identity(p, q, d, mode, trials=30).holds


@pytest.mark.parametrize("p,q,d", ((3, 9, 4), (5, 5, 4)))
def test_effective_controls_fail_with_witness(p, q, d):
    for prime, names in ((False, PHI_MUTATIONS), (True, PHI_PRIME_MUTATIONS)):
        controls = mutation_controls(p, q, d, prime=prime)
        assert set(controls) == set(names)
        for r in controls.values():
            assert not r.holds and r.witness is not None


def test_flip_y_sign_is_ineffective():
    # Y only enters squared, so flipping its sign leaves the identity intact
    for m in INEFFECTIVE_MUTATIONS:
        assert verify_phi_identity(5, 5, 4, mutation=m).holds


def test_parameter_checks():
    with pytest.raises(DomainError):
        verify_phi_identity(2, 4, 3)
    with pytest.raises(DomainError):
        verify_phi_identity(3, 9, 6)
    assert verify_phi_identity(3, 9, 6, allow_p_divides_d=True).holds
    with pytest.raises(DomainError):
        verify_phi_identity(5, 5, 4, mutation="nonsense")


def test_random_mode_is_seeded():
    a = verify_phi_identity(5, 5, 4, Mode.RANDOM, trials=10, seed=3, mutation="shift_X")
    b = verify_phi_identity(5, 5, 4, Mode.RANDOM, trials=10, seed=3, mutation="shift_X")
    assert a.witness == b.witness
