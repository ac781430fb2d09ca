"""Jacobi sums J(chi1, chi2) = sum_{u+v+1=0} chi1(u) chi2(v) and the orbit sums.

For an orbit o of multiplication by q on Z/dZ with representative i, the sums
live on F_{q^|o|}:

* ``J_o  = J(lambda, chi_i)``  (lambda quadratic, p odd)
* ``J'_o = J(chi_i, chi_i)``   (any p)

where chi_i is the character with exponent (q^|o| - 1) i / d.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd, isqrt, lcm
from typing import Sequence

import numpy as np

from .config import max_field
from .cyclotomic import CycInt, is_root_of_unity
from .errors import ConsistencyError, DomainError, ResourceError
from .finite_field import (
    Arith,
    CharacterSpec,
    FieldContext,
    Root,
    char_value,
    character,
    make_field,
    prime_power,
    quadratic_character,
)
from .residue_groups import Orbit, balanced_mod, orbits_mod_d


class Variant(str, enum.Enum):
    STANDARD = "standard"
    PRIME = "prime"


class Purity(str, enum.Enum):
    PURE_PLUS = "PurePlus"
    PURE_MINUS = "PureMinus"
    NOT_PURE = "NotPure"


@dataclass(frozen=True)
class JacobiSumValue:
    orbit: Orbit
    p: int
    q: int
    d: int
    value: CycInt
    field_size: int
    variant: Variant = Variant.STANDARD

    @property
    def e(self) -> int:
        return self.orbit.e

    def squared(self) -> CycInt:
        return self.value * self.value


@dataclass(frozen=True)
class ValuationProfile:
    e: int
    nu: int
    valuations: dict[int, Fraction]

    def is_constant_half(self) -> bool:
        return all(v == Fraction(self.nu, 2) for v in self.valuations.values())


def root_to_cyc(r: Root | int) -> CycInt:
    if isinstance(r, Root):
        return CycInt.zeta(r.order, r.index)
    return CycInt.integer(r)


def _minus_one_minus(ctx: FieldContext) -> np.ndarray:
    """Codes of -1-u for every code u."""
    dig = (-ctx.digits) % ctx.p
    dig[:, 0] = (dig[:, 0] - 1) % ctx.p
    return ctx.pack(dig)


def jacobi_sum(chi1: CharacterSpec, chi2: CharacterSpec) -> CycInt:
    """Exact sum over u in k of chi1(u) chi2(-1-u), as an element of Z[zeta_n]
    with n the lcm of the two value orders."""
    if chi1.field is not chi2.field:
        raise DomainError("characters are defined on different fields")
    ctx = chi1.field
    n1, n2 = chi1.value_order, chi2.value_order
    n = lcm(n1, n2)
    a = chi1.index_array()
    b = chi2.index_array()[_minus_one_minus(ctx)]
    mask = (a >= 0) & (b >= 0)
    exps = (a[mask] * (n // n1) + b[mask] * (n // n2)) % n
    counts = np.bincount(exps, minlength=n)
    return CycInt(n, [int(c) for c in counts])


# ---------------------------------------------------------------------------


def _validate(p: int, q: int, d: int, o: Orbit, allow_two: bool) -> int:
    pp, k = prime_power(q)
    if pp != p:
        raise DomainError(f"{q} is not a power of {p}")
    if p == 2 and not allow_two:
        raise DomainError("J_o needs an odd characteristic; use the prime variant for p = 2")
    if gcd(d, p) != 1:
        raise DomainError(f"p = {p} divides d = {d}")
    if not o.elements or o.elements == (0,) or (d % 2 == 0 and o.elements == (d // 2,)):
        raise DomainError("orbits {0} and {d/2} are excluded")
    for i in o.elements:
        if (i * q) % d not in o.elements:
            raise DomainError(f"{o.elements} is not an orbit of multiplication by {q} mod {d}")
    return k


def orbit_field(p: int, q: int, o: Orbit) -> FieldContext:
    _, k = prime_power(q)
    size = q**o.size
    if size > max_field():
        raise ResourceError(f"field of size {q}^{o.size} exceeds the bound {max_field()}")
    return make_field(p, k * o.size)


def chi_i(ctx: FieldContext, i: int, d: int) -> CharacterSpec:
    if (ctx.N * i) % d:
        raise DomainError(f"(|k|-1) i / d is not an integer for i={i}, d={d}, |k|={ctx.q}")
    return character(ctx, ctx.N * i // d)


def _orbit_sum(p, q, d, o, check_representatives, variant) -> JacobiSumValue:
    _validate(p, q, d, o, allow_two=variant is Variant.PRIME)
    ctx = orbit_field(p, q, o)

    def one(i):
        chi = chi_i(ctx, i, d)
        if variant is Variant.STANDARD:
            return jacobi_sum(quadratic_character(ctx), chi)
        return jacobi_sum(chi, chi)

    value = one(o.representative)
    if check_representatives:
        for i in o.elements[1:]:
            if one(i) != value:
                raise ConsistencyError(f"J depends on the orbit representative (i={i})")
    return JacobiSumValue(o, p, q, d, value, ctx.q, variant)


def jacobi_J_o(p: int, q: int, d: int, o: Orbit, check_representatives: bool = True) -> JacobiSumValue:
    return _orbit_sum(p, q, d, o, check_representatives, Variant.STANDARD)


def jacobi_Jprime_o(p: int, q: int, d: int, o: Orbit, check_representatives: bool = True) -> JacobiSumValue:
    return _orbit_sum(p, q, d, o, check_representatives, Variant.PRIME)


def orbit_of(d: int, q: int, i: int) -> Orbit:
    for o in orbits_mod_d(d, q):
        if i % d in o.elements:
            return o
    raise DomainError(f"{i} lies in an excluded orbit mod {d}")


# ---------------------------------------------------------------------------


def _frac(x: Fraction) -> Fraction:
    return x - floor(x)


def stickelberger_valuations(
    p: int, q: int, d: int, o: Orbit, variant: Variant | str = Variant.STANDARD
) -> ValuationProfile:
    """Valuations of J_o (or J'_o) at the primes sigma_a(P), a in (Z/eZ)^x, from fractional parts.

    Normalised so that the valuation of p is 1.
    """
    variant = Variant(variant)
    k = _validate(p, q, d, o, allow_two=variant is Variant.PRIME)
    nu = k * o.size
    e, ip = o.e, o.i_prime
    vals = {}
    for a in range(1, e):
        if gcd(a, e) != 1:
            continue
        total = Fraction(-nu)
        # lambda has order 2, so a must act as a unit mod lcm(2, e): take it odd
        b = a + e if (variant is Variant.STANDARD and a % 2 == 0) else a
        for j in range(nu):
            pj = p**j
            x = Fraction(b * ip * pj, e)
            if variant is Variant.STANDARD:
                total += _frac(Fraction(b * pj, 2)) + _frac(x) + _frac(-x - Fraction(b * pj, 2))
            else:
                total += 2 * _frac(x) + _frac(-2 * x)
        vals[a] = total
    return ValuationProfile(e, nu, vals)


def reduce_at_pin(z: CycInt, ctx: FieldContext) -> int:
    """Image of z in F_Q under zeta_n -> g^(N/n), the reduction the Teichmuller character inverts."""
    if ctx.N % z.order:
        raise DomainError(f"order {z.order} does not divide |F_Q^x| = {ctx.N}")
    F = Arith(ctx)
    step = ctx.N // z.order
    acc = 0
    for j, c in enumerate(z.coeffs):
        if c:
            acc = F.add(acc, F.mul(F.integer(c), F.exp[(j * step) % ctx.N]))
    return acc


def _unit_lift(a: int, e: int, n: int) -> int:
    """A unit modulo n that is congruent to a modulo e (e | n)."""
    for x in range(a % e, n * e + 1, e):
        if gcd(x, n) == 1:
            return x
    raise DomainError(f"{a} has no unit lift modulo {n}")


def stickelberger_cross_check(J: JacobiSumValue, profile: ValuationProfile) -> dict[int, bool]:
    """For each label a: is (valuation > 0) the same as sigma_{-a}(J) reducing to 0?

    The label a of the fractional-part formula corresponds to the prime
    sigma_{-a}^{-1} of the pinned prime, which is what this checks.
    """
    ctx = make_field(J.p, prime_power(J.field_size)[1])
    v = J.value
    if v.order % profile.e and profile.e % v.order:
        raise DomainError("profile and value do not match")
    n = lcm(v.order, profile.e)
    v = v.lift(n)
    return {
        a: (val > 0) == (reduce_at_pin(v.galois(_unit_lift(-a, profile.e, n)), ctx) == 0)
        for a, val in profile.valuations.items()
    }


def purity_check(J: JacobiSumValue, balanced: bool) -> Purity:
    """Is J^2 = q^|o|?  Cross-checked against ``balanced``; a mismatch raises."""
    Q = J.field_size
    sq = J.squared()
    ratio_root = all(c % Q == 0 for c in sq.coeffs) and (
        is_root_of_unity(CycInt(sq.order, [c // Q for c in sq.coeffs])) is not None
    )
    if ratio_root != balanced:
        raise ConsistencyError(
            f"J^2/q^|o| root of unity = {ratio_root} but balanced = {balanced} for orbit {J.orbit.elements}"
        )
    if not ratio_root:
        return Purity.NOT_PURE
    if sq != Q:
        raise ConsistencyError(f"balanced orbit {J.orbit.elements} has J^2 != q^|o|")
    r = isqrt(Q)
    if r * r == Q:
        if J.value == r:
            return Purity.PURE_PLUS
        if J.value == -r:
            return Purity.PURE_MINUS
        raise ConsistencyError("J^2 = q^|o| but J is not +-q^(|o|/2)")
    # J = +-sqrt(Q) with Q not a square: report the sign at the principal embedding
    return Purity.PURE_PLUS if J.value.embed(1).real > 0 else Purity.PURE_MINUS


def is_pure(J: JacobiSumValue) -> bool:
    return J.squared() == J.field_size


def weil_size_ok(J: JacobiSumValue) -> bool:
    return (J.value * J.value.conj()) == J.field_size


def congruent_one_mod_two(z: CycInt) -> bool:
    return all(c % 2 == 0 for c in (z - 1).coeffs)


# ---------------------------------------------------------------------------
# the J'_o = (factor) * J_o relation for odd p

PRIME_RELATION_READINGS = (
    "chi_i(4)*lambda(-1)",  # literal reading, tested first
    "conj(chi_i(4))*lambda(-1)",
    "chi_i(4)*chi_i(-1)*lambda(-1)",
    "conj(chi_i(4))*chi_i(-1)*lambda(-1)",
)


def _reading_factor(reading: str, ctx: FieldContext, chi: CharacterSpec) -> CycInt:
    four = ctx.element(4)
    minus_one = ctx.neg(1)
    c4 = root_to_cyc(char_value(chi, four))
    lam = root_to_cyc(char_value(quadratic_character(ctx), minus_one))
    cm1 = root_to_cyc(char_value(chi, minus_one))
    table = {
        "chi_i(4)*lambda(-1)": c4 * lam,
        "conj(chi_i(4))*lambda(-1)": c4.conj() * lam,
        "chi_i(4)*chi_i(-1)*lambda(-1)": c4 * cm1 * lam,
        "conj(chi_i(4))*chi_i(-1)*lambda(-1)": c4.conj() * cm1 * lam,
    }
    return table[reading]


def prime_relation_readings(p: int, q: int, d: int, o: Orbit) -> dict[str, bool]:
    """Which candidate factor c makes J'_o = c * J_o hold exactly (odd p)."""
    if p == 2:
        raise DomainError("the relation is stated for odd p")
    J = jacobi_J_o(p, q, d, o, check_representatives=False).value
    Jp = jacobi_Jprime_o(p, q, d, o, check_representatives=False).value
    ctx = orbit_field(p, q, o)
    chi = chi_i(ctx, o.representative, d)
    return {r: Jp == _reading_factor(r, ctx, chi) * J for r in PRIME_RELATION_READINGS}


# the reading that holds on every orbit of the odd-p sweep
VALIDATED_PRIME_READING = "conj(chi_i(4))*chi_i(-1)*lambda(-1)"


def squared_relation_holds(p: int, q: int, d: int, o: Orbit, conjugate: bool = True) -> bool:
    """J'_o^2 = c * J_o^2 with c = conj(chi_i(16)) (``conjugate``) or chi_i(16)."""
    J = jacobi_J_o(p, q, d, o, check_representatives=False).value
    Jp = jacobi_Jprime_o(p, q, d, o, check_representatives=False).value
    ctx = orbit_field(p, q, o)
    c16 = root_to_cyc(char_value(chi_i(ctx, o.representative, d), ctx.element(16)))
    if conjugate:
        c16 = c16.conj()
    return Jp * Jp == c16 * J * J


def purity_sweep_entry(p: int, q: int, d: int, o: Orbit, variant: Variant = Variant.STANDARD) -> dict:
    """One row of the purity-vs-balanced sweep."""
    J = _orbit_sum(p, q, d, o, True, variant)
    return {
        "p": p,
        "q": q,
        "d": d,
        "orbit": list(o.elements),
        "e": o.e,
        "pure": is_pure(J),
        "balanced": balanced_mod(p, o.e),
        "weil": weil_size_ok(J),
    }
