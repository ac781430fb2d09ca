"""Exact arithmetic in Z[zeta_n].

A ``CycInt`` of order n stores integer coefficients c_j of sum c_j zeta_n^j.
Values are always kept in canonical form: the remainder modulo the n-th
cyclotomic polynomial, so coefficients at positions >= phi(n) are zero.
Operands of different orders are lifted to the lcm order (zeta_n -> zeta_m^(m/n)).
"""

from __future__ import annotations

import cmath
from functools import lru_cache
from math import gcd, lcm
from typing import Sequence

from sympy import divisors


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, low degree first, by exact division of x^n - 1."""
    if n < 1:
        raise ValueError("order must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for m in divisors(n)[:-1]:
        num = _exact_div(num, cyclotomic_poly(m))
    return tuple(num)


def _exact_div(a: list[int], b: Sequence[int]) -> list[int]:
    a = list(a)
    db = len(b) - 1
    out = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]  # b is monic
        out[k - db] = c
        if c:
            for j, bj in enumerate(b):
                a[k - db + j] -= c * bj
    if any(a[:db]):
        raise ArithmeticError("inexact polynomial division")
    return out


def totient(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


def _reduce(coeffs: list[int], n: int) -> tuple[int, ...]:
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    c = coeffs
    for k in range(n - 1, deg - 1, -1):
        a = c[k]
        if a:
            base = k - deg
            for j, pj in enumerate(phi):
                if pj:
                    c[base + j] -= a * pj
    return tuple(c)


class CycInt:
    """Element of Z[zeta_order] in canonical form."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Sequence[int] = ()):
        if order < 1:
            raise ValueError("order must be positive")
        c = [0] * order
        for j, v in enumerate(coeffs):
            c[j % order] += int(v)
        self.order = order
        self.coeffs = _reduce(c, order)

    # -- constructors
    @classmethod
    def integer(cls, m: int, order: int = 1) -> CycInt:
        return cls(order, [m])

    @classmethod
    def zeta(cls, order: int, power: int = 1) -> CycInt:
        c = [0] * order
        c[power % order] = 1
        return cls(order, c)

    # -- structure
    def lift(self, order: int) -> CycInt:
        if order % self.order:
            raise ValueError(f"cannot lift order {self.order} to {order}")
        step = order // self.order
        c = [0] * order
        for j, v in enumerate(self.coeffs):
            if v:
                c[j * step] = v
        return CycInt(order, c)

    def _common(self, other) -> tuple[CycInt, CycInt]:
        if isinstance(other, int):
            other = CycInt.integer(other, self.order)
        if not isinstance(other, CycInt):
            return NotImplemented, NotImplemented
        if other.order == self.order:
            return self, other
        m = lcm(self.order, other.order)
        return self.lift(m), other.lift(m)

    # -- ring operations
    def __add__(self, other):
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        return CycInt(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.order, [-x for x in self.coeffs])

    def __sub__(self, other):
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        return CycInt(a.order, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.order, [other * x for x in self.coeffs])
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        n = a.order
        out = [0] * n
        bnz = [(j, y) for j, y in enumerate(b.coeffs) if y]
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in bnz:
                    out[(i + j) % n] += x * y
        return CycInt(n, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> CycInt:
        if e < 0:
            raise ValueError("negative powers are not supported")
        result = CycInt.integer(1, self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self) -> CycInt:
        n = self.order
        c = [0] * n
        for j, v in enumerate(self.coeffs):
            c[(-j) % n] += v
        return CycInt(n, c)

    def galois(self, a: int) -> CycInt:
        """Image under zeta_n -> zeta_n^a (a coprime to n)."""
        n = self.order
        if gcd(a, n) != 1:
            raise ValueError(f"{a} is not a unit modulo {n}")
        c = [0] * n
        for j, v in enumerate(self.coeffs):
            c[(a * j) % n] += v
        return CycInt(n, c)

    # -- comparisons
    def __eq__(self, other) -> bool:
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        return a.coeffs == b.coeffs

    __hash__ = None  # equality crosses orders; use key() for hashing

    def key(self, order: int | None = None) -> tuple[int, ...]:
        """Canonical coefficients after lifting to ``order``."""
        z = self if order is None else self.lift(order)
        return z.coeffs

    def is_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def as_integer(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self} is not a rational integer")
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def embed(self, a: int = 1) -> complex:
        return embed_complex(self, a)

    def __repr__(self) -> str:
        return f"CycInt({self.order}, {list(self.coeffs[: totient(self.order)])})"

    def __str__(self) -> str:
        terms = []
        for j, v in enumerate(self.coeffs):
            if not v:
                continue
            if j == 0:
                terms.append(str(v))
            else:
                mono = f"z{self.order}" + (f"^{j}" if j > 1 else "")
                terms.append(mono if v == 1 else f"-{mono}" if v == -1 else f"{v}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") or "0"


def cyc_add(z1: CycInt, z2: CycInt) -> CycInt:
    return z1 + z2


def cyc_mul(z1: CycInt, z2: CycInt) -> CycInt:
    return z1 * z2


def cyc_neg(z: CycInt) -> CycInt:
    return -z


def conj(z: CycInt) -> CycInt:
    return z.conj()


def embed_complex(z: CycInt, a: int = 1) -> complex:
    """Evaluate at zeta_n = exp(2 pi i a / n)."""
    n = z.order
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit modulo {n}")
    return sum(v * cmath.exp(2j * cmath.pi * a * j / n) for j, v in enumerate(z.coeffs) if v) + 0j


def equals_integer(z: CycInt, m: int) -> bool:
    return z.is_integer() and z.coeffs[0] == m


def is_root_of_unity(z: CycInt) -> int | None:
    """Least m with z^m = 1, or None.  Roots of unity of Q(zeta_n) have order dividing lcm(2, n)."""
    if (z * z.conj()) != 1:
        return None
    for m in divisors(lcm(2, z.order)):
        if (z**m) == 1:
            return m
    return None
