"""Finite fields F_{p^k} with full exp/log tables, and multiplicative characters.

An element is a coefficient vector (c_0, ..., c_{k-1}) of a polynomial modulo
the defining modulus.  Internally it is packed as the integer
``c_0 + c_1 p + ... + c_{k-1} p^{k-1}`` (its *code*), which is a bijection on
coefficient vectors, so code equality is coefficient-wise equality.  The zero
element has code 0 and the one element code 1.

Characters take values in abstract roots of unity: the character with exponent
``m`` sends the generator ``g`` to ``zeta_{q-1}^m`` (``t`` = exponent 1 is the
Teichmueller character pinned by the choice of ``g``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd
from typing import NamedTuple, Sequence

import numpy as np
from sympy import factorint, isprime

from .config import max_field
from .errors import DomainError, ResourceError

# ---------------------------------------------------------------------------
# dense polynomials over F_p as lists, low degree first


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _pmod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    a = list(a)
    df = len(f) - 1
    inv = pow(f[-1], -1, p)
    while len(_trim(a)) - 1 >= df:
        shift = len(a) - 1 - df
        c = a[-1] * inv % p
        for j, fj in enumerate(f):
            a[shift + j] = (a[shift + j] - c * fj) % p
    return a


def _psub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(a: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return result


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Ben-Or test for a monic polynomial over F_p (coefficients low degree first)."""
    f = _trim(list(f))
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    h = x
    for _ in range(n // 2):
        h = _ppowmod(h, p, f, p)
        if len(_pgcd(f, _psub(h, x, p), p)) != 1:
            return False
    return True


def _digits(code: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        code, r = divmod(code, p)
        out.append(r)
    return out


def _from_digits(digits: Sequence[int], p: int) -> int:
    code = 0
    for c in reversed(digits):
        code = code * p + c
    return code


# ---------------------------------------------------------------------------


class Root(NamedTuple):
    """The root of unity zeta_order^index, kept in lowest terms."""

    order: int
    index: int


def _lowest(order: int, index: int) -> Root:
    index %= order
    g = gcd(order, index)
    return Root(order // g, index // g)


class FieldContext:
    """The field F_{p^k} with eager exp/log tables."""

    def __init__(self, p: int, k: int, modulus: Sequence[int], generator: int, exp: np.ndarray):
        self.p = p
        self.k = k
        self.modulus = tuple(modulus)
        self.generator = generator
        self.q = p**k
        self.N = self.q - 1
        exp.setflags(write=False)
        self.exp = exp
        log = np.full(self.q, -1, dtype=np.int64)
        log[exp] = np.arange(self.N, dtype=np.int64)
        log.setflags(write=False)
        self.log = log
        self._pw = p ** np.arange(k, dtype=np.int64)

    def __repr__(self) -> str:
        return f"FieldContext(p={self.p}, k={self.k}, modulus={self.modulus}, generator={self.generator})"

    # -- element packing
    def vec(self, a: int) -> tuple[int, ...]:
        return tuple(_digits(a, self.p, self.k))

    def from_vec(self, coeffs: Sequence[int]) -> int:
        coeffs = list(coeffs) + [0] * (self.k - len(coeffs))
        if len(coeffs) > self.k:
            raise DomainError("too many coefficients for this field")
        return _from_digits([c % self.p for c in coeffs], self.p)

    def element(self, c: int) -> int:
        """Image of the integer c in the prime field."""
        return c % self.p

    @cached_property
    def digits(self) -> np.ndarray:
        codes = np.arange(self.q, dtype=np.int64)
        out = np.empty((self.q, self.k), dtype=np.int64)
        for j in range(self.k):
            codes, out[:, j] = np.divmod(codes, self.p)
        out.setflags(write=False)
        return out

    def pack(self, digits: np.ndarray) -> np.ndarray:
        return digits @ self._pw

    # -- scalar arithmetic
    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if a == 0:
            return b
        if b == 0:
            return a
        la = int(self.log[a])
        z = int(self.zech[(int(self.log[b]) - la) % self.N])
        return 0 if z < 0 else int(self.exp[(la + z) % self.N])

    def neg(self, a: int) -> int:
        if a == 0 or self.p == 2:
            return a
        if self.k == 1:
            return self.p - a
        return int(self.exp[(int(self.log[a]) + self.N // 2) % self.N])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(int(self.log[a]) + int(self.log[b])) % self.N])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return int(self.exp[(-int(self.log[a])) % self.N])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return int(self.exp[(int(self.log[a]) * e) % self.N])

    def gen_power(self, m: int) -> int:
        return int(self.exp[m % self.N])

    def order_of(self, a: int) -> int:
        if a == 0:
            raise DomainError("zero has no multiplicative order")
        return self.N // gcd(self.N, int(self.log[a]))

    @cached_property
    def zech(self) -> np.ndarray:
        """zech[m] = log(1 + g^m), or -1 where 1 + g^m = 0."""
        d = np.array(self.digits[self.exp])
        d[:, 0] = (d[:, 0] + 1) % self.p
        z = self.log[self.pack(d)]
        z.setflags(write=False)
        return z

    # -- vectorised helpers over arrays of codes
    def add_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.pack((self.digits[a] + self.digits[b]) % self.p)

    def neg_array(self, a: np.ndarray) -> np.ndarray:
        return self.pack((-self.digits[a]) % self.p)

    def mul_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        out = self.exp[(self.log[a] + self.log[b]) % self.N]
        return np.where((a == 0) | (b == 0), 0, out)


class Arith:
    """Scalar arithmetic on the codes of a FieldContext through plain Python lists.

    Faster than the numpy-backed scalar methods when called in tight loops.
    """

    def __init__(self, ctx: FieldContext):
        self.ctx = ctx
        self.p, self.k, self.N = ctx.p, ctx.k, ctx.N
        self.exp = [int(v) for v in ctx.exp]
        self.log = [int(v) for v in ctx.log]
        self.zech = [int(v) for v in ctx.zech] if ctx.k > 1 else None

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if a == 0:
            return b
        if b == 0:
            return a
        la = self.log[a]
        z = self.zech[(self.log[b] - la) % self.N]
        return 0 if z < 0 else self.exp[(la + z) % self.N]

    def neg(self, a: int) -> int:
        if a == 0 or self.p == 2:
            return a
        if self.k == 1:
            return self.p - a
        return self.exp[(self.log[a] + self.N // 2) % self.N]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % self.N]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.exp[-self.log[a] % self.N]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 1 if e == 0 else 0
        return self.exp[self.log[a] * e % self.N]

    def integer(self, n: int) -> int:
        return n % self.p


# ---------------------------------------------------------------------------


def _mul_matrix(c: Sequence[int], f: Sequence[int], p: int, k: int) -> np.ndarray:
    """Matrix of y -> c*y on digit row vectors: row_out = row_in @ M."""
    M = np.zeros((k, k), dtype=np.int64)
    for j in range(k):
        xj = [0] * j + [1]
        col = _pmod(_pmul(c, xj, p), f, p) if c else []
        for i, v in enumerate(col):
            M[j, i] = v
    return M


def _is_primitive(c: list[int], f: Sequence[int], p: int, N: int, prime_factors: Sequence[int]) -> bool:
    for r in prime_factors:
        if _ppowmod(c, N // r, f, p) == [1]:
            return False
    return True


def _build_exp(gen: list[int], f: Sequence[int], p: int, k: int) -> np.ndarray:
    N = p**k - 1
    rows = np.zeros((1, k), dtype=np.int64)
    rows[0, 0] = 1
    step = gen
    while rows.shape[0] < N:
        M = _mul_matrix(step, f, p, k)
        rows = np.vstack([rows, (rows @ M) % p])
        step = _pmod(_pmul(step, step, p), f, p)
    rows = rows[:N]
    return rows @ (p ** np.arange(k, dtype=np.int64))


@lru_cache(maxsize=None)
def _make_field_cached(p: int, k: int, modulus: tuple[int, ...] | None) -> FieldContext:
    if not isprime(p):
        raise DomainError(f"{p} is not prime")
    if k < 1:
        raise DomainError("extension degree must be at least 1")
    q = p**k
    if q > max_field():
        raise ResourceError(f"field size {p}^{k} exceeds the bound {max_field()}")
    if modulus is None:
        # least monic irreducible by code of its lower coefficients (compares high coefficients first)
        for low in range(p**k):
            cand = _digits(low, p, k) + [1]
            if is_irreducible(cand, p):
                modulus = tuple(cand)
                break
    else:
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise DomainError("modulus must be monic of degree k (coefficients low degree first)")
        if not is_irreducible(modulus, p):
            raise DomainError(f"modulus {modulus} is reducible over F_{p}")
    N = q - 1
    primes = sorted(factorint(N)) if N > 1 else []
    for code in range(1, q):
        c = _trim(_digits(code, p, k))
        if N == 1 or _is_primitive(c, modulus, p, N, primes):
            generator = code
            break
    exp = _build_exp(_trim(_digits(generator, p, k)), modulus, p, k)
    if len(np.unique(exp)) != N:
        raise AssertionError("generator table is not a permutation")
    return FieldContext(p, k, modulus, generator, exp)


def make_field(p: int, k: int = 1, modulus: Sequence[int] | None = None) -> FieldContext:
    """Deterministic F_{p^k}.  ``modulus`` is monic, coefficients low degree first."""
    return _make_field_cached(int(p), int(k), None if modulus is None else tuple(int(c) for c in modulus))


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p^k, or raise DomainError."""
    if q < 2:
        raise DomainError(f"{q} is not a prime power")
    f = factorint(q)
    if len(f) != 1:
        raise DomainError(f"{q} is not a prime power")
    ((p, k),) = f.items()
    return int(p), int(k)


def field_of_size(q: int) -> FieldContext:
    p, k = prime_power(q)
    return make_field(p, k)


def discrete_log(ctx: FieldContext, x: int) -> int:
    if x == 0:
        raise DomainError("discrete log of zero")
    return int(ctx.log[x])


def embed_subfield(small: FieldContext, big: FieldContext) -> np.ndarray:
    """Table of codes: small element -> its image in big.

    The image of the small field's variable is the least root (by code) of the
    small modulus inside the big field.
    """
    if small.p != big.p or big.k % small.k:
        raise DomainError("no embedding between these fields")
    root = None
    for r in range(big.q):
        acc = 0
        for c in reversed(small.modulus):
            acc = big.add(big.mul(acc, r), c)
        if acc == 0:
            root = r
            break
    assert root is not None
    powers = [1]
    for _ in range(small.k - 1):
        powers.append(big.mul(powers[-1], root))
    table = np.zeros(small.q, dtype=np.int64)
    for code in range(small.q):
        acc = 0
        for c, rp in zip(small.vec(code), powers):
            acc = big.add(acc, big.mul(c, rp))
        table[code] = acc
    return table


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CharacterSpec:
    """The character x -> zeta_{q-1}^{m * log x} of F_q^x, extended to 0."""

    field: FieldContext
    exponent: int

    def __post_init__(self):
        object.__setattr__(self, "exponent", self.exponent % self.field.N)

    @property
    def value_order(self) -> int:
        return self.field.N // gcd(self.field.N, self.exponent)

    @property
    def is_trivial(self) -> bool:
        return self.exponent == 0

    def __mul__(self, other: "CharacterSpec") -> "CharacterSpec":
        if other.field is not self.field:
            raise DomainError("characters live on different fields")
        return CharacterSpec(self.field, self.exponent + other.exponent)

    def __pow__(self, n: int) -> "CharacterSpec":
        return CharacterSpec(self.field, self.exponent * n)

    def conjugate(self) -> "CharacterSpec":
        return CharacterSpec(self.field, -self.exponent)

    def __call__(self, x: int):
        return char_value(self, x)

    def index_array(self) -> np.ndarray:
        """Exponents of zeta_{value_order} for every field code; -1 marks the value 0."""
        n = self.value_order
        step = self.exponent // (self.field.N // n)
        out = (self.field.log * step) % n
        out[0] = 0 if self.is_trivial else -1
        return out


def character(ctx: FieldContext, exponent: int) -> CharacterSpec:
    return CharacterSpec(ctx, exponent)


def teichmuller(ctx: FieldContext) -> CharacterSpec:
    return CharacterSpec(ctx, 1)


def quadratic_character(ctx: FieldContext) -> CharacterSpec:
    if ctx.p == 2:
        raise DomainError("no quadratic character in characteristic 2")
    return CharacterSpec(ctx, ctx.N // 2)


def char_value(chi: CharacterSpec, x: int) -> Root | int:
    """chi(x) as a Root in lowest terms, or the integer 0."""
    if x == 0:
        return Root(1, 0) if chi.is_trivial else 0
    return _lowest(chi.field.N, chi.exponent * int(chi.field.log[x]))
