"""Quotient maps from a product of Fermat-type curves to the Legendre curves.

For C: z^d = -x^2 - 1 and D: w^d = -y^2 - 1, the map
    (X, Y, U) = (-x^2 - 1, x y (x^2 + 1), z w)
sends C x D to the curve Y^2 = X(X+1)(X+U^d).  For C: z^d = x(1-x),
D: w^d = y(1-y) the map
    u' = z w,  x' = -(z w)^d / y,  y' = (z w)^d x (1 - y) / y
lands on E': y'^2 + x'y' + t'y' = x'^3 + t'x'^2 with t' = u'^d.

Both are checked by reducing modulo the two relations (monic in z and w,
so z^d, w^d substitution gives a unique normal form with z, w degrees < d),
or by evaluating at random points of C x D over an extension field.
"""

from __future__ import annotations

import enum
from math import gcd
from dataclasses import dataclass, field

import numpy as np

from .config import max_field
from .errors import DomainError, ResourceError
from .finite_field import Arith, make_field, prime_power

VARS = ("x", "y", "z", "w")


class MultiPoly:
    """Polynomial over F_p in x, y, z, w: dict from exponent 4-tuples to nonzero residues."""

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms: dict[tuple[int, int, int, int], int] | None = None):
        self.p = p
        self.terms = {m: c % p for m, c in (terms or {}).items() if c % p}

    @classmethod
    def const(cls, p: int, c: int) -> MultiPoly:
        return cls(p, {(0, 0, 0, 0): c})

    @classmethod
    def var(cls, p: int, name: str) -> MultiPoly:
        e = [0, 0, 0, 0]
        e[VARS.index(name)] = 1
        return cls(p, {tuple(e): 1})

    def _coerce(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, int):
            return MultiPoly.const(self.p, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = out.get(m, 0) + c
        return MultiPoly(self.p, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.p, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3])
                out[m] = out.get(m, 0) + c1 * c2
        return MultiPoly(self.p, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> MultiPoly:
        result = MultiPoly.const(self.p, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.terms == o.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def degree_in(self, name: str) -> int:
        i = VARS.index(name)
        return max((m[i] for m in self.terms), default=0)

    def sorted_terms(self) -> list[tuple[tuple[int, int, int, int], int]]:
        """Canonical order: by total degree, then lexicographic in (x, y, z, w)."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]))

    def evaluate(self, F: Arith, point: dict[str, int]) -> int:
        vals = [point[v] for v in VARS]
        acc = 0
        for m, c in self.terms.items():
            term = F.integer(c)
            for v, e in zip(vals, m):
                if e:
                    term = F.mul(term, F.pow(v, e))
            acc = F.add(acc, term)
        return acc

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(f"{v}^{e}" if e > 1 else v for v, e in zip(VARS, m) if e)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)


def reduce_relations(P: MultiPoly, d: int, rz: MultiPoly, rw: MultiPoly) -> MultiPoly:
    """Normal form modulo z^d = rz(x), w^d = rw(y): degrees in z and w below d."""
    if rz.degree_in("z") or rz.degree_in("w") or rw.degree_in("z") or rw.degree_in("w"):
        raise DomainError("relations must not involve z or w on the right")
    pz: dict[int, MultiPoly] = {0: MultiPoly.const(P.p, 1)}
    pw: dict[int, MultiPoly] = {0: MultiPoly.const(P.p, 1)}

    def power(cache, base, k):
        if k not in cache:
            cache[k] = base**k
        return cache[k]

    out = MultiPoly(P.p)
    for (a, b, c, e), coef in P.terms.items():
        mono = MultiPoly(P.p, {(a, b, c % d, e % d): coef})
        if c >= d:
            mono = mono * power(pz, rz, c // d)
        if e >= d:
            mono = mono * power(pw, rw, e // d)
        out = out + mono
    return out


# ---------------------------------------------------------------------------


class Mode(str, enum.Enum):
    SYMBOLIC = "symbolic"
    RANDOM = "random"


@dataclass
class IdentityResult:
    name: str
    p: int
    q: int
    d: int
    mode: Mode
    holds: bool
    # number of terms in the reduced form (symbolic) or points tried (random)
    size: int
    witness: dict | None = None
    notes: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.holds


@dataclass
class _Setup:
    """A cleared identity: num / y^k must vanish on C x D."""

    p: int
    d: int
    num: MultiPoly
    rz: MultiPoly
    rw: MultiPoly
    needs_y_nonzero: bool


# Controls that must break the identity.  Flipping the sign of Y is accepted
# as a mutation too, but the relation only sees Y^2, so it cannot fail.
PHI_MUTATIONS = ("shift_X", "square_w")
PHI_PRIME_MUTATIONS = ("shift_y", "shift_x")
INEFFECTIVE_MUTATIONS = ("flip_Y_sign",)


def _phi_setup(p: int, d: int, mutation: str | None) -> _Setup:
    x, y, z, w = (MultiPoly.var(p, v) for v in VARS)
    X = -(x * x) - 1
    Y = x * y * (x * x + 1)
    U = z * w
    if mutation == "flip_Y_sign":
        Y = -Y
    elif mutation == "shift_X":
        X = -(x * x) + 1
    elif mutation == "square_w":
        U = z * w * w
    elif mutation is not None:
        raise DomainError(f"unknown mutation {mutation!r}; choose from {PHI_MUTATIONS + INEFFECTIVE_MUTATIONS}")
    num = Y * Y - X * (X + 1) * (X + U**d)
    return _Setup(p, d, num, -(x * x) - 1, -(y * y) - 1, False)


def _phi_prime_setup(p: int, d: int, mutation: str | None) -> _Setup:
    x, y, z, w = (MultiPoly.var(p, v) for v in VARS)
    T = (z * w) ** d
    # x' = -T / y and y' = T x (1 - y) / y; multiply the relation by y^3
    xn = -T
    yn = T * x * (1 - y)
    if mutation == "shift_y":
        yn = yn + T * y
    elif mutation == "shift_x":
        xn = xn + y
    elif mutation is not None:
        raise DomainError(f"unknown mutation {mutation!r}; choose from {PHI_PRIME_MUTATIONS}")
    # y'^2 + x'y' + t'y' - x'^3 - t'x'^2, times y^3
    num = yn * yn * y + xn * yn * y + T * yn * y * y - xn**3 - T * xn * xn * y
    return _Setup(p, d, num, x * (1 - x), y * (1 - y), True)


def _check_params(p: int, q: int, d: int, need_odd: bool, allow_p_divides_d: bool) -> None:
    pp, _ = prime_power(q)
    if pp != p:
        raise DomainError(f"{q} is not a power of {p}")
    if need_odd and p == 2:
        raise DomainError("this map needs odd p")
    if d < 1:
        raise DomainError("d must be positive")
    # the reduction is still a normal form when p | d, since both relations
    # stay monic in z and w; callers opt in explicitly
    if d % p == 0 and not allow_p_divides_d:
        raise DomainError(f"need p not dividing d, got d = {d}")


def _extension(q: int, d: int):
    """Smallest F_{q^k} containing the d-th roots of unity, with at least 3d elements."""
    p, k0 = prime_power(q)
    while d % p == 0:
        d //= p  # x -> x^p is a bijection, so only the prime-to-p part matters
    k = 1
    while (q**k - 1) % d or q**k < 3 * d:
        k += 1
        if q**k > max_field():
            raise ResourceError(f"no extension of F_{q} with d-th roots of unity within the field bound")
    return make_field(p, k0 * k)


def _dth_root(F: Arith, a: int, d: int, rng: np.random.Generator) -> int | None:
    """A random d-th root of a in the field, or None if a is not a d-th power."""
    if a == 0:
        return 0
    la = F.log[a]
    g = gcd(d, F.N)
    if la % g:
        return None
    # solve d * m = la mod N
    n = F.N // g
    m0 = (la // g) * pow(d // g, -1, n) % n if n > 1 else 0
    m = m0 + n * int(rng.integers(0, g))
    return F.exp[m % F.N]


def _random_point(F: Arith, s: _Setup, rng: np.random.Generator) -> dict[str, int]:
    Q = F.ctx.q
    while True:
        x, y = int(rng.integers(0, Q)), int(rng.integers(0, Q))
        if s.needs_y_nonzero and y == 0:
            continue
        z = _dth_root(F, s.rz.evaluate(F, {"x": x, "y": 0, "z": 0, "w": 0}), s.d, rng)
        w = _dth_root(F, s.rw.evaluate(F, {"x": 0, "y": y, "z": 0, "w": 0}), s.d, rng)
        if z is None or w is None:
            continue
        return {"x": x, "y": y, "z": z, "w": w}


def _find_witness(q: int, s: _Setup, seed: int, attempts: int = 2000) -> dict | None:
    F = Arith(_extension(q, s.d))
    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        pt = _random_point(F, s, rng)
        val = s.num.evaluate(F, pt)
        if val:
            return {"field_size": F.ctx.q, "point": pt, "value": val}
    return None


def _run(name: str, s: _Setup, q: int, mode: Mode | str, trials: int, seed: int) -> IdentityResult:
    mode = Mode(mode)
    if mode is Mode.SYMBOLIC:
        nf = reduce_relations(s.num, s.d, s.rz, s.rw)
        res = IdentityResult(name, s.p, q, s.d, mode, nf.is_zero(), len(nf.terms))
        if not res.holds:
            res.witness = _find_witness(q, s, seed)
        return res
    F = Arith(_extension(q, s.d))
    rng = np.random.default_rng(seed)
    for t in range(trials):
        pt = _random_point(F, s, rng)
        val = s.num.evaluate(F, pt)
        if val:
            return IdentityResult(
                name, s.p, q, s.d, mode, False, t + 1, {"field_size": F.ctx.q, "point": pt, "value": val}
            )
    return IdentityResult(name, s.p, q, s.d, mode, True, trials)


def verify_phi_identity(
    p: int, q: int, d: int, mode: Mode | str = Mode.SYMBOLIC, trials: int = 100, seed: int = 0,
    mutation: str | None = None, allow_p_divides_d: bool = False,
) -> IdentityResult:
    """Y^2 = X(X+1)(X+U^d) under (X, Y, U) = (-x^2-1, xy(x^2+1), zw) on z^d = -x^2-1, w^d = -y^2-1."""
    _check_params(p, q, d, True, allow_p_divides_d)
    return _run("phi", _phi_setup(p, d, mutation), q, mode, trials, seed)


def verify_phi_prime_identity(
    p: int, q: int, d: int, mode: Mode | str = Mode.SYMBOLIC, trials: int = 100, seed: int = 0,
    mutation: str | None = None, allow_p_divides_d: bool = False,
) -> IdentityResult:
    """The E' relation under u' = zw, x' = -(zw)^d/y, y' = (zw)^d x(1-y)/y on z^d = x(1-x), w^d = y(1-y)."""
    _check_params(p, q, d, False, allow_p_divides_d)
    return _run("phi_prime", _phi_prime_setup(p, d, mutation), q, mode, trials, seed)


def mutation_controls(
    p: int, q: int, d: int, prime: bool = False, seed: int = 0, allow_p_divides_d: bool = False
) -> dict[str, IdentityResult]:
    """Run each perturbed map symbolically; an effective control fails with a witness."""
    runner = verify_phi_prime_identity if prime else verify_phi_identity
    names = PHI_PRIME_MUTATIONS if prime else PHI_MUTATIONS
    return {
        m: runner(p, q, d, Mode.SYMBOLIC, seed=seed, mutation=m, allow_p_divides_d=allow_p_divides_d)
        for m in names
    }
