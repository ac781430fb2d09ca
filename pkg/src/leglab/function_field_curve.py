"""The Legendre curve y^2 = x(x+1)(x+u^d) over the rational function field F_q(u).

Field elements are integer codes of a ``FieldContext``; polynomials in u are
tuples of codes (constant term first, no trailing zeros).  Rational functions
are kept reduced with a monic denominator, so equality is tuple equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from sympy import Matrix

from .errors import DomainError
from .finite_field import Arith, FieldContext, field_of_size, prime_power


# ---------------------------------------------------------------------------
# polynomials in u


def _trim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def padd(F: Arith, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for j, v in enumerate(b):
        out[j] = F.add(out[j], v)
    return _trim(out)


def pneg(F: Arith, a: Sequence[int]) -> tuple[int, ...]:
    return tuple(F.neg(v) for v in a)


def psub(F: Arith, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return padd(F, a, pneg(F, b))


def pscale(F: Arith, a: Sequence[int], c: int) -> tuple[int, ...]:
    if c == 0:
        return ()
    return tuple(F.mul(v, c) for v in a)


def pmul(F: Arith, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    if not a or not b:
        return ()
    # accumulate in the log domain where possible
    out = [0] * (len(a) + len(b) - 1)
    bl = [(j, F.log[v]) for j, v in enumerate(b) if v]
    exp, N = F.exp, F.N
    for i, x in enumerate(a):
        if not x:
            continue
        lx = F.log[x]
        for j, ly in bl:
            out[i + j] = F.add(out[i + j], exp[(lx + ly) % N])
    return _trim(out)


def pdivmod(F: Arith, a: Sequence[int], b: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) <= db:
        return (), tuple(r)
    inv_lead = F.inv(b[-1])
    quo = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if c:
            c = F.mul(c, inv_lead)
            quo[k - db] = c
            for j, bj in enumerate(b):
                if bj:
                    r[k - db + j] = F.sub(r[k - db + j], F.mul(c, bj))
    return _trim(quo), _trim(r[:db])


def pmonic(F: Arith, a: Sequence[int]) -> tuple[int, ...]:
    if not a:
        return ()
    return pscale(F, a, F.inv(a[-1]))


def pgcd(F: Arith, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    a, b = tuple(a), tuple(b)
    while b:
        a, b = b, pdivmod(F, a, b)[1]
    return pmonic(F, a)


def ppow(F: Arith, a: Sequence[int], e: int) -> tuple[int, ...]:
    result: tuple[int, ...] = (1,)
    base = tuple(a)
    while e:
        if e & 1:
            result = pmul(F, result, base)
        base = pmul(F, base, base)
        e >>= 1
    return result


def pscale_var(F: Arith, a: Sequence[int], c: int) -> tuple[int, ...]:
    """a(c u)."""
    return _trim([F.mul(v, F.pow(c, j)) for j, v in enumerate(a)])


def pmonomial(n: int, c: int = 1) -> tuple[int, ...]:
    return tuple([0] * n + [c])


# ---------------------------------------------------------------------------


class RatFunc:
    """num/den in F_q(u), reduced, den monic."""

    __slots__ = ("F", "num", "den")

    def __init__(self, F: Arith, num: Sequence[int], den: Sequence[int] = (1,), reduce: bool = True):
        num, den = _trim(list(num)), _trim(list(den))
        if not den:
            raise ZeroDivisionError("zero denominator")
        if reduce:
            if not num:
                den = (1,)
            else:
                g = pgcd(F, num, den)
                if g != (1,):
                    num = pdivmod(F, num, g)[0]
                    den = pdivmod(F, den, g)[0]
            lead = den[-1]
            if lead != 1:
                il = F.inv(lead)
                num, den = pscale(F, num, il), pscale(F, den, il)
        self.F, self.num, self.den = F, num, den

    @classmethod
    def const(cls, F: Arith, c: int) -> RatFunc:
        return cls(F, (c,), (1,), reduce=False) if c else cls(F, (), (1,), reduce=False)

    @classmethod
    def u_power(cls, F: Arith, n: int, c: int = 1) -> RatFunc:
        if n >= 0:
            return cls(F, pmonomial(n, c), (1,), reduce=False)
        return cls(F, (c,), pmonomial(-n), reduce=False)

    def _coerce(self, other) -> RatFunc:
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, int):
            return RatFunc.const(self.F, self.F.integer(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        F = self.F
        if self.den == o.den:
            return RatFunc(F, padd(F, self.num, o.num), self.den)
        num = padd(F, pmul(F, self.num, o.den), pmul(F, o.num, self.den))
        return RatFunc(F, num, pmul(F, self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.F, pneg(self.F, self.num), self.den, reduce=False)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        F = self.F
        return RatFunc(F, pmul(F, self.num, o.num), pmul(F, self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        F = self.F
        return RatFunc(F, pmul(F, self.num, o.den), pmul(F, self.den, o.num))

    def __pow__(self, e: int) -> RatFunc:
        if e < 0:
            return RatFunc.const(self.F, 1) / (self ** (-e))
        return RatFunc(self.F, ppow(self.F, self.num, e), ppow(self.F, self.den, e), reduce=False)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def is_zero(self) -> bool:
        return not self.num

    def subs_scale(self, c: int) -> RatFunc:
        """f(u) -> f(c u)."""
        F = self.F
        return RatFunc(F, pscale_var(F, self.num, c), pscale_var(F, self.den, c))

    def valuation_at(self, r: int) -> int:
        """Order of vanishing at u = r (r a nonzero field element)."""
        return _mult(self.F, self.num, r) - _mult(self.F, self.den, r)

    def supported_on_multiples(self, m: int) -> bool:
        return all(v == 0 or j % m == 0 for poly in (self.num, self.den) for j, v in enumerate(poly))

    def __repr__(self) -> str:
        return f"RatFunc({list(self.num)}, {list(self.den)})"


def _mult(F: Arith, a: Sequence[int], r: int) -> int:
    if not a:
        raise DomainError("valuation of the zero function")
    lin = (F.neg(r), 1)
    count = 0
    a = tuple(a)
    while True:
        q, rem = pdivmod(F, a, lin)
        if rem:
            return count
        a, count = q, count + 1


# ---------------------------------------------------------------------------
# the curve


@dataclass(frozen=True)
class CurveContext:
    p: int
    q: int
    d: int
    f: int | None
    field: FieldContext
    zeta: int | None  # least power of the generator of exact order d, if d | q-1

    @cached_property
    def F(self) -> Arith:
        return Arith(self.field)

    @cached_property
    def t(self) -> RatFunc:
        return RatFunc.u_power(self.F, self.d)

    def require_zeta(self) -> int:
        if self.zeta is None:
            raise DomainError(f"q = {self.q} is not 1 mod d = {self.d}")
        return self.zeta

    def zeta_power(self, j: int) -> int:
        return self.F.pow(self.require_zeta(), j)


def curve_context(p: int, q: int, d: int, f: int | None = None) -> CurveContext:
    pp, _ = prime_power(q)
    if pp != p:
        raise DomainError(f"{q} is not a power of {p}")
    if d <= 2 or d % p == 0:
        raise DomainError(f"need d > 2 and p not dividing d, got d = {d}")
    ctx = field_of_size(q)
    zeta = ctx.gen_power(ctx.N // d) if ctx.N % d == 0 else None
    return CurveContext(p, q, d, f, ctx, zeta)


def legendre_context(p: int, f: int, q: int) -> CurveContext:
    """Context with d = 2(p^f - 1), the level of the points R_i."""
    if p == 2 or f < 1:
        raise DomainError("need odd p and f >= 1")
    return curve_context(p, q, 2 * (p**f - 1), f)


@dataclass(frozen=True)
class CurvePoint:
    x: RatFunc | None
    y: RatFunc | None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __repr__(self) -> str:
        return "O" if self.is_infinity else f"CurvePoint({self.x!r}, {self.y!r})"


INFINITY = CurvePoint(None, None)


def _a2_a4(ctx: CurveContext) -> tuple[RatFunc, RatFunc]:
    return ctx.t + 1, ctx.t


def on_curve(ctx: CurveContext, P: CurvePoint) -> bool:
    if P.is_infinity:
        return True
    x, y = P.x, P.y
    return (y * y - x * (x + 1) * (x + ctx.t)).is_zero()


def point(ctx: CurveContext, x: RatFunc, y: RatFunc) -> CurvePoint:
    P = CurvePoint(x, y)
    if not on_curve(ctx, P):
        raise DomainError("point is not on the curve")
    return P


def negate(ctx: CurveContext, P: CurvePoint) -> CurvePoint:
    if P.is_infinity:
        return P
    return CurvePoint(P.x, -P.y)


def add(ctx: CurveContext, P1: CurvePoint, P2: CurvePoint) -> CurvePoint:
    """Chord-tangent law on y^2 = x^3 + a2 x^2 + a4 x."""
    if P1.is_infinity:
        return P2
    if P2.is_infinity:
        return P1
    a2, a4 = _a2_a4(ctx)
    if P1.x == P2.x:
        if (P1.y + P2.y).is_zero():
            return INFINITY
        # doubling
        x, y = P1.x, P1.y
        lam = (3 * x * x + 2 * a2 * x + a4) / (2 * y)
    else:
        lam = (P2.y - P1.y) / (P2.x - P1.x)
    x3 = lam * lam - a2 - P1.x - P2.x
    y3 = lam * (P1.x - x3) - P1.y
    return CurvePoint(x3, y3)


def double(ctx: CurveContext, P: CurvePoint) -> CurvePoint:
    return add(ctx, P, P)


def mul(ctx: CurveContext, n: int, P: CurvePoint) -> CurvePoint:
    if n < 0:
        return mul(ctx, -n, negate(ctx, P))
    result, base = INFINITY, P
    while n:
        if n & 1:
            result = add(ctx, result, base)
        base = add(ctx, base, base)
        n >>= 1
    return result


def add_all(ctx: CurveContext, points: Sequence[CurvePoint]) -> CurvePoint:
    acc = INFINITY
    for P in points:
        acc = add(ctx, acc, P)
    return acc


# ---------------------------------------------------------------------------
# named points


def torsion_points(ctx: CurveContext) -> dict[str, CurvePoint]:
    """Q0, Q1, Qt and, for even d, the 4-torsion points P2_0, P2_1."""
    F = ctx.F
    zero, one = RatFunc.const(F, 0), RatFunc.const(F, 1)
    pts = {
        "Q0": CurvePoint(zero, zero),
        "Q1": CurvePoint(-one, zero),
        "Qt": CurvePoint(-ctx.t, zero),
    }
    if ctx.d % 2 == 0:
        s = RatFunc.u_power(F, ctx.d // 2)
        pts["P2_0"] = CurvePoint(s, s * (s + 1))
        pts["P2_1"] = CurvePoint(-s, -s * (1 - s))
    return pts


def four_torsion(ctx: CurveContext, i: int) -> CurvePoint:
    return torsion_points(ctx)[f"P2_{i % 2}"]


def _require_R_level(ctx: CurveContext) -> int:
    if ctx.f is None or ctx.d != 2 * (ctx.p**ctx.f - 1):
        raise DomainError("the points R_i need d = 2(p^f - 1)")
    ctx.require_zeta()
    return ctx.p**ctx.f


def point_R(ctx: CurveContext, i: int) -> CurvePoint:
    """R_i = R(zeta^i u) with R(u) = (u^-2, u^-3 (u^2+1)^((p^f+1)/2))."""
    pf = _require_R_level(ctx)
    F = ctx.F
    u2 = RatFunc.u_power(F, 2)
    R = CurvePoint(RatFunc.u_power(F, -2), RatFunc.u_power(F, -3) * (u2 + 1) ** ((pf + 1) // 2))
    P = galois_apply(ctx, i, R)
    if not on_curve(ctx, P):
        raise DomainError(f"R_{i} failed the curve equation")
    return P


def point_P(ctx: CurveContext, i: int) -> CurvePoint:
    """P_i = (zeta^i u, zeta^i u (zeta^i u + 1)^(d/2)) for d = p^f + 1."""
    if ctx.f is None or ctx.d != ctx.p**ctx.f + 1:
        raise DomainError("the points P_i need d = p^f + 1")
    F = ctx.F
    v = RatFunc.u_power(F, 1, ctx.zeta_power(i))
    P = CurvePoint(v, v * (v + 1) ** (ctx.d // 2))
    if not on_curve(ctx, P):
        raise DomainError(f"P_{i} failed the curve equation")
    return P


def galois_apply(ctx: CurveContext, j: int, P: CurvePoint) -> CurvePoint:
    """Substitute u -> zeta^j u."""
    if P.is_infinity:
        return P
    c = ctx.zeta_power(j)
    return CurvePoint(P.x.subs_scale(c), P.y.subs_scale(c))


def trace_to_level(ctx: CurveContext, P: CurvePoint, e: int) -> CurvePoint:
    """Sum of the conjugates of P over F_q(u^(d/e)), i.e. over u -> zeta^j u with e | j."""
    if e < 1 or ctx.d % e:
        raise DomainError(f"{e} does not divide d = {ctx.d}")
    return add_all(ctx, [galois_apply(ctx, j, P) for j in range(0, ctx.d, e)])


def in_level(ctx: CurveContext, P: CurvePoint, e: int) -> bool:
    """Are both coordinates in F_q(u^(d/e))?"""
    if P.is_infinity:
        return True
    m = ctx.d // e
    return P.x.supported_on_multiples(m) and P.y.supported_on_multiples(m)


# ---------------------------------------------------------------------------
# 2-descent


SelmerVector = tuple[int, ...]


def selmer_image(ctx: CurveContext, P: CurvePoint) -> SelmerVector:
    """(ord_{u = zeta^j}(x + 1) mod 2) for j = 0..d-1."""
    if ctx.d % 2:
        raise DomainError("the Selmer image needs even d")
    if P.is_infinity:
        raise DomainError("the Selmer map is not defined at O")
    xp1 = P.x + 1
    if xp1.is_zero():
        raise DomainError("the Selmer map is not defined at Q1")
    return tuple(xp1.valuation_at(ctx.zeta_power(j)) % 2 for j in range(ctx.d))


@dataclass(frozen=True)
class SelmerSpace:
    q: int
    d: int
    full: bool

    @property
    def dimension(self) -> int:
        return self.d if self.full else self.d - 2

    def __contains__(self, v: Sequence[int]) -> bool:
        if len(v) != self.d:
            return False
        if self.full:
            return True
        return sum(v[0::2]) % 2 == 0 and sum(v[1::2]) % 2 == 0


def selmer_space(q: int, d: int) -> SelmerSpace:
    if d % 2 or (q - 1) % d:
        raise DomainError("need d even and q = 1 mod d")
    return SelmerSpace(q, d, ((q - 1) // d) % 2 == 0)


def span_dimension(vectors: Sequence[Sequence[int]]) -> int:
    """Rank over GF(2)."""
    basis: list[int] = []
    for v in vectors:
        x = sum(1 << j for j, b in enumerate(v) if b % 2)
        for b in basis:
            x = min(x, x ^ b)
        if x:
            basis.append(x)
    return len(basis)


def vector_add(a: Sequence[int], b: Sequence[int]) -> SelmerVector:
    return tuple((x + y) % 2 for x, y in zip(a, b))


def half_sum_combinations(ctx: CurveContext) -> tuple[CurvePoint, CurvePoint]:
    """sum_{i<d/4} R_{2i} + P2_{1+d/4} and sum_{i<d/4} R_{2i+1} + P2_{d/4}."""
    _require_R_level(ctx)
    if ctx.d % 4:
        raise DomainError("need 4 | d")
    n = ctx.d // 4
    even = add_all(ctx, [point_R(ctx, 2 * i) for i in range(n)] + [four_torsion(ctx, 1 + n)])
    odd = add_all(ctx, [point_R(ctx, 2 * i + 1) for i in range(n)] + [four_torsion(ctx, n)])
    return even, odd


def divisibility_necessary_check(ctx: CurveContext) -> bool:
    """Both combinations have zero Selmer image (necessary for 2-divisibility)."""
    zero = (0,) * ctx.d
    return all(selmer_image(ctx, P) == zero for P in half_sum_combinations(ctx))


def double_of_four_torsion(ctx: CurveContext) -> str:
    """Name of the 2-torsion point equal to 2 * P2_0."""
    T = torsion_points(ctx)
    D = double(ctx, T["P2_0"])
    for name in ("Q0", "Q1", "Qt"):
        if D == T[name]:
            return name
    return "O" if D.is_infinity else "other"


# ---------------------------------------------------------------------------
# heights


@dataclass(frozen=True)
class GramMatrix:
    entries: tuple[tuple[Fraction, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def determinant(self) -> Fraction:
        if not self.entries:
            return Fraction(1)
        det = Matrix(self.entries).det()
        return Fraction(int(det.p), int(det.q))

    def is_symmetric(self) -> bool:
        n = self.size
        return all(self.entries[i][j] == self.entries[j][i] for i in range(n) for j in range(n))


def height_gram(ctx: CurveContext) -> GramMatrix:
    """<R_i, R_j> for 0 <= i, j < d/2: p^f on the diagonal, 0 elsewhere (without log q)."""
    if ctx.f is None or ctx.d != 2 * (ctx.p**ctx.f - 1):
        raise DomainError("the height lattice needs d = 2(p^f - 1)")
    pf = ctx.p**ctx.f
    n = ctx.d // 2
    return GramMatrix(
        tuple(tuple(Fraction(pf if i == j else 0) for j in range(n)) for i in range(n))
    )
