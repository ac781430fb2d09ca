"""The L-function of the Legendre curve over F_q(u), u^d = t, in factored form.

L(E/K, T) = prod over orbits o of (1 - J_o^2 T^|o|), and the analogous product
with J'_o for the curve E'.  Alongside the factorization this module holds the
rank formula, a brute-force point-count oracle for the log-coefficients, and
the rational quantities entering the BSD ratio for d = 2(p^f - 1).
"""

from __future__ import annotations

import re
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

import numpy as np
from sympy import divisors, totient

from .config import max_ops
from .cyclotomic import CycInt
from .errors import ConsistencyError, DomainError, ResourceError
from .finite_field import character, make_field, prime_power, quadratic_character
from .jacobi import jacobi_J_o, jacobi_Jprime_o, jacobi_sum
from .residue_groups import Orbit, balanced_mod, multiplicative_order, orbits_mod_d


CURVES = ("E", "E'")


@dataclass(frozen=True)
class LFactor:
    jsquared: CycInt
    size: int
    orbit: Orbit


@dataclass(frozen=True)
class LFactorization:
    p: int
    q: int
    d: int
    curve: str
    factors: tuple[LFactor, ...]
    # d with its p-part removed; equals d unless p | d
    reduced_d: int = 0

    @property
    def degree(self) -> int:
        return sum(f.size for f in self.factors)

    def polynomial(self) -> list[int]:
        """Integer coefficients of L in T, constant term first."""
        coeffs = [CycInt.integer(1)]
        for f in self.factors:
            out = coeffs + [CycInt.integer(0)] * f.size
            for j, c in enumerate(coeffs):
                out[j + f.size] = out[j + f.size] - f.jsquared * c
            coeffs = out
        return [c.as_integer() for c in coeffs]

    def expanded(self) -> str:
        return format_poly(self.polynomial())

    def factored(self) -> str:
        if not self.factors:
            return "1"
        parts = []
        for f in self.factors:
            a = str(f.jsquared) if f.jsquared.is_integer() else f"({f.jsquared})"
            mono = "T" if f.size == 1 else f"T^{f.size}"
            parts.append(f"(1 - {a}{mono})".replace("- -", "+ "))
        return "".join(parts)


def format_poly(coeffs: list[int], var: str = "T") -> str:
    terms = []
    for j, c in enumerate(coeffs):
        if c == 0:
            continue
        mono = "" if j == 0 else var if j == 1 else f"{var}^{j}"
        mag = abs(c)
        body = f"{mag}{mono}" if (mag != 1 or not mono) else mono
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(("+ " if c > 0 else "- ") + body)
    return " ".join(terms) or "0"


def prime_to_p_part(d: int, p: int) -> int:
    while d % p == 0:
        d //= p
    return d


def lfunction_factors(p: int, q: int, d: int, curve: str = "E") -> LFactorization:
    """One factor (J_o^2, |o|) per orbit of x -> qx on Z/dZ minus {0, d/2}.

    If p divides d the curve is a Frobenius pullback of the one at the prime-to-p
    level d0 (u^d = (u^(d/d0))^d0 with d/d0 a power of p), which has the same
    L-function; the factors are taken at level d0.
    """
    if curve not in CURVES:
        raise DomainError(f"curve must be one of {CURVES}, got {curve!r}")
    pp, _ = prime_power(q)
    if pp != p:
        raise DomainError(f"{q} is not a power of {p}")
    if d < 1:
        raise DomainError("d must be positive")
    if curve == "E" and p == 2:
        raise DomainError("E needs odd p; use curve E' in characteristic 2")
    d0 = prime_to_p_part(d, p)
    factors = []
    if d0 > 2:
        sums = jacobi_J_o if curve == "E" else jacobi_Jprime_o
        for o in orbits_mod_d(d0, q):
            J = sums(p, q, d0, o)
            factors.append(LFactor(J.squared(), o.size, o))
    return LFactorization(p, q, d, curve, tuple(factors), d0)


def analytic_rank(L: LFactorization) -> int:
    """Number of factors vanishing at T = 1/q, i.e. with J^2 = q^|o|."""
    return sum(1 for f in L.factors if f.jsquared == L.q**f.size)


def log_coefficient(L: LFactorization, n: int) -> int:
    """c_n with log L(T) = sum_n c_n T^n / n."""
    if n < 1:
        raise DomainError("n must be positive")
    total = CycInt.integer(0)
    for f in L.factors:
        if n % f.size == 0:
            total = total - f.size * f.jsquared ** (n // f.size)
    if not total.is_integer():
        raise ConsistencyError(f"log-coefficient c_{n} is not a rational integer: {total}")
    return total.as_integer()


# ---------------------------------------------------------------------------
# rank formula


@dataclass(frozen=True)
class QMod:
    """q known only through its residue r modulo m."""

    r: int
    m: int

    def mod(self, e: int) -> int:
        if self.m % e:
            raise DomainError(f"q is only known modulo {self.m}; cannot reduce modulo {e}")
        return self.r % e

    def __str__(self) -> str:
        return f"{self.r} mod {self.m}"


_QMOD_RE = re.compile(r"^\s*(-?\d+)\s*mod\s*(\d+)\s*$")


def parse_qmod(text: str) -> QMod:
    m = _QMOD_RE.match(text)
    if not m:
        raise DomainError(f"expected 'r mod m', got {text!r}")
    r, mod = int(m.group(1)), int(m.group(2))
    if mod < 1:
        raise DomainError("modulus must be positive")
    return QMod(r % mod, mod)


@dataclass(frozen=True)
class RankRow:
    e: int
    balanced: bool
    phi: int
    order: int
    contribution: int


@dataclass(frozen=True)
class RankFormula:
    p: int
    q: int | QMod
    d: int
    rank: int
    table: tuple[RankRow, ...]


def _rank_sum(p: int, q: int | QMod, d: int) -> RankFormula:
    if d < 1:
        raise DomainError("d must be positive")
    if gcd(p, d) != 1:
        raise DomainError(f"p = {p} divides d = {d}")
    rows = []
    for e in divisors(d):
        if e <= 2:
            continue
        qe = q.mod(e) if isinstance(q, QMod) else q % e
        if gcd(qe, e) != 1:
            raise DomainError(f"q is not a unit modulo {e}")
        bal = balanced_mod(p, e)
        phi = int(totient(e))
        o = multiplicative_order(qe, e)
        rows.append(RankRow(e, bal, phi, o, phi // o if bal else 0))
    return RankFormula(p, q, d, sum(r.contribution for r in rows), tuple(rows))


def rank_formula(p: int, q: int | QMod | str, d: int) -> RankFormula:
    """Sum of phi(e)/o_e(q) over e | d, e > 2, with p balanced modulo e."""
    if p == 2:
        raise DomainError("use rank_formula_char2 for p = 2")
    if isinstance(q, str):
        q = parse_qmod(q)
    return _rank_sum(p, q, d)


def rank_formula_char2(q: int | QMod | str, d: int) -> RankFormula:
    """The same sum with p = 2, for the curve E' (d odd)."""
    if d % 2 == 0:
        raise DomainError("d must be odd in characteristic 2")
    if isinstance(q, str):
        q = parse_qmod(q)
    return _rank_sum(2, q, d)


# ---------------------------------------------------------------------------
# point-count oracle


def _a_values(p: int, k: int, alphas: list[int]) -> list[int]:
    """a_alpha = -sum_gamma lambda(gamma (gamma+1) (gamma+alpha)) over F_{p^k}."""
    ctx = make_field(p, k)
    Q = ctx.q
    # lambda via parity of the discrete log; 0 at 0
    lam = np.where(ctx.log % 2 == 0, 1, -1)
    lam[0] = 0
    G = np.arange(Q, dtype=np.int64)
    g1 = ctx.add_arrays(G, np.ones(Q, dtype=np.int64))
    base = ctx.mul_arrays(G, g1)
    out = []
    for a in alphas:
        ga = ctx.add_arrays(G, np.full(Q, a, dtype=np.int64))
        out.append(-int(lam[ctx.mul_arrays(base, ga)].sum()))
    return out


def pointcount_coefficient(q: int, d: int, n: int, workers: int = 1, bound: int | None = None) -> int:
    """c_n = a_inf + sum over beta in F_{q^n} of a_{beta^d}, by direct character sums."""
    p, k = prime_power(q)
    if p == 2:
        raise DomainError("the point-count oracle needs odd characteristic")
    if n < 1 or d < 1:
        raise DomainError("n and d must be positive")
    Q = q**n
    limit = max_ops() if bound is None else bound
    if Q * Q > limit:
        raise ResourceError(f"(q^n)^2 = {Q * Q} exceeds the loop bound {limit}")
    ctx = make_field(p, k * n)
    # multiplicity of each alpha = beta^d
    mult: Counter[int] = Counter({0: 1})
    logs = (np.arange(ctx.N, dtype=np.int64) * d) % ctx.N
    for m, c in zip(*np.unique(logs, return_counts=True)):
        mult[int(ctx.exp[m])] += int(c)
    alphas = sorted(mult)
    if workers > 1 and len(alphas) > workers:
        chunks = [alphas[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_a_values, [p] * workers, [k * n] * workers, chunks))
        values = {a: v for chunk, part in zip(chunks, parts) for a, v in zip(chunk, part)}
    else:
        values = dict(zip(alphas, _a_values(p, k * n, alphas)))
    a_inf = 1 if d % 2 == 0 else 0
    return a_inf + sum(mult[a] * values[a] for a in alphas)


def closed_form_coefficient(q: int, d: int, n: int) -> int:
    """-sum_{i=1, i != g/2}^{g-1} J(lambda, psi^i)^2 on F_{q^n}, g = gcd(q^n - 1, d)."""
    p, k = prime_power(q)
    if p == 2:
        raise DomainError("the closed form needs odd characteristic")
    ctx = make_field(p, k * n)
    g = gcd(ctx.N, d)
    lam = quadratic_character(ctx)
    total = CycInt.integer(0)
    for i in range(1, g):
        if 2 * i == g:
            continue
        J = jacobi_sum(lam, character(ctx, ctx.N // g * i))
        total = total + J * J
    if not total.is_integer():
        raise ConsistencyError(f"closed form for n={n} is not a rational integer")
    return -total.as_integer()


@dataclass
class VerificationRow:
    n: int
    pointcount: int
    closed_form: int
    log_coefficient: int

    @property
    def agree(self) -> bool:
        return self.pointcount == self.closed_form == self.log_coefficient


@dataclass
class Verification:
    p: int
    q: int
    d: int
    rows: list[VerificationRow] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.agree for r in self.rows)

    def mismatches(self) -> list[VerificationRow]:
        return [r for r in self.rows if not r.agree]


def max_n(q: int, bound: int | None = None) -> int:
    """Largest n with q^(2n) within the loop bound."""
    limit = max_ops() if bound is None else bound
    n = 0
    while q ** (2 * (n + 1)) <= limit:
        n += 1
    return n


def verify_lfunction(p: int, q: int, d: int, n_max: int | None = None, workers: int = 1) -> Verification:
    """Compare, for n = 1..n_max, the point count, the closed form, and the log-coefficient."""
    L = lfunction_factors(p, q, d, "E")
    if n_max is None:
        n_max = max_n(q)
    rec = Verification(p, q, d)
    for n in range(1, n_max + 1):
        rec.rows.append(
            VerificationRow(
                n,
                pointcount_coefficient(q, d, n, workers=workers),
                closed_form_coefficient(q, d, n),
                log_coefficient(L, n),
            )
        )
    return rec


# ---------------------------------------------------------------------------
# level d versus level d/2 for d = 2(p^f - 1)


def _level_params(p: int, f: int, q: int) -> int:
    if p == 2:
        raise DomainError("p must be odd")
    if f < 1:
        raise DomainError("f must be positive")
    pp, _ = prime_power(q)
    if pp != p:
        raise DomainError(f"{q} is not a power of {p}")
    d = 2 * (p**f - 1)
    if q % d != 1:
        raise DomainError(f"need q = 1 mod d = {d}, got q = {q}")
    return d


def _factor_keys(factors, order: int) -> Counter:
    return Counter((f.size, f.jsquared.key(order)) for f in factors)


@dataclass(frozen=True)
class RankRelation:
    p: int
    f: int
    q: int
    d: int
    rank_d: int
    rank_half: int
    rank_ok: bool
    multiset_ok: bool

    @property
    def holds(self) -> bool:
        return self.rank_ok and self.multiset_ok

    def __bool__(self) -> bool:
        return self.holds


def rank_relation_check(p: int, f: int, q: int) -> RankRelation:
    """rank(d) - rank(d/2) = d/2, and L_d / L_{d/2} = (1 - qT)^(d/2) factor by factor."""
    d = _level_params(p, f, q)
    r_full = rank_formula(p, q, d).rank
    r_half = rank_formula(p, q, d // 2).rank
    full = lfunction_factors(p, q, d).factors
    half = lfunction_factors(p, q, d // 2).factors
    extra = [LFactor(CycInt.integer(q), 1, Orbit((), 1, 1, 0))] * (d // 2)
    order = lcm(*(f.jsquared.order for f in full + half), 1)
    ok = _factor_keys(full, order) == _factor_keys(half + tuple(extra), order)
    return RankRelation(p, f, q, d, r_full, r_half, r_full - r_half == d // 2, ok)


@dataclass(frozen=True)
class BsdReport:
    p: int
    f: int
    q: int
    d: int
    tamagawa_u: Fraction
    tamagawa_u2: Fraction
    disc_Wd: int
    predicted_constraint: Fraction
    # facts about the index I that are stated, not computed
    index_facts: tuple[str, ...]

    @property
    def tamagawa_ratio(self) -> Fraction:
        return self.tamagawa_u / self.tamagawa_u2


INDEX_FACTS = (
    "I is a power of 2 times a power of p",
    "the p-part of I divides p^(f(p^f-1)/2)",
    "I is divisible by 4",
    "the 2-part of I divides 2^(p^f+1)",
    "I is independent of q",
)


def bsd_quantities(p: int, f: int, q: int) -> BsdReport:
    """Exact rationals of the BSD ratio between levels u and u^2 (d = 2(p^f - 1))."""
    d = _level_params(p, f, q)
    Fq = Fraction(q)
    tau_u = Fraction(2 ** (d + 2) * d * d) * Fq ** (1 - d // 2)
    tau_u2 = Fraction(2 ** (d // 2) * d * d) * Fq ** (1 - d // 4)
    disc = p ** (f * d // 2)
    constraint = Fraction(2 ** (p**f + 1) * disc) / Fq ** (d // 4)
    # the same number assembled from its ingredients: disc(W_d) times the Tamagawa ratio
    if disc * (tau_u / tau_u2) != constraint:
        raise ConsistencyError("constraint does not match disc * tau ratio")
    return BsdReport(p, f, q, d, tau_u, tau_u2, disc, constraint, INDEX_FACTS)
