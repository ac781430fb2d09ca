"""Subgroups of (Z/dZ)^x and the balanced condition.

The unit group is split into the two halves A (least residue in (0, d/2))
and B (least residue in (d/2, d)).  A subgroup H is balanced when every
coset of H meets A and B in the same number of elements.
"""

from __future__ import annotations

import enum
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

from .config import MAX_SUBGROUP_ENUMERATION
from .errors import DomainError, ResourceError


class Classification(str, enum.Enum):
    MINUS_ONE = "MinusOne"
    HALF_PLUS_ONE = "HalfPlusOne"
    SPORADIC = "Sporadic"
    NOT_BALANCED = "NotBalanced"


@dataclass(frozen=True)
class UnitGroup:
    modulus: int
    elements: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class SubgroupData:
    modulus: int
    generators: tuple[int, ...]
    elements: tuple[int, ...]
    cosets: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, a: int) -> bool:
        return a % self.modulus in self.element_set

    @cached_property
    def element_set(self) -> frozenset[int]:
        return frozenset(self.elements)


@dataclass(frozen=True)
class BalancedReport:
    modulus: int
    subgroup: SubgroupData
    per_coset: tuple[tuple[int, int, int], ...]
    balanced: bool
    classification: Classification


@dataclass(frozen=True)
class Orbit:
    """Orbit of x -> q*x on Z/dZ, listed from its least element."""

    elements: tuple[int, ...]
    size: int
    e: int
    i_prime: int

    @property
    def representative(self) -> int:
        return self.elements[0]


def _check_modulus(d: int) -> None:
    if not isinstance(d, int) or d < 3:
        raise DomainError(f"modulus must be an integer >= 3, got {d!r}")


def unit_group(d: int) -> UnitGroup:
    _check_modulus(d)
    return UnitGroup(d, tuple(a for a in range(1, d) if gcd(a, d) == 1))


def half_partition(d: int) -> tuple[frozenset[int], frozenset[int]]:
    """Return (A, B): units below d/2 and units above d/2."""
    units = unit_group(d).elements
    A = frozenset(a for a in units if 2 * a < d)
    B = frozenset(a for a in units if 2 * a > d)
    return A, B


def multiplicative_order(a: int, m: int) -> int:
    if m < 1:
        raise DomainError(f"modulus must be positive, got {m}")
    if gcd(a, m) != 1:
        raise DomainError(f"{a} is not a unit modulo {m}")
    if m == 1:
        return 1
    a %= m
    x, f = a, 1
    while x != 1:
        x = x * a % m
        f += 1
    return f


def _closure(d: int, gens: Iterable[int]) -> tuple[int, ...]:
    elems = {1}
    frontier = [1]
    gens = [g % d for g in gens]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = x * g % d
                if y not in elems:
                    elems.add(y)
                    new.append(y)
        frontier = new
    return tuple(sorted(elems))


def _cosets(d: int, elements: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    seen: set[int] = set()
    out = []
    for rep in unit_group(d).elements:
        if rep in seen:
            continue
        coset = tuple(sorted(rep * h % d for h in elements))
        seen.update(coset)
        out.append(coset)
    return tuple(out)


def generated_subgroup(d: int, gens: Sequence[int]) -> SubgroupData:
    _check_modulus(d)
    gens = tuple(int(g) % d for g in gens)
    for g in gens:
        if gcd(g, d) != 1:
            raise DomainError(f"generator {g} is not a unit modulo {d}")
    elements = _closure(d, gens)
    return SubgroupData(d, gens, elements, _cosets(d, elements))


def _classify(d: int, elements: Sequence[int] | frozenset[int], balanced: bool) -> Classification:
    elems = elements if isinstance(elements, (set, frozenset)) else set(elements)
    if not balanced:
        return Classification.NOT_BALANCED
    if d - 1 in elems:
        return Classification.MINUS_ONE
    if d % 4 == 0 and d // 2 + 1 in elems:
        return Classification.HALF_PLUS_ONE
    return Classification.SPORADIC


def is_balanced(d: int, subgroup: SubgroupData) -> BalancedReport:
    _check_modulus(d)
    if subgroup.modulus != d:
        raise DomainError(f"subgroup is modulo {subgroup.modulus}, not {d}")
    per_coset = []
    for coset in subgroup.cosets:
        count_a = sum(1 for a in coset if 2 * a < d)
        per_coset.append((coset[0], count_a, len(coset) - count_a))
    balanced = all(a == b for _, a, b in per_coset)
    return BalancedReport(
        d, subgroup, tuple(per_coset), balanced, _classify(d, subgroup.elements, balanced)
    )


def balanced_mod(p: int, e: int) -> bool:
    """True iff <p> is balanced in (Z/eZ)^x.  Works coset by coset without a report."""
    _check_modulus(e)
    if gcd(p, e) != 1:
        raise DomainError(f"{p} is not a unit modulo {e}")
    H = _closure(e, [p])
    seen = bytearray(e)
    for rep in range(1, e):
        if seen[rep] or gcd(rep, e) != 1:
            continue
        diff = 0
        for h in H:
            x = rep * h % e
            seen[x] = 1
            diff += 1 if 2 * x < e else -1
        if diff:
            return False
    return True


def classify_cyclic(p: int, d: int) -> Classification:
    """Classification of <p>_d."""
    H = frozenset(_closure(d, [p]))
    return _classify(d, H, balanced_mod(p, d))


def all_subgroups(d: int) -> list[SubgroupData]:
    """Every subgroup of (Z/dZ)^x, as joins of cyclic subgroups."""
    units = unit_group(d).elements
    if len(units) > MAX_SUBGROUP_ENUMERATION:
        raise ResourceError(
            f"phi({d}) = {len(units)} exceeds the enumeration bound {MAX_SUBGROUP_ENUMERATION}"
        )
    cyclic: dict[frozenset[int], int] = {}
    for a in units:
        H = frozenset(_closure(d, [a]))
        cyclic.setdefault(H, a)
    found: dict[frozenset[int], tuple[int, ...]] = {H: (g,) for H, g in cyclic.items()}
    frontier = list(found)
    while frontier:
        new = []
        for H in frontier:
            for C, g in cyclic.items():
                if C <= H:
                    continue
                J = frozenset(_closure(d, list(found[H]) + [g]))
                if J not in found:
                    found[J] = found[H] + (g,)
                    new.append(J)
        frontier = new
    subgroups = [
        SubgroupData(d, gens, tuple(sorted(H)), _cosets(d, sorted(H))) for H, gens in found.items()
    ]
    subgroups.sort(key=lambda s: (s.order, s.elements))
    return subgroups


def minimal_balanced_subgroups(d: int) -> list[SubgroupData]:
    _check_modulus(d)
    balanced = [s for s in all_subgroups(d) if is_balanced(d, s).balanced]
    sets = [frozenset(s.elements) for s in balanced]
    return [
        s for s, S in zip(balanced, sets) if not any(T < S for T in sets)
    ]


def orbits_mod_d(d: int, q: int) -> list[Orbit]:
    """Orbits of multiplication by q on Z/dZ, without {0} and {d/2}."""
    if d < 1:
        raise DomainError(f"modulus must be positive, got {d}")
    if gcd(q, d) != 1:
        raise DomainError(f"gcd({q}, {d}) != 1")
    q %= d
    seen = [False] * d
    seen[0] = True
    if d % 2 == 0:
        seen[d // 2] = True
    out = []
    for i in range(1, d):
        if seen[i]:
            continue
        elems = [i]
        seen[i] = True
        x = i * q % d
        while x != i:
            elems.append(x)
            seen[x] = True
            x = x * q % d
        g = gcd(d, i)
        out.append(Orbit(tuple(elems), len(elems), d // g, i // g))
    return out


@dataclass
class Census:
    p: int
    X: int
    counts: dict[str, int]
    sporadic: list[int]
    classes: dict[int, str]


def _classify_range(args: tuple[int, list[int]]) -> list[tuple[int, str]]:
    p, ds = args
    return [(d, classify_cyclic(p, d).value) for d in ds]


def scan_balanced(p: int, X: int, workers: int = 1) -> Census:
    """Classify <p>_d for every 3 <= d < X coprime to p."""
    if p < 2 or X < 3:
        raise DomainError("need p >= 2 and X >= 3")
    ds = [d for d in range(3, X) if gcd(d, p) == 1]
    if workers > 1 and len(ds) > 1:
        chunks = [ds[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_classify_range, [(p, c) for c in chunks])
            pairs = [x for part in parts for x in part]
    else:
        pairs = _classify_range((p, ds))
    classes = dict(sorted(pairs))
    counts = Counter(classes.values())
    return Census(
        p=p,
        X=X,
        counts={c.value: counts.get(c.value, 0) for c in Classification},
        sporadic=[d for d, c in classes.items() if c == Classification.SPORADIC.value],
        classes=classes,
    )
