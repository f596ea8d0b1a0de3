"""Candidate decompositions of a class into curve classes on X_8.

A decomposition writes a target as a sum of at least two parts.  Each part
is either a rigid class (by default the classes of H_0 together with E_3 and
E_8) or a free class d L - sum m_i E_i with d > 0, m_i >= 0 that passes the
profile's constraints:

    d >= m_1 + m_2 + m_3,   2d >= m_4 + ... + m_8,
    m_1 >= m_2 >= m_3,   m_4 >= ... >= m_8,
    sum (m_i^2 - m_i) <= 2 + d^2 - 3d.

When the rigid classes form a basis of the lattice, the rigid part of a
decomposition is determined by its free parts, so the search runs over
multisets of free classes with total degree at most that of the target and
solves for the rest.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import lru_cache
from fractions import Fraction
from typing import Optional, Sequence

from .lattice import DivisorClass, c1, esum, format_class, format_shorthand, intersect, parse_class


class BudgetExceeded(RuntimeError):
    """The search visited more nodes than the caller allowed."""


def _cls(d, mult) -> DivisorClass:
    return DivisorClass.from_multiplicities(d, mult)


def h0_classes(k: int = 8) -> list[DivisorClass]:
    out = [DivisorClass.line(k) - esum((1, 2, 3), k)]
    out += [DivisorClass.exc(i, k) - DivisorClass.exc(i + 1, k) for i in range(1, k) if i not in (3, k)]
    return out


STEP1_CLASS = _cls(3, (1, 1, 1, 2, 1, 1, 1, 1))
LINE_145 = _cls(1, (1, 0, 0, 1, 1, 0, 0, 0))
LINE_1234 = _cls(1, (1, 1, 1, 1, 0, 0, 0, 0))
# conic tangent to R at p with fourfold contact with Q at q; absent for generic q
GENERIC_CONIC = _cls(2, (1, 1, 0, 1, 1, 1, 1, 0))

E8_PRIME = _cls(6, (2, 2, 2, 3, 2, 2, 2, 2))
E3_PRIME = _cls(5, (1, 1, 2, 2, 2, 2, 2, 2))
E1_PRIME = _cls(5, (2, 1, 1, 2, 2, 2, 2, 2))
CONIC_Q = _cls(2, (0, 0, 0, 1, 1, 1, 1, 1))


@dataclass(frozen=True)
class AdmissibilityProfile:
    name: str
    k: int = 8
    rigid: tuple[DivisorClass, ...] = ()
    excluded: tuple[DivisorClass, ...] = ()
    two_d_rule: bool = True
    monotone: str = "strict"  # or "canonical": test the block-sorted class
    nonnegative_against: tuple[DivisorClass, ...] = ()
    blocks: tuple[tuple[int, ...], ...] = ((1, 2, 3), (4, 5, 6, 7, 8))

    def __post_init__(self):
        if self.monotone not in ("strict", "canonical"):
            raise ValueError("monotone must be 'strict' or 'canonical'")
        clash = set(self.rigid) & set(self.excluded)
        if clash:
            raise ValueError(f"classes both rigid and excluded: {sorted(map(str, clash))}")

    def lift(self, c: DivisorClass) -> AdmissibilityProfile:
        """Same profile with ``c`` no longer excluded."""
        return replace(self, name=self.name + "-lift", excluded=tuple(x for x in self.excluded if x != c))

    def exclude(self, c: DivisorClass, suffix: str) -> AdmissibilityProfile:
        return replace(self, name=self.name + suffix, excluded=self.excluded + (c,))

    def canonical(self, c: DivisorClass) -> DivisorClass:
        m = list(c.multiplicities)
        for b in self.blocks:
            vals = sorted((m[i - 1] for i in b), reverse=True)
            for i, v in zip(b, vals):
                m[i - 1] = v
        return _cls(c.d, m)

    def to_json(self) -> dict:
        return {"name": self.name, "k": self.k,
                "rigid": [format_class(c) for c in self.rigid],
                "excluded": [format_shorthand(c) for c in self.excluded],
                "two_d_rule": self.two_d_rule, "monotone": self.monotone,
                "nonnegative_against": [format_shorthand(c) for c in self.nonnegative_against]}


def _default_rigid() -> tuple[DivisorClass, ...]:
    return tuple(h0_classes(8) + [DivisorClass.exc(3, 8), DivisorClass.exc(8, 8)])


_EXCLUDED = (LINE_145, LINE_1234, STEP1_CLASS)


def profile(name: str) -> AdmissibilityProfile:
    """Built-in profiles.

    step2          the constraints above and the three exclusions of the text
    step2-generic  step2, also excluding the conic 2L - E_12 - E_4567
    step3          no 2d rule; parts must pair nonnegatively with E_3' and E_8'
    """
    base = AdmissibilityProfile("step2", rigid=_default_rigid(), excluded=_EXCLUDED)
    if name == "step2":
        return base
    if name == "step2-generic":
        return replace(base, name="step2-generic", excluded=_EXCLUDED + (GENERIC_CONIC,))
    if name == "step3":
        return replace(base, name="step3", two_d_rule=False,
                       nonnegative_against=(E3_PRIME, E8_PRIME))
    if name == "step3-bare":
        return replace(base, name="step3-bare", two_d_rule=False)
    raise KeyError(f"unknown profile {name!r}")


PROFILES = ("step2", "step2-generic", "step3", "step3-bare")


def _free_failure(c: DivisorClass, prof: AdmissibilityProfile) -> Optional[str]:
    """Reason the class fails as a free part, or None."""
    if not c.is_integral():
        return "not integral"
    d = c.d
    m = list(c.multiplicities)
    if d <= 0:
        return "free parts need d > 0"
    if any(x < 0 for x in m):
        return "free parts need m_i >= 0"
    test = prof.canonical(c).multiplicities if prof.monotone == "canonical" else m
    b1, b2 = prof.blocks
    if d < sum(test[i - 1] for i in b1):
        return "d < m_1 + m_2 + m_3"
    if prof.two_d_rule and 2 * d < sum(test[i - 1] for i in b2):
        return "2d < m_4 + ... + m_8"
    for b in prof.blocks:
        seq = [test[i - 1] for i in b]
        if any(x < y for x, y in zip(seq, seq[1:])):
            return f"multiplicities not decreasing on {b}"
    if sum(x * x - x for x in test) > 2 + d * d - 3 * d:
        return "adjunction: sum(m^2 - m) > 2 + d^2 - 3d"
    for a in prof.nonnegative_against:
        if intersect(c, a) < 0:
            return f"negative intersection with {format_shorthand(a)}"
    excl = prof.excluded
    if prof.monotone == "canonical":
        excl = tuple(prof.canonical(x) for x in excl)
        c = prof.canonical(c)
    if c in excl:
        return "excluded class"
    return None


def is_admissible(c: DivisorClass, prof: AdmissibilityProfile | str = "step2") -> tuple[bool, str]:
    if isinstance(prof, str):
        prof = profile(prof)
    if c.k != prof.k:
        return False, f"class lives on X_{c.k}, profile on X_{prof.k}"
    if c in prof.rigid:
        return True, "rigid class"
    why = _free_failure(c, prof)
    return (why is None), (why or "satisfies all constraints")


# -- the search ---------------------------------------------------------------------

def _rigid_solver(rigid: Sequence[DivisorClass], k: int):
    """Coordinates in the rigid basis, as a function of a class."""
    n = k + 1
    if len(rigid) != n:
        raise ValueError(f"the rigid classes must form a basis ({n} classes), got {len(rigid)}")
    # columns are rigid classes written in the L, E basis
    cols = [[r.d, *r.m] for r in rigid]
    a = [[Fraction(cols[j][i]) for j in range(n)] for i in range(n)]
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            raise ValueError("rigid classes are linearly dependent")
        a[c], a[p] = a[p], a[c]
        inv[c], inv[p] = inv[p], inv[c]
        f = a[c][c]
        a[c] = [x / f for x in a[c]]
        inv[c] = [x / f for x in inv[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                g = a[r][c]
                a[r] = [x - g * y for x, y in zip(a[r], a[c])]
                inv[r] = [x - g * y for x, y in zip(inv[r], inv[c])]

    if all(x.denominator == 1 for r in inv for x in r):
        inv = [[int(x) for x in r] for r in inv]

    def coords(x: DivisorClass) -> tuple:
        v = [x.d, *x.m]
        if inv and isinstance(inv[0][0], int):
            v = [int(t) for t in v]
        return tuple(sum(inv[i][j] * v[j] for j in range(n)) for i in range(n))

    return coords


@dataclass(frozen=True)
class Decomposition:
    parts: tuple[tuple[DivisorClass, int], ...]

    @property
    def size(self) -> int:
        return sum(n for _, n in self.parts)

    def total(self) -> DivisorClass:
        k = self.parts[0][0].k
        out = DivisorClass.zero(k)
        for c, n in self.parts:
            out = out + n * c
        return out

    def contains(self, c: DivisorClass) -> bool:
        return any(p == c for p, _ in self.parts)

    def to_json(self) -> list:
        return [{"class": format_shorthand(c), "count": n} for c, n in self.parts]

    def __str__(self):
        return " + ".join((f"{n}*" if n > 1 else "") + format_class(c) for c, n in self.parts)


def _part_key(c: DivisorClass):
    return (-c.d, tuple(c.multiplicities))


def free_candidates(prof: AdmissibilityProfile, max_degree: int) -> list[DivisorClass]:
    """Every admissible free class with d <= max_degree."""
    k = prof.k
    strict = prof.monotone == "strict"
    block_of = {i: b for b in prof.blocks for i in b}
    limit = {prof.blocks[0]: 1}
    if prof.two_d_rule:
        limit[prof.blocks[1]] = 2
    out = []
    for d in range(1, max_degree + 1):
        budget = 2 + d * d - 3 * d
        cur = [0] * k
        sums = {b: 0 for b in prof.blocks}

        def rec(i, adj):
            if i == k:
                c = _cls(d, cur)
                if c not in prof.rigid and _free_failure(c, prof) is None:
                    out.append(c)
                return
            b = block_of.get(i + 1)
            top = d
            if strict and b is not None and b.index(i + 1) > 0:
                top = min(top, cur[i - 1])
            for x in range(0, top + 1):
                a = adj + x * x - x
                if a > budget:
                    break
                if b in limit and sums[b] + x > limit[b] * d:
                    break
                cur[i] = x
                if b is not None:
                    sums[b] += x
                rec(i + 1, a)
                if b is not None:
                    sums[b] -= x
            cur[i] = 0

        rec(0, 0)
    out.sort(key=_part_key)
    return out


@lru_cache(maxsize=64)
def _search_setup(prof: AdmissibilityProfile, degree: int):
    coords = _rigid_solver(prof.rigid, prof.k)
    cands = free_candidates(prof, degree)
    cc = [coords(c) for c in cands]
    n = len(prof.rigid)
    # coordinates on which every candidate is >= 0 only shrink as parts are added
    shrinking = [j for j in range(n) if all(v[j] >= 0 for v in cc)]
    growing = [j for j in range(n) if all(v[j] <= 0 for v in cc)]
    best_gain = {j: max((-v[j] / c.d for v, c in zip(cc, cands)), default=Fraction(0)) for j in growing}
    return coords, cands, cc, shrinking, growing, best_gain


def enumerate_decompositions(target: DivisorClass, prof: AdmissibilityProfile | str = "step2",
                             max_parts: Optional[int] = None, budget: int = 5_000_000
                             ) -> list[Decomposition]:
    if isinstance(prof, str):
        prof = profile(prof)
    if target.k != prof.k or not target.is_integral():
        raise ValueError("target must be an integral class on X_k of the profile")
    if target.d > 8:
        raise ValueError("targets are limited to d <= 8")
    coords, cands, cc, shrinking, growing, best_gain = _search_setup(prof, max(int(target.d), 0))
    tc = coords(target)
    n = len(tc)

    results: list[Decomposition] = []
    visited = 0
    chosen: list[int] = []

    def emit(acc):
        rem = [tc[j] - acc[j] for j in range(n)]
        if any(x < 0 or Fraction(x).denominator != 1 for x in rem):
            return
        parts: dict[DivisorClass, int] = {}
        for i in chosen:
            parts[cands[i]] = parts.get(cands[i], 0) + 1
        for r, x in zip(prof.rigid, rem):
            if x:
                parts[r] = parts.get(r, 0) + int(x)
        total = sum(parts.values())
        if total < 2 or (max_parts is not None and total > max_parts):
            return
        results.append(Decomposition(tuple(sorted(parts.items(), key=lambda t: _part_key(t[0])))))

    def dfs(start, dleft, acc):
        nonlocal visited
        visited += 1
        if visited > budget:
            raise BudgetExceeded(f"decomposition search exceeded {budget} nodes")
        emit(acc)
        if max_parts is not None and len(chosen) >= max_parts:
            return
        for i in range(start, len(cands)):
            c = cands[i]
            if c.d > dleft:
                continue
            v = cc[i]
            nacc = [a + x for a, x in zip(acc, v)]
            if any(tc[j] - nacc[j] < 0 for j in shrinking):
                continue
            left = dleft - c.d
            if any(tc[j] - nacc[j] + best_gain[j] * left < 0 for j in growing):
                continue
            chosen.append(i)
            dfs(i, left, nacc)
            chosen.pop()

    dfs(0, int(target.d), [0] * n)
    results.sort(key=lambda dcp: [(_part_key(c), m) for c, m in dcp.parts])
    return results


# -- naive oracle ------------------------------------------------------------------

def naive_decompositions(prof: AdmissibilityProfile, max_degree: int, max_parts: int
                         ) -> dict[DivisorClass, set[Decomposition]]:
    """Forward enumeration of every multiset of at most ``max_parts`` admissible
    classes (free parts with d <= max_degree, plus rigid classes), keyed by sum."""
    from itertools import combinations_with_replacement

    pool = list(free_candidates(prof, max_degree)) + list(prof.rigid)
    pool.sort(key=_part_key)
    out: dict[DivisorClass, set[Decomposition]] = {}
    for size in range(2, max_parts + 1):
        for combo in combinations_with_replacement(range(len(pool)), size):
            if sum(pool[i].d for i in combo if pool[i] not in prof.rigid) > max_degree:
                continue
            parts: dict[DivisorClass, int] = {}
            total = DivisorClass.zero(prof.k)
            for i in combo:
                parts[pool[i]] = parts.get(pool[i], 0) + 1
                total = total + pool[i]
            dcp = Decomposition(tuple(sorted(parts.items(), key=lambda t: _part_key(t[0]))))
            out.setdefault(total, set()).add(dcp)
    return out


# -- suite --------------------------------------------------------------------------

def maxima_agree(d: int) -> bool:
    return set(derived_maxima(d)) == set(PRINTED_MAXIMA[d])


def derived_maxima(d: int, k: int = 8) -> list[tuple[int, ...]]:
    """Componentwise-maximal decreasing m in Z_{>=0}^k with sum(m^2 - m) <= 2 + d^2 - 3d."""
    budget = 2 + d * d - 3 * d
    vecs = []

    def rec(prefix, cap, cost):
        if len(prefix) == k:
            vecs.append(tuple(prefix))
            return
        for x in range(min(cap, d), -1, -1):
            c = cost + x * x - x
            if c <= budget:
                rec(prefix + [x], x, c)

    rec([], d, 0)

    def dominated(a, b):
        return a != b and all(x <= y for x, y in zip(a, b))

    return sorted((v for v in vecs if not any(dominated(v, w) for w in vecs)), reverse=True)


PRINTED_MAXIMA = {
    3: [(2, 1, 1, 1, 1, 1, 1, 1)],
    4: [(2, 2, 2, 1, 1, 1, 1, 1), (3, 1, 1, 1, 1, 1, 1, 1)],
    5: [(3, 3, 1, 1, 1, 1, 1, 1), (3, 2, 2, 2, 1, 1, 1, 1), (2, 2, 2, 2, 2, 2, 1, 1)],
}


@dataclass
class SuiteEntry:
    id: str
    target: str
    profile: str
    expected_empty: bool
    count: int
    witnesses: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (self.count == 0) == self.expected_empty

    def to_json(self) -> dict:
        return {"id": self.id, "target": self.target, "profile": self.profile,
                "expected_empty": self.expected_empty, "count": self.count,
                "pass": self.passed, "witnesses": self.witnesses}


def _entry(id_, target, prof, expect_empty=True, keep=3) -> SuiteEntry:
    res = enumerate_decompositions(target, prof)
    return SuiteEntry(id_, format_shorthand(target), prof.name, expect_empty, len(res),
                      [str(r) for r in res[:keep]])


def lifted_contains_printed() -> tuple[bool, str]:
    prof = profile("step2").lift(STEP1_CLASS)
    want = Decomposition(tuple(sorted(
        [(STEP1_CLASS, 2)] + [(DivisorClass.exc(i, 8) - DivisorClass.exc(i + 1, 8), 1) for i in range(4, 8)]
        + [(DivisorClass.exc(8, 8), 1)], key=lambda t: _part_key(t[0]))))
    res = enumerate_decompositions(E8_PRIME, prof)
    return want in res, str(want)


def verify_irreducibility_suite() -> list[SuiteEntry]:
    """Decomposition counts for E_8', E_3' and 2L - E_(4..8).

    The literal profiles come first; the generic-conic variant records how
    the E_8' case closes once 2L - E_12 - E_4567 is ruled out as well.
    """
    s2, s2g, s3 = profile("step2"), profile("step2-generic"), profile("step3")
    return [
        _entry("E8prime_step2", E8_PRIME, s2),
        _entry("E3prime_step2", E3_PRIME, s2),
        _entry("Q_step3", CONIC_Q, s3),
        _entry("E8prime_step2_generic", E8_PRIME, s2g),
        _entry("E3prime_step2_generic", E3_PRIME, s2g),
    ]


def parse_target(text: str) -> DivisorClass:
    return parse_class(text, 8)
