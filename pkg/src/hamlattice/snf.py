"""Smith normal form over the integers.

``smith_normal_form(A)`` returns ``(D, U, V)`` with ``U @ A @ V == D``, U and V
unimodular and D diagonal with d_1 | d_2 | ... (nonnegative).
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

Matrix = list[list[int]]


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][t] * b[t][j] for t in range(inner)) for j in range(cols)]
            for i in range(len(a))]


def _check(a: Sequence[Sequence[int]]) -> Matrix:
    rows = [list(r) for r in a]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged matrix")
    for r in rows:
        for x in r:
            if isinstance(x, bool) or not isinstance(x, int):
                raise TypeError(f"integer entries required, got {x!r}")
    return rows


def smith_normal_form(a: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    d = _check(a)
    m = len(d)
    n = len(d[0]) if m else 0
    u = _identity(m)
    v = _identity(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, c):  # row_dst += c * row_src
        d[dst] = [x + c * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, c):
        for r in d:
            r[dst] += c * r[src]
        for r in v:
            r[dst] += c * r[src]

    for t in range(min(m, n)):
        nz = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    add_row(t, i, -q)
                    if d[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    add_col(t, j, -q)
                    if d[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # the pivot must divide the rest of the block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if d[i][j] % d[t][t]), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return d, u, v


def invariant_factors(a: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith form (zeros included, one per min(rows, cols))."""
    d, _, _ = smith_normal_form(a)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def elementary_divisors(orders: Sequence[int]) -> list[int]:
    """Prime-power decomposition of a direct sum of cyclic groups Z_n (n >= 0)."""
    out = []
    for n in orders:
        if n == 0:
            out.append(0)
            continue
        out.extend(p ** e for p, e in _factor(abs(n)).items())
    return sorted(x for x in out if x != 1)


def isomorphic(orders_a: Sequence[int], orders_b: Sequence[int]) -> bool:
    """Whether sum Z_a and sum Z_b are isomorphic (0 means a copy of Z)."""
    return elementary_divisors(orders_a) == elementary_divisors(orders_b)


@dataclass(frozen=True)
class CokernelData:
    matrix: tuple[tuple[int, ...], ...]
    invariant_factors: tuple[int, ...]

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(x for x in self.invariant_factors if x > 1)

    @property
    def free_rank(self) -> int:
        return len(self.matrix) - sum(1 for x in self.invariant_factors if x)

    def describe(self) -> str:
        parts = [f"Z{x}" for x in self.torsion] + ["Z"] * self.free_rank
        return "+".join(parts) if parts else "0"


def cokernel(a: Sequence[Sequence[int]]) -> CokernelData:
    """Structure of Z^m / image(A) for an m x n matrix A."""
    rows = _check(a)
    return CokernelData(tuple(tuple(r) for r in rows), tuple(invariant_factors(rows)))


def parse_matrix(text: str) -> Matrix:
    """``"6,0;0,4"`` -> [[6, 0], [0, 4]]."""
    try:
        rows = [[int(x) for x in r.split(",")] for r in text.strip().split(";") if r.strip()]
    except ValueError as exc:
        raise ValueError(f"cannot parse matrix {text!r}: {exc}") from None
    return _check(rows)


def determinantal_divisors(a: Sequence[Sequence[int]]) -> list[int]:
    """gcd of all i x i minors, i = 1..rank; slow and only meant as a cross-check."""
    from fractions import Fraction
    from itertools import combinations

    def det(mat):
        n = len(mat)
        mm = [[Fraction(x) for x in r] for r in mat]
        s = Fraction(1)
        for c in range(n):
            p = next((r for r in range(c, n) if mm[r][c]), None)
            if p is None:
                return 0
            if p != c:
                mm[c], mm[p] = mm[p], mm[c]
                s = -s
            s *= mm[c][c]
            for r in range(c + 1, n):
                f = mm[r][c] / mm[c][c]
                mm[r] = [x - f * y for x, y in zip(mm[r], mm[c])]
        return int(s)

    rows = _check(a)
    m = len(rows)
    n = len(rows[0]) if m else 0
    out = []
    for size in range(1, min(m, n) + 1):
        g = 0
        for ri in combinations(range(m), size):
            for ci in combinations(range(n), size):
                g = gcd(g, det([[rows[r][c] for c in ci] for r in ri]))
        if g == 0:
            break
        out.append(g)
    return out
