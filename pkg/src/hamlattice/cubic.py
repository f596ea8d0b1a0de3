"""Exact checks on plane projective curves: nodes, flexes, tangency orders.

Polynomials are homogeneous in z1, z2, z3 with rational coefficients and are
stored as ``{(a, b, c): coeff}`` for the monomial z1^a z2^b z3^c.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Optional, Sequence

Exp = tuple[int, int, int]


def _exact(x):
    """An int when x is integral, else a Fraction (ints multiply much faster)."""
    if type(x) is int:
        return x
    if type(x) is not Fraction:
        x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


class PreconditionError(ValueError):
    pass


class CurveContainsLine(ValueError):
    """The restriction of the curve to the line vanishes identically."""


@dataclass(frozen=True)
class HomogeneousPoly:
    degree: int
    terms: tuple[tuple[Exp, Fraction], ...]

    def __init__(self, degree: int, terms: Mapping[Exp, object] | Iterable[tuple[Exp, object]]):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exp, Fraction] = {}
        for e, c in items:
            e = tuple(e)
            if len(e) != 3 or min(e) < 0 or not all(isinstance(x, int) for x in e):
                raise ValueError(f"bad exponent {e}")
            if sum(e) != degree:
                raise ValueError(f"monomial {e} does not have degree {degree}")
            if not isinstance(c, Fraction):
                if isinstance(c, float):
                    raise TypeError("coefficients must be exact")
                c = Fraction(c)
            acc[e] = acc[e] + c if e in acc else c
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "terms", tuple(sorted((e, c) for e, c in acc.items() if c != 0)))
        object.__setattr__(self, "_partials", {})
        ints = None
        if all(c.denominator == 1 for _, c in self.terms):
            ints = tuple((e, c.numerator) for e, c in self.terms)
        object.__setattr__(self, "_int_terms", ints)

    @property
    def coeffs(self) -> dict[Exp, Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __call__(self, p: Sequence) -> Fraction:
        z = [_exact(x) for x in p]
        terms = self.terms
        if self._int_terms is not None and all(type(x) is int for x in z):
            terms = self._int_terms
        total = 0
        for (a, b, c), k in terms:
            total += k * z[0] ** a * z[1] ** b * z[2] ** c
        return Fraction(total)

    def partial(self, i: int) -> HomogeneousPoly:
        hit = self._partials.get(i)
        if hit is not None:
            return hit
        out = {}
        for e, c in self.terms:
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        res = HomogeneousPoly(max(self.degree - 1, 0), out)
        self._partials[i] = res
        return res

    def gradient(self, p) -> tuple[Fraction, Fraction, Fraction]:
        return tuple(self.partial(i)(p) for i in range(3))

    def hessian(self, p) -> list[list[Fraction]]:
        h = [[Fraction(0)] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(i, 3):
                h[i][j] = h[j][i] = self.partial(i).partial(j)(p)
        return h

    def scale(self, c) -> HomogeneousPoly:
        return HomogeneousPoly(self.degree, {e: Fraction(c) * k for e, k in self.terms})

    def __sub__(self, other: HomogeneousPoly) -> HomogeneousPoly:
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        out = self.coeffs
        for e, c in other.terms:
            out[e] = out.get(e, Fraction(0)) - c
        return HomogeneousPoly(self.degree, out)

    def substitute(self, m: Sequence[Sequence]) -> HomogeneousPoly:
        """F(M z): each z_i is replaced by the linear form sum_j M[i][j] z_j."""
        lin = [_Poly({(1, 0, 0): Fraction(r[0]), (0, 1, 0): Fraction(r[1]), (0, 0, 1): Fraction(r[2])})
               for r in m]
        total = _Poly({})
        for (a, b, c), k in self.terms:
            total = total + (lin[0] ** a) * (lin[1] ** b) * (lin[2] ** c) * k
        return HomogeneousPoly(self.degree, total.c)

    def sign_flip(self, i: int) -> HomogeneousPoly:
        m = [[int(r == c) * (-1 if r == i else 1) for c in range(3)] for r in range(3)]
        return self.substitute(m)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b, c), k in sorted(self.terms, reverse=True):
            mono = "*".join(f"z{i + 1}" + (f"^{e}" if e > 1 else "")
                            for i, e in enumerate((a, b, c)) if e)
            parts.append(f"{k}*{mono}" if mono else str(k))
        return " + ".join(parts).replace("+ -", "- ")


class _Poly:
    """Scratch polynomial in three variables (not necessarily homogeneous)."""

    def __init__(self, c):
        self.c = {e: v for e, v in c.items() if v != 0}

    def __add__(self, o):
        out = dict(self.c)
        for e, v in o.c.items():
            out[e] = out.get(e, Fraction(0)) + v
        return _Poly(out)

    def __mul__(self, o):
        if not isinstance(o, _Poly):
            return _Poly({e: v * o for e, v in self.c.items()})
        out: dict = {}
        for (e1, v1), (e2, v2) in product(self.c.items(), o.c.items()):
            e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
            out[e] = out.get(e, Fraction(0)) + v1 * v2
        return _Poly(out)

    def __pow__(self, n):
        out = _Poly({(0, 0, 0): Fraction(1)})
        for _ in range(n):
            out = out * self
        return out


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple[Fraction, Fraction, Fraction]

    def __init__(self, *coords):
        if len(coords) == 1:
            coords = tuple(coords[0])
        z = [Fraction(x) for x in coords]
        if len(z) != 3:
            raise ValueError("a plane point has three coordinates")
        lead = next((x for x in z if x != 0), None)
        if lead is None:
            raise ValueError("[0:0:0] is not a point")
        object.__setattr__(self, "coords", tuple(x / lead for x in z))

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __str__(self):
        return "[" + ":".join(str(x) for x in self.coords) + "]"


def parse_poly(text: str) -> HomogeneousPoly:
    """Read a polynomial such as ``"z3*(z1^2 - z2^2) - z1^3"``."""
    import ast

    tree = ast.parse(text.replace("^", "**"), mode="eval").body

    def ev(node) -> _Poly:
        if isinstance(node, ast.BinOp):
            l, r = ev(node.left), node.right
            if isinstance(node.op, ast.Pow):
                if not isinstance(r, ast.Constant) or not isinstance(r.value, int):
                    raise ValueError("exponents must be integer constants")
                return l ** r.value
            rr = ev(r)
            if isinstance(node.op, ast.Add):
                return l + rr
            if isinstance(node.op, ast.Sub):
                return l + rr * Fraction(-1)
            if isinstance(node.op, ast.Mult):
                return l * rr
            if isinstance(node.op, ast.Div):
                if set(rr.c) != {(0, 0, 0)}:
                    raise ValueError("can only divide by constants")
                return l * (1 / rr.c[(0, 0, 0)])
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return v * Fraction(-1) if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return _Poly({(0, 0, 0): Fraction(node.value)})
        if isinstance(node, ast.Name) and node.id in ("z1", "z2", "z3"):
            e = [0, 0, 0]
            e[int(node.id[1]) - 1] = 1
            return _Poly({tuple(e): Fraction(1)})
        raise ValueError(f"unsupported expression {ast.dump(node)}")

    p = ev(tree)
    degs = {sum(e) for e in p.c}
    if len(degs) > 1:
        raise ValueError(f"{text!r} is not homogeneous")
    return HomogeneousPoly(degs.pop() if degs else 0, p.c)


# -- linear algebra on 3x3 rational matrices -----------------------------------------

def rank(m: Sequence[Sequence]) -> int:
    rows = [[Fraction(x) for x in r] for r in m]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def det3(m: Sequence[Sequence]) -> Fraction:
    a = [[Fraction(x) for x in r] for r in m]
    return (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))


def inverse3(m: Sequence[Sequence]) -> list[list[Fraction]]:
    d = det3(m)
    if d == 0:
        raise ZeroDivisionError("singular matrix")
    a = [[Fraction(x) for x in r] for r in m]
    cof = [[(a[(j + 1) % 3][(i + 1) % 3] * a[(j + 2) % 3][(i + 2) % 3]
             - a[(j + 1) % 3][(i + 2) % 3] * a[(j + 2) % 3][(i + 1) % 3]) for j in range(3)]
           for i in range(3)]
    return [[cof[i][j] / d for j in range(3)] for i in range(3)]


def apply3(m, p) -> tuple[Fraction, ...]:
    return tuple(sum(Fraction(m[i][j]) * Fraction(p[j]) for j in range(3)) for i in range(3))


# -- point classification --------------------------------------------------------------

def on_curve(f: HomogeneousPoly, p) -> bool:
    return f(p) == 0


def is_singular(f: HomogeneousPoly, p) -> bool:
    return on_curve(f, p) and all(g == 0 for g in f.gradient(p))


def is_node(f: HomogeneousPoly, p) -> bool:
    if not on_curve(f, p):
        raise PreconditionError(f"{ProjPoint(p)} is not on the curve")
    if any(g != 0 for g in f.gradient(p)):
        return False
    return rank(f.hessian(p)) == 2


def is_flex(f: HomogeneousPoly, p) -> bool:
    if f.degree != 3:
        raise PreconditionError("flex detection is implemented for cubics only")
    if not on_curve(f, p):
        raise PreconditionError(f"{ProjPoint(p)} is not on the curve")
    if is_singular(f, p):
        raise PreconditionError(f"{ProjPoint(p)} is a singular point")
    return det3(f.hessian(p)) == 0


def tangent_line(f: HomogeneousPoly, p) -> HomogeneousPoly:
    g = f.gradient(p)
    if all(x == 0 for x in g):
        raise PreconditionError("no tangent line at a singular point")
    return HomogeneousPoly(1, {(1, 0, 0): g[0], (0, 1, 0): g[1], (0, 0, 1): g[2]})


def _line_coeffs(line: HomogeneousPoly) -> tuple[Fraction, Fraction, Fraction]:
    if line.degree != 1 or line.is_zero():
        raise ValueError("a line is a nonzero form of degree 1")
    c = line.coeffs
    return (c.get((1, 0, 0), Fraction(0)), c.get((0, 1, 0), Fraction(0)), c.get((0, 0, 1), Fraction(0)))


def _second_point(line: HomogeneousPoly, p) -> tuple[Fraction, Fraction, Fraction]:
    a = _line_coeffs(line)
    # two independent vectors orthogonal to a; pick one not proportional to p
    basis = []
    for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        v = (a[1] * e[2] - a[2] * e[1], a[2] * e[0] - a[0] * e[2], a[0] * e[1] - a[1] * e[0])
        if any(v):
            basis.append(v)
    for v in basis:
        if rank([list(p), list(v)]) == 2:
            return v
    raise ValueError("line is degenerate")


def _restrict(f: HomogeneousPoly, p, q) -> list[Fraction]:
    """Coefficients c_i of F(s p + t q) = sum c_i s^(d-i) t^i."""

    def mul(u, v):
        out = [0] * (len(u) + len(v) - 1)
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    out[i + j] += a * b
        return out

    lin = [[_exact(p[i]), _exact(q[i])] for i in range(3)]
    total = [0] * (f.degree + 1)
    for e, k in f.terms:
        acc = [k]
        for i in range(3):
            for _ in range(e[i]):
                acc = mul(acc, lin[i])
        for i, a in enumerate(acc):
            total[i] += a
    return [Fraction(x) for x in total]


def line_intersection_multiplicity(f: HomogeneousPoly, line: HomogeneousPoly, p) -> int:
    a = _line_coeffs(line)
    p = tuple(ProjPoint(p))
    if sum(x * y for x, y in zip(a, p)) != 0:
        raise PreconditionError(f"{ProjPoint(p)} is not on the line")
    if not on_curve(f, p):
        raise PreconditionError(f"{ProjPoint(p)} is not on the curve")
    q = _second_point(line, p)
    c = _restrict(f, p, q)
    if all(x == 0 for x in c):
        raise CurveContainsLine("the curve contains the line: infinite multiplicity")
    return next(i for i, x in enumerate(c) if x != 0)


def _rational_roots(coeffs: list[Fraction]) -> list[tuple[Fraction, int]]:
    """Rational roots with multiplicity of sum coeffs[i] t^i."""
    from math import gcd, lcm

    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    out = []
    zero_mult = 0
    while c and c[0] == 0:
        c.pop(0)
        zero_mult += 1
    if zero_mult:
        out.append((Fraction(0), zero_mult))
    if len(c) <= 1:
        return out
    den = lcm(*(x.denominator for x in c))
    ints = [int(x * den) for x in c]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]

    def divisors(n):
        n = abs(n)
        return [k for k in range(1, n + 1) if n % k == 0]

    cands = {Fraction(s * p, q) for p in divisors(ints[0]) for q in divisors(ints[-1]) for s in (1, -1)}
    poly = [Fraction(x) for x in ints]
    for r in sorted(cands):
        mult = 0
        while len(poly) > 1:
            # synthetic division by (t - r), coefficients low to high
            hi = poly[::-1]
            quot = [hi[0]]
            for x in hi[1:]:
                quot.append(x + quot[-1] * r)
            if quot[-1] != 0:
                break
            poly = quot[:-1][::-1]
            mult += 1
        if mult:
            out.append((r, mult))
    return out


def line_intersections(f: HomogeneousPoly, line: HomogeneousPoly):
    """Rational intersection points with multiplicities, and the residual degree."""
    a = _line_coeffs(line)
    # two points spanning the line
    pts = []
    for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        v = (a[1] * e[2] - a[2] * e[1], a[2] * e[0] - a[0] * e[2], a[0] * e[1] - a[1] * e[0])
        if any(v) and (not pts or rank([list(pts[0]), list(v)]) == 2):
            pts.append(v)
    p, q = pts[0], pts[1]
    c = _restrict(f, p, q)
    if all(x == 0 for x in c):
        raise CurveContainsLine("the curve contains the line")
    found = []
    # points s p + t q; t/s = r for finite r, and the point q itself at s = 0
    for r, m in _rational_roots(c):
        found.append((ProjPoint([Fraction(p[i]) + r * q[i] for i in range(3)]), m))
    top = len(c) - 1
    while c[top] == 0:
        top -= 1
    at_q = f.degree - top
    if at_q:
        found.append((ProjPoint(q), at_q))
    residual = f.degree - sum(m for _, m in found)
    return found, residual


def reflection_factor(f: HomogeneousPoly, i: int) -> Optional[Fraction]:
    """c with F(..., -z_i, ...) = c F, if such a constant exists."""
    g = f.sign_flip(i)
    for e, k in f.terms:
        c = g.coeffs.get(e, Fraction(0)) / k
        return c if g == f.scale(c) else None
    return Fraction(1)


def tangent_cone(f: HomogeneousPoly, p) -> list[list[Fraction]]:
    """Hessian at a singular point: the quadratic form of the tangent cone."""
    if not is_singular(f, p):
        raise PreconditionError("tangent cone is only taken at singular points")
    return f.hessian(p)


# -- the preset cubic ------------------------------------------------------------------

def nodal_cubic() -> HomogeneousPoly:
    """F = z3 (z1^2 - z2^2) - z1^3."""
    return HomogeneousPoly(3, {(2, 0, 1): 1, (0, 2, 1): -1, (3, 0, 0): -1})


@dataclass
class CubicCheck:
    id: str
    passed: bool
    witness: dict

    def to_json(self):
        return {"id": self.id, "pass": self.passed, "witness": self.witness}


def _s(x):
    return [str(v) for v in x] if isinstance(x, (list, tuple)) else str(x)


def mukai_checklist() -> list[CubicCheck]:
    f = nodal_cubic()
    q = ProjPoint(0, 0, 1)
    p = ProjPoint(0, 1, 0)
    z3 = HomogeneousPoly(1, {(0, 0, 1): 1})
    out = []
    g, h = f.gradient(q), f.hessian(q)
    node = on_curve(f, q) and not any(g) and rank(h) == 2  # is_node, keeping the witnesses
    out.append(CubicCheck("node_at_q", node,
                          {"point": str(q), "gradient": _s(g),
                           "hessian": [_s(r) for r in h], "rank": rank(h)}))
    dh = det3(f.hessian(p))
    flex = on_curve(f, p) and not is_singular(f, p) and dh == 0
    out.append(CubicCheck("flex_at_p", flex, {"point": str(p), "det_hessian": str(dh)}))
    tl = tangent_line(f, p)
    out.append(CubicCheck("tangent_at_p_is_z3", _line_coeffs(tl)[:2] == (0, 0),
                          {"gradient": _s(f.gradient(p)), "tangent": str(tl)}))
    mult = line_intersection_multiplicity(f, z3, p)
    out.append(CubicCheck("triple_tangency_z3", mult == 3, {"multiplicity": mult}))
    c2 = reflection_factor(f, 1)
    out.append(CubicCheck("branch_swap_symmetry", c2 is not None,
                          {"map": "z2 -> -z2", "factor": None if c2 is None else str(c2),
                           "branch_tangents": ["z1 - z2", "z1 + z2"]}))
    return out


def literal_reflection_note() -> dict:
    """F(-z1, z2, z3) compared with F; it is not a multiple of F."""
    f = nodal_cubic()
    g = f.sign_flip(0)
    return {"map": "z1 -> -z1", "image": str(g), "factor": None if reflection_factor(f, 0) is None
            else str(reflection_factor(f, 0))}
