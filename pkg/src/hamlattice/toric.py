"""Rational polygons, their fans, and Hirzebruch-Jung resolution.

Polygons are stored by vertices in counterclockwise order.  Each edge gets
the primitive integer outward conormal u and support value h with u.x <= h
on the polygon.  The fan of a polygon is the cyclic list of its conormals.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Vec = tuple[int, int]
Point = tuple[Fraction, Fraction]


class GeometryError(ValueError):
    pass


def _pt(p) -> Point:
    x, y = p
    if isinstance(x, float) or isinstance(y, float):
        raise TypeError("coordinates must be exact")
    return (Fraction(x), Fraction(y))


def det(u, v) -> Fraction | int:
    return u[0] * v[1] - u[1] * v[0]


def primitive(v: Sequence[Fraction | int]) -> Vec:
    """The primitive integer vector on the ray through ``v``."""
    fx, fy = Fraction(v[0]), Fraction(v[1])
    if fx == 0 and fy == 0:
        raise GeometryError("zero vector has no direction")
    den = lcm(fx.denominator, fy.denominator)
    ix, iy = int(fx * den), int(fy * den)
    g = gcd(ix, iy)
    return (ix // g, iy // g)


def affine_length(p, q) -> Fraction:
    """t with q - p = t * w for w primitive in Z^2."""
    p, q = _pt(p), _pt(q)
    dx, dy = q[0] - p[0], q[1] - p[1]
    if dx == 0 and dy == 0:
        raise GeometryError("edge endpoints coincide")
    w = primitive((dx, dy))
    return dx / w[0] if w[0] else dy / w[1]


@dataclass(frozen=True)
class Facet:
    conormal: Vec
    support: Fraction


@dataclass(frozen=True)
class Polytope2:
    vertices: tuple[Point, ...]

    def __post_init__(self):
        vs = tuple(_pt(v) for v in self.vertices)
        object.__setattr__(self, "vertices", vs)
        n = len(vs)
        if n < 3:
            raise GeometryError("a polygon needs at least three vertices")
        for i in range(n):
            a, b, c = vs[i - 1], vs[i], vs[(i + 1) % n]
            turn = det((b[0] - a[0], b[1] - a[1]), (c[0] - b[0], c[1] - b[1]))
            if turn == 0:
                raise GeometryError(f"vertex {b} is not a corner")
            if turn < 0:
                raise GeometryError("vertices must be convex and counterclockwise")

    def __len__(self):
        return len(self.vertices)

    def edges(self) -> list[tuple[Point, Point]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def facets(self) -> list[Facet]:
        """Facet i is the edge from vertex i to vertex i+1."""
        out = []
        for a, b in self.edges():
            u = primitive((b[1] - a[1], a[0] - b[0]))
            out.append(Facet(u, u[0] * a[0] + u[1] * a[1]))
        return out

    def conormals(self) -> list[Vec]:
        return [f.conormal for f in self.facets()]

    def fan(self) -> FanCycle:
        return FanCycle(tuple(self.conormals()))

    def vertex_orders(self) -> list[tuple[Point, int]]:
        """|det| of the two conormals meeting at each vertex."""
        us = self.conormals()
        n = len(us)
        return [(self.vertices[i], abs(det(us[i - 1], us[i]))) for i in range(n)]

    def edge_lengths(self) -> list[Fraction]:
        return [affine_length(a, b) for a, b in self.edges()]

    def contains(self, p) -> bool:
        p = _pt(p)
        return all(f.conormal[0] * p[0] + f.conormal[1] * p[1] <= f.support for f in self.facets())

    def clockwise_from(self, start) -> list[Point]:
        start = _pt(start)
        vs = list(reversed(self.vertices))
        i = vs.index(start)
        return vs[i:] + vs[:i]

    def scaled(self, c) -> Polytope2:
        c = Fraction(c)
        return Polytope2(tuple((c * x, c * y) for x, y in self.vertices))

    def to_json(self) -> dict:
        return {"vertices": [[str(x), str(y)] for x, y in self.vertices],
                "conormals": [list(u) for u in self.conormals()]}


@dataclass(frozen=True)
class FanCycle:
    """Primitive rays in counterclockwise cyclic order."""
    rays: tuple[Vec, ...]

    def __post_init__(self):
        rays = tuple((int(a), int(b)) for a, b in self.rays)
        object.__setattr__(self, "rays", rays)
        for r in rays:
            if gcd(*r) != 1:
                raise GeometryError(f"ray {r} is not primitive")
        n = len(rays)
        for i in range(n):
            if n > 2 and det(rays[i], rays[(i + 1) % n]) <= 0:
                raise GeometryError(f"rays {rays[i]} and {rays[(i + 1) % n]} are not in counterclockwise order")

    def __len__(self):
        return len(self.rays)

    def determinants(self) -> list[int]:
        n = len(self.rays)
        return [det(self.rays[i], self.rays[(i + 1) % n]) for i in range(n)]

    def orders(self) -> list[int]:
        return [abs(x) for x in self.determinants()]

    def is_smooth(self) -> bool:
        return all(x == 1 for x in self.orders())

    def clockwise_from(self, start: Vec) -> list[Vec]:
        rs = list(reversed(self.rays))
        i = rs.index(tuple(start))
        return rs[i:] + rs[:i]


def smoothness_and_orders(obj: Polytope2 | FanCycle) -> list[int]:
    """Per-corner |det|: for a polygon, one entry per vertex in storage order."""
    if isinstance(obj, Polytope2):
        return [o for _, o in obj.vertex_orders()]
    return obj.orders()


def resolve_cone(u: Vec, v: Vec) -> list[Vec]:
    """Rays strictly between u and v (counterclockwise) that make the cone smooth.

    These are the lattice points on the compact boundary of the convex hull of
    the nonzero lattice points in cone(u, v).  Every such point lies in the
    parallelogram spanned by u and v, so only that box is scanned.
    """
    m = det(u, v)
    if m <= 0:
        raise GeometryError(f"cone ({u}, {v}) is not strictly convex and counterclockwise")
    if m == 1:
        return []
    xs = [0, u[0], v[0], u[0] + v[0]]
    ys = [0, u[1], v[1], u[1] + v[1]]
    cand = []
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            if (x, y) == (0, 0):
                continue
            # p = a u + b v with a = det(p, v)/m, b = det(u, p)/m
            a, b = det((x, y), v), det(u, (x, y))
            if 0 <= a <= m and 0 <= b <= m:
                cand.append((x, y))
    # order by angle from u: b/a increasing, i.e. compare via cross products
    cand.sort(key=lambda p: Fraction(det(u, p), det(p, v)) if det(p, v) else Fraction(10 ** 9))
    # keep the first point on each ray from the origin
    seen, pts = set(), []
    for p in cand:
        r = primitive(p)
        if r not in seen:
            seen.add(r)
            pts.append(r)
    hull: list[Vec] = []
    for p in pts:
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            if det((b[0] - a[0], b[1] - a[1]), (p[0] - b[0], p[1] - b[1])) > 0:
                hull.pop()
            else:
                break
        hull.append(p)
    if hull[0] != tuple(u) or hull[-1] != tuple(v):
        raise GeometryError("hull endpoints are not the cone generators")
    # points of the hull edges are exactly the primitive rays met above, so the
    # candidates that are on the chain (including collinear ones) are kept
    return hull[1:-1]


def hj_resolve(p: Polytope2 | FanCycle) -> FanCycle:
    fan = p.fan() if isinstance(p, Polytope2) else p
    rays = fan.rays
    out: list[Vec] = []
    n = len(rays)
    for i in range(n):
        u, v = rays[i], rays[(i + 1) % n]
        out.append(u)
        out.extend(resolve_cone(u, v))
    return FanCycle(tuple(out))


def hj_continued_fraction(m: int, q: int) -> list[int]:
    """m/q = b_1 - 1/(b_2 - 1/...), all b_i >= 2 (0 < q < m, gcd(m, q) = 1)."""
    if not (0 < q < m and gcd(m, q) == 1):
        raise ValueError("need 0 < q < m coprime")
    out = []
    a, b = m, q
    while b:
        c = -(-a // b)
        out.append(c)
        a, b = b, c * b - a
    return out


def resolve_by_fractions(m: int, q: int) -> list[Vec]:
    """Rays inserted in cone((m, -q), (0, 1)), counterclockwise.

    With m/q = [b_1, ..., b_s] the rays are u_0 = e2, u_1 = e1 and
    u_{i+1} = b_i u_i - u_{i-1}, ending at u_{s+1} = (m, -q).
    """
    bs = hj_continued_fraction(m, q)
    u = [(0, 1), (1, 0)]
    for b in bs:
        a0, a1 = u[-2], u[-1]
        u.append((b * a1[0] - a0[0], b * a1[1] - a0[1]))
    if u[-1] != (m, -q):
        raise ArithmeticError(f"recursion ended at {u[-1]}, expected {(m, -q)}")
    return list(reversed(u[1:-1]))


def self_intersections(fan: FanCycle) -> list[int]:
    """s_i with u_{i-1} + u_{i+1} = -s_i u_i."""
    if not fan.is_smooth():
        raise GeometryError("self intersections need a smooth fan")
    rs = fan.rays
    n = len(rs)
    out = []
    for i in range(n):
        a, u, b = rs[i - 1], rs[i], rs[(i + 1) % n]
        sx, sy = a[0] + b[0], a[1] + b[1]
        if det((sx, sy), u) != 0:
            raise GeometryError(f"neighbours of {u} do not sum to a multiple of it")
        s = -(sx // u[0] if u[0] else sy // u[1])
        out.append(s)
    return out


# -- model polygons --------------------------------------------------------------

@dataclass(frozen=True)
class WeightedProjectiveData:
    weights: tuple[int, int, int]

    def __post_init__(self):
        if len(self.weights) != 3 or any(w <= 0 for w in self.weights):
            raise ValueError("need three positive weights")

    @property
    def A(self) -> int:
        m1, m2, m3 = self.weights
        return m1 * m2 * m3

    @property
    def a(self) -> tuple[int, int, int]:
        return tuple(self.A // w for w in self.weights)


def wps_polytope(w: WeightedProjectiveData | Sequence[int]) -> Polytope2:
    """T_{q,p} with vertices (0,0), (q,0), (0,p), p <= q, for weights (1, p, q)."""
    if not isinstance(w, WeightedProjectiveData):
        w = WeightedProjectiveData(tuple(w))
    m1, m2, m3 = w.weights
    if m1 != 1:
        raise GeometryError("the affine normalization needs m1 = 1")
    p, q = sorted((m2, m3))
    return Polytope2(((0, 0), (q, 0), (0, p)))


def triangle(q, p) -> Polytope2:
    return Polytope2(((0, 0), (q, 0), (0, p)))


def cut_corner(outer: Polytope2, ell: int, lam) -> Polytope2:
    """Remove the interior of lam * T_{1,l} = conv{(0,0), (lam l, 0), (0, lam)}."""
    lam = Fraction(lam)
    vs = list(outer.vertices)
    origin = (Fraction(0), Fraction(0))
    if origin not in vs:
        raise GeometryError("the corner to cut must sit at the origin")
    i = vs.index(origin)
    nxt, prv = vs[(i + 1) % len(vs)], vs[i - 1]
    if nxt[1] != 0 or nxt[0] <= 0 or prv[0] != 0 or prv[1] <= 0:
        raise GeometryError("the corner at the origin must be spanned by the positive axes")
    if lam <= 0:
        raise GeometryError("cut size must be positive")
    a, b = lam * ell, lam
    if not (a < nxt[0] and b < prv[1]):
        raise GeometryError(f"lambda*T_(1,{ell}) with lambda={lam} does not fit in the corner")
    rest = vs[i + 1:] + vs[:i]
    return Polytope2(tuple([(a, Fraction(0))] + rest + [(Fraction(0), b)]))


def delta_lambda(ell: int, lam) -> Polytope2:
    """Delta(lambda): T_{2,3} with the corner lambda T_{1,l} removed."""
    return cut_corner(triangle(3, 2), ell, lam)


def cut_scale(kappa) -> Fraction:
    """c = 6/(kappa + 6), rescaling the reduced space so that D1 has length 1."""
    return Fraction(6) / (Fraction(kappa) + 6)


# -- SVG -------------------------------------------------------------------------

def to_svg(poly: Polytope2 | None = None, fan: FanCycle | None = None, size: int = 360) -> str:
    """A small standalone SVG of a polygon and/or a fan drawn at the origin."""
    pts = [(float(x), float(y)) for x, y in (poly.vertices if poly else ())]
    if fan is not None:
        pts.extend((float(a), float(b)) for a, b in fan.rays)
        pts.append((0.0, 0.0))
    if not pts:
        raise ValueError("nothing to draw")
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-9)
    pad = 20
    s = (size - 2 * pad) / span

    def tx(x, y):
        return (pad + (x - lo_x) * s, size - pad - (y - lo_y) * s)

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
             f'viewBox="0 0 {size} {size}">']
    if poly is not None:
        coords = " ".join(f"{X:.2f},{Y:.2f}" for X, Y in (tx(float(x), float(y)) for x, y in poly.vertices))
        parts.append(f'<polygon points="{coords}" fill="#dde8f5" stroke="#1f4e79" stroke-width="2"/>')
        for (x, y) in poly.vertices:
            X, Y = tx(float(x), float(y))
            parts.append(f'<circle cx="{X:.2f}" cy="{Y:.2f}" r="3" fill="#1f4e79"/>')
    if fan is not None:
        ox, oy = tx(0.0, 0.0)
        for a, b in fan.rays:
            X, Y = tx(float(a), float(b))
            parts.append(f'<line x1="{ox:.2f}" y1="{oy:.2f}" x2="{X:.2f}" y2="{Y:.2f}" '
                         f'stroke="#a33" stroke-width="1.5"/>')
            parts.append(f'<text x="{X + 3:.2f}" y="{Y - 3:.2f}" font-size="10">({a},{b})</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def fan_json(poly: Polytope2, fan: FanCycle, order: Iterable[Vec] | None = None) -> dict:
    rays = list(order) if order is not None else list(fan.rays)
    sel = dict(zip(fan.rays, self_intersections(fan)))
    return {"vertices": [[str(x), str(y)] for x, y in poly.vertices],
            "conormals": [list(r) for r in rays],
            "self_intersections": [sel[tuple(r)] for r in rays]}
