"""Fixed-point data of the circle actions and slices of their moment polytopes.

The four fixed points x_1..x_4 sit at levels 6, l, -l, -6, have index 8 - 2k,
and carry the weights

    x_1: (-1, -2, -3)   x_2: (1, -1, -l)   x_3: (1, l, -1)   x_4: (1, 2, 3).

Slices use the normalized inequalities

    x_1 >= 0,  x_2 >= 0,  2 x_1 + 3 x_2 <= x_3,  x_1 + l x_2 >= x_3 - (6 - l),

so the slice at height x_3 is the reduced space at level kappa = x_3 - 6.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .lattice import format_class
from .reduced import ELLS, omega_class, pullback_omega, pullback_report
from .toric import Polytope2, affine_length

RING_CONSTANTS = {4: 5, 5: 22}


def _check(ell: int) -> None:
    if ell not in ELLS:
        raise ValueError(f"l must be one of {ELLS}, got {ell}")


@dataclass(frozen=True)
class FixedPointDatum:
    name: str
    level: Fraction
    index: int
    weights: tuple[int, int, int]

    @property
    def weight_sum(self) -> int:
        return sum(self.weights)

    def to_json(self) -> dict:
        return {"name": self.name, "level": str(self.level), "index": self.index,
                "weights": list(self.weights)}


@dataclass(frozen=True)
class TolmanData:
    ell: int
    points: tuple[FixedPointDatum, ...]
    ring_constant: Optional[int]  # x^2 = c y in cohomology; carried, never computed
    beta_c1: int  # c1 of the generator beta

    def point(self, name: str) -> FixedPointDatum:
        for p in self.points:
            if p.name == name:
                return p
        raise KeyError(name)

    def to_json(self) -> dict:
        return {"l": self.ell, "fixed_points": [p.to_json() for p in self.points],
                "ring_constant": self.ring_constant, "c1_beta": self.beta_c1}


def tolman_data(ell: int) -> TolmanData:
    _check(ell)
    weights = [(-1, -2, -3), (1, -1, -ell), (1, ell, -1), (1, 2, 3)]
    levels = [6, ell, -ell, -6]
    pts = tuple(FixedPointDatum(f"x{i}", Fraction(levels[i - 1]), 8 - 2 * i, weights[i - 1])
                for i in range(1, 5))
    return TolmanData(ell, pts, RING_CONSTANTS.get(ell), 6 - ell)


def critical_levels(ell: int) -> list[tuple[Fraction, str, int]]:
    """(level, name, index) from the bottom up."""
    return sorted((p.level, p.name, p.index) for p in tolman_data(ell).points)


def levels_symmetric(ell: int) -> bool:
    lv = [p.level for p in tolman_data(ell).points]
    return sum(lv) == 0 and sorted(lv) == sorted(-x for x in lv)


def weight_sum_difference(q: FixedPointDatum, q2: FixedPointDatum) -> int:
    """Sum of weights at q2 minus sum at q (raw; no division by isotropy order)."""
    return q2.weight_sum - q.weight_sum


def isotropy_spheres(ell: int, data: Optional[TolmanData] = None) -> list[tuple[tuple[str, str], int]]:
    """Pairs (q, q') and m >= 2 with +m a weight at q and -m a weight at q'."""
    pts = (data or tolman_data(ell)).points
    out = set()
    for q in pts:
        for q2 in pts:
            if q is q2:
                continue
            for m in set(q.weights):
                if m >= 2 and -m in q2.weights:
                    out.add(((q.name, q2.name), m))
    return sorted(out)


# -- moment polytope -------------------------------------------------------------

@dataclass(frozen=True)
class Inequality:
    """conormal . x >= bound  (conormal in Z^3)."""
    conormal: tuple[int, int, int]
    bound: Fraction

    def holds(self, x) -> bool:
        return sum(a * Fraction(b) for a, b in zip(self.conormal, x)) >= self.bound

    def __str__(self):
        names = ("x1", "x2", "x3")
        terms = " + ".join(f"{c}*{n}" if c != 1 else n for c, n in zip(self.conormal, names) if c)
        return f"{terms} >= {self.bound}"


@dataclass(frozen=True)
class MomentPolytope3:
    ell: int
    inequalities: tuple[Inequality, ...]

    def contains(self, x) -> bool:
        return all(q.holds(x) for q in self.inequalities)

    def to_json(self) -> dict:
        return {"l": self.ell, "inequalities": [str(q) for q in self.inequalities]}


def moment_polytope(ell: int) -> MomentPolytope3:
    _check(ell)
    return MomentPolytope3(ell, (
        Inequality((1, 0, 0), Fraction(0)),
        Inequality((0, 1, 0), Fraction(0)),
        Inequality((-2, -3, 1), Fraction(0)),
        Inequality((1, ell, -1), Fraction(ell - 6)),
    ))


def critical_height(ell: int) -> Fraction:
    """Height where the cut facet starts to meet the slice."""
    return Fraction(6 - ell)


def slice_range(ell: int) -> tuple[Fraction, Fraction]:
    """Open interval of heights whose slice is a nondegenerate polygon."""
    return (Fraction(0), Fraction(12 - 2 * ell))


@dataclass(frozen=True)
class Slice:
    ell: int
    x3: Fraction
    polygon: Polytope2
    cut: bool
    critical: bool

    @property
    def kappa(self) -> Fraction:
        return self.x3 - 6

    def d1_length(self) -> Fraction:
        """The edge on 2 x_1 + 3 x_2 = x_3."""
        h = self.x3
        return affine_length((h / 2, 0), (0, h / 3))

    def d2_length(self) -> Optional[Fraction]:
        """The cut edge, if present."""
        if not self.cut:
            return None
        r = self.x3 - (6 - self.ell)
        return affine_length((r, 0), (0, r / self.ell))

    def matches_omega(self) -> bool:
        om = omega_class(self.ell)
        if self.d1_length() != om.d1(self.kappa):
            return False
        return not self.cut or self.d2_length() == om.d2(self.kappa)

    def to_json(self) -> dict:
        return {"l": self.ell, "x3": str(self.x3), "kappa": str(self.kappa),
                "facets": len(self.polygon), "cut": self.cut, "critical": self.critical,
                "polygon": self.polygon.to_json(),
                "D1_length": str(self.d1_length()),
                "D2_length": None if self.d2_length() is None else str(self.d2_length())}


def slice_at(ell: int, x3) -> Slice:
    _check(ell)
    h = Fraction(x3)
    lo, hi = slice_range(ell)
    if not lo < h < hi:
        raise ValueError(f"x3 = {h} is outside the open range ({lo}, {hi}) for l = {ell}")
    r = h - (6 - ell)
    a, b = h / 2, h / 3
    if r <= 0:
        poly = Polytope2(((0, 0), (a, 0), (0, b)))
        return Slice(ell, h, poly, False, r == 0)
    poly = Polytope2(((r, 0), (a, 0), (0, b), (0, r / ell)))
    return Slice(ell, h, poly, True, False)


def facet_threshold(ell: int, steps: int = 40) -> Fraction:
    """Locate the 3 -> 4 facet transition by bisection over rational heights.

    The bracket is tightened until it pins a single dyadic point; the
    transition is then read off exactly from the facet counts on both sides
    of the candidate.
    """
    lo, hi = slice_range(ell)
    lo, hi = lo + Fraction(1, 10 ** 6), hi - Fraction(1, 10 ** 6)
    if len(slice_at(ell, lo).polygon) != 3 or len(slice_at(ell, hi).polygon) != 4:
        raise RuntimeError("no transition in range")
    for _ in range(steps):
        mid = (lo + hi) / 2
        if len(slice_at(ell, mid).polygon) == 3:
            lo = mid
        else:
            hi = mid
    # the bracket has width < 2^-steps; the transition is the unique integer in it
    cand = Fraction(round(lo))
    if not lo <= cand <= hi:
        raise RuntimeError("transition is not at an integer height")
    return cand


def literal_inequality_report(ell: int) -> dict:
    """Whether the unnormalized system reproduces the D1/D2 lengths.

    Literally, the slice at height t has hypotenuse length t/36 and cut
    length (1 - 6/l + t/l)/l.  Matching D1 forces t = 6(6 + kappa); the
    report checks whether that same t also gives D2 for two values of kappa.
    """
    _check(ell)
    om = omega_class(ell)
    ok = True
    for kappa in (Fraction(-1), Fraction(-2)):
        t = 6 * (6 + kappa)
        cut = (1 - Fraction(6, ell) + t / ell) / ell
        ok &= cut == om.d2(kappa)
    return {"l": ell, "literal": ["x1 >= 0", "x2 >= 0", "2*x1 + 3*x2 <= x3/6",
                                  f"x1 + {ell}*x2 >= 1 - 6/{ell} + x3/{ell}"],
            "normalized": [str(q) for q in moment_polytope(ell).inequalities],
            "literal_matches_omega": ok}


# -- l = 2, 3 ---------------------------------------------------------------------

@dataclass
class Ell23Report:
    items: list[dict] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(i["pass"] for i in self.items)

    def to_json(self) -> dict:
        return {"items": self.items, "flags": self.flags, "pass": self.passed}


def ell23_dictionary_report() -> Ell23Report:
    from .lattice import DivisorClass, esum
    from .weyl import verify_dictionary

    rep = Ell23Report()
    for name in ("hat5", "hat6"):
        d = verify_dictionary(name)
        item = {"id": f"{name}_valid", "pass": d.valid and d.preserves_canonical,
                "epsilon_image": format_class(d.epsilon_image)}
        rep.items.append(item)
        if name == "hat5":
            rep.items.append({"id": "hat5_anti_fixes_epsilon", "pass": d.anti_fixes_epsilon,
                              "epsilon_image": format_class(d.epsilon_image)})
        rep.flags.extend(d.flags)
    k = 5
    want = 3 * DivisorClass.line(k) - esum((1, 2, 3), k) - esum((4, 5), k)
    got = pullback_omega(2, 0)
    rep.items.append({"id": "l2_pullback_kappa0", "pass": got == want, "class": format_class(got)})
    for ell in (2, 3):
        pc = pullback_report(ell, 0)
        rep.flags.extend(pc.flags)
    return rep
