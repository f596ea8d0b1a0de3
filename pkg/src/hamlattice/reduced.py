"""Cohomology of the reduced orbifolds Z and the classes pulled back to X_k.

Z carries two distinguished orbifold spheres: D1 = CP^1_{2,3} and
D2 = CP^1_{1,l}.  A :class:`ReducedClass` records the values of a class on
D1 and D2 as affine functions of the level kappa.  The pulled-back classes
(epsilon, chi, tau, A_k) live on X_k with k = l + 3.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .lattice import DivisorClass, esum, format_class, intersect
from .snf import cokernel, isomorphic

ELLS = (2, 3, 4, 5)


def _check_ell(ell: int) -> None:
    if ell not in ELLS:
        raise ValueError(f"l must be one of {ELLS}, got {ell}")


@dataclass(frozen=True)
class Affine:
    """const + slope * kappa."""
    const: Fraction
    slope: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "const", Fraction(self.const))
        object.__setattr__(self, "slope", Fraction(self.slope))

    def __call__(self, kappa) -> Fraction:
        return self.const + self.slope * Fraction(kappa)

    def derivative(self) -> Affine:
        return Affine(self.slope, 0)

    def __neg__(self) -> Affine:
        return Affine(-self.const, -self.slope)

    def __str__(self):
        if self.slope == 0:
            return str(self.const)
        return f"{self.const} + {self.slope}*kappa"


@dataclass(frozen=True)
class ReducedClass:
    ell: int
    d1: Affine
    d2: Affine

    def at(self, kappa) -> tuple[Fraction, Fraction]:
        return (self.d1(kappa), self.d2(kappa))

    def derivative(self) -> ReducedClass:
        return ReducedClass(self.ell, self.d1.derivative(), self.d2.derivative())

    def __neg__(self) -> ReducedClass:
        return ReducedClass(self.ell, -self.d1, -self.d2)

    def to_json(self, kappa=None) -> dict:
        out = {"l": self.ell,
               "D1": {"const": str(self.d1.const), "slope": str(self.d1.slope)},
               "D2": {"const": str(self.d2.const), "slope": str(self.d2.slope)}}
        if kappa is not None:
            v1, v2 = self.at(kappa)
            out["kappa"] = str(Fraction(kappa))
            out["values"] = [str(v1), str(v2)]
        return out


def omega_class(ell: int) -> ReducedClass:
    """[omega_kappa]: (6 + kappa)/6 on D1 and (l + kappa)/l on D2."""
    _check_ell(ell)
    return ReducedClass(ell, Affine(1, Fraction(1, 6)), Affine(1, Fraction(1, ell)))


def euler_class(ell: int) -> ReducedClass:
    _check_ell(ell)
    return ReducedClass(ell, Affine(Fraction(-1, 6)), Affine(Fraction(-1, ell)))


def dh_derivative_holds(ell: int) -> bool:
    """e_Z(Y) == -d/dkappa [omega_kappa] on both spheres."""
    return euler_class(ell) == -omega_class(ell).derivative()


# -- classes on X_k ------------------------------------------------------------

def solve_pairings(k: int, conditions: Sequence[tuple[DivisorClass, Fraction]]) -> DivisorClass:
    """The unique class X with X.C = v for each (C, v); needs k + 1 independent C."""
    if len(conditions) != k + 1:
        raise ValueError(f"need {k + 1} conditions, got {len(conditions)}")
    # X = d L + sum m_i E_i, and X.C = d*C.d - sum m_i C.m_i
    rows = [[c.d, *(-x for x in c.m), Fraction(v)] for c, v in conditions]
    n = k + 1
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if piv is None:
            raise ValueError("pairing conditions are degenerate")
        rows[col], rows[piv] = rows[piv], rows[col]
        p = rows[col][col]
        rows[col] = [x / p for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    sol = [rows[i][n] for i in range(n)]
    return DivisorClass(k, sol[0], tuple(sol[1:]))


def chain_classes(k: int) -> list[DivisorClass]:
    """E_i - E_{i+1} for i != 3, k: the -2 spheres of the two chains."""
    return [DivisorClass.exc(i, k) - DivisorClass.exc(i + 1, k) for i in range(1, k) if i != 3]


def conic_class(k: int) -> DivisorClass:
    """L - E_123."""
    return DivisorClass.line(k) - esum((1, 2, 3), k)


def _eps_conditions(ell: int) -> list[tuple[DivisorClass, Fraction]]:
    k = ell + 3
    conds = [(c, Fraction(0)) for c in chain_classes(k)]
    conds.append((conic_class(k), Fraction(0)))
    conds.append((DivisorClass.exc(3, k), Fraction(1, 6)))
    conds.append((DivisorClass.exc(k, k), Fraction(1, ell)))
    return conds


_PRINTED_EPS = {
    4: (Fraction(1, 12), 6, 2, 3),
    5: (Fraction(1, 30), 15, 5, 6),
}


def _printed(ell: int) -> DivisorClass:
    s, a, b, c = _PRINTED_EPS[ell]
    k = ell + 3
    return s * (a * DivisorClass.line(k) - b * esum((1, 2, 3), k) - c * esum(range(4, k + 1), k))


def epsilon_class(ell: int) -> DivisorClass:
    """epsilon_{l+3}: the printed class for l = 4, 5, solved from its pairings for l = 2, 3."""
    _check_ell(ell)
    if ell in _PRINTED_EPS:
        return _printed(ell)
    return solve_pairings(ell + 3, _eps_conditions(ell))


def epsilon_by_pairings(ell: int) -> DivisorClass:
    _check_ell(ell)
    return solve_pairings(ell + 3, _eps_conditions(ell))


def chi_class(k: int) -> DivisorClass:
    if k not in (7, 8):
        raise ValueError("chi_k is defined for k = 7, 8")
    return _printed(k - 3)


def pullback_omega(ell: int, kappa, d2_coefficient: Optional[Fraction] = None) -> DivisorClass:
    """(1 + kappa/6)(3L - E_123) - (1 + kappa/l)(E_4 + ... + E_k).

    ``d2_coefficient`` overrides the 1/l slope (used to evaluate printed variants).
    """
    _check_ell(ell)
    k = ell + 3
    kappa = Fraction(kappa)
    s2 = Fraction(1, ell) if d2_coefficient is None else Fraction(d2_coefficient)
    top = 3 * DivisorClass.line(k) - esum((1, 2, 3), k)
    return (1 + kappa / 6) * top - (1 + s2 * kappa) * esum(range(4, k + 1), k)


# -- tau classes and minimal area ------------------------------------------------

@dataclass(frozen=True)
class TauClass:
    """The class of tau_{lambda, epsilon} on X_k.

    Every sphere of the two chains and the conic L - E_123 has area eps, E_3
    has area 1 - 3 eps and E_k has area lambda - (l - 1) eps.
    """
    k: int
    lam: Fraction
    eps: Fraction

    def __post_init__(self):
        if self.k not in (7, 8):
            raise ValueError("tau classes are defined for k = 7, 8")
        object.__setattr__(self, "lam", Fraction(self.lam))
        object.__setattr__(self, "eps", Fraction(self.eps))
        if not 0 < self.lam <= 1 or self.eps < 0:
            raise ValueError("need 0 < lambda <= 1 and eps >= 0")

    @property
    def ell(self) -> int:
        return self.k - 3

    def conditions(self) -> list[tuple[DivisorClass, Fraction]]:
        k, e = self.k, self.eps
        conds = [(c, e) for c in chain_classes(k)]
        conds.append((conic_class(k), e))
        conds.append((DivisorClass.exc(3, k), 1 - 3 * e))
        conds.append((DivisorClass.exc(k, k), self.lam - (self.ell - 1) * e))
        return conds

    @property
    def divisor(self) -> DivisorClass:
        return solve_pairings(self.k, self.conditions())

    def area(self, c: DivisorClass) -> Fraction:
        return intersect(self.divisor, c)

    def d1_total(self) -> Fraction:
        """Area of the preimage of D1: the conic, E_1 - E_2, E_2 - E_3 and E_3."""
        k = self.k
        parts = [conic_class(k), chain_classes(k)[0], chain_classes(k)[1], DivisorClass.exc(3, k)]
        return sum((self.area(p) for p in parts), Fraction(0))

    def d2_total(self) -> Fraction:
        k = self.k
        parts = [DivisorClass.exc(i, k) - DivisorClass.exc(i + 1, k) for i in range(4, k)]
        parts.append(DivisorClass.exc(k, k))
        return sum((self.area(p) for p in parts), Fraction(0))

    def limit(self) -> DivisorClass:
        """The eps -> 0 class 3L - E_123 - lambda E_{4..k}."""
        k = self.k
        return 3 * DivisorClass.line(k) - esum((1, 2, 3), k) - self.lam * esum(range(4, k + 1), k)


@dataclass(frozen=True)
class MinArea:
    k: int
    lam: Fraction
    eps: Fraction
    minimum: Fraction
    argmin: tuple[DivisorClass, ...]
    searched: int

    @property
    def unique(self) -> Optional[DivisorClass]:
        return self.argmin[0] if len(self.argmin) == 1 else None

    def attained_on_last(self) -> bool:
        return DivisorClass.exc(self.k, self.k) in self.argmin

    def to_json(self) -> dict:
        return {"k": self.k, "lambda": str(self.lam), "eps": str(self.eps),
                "minimum": str(self.minimum),
                "argmin": [format_class(c) for c in self.argmin],
                "tie": len(self.argmin) > 1, "searched": self.searched}


def min_area_exceptional(k: int, lam, eps) -> MinArea:
    from .weyl import enumerate_exceptional

    tau = TauClass(k, lam, eps)
    t = tau.divisor
    areas = [(intersect(t, e), e) for e in enumerate_exceptional(k)]
    low = min(a for a, _ in areas)
    arg = tuple(e for a, e in areas if a == low)
    return MinArea(k, tau.lam, tau.eps, low, arg, len(areas))


# -- homology, inflation, ranges --------------------------------------------------

@dataclass(frozen=True)
class HomologyZ:
    ell: int
    invariant_factors: tuple[int, ...]
    group: str
    matches_z6_zl: bool
    caveat: Optional[str] = None

    def to_json(self) -> dict:
        return {"l": self.ell, "invariant_factors": list(self.invariant_factors),
                "group": self.group, "isomorphic_to_Z6+Zl": self.matches_z6_zl,
                "caveat": self.caveat}


def homology_Z(ell: int) -> HomologyZ:
    """Cokernel of alpha(m, n) = (6m, l n)."""
    _check_ell(ell)
    cok = cokernel([[6, 0], [0, ell]])
    caveat = None if ell in (4, 5) else f"l={ell} lies outside the range l in {{4, 5}} where H_1 is computed"
    return HomologyZ(ell, cok.invariant_factors, cok.describe(),
                     isomorphic(cok.invariant_factors, (6, ell)), caveat)


def inflation_class(k: int) -> DivisorClass:
    """A_7 = 15L - 5E_123 - 6E_4567, A_8 = 33L - 11E_123 - 12E_{4..8}."""
    coeffs = {7: (5, 6), 8: (11, 12)}
    if k not in coeffs:
        raise ValueError("inflation classes are defined for k = 7, 8")
    a, b = coeffs[k]
    return a * (3 * DivisorClass.line(k) - esum((1, 2, 3), k)) - b * esum(range(4, k + 1), k)


def inflation_mu(k: int, a_class: Optional[DivisorClass] = None) -> Fraction:
    """The level mu with A_k proportional to the pullback of [omega_mu]."""
    if k not in (7, 8):
        raise ValueError("inflation_mu needs k in {7, 8}")
    ell = k - 3
    A = inflation_class(k) if a_class is None else a_class
    if A.k != k:
        raise ValueError("class lives on the wrong blow-up")
    mult = A.multiplicities
    a = A.d / 3
    if not (mult[0] == mult[1] == mult[2] == a and len(set(mult[3:])) == 1):
        raise ValueError(f"{format_class(A)} is not of the form a(3L - E_123) - b E_(4..k)")
    b = mult[3]
    # b (1 + mu/6) = a (1 + mu/l)
    den = a / ell - b / 6
    if den == 0:
        raise ValueError("no finite level is proportional to this class")
    mu = (b - a) / den
    if mu <= 0:
        raise ValueError(f"proportionality gives mu = {mu}, not positive")
    return mu


def lambda_ratio(ell: int, kappa) -> Fraction:
    """6(l + kappa) / (l (6 + kappa)): area of D2 over area of D1."""
    _check_ell(ell)
    kappa = Fraction(kappa)
    return 6 * (ell + kappa) / (ell * (6 + kappa))


def lambda_ratio_identity(ell: int) -> bool:
    """lambda_ratio == omega(D2)/omega(D1) as rational functions of kappa.

    Both sides are ratios of affine functions, so cross-multiplying gives
    quadratics; agreement at three points settles it.
    """
    om = omega_class(ell)
    for kappa in (Fraction(0), Fraction(1), Fraction(2)):
        lhs_num, lhs_den = 6 * (ell + kappa), ell * (6 + kappa)
        if lhs_num * om.d1(kappa) != om.d2(kappa) * lhs_den:
            return False
    return True


def in_toric_range(ell: int, kappa) -> bool:
    """-l < kappa < 2(3 - l)."""
    kappa = Fraction(kappa)
    return -ell < kappa < 2 * (3 - ell)


def toric_range_equivalence(ell: int) -> bool:
    """l + kappa < 3 + kappa/2 and kappa < 2(3 - l) define the same half line.

    Write the first as s*kappa + c < 0; with s > 0 it is kappa < -c/s.
    """
    s, c = Fraction(1) - Fraction(1, 2), Fraction(ell - 3)
    return s > 0 and -c / s == 2 * (3 - ell)


@dataclass
class PullbackCheck:
    ell: int
    computed: DivisorClass
    printed: Optional[DivisorClass]
    flags: list[str] = field(default_factory=list)


def pullback_report(ell: int, kappa=0) -> PullbackCheck:
    """Pullback of [omega_kappa] at l = 2, 3 against the printed slopes."""
    _check_ell(ell)
    comp = pullback_omega(ell, kappa)
    printed = None
    flags = []
    if ell == 3:
        printed = pullback_omega(ell, kappa, Fraction(1, 2))
        flags.append("l=3: printed slope (1 + kappa/2) on e4+e5+e6 disagrees with "
                     "(1 + kappa/3) obtained from the D2 value (l + kappa)/l")
    elif ell == 2:
        printed = pullback_omega(ell, kappa, Fraction(1, 2))
    return PullbackCheck(ell, comp, printed, flags)


def slope_consistency(ell: int) -> bool:
    """The pullback pairs with E_3 and E_k to the omega values on D1 and D2."""
    om = omega_class(ell)
    k = ell + 3
    for kappa in (Fraction(-1), Fraction(0), Fraction(1, 2)):
        p = pullback_omega(ell, kappa)
        if intersect(p, DivisorClass.exc(3, k)) != om.d1(kappa):
            return False
        if intersect(p, DivisorClass.exc(k, k)) != om.d2(kappa):
            return False
        if intersect(p, conic_class(k)) != 0:
            return False
    return True


def pairing_table(c: DivisorClass, probes: Iterable[DivisorClass]) -> list[tuple[str, Fraction]]:
    return [(format_class(p), intersect(c, p)) for p in probes]
