"""Exact arithmetic in H_2 of the blow-up X_k of CP^2 at k <= 8 points.

A class is stored as ``d*L + sum(m[i] * E_{i+1})`` with signed coefficients,
so E_1 is ``(d=0, m=(1, 0, ...))`` and the pairing carries the minus signs:
L.L = 1, E_i.E_i = -1, all mixed products 0.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

MAX_K = 8

Number = Union[int, Fraction]


class DimensionError(ValueError):
    """Two classes living on different blow-ups were combined."""


class ParseError(ValueError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floating point coefficients are not accepted")
    return Fraction(x)


@dataclass(frozen=True)
class DivisorClass:
    k: int
    d: Fraction
    m: tuple[Fraction, ...]

    def __post_init__(self):
        if not 0 <= self.k <= MAX_K:
            raise DimensionError(f"k={self.k} outside 0..{MAX_K}")
        object.__setattr__(self, "d", _frac(self.d))
        m = tuple(_frac(x) for x in self.m)
        if len(m) != self.k:
            raise DimensionError(f"expected {self.k} E-coefficients, got {len(m)}")
        object.__setattr__(self, "m", m)

    def __hash__(self):
        # hashing Fractions is slow and classes are hashed a lot in searches
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.k, self.d, self.m))
            object.__setattr__(self, "_hash", h)
        return h

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, k: int) -> DivisorClass:
        return cls(k, 0, (0,) * k)

    @classmethod
    def line(cls, k: int) -> DivisorClass:
        return cls(k, 1, (0,) * k)

    @classmethod
    def exc(cls, i: int, k: int) -> DivisorClass:
        """The exceptional class E_i (1-based)."""
        if not 1 <= i <= k:
            raise IndexError(f"E_{i} does not exist on X_{k}")
        m = [0] * k
        m[i - 1] = 1
        return cls(k, 0, tuple(m))

    @classmethod
    def from_multiplicities(cls, d: Number, mult: Sequence[Number]) -> DivisorClass:
        """Build ``d L - sum mult_i E_i`` (the ``(d; m_1, ..., m_k)`` shorthand)."""
        return cls(len(mult), d, tuple(-_frac(x) for x in mult))

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: DivisorClass) -> None:
        if not isinstance(other, DivisorClass):
            raise TypeError(f"cannot combine DivisorClass with {type(other).__name__}")
        if other.k != self.k:
            raise DimensionError(f"classes on X_{self.k} and X_{other.k}")

    def __add__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(self.k, self.d + other.d,
                            tuple(a + b for a, b in zip(self.m, other.m)))

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(self.k, self.d - other.d,
                            tuple(a - b for a, b in zip(self.m, other.m)))

    def __neg__(self) -> DivisorClass:
        return DivisorClass(self.k, -self.d, tuple(-a for a in self.m))

    def __mul__(self, c) -> DivisorClass:
        if isinstance(c, DivisorClass):
            return NotImplemented
        c = _frac(c)
        return DivisorClass(self.k, c * self.d, tuple(c * a for a in self.m))

    __rmul__ = __mul__

    def __truediv__(self, c) -> DivisorClass:
        return self * (1 / _frac(c))

    def __matmul__(self, other: DivisorClass) -> Fraction:
        return intersect(self, other)

    # -- queries ----------------------------------------------------------
    @property
    def multiplicities(self) -> tuple[Fraction, ...]:
        """Coefficients m_i in the ``d L - sum m_i E_i`` convention."""
        return tuple(-a for a in self.m)

    def is_integral(self) -> bool:
        return self.d.denominator == 1 and all(a.denominator == 1 for a in self.m)

    def as_ints(self) -> tuple[int, ...]:
        """(d, m_1, ..., m_k) as signed ints; the class must be integral."""
        if not self.is_integral():
            raise ValueError(f"{self} is not integral")
        return (int(self.d),) + tuple(int(a) for a in self.m)

    def canonical(self) -> DivisorClass:
        """Representative of the orbit under permutations of the E_i."""
        return DivisorClass(self.k, self.d, tuple(sorted(self.m)))

    def sort_key(self):
        return (self.k, self.d, self.m)

    def __str__(self) -> str:
        return format_class(self)

    def __repr__(self) -> str:
        return f"DivisorClass({format_class(self)!r}, k={self.k})"

    def to_json(self) -> dict:
        return {"k": self.k, "d": _num_json(self.d), "m": [_num_json(a) for a in self.m]}

    @classmethod
    def from_json(cls, obj: Union[dict, str]) -> DivisorClass:
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(int(obj["k"]), _frac(obj["d"]), tuple(_frac(a) for a in obj["m"]))


def _num_json(x: Fraction):
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def intersect(a: DivisorClass, b: DivisorClass) -> Fraction:
    """Intersection number d d' - sum m_i m_i'."""
    a._check(b)
    return a.d * b.d - sum((x * y for x, y in zip(a.m, b.m)), Fraction(0))


def canonical_class(k: int) -> DivisorClass:
    """K = -3L + sum E_i."""
    return DivisorClass(k, -3, (1,) * k)


def c1(a: DivisorClass) -> Fraction:
    """First Chern class evaluated on ``a``: -K.a = 3d + sum m_i."""
    return a.d * 3 + sum(a.m, Fraction(0))


def genus0_count(a: DivisorClass) -> Fraction:
    """d(A) = (A.A + c1(A)) / 2, the number of point constraints for rational curves."""
    return (intersect(a, a) + c1(a)) / 2


def is_exceptional(a: DivisorClass) -> bool:
    return a.is_integral() and intersect(a, a) == -1 and c1(a) == 1


def gram_matrix(classes: Sequence[DivisorClass]) -> list[list[Fraction]]:
    return [[intersect(a, b) for b in classes] for a in classes]


def basis(k: int) -> list[DivisorClass]:
    return [DivisorClass.line(k)] + [DivisorClass.exc(i, k) for i in range(1, k + 1)]


def esum(indices: Iterable[int], k: int) -> DivisorClass:
    """E_{i1 i2 ...}: the sum of the listed exceptional classes."""
    out = DivisorClass.zero(k)
    for i in indices:
        out = out + DivisorClass.exc(i, k)
    return out


# -- notation ----------------------------------------------------------------

_TERM = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*\*?\s*(L|E_?\{?(\d+)\}?)\s*")
_SHORTHAND = re.compile(r"^\s*\(\s*([^;]+);([^)]*)\)\s*$")


def parse_class(text: str, k: int | None = None) -> DivisorClass:
    """Parse ``"3L-2E1-E2-E3"``, ``"3L-2E1-E23"`` or the shorthand ``"(3;2,1,1,0,0,0,0)"``.

    The shorthand lists multiplicities, so ``(d; m_1..m_k)`` means
    ``d L - sum m_i E_i``.  For the additive notation ``k`` defaults to the
    largest index that occurs.
    """
    sh = _SHORTHAND.match(text)
    if sh:
        d = _frac(sh.group(1))
        raw = [s for s in sh.group(2).split(",") if s.strip()]
        mult = [_frac(s) for s in raw]
        if k is not None:
            if len(mult) > k:
                raise ParseError(f"{text!r} has more than {k} multiplicities")
            mult += [Fraction(0)] * (k - len(mult))
        return DivisorClass.from_multiplicities(d, mult)

    s = text.replace(" ", "")
    if s in ("0", ""):
        if k is None:
            raise ParseError("the zero class needs an explicit k")
        return DivisorClass.zero(k)
    pos = 0
    d = Fraction(0)
    coeffs: dict[int, Fraction] = {}
    while pos < len(s):
        mt = _TERM.match(s, pos)
        if not mt or mt.end() == pos:
            raise ParseError(f"cannot parse {text!r} at position {pos}")
        if pos > 0 and mt.group(1) is None:
            raise ParseError(f"missing sign before term at position {pos} in {text!r}")
        sign = -1 if mt.group(1) == "-" else 1
        c = sign * (_frac(mt.group(2)) if mt.group(2) else Fraction(1))
        if mt.group(3) == "L":
            d += c
        else:
            digits = mt.group(4)
            # indices never exceed 8, so E234 means E2 + E3 + E4
            idx = [int(ch) for ch in digits] if len(digits) > 1 else [int(digits)]
            if min(idx) < 1 or len(set(idx)) != len(idx):
                raise ParseError(f"bad index E{digits} in {text!r}")
            for i in idx:
                coeffs[i] = coeffs.get(i, Fraction(0)) + c
        pos = mt.end()
    top = max(coeffs, default=0)
    if k is None:
        k = top
    if top > k:
        raise ParseError(f"{text!r} uses E{top} but k={k}")
    return DivisorClass(k, d, tuple(coeffs.get(i, Fraction(0)) for i in range(1, k + 1)))


def _coef(c: Fraction, sym: str, first: bool) -> str:
    sign = "-" if c < 0 else ("" if first else "+")
    a = abs(c)
    body = sym if a == 1 else f"{a}{sym}"
    return sign + body


def format_class(a: DivisorClass) -> str:
    parts = []
    if a.d != 0:
        parts.append(_coef(a.d, "L", True))
    for i, c in enumerate(a.m, start=1):
        if c != 0:
            parts.append(_coef(c, f"E{i}", not parts))
    return "".join(parts) if parts else "0"


def format_shorthand(a: DivisorClass) -> str:
    nums = ",".join(str(x) for x in a.multiplicities)
    return f"({a.d};{nums})"
