"""Cremona transformations, permutations and Aut_K(X_k).

Everything here acts on :class:`~hamlattice.lattice.DivisorClass` values.
The group generated by the permutations of the E_i and the Cremona
reflections R_ijl is the group of lattice automorphisms preserving K and
the intersection form (k <= 8); it permutes the finite set of exceptional
classes.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence, Union

from . import kernels
from .lattice import (DivisorClass, DimensionError, MAX_K, basis, c1, canonical_class,
                      esum, format_class, intersect)


# -- generators ----------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Permutation:
    """E_i -> E_sigma(i); ``sigma`` lists the images of 1..k (1-based)."""
    sigma: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.sigma) != list(range(1, len(self.sigma) + 1)):
            raise ValueError(f"{self.sigma} is not a permutation of 1..{len(self.sigma)}")

    @property
    def key(self):
        return (1, self.sigma)

    def __call__(self, a: DivisorClass) -> DivisorClass:
        if len(self.sigma) != a.k:
            raise DimensionError(f"permutation of {len(self.sigma)} letters on X_{a.k}")
        m = [Fraction(0)] * a.k
        for i, j in enumerate(self.sigma):
            m[j - 1] = a.m[i]
        return DivisorClass(a.k, a.d, tuple(m))

    def __str__(self):
        moved = [f"{i}->{j}" for i, j in enumerate(self.sigma, start=1) if i != j]
        return "P(" + ",".join(moved) + ")" if moved else "P(id)"


@dataclass(frozen=True, order=True)
class Cremona:
    """The reflection A -> A + (A.B) B in B = L - E_i - E_j - E_l."""
    i: int
    j: int
    l: int

    def __post_init__(self):
        if len({self.i, self.j, self.l}) != 3 or min(self.i, self.j, self.l) < 1:
            raise ValueError(f"Cremona indices must be distinct and positive: {self.indices}")

    @property
    def indices(self) -> tuple[int, int, int]:
        return (self.i, self.j, self.l)

    @property
    def key(self):
        return (0, tuple(sorted(self.indices)))

    def root(self, k: int) -> DivisorClass:
        if max(self.indices) > k:
            raise IndexError(f"R_{self.i}{self.j}{self.l} needs k >= {max(self.indices)}, got {k}")
        return DivisorClass.line(k) - esum(self.indices, k)

    def __call__(self, a: DivisorClass) -> DivisorClass:
        return cremona_reflect(a, self.i, self.j, self.l)

    def __str__(self):
        return f"R{self.i}{self.j}{self.l}"


WeylGenerator = Union[Permutation, Cremona]


def cremona_reflect(a: DivisorClass, i: int, j: int, l: int) -> DivisorClass:
    b = Cremona(i, j, l).root(a.k)
    return a + intersect(a, b) * b


def apply_word(word: Sequence[WeylGenerator], a: DivisorClass) -> DivisorClass:
    """Apply the generators left to right: ``word[0]`` acts first."""
    for g in word:
        a = g(a)
    return a


def cremonas(k: int) -> list[Cremona]:
    return [Cremona(*c) for c in combinations(range(1, k + 1), 3)]


def transpositions(k: int) -> list[Permutation]:
    out = []
    for i, j in combinations(range(1, k + 1), 2):
        s = list(range(1, k + 1))
        s[i - 1], s[j - 1] = j, i
        out.append(Permutation(tuple(s)))
    return out


def generators(k: int) -> list[WeylGenerator]:
    """Cremonas and adjacent-free transpositions; these generate Aut_K for k <= 8."""
    return [*cremonas(k), *transpositions(k)]


def permutation_between(a: DivisorClass, b: DivisorClass) -> Optional[Permutation]:
    """Lexicographically least sigma with sigma(a) == b, if one exists."""
    if a.k != b.k or a.d != b.d or sorted(a.m) != sorted(b.m):
        return None
    used = [False] * a.k
    sigma = []
    for x in a.m:
        for j in range(a.k):
            if not used[j] and b.m[j] == x:
                used[j] = True
                sigma.append(j + 1)
                break
    return Permutation(tuple(sigma))


# -- lattice maps --------------------------------------------------------------

@dataclass(frozen=True)
class LatticeMap:
    """A linear map of H_2(X_k) given by the images of L, E_1, ..., E_k."""
    k: int
    images: tuple[DivisorClass, ...]
    name: str = ""

    def __post_init__(self):
        if len(self.images) != self.k + 1:
            raise DimensionError(f"need {self.k + 1} images, got {len(self.images)}")
        for im in self.images:
            if im.k != self.k:
                raise DimensionError(f"image {im} is not on X_{self.k}")

    @property
    def line(self) -> DivisorClass:
        return self.images[0]

    def exc(self, i: int) -> DivisorClass:
        return self.images[i]

    def __call__(self, a: DivisorClass) -> DivisorClass:
        if a.k != self.k:
            raise DimensionError(f"map on X_{self.k} applied to a class on X_{a.k}")
        out = self.images[0] * a.d
        for c, im in zip(a.m, self.images[1:]):
            out = out + im * c
        return out

    def _rows(self):
        """Images as rows (d, e_1, ..., e_k); ints when every image is integral."""
        if all(im.is_integral() for im in self.images):
            return [im.as_ints() for im in self.images]
        return [(im.d, *im.m) for im in self.images]

    def gram_defects(self) -> list[tuple[str, str, Fraction, Fraction]]:
        """Entries where the image Gram matrix differs from diag(1, -1, ..., -1)."""
        names = ["L"] + [f"E{i}" for i in range(1, self.k + 1)]
        rows = self._rows()
        bad = []
        for p in range(self.k + 1):
            a = rows[p]
            for q in range(p, self.k + 1):
                b = rows[q]
                got = a[0] * b[0] - sum(x * y for x, y in zip(a[1:], b[1:]))
                want = 0 if p != q else (1 if p == 0 else -1)
                if got != want:
                    bad.append((names[p], names[q], Fraction(got), Fraction(want)))
        return bad

    def preserves_canonical(self) -> bool:
        # K = -3L + sum E_i, so its image is -3 image(L) + sum image(E_i)
        rows = self._rows()
        img = [-3 * x for x in rows[0]]
        for r in rows[1:]:
            img = [x + y for x, y in zip(img, r)]
        return img == [-3] + [1] * self.k

    def valid(self) -> bool:
        return not self.gram_defects() and self.preserves_canonical()

    def compose(self, g: WeylGenerator) -> LatticeMap:
        """The map ``g o self``."""
        return LatticeMap(self.k, tuple(g(im) for im in self.images), self.name)

    @classmethod
    def identity(cls, k: int) -> LatticeMap:
        return cls(k, tuple(basis(k)), "identity")

    @classmethod
    def from_generator(cls, g: WeylGenerator, k: int) -> LatticeMap:
        return cls(k, tuple(g(b) for b in basis(k)), str(g))


def _L(k):
    return DivisorClass.line(k)


def _E(i, k):
    return DivisorClass.exc(i, k)


def _all_but(i: int, k: int, rng: Iterable[int] | None = None) -> DivisorClass:
    rng = range(1, k + 1) if rng is None else rng
    return esum([j for j in rng if j != i], k)


def _hat7() -> LatticeMap:
    k = 7
    L = 8 * _L(k) - 3 * esum(range(1, 8), k)
    es = [3 * _L(k) - 2 * _E(i, k) - _all_but(i, k) for i in range(1, 8)]
    return LatticeMap(k, (L, *es), "hat7")


def _tilde8() -> LatticeMap:
    k = 8
    L = 17 * _L(k) - 6 * esum(range(1, 9), k)
    es = [6 * _L(k) - 3 * _E(i, k) - 2 * _all_but(i, k) for i in range(1, 9)]
    return LatticeMap(k, (L, *es), "tilde8")


def _primed7() -> LatticeMap:
    k = 7
    e4567 = esum(range(4, 8), k)
    L = 7 * _L(k) - 2 * esum((1, 2, 3), k) - 3 * e4567
    es = {}
    for i, j in ((1, 3), (2, 2), (3, 1)):
        es[i] = 2 * _L(k) - _E(j, k) - e4567
    for i, j in ((4, 7), (5, 6), (6, 5), (7, 4)):
        es[i] = 3 * _L(k) - 2 * _E(j, k) - _all_but(j, k)
    return LatticeMap(k, (L, *(es[i] for i in range(1, 8))), "primed7")


def _primed8() -> LatticeMap:
    k = 8
    e48 = esum(range(4, 9), k)
    L = 16 * _L(k) - 5 * esum((1, 2, 3), k) - 6 * e48
    es = {}
    for i in (1, 2, 3):
        j, kk = [x for x in (1, 2, 3) if x != i]
        es[i] = 5 * _L(k) - _E(j, k) - _E(kk, k) - 2 * _E(i, k) - 2 * e48
    for i in range(4, 9):
        j = 12 - i
        es[i] = 6 * _L(k) - 3 * _E(j, k) - 2 * _all_but(j, k)
    return LatticeMap(k, (L, *(es[i] for i in range(1, 9))), "primed8")


def _hat5() -> LatticeMap:
    # stored per the displayed formula j_i = 4 - i (i <= 3), j_5 = 4
    k = 5
    L = 3 * _L(k) - esum((1, 2, 3, 4), k) - 2 * _E(5, k)
    es = {}
    for i in (1, 2, 3):
        es[i] = _L(k) - _E(4 - i, k) - _E(5, k)
    es[5] = _L(k) - _E(4, k) - _E(5, k)
    es[4] = 2 * _L(k) - esum(range(1, 6), k)
    return LatticeMap(k, (L, *(es[i] for i in range(1, 6))), "hat5")


def _hat6() -> LatticeMap:
    k = 6
    L = 4 * _L(k) - 2 * esum((1, 2, 3), k) - esum((4, 5, 6), k)
    es = {}
    for i in (1, 2, 3):
        es[i] = _L(k) - esum([x for x in (1, 2, 3) if x != i], k)
    for i in (4, 5, 6):
        es[i] = 2 * _L(k) - _all_but(i, k)
    return LatticeMap(k, (L, *(es[i] for i in range(1, 7))), "hat6")


DICTIONARIES = {
    "hat7": _hat7,
    "tilde8": _tilde8,
    "primed7": _primed7,
    "primed8": _primed8,
    "hat5": _hat5,
    "hat6": _hat6,
}


def dictionary(name: str) -> LatticeMap:
    try:
        return DICTIONARIES[name]()
    except KeyError:
        raise KeyError(f"unknown dictionary {name!r}; choose from {sorted(DICTIONARIES)}") from None


def h0_set(images: Sequence[DivisorClass]) -> frozenset[DivisorClass]:
    """{L - E_123, E_i - E_{i+1} : i != 3, k} written in the given basis."""
    k = len(images) - 1
    L, es = images[0], images[1:]
    out = {L - es[0] - es[1] - es[2]}
    for i in range(1, k):
        if i != 3:
            out.add(es[i - 1] - es[i])
    return frozenset(out)


def canonical_multiple(a: DivisorClass) -> Optional[Fraction]:
    """The rational c with a == c*K, or None."""
    kk = canonical_class(a.k)
    c = a.d / kk.d
    return c if kk * c == a else None


# -- verification report ---------------------------------------------------------

@dataclass
class DictionaryReport:
    name: str
    k: int
    valid: bool
    gram_defects: list
    preserves_canonical: bool
    epsilon: DivisorClass
    epsilon_image: DivisorClass
    anti_fixes_epsilon: bool
    h0_preserved: bool
    anticanonical_pairs: dict[str, Optional[Fraction]]
    flags: list[str] = field(default_factory=list)

    @property
    def is_involution_type(self) -> bool:
        """A + image(A) is a multiple of K for every basis class."""
        return all(v is not None for v in self.anticanonical_pairs.values())

    def to_json(self) -> dict:
        def num(x):
            return None if x is None else str(x)
        return {
            "name": self.name,
            "k": self.k,
            "valid": self.valid,
            "gram_defects": [[p, q, str(g), str(w)] for p, q, g, w in self.gram_defects],
            "preserves_canonical": self.preserves_canonical,
            "epsilon": format_class(self.epsilon),
            "epsilon_image": format_class(self.epsilon_image),
            "anti_fixes_epsilon": self.anti_fixes_epsilon,
            "h0_preserved": self.h0_preserved,
            "anticanonical_pairs": {a: num(c) for a, c in self.anticanonical_pairs.items()},
            "flags": list(self.flags),
        }


def verify_lattice_map(phi: LatticeMap) -> DictionaryReport:
    from .reduced import epsilon_class

    k = phi.k
    eps = epsilon_class(k - 3)
    img = phi(eps)
    pairs = {}
    for name, b in zip(["L"] + [f"E{i}" for i in range(1, k + 1)], basis(k)):
        pairs[name] = canonical_multiple(b + phi(b))
    rep = DictionaryReport(
        name=phi.name or "custom",
        k=k,
        valid=phi.valid(),
        gram_defects=phi.gram_defects(),
        preserves_canonical=phi.preserves_canonical(),
        epsilon=eps,
        epsilon_image=img,
        anti_fixes_epsilon=(img == -eps),
        h0_preserved=h0_set(phi.images) == h0_set(basis(k)),
        anticanonical_pairs=pairs,
    )
    if phi.name == "hat6":
        rep.flags.append(
            f"l=3: image of epsilon_6 is {format_class(img)}; "
            f"-epsilon_6 is {format_class(-eps)}; no anti-fixing expected")
    if phi.name == "hat5":
        e3 = phi.exc(3)
        rep.flags.append(
            f"l=2: hat E3 stored as {format_class(e3)} (j_i = 4 - i); "
            f"the accompanying prose names L-E1-E4")
    return rep


def verify_dictionary(name: str) -> DictionaryReport:
    return verify_lattice_map(dictionary(name))


# -- exceptional classes --------------------------------------------------------

def exceptional_box_bounds(k: int) -> tuple[int, int, int, int]:
    """A box (d_lo, d_hi, n_lo, n_hi) provably containing every exceptional class.

    With n_i the multiplicities, sum n_i = 3d - 1 and sum n_i^2 = d^2 + 1, so
    Cauchy-Schwarz gives (3d - 1)^2 <= k (d^2 + 1); for k <= 8 that bounds d,
    and then |n_i| <= sqrt(d^2 + 1).
    """
    if not 0 <= k <= MAX_K:
        raise ValueError("bounds only exist for k <= 8")
    ds = [d for d in range(-50, 51) if (3 * d - 1) ** 2 <= k * (d * d + 1)]
    if not ds:
        return (0, -1, 0, -1)
    dmax = max(abs(d) for d in ds)
    nmax = math.isqrt(dmax * dmax + 1)
    return (min(ds), max(ds), -nmax, nmax)


def _scan(k, d_lo, d_hi, n_lo, n_hi) -> list[DivisorClass]:
    rows = kernels.scan_box(k, d_lo, d_hi, n_lo, n_hi, -1, 1)
    return [DivisorClass.from_multiplicities(r[0], r[1:]) for r in rows]


def enumerate_exceptional(k: int, box: tuple[int, int, int, int] | None = None
                          ) -> tuple[DivisorClass, ...]:
    """All E with E.E = -1 and K.E = -1 on X_k, sorted.

    The default search is 0 <= d <= 6, 0 <= m_i <= 3 together with the E_i;
    pass ``box=(d_lo, d_hi, n_lo, n_hi)`` to scan a different range.
    """
    if not 1 <= k <= MAX_K:
        raise ValueError(f"enumeration is only finite for k <= 8 (got k={k})")
    if box is None:
        found = set(_scan(k, 0, 6, 0, 3))
        found.update(DivisorClass.exc(i, k) for i in range(1, k + 1))
    else:
        found = set(_scan(k, *box))
    return tuple(sorted(found, key=DivisorClass.sort_key))


def orbit(seeds: Iterable[DivisorClass], gens: Sequence[WeylGenerator]) -> frozenset[DivisorClass]:
    seen = set(seeds)
    todo = list(seen)
    while todo:
        a = todo.pop()
        for g in gens:
            b = g(a)
            if b not in seen:
                seen.add(b)
                todo.append(b)
    return frozenset(seen)


def exceptional_orbit(k: int) -> frozenset[DivisorClass]:
    """Closure of {E_1..E_k} under all Cremonas and transpositions."""
    return orbit([DivisorClass.exc(i, k) for i in range(1, k + 1)], generators(k))


# one representative per degree, as (d, multiplicities)
ORBIT_TYPES = [
    (0, (-1,)),
    (1, (1, 1)),
    (2, (1, 1, 1, 1, 1)),
    (3, (2, 1, 1, 1, 1, 1, 1)),
    (4, (2, 2, 2, 1, 1, 1, 1, 1)),
    (5, (2, 2, 2, 2, 2, 2, 1, 1)),
    (6, (3, 2, 2, 2, 2, 2, 2, 2)),
]


def orbit_type(a: DivisorClass) -> tuple[int, tuple[int, ...]]:
    """(d, nonzero multiplicities in decreasing order)."""
    mult = sorted((int(x) for x in a.multiplicities if x != 0), reverse=True)
    if a.d == 0:
        mult = sorted(mult)
    return (int(a.d), tuple(mult))


# -- word search ---------------------------------------------------------------

def find_word(k: int, source: DivisorClass, target: DivisorClass, max_len: int
              ) -> Optional[list[WeylGenerator]]:
    """A shortest word w with apply_word(w, source) == target, or None.

    Because sigma R_ijl = R_sigma(ijl) sigma, every word can be rewritten as
    Cremonas followed by at most one permutation without growing, so the
    search runs over Cremona words (breadth first, generators in
    lexicographic order) and closes with a single permutation when needed.
    Among shortest words the result is the lexicographically least Cremona
    prefix.
    """
    if source.k != k or target.k != k:
        raise DimensionError("source and target must live on X_k")
    if not (source.is_integral() and target.is_integral()):
        raise ValueError("word search needs integral classes")
    if source == target:
        return []
    gens = cremonas(k)
    if intersect(source, source) != intersect(target, target) or c1(source) != c1(target):
        return None
    parent: dict[DivisorClass, tuple[Optional[DivisorClass], Optional[Cremona]]] = {source: (None, None)}
    layer = [source]
    depth = 0

    def path(node):
        out = []
        while parent[node][0] is not None:
            prev, g = parent[node]
            out.append(g)
            node = prev
        return out[::-1]

    while depth <= max_len:
        # a permutation finishes the word at cost one
        hit_exact = next((a for a in layer if a == target), None)
        if hit_exact is not None:
            return path(hit_exact)
        if depth + 1 <= max_len:
            for a in layer:
                p = permutation_between(a, target)
                if p is not None:
                    return path(a) + [p]
        if depth == max_len:
            break
        nxt = []
        for a in layer:
            for g in gens:
                b = g(a)
                if b not in parent:
                    parent[b] = (a, g)
                    nxt.append(b)
        if not nxt:
            break
        layer = nxt
        depth += 1
    return None


def format_word(word: Sequence[WeylGenerator]) -> str:
    return " ".join(str(g) for g in word) if word else "(empty)"
