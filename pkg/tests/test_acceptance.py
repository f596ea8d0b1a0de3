"""One line per acceptance criterion, printed in the terminal summary.

Each test records PASS or FAIL with a short witness before asserting.  The
two criteria that cannot hold as stated are marked strict xfail so the run
stays green while the FAIL line is still printed.
"""
import random
import time
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_LINES
from hamlattice.cubic import mukai_checklist
from hamlattice.decompose import (CONIC_Q, E3_PRIME, E8_PRIME, enumerate_decompositions, free_candidates,
                                  lifted_contains_printed, naive_decompositions, profile)
from hamlattice.hamiltonian import facet_threshold, slice_at, slice_range
from hamlattice.lattice import DivisorClass, canonical_class, esum, intersect
from hamlattice.reduced import (chi_class, dh_derivative_holds, euler_class, homology_Z, lambda_ratio,
                                min_area_exceptional, omega_class)
from hamlattice.report import verify_all
from hamlattice.snf import isomorphic
from hamlattice.toric import affine_length, delta_lambda, hj_resolve, self_intersections
from hamlattice.weyl import (ORBIT_TYPES, Cremona, apply_word, enumerate_exceptional, exceptional_box_bounds,
                             find_word, format_word, generators, orbit_type, verify_dictionary,
                             verify_lattice_map, dictionary)


def record(n: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")


def best_of(fn, repeat=7):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def test_criterion_01_gram():
    maps = {name: dictionary(name) for name in ("hat7", "tilde8")}
    reports = {name: verify_lattice_map(phi) for name, phi in maps.items()}
    exact = all(r.valid and r.preserves_canonical and not r.gram_defects for r in reports.values())
    t = max(best_of(lambda phi=phi: phi.valid()) for phi in maps.values())
    ok = exact and t < 1e-3
    record(1, ok, f"hat7/tilde8 Gram diag(1,-1,..) with K fixed, {t * 1e3:.3f} ms")
    assert ok


def test_criterion_02_epsilon():
    names = ("hat7", "tilde8", "primed7", "primed8", "hat5")
    reps = {n: verify_dictionary(n) for n in names}
    ok = all(r.valid and r.anti_fixes_epsilon for r in reps.values())
    hat6 = verify_dictionary("hat6")
    flagged = bool(hat6.flags)
    record(2, ok and flagged, f"epsilon -> -epsilon for {', '.join(names)}; l=3 flagged ({len(hat6.flags)} note)")
    assert ok and flagged


def test_criterion_03_word():
    k = 7
    src = DivisorClass.exc(1, k)
    target = 3 * DivisorClass.line(k) - 2 * src - esum(range(2, 8), k)
    t0 = time.perf_counter()
    w = find_word(k, src, target, 3)
    dt = time.perf_counter() - t0
    ok = w is not None and len(w) == 3 and all(isinstance(g, Cremona) for g in w) \
        and apply_word(w, src) == target and dt < 5
    record(3, ok, f"word {format_word(w) if w else None} in {dt:.2f} s")
    assert ok


def test_criterion_04_exceptional():
    t0 = time.perf_counter()
    counts = [len(enumerate_exceptional(k)) for k in range(1, 9)]
    boxed = [len(enumerate_exceptional(k, exceptional_box_bounds(k))) for k in range(1, 9)]
    types = {orbit_type(c) for c in enumerate_exceptional(8)}
    dt = time.perf_counter() - t0
    missing = [t for t in ORBIT_TYPES if (t[0], tuple(sorted(t[1])) if t[0] == 0 else t[1]) not in types]
    ok = counts == [1, 3, 6, 10, 16, 27, 56, 240] and boxed == counts and not missing and dt < 10
    record(4, ok, f"counts {counts}, rigorous box agrees, {len(ORBIT_TYPES) - len(missing)} types, {dt:.2f} s")
    assert ok


def test_criterion_05_toric():
    printed = [(0, 1), (1, 2), (2, 3), (1, 1), (0, -1), (-1, -4), (-1, -3), (-1, -2), (-1, -1), (-1, 0)]
    poly = delta_lambda(4, Fraction(1, 2))
    fan = hj_resolve(poly)
    cw = fan.clockwise_from((0, 1))
    sel = dict(zip(fan.rays, self_intersections(fan)))
    s = [sel[r] for r in cw]
    t = best_of(lambda: hj_resolve(poly))
    ok = (cw == printed and fan.is_smooth() and s == [-2, -2, -1, -2, -3, -1, -2, -2, -2, -1]
          and sum(s) == 12 - 3 * len(s) == -18 and t < 1e-3)
    record(5, ok, f"10 conormals, smooth, sum {sum(s)}, {t * 1e3:.3f} ms")
    assert ok


def test_criterion_06_snf():
    h4, h5 = homology_Z(4), homology_Z(5)
    ok = (h4.invariant_factors == (2, 12) and isomorphic([2, 12], [6, 4])
          and h5.invariant_factors == (1, 30))
    record(6, ok, f"l=4 {h4.invariant_factors} ~ Z6+Z4, l=5 {h5.invariant_factors}")
    assert ok


def test_criterion_07_chi_euler():
    vals = {}
    for k, ell in ((7, 4), (8, 5)):
        chi = chi_class(k)
        vals[k] = [intersect(chi, DivisorClass.exc(3, k)), intersect(chi, DivisorClass.exc(k, k)),
                   intersect(chi, DivisorClass.line(k) - esum((1, 2, 3), k))]
    ok_chi = vals[7] == [Fraction(1, 6), Fraction(1, 4), 0] and vals[8] == [Fraction(1, 6), Fraction(1, 5), 0]
    ok_dh = all(dh_derivative_holds(ell) and euler_class(ell) == -omega_class(ell).derivative()
                for ell in (2, 3, 4, 5))
    record(7, ok_chi and ok_dh, "chi pairings 1/6, 1/l, 0; euler = -d/dkappa omega for l = 2..5")
    assert ok_chi and ok_dh


@pytest.mark.xfail(strict=True, reason="at lambda = 1 the minimum ties across several classes")
def test_criterion_08_min_area():
    t0 = time.perf_counter()
    res = {k: min_area_exceptional(k, 1, Fraction(1, 100)) for k in (7, 8)}
    dt = time.perf_counter() - t0
    ok = all(res[k].unique == DivisorClass.exc(k, k) for k in (7, 8)) and dt < 1
    detail = "; ".join(f"k={k}: min {m.minimum} on {len(m.argmin)} class(es), E{k} "
                       f"{'in' if m.attained_on_last() else 'not in'} argmin" for k, m in res.items())
    record(8, ok, f"{detail}; {dt:.2f} s")
    assert ok


@pytest.mark.xfail(strict=True, reason="E8' and E3' keep admissible decompositions under the stated rules")
def test_criterion_09_decompositions():
    t0 = time.perf_counter()
    counts = {"E8'": len(enumerate_decompositions(E8_PRIME, "step2")),
              "E3'": len(enumerate_decompositions(E3_PRIME, "step2")),
              "Q": len(enumerate_decompositions(CONIC_Q, "step3"))}
    lifted, _ = lifted_contains_printed()
    prof = profile("step2")
    naive = naive_decompositions(prof, 3, 3)
    mismatches = sum(set(enumerate_decompositions(t, prof, max_parts=3)) != v
                     for t, v in naive.items() if t.d <= 3)
    dt = time.perf_counter() - t0
    ok = all(c == 0 for c in counts.values()) and lifted and mismatches == 0 and dt < 30
    record(9, ok, f"counts {counts}, lifted {lifted}, oracle mismatches {mismatches} "
                  f"over {len(naive)} targets, {dt:.1f} s")
    assert ok


def test_criterion_10_cubic():
    checks = mukai_checklist()
    t = best_of(mukai_checklist)
    ok = all(c.passed for c in checks) and t < 1e-3
    record(10, ok, f"{sum(c.passed for c in checks)}/{len(checks)} checks, {t * 1e3:.3f} ms")
    assert ok


def test_criterion_11_slices():
    ok = True
    for ell in (2, 3, 4, 5):
        ok &= facet_threshold(ell) == 6 - ell
        lo, hi = slice_range(ell)
        ok &= all(slice_at(ell, lo + (hi - lo) * Fraction(i, 21)).matches_omega() for i in range(1, 21))
    fig = lambda_ratio(4, -3) == Fraction(1, 2) and slice_at(4, 3).polygon.scaled(2) == delta_lambda(4, Fraction(1, 2))
    ok = ok and fig
    record(11, ok, "3 -> 4 facets at x3 = 6 - l, 20 slices per l match [omega], lambda(-3) = 1/2 with c = 2")
    assert ok


def _random_class(rng, k=8, lo=-6, hi=6):
    return DivisorClass.from_multiplicities(rng.randint(lo, hi), [rng.randint(lo, hi) for _ in range(k)])


def _unimodular(rng):
    m = [[1, 0], [0, 1]]
    for _ in range(rng.randint(1, 6)):
        e = rng.choice(([[1, 1], [0, 1]], [[1, -1], [0, 1]], [[1, 0], [1, 1]], [[1, 0], [-1, 1]], [[0, -1], [1, 0]]))
        m = [[sum(m[i][t] * e[t][j] for t in range(2)) for j in range(2)] for i in range(2)]
    return m


def test_criterion_12_properties_and_verify_all():
    rng = random.Random(20261019)
    n = 1000
    k = 8
    gens = generators(k)
    K = canonical_class(k)
    involutive = closed = invariant = exact = 0
    for _ in range(n):
        a, b = _random_class(rng), _random_class(rng)
        c = Cremona(*rng.sample(range(1, k + 1), 3))
        involutive += c(c(a)) == a
        w = [rng.choice(gens) for _ in range(rng.randint(1, 8))]
        closed += apply_word(w, K) == K and intersect(apply_word(w, a), apply_word(w, b)) == intersect(a, b)
        p = (Fraction(rng.randint(-20, 20), rng.randint(1, 6)), Fraction(rng.randint(-20, 20), rng.randint(1, 6)))
        v = (rng.randint(-5, 5), rng.randint(-5, 5)) if rng.random() < 0.9 else (0, 1)
        if v == (0, 0):
            v = (1, 0)
        s = Fraction(rng.randint(1, 12), rng.randint(1, 5))
        q = (p[0] + s * v[0], p[1] + s * v[1])
        m = _unimodular(rng)
        shift = (Fraction(rng.randint(-9, 9), 2), rng.randint(-9, 9))

        def move(x):
            return (m[0][0] * x[0] + m[0][1] * x[1] + shift[0], m[1][0] * x[0] + m[1][1] * x[1] + shift[1])

        invariant += affine_length(p, q) == affine_length(move(p), move(q))
    prof = profile("step2")
    cands = free_candidates(prof, 3) + list(prof.rigid)
    while exact < n:
        picks = [rng.choice(cands) for _ in range(rng.randint(2, 3))]
        t = picks[0]
        for x in picks[1:]:
            t = t + x
        if t.d > 3:
            continue
        res = enumerate_decompositions(t, prof, max_parts=3)
        assert res and all(d.total() == t for d in res)
        exact += 1
    t0 = time.perf_counter()
    rep = verify_all()
    dt = time.perf_counter() - t0
    documented = {"decompose_E8prime_step2", "decompose_E3prime_step2", "decompose_E3prime_step2_generic",
                  "min_area_k7_lambda1", "min_area_k8_lambda1"}
    failures = {c.id for c in rep.failures}
    ok = involutive == closed == invariant == exact == n and dt < 120 and failures == documented
    record(12, ok, f"{n} instances x 4 properties exact; verify-all {dt:.1f} s with only the "
                   f"{len(documented)} documented failures")
    assert ok
