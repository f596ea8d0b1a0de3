from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hamlattice.lattice import DivisorClass, esum, intersect, is_exceptional, parse_class
from hamlattice.reduced import epsilon_class
from hamlattice.weyl import (DICTIONARIES, ORBIT_TYPES, Cremona, LatticeMap, Permutation, apply_word,
                             cremona_reflect, dictionary, enumerate_exceptional, exceptional_box_bounds,
                             exceptional_orbit, find_word, format_word, generators, orbit_type,
                             permutation_between, verify_dictionary)
from strategies import classes

COUNTS = [1, 3, 6, 10, 16, 27, 56, 240]


def test_hat7_gram_identities():
    phi = dictionary("hat7")
    L, E = phi.line, [phi.exc(i) for i in range(1, 8)]
    K = -3 * DivisorClass.line(7) + esum(range(1, 8), 7)
    assert intersect(L, L) == 1
    assert all(intersect(E[i], E[j]) == -(i == j) for i in range(7) for j in range(7))
    assert all(intersect(L, e) == 0 and intersect(K, e) == -1 for e in E)
    assert intersect(K, L) == -3


def test_tilde8_basis():
    phi = dictionary("tilde8")
    assert phi.line == parse_class("17L-6E1-6E2-6E3-6E4-6E5-6E6-6E7-6E8")
    assert phi.exc(3) == parse_class("(6;2,2,3,2,2,2,2,2)")
    assert phi.valid()


@pytest.mark.parametrize("name", sorted(DICTIONARIES))
def test_dictionaries_valid(name):
    assert verify_dictionary(name).valid


@pytest.mark.parametrize("name", ["hat7", "tilde8", "primed7", "primed8", "hat5"])
def test_epsilon_anti_fixed(name):
    r = verify_dictionary(name)
    assert r.epsilon_image == -r.epsilon


def test_hat6_reports_image_without_expectation():
    r = verify_dictionary("hat6")
    assert r.epsilon_image == parse_class("-1/2L+1/3E1+1/3E2+1/3E3+1/6E4+1/6E5+1/6E6")
    assert r.epsilon_image != -r.epsilon
    assert any("epsilon_6" in f for f in r.flags)


def test_h0_preservation():
    assert verify_dictionary("primed7").h0_preserved
    # the X_8 analogue moves H_0
    assert not verify_dictionary("primed8").h0_preserved


def test_involution_multiples():
    assert verify_dictionary("hat7").anticanonical_pairs["L"] == -3
    assert set(verify_dictionary("tilde8").anticanonical_pairs.values()) == {-6, -2}


def test_corrupted_map_detected():
    phi = dictionary("hat7")
    imgs = list(phi.images)
    imgs[2] = imgs[2] + DivisorClass.exc(1, 7)
    assert not LatticeMap(7, tuple(imgs), "bad").valid()


def test_find_word_three_cremonas():
    k = 7
    target = 3 * DivisorClass.line(k) - 2 * DivisorClass.exc(1, k) - esum(range(2, 8), k)
    w = find_word(k, DivisorClass.exc(1, k), target, 3)
    assert format_word(w) == "R123 R145 R167"
    assert apply_word(w, DivisorClass.exc(1, k)) == target


def test_find_word_permutation_and_failure():
    w = find_word(5, DivisorClass.exc(1, 5), DivisorClass.exc(2, 5), 3)
    assert len(w) == 1 and isinstance(w[0], Permutation)
    assert find_word(5, DivisorClass.exc(1, 5), DivisorClass.line(5), 3) is None
    assert find_word(5, DivisorClass.exc(1, 5), DivisorClass.exc(1, 5), 0) == []


def test_permutation_between():
    a = parse_class("(2;1,0,1,1,1)")
    b = parse_class("(2;1,1,1,1,0)")
    p = permutation_between(a, b)
    assert p(a) == b
    assert permutation_between(a, DivisorClass.line(5)) is None


@pytest.mark.parametrize("k", range(1, 9))
def test_exceptional_counts(k):
    found = enumerate_exceptional(k)
    assert len(found) == COUNTS[k - 1]
    assert all(is_exceptional(c) for c in found)
    assert found == enumerate_exceptional(k, exceptional_box_bounds(k))


def test_box_bounds_k8():
    assert exceptional_box_bounds(8) == (-1, 7, -7, 7)


@pytest.mark.parametrize("k", [1, 3, 4, 5, 6, 7, 8])
def test_orbit_equals_enumeration(k):
    assert exceptional_orbit(k) == frozenset(enumerate_exceptional(k))


def test_orbit_k2_misses_conic_line():
    # with two points there is no Cremona move, so L - E1 - E2 is not reached
    assert len(exceptional_orbit(2)) == 2 and len(enumerate_exceptional(2)) == 3


def test_orbit_types_present():
    types = {orbit_type(c) for c in enumerate_exceptional(8)}
    assert {(0, (-1,))} | {(d, m) for d, m in ORBIT_TYPES if d} <= types


@settings(max_examples=1000)
@given(classes(8), st.sampled_from([(1, 2, 3), (1, 4, 5), (2, 6, 8), (3, 7, 8)]))
def test_cremona_involution(a, ijl):
    assert cremona_reflect(cremona_reflect(a, *ijl), *ijl) == a


@settings(max_examples=1000)
@given(st.lists(st.integers(0, 10_000), min_size=1, max_size=4), st.sampled_from(["hat7", "tilde8", "primed8"]))
def test_aut_k_closure(picks, name):
    phi = dictionary(name)
    gens = generators(phi.k)
    for p in picks:
        phi = phi.compose(gens[p % len(gens)])
    assert phi.valid()


@settings(max_examples=300)
@given(classes(8), classes(8), st.sampled_from([(1, 2, 3), (4, 5, 8)]))
def test_cremona_preserves_pairing(a, b, ijl):
    r = Cremona(*ijl)
    assert intersect(r(a), r(b)) == intersect(a, b)


def test_enumeration_closed_under_generators():
    found = set(enumerate_exceptional(6))
    assert all(g(c) in found for c in found for g in generators(6))


def test_epsilon_helper_consistent():
    assert epsilon_class(4) == Fraction(1, 12) * (6 * DivisorClass.line(7) - 2 * esum((1, 2, 3), 7)
                                                   - 3 * esum(range(4, 8), 7))
