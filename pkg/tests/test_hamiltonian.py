import random
from fractions import Fraction

import pytest

from hamlattice.hamiltonian import (FixedPointDatum, critical_height, critical_levels, ell23_dictionary_report,
                                    facet_threshold, isotropy_spheres, levels_symmetric, literal_inequality_report,
                                    moment_polytope, slice_at, slice_range, tolman_data, weight_sum_difference)
from hamlattice.reduced import omega_class
from hamlattice.toric import delta_lambda


def test_fixed_points():
    t4 = tolman_data(4)
    assert t4.point("x2").weights == (1, -1, -4) and t4.point("x2").level == 4
    t5 = tolman_data(5)
    assert t5.point("x3").weights == (1, 5, -1) and t5.point("x3").level == -5
    assert t4.ring_constant == 5 and t5.ring_constant == 22 and tolman_data(3).ring_constant is None
    assert [p.index for p in t4.points] == [6, 4, 2, 0]
    assert [n for _, n, _ in critical_levels(4)] == ["x4", "x3", "x2", "x1"]


@pytest.mark.parametrize("ell", [2, 3, 4, 5])
def test_symmetry(ell):
    t = tolman_data(ell)
    assert levels_symmetric(ell)
    assert sorted(t.point("x1").weights) == sorted(-w for w in t.point("x4").weights)


def test_weight_sums():
    t = tolman_data(4)
    x1, x2, x4 = t.point("x1"), t.point("x2"), t.point("x4")
    assert weight_sum_difference(x4, x1) == -12
    assert weight_sum_difference(x4, x2) == -10
    assert weight_sum_difference(x2, x2) == 0


def test_isotropy():
    assert (("x4", "x2"), 2) in isotropy_spheres(2)
    assert (("x3", "x1"), 2) in isotropy_spheres(2)
    assert (("x4", "x1"), 3) in isotropy_spheres(2)
    sp3 = isotropy_spheres(3)
    assert (("x4", "x2"), 3) in sp3 and (("x3", "x1"), 3) in sp3
    assert (("x3", "x2"), 5) in isotropy_spheres(5)
    assert not any(m == 5 and a == "x4" for (a, _), m in isotropy_spheres(5))


def test_isotropy_order_independent():
    t = tolman_data(3)
    rng = random.Random(3)
    shuffled = []
    for p in t.points:
        w = list(p.weights)
        rng.shuffle(w)
        shuffled.append(FixedPointDatum(p.name, p.level, p.index, tuple(w)))
    t2 = type(t)(t.ell, tuple(reversed(shuffled)), t.ring_constant, t.beta_c1)
    assert isotropy_spheres(3, t2) == isotropy_spheres(3)


def test_slices():
    s1 = slice_at(4, 1)
    assert len(s1.polygon) == 3 and s1.d1_length() == Fraction(1, 6)
    s3 = slice_at(4, 3)
    assert len(s3.polygon) == 4 and s3.d2_length() == Fraction(1, 4)
    assert s3.polygon.scaled(2) == delta_lambda(4, Fraction(1, 2))
    s2 = slice_at(4, 2)
    assert s2.critical and len(s2.polygon) == 3
    with pytest.raises(ValueError):
        slice_at(4, 4)
    with pytest.raises(ValueError):
        slice_at(4, 0)


@pytest.mark.parametrize("ell", [2, 3, 4, 5])
def test_threshold_and_lengths(ell):
    assert facet_threshold(ell) == critical_height(ell) == 6 - ell
    lo, hi = slice_range(ell)
    om = omega_class(ell)
    for i in range(1, 21):
        s = slice_at(ell, lo + (hi - lo) * Fraction(i, 21))
        assert s.d1_length() == om.d1(s.kappa)
        assert not s.cut or s.d2_length() == om.d2(s.kappa)


def test_moment_polytope():
    poly = moment_polytope(4)
    assert poly.contains((0, 0, 1)) and not poly.contains((1, 0, 1))
    assert not literal_inequality_report(4)["literal_matches_omega"]


def test_ell23_report():
    rep = ell23_dictionary_report()
    assert rep.passed
    assert any("1 + kappa/2" in f for f in rep.flags)
    assert any("epsilon_6" in f for f in rep.flags)
