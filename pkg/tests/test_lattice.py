from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hamlattice.lattice import (DimensionError, DivisorClass, ParseError, basis, c1, canonical_class,
                                esum, format_class, format_shorthand, genus0_count, gram_matrix,
                                intersect, is_exceptional, parse_class)
from strategies import classes, rational_classes


def test_basis_gram_is_diagonal():
    g = gram_matrix(basis(8))
    assert g == [[1 if i == j == 0 else (-1 if i == j else 0) for j in range(9)] for i in range(9)]


def test_canonical_class_and_c1():
    k = canonical_class(7)
    assert intersect(k, k) == 9 - 7
    assert intersect(k, DivisorClass.line(7)) == -3
    assert all(intersect(k, DivisorClass.exc(i, 7)) == -1 for i in range(1, 8))
    assert c1(DivisorClass.line(3)) == 3
    assert genus0_count(DivisorClass.line(3)) == 2


def test_parse_forms_agree():
    a = parse_class("3L-2E1-E2-E3", 7)
    b = parse_class("(3;2,1,1,0,0,0,0)")
    assert a == b
    assert format_class(a) == "3L-2E1-E2-E3"
    assert format_shorthand(a) == "(3;2,1,1,0,0,0,0)"
    assert parse_class("1/2L-1/3E2").m == (0, Fraction(-1, 3))


@pytest.mark.parametrize("bad", ["3L+", "L-E0", "3X", "2L E1", ""])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_class(bad)


def test_dimension_checks():
    with pytest.raises(DimensionError):
        DivisorClass.line(7) + DivisorClass.line(8)
    with pytest.raises(DimensionError):
        DivisorClass(9, 0, (0,) * 9)
    with pytest.raises(ParseError):
        parse_class("L-E8", 7)


def test_exceptional_predicate():
    assert is_exceptional(DivisorClass.exc(2, 5))
    assert is_exceptional(DivisorClass.line(5) - esum((1, 2), 5))
    assert not is_exceptional(DivisorClass.line(5))


@settings(max_examples=300)
@given(rational_classes(6))
def test_format_parse_roundtrip(a):
    assert parse_class(format_class(a), 6) == a
    assert parse_class(format_shorthand(a), 6) == a
    assert DivisorClass.from_json(a.to_json()) == a


@settings(max_examples=300)
@given(classes(5), classes(5), classes(5), st.integers(-4, 4))
def test_pairing_bilinear_symmetric(a, b, c, n):
    assert intersect(a, b) == intersect(b, a)
    assert intersect(a + n * b, c) == intersect(a, c) + n * intersect(b, c)
    assert a @ b == intersect(a, b)


def test_grouped_indices():
    assert parse_class("2L-E12-E4567", 8) == parse_class("(2;1,1,0,1,1,1,1,0)")
    assert parse_class("E_{23}") == parse_class("E2+E3")
    for bad in ("E11", "E102"):
        with pytest.raises(ParseError):
            parse_class(bad)
