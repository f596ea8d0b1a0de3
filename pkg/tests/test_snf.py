import pytest
from hypothesis import given, settings, strategies as st

from hamlattice.snf import (cokernel, determinantal_divisors, elementary_divisors, invariant_factors,
                            isomorphic, matmul, parse_matrix, smith_normal_form)


def _det(m):
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * _det([r[:j] + r[j + 1:] for r in m[1:]]) for j in range(len(m)))


def test_examples():
    assert invariant_factors([[6, 0], [0, 4]]) == [2, 12]
    assert invariant_factors([[6, 0], [0, 5]]) == [1, 30]
    assert cokernel([[6, 0], [0, 4]]).describe() == "Z2+Z12"
    assert cokernel([[2], [0]]).describe() == "Z2+Z"
    assert isomorphic([2, 12], [6, 4]) and not isomorphic([2, 12], [24])
    assert elementary_divisors([12]) == [3, 4]


def test_parse_matrix():
    assert parse_matrix("6,0;0,4") == [[6, 0], [0, 4]]
    with pytest.raises(ValueError):
        parse_matrix("1,2;3")
    with pytest.raises(TypeError):
        smith_normal_form([[1.5]])


matrices = st.integers(1, 4).flatmap(lambda m: st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-20, 20), min_size=n, max_size=n), min_size=m, max_size=m)))


@settings(max_examples=500)
@given(matrices)
def test_snf_properties(a):
    d, u, v = smith_normal_form(a)
    assert matmul(matmul(u, a), v) == d
    assert abs(_det(u)) == 1 and abs(_det(v)) == 1
    diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
    assert all(d[i][j] == 0 for i in range(len(d)) for j in range(len(d[0])) if i != j)
    nz = [x for x in diag if x]
    assert all(x > 0 for x in nz) and all(b % a == 0 for a, b in zip(nz, nz[1:]))
    # d_1 ... d_i equals the gcd of the i x i minors
    prods, acc = [], 1
    for x in nz:
        acc *= x
        prods.append(acc)
    assert prods == determinantal_divisors(a)
