import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fsegre.arith import (GF, QQ, EchelonSpan, ExactMatrix, ModulusMismatch, PrimeFieldScalar,
                          count_weighted_monomials, kernel_basis, weighted_monomials)
from fsegre.graded import HilbertSeries


def test_scalar_examples():
    assert PrimeFieldScalar(3, 7).inverse() == PrimeFieldScalar(5, 7)
    assert PrimeFieldScalar(1, 2) + PrimeFieldScalar(1, 2) == PrimeFieldScalar(0, 2)
    with pytest.raises(ZeroDivisionError):
        PrimeFieldScalar(0, 5).inverse()


def test_scalar_errors():
    with pytest.raises(ModulusMismatch):
        PrimeFieldScalar(1, 5) + PrimeFieldScalar(1, 7)
    with pytest.raises(ValueError):
        PrimeFieldScalar(1, 6)
    with pytest.raises(ValueError):
        PrimeFieldScalar(1, 65537)


def test_scalar_ops():
    a, b = PrimeFieldScalar(4, 13), PrimeFieldScalar(9, 13)
    assert int(a * b) == 36 % 13
    assert int(a - b) == (4 - 9) % 13
    assert int(-a) == 9
    assert a / b * b == a
    assert a ** 12 == 1
    assert a ** -1 == a.inverse()
    assert 3 - a == PrimeFieldScalar(12, 13)
    assert hash(a) == hash(PrimeFieldScalar(17, 13))


@settings(max_examples=1000, deadline=None)
@given(st.sampled_from([2, 3, 5, 7, 13]), st.integers(1, 10**6), st.integers(1, 10**6))
def test_inverse_of_product(p, x, y):
    a, b = PrimeFieldScalar(x, p), PrimeFieldScalar(y, p)
    if a == 0 or b == 0:
        return
    assert (a * b).inverse() * a * b == 1


def test_kernel_examples():
    assert kernel_basis(ExactMatrix.from_rows([[1, 0], [0, 1]], 5)) == []
    assert kernel_basis(ExactMatrix.from_rows([[1, 1]], 2)) == [(1, 1)]
    m = ExactMatrix.from_rows([[1, 2, 3], [4, 5, 6]], QQ)
    ker = kernel_basis(m)
    assert len(ker) == 1
    assert m.apply(ker[0]) == (0, 0)
    assert ker[0] == (1, -2, 1)


def test_kernel_of_empty_matrix():
    m = ExactMatrix((), GF(3), 2)
    assert kernel_basis(m) == [(1, 0), (0, 1)]


matrices = st.tuples(st.sampled_from([2, 3, 5, 7]), st.integers(1, 5), st.integers(1, 6)).flatmap(
    lambda t: st.tuples(st.just(t[0]), st.lists(st.lists(st.integers(0, t[0] - 1), min_size=t[2], max_size=t[2]),
                                              min_size=t[1], max_size=t[1])))


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_kernel_property(data):
    p, rows = data
    m = ExactMatrix.from_rows(rows, p)
    ker = kernel_basis(m)
    for k in ker:
        assert all(x == 0 for x in m.apply(k))
        assert next(x for x in k if x) == 1
    assert m.rank() + len(ker) == m.ncols


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=4, max_size=4), min_size=1, max_size=4))
def test_kernel_over_rationals(rows):
    m = ExactMatrix.from_rows(rows, QQ)
    ker = kernel_basis(m)
    assert all(all(x == 0 for x in m.apply(k)) for k in ker)
    assert all(isinstance(x, Fraction) for k in ker for x in k)
    assert m.rank() + len(ker) == 4


def test_echelon_span():
    s = EchelonSpan(GF(5), 3)
    assert s.add((1, 2, 3))
    assert not s.add((2, 4, 6))
    assert s.add((0, 1, 0))
    assert s.contains((1, 0, 3))
    assert not s.contains((0, 0, 1))
    assert len(s) == 2


def test_weighted_monomial_examples():
    assert set(weighted_monomials((21, 14, 6), 42)) == {(2, 0, 0), (0, 3, 0), (0, 0, 7)}
    assert weighted_monomials((5, 4, 4), 7) == []
    assert weighted_monomials((1, 1), 2) == [(2, 0), (1, 1), (0, 2)]
    assert weighted_monomials((2,), -1) == []
    with pytest.raises(ValueError):
        weighted_monomials((0, 1), 3)


def test_weighted_monomials_are_lex_descending():
    ms = weighted_monomials((3, 2, 2), 12)
    assert ms == sorted(ms, reverse=True)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=1, max_size=3), st.integers(0, 25))
def test_weighted_monomials_vs_series(weights, d):
    brute = [e for e in itertools.product(*(range(d // w + 1) for w in weights))
             if sum(a * w for a, w in zip(e, weights)) == d]
    assert sorted(weighted_monomials(weights, d)) == sorted(brute)
    hs = HilbertSeries((1,), tuple(weights))
    assert len(brute) == hs.coefficient(d) == count_weighted_monomials(weights, d)[d]
