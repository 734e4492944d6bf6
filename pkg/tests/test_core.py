from fractions import Fraction
from itertools import combinations
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tvlab.core import (
    Field,
    QComplex,
    format_scalar,
    kernel_basis,
    matvec,
    parse_scalar,
    rank,
    smith_normal_form,
    sparse_invariant_factors,
    to_field,
)
from tvlab.core.snf import determinant_divisors_check

ints = st.integers(-9, 9)
rats = st.fractions(min_value=-20, max_value=20, max_denominator=12)
cplx = st.builds(QComplex, rats, rats)


def small_matrix(rows=(1, 5), cols=(1, 5), elems=ints):
    return st.integers(*rows).flatmap(lambda r: st.integers(*cols).flatmap(lambda c: st.lists(st.lists(elems, min_size=c, max_size=c), min_size=r, max_size=r)))


def det(m):
    # Leibniz-free exact determinant by cofactor expansion (tiny matrices only)
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * det([row[:j] + row[j + 1 :] for row in m[1:]]) for j in range(len(m)))


def determinant_divisor_factors(m):
    """Invariant factors from gcds of k x k minors, independent of elimination."""
    rows, cols = len(m), len(m[0])
    divisors = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, det([[m[i][j] for j in cs] for i in rs]))
        if g == 0:
            break
        divisors.append(g)
    return tuple(divisors[i] // divisors[i - 1] for i in range(1, len(divisors)))


def test_kernel_examples():
    assert kernel_basis([[1, 1, 1], [0, 1, 2]]) == [[1, -2, 1]]
    assert kernel_basis([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == []
    basis = kernel_basis([[0, 0, 0], [0, 0, 0]])
    assert sorted(basis) == sorted([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def test_snf_examples():
    assert smith_normal_form([[2, 4], [6, 8]]) == (2, 4)
    assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == (1, 1, 1)
    assert smith_normal_form([[0, 0], [0, 0]]) == ()


@given(small_matrix(elems=rats))
def test_kernel_vectors_annihilate(m):
    basis = kernel_basis(m)
    for v in basis:
        assert all(x == 0 for x in matvec(m, v))
    assert len(basis) + rank(m) == len(m[0])


@given(small_matrix(elems=cplx))
def test_complex_kernel(m):
    basis = kernel_basis(m, Field.C)
    for v in basis:
        assert all(x == 0 for x in matvec(m, v))
    assert len(basis) + rank(m, Field.C) == len(m[0])


@given(small_matrix(rows=(1, 4), cols=(1, 4)))
def test_snf_matches_determinant_divisors(m):
    factors = smith_normal_form(m)
    assert factors == determinant_divisor_factors(m)
    assert determinant_divisors_check(factors)
    assert all(b % a == 0 for a, b in zip(factors, factors[1:]))


@given(small_matrix(rows=(1, 6), cols=(1, 6), elems=st.integers(-2, 2)))
def test_sparse_elimination_agrees_with_dense(m):
    cols = [{i: m[i][j] for i in range(len(m)) if m[i][j]} for j in range(len(m[0]))]
    assert sparse_invariant_factors(cols) == smith_normal_form(m)


@given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
def test_rationals_read_back_in_lowest_terms(a, b):
    x = parse_scalar(format_scalar(Fraction(a, b)), Field.R)
    assert x == Fraction(a, b)
    assert gcd(x.numerator, x.denominator) == 1 and x.denominator > 0


def as_real_matrix(z):
    return ((z.re, -z.im), (z.im, z.re))


def matmul2(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def matadd2(a, b):
    return tuple(tuple(a[i][j] + b[i][j] for j in range(2)) for i in range(2))


@given(cplx, cplx, cplx)
def test_complex_arithmetic_matches_real_matrices(a, b, c):
    assert as_real_matrix(a * b) == matmul2(as_real_matrix(a), as_real_matrix(b))
    assert as_real_matrix(a + b) == matadd2(as_real_matrix(a), as_real_matrix(b))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if b != 0:
        assert (a / b) * b == a


def test_scalar_parsing():
    assert parse_scalar("3/6", Field.R) == Fraction(1, 2)
    assert parse_scalar("1/2-3i", Field.C) == QComplex(Fraction(1, 2), -3)
    assert parse_scalar(["1", "2/3"], Field.C) == QComplex(1, Fraction(2, 3))
    with pytest.raises(TypeError):
        parse_scalar(0.5, Field.R)
    with pytest.raises(ValueError):
        to_field(QComplex(0, 1), Field.R)


def test_real_complex_hash_consistency():
    assert hash(QComplex(Fraction(1, 2))) == hash(Fraction(1, 2))
    assert QComplex(3) == 3
