from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from finepoly.arith import (complete_to_unimodular, determinant, elementary_divisors,
                            format_rational, hermite_normal_form, is_saturated, matmul,
                            parse_rational, primitive, saturate, saturated_kernel,
                            smith_normal_form, vector_gcd)

small = st.integers(-9, 9)


def matrices(m, n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)


def test_primitive():
    assert primitive((4, -6)) == (2, -3)
    assert primitive((0, 0, 5)) == (0, 0, 1)
    assert vector_gcd((0, 0)) == 0
    with pytest.raises(ValueError):
        primitive((0, 0))


def test_parse_and_format():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational(-4) == -4
    assert format_rational(Fraction(-7, 3)) == "-7/3"
    assert format_rational(Fraction(2)) == "2"
    for bad in (0.5, "1/0", "x", True):
        with pytest.raises(ValueError):
            parse_rational(bad)


def _check_hnf(A, H, U):
    assert matmul(U, A) == H
    assert abs(determinant(U)) == 1
    last = -1
    seen_zero = False
    for i, row in enumerate(H):
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            seen_zero = True
            continue
        assert not seen_zero
        p = nz[0]
        assert p > last and row[p] > 0
        for k in range(i):
            assert 0 <= H[k][p] < row[p]
        last = p


def test_hnf_example_is_reduced():
    A = [[2, 4], [1, 3]]
    H, U = hermite_normal_form(A)
    _check_hnf(A, H, U)
    assert H == [[1, 1], [0, 2]]


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4).flatmap(lambda m: st.integers(1, 4).flatmap(lambda n: matrices(m, n))))
def test_hnf_properties(A):
    H, U = hermite_normal_form(A)
    _check_hnf(A, H, U)
    # uniqueness over the GL(m, Z) orbit
    H2, _ = hermite_normal_form(matmul(U, A)[::-1])
    assert H2 == H


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4).flatmap(lambda m: st.integers(1, 4).flatmap(lambda n: matrices(m, n))))
def test_snf_properties(A):
    S, U, V = smith_normal_form(A)
    assert matmul(matmul(U, A), V) == S
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
    diag = [S[i][i] for i in range(min(len(S), len(S[0])))]
    for i, row in enumerate(S):
        for j, x in enumerate(row):
            if i != j:
                assert x == 0
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else b % a == 0


def test_snf_example():
    assert elementary_divisors([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]


def test_saturated_kernel_examples():
    assert saturated_kernel([[2, 4]]) in ([(2, -1)], [(-2, 1)])
    K = saturated_kernel([[1, 1, 1]])
    assert len(K) == 2 and is_saturated(K)
    assert all(sum(v) == 0 for v in K)


def test_saturate_and_complete():
    assert saturate([(2, 4)]) == [(1, 2)]
    assert not is_saturated([(2, 0)])
    M = complete_to_unimodular([(1, 2, 3)], 3)
    assert abs(determinant(M)) == 1 and list(M[0]) == [1, 2, 3]
    with pytest.raises(ValueError):
        complete_to_unimodular([(2, 2)], 2)


@settings(max_examples=100, deadline=None)
@given(matrices(2, 4))
def test_kernel_is_saturated(A):
    K = saturated_kernel(A)
    assert is_saturated(K)
    for v in K:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in A)


def test_trivial_examples():
    assert primitive((2, 4, 6)) == (1, 2, 3)
    assert primitive((-3, -6)) == (-1, -2)
    I = [[1, 0], [0, 1]]
    assert hermite_normal_form(I) == (I, I)
    assert hermite_normal_form([[0, 0], [0, 0]]) == ([[0, 0], [0, 0]], I)
    assert smith_normal_form(I) == (I, I, I)
    assert smith_normal_form([[0]]) == ([[0]], [[1]], [[1]])
    assert elementary_divisors([[2, 0], [0, 3]]) == [1, 6]
    assert saturated_kernel([[1, 1]]) in ([(1, -1)], [(-1, 1)])
    assert saturated_kernel(I) == []


def test_saturated_kernel_brute_force():
    # every small integer solution of 2x + 4y = 0 is a multiple of the basis vector
    (k,) = saturated_kernel([[2, 4]])
    for x in range(-6, 7):
        for y in range(-6, 7):
            if 2 * x + 4 * y == 0:
                assert x * k[1] == y * k[0] and x % k[0] == 0
