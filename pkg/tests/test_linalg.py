from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from rtmzv.errors import NonSquare
from rtmzv.linalg import (MERSENNE61, P1, MatF2, MatQ, bareiss_rank, certified_rank, det_f2,
                          fraction_free_rref, integer_kernel, inverse_q, kernel_q, rank_f2,
                          rank_mod_p, rank_mod_p_fast, rank_q, solve_q)

small_int_mat = st.integers(1, 6).flatmap(
    lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=1, max_size=6))


def low_rank(rng, n, m, r, lo=-3, hi=3):
    return rng.integers(lo, hi + 1, (n, r)) @ rng.integers(lo, hi + 1, (r, m))


def test_f2_basics():
    a = MatF2.from_rows([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    assert rank_f2(a) == 2
    assert det_f2(MatF2.identity(5)) == 1
    assert det_f2(MatF2.from_rows([[1, 1, 0], [0, 1, 1], [1, 0, 1]])) == 0
    assert (a @ MatF2.identity(3)) == a
    assert a.T.T == a
    assert (a + a) == MatF2.zeros(3, 3)
    with pytest.raises(NonSquare):
        det_f2(MatF2.zeros(2, 3))


@settings(max_examples=60)
@given(small_int_mat)
def test_rank_against_sympy(rows):
    expect = sympy.Matrix(rows).rank()
    assert bareiss_rank(rows) == expect
    assert rank_q(rows) == expect
    assert rank_mod_p(rows, MERSENNE61) == expect


@settings(max_examples=60)
@given(small_int_mat)
def test_rref_against_sympy(rows):
    r, pivots, d = fraction_free_rref(rows)
    ref, piv = sympy.Matrix(rows).rref()
    assert tuple(pivots) == piv
    for i in range(len(pivots)):
        assert [Fraction(v, d) for v in r[i]] == [Fraction(int(e.p), int(e.q)) for e in ref.row(i)]


@settings(max_examples=40)
@given(small_int_mat)
def test_kernel(rows):
    kern = integer_kernel(rows)
    assert len(kern) == len(rows[0]) - sympy.Matrix(rows).rank()
    for v in kern:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)
    assert kernel_q(rows) == kern


def test_modular_and_certified():
    rng = np.random.default_rng(7)
    for n, m, r in [(40, 30, 12), (120, 90, 60), (50, 80, 50), (10, 10, 0)]:
        a = low_rank(rng, n, m, r) if r else np.zeros((n, m), dtype=np.int64)
        assert rank_mod_p_fast(a, P1) == r
        assert certified_rank(a) == r
        if n * m <= 3000:
            assert rank_mod_p(a.tolist(), MERSENNE61) == r


def test_solve_inverse():
    a = [[2, 1], [1, 3]]
    assert solve_q(a, [3, 5]) == [Fraction(4, 5), Fraction(7, 5)]
    inv = inverse_q(MatQ(a))
    assert inv == [[Fraction(3, 5), Fraction(-1, 5)], [Fraction(-1, 5), Fraction(2, 5)]]
