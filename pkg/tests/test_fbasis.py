from fractions import Fraction

import pytest

from rtmzv.errors import DegreeTooSmall, NonHomogeneous, NotInXHY
from rtmzv.fbasis import (forest_vector, mat_A, mat_B, mat_E, mat_T, theta, theta_inv,
                          theta_matrix_f2, verify_lemma1, verify_lemma2, verify_lemma3,
                          verify_lemma4, verify_prop1, word_vector)
from rtmzv.forest import DOT, LADDER2, Forest
from rtmzv.hpoly import Poly
from rtmzv.linalg import MatF2, det_f2
from rtmzv.rtmap import MapExpr

DEGREES = range(2, 9)


def test_vectors():
    assert word_vector(3) == ("xxy", "xyy")
    assert forest_vector(2) == (LADDER2, Forest("()()"))
    assert len(forest_vector(6)) == 32
    assert len(set(forest_vector(6))) == 32
    with pytest.raises(DegreeTooSmall):
        word_vector(1)


def test_small_matrices():
    assert mat_A(1).to_lists() == [[1, 1]]
    assert mat_A(2).to_lists() == [[1, 1, 1, 0], [0, 1, 1, 1]]
    assert mat_E(2, 1).to_lists() == [[1, 0], [0, 0], [0, 1], [0, 0]]
    assert mat_E(2, 2).to_lists() == [[0, 0], [1, 0], [0, 0], [0, 1]]
    assert mat_B(2).shape == (2, 2)
    assert mat_A(7).shape == (64, 128)


@pytest.mark.parametrize("d", DEGREES)
def test_lemmas(d):
    assert verify_lemma1(d)
    assert verify_lemma3(d)
    assert verify_lemma4(d)
    assert verify_lemma2(d)
    assert verify_prop1(d)


@pytest.mark.parametrize("d", DEGREES)
def test_tau_matrix_involution(d):
    t = mat_T(d)
    assert t @ t == MatF2.identity(t.rows)


@pytest.mark.parametrize("d", range(1, 8))
def test_theta_mod2(d):
    assert theta_matrix_f2(d) == mat_B(d)
    assert det_f2(theta_matrix_f2(d)) == 1


@pytest.mark.parametrize("d", range(1, 7))
def test_theta_roundtrip(d):
    for f in forest_vector(d):
        assert theta_inv(theta(f)) == MapExpr.of(f)
    for w in word_vector(d + 1):
        assert theta(theta_inv(w)) == Poly.word(w)


def test_theta_values():
    assert theta_inv(Poly({"xxy": 1, "xyy": 2})) == MapExpr.of(LADDER2)
    assert theta_inv("xy") == MapExpr.of(DOT)
    assert theta_inv(Poly({"xxy": 1})).coeff(LADDER2) == Fraction(1, 3)
    with pytest.raises(NotInXHY):
        theta_inv(Poly.word("yy"))
    with pytest.raises(NonHomogeneous):
        theta_inv(Poly({"xy": 1, "xxy": 1}))
    with pytest.raises(NonHomogeneous):
        theta(MapExpr({DOT: 1, LADDER2: 1}))
