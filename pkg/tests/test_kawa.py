import numpy as np
import pytest

from rtmzv.errors import EmptyArgument, NotInDomain
from rtmzv.fbasis import forest_vector
from rtmzv.forest import DOT
from rtmzv.hpoly import Poly, admissible_words, hy_words, is_xhy, tau_word
from rtmzv.kawa import (C_REF, R_REF, RankReport, chi_x, chi_x_inv, intertwine_check, intertwiner,
                        kawashima_decompose, kawashima_generator_matrix, kawashima_generators,
                        relation_vector, rtm_generator_matrix, rtm_generators, span_contains,
                        weight_report)
from rtmzv.quasi import harmonic
from rtmzv.rtmap import MapExpr, rtm_apply


def test_chi():
    assert chi_x(Poly.const(1)) == Poly.word("y")
    assert chi_x(Poly.word("y")) == -Poly.word("xy")
    for n in range(1, 5):
        for w in hy_words(n):
            assert chi_x_inv(chi_x(Poly.word(w))) == Poly.word(w)
    with pytest.raises(NotInDomain):
        chi_x(Poly.word("x"))


def test_generators_small():
    rel = Poly({"xxy": -1, "xyy": 1})
    assert kawashima_generators(3) == [rel]
    assert rtm_generators(3) == [rel]
    assert len(kawashima_generators(4)) == 2


@pytest.mark.parametrize("k", range(3, 8))
def test_dense_matrices_match_polys(k):
    rtm = np.array([relation_vector(p, k) for p in rtm_generators(k)])
    assert np.array_equal(rtm, rtm_generator_matrix(k))
    kaw = np.array([relation_vector(p, k) for p in kawashima_generators(k)])
    assert np.array_equal(kaw, kawashima_generator_matrix(k))


def _tau_perm(k):
    words = admissible_words(k)
    index = {w: i for i, w in enumerate(words)}
    return np.array([index[tau_word(w)] for w in words])


@pytest.mark.parametrize("k", range(3, 9))
def test_duality_and_tau_stability(k):
    a = rtm_generator_matrix(k)
    perm = _tau_perm(k)
    eye = np.eye(len(perm), dtype=np.int64)
    assert span_contains(a, eye - eye[:, perm])
    assert span_contains(a, a[:, perm])


@pytest.mark.parametrize("k", range(2, 9))
def test_rank_reports(k):
    rep = weight_report(k)
    assert rep.r_rtm == R_REF[k]
    assert rep.spans_equal
    assert rep.r_rtm <= C_REF[k]
    assert RankReport.from_json(rep.to_json()) == rep


def test_modular_path_agrees():
    for k in (8, 9):
        assert weight_report(k, exact=False) == weight_report(k, exact=True)


def test_all_forests_same_span():
    for k in range(3, 8):
        assert weight_report(k, use_all_forests=True, kawashima=False).r_rtm == R_REF[k]


@pytest.mark.parametrize("d", range(1, 5))
def test_intertwining(d):
    for f in forest_vector(d):
        assert intertwine_check(f, 4)


def test_intertwiner_dot():
    # • χ_x = χ_x H_w with w = χ_x^-1(•(y)) = χ_x^-1(-xy)
    assert intertwiner(DOT) == Poly.word("y")


def test_decompose():
    f, u = kawashima_decompose("y", "y")
    assert f == MapExpr.of(DOT)
    assert u == -Poly.word("xy")
    for total in range(2, 6):
        for a in range(1, total):
            for v in hy_words(a):
                for w in hy_words(total - a):
                    f, u = kawashima_decompose(v, w)
                    assert is_xhy(u)
                    assert set(f.forests()) <= set(forest_vector(total - a))
                    assert rtm_apply(f, u) == chi_x(harmonic(Poly.word(w), Poly.word(v)))
    with pytest.raises(EmptyArgument):
        kawashima_decompose(Poly(), "y")
    with pytest.raises(NotInDomain):
        kawashima_decompose("x", "y")


def test_conjectured_counts_from_zagier_dimensions():
    d = [1, 0, 1]
    while len(d) < 14:
        d.append(d[-2] + d[-3])
    assert C_REF == {k: 2 ** (k - 2) - d[k] for k in range(2, 14)}
