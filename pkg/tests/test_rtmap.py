import pytest

from rtmzv.forest import CHERRY, DOT, LADDER2, UNIT, Forest, enumerate_forests
from rtmzv.hpoly import Poly, admissible_words, del_n, is_xhy, words
from rtmzv.rtmap import MapExpr, find_map_relations, rtm_apply, rtm_letter


def test_examples():
    assert rtm_apply(DOT, "xy") == Poly({"xyy": 1, "xxy": -1})
    assert rtm_apply(UNIT, "xy") == Poly.word("xy")
    assert rtm_apply(DOT, "") == Poly()
    assert rtm_letter(DOT, "x") == Poly.word("xy")
    assert rtm_letter(DOT, "y") == -Poly.word("xy")


def test_ladder_on_x():
    # B+(•)(x) = R_y R_{x+2y} R_y^-1 (xy)
    assert rtm_letter(LADDER2, "x") == Poly({"xxy": 1, "xyy": 2})


@pytest.mark.parametrize("n", range(1, 9))
def test_dot_is_derivation(n):
    for w in words(n):
        assert rtm_apply(DOT, w) == del_n(1, Poly.word(w))


@pytest.mark.parametrize("d", range(1, 6))
def test_unit_and_y(d):
    for f in enumerate_forests(d):
        assert rtm_apply(f, "") == Poly()
        assert rtm_letter(f, "y") == -rtm_letter(f, "x")


def test_commutation():
    pool = [f for d in range(1, 5) for f in enumerate_forests(d)]
    for n in range(1, 4):
        for w in words(n):
            for g in pool[:6]:
                for h in pool:
                    assert rtm_apply(g, rtm_apply(h, w)) == rtm_apply(h, rtm_apply(g, w))


def test_forest_product_is_composition():
    for w in words(3):
        assert rtm_apply(Forest("()(())"), w) == rtm_apply(DOT, rtm_apply(LADDER2, w))


@pytest.mark.parametrize("d", range(1, 4))
def test_preserves_admissible(d):
    for f in enumerate_forests(d):
        for n in range(2, 5):
            for w in admissible_words(n):
                assert is_xhy(rtm_apply(f, w))


def test_mapexpr_arithmetic_and_json():
    m = MapExpr({DOT: 2, CHERRY: -1})
    assert MapExpr.from_json(m.to_json()) == m
    assert (m - m) == MapExpr()
    assert m("xy") == 2 * rtm_apply(DOT, "xy") - rtm_apply(CHERRY, "xy")
    assert str(MapExpr.of(DOT)) == "1·()"


def test_map_relations_small():
    assert find_map_relations(2, 5).dimension == 0
    assert find_map_relations(3, 5).dimension == 0
    basis = find_map_relations(4, 6)
    assert basis.dimension == 1
    rel = basis.relations[0]
    for n in range(1, 7):
        for w in words(n):
            assert rel(w) == Poly()
