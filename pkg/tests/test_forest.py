import random

import pytest

from rtmzv.errors import ParseError
from rtmzv.forest import (CHERRY, DOT, LADDER2, UNIT, Forest, TensorPoly, Tree, b_plus, coproduct,
                          coproduct_terms, enumerate_forests, enumerate_trees, forest_mul,
                          root_decompose)


def test_canonical_forms():
    assert Forest("(())()") == Forest("()(())")
    assert Tree("((())())") == Tree("(()(()))")
    assert CHERRY == Forest("(()())")
    assert b_plus(Forest("()()")) == Tree("(()())")
    assert root_decompose(Tree("(()(()))")) == Forest("()(())")
    assert forest_mul(DOT, DOT).degree == 2
    with pytest.raises((ParseError, ValueError)):
        Forest("(()")


def test_enumeration_counts():
    assert [len(enumerate_trees(d)) for d in range(1, 8)] == [1, 1, 2, 4, 9, 20, 48]
    assert [len(enumerate_forests(d)) for d in range(0, 8)] == [1, 1, 2, 4, 9, 20, 48, 115]


def test_small_coproducts():
    assert coproduct(DOT) == TensorPoly({(DOT, UNIT): 1, (UNIT, DOT): 1})
    assert coproduct(LADDER2) == TensorPoly({(LADDER2, UNIT): 1, (UNIT, LADDER2): 1, (DOT, DOT): 1})
    cherry = coproduct(CHERRY)
    assert cherry == TensorPoly({(CHERRY, UNIT): 1, (UNIT, CHERRY): 1, (DOT, LADDER2): 2,
                                 (Forest("()()"), DOT): 1})


def _tensor3(code):
    left, right = {}, {}
    for a, b, c in coproduct_terms(code):
        for a1, a2, c1 in coproduct_terms(a):
            left[(a1, a2, b)] = left.get((a1, a2, b), 0) + c * c1
        for b1, b2, c2 in coproduct_terms(b):
            right[(a, b1, b2)] = right.get((a, b1, b2), 0) + c * c2
    return left, right


@pytest.mark.parametrize("d", range(0, 6))
def test_coassociative(d):
    for f in enumerate_forests(d):
        left, right = _tensor3(f.code)
        assert left == right, f


@pytest.mark.parametrize("d", range(0, 6))
def test_counit(d):
    for f in enumerate_forests(d):
        t = coproduct(f)
        assert t[(f, UNIT)] == 1 and t[(UNIT, f)] == 1


def test_multiplicative():
    rng = random.Random(3)
    pool = [f for d in range(1, 5) for f in enumerate_forests(d)]
    for _ in range(40):
        f, g = rng.choice(pool), rng.choice(pool)
        assert coproduct(f * g) == coproduct(f) * coproduct(g)


def test_tensor_json():
    t = coproduct(CHERRY)
    assert TensorPoly.from_json(t.to_json()) == t
