import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rtmzv.errors import ConstantArgument, NotInH1
from rtmzv.hpoly import Poly, hy_words, z_encode
from rtmzv.quasi import circledast, h_w, harmonic

comp_st = st.lists(st.integers(1, 3), min_size=0, max_size=3).map(lambda c: Poly.word(z_encode(c)))


def test_small_products():
    y = Poly.word("y")
    assert harmonic(y, y) == Poly({"xy": 1, "yy": 2})
    assert harmonic(Poly.const(1), y) == y
    # z2 * z1 = z2 z1 + z1 z2 + z3
    assert harmonic(Poly.word("xy"), y) == Poly({"xyy": 1, "yxy": 1, "xxy": 1})
    assert h_w(Poly.word("y"), Poly.word("xy")) == harmonic(y, Poly.word("xy"))


def test_circledast():
    # z1 (.) z1 = z2
    assert circledast(Poly.word("y"), Poly.word("y")) == Poly.word("xy")
    with pytest.raises(ConstantArgument):
        circledast(Poly.const(1), Poly.word("y"))


def test_domain():
    with pytest.raises(NotInH1):
        harmonic(Poly.word("x"), Poly.word("y"))


@settings(max_examples=100)
@given(comp_st, comp_st, comp_st)
def test_commutative_associative(a, b, c):
    assert harmonic(a, b) == harmonic(b, a)
    assert harmonic(harmonic(a, b), c) == harmonic(a, harmonic(b, c))


def test_weight_preserved():
    for v in hy_words(3):
        for w in hy_words(2):
            assert harmonic(Poly.word(v), Poly.word(w)).degrees() == {5}
