import random

import mpmath
import pytest

from rtmzv.errors import NotAdmissible
from rtmzv.hpoly import Poly, admissible_words, tau_word, z_decode
from rtmzv.kawa import rtm_generators
from rtmzv.mzvnum import (PrecisionSpec, format_value, li_half, relation_check_numeric, zeta_num,
                          zeta_truncated, zeta_value)

P = PrecisionSpec(1e-12)


def test_known_values():
    assert abs(zeta_num("xy", P) - mpmath.pi**2 / 6) < 1e-12
    assert abs(zeta_num((3,), P) - mpmath.zeta(3)) < 1e-12
    assert abs(zeta_num((2, 1), P) - mpmath.zeta(3)) < 1e-12
    assert abs(zeta_num((4,), P) - mpmath.pi**4 / 90) < 1e-12
    assert abs(zeta_num((2, 2), P) - mpmath.pi**4 / 120) < 1e-12
    assert abs(li_half((1,), P) - mpmath.log(2)) < 1e-12
    assert zeta_num("") == 1


@pytest.mark.parametrize("k", range(2, 7))
def test_duality(k):
    for w in admissible_words(k):
        assert abs(zeta_num(w, P) - zeta_num(tau_word(w), P)) < 1e-11


def test_against_truncated_series():
    for c in [(2,), (3, 1), (2, 1, 1), (2, 2)]:
        partial, tail = zeta_truncated(c, 4000)
        v = zeta_num(c, P)
        assert partial - 1e-12 <= v <= partial + tail + 1e-12


def test_relations_vanish():
    rng = random.Random(1)
    for k in range(3, 7):
        gens = rtm_generators(k)
        for p in rng.sample(gens, min(5, len(gens))):
            assert relation_check_numeric(p)
    assert not relation_check_numeric(Poly.word("xy"))


def test_errors_and_format():
    with pytest.raises(NotAdmissible):
        zeta_num("yx")
    with pytest.raises(NotAdmissible):
        zeta_value(Poly({"": 1, "xy": 1}))
    with pytest.raises(ValueError):
        PrecisionSpec(0)
    with pytest.raises(ValueError):
        PrecisionSpec(1e-30, bits=64)
    assert format_value(zeta_num("xy"), 1e-10).startswith("1.6449340668")
    assert format_value(zeta_num("xy"), 1e-10).endswith("± 1e-10")
