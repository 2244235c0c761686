"""High-precision numerical values of multiple zeta values.

ζ(w) for an admissible word w = u_1...u_n is split at 1/2 of the iterated
integral:

    ζ(w) = Σ_j Li_{τ(u_1..u_j)}(1/2) · Li_{u_(j+1)..u_n}(1/2)

and every factor is a multiple polylogarithm at 1/2, whose series
Σ_{m_1 > ... > m_r >= 1} 2^-m_1 / Π m_i^k_i converges geometrically.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath

from .errors import NotAdmissible
from .hpoly import Poly, is_admissible_word, poly, tau_word, z_decode, z_encode


@dataclass(frozen=True)
class PrecisionSpec:
    """Absolute error target and working precision (bits)."""

    target: float = 1e-10
    bits: int = 0

    def __post_init__(self):
        if not self.target > 0:
            raise ValueError("target error must be positive")
        need = self.min_bits(self.target)
        if self.bits == 0:
            object.__setattr__(self, "bits", max(128, need))
        elif self.bits < need:
            raise ValueError(f"{self.bits} bits is too little for target {self.target:g} (need {need})")

    @staticmethod
    def min_bits(target: float) -> int:
        digits = max(1.0, -math.log10(target))
        return int(math.ceil(2 * digits * math.log2(10))) + 16


DEFAULT = PrecisionSpec()


def _tail_terms(depth: int, eps: float) -> int:
    """N with Σ_{m>N} 2^-m (1 + ln m)^(depth-1) <= eps."""
    def term(m):
        return 2.0 ** -m * (1 + math.log(m)) ** (depth - 1)

    n = 8
    while True:
        ratio = 0.5 * ((1 + math.log(n + 2)) / (1 + math.log(n + 1))) ** (depth - 1)
        if ratio < 1:
            bound = term(n + 1) / (1 - ratio)
            if bound <= eps:
                return n
        n += 8


@lru_cache(maxsize=4096)
def _li_half(comp: tuple[int, ...], n_terms: int, bits: int):
    with mpmath.workprec(bits):
        r = len(comp)
        inv = [None] + [mpmath.mpf(1) / m for m in range(1, n_terms + 1)]
        # cur[m]: sum over the indices below m_i = m, built from the innermost one
        cur = [mpmath.mpf(0)] + [inv[m] ** comp[-1] for m in range(1, n_terms + 1)]
        for k in reversed(comp[:-1]):
            running = mpmath.mpf(0)
            nxt = [mpmath.mpf(0)] * (n_terms + 1)
            for m in range(1, n_terms + 1):
                nxt[m] = running * inv[m] ** k
                running += cur[m]
            cur = nxt
        half = mpmath.mpf(1) / 2
        total = mpmath.mpf(0)
        p = mpmath.mpf(1)
        for m in range(1, n_terms + 1):
            p *= half
            total += p * cur[m]
        return +total


def li_half(c, prec: PrecisionSpec = DEFAULT):
    """Σ_{m_1 > ... > m_r >= 1} (1/2)^m_1 / Π m_i^k_i to within ``prec.target``."""
    comp = tuple(int(k) for k in c)
    if any(k < 1 for k in comp):
        raise ValueError("composition parts must be >= 1")
    if not comp:
        return mpmath.mpf(1)
    n = _tail_terms(len(comp), prec.target / 2)
    return _li_half(comp, n, prec.bits)


def _li_word(w: str, prec: PrecisionSpec):
    return li_half(z_decode(w), prec)


def zeta_num(w, prec: PrecisionSpec = DEFAULT):
    """ζ of an admissible word (or composition with k_1 >= 2)."""
    if not isinstance(w, str):
        w = z_encode(w)
    if not w:
        return mpmath.mpf(1)
    if not is_admissible_word(w):
        raise NotAdmissible(f"{w!r} is not admissible")
    n = len(w)
    # each factor is in [0, 1]; n + 1 products of two factors with error δ
    inner_target = prec.target / (6 * (n + 1))
    inner = PrecisionSpec(inner_target, max(prec.bits, PrecisionSpec.min_bits(inner_target)))
    with mpmath.workprec(inner.bits):
        total = mpmath.mpf(0)
        for j in range(n + 1):
            total += _li_word(tau_word(w[:j]), inner) * _li_word(w[j:], inner)
        return +total


def zeta_value(p, prec: PrecisionSpec = DEFAULT):
    """Z extended linearly to an admissible polynomial without constant term."""
    p = poly(p)
    if "" in p or not all(is_admissible_word(w) for w in p.words()):
        raise NotAdmissible("relation polynomials must lie in xHy")
    with mpmath.workprec(prec.bits):
        total = mpmath.mpf(0)
        for w, c in p.items():
            total += mpmath.mpf(c.numerator) / c.denominator * zeta_num(w, prec)
        return +total


def relation_check_numeric(p, prec: PrecisionSpec = DEFAULT) -> bool:
    """|Z(p)| <= target * (1 + Σ|coeff|)."""
    p = poly(p)
    value = zeta_value(p, prec)
    scale = 1 + sum(abs(c) for _, c in p.items())
    return abs(value) <= prec.target * scale


def zeta_truncated(c, n_terms: int, bits: int = 96):
    """Direct partial sum of the defining series over m_1 <= n_terms and an
    upper bound for the omitted tail."""
    comp = tuple(int(k) for k in c)
    if not comp or comp[0] < 2:
        raise NotAdmissible("need k_1 >= 2")
    r = len(comp)
    with mpmath.workprec(bits):
        cur = [mpmath.mpf(0)] + [mpmath.mpf(1) / mpmath.mpf(m) ** comp[-1] for m in range(1, n_terms + 1)]
        for k in reversed(comp[:-1]):
            running = mpmath.mpf(0)
            nxt = [mpmath.mpf(0)] * (n_terms + 1)
            for m in range(1, n_terms + 1):
                nxt[m] = running / mpmath.mpf(m) ** k
                running += cur[m]
            cur = nxt
        partial = mpmath.fsum(cur[1:])
        k1 = comp[0]
        if 1 + math.log(n_terms) <= (r - 1) / k1:
            raise ValueError("n_terms too small for the tail bound")
        tail = mpmath.quad(lambda t: (1 + mpmath.log(t)) ** (r - 1) / t ** k1, [n_terms, mpmath.inf])
        return +partial, +tail


def format_value(x, target: float) -> str:
    digits = max(1, int(math.ceil(-math.log10(target))))
    return f"{mpmath.nstr(x, digits + 1, strip_zeros=False)} ± {target:g}"
