"""Harmonic (stuffle) product on H^1 = Q + Hy and the fused product ⊛."""
from __future__ import annotations

from functools import lru_cache

from .errors import ConstantArgument, NotInH1
from .hpoly import Poly, _addto, poly


def _split_z(w: str) -> tuple[str, str]:
    # leading z-letter x^(k-1)y and the rest
    i = w.index("y") + 1
    return w[:i], w[i:]


def _check_h1(p: Poly, name: str) -> None:
    for w in p._terms:
        if w and w[-1] != "y":
            raise NotInH1(f"{name}: monomial {w!r} does not end in y")


@lru_cache(maxsize=1 << 18)
def _stuffle_words(a: str, b: str) -> dict:
    if not a:
        return {b: 1}
    if not b:
        return {a: 1}
    za, v = _split_z(a)
    zb, w = _split_z(b)
    zab = "x" * (len(za) + len(zb) - 1) + "y"
    out: dict = {}
    for head, (p, q) in ((za, (v, b)), (zb, (a, w)), (zab, (v, w))):
        for m, c in _stuffle_pair(p, q).items():
            k = head + m
            out[k] = out.get(k, 0) + c
    return out


def _stuffle_pair(a: str, b: str) -> dict:
    # the product is commutative; share one cache entry per unordered pair
    return _stuffle_words(a, b) if a <= b else _stuffle_words(b, a)


def harmonic(p, q) -> Poly:
    """Bilinear extension of the recursive stuffle product on H^1."""
    p, q = poly(p), poly(q)
    _check_h1(p, "harmonic")
    _check_h1(q, "harmonic")
    out: dict = {}
    for v, a in p._terms.items():
        for w, b in q._terms.items():
            _addto(out, _stuffle_pair(v, w), a * b)
    return Poly._wrap(out)


def h_w(w, v) -> Poly:
    """The multiplication operator H_w applied to v."""
    return harmonic(w, v)


def circledast(p, q) -> Poly:
    """z_a v ⊛ z_b w = z_(a+b) (v * w), extended bilinearly."""
    p, q = poly(p), poly(q)
    for name, r in (("left", p), ("right", q)):
        _check_h1(r, "circledast")
        if "" in r._terms:
            raise ConstantArgument(f"circledast: {name} argument has a constant term")
    out: dict = {}
    for s, a in p._terms.items():
        za, v = _split_z(s)
        for t, b in q._terms.items():
            zb, w = _split_z(t)
            head = "x" * (len(za) + len(zb) - 1) + "y"
            _addto(out, {head + m: c for m, c in _stuffle_pair(v, w).items()}, a * b)
    return Poly._wrap(out)
