"""The free algebra Q<x,y> on two letters.

Words are plain ``str`` over the alphabet ``"xy"``; the empty string is the
unit.  Python's string order is exactly the lexicographic order with
``x < y`` and shorter-before-longer at equal prefix, so sorting words needs
no custom key.

A :class:`Poly` is an immutable mapping word -> nonzero rational.  Integer
coefficients are kept as ``int``; a ``Fraction`` only survives when its
denominator is not 1.
"""
from __future__ import annotations

import itertools
import json
import re
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping, Union

from .errors import NotInH1, ParseError, TermNotEndingInY

Coeff = Union[int, Fraction]
Word = str
Composition = tuple

LETTERS = "xy"


def _norm(c) -> Coeff:
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    raise TypeError(f"coefficients must be int or Fraction, got {type(c).__name__}")


def _check_word(w: str) -> str:
    if not isinstance(w, str) or w.strip("xy"):
        raise ParseError(f"not a word over x, y: {w!r}")
    return w


class Poly:
    """A finite Q-linear combination of words."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[str, Coeff] | None = None):
        clean = {}
        if terms:
            for w, c in terms.items():
                c = _norm(c)
                if c:
                    clean[_check_word(w)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict) -> "Poly":
        # caller guarantees: valid words, normalized nonzero coefficients
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def word(cls, w: str, c: Coeff = 1) -> "Poly":
        return cls({w: c})

    @classmethod
    def const(cls, c: Coeff) -> "Poly":
        return cls({"": c})

    # -- mapping protocol -------------------------------------------------
    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self._terms))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __contains__(self, w) -> bool:
        return w in self._terms

    def __getitem__(self, w: str) -> Coeff:
        return self._terms.get(w, 0)

    def coeff(self, w: str) -> Coeff:
        return self._terms.get(w, 0)

    def items(self) -> list[tuple[str, Coeff]]:
        """Terms in canonical (lexicographic) order."""
        return sorted(self._terms.items())

    def words(self) -> list[str]:
        return sorted(self._terms)

    def as_dict(self) -> dict[str, Coeff]:
        return dict(self._terms)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other) -> "Poly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        _addto(out, other._terms)
        return Poly._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._wrap({w: -c for w, c in self._terms.items()})

    def __sub__(self, other) -> "Poly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        _addto(out, other._terms, -1)
        return Poly._wrap(out)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, Poly):
            return concat(self, other)
        if isinstance(other, (int, Fraction)):
            c = _norm(other)
            if not c:
                return Poly._wrap({})
            return Poly._wrap({w: _norm(a * c) for w, a in self._terms.items()})
        return NotImplemented

    def __rmul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- grading ----------------------------------------------------------
    def degrees(self) -> set[int]:
        return {len(w) for w in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        """Maximal word length; -1 for the zero polynomial."""
        return max((len(w) for w in self._terms), default=-1)

    def map_words(self, fn: Callable[[str], Mapping[str, Coeff]]) -> "Poly":
        """Extend a word -> polynomial map linearly."""
        out: dict = {}
        for w, c in self._terms.items():
            _addto(out, fn(w), c)
        return Poly._wrap(out)

    # -- text / json ------------------------------------------------------
    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"

    def to_json(self) -> dict:
        return {"terms": [{"coeff": str(c), "word": w or "1"} for w, c in self.items()]}

    @classmethod
    def from_json(cls, data) -> "Poly":
        if isinstance(data, str):
            data = json.loads(data)
        terms: dict = {}
        for t in data["terms"]:
            w = t["word"]
            w = "" if w == "1" else w
            _addto(terms, {_check_word(w): Fraction(t["coeff"])})
        return cls(terms)

    @classmethod
    def parse(cls, text: str) -> "Poly":
        return parse_poly(text)


def _coerce(p):
    if isinstance(p, Poly):
        return p
    if isinstance(p, (int, Fraction)):
        return Poly.const(p)
    return NotImplemented


def _addto(acc: dict, terms: Mapping[str, Coeff], scale: Coeff = 1) -> None:
    """acc += scale * terms, dropping zeros.  Mutates ``acc``."""
    for w, c in terms.items():
        v = acc.get(w, 0) + c * scale
        if v:
            acc[w] = _norm(v) if isinstance(v, Fraction) else v
        elif w in acc:
            del acc[w]


def poly(p) -> Poly:
    """Coerce a word string, a scalar or a Poly into a Poly."""
    if isinstance(p, Poly):
        return p
    if isinstance(p, str):
        return Poly.word(p)
    if isinstance(p, (int, Fraction)):
        return Poly.const(p)
    raise TypeError(f"cannot make a polynomial from {p!r}")


ZERO = Poly()
ONE = Poly.const(1)
X = Poly.word("x")
Y = Poly.word("y")


# --------------------------------------------------------------------------
# text format
# --------------------------------------------------------------------------

def _fmt_coeff(c: Coeff) -> str:
    return str(c) if isinstance(c, int) else f"{c.numerator}/{c.denominator}"


def format_poly(p: Poly) -> str:
    if not p:
        return "0"
    parts = []
    for i, (w, c) in enumerate(p.items()):
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if not w:
            body = _fmt_coeff(a)
        elif a == 1:
            body = w
        else:
            body = f"{_fmt_coeff(a)} {w}"
        if i == 0:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


_TERM = re.compile(r"^(\d+(?:/\d+)?)?\s*\*?\s*([xy]+|1)?$")


def parse_poly(text: str) -> Poly:
    """Parse ``"xyy - xxy"``, ``"2 xy + 1/3 y"``, ``"1"`` or ``"0"``."""
    s = text.replace("−", "-").replace("·", "*").strip()
    if not s:
        raise ParseError("empty polynomial string")
    tokens = re.split(r"([+-])", s)
    terms: dict = {}
    sign = 1
    pending = False
    for tok in tokens:
        tok = tok.strip()
        if tok in ("+", "-"):
            if pending:
                raise ParseError(f"dangling sign in {text!r}")
            sign = -sign if tok == "-" else sign
            pending = True
            continue
        if not tok:
            continue
        m = _TERM.match(tok)
        if not m or not (m.group(1) or m.group(2)):
            raise ParseError(f"bad term {tok!r} in {text!r}")
        c = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        w = m.group(2) or ""
        if w == "1":
            w = ""
        _addto(terms, {w: sign * c})
        sign = 1
        pending = False
    if pending:
        raise ParseError(f"trailing sign in {text!r}")
    return Poly(terms)


# --------------------------------------------------------------------------
# products and (anti)automorphisms
# --------------------------------------------------------------------------

def concat(p: Poly, q: Poly) -> Poly:
    p, q = poly(p), poly(q)
    out: dict = {}
    for v, a in p._terms.items():
        for w, b in q._terms.items():
            vw = v + w
            c = out.get(vw, 0) + a * b
            if c:
                out[vw] = c
            else:
                out.pop(vw, None)
    return Poly._wrap({w: _norm(c) for w, c in out.items()})


@lru_cache(maxsize=1 << 16)
def _phi_word(w: str) -> dict:
    # x -> x + y, y -> -y
    sign = -1 if w.count("y") % 2 else 1
    xs = [i for i, u in enumerate(w) if u == "x"]
    out = {}
    letters = list(w)
    for choice in itertools.product("xy", repeat=len(xs)):
        for i, u in zip(xs, choice):
            letters[i] = u
        out["".join(letters)] = sign
    return out


def phi(p) -> Poly:
    """The concatenation automorphism x -> x + y, y -> -y (an involution)."""
    return poly(p).map_words(_phi_word)


def tau_word(w: str) -> str:
    return w[::-1].translate(_SWAP)


_SWAP = str.maketrans("xy", "yx")


def tau(p) -> Poly:
    """Anti-automorphism: reverse every word and swap x <-> y."""
    return Poly._wrap({tau_word(w): c for w, c in poly(p)._terms.items()})


def left_mul(v: str, p) -> Poly:
    return Poly._wrap({v + w: c for w, c in poly(p)._terms.items()})


def right_mul(v: str, p) -> Poly:
    return Poly._wrap({w + v: c for w, c in poly(p)._terms.items()})


def right_div_y(p) -> Poly:
    out = {}
    for w, c in poly(p)._terms.items():
        if not w.endswith("y"):
            raise TermNotEndingInY(f"term {w or '1'!r} does not end in y")
        out[w[:-1]] = c
    return Poly._wrap(out)


def left_div_x(p) -> Poly:
    out = {}
    for w, c in poly(p)._terms.items():
        if not w.startswith("x"):
            raise ParseError(f"term {w or '1'!r} does not start with x")
        out[w[1:]] = c
    return Poly._wrap(out)


# --------------------------------------------------------------------------
# z-letters and subspaces
# --------------------------------------------------------------------------

def z_encode(c: Iterable[int]) -> str:
    parts = []
    for k in c:
        if k < 1:
            raise ValueError(f"composition parts must be >= 1, got {k}")
        parts.append("x" * (k - 1) + "y")
    return "".join(parts)


def z_decode(w: str) -> tuple[int, ...]:
    if w and not w.endswith("y"):
        raise NotInH1(f"word {w!r} does not end in y")
    _check_word(w)
    return tuple(len(block) + 1 for block in w.split("y")[:-1])


def is_admissible_word(w: str) -> bool:
    return not w or (w[0] == "x" and w[-1] == "y")


def is_admissible(p) -> bool:
    """Every monomial lies in Q + xHy."""
    return all(is_admissible_word(w) for w in poly(p)._terms)


def is_h1(p) -> bool:
    """Every monomial lies in Q + Hy."""
    return all(not w or w[-1] == "y" for w in poly(p)._terms)


def is_xhy(p) -> bool:
    """Every monomial lies in xHy (no constants)."""
    return all(len(w) >= 2 and w[0] == "x" and w[-1] == "y" for w in poly(p)._terms)


def is_admissible_composition(c) -> bool:
    return len(c) == 0 or c[0] >= 2


def words(n: int) -> list[str]:
    """All 2**n words of length n, lexicographic."""
    return ["".join(t) for t in itertools.product("xy", repeat=n)]


def admissible_words(n: int) -> list[str]:
    """The 2**(n-2) words x...y of length n >= 2, lexicographic."""
    if n < 2:
        return []
    return ["x" + w + "y" for w in words(n - 2)]


def hy_words(n: int) -> list[str]:
    """Words of length n >= 1 ending in y."""
    if n < 1:
        return []
    return [w + "y" for w in words(n - 1)]


# --------------------------------------------------------------------------
# derivations
# --------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _del_x(n: int) -> dict:
    # x (x+y)^(n-1) y
    return {"x" + w + "y": 1 for w in words(n - 1)}


def del_n(n: int, p) -> Poly:
    """The derivation with x -> x(x+y)^(n-1)y and y -> -x(x+y)^(n-1)y."""
    if n < 1:
        raise ValueError("del_n needs n >= 1")
    img = _del_x(n)

    def on_word(w: str) -> dict:
        out: dict = {}
        for i, u in enumerate(w):
            sgn = 1 if u == "x" else -1
            head, tail = w[:i], w[i + 1:]
            for m in img:
                k = head + m + tail
                out[k] = out.get(k, 0) + sgn
        return {k: c for k, c in out.items() if c}

    return poly(p).map_words(on_word)
