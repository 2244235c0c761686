"""Rooted tree maps: linear operators on Q<x,y> attached to forests.

Letter images:

* the single vertex sends x -> xy, y -> -xy;
* a tree ``B+(f)`` sends u -> R_y R_(x+2y) R_y^(-1) f(u);
* a forest ``g h`` with both factors nonempty sends u -> g(h(u)).

On longer words ``f(w u) = M(Δ(f)(w ⊗ u))``: expand the coproduct and
multiply the image of the prefix by the image of the last letter.  The
empty forest acts as the identity.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

from .errors import TermNotEndingInY
from .forest import Forest, as_forest, coproduct_terms, enumerate_forests, split_trees
from .hpoly import Poly, _addto, _norm, poly


class MapExpr:
    """A Q-linear combination of rooted tree maps, keyed by forest."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | None = None):
        clean: dict = {}
        for f, c in (terms or {}).items():
            f = as_forest(f)
            v = clean.get(f, 0) + c
            if v:
                clean[f] = _norm(v)
            else:
                clean.pop(f, None)
        self._terms = clean

    @classmethod
    def of(cls, f, c=1) -> "MapExpr":
        return cls({as_forest(f): c})

    def items(self) -> list[tuple[Forest, int | Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0].code)

    def coeff(self, f) -> int | Fraction:
        return self._terms.get(as_forest(f), 0)

    def forests(self) -> list[Forest]:
        return [f for f, _ in self.items()]

    def degrees(self) -> set[int]:
        return {f.degree for f in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: "MapExpr") -> "MapExpr":
        acc = dict(self._terms)
        for f, c in other._terms.items():
            acc[f] = acc.get(f, 0) + c
        return MapExpr(acc)

    def __neg__(self) -> "MapExpr":
        return MapExpr({f: -c for f, c in self._terms.items()})

    def __sub__(self, other: "MapExpr") -> "MapExpr":
        return self + (-other)

    def __mul__(self, c) -> "MapExpr":
        return MapExpr({f: v * c for f, v in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, MapExpr):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __call__(self, p) -> Poly:
        return rtm_apply(self, p)

    def to_json(self) -> dict:
        return {"terms": [{"coeff": str(c), "forest": f.code} for f, c in self.items()]}

    @classmethod
    def from_json(cls, data) -> "MapExpr":
        if isinstance(data, str):
            data = json.loads(data)
        acc: dict = {}
        for t in data["terms"]:
            f = Forest(t["forest"])
            acc[f] = acc.get(f, 0) + Fraction(t["coeff"])
        return cls(acc)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for f, c in self.items():
            parts.append(f"{c}·{f.code or 'I'}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"MapExpr({str(self)!r})"


def as_map(f) -> MapExpr:
    if isinstance(f, MapExpr):
        return f
    return MapExpr.of(f)


# --------------------------------------------------------------------------
# evaluation on canonical codes
# --------------------------------------------------------------------------

def _graft_letter_image(q: Poly) -> dict:
    # R_y R_(x+2y) R_y^(-1)
    out: dict = {}
    for w, c in q._terms.items():
        if not w.endswith("y"):
            raise TermNotEndingInY(f"letter image term {w!r} does not end in y")
        head = w[:-1]
        _addto(out, {head + "xy": c, head + "yy": 2 * c})
    return out


@lru_cache(maxsize=None)
def letter_image(code: str, u: str) -> Poly:
    """Image of the letter ``u`` under the map of the nonempty forest ``code``."""
    if code == "()":
        return Poly._wrap({"xy": 1 if u == "x" else -1})
    trees = split_trees(code)
    if len(trees) == 1:
        return Poly._wrap(_graft_letter_image(letter_image(code[1:-1], u)))
    g, h = trees[0], "".join(trees[1:])
    return apply_code(g, letter_image(h, u))


@lru_cache(maxsize=1 << 18)
def apply_word(code: str, w: str) -> Poly:
    if not code:
        return Poly._wrap({w: 1})
    if not w:
        return Poly._wrap({})
    if len(w) == 1:
        return letter_image(code, w)
    head, u = w[:-1], w[-1]
    out: dict = {}
    for left, right, c in coproduct_terms(code):
        left_img = apply_word(left, head)
        if not left_img:
            continue
        if right:
            tail = letter_image(right, u)._terms
        else:
            tail = {u: 1}
        for a, ca in left_img._terms.items():
            for b, cb in tail.items():
                k = a + b
                v = out.get(k, 0) + c * ca * cb
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
    return Poly._wrap(out)


def apply_code(code: str, p: Poly) -> Poly:
    out: dict = {}
    for w, c in p._terms.items():
        _addto(out, apply_word(code, w)._terms, c)
    return Poly._wrap(out)


def rtm_letter(f, u: str) -> Poly:
    """Letter image f(u) for a nonempty forest ``f`` and ``u`` in {"x", "y"}."""
    f = as_forest(f)
    if u not in ("x", "y"):
        raise ValueError(f"not a letter: {u!r}")
    if f.is_unit():
        raise ValueError("rtm_letter needs a nonempty forest")
    return letter_image(f.code, u)


def rtm_apply(f, p) -> Poly:
    """Apply a forest (or a combination of forests) to a polynomial."""
    m = as_map(f)
    p = poly(p)
    out: dict = {}
    for forest, c in m._terms.items():
        _addto(out, apply_code(forest.code, p)._terms, c)
    return Poly._wrap(out)


def clear_caches() -> None:
    letter_image.cache_clear()
    apply_word.cache_clear()


# --------------------------------------------------------------------------
# relations among the maps themselves
# --------------------------------------------------------------------------

@dataclass
class RelationBasis:
    """Kernel basis of an evaluation matrix.

    The relations are certified only on the probed words (``max_word_degree``).
    """

    degree: int
    max_word_degree: int
    n_forests: int
    relations: list = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.relations)

    @property
    def image_dimension(self) -> int:
        return self.n_forests - self.dimension

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "max_word_degree": self.max_word_degree,
            "n_forests": self.n_forests,
            "dimension": self.dimension,
            "relations": [r.to_json() for r in self.relations],
        }


def evaluation_matrix(forests: Iterable, max_word_degree: int) -> np.ndarray:
    """Rows: (input word, output word) coordinates over all words of degree
    1..N; columns: the given homogeneous forests."""
    from .opmat import operator_matrices

    forests = [as_forest(f) for f in forests]
    blocks = []
    for n in range(1, max_word_degree + 1):
        mats = operator_matrices([f.code for f in forests], n, prefix_x=False)
        blocks.append(np.stack([mats[f.code].ravel() for f in forests], axis=1))
    return np.concatenate(blocks, axis=0)


def find_map_relations(d: int, max_word_degree: int) -> RelationBasis:
    """Linear relations among all degree-``d`` rooted tree maps, probed on
    every word of degree <= ``max_word_degree``."""
    from .linalg import integer_kernel, rref_mod_p_blocked

    if d < 1 or max_word_degree < 1:
        raise ValueError("need d >= 1 and N >= 1")
    forests = enumerate_forests(d)
    ev = evaluation_matrix(forests, max_word_degree)
    ev = ev[np.any(ev != 0, axis=1)]
    _, _, src = rref_mod_p_blocked(ev)
    sub = [[int(v) for v in ev[i]] for i in src]
    kern = integer_kernel(sub, len(forests))
    if kern and np.any(ev.astype(object) @ np.array(kern, dtype=object).T):
        # the prime hid a pivot; redo the elimination on every row
        kern = integer_kernel([[int(v) for v in row] for row in ev], len(forests))
    rels = [MapExpr({f: c for f, c in zip(forests, vec) if c}) for vec in kern]
    return RelationBasis(d, max_word_degree, len(forests), rels)
