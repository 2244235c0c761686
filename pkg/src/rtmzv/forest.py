"""Unordered rooted trees, forests and the Connes-Kreimer coproduct.

Trees and forests are identified with canonical parenthesis strings: a
tree is ``"(" + children + ")"`` with the children's strings sorted
ascending, a forest is its trees' strings sorted ascending and
concatenated.  The single vertex is ``"()"``, the empty forest ``""``.
All heavy lifting happens on these strings so equality and hashing are
plain ``str`` operations.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping

from .errors import ParseError


# --------------------------------------------------------------------------
# string level
# --------------------------------------------------------------------------

@lru_cache(maxsize=1 << 16)
def split_trees(code: str) -> tuple[str, ...]:
    """Top-level tree substrings of a (not necessarily canonical) forest string."""
    out = []
    depth = 0
    start = 0
    for i, ch in enumerate(code):
        if ch == "(":
            if depth == 0:
                start = i
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced forest string {code!r}")
            if depth == 0:
                out.append(code[start:i + 1])
        else:
            raise ParseError(f"unexpected character {ch!r} in forest string {code!r}")
    if depth:
        raise ParseError(f"unbalanced forest string {code!r}")
    return tuple(out)


@lru_cache(maxsize=1 << 16)
def canonical(code: str) -> str:
    """Canonical string of the forest written as ``code``."""
    trees = ["(" + canonical(t[1:-1]) + ")" for t in split_trees(code)]
    return "".join(sorted(trees))


def mul_codes(a: str, b: str) -> str:
    if not a:
        return b
    if not b:
        return a
    return "".join(sorted(split_trees(a) + split_trees(b)))


def degree_of(code: str) -> int:
    return code.count("(")


@lru_cache(maxsize=None)
def coproduct_terms(code: str) -> tuple[tuple[str, str, int], ...]:
    """Δ of a canonical forest as ``((left, right, coeff), ...)``, sorted."""
    trees = split_trees(code)
    if not trees:
        return (("", "", 1),)
    if len(trees) == 1:
        acc = {(code, ""): 1}
        for left, right, c in coproduct_terms(code[1:-1]):
            key = (left, "(" + right + ")")
            acc[key] = acc.get(key, 0) + c
    else:
        acc = {}
        first, rest = trees[0], "".join(trees[1:])
        for l1, r1, c1 in coproduct_terms(first):
            for l2, r2, c2 in coproduct_terms(rest):
                key = (mul_codes(l1, l2), mul_codes(r1, r2))
                acc[key] = acc.get(key, 0) + c1 * c2
    return tuple(sorted((l, r, c) for (l, r), c in acc.items() if c))


# --------------------------------------------------------------------------
# value types
# --------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Forest:
    """A multiset of rooted trees; the empty forest is the unit."""

    code: str = ""

    def __post_init__(self):
        object.__setattr__(self, "code", canonical(self.code))

    @property
    def trees(self) -> tuple["Tree", ...]:
        return tuple(Tree(t) for t in split_trees(self.code))

    @property
    def degree(self) -> int:
        return degree_of(self.code)

    def is_unit(self) -> bool:
        return not self.code

    def __mul__(self, other: "Forest") -> "Forest":
        return forest_mul(self, other)

    def __str__(self) -> str:
        return self.code

    def __repr__(self) -> str:
        return f"Forest({self.code!r})"


@dataclass(frozen=True, order=True)
class Tree:
    code: str = "()"

    def __post_init__(self):
        c = canonical(self.code)
        if len(split_trees(c)) != 1:
            raise ParseError(f"{self.code!r} is not a single tree")
        object.__setattr__(self, "code", c)

    @property
    def children(self) -> Forest:
        return Forest(self.code[1:-1])

    @property
    def degree(self) -> int:
        return degree_of(self.code)

    def as_forest(self) -> Forest:
        return Forest(self.code)

    def __str__(self) -> str:
        return self.code


UNIT = Forest("")
DOT = Forest("()")
LADDER2 = Forest("(())")
CHERRY = Forest("(()())")


def as_forest(f) -> Forest:
    if isinstance(f, Forest):
        return f
    if isinstance(f, Tree):
        return f.as_forest()
    if isinstance(f, str):
        return Forest(f)
    raise TypeError(f"cannot make a forest from {f!r}")


def b_plus(f) -> Tree:
    """Graft all roots of ``f`` onto a new root."""
    return Tree("(" + as_forest(f).code + ")")


def root_decompose(t) -> Forest:
    """The forest obtained by deleting the root of ``t``."""
    if not isinstance(t, Tree):
        t = Tree(t.code if isinstance(t, Forest) else t)
    return Forest(t.code[1:-1])


def forest_mul(f, g) -> Forest:
    return Forest(mul_codes(as_forest(f).code, as_forest(g).code))


class TensorPoly:
    """Finite Q-combination of ordered forest pairs (an element of H ⊗ H)."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple, int | Fraction] | None = None):
        clean: dict = {}
        for (a, b), c in (terms or {}).items():
            key = (as_forest(a), as_forest(b))
            v = clean.get(key, 0) + c
            if v:
                clean[key] = v
            else:
                clean.pop(key, None)
        self._terms = clean

    def items(self) -> list[tuple[tuple[Forest, Forest], int | Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: (kv[0][0].code, kv[0][1].code))

    def __getitem__(self, pair) -> int | Fraction:
        a, b = pair
        return self._terms.get((as_forest(a), as_forest(b)), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Forest, Forest]]:
        return iter(k for k, _ in self.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorPoly):
            return NotImplemented
        return self._terms == other._terms

    def __mul__(self, other: "TensorPoly") -> "TensorPoly":
        acc: dict = {}
        for (a, b), c in self._terms.items():
            for (p, q), d in other._terms.items():
                key = (forest_mul(a, p), forest_mul(b, q))
                acc[key] = acc.get(key, 0) + c * d
        return TensorPoly(acc)

    def to_json(self) -> dict:
        return {"terms": [{"coeff": str(c), "left": a.code, "right": b.code}
                          for (a, b), c in self.items()]}

    @classmethod
    def from_json(cls, data) -> "TensorPoly":
        if isinstance(data, str):
            data = json.loads(data)
        acc: dict = {}
        for t in data["terms"]:
            key = (Forest(t["left"]), Forest(t["right"]))
            c = Fraction(t["coeff"])
            acc[key] = acc.get(key, 0) + (c.numerator if c.denominator == 1 else c)
        return cls(acc)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (a, b), c in self.items():
            pre = "" if c == 1 else ("-" if c == -1 else f"{c} ")
            parts.append(f"{pre}{a.code or 'I'} ⊗ {b.code or 'I'}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"TensorPoly({str(self)!r})"


def coproduct(f) -> TensorPoly:
    """Connes-Kreimer coproduct: Δ(t) = t ⊗ I + (id ⊗ B+) Δ(f_t), multiplicative."""
    f = as_forest(f)
    return TensorPoly({(Forest(a), Forest(b)): c for a, b, c in coproduct_terms(f.code)})


# --------------------------------------------------------------------------
# enumeration
# --------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _tree_codes(d: int) -> tuple[str, ...]:
    if d < 1:
        return ()
    return tuple(sorted("(" + f + ")" for f in _forest_codes(d - 1)))


@lru_cache(maxsize=None)
def _forest_codes(d: int) -> tuple[str, ...]:
    if d == 0:
        return ("",)
    # pool of (size, index, code); a forest is a non-increasing sequence from it
    pool = [(s, i, t) for s in range(1, d + 1) for i, t in enumerate(_tree_codes(s))]
    out = []

    def rec(remaining: int, limit: int, chosen: list[str]) -> None:
        if remaining == 0:
            out.append("".join(sorted(chosen)))
            return
        for j in range(limit, -1, -1):
            s, _, t = pool[j]
            if s <= remaining:
                chosen.append(t)
                rec(remaining - s, j, chosen)
                chosen.pop()

    rec(d, len(pool) - 1, [])
    return tuple(sorted(out))


def enumerate_trees(d: int) -> list[Tree]:
    """All unordered rooted trees with ``d`` vertices, in canonical-string order."""
    return [Tree(c) for c in _tree_codes(d)]


def enumerate_forests(d: int) -> list[Forest]:
    """All forests with ``d`` vertices in canonical-string order; ``[I]`` for d = 0."""
    return [Forest(c) for c in _forest_codes(d)]
