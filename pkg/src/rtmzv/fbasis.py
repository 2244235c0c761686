"""The forests F_d, the GF(2) matrix families A, E, B, T and the map f -> f(x).

Index convention: a vector written top-to-bottom is index 0 upward, and
stacked blocks keep their visual order (top block first).  Columns of a
``MatF2`` built from coefficient vectors are indexed by the lexicographic
admissible words of the relevant degree.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import DegreeTooSmall, NonHomogeneous, NotInXHY
from .forest import DOT, Forest, b_plus, forest_mul
from .hpoly import Poly, admissible_words, is_xhy, poly, right_div_y, right_mul, tau_word
from .linalg import MatF2, det_f2, fraction_free_rref
from .rtmap import MapExpr, as_map, rtm_apply, rtm_letter


# --------------------------------------------------------------------------
# vectors
# --------------------------------------------------------------------------

def word_vector(d: int) -> tuple[str, ...]:
    """The 2**(d-2) admissible monomials of degree d, lexicographic."""
    if d < 2:
        raise DegreeTooSmall(f"word_vector needs d >= 2, got {d}")
    return tuple(admissible_words(d))


@lru_cache(maxsize=None)
def forest_vector(d: int) -> tuple[Forest, ...]:
    """f_1 = (•), f_d = (B+(f_{d-1}) ; • f_{d-1})."""
    if d < 1:
        raise DegreeTooSmall(f"forest_vector needs d >= 1, got {d}")
    if d == 1:
        return (DOT,)
    prev = forest_vector(d - 1)
    return tuple(b_plus(f).as_forest() for f in prev) + tuple(forest_mul(DOT, f) for f in prev)


def coords(p: Poly, d: int) -> list:
    """Coordinates of a homogeneous degree-d element of xHy in word_vector(d)."""
    index = {w: i for i, w in enumerate(word_vector(d))}
    v = [0] * len(index)
    for w, c in p.items():
        if w not in index:
            raise NotInXHY(f"monomial {w!r} is not an admissible word of degree {d}")
        v[index[w]] = c
    return v


# --------------------------------------------------------------------------
# matrices over GF(2)
# --------------------------------------------------------------------------

def _eye_bits(n: int, shift: int = 0) -> list[int]:
    return [1 << (i + shift) for i in range(n)]


@lru_cache(maxsize=None)
def mat_A(n: int) -> MatF2:
    """2**(n-1) x 2**n; A_1 = (1 1), then [[A, E, 0], [0, E, A]]."""
    if n < 1:
        raise DegreeTooSmall("mat_A needs n >= 1")
    if n == 1:
        return MatF2(1, 2, [0b11])
    prev = mat_A(n - 1)
    h = 2 ** (n - 2)
    top = [b | e for b, e in zip(prev.bits, _eye_bits(h, 2 * h))]
    bottom = [e | (b << (2 * h)) for e, b in zip(_eye_bits(h, h), prev.bits)]
    return MatF2(2 * h, 4 * h, top + bottom)


@lru_cache(maxsize=None)
def mat_E(d: int, j: int) -> MatF2:
    """2**d x 2**(d-1) interleaving matrices: j = 1 fills rows 0, 2, 4, ...,
    j = 2 fills rows 1, 3, 5, ..."""
    if d < 1:
        raise DegreeTooSmall("mat_E needs d >= 1")
    if j not in (1, 2):
        raise ValueError("j must be 1 or 2")
    n = 2 ** (d - 1)
    bits = [0] * (2 * n)
    for i in range(n):
        bits[2 * i + (j - 1)] = 1 << i
    return MatF2(2 * n, n, bits)


def mat_E_full(d: int) -> MatF2:
    return mat_E(d, 1).hstack(mat_E(d, 2))


@lru_cache(maxsize=None)
def mat_B(d: int) -> MatF2:
    if d < 1:
        raise DegreeTooSmall("mat_B needs d >= 1")
    if d == 1:
        return MatF2(1, 1, [1])
    prev = mat_B(d - 1)
    return (prev @ mat_E(d - 1, 1).T).vstack(prev @ mat_A(d - 1))


@lru_cache(maxsize=None)
def mat_T(d: int) -> MatF2:
    """Permutation matrix with T w_d = tau(w_d)."""
    w = word_vector(d)
    index = {m: i for i, m in enumerate(w)}
    return MatF2(len(w), len(w), [1 << index[tau_word(m)] for m in w])


def _mod2_rows(polys, d: int) -> MatF2:
    return MatF2.from_rows([[c % 2 for c in coords(p, d)] for p in polys])


# --------------------------------------------------------------------------
# the lemmas, checked at a given degree
# --------------------------------------------------------------------------

def verify_lemma1(d: int) -> bool:
    """•(w_d) ≡ A_{d-1} w_{d+1} (mod 2)."""
    if d < 2:
        raise DegreeTooSmall("verify_lemma1 needs d >= 2")
    images = [rtm_apply(DOT, w) for w in word_vector(d)]
    return _mod2_rows(images, d + 1) == mat_A(d - 1)


def _apply_f2(m: MatF2, vec: list[Poly]) -> list[Poly]:
    out = []
    for i in range(m.rows):
        acc = Poly()
        for j in range(m.cols):
            if m[i, j]:
                acc = acc + vec[j]
        out.append(acc)
    return out


def verify_lemma3(d: int) -> bool:
    """w_{d+1} = E2 R_y w_d + E1 R_xy R_y^-1 w_d as exact word identities."""
    if d < 2:
        raise DegreeTooSmall("verify_lemma3 needs d >= 2")
    w = [Poly.word(m) for m in word_vector(d)]
    ry = [right_mul("y", p) for p in w]
    rxy = [right_mul("xy", right_div_y(p)) for p in w]
    lhs = [Poly.word(m) for m in word_vector(d + 1)]
    e2 = _apply_f2(mat_E(d - 1, 2), ry)
    e1 = _apply_f2(mat_E(d - 1, 1), rxy)
    return lhs == [a + b for a, b in zip(e2, e1)]


def verify_lemma4(d: int) -> bool:
    """det(A_{d-1} E2_{d-1}) ≡ 1 (mod 2)."""
    if d < 2:
        raise DegreeTooSmall("verify_lemma4 needs d >= 2")
    return det_f2(mat_A(d - 1) @ mat_E(d - 1, 2)) == 1


def verify_lemma2(d: int) -> bool:
    """det(B_d) ≡ 1 (mod 2)."""
    if d < 1:
        raise DegreeTooSmall("verify_lemma2 needs d >= 1")
    return det_f2(mat_B(d)) == 1


def verify_prop1(d: int) -> bool:
    """f_d(x) ≡ B_d w_{d+1} (mod 2)."""
    if d < 1:
        raise DegreeTooSmall("verify_prop1 needs d >= 1")
    images = [rtm_letter(f, "x") for f in forest_vector(d)]
    return _mod2_rows(images, d + 1) == mat_B(d)


# --------------------------------------------------------------------------
# Θ : f -> f(x)
# --------------------------------------------------------------------------

@lru_cache(maxsize=None)
def theta_matrix(d: int) -> tuple[tuple[int, ...], ...]:
    """Row i: coordinates of forest_vector(d)[i](x) in word_vector(d + 1)."""
    return tuple(tuple(int(c) for c in coords(rtm_letter(f, "x"), d + 1)) for f in forest_vector(d))


@lru_cache(maxsize=None)
def _theta_inverse(d: int) -> tuple[np.ndarray, int]:
    # fraction-free Gauss-Jordan on [Θ | I]; returns (D * Θ^-1, D)
    th = theta_matrix(d)
    n = len(th)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(th)]
    r, pivots, det = fraction_free_rref(aug)
    if pivots[:n] != list(range(n)):
        raise ArithmeticError(f"Θ is singular in degree {d}")
    inv = np.array([row[n:] for row in r[:n]], dtype=object)
    return inv, det


def theta(f) -> Poly:
    """Θ(f) = f(x) for a homogeneous combination of nonempty forests."""
    m = as_map(f)
    degs = m.degrees()
    if len(degs) > 1:
        raise NonHomogeneous(f"theta needs a homogeneous map, got degrees {sorted(degs)}")
    if 0 in degs:
        raise NonHomogeneous("theta is defined on maps of degree >= 1")
    return rtm_apply(m, "x")


def theta_inv(p) -> MapExpr:
    """The unique combination of forest_vector(d) entries whose value at x is p."""
    from fractions import Fraction

    p = poly(p)
    if not p:
        return MapExpr()
    degs = p.degrees()
    if len(degs) != 1:
        raise NonHomogeneous(f"theta_inv needs a homogeneous polynomial, got degrees {sorted(degs)}")
    if not is_xhy(p):
        raise NotInXHY("theta_inv needs every monomial in xHy")
    (deg,) = degs
    d = deg - 1
    c = coords(p, deg)
    inv, det = _theta_inverse(d)
    num = np.array(c, dtype=object) @ inv
    return MapExpr({f: Fraction(a) / det for f, a in zip(forest_vector(d), num) if a})


def theta_matrix_f2(d: int) -> MatF2:
    return MatF2.from_rows([[c % 2 for c in row] for row in theta_matrix(d)])
