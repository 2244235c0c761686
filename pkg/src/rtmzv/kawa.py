"""Relation families in weight k and their ranks.

Two families of elements of xHy are compared weight by weight:

* rooted-tree-map images f(w), f a forest map of degree d >= 1 and w an
  admissible word;
* linear Kawashima elements L_x φ(v * w) for nonempty v, w in Hy.

Both are written in the lexicographic basis of admissible words of weight
k (dimension 2**(k-2)).  ``χ_x = τ L_x φ`` links them: a map f in the
span of the F_d forests satisfies f χ_x = χ_x H_w with w = χ_x^-1 f(y).
"""
from __future__ import annotations

import itertools
import json
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np

from .errors import EmptyArgument, NotInDomain
from .fbasis import forest_vector, theta_inv
from .forest import enumerate_forests
from .hpoly import Poly, admissible_words, hy_words, is_h1, left_mul, phi, poly, tau
from .linalg import P1, P2, certified_rank, rank_mod_p_fast
from .opmat import admissible_images, word_index
from .quasi import harmonic
from .rtmap import MapExpr, as_map, rtm_apply

# Reference counts in weights 2..13: R = independent rooted-tree-map
# relations, C = conjectured number of all linear relations among MZVs of
# that weight (2**(k-2) - d_k, d_k the Zagier dimension).
REFERENCE_TABLE_VERSION = 1
R_REF = {2: 0, 3: 1, 4: 2, 5: 5, 6: 10, 7: 23, 8: 46, 9: 98, 10: 200, 11: 413, 12: 838, 13: 1713}
C_REF = {2: 0, 3: 1, 4: 3, 5: 6, 6: 14, 7: 29, 8: 60, 9: 123, 10: 249, 11: 503, 12: 1012, 13: 2032}


# --------------------------------------------------------------------------
# χ_x
# --------------------------------------------------------------------------

def chi_x(p) -> Poly:
    """τ L_x φ, a bijection Q + Hy -> Q y + xHy raising degree by one."""
    p = poly(p)
    if not is_h1(p):
        raise NotInDomain("chi_x is defined on Q + Hy")
    return tau(left_mul("x", phi(p)))


def chi_x_inv(p) -> Poly:
    """φ L_x^-1 τ; defined on polynomials whose monomials all end in y."""
    p = poly(p)
    for w in p.words():
        if not w.endswith("y"):
            raise NotInDomain(f"chi_x_inv: monomial {w or '1'!r} does not end in y")
    t = tau(p)
    return phi(Poly({w[1:]: c for w, c in t.items()}))


# --------------------------------------------------------------------------
# generators
# --------------------------------------------------------------------------

def _hy_pairs(total: int):
    """Unordered pairs {v, w} of Hy monomials with deg v + deg w = total."""
    for a in range(1, total // 2 + 1):
        b = total - a
        if a < b:
            yield from itertools.product(hy_words(a), hy_words(b))
        else:
            yield from itertools.combinations_with_replacement(hy_words(a), 2)


def kawashima_element(v, w) -> Poly:
    return left_mul("x", phi(harmonic(v, w)))


def kawashima_generators(k: int) -> list[Poly]:
    """L_x φ(v * w) over unordered pairs of Hy monomials of total degree k - 1."""
    if k < 3:
        return []
    return [kawashima_element(v, w) for v, w in _hy_pairs(k - 1)]


def _generator_forests(d: int, use_all_forests: bool):
    return enumerate_forests(d) if use_all_forests else forest_vector(d)


def rtm_generators(k: int, use_all_forests: bool = False) -> list[Poly]:
    """f(w) for f in forest_vector(d) (or every forest of degree d), 1 <= d <= k-2,
    and w an admissible word of degree k - d."""
    out = []
    for d in range(1, k - 1):
        for f in _generator_forests(d, use_all_forests):
            for w in admissible_words(k - d):
                out.append(rtm_apply(f, w))
    return out


def relation_vector(p: Poly, k: int) -> np.ndarray:
    """Coordinates of a weight-k element of xHy in the admissible basis."""
    v = np.zeros(2 ** (k - 2), dtype=np.int64)
    for w, c in p.items():
        if len(w) != k or w[0] != "x" or w[-1] != "y":
            raise NotInDomain(f"{w!r} is not an admissible word of weight {k}")
        v[word_index(w[1:-1])] = int(c)
    return v


def rtm_generator_matrix(k: int, use_all_forests: bool = False) -> np.ndarray:
    """Rows: the rooted-tree-map generators of weight k, built slice-wise."""
    if k < 3:
        return np.zeros((0, max(2 ** (k - 2), 1) if k >= 2 else 0), dtype=np.int64)
    targets = {}
    order = []
    for d in range(1, k - 1):
        for f in _generator_forests(d, use_all_forests):
            targets[f.code] = k - d
            order.append(f.code)
    images = admissible_images(targets)
    return np.concatenate([images[c] for c in order], axis=0)


def _phi_dense(a: np.ndarray, n: int) -> np.ndarray:
    # rows are coefficient vectors over words of length n; x -> x + y, y -> -y
    t = a.reshape((a.shape[0],) + (2,) * n).copy()
    for ax in range(1, n + 1):
        xs = [slice(None)] * (n + 1)
        ys = [slice(None)] * (n + 1)
        xs[ax] = 0
        ys[ax] = 1
        t[tuple(ys)] = t[tuple(xs)] - t[tuple(ys)]
    return t.reshape(a.shape[0], 2**n)


def kawashima_generator_matrix(k: int, chunk: int = 512) -> np.ndarray:
    """Rows: L_x φ(v * w) for the unordered Hy pairs of total degree k - 1."""
    if k < 3:
        return np.zeros((0, max(2 ** (k - 2), 1) if k >= 2 else 0), dtype=np.int64)
    n = k - 1
    blocks = []
    pairs = list(_hy_pairs(n))
    for start in range(0, len(pairs), chunk):
        part = pairs[start:start + chunk]
        dense = np.zeros((len(part), 2**n), dtype=np.int64)
        for i, (v, w) in enumerate(part):
            for m, c in harmonic(v, w).items():
                dense[i, word_index(m)] = c
        blocks.append(_phi_dense(dense, n)[:, 1::2])
    return np.concatenate(blocks, axis=0)


# --------------------------------------------------------------------------
# ranks
# --------------------------------------------------------------------------

@dataclass
class RankReport:
    k: int
    r_rtm: int
    r_kaw: int
    r_joint: int
    R_ref: int | None
    C_ref: int | None

    @property
    def matches_reference(self) -> bool:
        return self.R_ref is None or self.r_rtm == self.R_ref

    @property
    def spans_equal(self) -> bool:
        return self.r_rtm == self.r_kaw == self.r_joint

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data) -> "RankReport":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(**{f: data[f] for f in ("k", "r_rtm", "r_kaw", "r_joint", "R_ref", "C_ref")})


def matrix_rank(a: np.ndarray, exact: bool = True) -> int:
    """Rank over Q.  ``exact`` certifies it; otherwise two primes must agree."""
    if a.size == 0:
        return 0
    if exact:
        return certified_rank(a)
    r1 = rank_mod_p_fast(a, P1)
    r2 = rank_mod_p_fast(a, P2)
    if r1 != r2:
        # rank mod p never exceeds the rational rank
        return max(r1, r2)
    return r1


def weight_report(k: int, use_all_forests: bool = False, exact: bool | None = None,
                  kawashima: bool = True) -> RankReport:
    if exact is None:
        exact = k <= 10
    rtm = rtm_generator_matrix(k, use_all_forests)
    r_rtm = matrix_rank(rtm, exact)
    if kawashima:
        kaw = kawashima_generator_matrix(k)
        r_kaw = matrix_rank(kaw, exact)
        joint = np.concatenate([rtm, kaw], axis=0) if rtm.size and kaw.size else (rtm if rtm.size else kaw)
        r_joint = matrix_rank(joint, exact)
    else:
        r_kaw = r_joint = -1
    return RankReport(k, r_rtm, r_kaw, r_joint, R_REF.get(k), C_REF.get(k))


def rank_table(k_max: int, use_all_forests: bool = False, exact_upto: int = 10,
               kawashima: bool = True, k_min: int = 2) -> list[RankReport]:
    if k_max < 2:
        raise ValueError("k_max must be >= 2")
    return [weight_report(k, use_all_forests, exact=k <= exact_upto, kawashima=kawashima)
            for k in range(k_min, k_max + 1)]


def verify_span_equality(k: int) -> bool:
    rep = weight_report(k)
    return rep.spans_equal


def span_contains(basis: np.ndarray, vectors: np.ndarray) -> bool:
    """Exact test that every row of ``vectors`` lies in the row space of ``basis``."""
    if vectors.size == 0:
        return True
    if basis.size == 0:
        return not np.any(vectors)
    return certified_rank(basis) == certified_rank(np.concatenate([basis, vectors], axis=0))


# --------------------------------------------------------------------------
# intertwining and the constructive decomposition
# --------------------------------------------------------------------------

def intertwiner(f) -> Poly:
    """The w with f χ_x = χ_x H_w, namely χ_x^-1 f(y)."""
    return chi_x_inv(rtm_apply(as_map(f), "y"))


def intertwine_check(f, max_degree: int) -> bool:
    f = as_map(f)
    allowed = {g for d in f.degrees() for g in forest_vector(d)}
    if not set(f.forests()) <= allowed:
        raise ValueError("intertwine_check needs a map supported on forest_vector entries")
    w = intertwiner(f)
    for n in range(1, max_degree + 1):
        for v in hy_words(n):
            if rtm_apply(f, chi_x(v)) != chi_x(harmonic(w, v)):
                return False
    return True


def kawashima_decompose(v, w) -> tuple[MapExpr, Poly]:
    """(f, u) with f in the F-span and u admissible such that f(u) = χ_x(w * v)."""
    v, w = poly(v), poly(w)
    if not v or not w:
        raise EmptyArgument("kawashima_decompose needs nonzero v and w")
    for name, p in (("v", v), ("w", w)):
        if "" in p or not is_h1(p):
            raise NotInDomain(f"{name} must lie in Hy")
    f = -theta_inv(chi_x(w))
    u = chi_x(v)
    return f, u
