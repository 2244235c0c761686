"""Exact linear algebra over GF(2), Q and Z/p.

GF(2) matrices keep each row as one Python ``int`` (bit j = column j).
Rational work goes through fraction-free (Bareiss) elimination on integer
rows; modular ranks for large matrices run a blocked elimination whose
inner products go through float64 BLAS, which is exact as long as
``rank * (p - 1)**2 < 2**53``.
"""
from __future__ import annotations

import csv
import io
import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import NonSquare

P1 = 1048573  # 2**20 - 3
P2 = 1048571
MERSENNE61 = 2**61 - 1


# --------------------------------------------------------------------------
# GF(2)
# --------------------------------------------------------------------------

class MatF2:
    """Dense bit matrix over GF(2); each row packed into an int."""

    __slots__ = ("rows", "cols", "bits")

    def __init__(self, rows: int, cols: int, bits: Sequence[int] | None = None):
        self.rows = rows
        self.cols = cols
        mask = (1 << cols) - 1
        self.bits = [b & mask for b in bits] if bits is not None else [0] * rows
        if len(self.bits) != rows:
            raise ValueError(f"expected {rows} rows, got {len(self.bits)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "MatF2":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        bits = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            b = 0
            for j, v in enumerate(r):
                if v % 2:
                    b |= 1 << j
            bits.append(b)
        return cls(len(rows), ncols, bits)

    @classmethod
    def identity(cls, n: int) -> "MatF2":
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "MatF2":
        return cls(rows, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.bits[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(b >> j) & 1 for j in range(self.cols)] for b in self.bits]

    def to_numpy(self) -> np.ndarray:
        return np.array(self.to_lists(), dtype=np.int64).reshape(self.rows, self.cols)

    def transpose(self) -> "MatF2":
        out = [0] * self.cols
        for i, b in enumerate(self.bits):
            j = 0
            while b:
                if b & 1:
                    out[j] |= 1 << i
                b >>= 1
                j += 1
        return MatF2(self.cols, self.rows, out)

    @property
    def T(self) -> "MatF2":
        return self.transpose()

    def __matmul__(self, other: "MatF2") -> "MatF2":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for b in self.bits:
            acc = 0
            k = 0
            while b:
                if b & 1:
                    acc ^= other.bits[k]
                b >>= 1
                k += 1
            out.append(acc)
        return MatF2(self.rows, other.cols, out)

    def __add__(self, other: "MatF2") -> "MatF2":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return MatF2(self.rows, self.cols, [a ^ b for a, b in zip(self.bits, other.bits)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatF2):
            return NotImplemented
        return self.shape == other.shape and self.bits == other.bits

    def hstack(self, other: "MatF2") -> "MatF2":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return MatF2(self.rows, self.cols + other.cols,
                     [a | (b << self.cols) for a, b in zip(self.bits, other.bits)])

    def vstack(self, other: "MatF2") -> "MatF2":
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return MatF2(self.rows + other.rows, self.cols, self.bits + other.bits)

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "MatF2":
        mask = (1 << (c1 - c0)) - 1
        return MatF2(r1 - r0, c1 - c0, [(b >> c0) & mask for b in self.bits[r0:r1]])

    def to_csv(self) -> str:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(self.to_lists())
        return buf.getvalue()

    def __repr__(self) -> str:
        return f"MatF2({self.rows}x{self.cols})"


def rank_f2(m: MatF2) -> int:
    rows = list(m.bits)
    rank = 0
    for col in range(m.cols):
        bit = 1 << col
        pivot = next((i for i in range(rank, len(rows)) if rows[i] & bit), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i] & bit:
                rows[i] ^= rows[rank]
        rank += 1
    return rank


def det_f2(m: MatF2) -> int:
    if m.rows != m.cols:
        raise NonSquare(f"determinant of a {m.rows}x{m.cols} matrix")
    return 1 if rank_f2(m) == m.rows else 0


def vec_f2(coeffs: Iterable[int]) -> int:
    """Pack a 0/1 (or integer, reduced mod 2) vector into an int."""
    b = 0
    for j, v in enumerate(coeffs):
        if v % 2:
            b |= 1 << j
    return b


# --------------------------------------------------------------------------
# Q
# --------------------------------------------------------------------------

def _lcm_denominators(row) -> int:
    d = 1
    for v in row:
        if isinstance(v, Fraction):
            d = d * v.denominator // math.gcd(d, v.denominator)
    return d


class MatQ:
    """Exact rational matrix."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence], cols: int | None = None):
        self.entries = [[_qnorm(v) for v in r] for r in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else (cols or 0)
        if any(len(r) != self.cols for r in self.entries):
            raise ValueError("ragged rows")

    @classmethod
    def identity(cls, n: int) -> "MatQ":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def integer_rows(self) -> list[list[int]]:
        """Rows scaled by their denominators' lcm (same row space)."""
        out = []
        for r in self.entries:
            d = _lcm_denominators(r)
            out.append([int(v * d) for v in r])
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows([[str(v) for v in r] for r in self.entries])
        return buf.getvalue()

    def __repr__(self) -> str:
        return f"MatQ({self.rows}x{self.cols})"


def _qnorm(v):
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else v
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, str):
        return _qnorm(Fraction(v))
    raise TypeError(f"not an exact rational: {v!r}")


def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination with column skipping."""
    m = [list(map(int, r)) for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    prev = 1
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        top = m[r]
        piv = top[c]
        for i in range(r + 1, nrows):
            row = m[i]
            a = row[c]
            if a:
                m[i] = [0] * (c + 1) + [(piv * row[j] - a * top[j]) // prev for j in range(c + 1, ncols)]
            elif piv != prev:
                m[i] = [0] * (c + 1) + [(piv * row[j]) // prev for j in range(c + 1, ncols)]
        prev = piv
        r += 1
        if r == nrows:
            break
    return r


def fraction_free_rref(rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int], int]:
    """Fraction-free Gauss-Jordan.

    Returns ``(R, pivots, D)`` where the first ``len(pivots)`` rows of ``R``
    equal ``D`` times the reduced row echelon form (``D`` is the last pivot).
    """
    a = np.array([[int(v) for v in r] for r in rows], dtype=object)
    if a.size == 0:
        return [list(r) for r in a], [], 1
    nrows, ncols = a.shape
    prev = 1
    r = 0
    pivots: list[int] = []
    for c in range(ncols):
        nz = np.nonzero(a[r:, c] != 0)[0]
        if len(nz) == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        piv = a[r, c]
        others = np.arange(nrows) != r
        col = a[others, c].copy()
        a[others] = (piv * a[others] - np.outer(col, a[r])) // prev
        prev = piv
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return [list(row) for row in a], pivots, prev


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int | None = None) -> list[list[int]]:
    """Integer basis of the right kernel {v : A v = 0} of an integer matrix."""
    if not rows:
        n = ncols or 0
        return [[int(i == j) for i in range(n)] for j in range(n)]
    R, pivots, D = fraction_free_rref(rows)
    n = len(R[0])
    basis = []
    pivset = set(pivots)
    for f in range(n):
        if f in pivset:
            continue
        v = [0] * n
        v[f] = D
        for i, pc in enumerate(pivots):
            v[pc] = -R[i][f]
        g = 0
        for t in v:
            g = math.gcd(g, t)
        if D < 0:
            g = -g
        basis.append([t // g for t in v])
    return basis


def rank_q(m) -> int:
    """Exact rank over Q (fraction-free elimination)."""
    if isinstance(m, MatQ):
        return bareiss_rank(m.integer_rows())
    return bareiss_rank(MatQ(m).integer_rows())


def kernel_q(m) -> list[list[Fraction | int]]:
    """Basis of the right kernel over Q (integer vectors with primitive content)."""
    if not isinstance(m, MatQ):
        m = MatQ(m)
    return integer_kernel(m.integer_rows(), m.cols)


def solve_q(a, b) -> list:
    """Solve a x = b for square nonsingular ``a`` exactly."""
    a = a.entries if isinstance(a, MatQ) else a
    n = len(a)
    if any(len(r) != n for r in a):
        raise NonSquare("solve_q needs a square matrix")
    aug = [[Fraction(v) for v in row] + [Fraction(bi)] for row, bi in zip(a, b)]
    for c in range(n):
        p = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular system")
        aug[c], aug[p] = aug[p], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [v * inv for v in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [u - f * v for u, v in zip(aug[i], aug[c])]
    return [_qnorm(row[-1]) for row in aug]


def inverse_q(a) -> list[list]:
    """Exact inverse of a square rational matrix (Gauss-Jordan on Fractions)."""
    a = a.entries if isinstance(a, MatQ) else a
    n = len(a)
    if any(len(r) != n for r in a):
        raise NonSquare("inverse_q needs a square matrix")
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(a)]
    for c in range(n):
        p = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[p] = aug[p], aug[c]
        inv = 1 / aug[c][c]
        if inv != 1:
            aug[c] = [v * inv for v in aug[c]]
        pr = aug[c]
        for i in range(n):
            if i != c:
                f = aug[i][c]
                if f:
                    aug[i] = [u - f * v for u, v in zip(aug[i], pr)]
    return [[_qnorm(v) for v in row[n:]] for row in aug]


# --------------------------------------------------------------------------
# Z/p
# --------------------------------------------------------------------------

def rank_mod_p(m, p: int = MERSENNE61) -> int:
    """Rank modulo a prime, plain Python integers (any size of p)."""
    rows = [[int(v) % p for v in r] for r in (m.integer_rows() if isinstance(m, MatQ) else m)]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], -1, p)
        top = [(v * inv) % p for v in rows[r]]
        rows[r] = top
        for i in range(r + 1, len(rows)):
            a = rows[i][c]
            if a:
                rows[i] = [(u - a * v) % p for u, v in zip(rows[i], top)]
        r += 1
        if r == len(rows):
            break
    return r


def rref_mod_p_blocked(a: np.ndarray, p: int = P1, block: int = 256):
    """Blocked elimination mod a prime below 2**21.

    Returns ``(rank, pivot_cols, source_rows)`` where ``source_rows`` are the
    indices of input rows that raised the rank (they are linearly
    independent mod p, hence over Q).
    """
    a = np.asarray(a)
    nrows, ncols = a.shape if a.ndim == 2 else (0, 0)
    basis = np.zeros((0, ncols))
    piv: list[int] = []
    src: list[int] = []
    for start in range(0, nrows, block):
        if (len(piv) + block) * (p - 1) ** 2 >= 2**53:
            raise OverflowError("prime too large for exact float64 accumulation")
        blk = np.mod(a[start:start + block], p).astype(np.float64)
        if piv:
            blk = np.mod(blk - blk[:, piv] @ basis, p)
        live = np.nonzero(blk.any(axis=1))[0]
        new_rows: list[np.ndarray] = []
        new_piv: list[int] = []
        n_mat = np.zeros((0, ncols))
        for i in live:
            row = blk[i]
            if new_piv:
                row = np.mod(row - row[new_piv] @ n_mat, p)
            nz = np.flatnonzero(row)
            if len(nz) == 0:
                continue
            c = int(nz[0])
            inv = pow(int(row[c]), -1, p)
            row = np.mod(row * inv, p)
            if new_piv:
                n_mat = np.mod(n_mat - np.outer(n_mat[:, c], row), p)
            n_mat = np.vstack([n_mat, row])
            new_piv.append(c)
            src.append(start + int(i))
        if new_piv:
            if piv:
                basis = np.mod(basis - basis[:, new_piv] @ n_mat, p)
            basis = np.vstack([basis, n_mat])
            piv.extend(new_piv)
        if len(piv) == ncols:
            break
    return len(piv), piv, src


def rank_mod_p_fast(a: np.ndarray, p: int = P1) -> int:
    return rref_mod_p_blocked(a, p)[0]


def certified_rank(a: np.ndarray) -> int:
    """Exact rank over Q of an integer matrix.

    A modular pass picks rows independent mod p (so independent over Q,
    giving a lower bound); an exact integer kernel of those rows that is
    annihilated by the whole matrix gives the matching upper bound.  Falls
    back to full Bareiss elimination if the certificate fails.
    """
    a = np.asarray(a)
    if a.size == 0:
        return 0
    r, _, src = rref_mod_p_blocked(a, P1)
    if r == a.shape[1]:
        return r
    sub = [[int(v) for v in a[i]] for i in src]
    kern = integer_kernel(sub, a.shape[1]) if sub else [
        [int(i == j) for i in range(a.shape[1])] for j in range(a.shape[1])]
    if kern and _annihilates(a, kern):
        return r
    return bareiss_rank(a.tolist())


def _annihilates(a: np.ndarray, kern: list[list[int]]) -> bool:
    kmax = max(abs(v) for row in kern for v in row)
    amax = int(np.abs(a).max()) if a.size else 0
    if amax * kmax * a.shape[1] < 2**62:
        k = np.array(kern, dtype=np.int64).T
        return not np.any(a.astype(np.int64) @ k)
    k = np.array(kern, dtype=object).T
    return not np.any(a.astype(object) @ k)
