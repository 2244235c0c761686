"""Dense integer matrices of rooted tree maps on whole degree slices.

Words of length n index vectors of length 2**n (x = 0, y = 1, first letter
most significant), so concatenation of a length-a word with a length-b word
is the Kronecker index ``i * 2**b + j``.  The coproduct recursion then
reads, for a forest g and input words of length n,

    M_g[:, 2c + u] = sum over Δ(g) = Σ l ⊗ r of  kron(M_l[:, c], r(u))

with ``r(u)`` the letter image (``u`` itself for the empty forest).  When
every input word starts with x so does every output, and both index
spaces shrink to their first half.

This is a second, independent route to the same numbers as
:func:`rtmzv.rtmap.rtm_apply`; the test-suite checks one against the other.
"""
from __future__ import annotations

import numpy as np

from .forest import coproduct_terms, degree_of
from .rtmap import letter_image

_LIMIT = 2**62


def word_index(w: str) -> int:
    return int(w.translate(_BITS), 2) if w else 0


_BITS = str.maketrans("xy", "01")


def poly_vector(p, length: int) -> np.ndarray:
    """Coefficient vector of a homogeneous integer polynomial of degree ``length``."""
    v = np.zeros(2**length, dtype=np.int64)
    for w, c in p._terms.items():
        if len(w) != length:
            raise ValueError(f"term {w!r} is not of degree {length}")
        v[word_index(w)] = int(c)
    return v


def _letter_vec(code: str, u: int) -> np.ndarray:
    if not code:
        v = np.zeros(2, dtype=np.int64)
        v[u] = 1
        return v
    return poly_vector(letter_image(code, "xy"[u]), degree_of(code) + 1)


def _closure(needs: dict[str, int]) -> tuple[dict[str, int], dict[str, int]]:
    """Propagate 'needed at input length n' to all left coproduct factors.

    Returns ``(need, as_left)``: the largest input length at which each
    forest's matrix is required, and the largest at which it is consumed
    as a left factor by another forest.
    """
    need = dict(needs)
    as_left: dict[str, int] = {}
    stack = list(need)
    while stack:
        g = stack.pop()
        n = need[g]
        if n <= 1:
            continue
        for left, _, _ in coproduct_terms(g):
            if as_left.get(left, 0) < n - 1:
                as_left[left] = n - 1
            if need.get(left, 0) < n - 1:
                need[left] = n - 1
                stack.append(left)
    return need, as_left


def _base(code: str, prefix_x: bool) -> np.ndarray:
    d = degree_of(code)
    if prefix_x:
        if not code:
            return np.ones((1, 1), dtype=np.int64)
        return _letter_vec(code, 0)[: 2**d].reshape(-1, 1)
    if not code:
        return np.eye(2, dtype=np.int64)
    return np.stack([_letter_vec(code, 0), _letter_vec(code, 1)], axis=1)


def _step(code: str, prev: dict, n: int, prefix_x: bool, letters=(0, 1)) -> np.ndarray:
    """Matrix of ``code`` on words of length n from the level n-1 matrices."""
    d = degree_of(code)
    rows = 2 ** (n + d - (1 if prefix_x else 0))
    cprev = 2 ** (n - 1 - (1 if prefix_x else 0))
    out = np.zeros((rows, len(letters) * cprev), dtype=np.int64)
    bound = 0
    terms = coproduct_terms(code)
    for left, right, c in terms:
        ml, lmax = prev[left]
        for k, u in enumerate(letters):
            q = _letter_vec(right, u)
            bound += abs(c) * lmax * int(np.abs(q).max())
    if bound >= _LIMIT:
        raise OverflowError(f"coefficients of {code!r} on degree {n} words may exceed int64")
    stride = len(letters)
    for left, right, c in terms:
        ml, _ = prev[left]
        r_l = ml.shape[0]
        for k, u in enumerate(letters):
            q = _letter_vec(right, u)
            contrib = (ml[:, None, :] * q[None, :, None]).reshape(r_l * q.shape[0], cprev)
            if c != 1:
                contrib *= c
            out[:, k::stride] += contrib
    return out


def _run(targets: dict[str, int], prefix_x: bool, final_y_only: bool = False) -> dict[str, np.ndarray]:
    need, as_left = _closure(targets)
    top = max(need.values(), default=0)
    cur = {}
    for g in need:
        m = _base(g, prefix_x)
        cur[g] = (m, int(np.abs(m).max()) if m.size else 0)
    done = {g: cur[g][0] for g, n in targets.items() if n == 1}
    for n in range(2, top + 1):
        nxt = {}
        for g, m in need.items():
            if m < n:
                continue
            reused = as_left.get(g, 0) >= n
            y_only = final_y_only and targets.get(g) == n and not reused
            mat = _step(g, cur, n, prefix_x, letters=(1,) if y_only else (0, 1))
            if targets.get(g) == n:
                done[g] = mat
            if reused:
                nxt[g] = (mat, int(np.abs(mat).max()) if mat.size else 0)
        cur = nxt
    return done


def operator_matrices(codes, n: int, prefix_x: bool = False) -> dict[str, np.ndarray]:
    """``{code: M}`` with ``M[:, j]`` the image of the j-th word of length n.

    With ``prefix_x`` only words starting with x are used (rows and columns).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    return _run({c: n for c in codes}, prefix_x)


def admissible_images(targets: dict[str, int]) -> dict[str, np.ndarray]:
    """For ``{code: n}`` return arrays whose rows are the images of the
    admissible words of length n (lexicographic), written in the
    lexicographic basis of admissible words of length n + deg(code)."""
    raw = _run(targets, prefix_x=True, final_y_only=True)
    out = {}
    for g, n in targets.items():
        if n < 2:
            raise ValueError("admissible words have length >= 2")
        m = raw[g]
        if m.shape[1] == 2 ** (n - 1):
            m = m[:, 1::2]
        out[g] = np.ascontiguousarray(m[1::2].T)
    return out
