"""Numpy implementations of the bit-level kernels.

Every function here has a twin of the same name and signature in the Cython
module ``_ckernels``; :mod:`bframe.kernels` picks one at import time.
Matrices are ``(rows, words)`` arrays of ``uint64`` with column ``j`` stored
in word ``j >> 6`` at bit ``j & 63``.
"""

from __future__ import annotations

import numpy as np

# Size of the precomputed low table in min_weight_span (2**LOW_BITS rows).
LOW_BITS = 20

if hasattr(np, "bitwise_count"):

    def popcount_rows(words: np.ndarray) -> np.ndarray:
        return np.bitwise_count(words).sum(axis=-1, dtype=np.int64)

else:  # numpy < 2.0
    _BYTE_WEIGHT = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)

    def popcount_rows(words: np.ndarray) -> np.ndarray:
        as_bytes = np.ascontiguousarray(words).view(np.uint8)
        return _BYTE_WEIGHT[as_bytes].reshape(*words.shape[:-1], -1).sum(axis=-1)


def rank(words: np.ndarray, ncols: int) -> int:
    """GF(2) rank by leftmost-pivot elimination (input is not modified)."""
    m = np.array(words, dtype=np.uint64, copy=True)
    nrows = m.shape[0]
    rk = 0
    for col in range(ncols):
        if rk == nrows:
            break
        w = col >> 6
        bit = np.uint64(1) << np.uint64(col & 63)
        hits = np.flatnonzero(m[rk:, w] & bit)
        if hits.size == 0:
            continue
        piv = rk + int(hits[0])
        if piv != rk:
            m[[rk, piv]] = m[[piv, rk]]
        below = rk + 1 + np.flatnonzero(m[rk + 1 :, w] & bit)
        if below.size:
            m[below] ^= m[rk]
        rk += 1
    return rk


def min_weight_span(basis: np.ndarray) -> tuple[int, int]:
    """Minimum Hamming weight over the nonzero vectors spanned by ``basis``.

    Returns ``(weight, combo)`` where bit ``i`` of ``combo`` selects basis row
    ``i`` in one minimizing combination. Raises ``ValueError`` when the span
    is the zero space.
    """
    basis = np.ascontiguousarray(basis, dtype=np.uint64)
    r, w = basis.shape
    if r == 0:
        raise ValueError("empty basis")
    t = min(r, LOW_BITS)
    table = np.zeros((1 << t, w), dtype=np.uint64)
    for i in range(t):
        table[1 << i : 2 << i] = table[: 1 << i] ^ basis[i]
    base_weights = popcount_rows(table)
    high = basis[t:]
    big = np.iinfo(np.int64).max

    best, best_combo = big, 0
    cur = np.zeros(w, dtype=np.uint64)
    gray = 0
    for g in range(1 << (r - t)):
        if g:
            bit = (g & -g).bit_length() - 1
            cur ^= high[bit]
            gray ^= 1 << bit
            weights = popcount_rows(table ^ cur)
        else:
            weights = base_weights.copy()
        weights[weights == 0] = big
        j = int(np.argmin(weights))
        if weights[j] < best:
            best = int(weights[j])
            best_combo = j | (gray << t)
    if best == big:
        raise ValueError("basis spans the zero space")
    return best, best_combo
