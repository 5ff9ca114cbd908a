"""Dense bit-packed linear algebra over GF(2).

Vectors and matrices pack their coordinates into ``uint64`` words, row-major,
with coordinate ``j`` at bit ``j & 63`` of word ``j >> 6``. Padding bits past
the logical length are always zero. Both types are immutable.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import DimensionError

MAX_LENGTH = 1 << 16


def _nwords(n: int) -> int:
    return (n + 63) >> 6


def _pack(bits: np.ndarray) -> np.ndarray:
    """Pack a 2-D 0/1 array into uint64 words along the last axis."""
    bits = np.asarray(bits, dtype=np.uint8) & 1
    r, c = bits.shape
    padded = np.zeros((r, _nwords(c) * 64), dtype=np.uint8)
    padded[:, :c] = bits
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64).reshape(r, -1)


def _unpack(words: np.ndarray, n: int) -> np.ndarray:
    r = words.shape[0]
    if r == 0:
        return np.zeros((0, n), dtype=np.uint8)
    as_bytes = np.ascontiguousarray(words, dtype="<u8").view(np.uint8).reshape(r, -1)
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :n]


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


class BitVector:
    """A vector in ``Z_2^n``."""

    __slots__ = ("length", "words")

    def __init__(self, words: np.ndarray, length: int):
        if length < 0 or length > MAX_LENGTH:
            raise DimensionError(f"vector length {length} out of range")
        words = np.ascontiguousarray(words, dtype=np.uint64).reshape(-1)
        if words.size != _nwords(length):
            raise DimensionError("word count does not match length")
        self.length = length
        self.words = _frozen(words)

    @classmethod
    def from_bits(cls, bits: Iterable[int] | str) -> BitVector:
        if isinstance(bits, str):
            bits = [int(ch) for ch in bits if ch in "01"]
        arr = np.asarray(list(bits), dtype=np.uint8).reshape(1, -1)
        return cls(_pack(arr)[0], arr.shape[1])

    @classmethod
    def zeros(cls, n: int) -> BitVector:
        return cls(np.zeros(_nwords(n), dtype=np.uint64), n)

    @classmethod
    def basis(cls, n: int, i: int) -> BitVector:
        bits = np.zeros(n, dtype=np.uint8)
        bits[i] = 1
        return cls.from_bits(bits)

    @classmethod
    def from_int(cls, value: int, n: int) -> BitVector:
        """Vector whose coordinate ``j`` is bit ``j`` of ``value``."""
        words = [(value >> (64 * i)) & 0xFFFFFFFFFFFFFFFF for i in range(_nwords(n))]
        return cls(np.array(words, dtype=np.uint64), n)

    def to_int(self) -> int:
        return sum(int(w) << (64 * i) for i, w in enumerate(self.words))

    def bits(self) -> np.ndarray:
        return _unpack(self.words.reshape(1, -1), self.length)[0]

    @property
    def weight(self) -> int:
        return int(kernels.popcount_rows(self.words.reshape(1, -1))[0])

    @property
    def is_odd(self) -> bool:
        return self.weight % 2 == 1

    def support(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.bits())]

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return int((self.words[i >> 6] >> np.uint64(i & 63)) & np.uint64(1))

    def __len__(self) -> int:
        return self.length

    def __add__(self, other: BitVector) -> BitVector:
        _check_same_length(self, other)
        return BitVector(self.words ^ other.words, self.length)

    __xor__ = __add__
    __sub__ = __add__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self.length == other.length and bool(np.array_equal(self.words, other.words))

    def __hash__(self) -> int:
        return hash((self.length, self.words.tobytes()))

    def __repr__(self) -> str:
        return f"BitVector('{''.join(map(str, self.bits()))}')"


def _check_same_length(a: BitVector, b: BitVector) -> None:
    if a.length != b.length:
        raise DimensionError(f"length mismatch: {a.length} vs {b.length}")


def dot(a: BitVector, b: BitVector) -> int:
    """The (indefinite) dot product ``sum a_i b_i mod 2``."""
    _check_same_length(a, b)
    return int(kernels.popcount_rows((a.words & b.words).reshape(1, -1))[0]) & 1


class BitMatrix:
    """A dense ``rows x cols`` matrix over GF(2)."""

    __slots__ = ("rows", "cols", "words")

    def __init__(self, words: np.ndarray, rows: int, cols: int):
        if cols > MAX_LENGTH or rows > MAX_LENGTH:
            raise DimensionError("matrix dimension exceeds 2**16")
        words = np.ascontiguousarray(words, dtype=np.uint64).reshape(rows, _nwords(cols))
        self.rows = rows
        self.cols = cols
        self.words = _frozen(words)

    # construction -----------------------------------------------------
    @classmethod
    def from_array(cls, bits) -> BitMatrix:
        arr = np.asarray(bits, dtype=np.uint8)
        if arr.ndim != 2:
            raise DimensionError("expected a 2-D array")
        return cls(_pack(arr), arr.shape[0], arr.shape[1])

    @classmethod
    def from_rows(cls, rows: Sequence[BitVector], cols: int | None = None) -> BitMatrix:
        if not rows:
            if cols is None:
                raise DimensionError("cannot infer width of an empty row list")
            return cls.zeros(0, cols)
        n = rows[0].length
        for v in rows:
            if v.length != n:
                raise DimensionError("rows have different lengths")
        return cls(np.stack([v.words for v in rows]), len(rows), n)

    @classmethod
    def from_columns(cls, columns: Sequence[BitVector]) -> BitMatrix:
        return cls.from_rows(columns).T

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BitMatrix:
        return cls(np.zeros((rows, _nwords(cols)), dtype=np.uint64), rows, cols)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls.from_array(np.eye(n, dtype=np.uint8))

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> BitMatrix:
        """Matrix sending basis vector ``e_i`` to ``e_{perm[i]}``."""
        n = len(perm)
        arr = np.zeros((n, n), dtype=np.uint8)
        arr[np.asarray(perm), np.arange(n)] = 1
        return cls.from_array(arr)

    @classmethod
    def from_string(cls, text: str) -> BitMatrix:
        return parse_matrix(text)

    # access ------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def to_array(self) -> np.ndarray:
        return _unpack(self.words, self.cols)

    def row(self, i: int) -> BitVector:
        return BitVector(self.words[i].copy(), self.cols)

    def column(self, j: int) -> BitVector:
        return BitVector.from_bits(self.to_array()[:, j])

    def row_list(self) -> list[BitVector]:
        return [self.row(i) for i in range(self.rows)]

    def column_list(self) -> list[BitVector]:
        return self.T.row_list()

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return int((self.words[i, j >> 6] >> np.uint64(j & 63)) & np.uint64(1))

    def row_weights(self) -> np.ndarray:
        return kernels.popcount_rows(self.words)

    def to_string(self) -> str:
        return "\n".join("".join(map(str, r)) for r in self.to_array())

    # algebra -----------------------------------------------------------
    @property
    def T(self) -> BitMatrix:
        return BitMatrix.from_array(self.to_array().T)

    transpose = T

    def __matmul__(self, other):
        if isinstance(other, BitVector):
            return self.apply(other)
        return matmul(self, other)

    def apply(self, v: BitVector) -> BitVector:
        if v.length != self.cols:
            raise DimensionError(f"cannot apply {self.shape} matrix to length-{v.length} vector")
        par = kernels.popcount_rows(self.words & v.words) & 1
        return BitVector.from_bits(par.astype(np.uint8))

    def __add__(self, other: BitMatrix) -> BitMatrix:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch: {self.shape} vs {other.shape}")
        return BitMatrix(self.words ^ other.words, self.rows, self.cols)

    __xor__ = __add__
    __sub__ = __add__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.words, other.words))

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.words.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"

    def kron(self, other: BitMatrix) -> BitMatrix:
        return BitMatrix.from_array(np.kron(self.to_array(), other.to_array()))

    def hstack(self, *others: BitMatrix) -> BitMatrix:
        return BitMatrix.from_array(np.hstack([self.to_array()] + [o.to_array() for o in others]))

    def vstack(self, *others: BitMatrix) -> BitMatrix:
        return BitMatrix.from_array(np.vstack([self.to_array()] + [o.to_array() for o in others]))

    def take_rows(self, idx: Sequence[int]) -> BitMatrix:
        idx = np.asarray(idx, dtype=np.intp)
        return BitMatrix(self.words[idx], len(idx), self.cols)

    def delete_rows(self, idx: Iterable[int]) -> BitMatrix:
        keep = np.setdiff1d(np.arange(self.rows), np.fromiter(idx, dtype=np.intp))
        return self.take_rows(keep)

    def rank(self) -> int:
        return kernels.rank(self.words, self.cols)

    def rref(self) -> tuple[BitMatrix, list[int]]:
        """Reduced row echelon form (leftmost pivots) and pivot columns."""
        m = np.array(self.words, copy=True)
        pivots: list[int] = []
        rk = 0
        for col in range(self.cols):
            if rk == self.rows:
                break
            w = col >> 6
            bit = np.uint64(1) << np.uint64(col & 63)
            hits = np.flatnonzero(m[rk:, w] & bit)
            if hits.size == 0:
                continue
            piv = rk + int(hits[0])
            if piv != rk:
                m[[rk, piv]] = m[[piv, rk]]
            others = np.flatnonzero(m[:, w] & bit)
            others = others[others != rk]
            if others.size:
                m[others] ^= m[rk]
            pivots.append(col)
            rk += 1
        return BitMatrix(m, self.rows, self.cols), pivots

    def row_basis(self) -> BitMatrix:
        """Independent rows spanning the row space (the nonzero RREF rows)."""
        r, pivots = self.rref()
        return r.take_rows(range(len(pivots)))

    def nullspace(self) -> BitMatrix:
        """Rows form a basis of ``{x : M x = 0}``."""
        r, pivots = self.rref()
        a = r.to_array()
        free = [j for j in range(self.cols) if j not in set(pivots)]
        if not free:
            return BitMatrix.zeros(0, self.cols)
        basis = np.zeros((len(free), self.cols), dtype=np.uint8)
        for t, f in enumerate(free):
            basis[t, f] = 1
            for i, p in enumerate(pivots):
                basis[t, p] = a[i, f]
        return BitMatrix.from_array(basis)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        _require_square(self)
        return self == self.T

    def is_idempotent(self) -> bool:
        _require_square(self)
        return self @ self == self

    def is_unitary(self) -> bool:
        _require_square(self)
        return self @ self.T == BitMatrix.identity(self.rows)

    def left_inverse_exists(self) -> bool:
        return self.rank() == self.cols


def _require_square(m: BitMatrix) -> None:
    if not m.is_square:
        raise DimensionError(f"expected a square matrix, got {m.shape}")


def matmul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    prod = a.to_array().astype(np.int32) @ b.to_array().astype(np.int32)
    return BitMatrix.from_array(prod & 1)


def rank(m: BitMatrix) -> int:
    return m.rank()


def is_symmetric(m: BitMatrix) -> bool:
    return m.is_symmetric()


def is_idempotent(m: BitMatrix) -> bool:
    return m.is_idempotent()


def left_inverse_exists(m: BitMatrix) -> bool:
    return m.left_inverse_exists()


# text format -----------------------------------------------------------


def parse_matrix(text: str) -> BitMatrix:
    """Parse a grid of 0/1 characters, one row per line; spaces are ignored.

    Blank lines and lines starting with ``#`` are skipped.
    """
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        bits = [c for c in line if not c.isspace()]
        if any(c not in "01" for c in bits):
            raise ValueError(f"invalid character in matrix row {line!r}")
        rows.append([int(c) for c in bits])
    if not rows:
        raise ValueError("no matrix rows found")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise DimensionError("matrix rows have different lengths")
    return BitMatrix.from_array(np.array(rows, dtype=np.uint8))


def parse_matrices(text: str) -> list[BitMatrix]:
    """Parse several matrix grids separated by blank lines."""
    blocks, current = [], []
    for line in text.splitlines():
        if line.strip() and not line.strip().startswith("#"):
            current.append(line)
        elif current:
            blocks.append("\n".join(current))
            current = []
    if current:
        blocks.append("\n".join(current))
    return [parse_matrix(b) for b in blocks]


def load_matrix(path: str | Path) -> BitMatrix:
    return parse_matrix(Path(path).read_text())


def format_matrix(m: BitMatrix, sep: str = " ") -> str:
    return "\n".join(sep.join(map(str, r)) for r in m.to_array())
