"""Bit-packed linear algebra over the two-element field.

Vectors store their coordinates in a single Python integer (bit ``i`` is
coordinate ``i``), so addition is one XOR.  Matrix algorithms repack rows
into ``uint64`` words and eliminate word-parallel with numpy.

All values are immutable after construction and safe to share between
threads.  Elimination is deterministic: pivots are the first nonzero entry
scanning columns left to right, rows top down.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError

_WORD = 64


@dataclass(frozen=True, slots=True)
class BitVector:
    """An element of (Z/2)^length; coordinate i is bit i of ``bits``."""

    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise ValueError(f"negative length {self.length}")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits do not fit in the stated length")

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(length, 0)

    @classmethod
    def unit(cls, length: int, index: int) -> "BitVector":
        if not 0 <= index < length:
            raise IndexError(f"unit index {index} out of range for length {length}")
        return cls(length, 1 << index)

    @classmethod
    def from_bits(cls, coords: Iterable[int]) -> "BitVector":
        bits = 0
        length = 0
        for c in coords:
            if c not in (0, 1):
                raise ValueError(f"coordinate {c!r} is not a bit")
            bits |= c << length
            length += 1
        return cls(length, bits)

    @classmethod
    def from_string(cls, text: str) -> "BitVector":
        """Parse a bit-string; character i is coordinate i."""
        if text.strip("01"):
            raise ValueError(f"not a bit-string: {text!r}")
        return cls(len(text), int(text[::-1], 2) if text else 0)

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, index: int) -> int:
        if not 0 <= index < self.length:
            raise IndexError(index)
        return (self.bits >> index) & 1

    def __iter__(self):
        bits = self.bits
        for _ in range(self.length):
            yield bits & 1
            bits >>= 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise DimensionError(f"length mismatch: {self.length} vs {other.length}")
        return BitVector(self.length, self.bits ^ other.bits)

    # addition in (Z/2)^n is coordinatewise XOR
    __add__ = __xor__

    def dot(self, other: "BitVector") -> int:
        """Parity of the number of positions where both coordinates are 1."""
        if self.length != other.length:
            raise DimensionError(f"length mismatch: {self.length} vs {other.length}")
        return (self.bits & other.bits).bit_count() & 1

    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> tuple[int, ...]:
        """Indices of the nonzero coordinates, ascending."""
        out = []
        bits = self.bits
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return tuple(out)

    @property
    def is_zero(self) -> bool:
        return self.bits == 0

    def __str__(self) -> str:
        return format(self.bits, f"0{self.length}b")[::-1] if self.length else ""

    def __repr__(self) -> str:
        return f"BitVector.from_string({str(self)!r})"


@dataclass(frozen=True)
class BitMatrix:
    """A rows x cols matrix over Z/2; each row packed like a BitVector."""

    rows: int
    cols: int
    row_bits: tuple[int, ...]
    _words_cache: object = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative shape")
        if len(self.row_bits) != self.rows:
            raise ValueError("row count does not match shape")
        for r in self.row_bits:
            if r < 0 or r >> self.cols:
                raise ValueError("row bits do not fit in the stated width")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_rows(cls, rows: Sequence[BitVector]) -> "BitMatrix":
        if not rows:
            return cls(0, 0, ())
        cols = rows[0].length
        for r in rows:
            if r.length != cols:
                raise DimensionError("rows have differing lengths")
        return cls(len(rows), cols, tuple(r.bits for r in rows))

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> "BitMatrix":
        return cls.from_rows([BitVector.from_string(r) for r in rows])

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.row_bits[i])

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(index)
        return (self.row_bits[i] >> j) & 1

    def words(self) -> np.ndarray:
        """Rows repacked as uint64 words, cached (treat as read-only)."""
        if self._words_cache is None:
            object.__setattr__(self, "_words_cache", _pack_words(self.row_bits, self.cols))
        return self._words_cache

    def apply(self, x: BitVector) -> BitVector:
        """Matrix-vector product; component k is row_k . x."""
        if x.length != self.cols:
            raise DimensionError(f"matrix has {self.cols} cols, vector length {x.length}")
        if self.rows >= 128:
            words = self.words()
            xw = _vector_words(x.bits, self.cols)
            parity = np.bitwise_count(words & xw).sum(axis=1, dtype=np.int64) & 1
            return BitVector(self.rows, _bits_from_parity(parity))
        bits = 0
        xb = x.bits
        for k, row in enumerate(self.row_bits):
            bits |= ((row & xb).bit_count() & 1) << k
        return BitVector(self.rows, bits)

    def to_bit_array(self) -> np.ndarray:
        """Unpack to a (rows, cols) uint8 array of 0/1 entries."""
        if self.rows == 0 or self.cols == 0:
            return np.zeros((self.rows, self.cols), dtype=np.uint8)
        nbytes = (self.cols + 7) // 8
        buf = b"".join(r.to_bytes(nbytes, "little") for r in self.row_bits)
        arr = np.unpackbits(np.frombuffer(buf, dtype=np.uint8), bitorder="little")
        return arr.reshape(self.rows, nbytes * 8)[:, : self.cols]

    @classmethod
    def from_bit_array(cls, arr: np.ndarray) -> "BitMatrix":
        rows, cols = arr.shape
        if rows == 0 or cols == 0:
            return cls(rows, cols, (0,) * rows)
        packed = np.packbits(arr.astype(np.uint8), axis=1, bitorder="little")
        return cls(rows, cols, tuple(int.from_bytes(r.tobytes(), "little") for r in packed))

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_bit_array(self.to_bit_array().T)

    def __str__(self) -> str:
        return "\n".join(str(self.row(i)) for i in range(self.rows))

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"


@dataclass(frozen=True)
class Solution:
    """One solution plus a kernel basis spanning all of them."""

    particular: BitVector
    kernel_basis: tuple[BitVector, ...]


@dataclass(frozen=True)
class Unsolvable:
    """Certificate of inconsistency: a row combination y with y.M = 0 and y.t = 1."""

    witness: BitVector


def _pack_words(row_ints: Sequence[int], total_cols: int) -> np.ndarray:
    nw = max(1, (total_cols + _WORD - 1) // _WORD)
    if not row_ints:
        return np.zeros((0, nw), dtype=np.uint64)
    buf = b"".join(r.to_bytes(nw * 8, "little") for r in row_ints)
    return np.frombuffer(buf, dtype="<u8").reshape(len(row_ints), nw).copy()


def _vector_words(bits: int, length: int) -> np.ndarray:
    nw = max(1, (length + _WORD - 1) // _WORD)
    return np.frombuffer(bits.to_bytes(nw * 8, "little"), dtype="<u8")


def _bits_from_parity(parity: np.ndarray) -> int:
    packed = np.packbits(parity.astype(np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def _row_int(words: np.ndarray, i: int) -> int:
    return int.from_bytes(words[i].tobytes(), "little")


def _rref(words: np.ndarray, pivot_cols: int) -> list[int]:
    """In-place reduced row echelon form; pivots limited to the first
    pivot_cols columns.  Returns the pivot columns in order."""
    m = words.shape[0]
    pivots: list[int] = []
    one = np.uint64(1)
    r = 0
    for c in range(pivot_cols):
        if r == m:
            break
        w, b = divmod(c, _WORD)
        shift = np.uint64(b)
        below = (words[r:, w] >> shift) & one
        hits = np.nonzero(below)[0]
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            words[[r, p]] = words[[p, r]]
        col = (words[:, w] >> shift) & one
        others = np.nonzero(col)[0]
        others = others[others != r]
        if others.size:
            words[others] ^= words[r]
        pivots.append(c)
        r += 1
    return pivots


def _kernel_from_rref(words: np.ndarray, pivots: list[int], cols: int) -> tuple[BitVector, ...]:
    pivot_set = set(pivots)
    col_mask = (1 << cols) - 1
    reduced = [_row_int(words, i) & col_mask for i in range(len(pivots))]
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        bits = 1 << free
        for i, p in enumerate(pivots):
            if (reduced[i] >> free) & 1:
                bits |= 1 << p
        basis.append(BitVector(cols, bits))
    return tuple(basis)


def rank_kernel(matrix: BitMatrix) -> tuple[int, tuple[BitVector, ...]]:
    """Rank and a deterministic kernel basis (one vector per free column)."""
    words = _pack_words(matrix.row_bits, matrix.cols)
    pivots = _rref(words, matrix.cols)
    return len(pivots), _kernel_from_rref(words, pivots, matrix.cols)


def solve(matrix: BitMatrix, target: BitVector) -> Solution | Unsolvable:
    """Solve matrix . x = target over Z/2.

    Returns a Solution whose particular vector has all free variables set
    to 0, together with a kernel basis spanning the full solution set, or
    an Unsolvable certificate exhibiting a row combination that maps to 0
    while hitting a 1 in the target.
    """
    m, n = matrix.rows, matrix.cols
    if target.length != m:
        raise DimensionError(f"matrix has {m} rows, target length {target.length}")
    # augmented layout: [ M | t | I ], the identity block tracks row operations
    total = n + 1 + m
    aug = [
        matrix.row_bits[i] | (((target.bits >> i) & 1) << n) | (1 << (n + 1 + i))
        for i in range(m)
    ]
    words = _pack_words(aug, total)
    pivots = _rref(words, n)
    rank = len(pivots)
    for i in range(rank, m):
        row = _row_int(words, i)
        if (row >> n) & 1:
            witness = row >> (n + 1)
            return Unsolvable(witness=BitVector(m, witness))
    bits = 0
    for i, p in enumerate(pivots):
        if (_row_int(words, i) >> n) & 1:
            bits |= 1 << p
    kernel = _kernel_from_rref(words, pivots, n)
    return Solution(particular=BitVector(n, bits), kernel_basis=kernel)
