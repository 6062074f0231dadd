"""
Dense matrices over GF(2).

A BitMatrix wraps a read-only uint8 numpy array of 0/1 entries. Elimination
always runs on a copy, so matrices can be cached and shared freely.

Text form: one row per line of '0'/'1' characters, column 0 leftmost.
JSON form: {"rows": r, "cols": c, "row_strings": [...]}.
"""

from __future__ import annotations

import json
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from ..errors import DimensionMismatchError, FixtureParseError, LdgmError, RankDeficientError

# popcount of every byte value, used on uint8 views of packed words
POPCOUNT8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)


class BitMatrix:
    """Immutable rows x cols matrix over GF(2)."""

    def __init__(self, bits: Sequence[Sequence[int]] | np.ndarray, cols: int | None = None) -> None:
        arr = np.array(bits, dtype=np.int64, copy=True)
        if arr.size == 0:
            n_cols = cols if cols is not None else (arr.shape[1] if arr.ndim == 2 else 0)
            arr = np.zeros((arr.shape[0] if arr.ndim == 2 else 0, n_cols), dtype=np.int64)
        if arr.ndim != 2:
            raise DimensionMismatchError(f"BitMatrix needs a 2-D array, got shape {arr.shape}")
        if np.any((arr != 0) & (arr != 1)):
            raise LdgmError("BitMatrix entries must be 0 or 1")
        self._bits = arr.astype(np.uint8)
        self._bits.setflags(write=False)

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(np.zeros((rows, cols), dtype=np.uint8), cols=cols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(np.eye(n, dtype=np.uint8), cols=n)

    @classmethod
    def from_row_strings(cls, row_strings: Iterable[str], cols: int | None = None) -> "BitMatrix":
        rows = [r.strip() for r in row_strings]
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise FixtureParseError(f"Ragged bit-matrix rows (widths {sorted(widths)})")
        for r in rows:
            if set(r) - {"0", "1"}:
                raise FixtureParseError(f"Bit-matrix row contains characters other than 0/1: {r!r}")
        bits = [[int(ch) for ch in r] for r in rows]
        return cls(np.array(bits, dtype=np.uint8).reshape(len(rows), widths.pop() if widths else (cols or 0)), cols=cols)

    @classmethod
    def from_text(cls, text: str) -> "BitMatrix":
        lines = [ln.strip() for ln in text.splitlines()]
        return cls.from_row_strings([ln for ln in lines if ln and not ln.startswith("#")])

    @classmethod
    def from_json(cls, payload: dict | str) -> "BitMatrix":
        data = json.loads(payload) if isinstance(payload, str) else payload
        mat = cls.from_row_strings(data.get("row_strings", []), cols=int(data["cols"]))
        if mat.shape != (int(data["rows"]), int(data["cols"])):
            raise FixtureParseError(f"Declared shape {(data['rows'], data['cols'])} does not match rows {mat.shape}")
        return mat

    # ------------------------------------------------------------------
    # Basic queries
    # ------------------------------------------------------------------

    @property
    def bits(self) -> np.ndarray:
        return self._bits

    @property
    def rows(self) -> int:
        return int(self._bits.shape[0])

    @property
    def cols(self) -> int:
        return int(self._bits.shape[1])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def row(self, i: int) -> np.ndarray:
        return self._bits[i]

    def col(self, j: int) -> np.ndarray:
        return self._bits[:, j]

    def row_weights(self) -> np.ndarray:
        return self._bits.sum(axis=1, dtype=np.int64)

    def col_weights(self) -> np.ndarray:
        return self._bits.sum(axis=0, dtype=np.int64)

    def is_zero(self) -> bool:
        return not self._bits.any()

    @cached_property
    def packed(self) -> np.ndarray:
        """Rows packed into uint64 words; only meaningful for XOR and popcount."""
        return pack_rows(self._bits)

    # ------------------------------------------------------------------
    # Algebra
    # ------------------------------------------------------------------

    @property
    def T(self) -> "BitMatrix":
        return BitMatrix(self._bits.T, cols=self.rows)

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(f"Cannot multiply {self.shape} by {other.shape}")
        prod = (self._bits.astype(np.int64) @ other._bits.astype(np.int64)) & 1
        return BitMatrix(prod, cols=other.cols)

    def hstack(self, other: "BitMatrix") -> "BitMatrix":
        if self.rows != other.rows:
            raise DimensionMismatchError(f"Cannot hstack {self.shape} with {other.shape}")
        return BitMatrix(np.hstack([self._bits, other._bits]), cols=self.cols + other.cols)

    def vstack(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.cols:
            raise DimensionMismatchError(f"Cannot vstack {self.shape} with {other.shape}")
        return BitMatrix(np.vstack([self._bits, other._bits]), cols=self.cols)

    # ------------------------------------------------------------------
    # Serialization
    # ------------------------------------------------------------------

    def row_strings(self) -> list[str]:
        return ["".join("1" if b else "0" for b in row) for row in self._bits]

    def to_text(self) -> str:
        return "\n".join(self.row_strings()) + ("\n" if self.rows else "")

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "row_strings": self.row_strings()}

    # ------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._bits, other._bits))

    def __hash__(self) -> int:
        return hash((self.shape, self._bits.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"


# ======================================================================
# Packing helpers
# ======================================================================


def pack_rows(bits: np.ndarray) -> np.ndarray:
    """Packs a (rows, cols) 0/1 array into (rows, ceil(cols/64)) uint64 words."""
    bits = np.asarray(bits, dtype=np.uint8)
    rows, cols = bits.shape
    n_words = max(1, -(-cols // 64))
    padded = np.zeros((rows, n_words * 64), dtype=np.uint8)
    padded[:, :cols] = bits
    packed = np.packbits(padded, axis=1)
    return np.ascontiguousarray(packed).view(np.uint64)


def popcount_rows(words: np.ndarray) -> np.ndarray:
    """Hamming weight of each row of a packed (k, n_words) uint64 array."""
    words = np.ascontiguousarray(words)
    return POPCOUNT8[words.view(np.uint8)].sum(axis=1, dtype=np.int64)


def bits_to_key(bits: np.ndarray) -> int:
    """Integer key of a bit vector (bit 0 of the vector is the most significant)."""
    return int.from_bytes(np.packbits(np.asarray(bits, dtype=np.uint8)).tobytes(), "big")


def bits_to_keys(bits: np.ndarray) -> list[int]:
    """Row-wise bits_to_key for a 2-D array."""
    packed = np.packbits(np.asarray(bits, dtype=np.uint8), axis=1)
    return [int.from_bytes(row.tobytes(), "big") for row in packed]


# ======================================================================
# Elimination
# ======================================================================


def row_reduce(bits: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(2) of a copy; returns (rref, pivot columns)."""
    a = np.array(bits, dtype=np.uint8, copy=True) & 1
    m, n = a.shape
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row == m:
            break
        candidates = np.flatnonzero(a[row:, col])
        if candidates.size == 0:
            continue
        pivot = row + int(candidates[0])
        if pivot != row:
            a[[row, pivot]] = a[[pivot, row]]
        others = np.flatnonzero(a[:, col])
        others = others[others != row]
        if others.size:
            a[others] ^= a[row]
        pivots.append(col)
        row += 1
    return a, pivots


def rank(M: BitMatrix | np.ndarray) -> int:
    """Row rank over GF(2)."""
    bits = M.bits if isinstance(M, BitMatrix) else np.asarray(M, dtype=np.uint8)
    if bits.size == 0:
        return 0
    _, pivots = row_reduce(bits)
    return len(pivots)


def encode_message(m: Sequence[int] | np.ndarray, G: BitMatrix) -> np.ndarray:
    """m·G over GF(2); accepts a single message or a (batch, l) array."""
    msg = np.asarray(m, dtype=np.int64)
    if msg.shape[-1] != G.rows:
        raise DimensionMismatchError(f"Message length {msg.shape[-1]} does not match {G.rows} generator rows")
    return ((msg @ G.bits.astype(np.int64)) & 1).astype(np.uint8)


def parity_check_of(G: BitMatrix) -> BitMatrix:
    """(n - l) x n matrix H with H·G^T = 0 and full row rank."""
    rref, pivots = row_reduce(G.bits)
    if len(pivots) < G.rows:
        raise RankDeficientError(f"Generator has rank {len(pivots)} < {G.rows} rows")
    n = G.cols
    pivot_set = set(pivots)
    free_cols = [c for c in range(n) if c not in pivot_set]
    H = np.zeros((len(free_cols), n), dtype=np.uint8)
    for r, free in enumerate(free_cols):
        H[r, free] = 1
        for i, p in enumerate(pivots):
            H[r, p] = rref[i, free]
    return BitMatrix(H, cols=n)


def solve_pivots(G: BitMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Pivot columns J with G[:, J] invertible, and that inverse.

    A codeword c = s·G is inverted as s = c[J] · inv.
    """
    _, pivots = row_reduce(G.bits)
    if len(pivots) < G.rows:
        raise RankDeficientError(f"Generator has rank {len(pivots)} < {G.rows} rows")
    J = np.array(pivots, dtype=np.int64)
    square = G.bits[:, J]
    l = G.rows
    augmented = np.hstack([square, np.eye(l, dtype=np.uint8)])
    reduced, _ = row_reduce(augmented)
    inv = reduced[:, l:].copy()
    inv.setflags(write=False)
    J.setflags(write=False)
    return J, inv


def row_space_contains(M: BitMatrix | np.ndarray, v: Sequence[int] | np.ndarray) -> bool:
    """True iff v is a GF(2) combination of the rows of M."""
    bits = M.bits if isinstance(M, BitMatrix) else np.asarray(M, dtype=np.uint8)
    vec = np.asarray(v, dtype=np.uint8).reshape(1, -1)
    if vec.shape[1] != bits.shape[1]:
        raise DimensionMismatchError(f"Vector length {vec.shape[1]} does not match {bits.shape[1]} columns")
    if not vec.any():
        return True
    return rank(np.vstack([bits, vec])) == rank(bits)
