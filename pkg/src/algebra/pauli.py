"""
Pauli operators as vectors over GF(4).

The map tau sends I -> 0, X -> 1, Z -> omega, Y -> omega-bar. A symbol is
stored in two bits (X-part, Z-part) with integer value x + 2z, so field
addition is XOR of the values and operator multiplication (up to phase) is
componentwise addition. The trace inner product then reduces to the
symplectic form x1·z2 + z1·x2 mod 2.
"""

from __future__ import annotations

from enum import IntEnum
from typing import Iterable, Sequence

import numpy as np

from ..errors import DimensionMismatchError, LdgmError


class Gf4(IntEnum):
    ZERO = 0
    ONE = 1  # X
    OMEGA = 2  # Z
    OMEGA_BAR = 3  # Y

    @property
    def x_bit(self) -> int:
        return int(self) & 1

    @property
    def z_bit(self) -> int:
        return int(self) >> 1


# omega^k exponents for the nonzero elements: 1 = w^0, w = w^1, w-bar = w^2
_LOG = {Gf4.ONE: 0, Gf4.OMEGA: 1, Gf4.OMEGA_BAR: 2}
_EXP = {0: Gf4.ONE, 1: Gf4.OMEGA, 2: Gf4.OMEGA_BAR}


def gf4_add(a: Gf4, b: Gf4) -> Gf4:
    return Gf4(int(a) ^ int(b))


def gf4_mul(a: Gf4, b: Gf4) -> Gf4:
    if a == Gf4.ZERO or b == Gf4.ZERO:
        return Gf4.ZERO
    return _EXP[(_LOG[Gf4(a)] + _LOG[Gf4(b)]) % 3]


def gf4_conj(a: Gf4) -> Gf4:
    """Frobenius conjugation: 0 and 1 fixed, omega <-> omega-bar."""
    return gf4_mul(a, a)


def gf4_trace(a: Gf4) -> int:
    """Tr(a) = a + a^2, an element of GF(2)."""
    t = gf4_add(a, gf4_conj(a))
    if t not in (Gf4.ZERO, Gf4.ONE):
        raise LdgmError(f"trace left the prime field: {t!r}")
    return int(t)


PAULI_LABELS = "IXZY"  # indexed by symbol value x + 2z
_LABEL_TO_VALUE = {"I": 0, "X": 1, "Z": 2, "Y": 3}
# fixed symbol order I < X < Y < Z used for tie-breaking
SYMBOL_ORDER = {"I": 0, "X": 1, "Y": 2, "Z": 3}


class PauliVec:
    """Length-n GF(4) vector; phase is ignored."""

    __slots__ = ("_x", "_z")

    def __init__(self, x: Sequence[int] | np.ndarray, z: Sequence[int] | np.ndarray) -> None:
        xa = np.array(x, dtype=np.uint8, copy=True).reshape(-1) & 1
        za = np.array(z, dtype=np.uint8, copy=True).reshape(-1) & 1
        if xa.shape != za.shape:
            raise DimensionMismatchError(f"X part has length {xa.size}, Z part {za.size}")
        xa.setflags(write=False)
        za.setflags(write=False)
        self._x = xa
        self._z = za

    @classmethod
    def identity(cls, n: int) -> "PauliVec":
        return cls(np.zeros(n, dtype=np.uint8), np.zeros(n, dtype=np.uint8))

    @classmethod
    def from_string(cls, text: str) -> "PauliVec":
        """'XYIZ' style string, qubit 1 leftmost."""
        text = text.strip().upper()
        try:
            values = [_LABEL_TO_VALUE[ch] for ch in text]
        except KeyError as exc:
            raise LdgmError(f"Invalid Pauli character {exc.args[0]!r} in {text!r}") from None
        vals = np.array(values, dtype=np.uint8)
        return cls(vals & 1, vals >> 1)

    @classmethod
    def from_symbols(cls, symbols: Iterable[Gf4 | int]) -> "PauliVec":
        vals = np.array([int(s) for s in symbols], dtype=np.uint8)
        return cls(vals & 1, vals >> 1)

    @classmethod
    def on_qubits(cls, n: int, label: str, qubits: Iterable[int]) -> "PauliVec":
        """The same single-qubit Pauli on each listed qubit (0-based indices)."""
        value = _LABEL_TO_VALUE[label.upper()]
        x = np.zeros(n, dtype=np.uint8)
        z = np.zeros(n, dtype=np.uint8)
        for q in qubits:
            x[q] = value & 1
            z[q] = value >> 1
        return cls(x, z)

    # ------------------------------------------------------------------

    @property
    def x(self) -> np.ndarray:
        return self._x

    @property
    def z(self) -> np.ndarray:
        return self._z

    def __len__(self) -> int:
        return int(self._x.size)

    def symbols(self) -> list[Gf4]:
        return [Gf4(int(v)) for v in (self._x + 2 * self._z)]

    @property
    def weight(self) -> int:
        return int(np.count_nonzero(self._x | self._z))

    def support(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(self._x | self._z)]

    def is_identity(self) -> bool:
        return not (self._x.any() or self._z.any())

    def symplectic(self) -> np.ndarray:
        """Binary (x | z) row of length 2n."""
        return np.concatenate([self._x, self._z])

    def to_string(self) -> str:
        return "".join(PAULI_LABELS[v] for v in (self._x + 2 * self._z))

    def order_key(self) -> tuple[int, ...]:
        """Lexicographic key under I < X < Y < Z, lowest qubit first."""
        return tuple(SYMBOL_ORDER[ch] for ch in self.to_string())

    def __add__(self, other: "PauliVec") -> "PauliVec":
        if len(self) != len(other):
            raise DimensionMismatchError(f"Cannot multiply Paulis of length {len(self)} and {len(other)}")
        return PauliVec(self._x ^ other._x, self._z ^ other._z)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliVec):
            return NotImplemented
        return bool(np.array_equal(self._x, other._x) and np.array_equal(self._z, other._z))

    def __hash__(self) -> int:
        return hash((self._x.tobytes(), self._z.tobytes()))

    def __repr__(self) -> str:
        return f"PauliVec({self.to_string()!r})"


def trace_inner_product(x: PauliVec, y: PauliVec) -> int:
    """0 if the two Paulis commute, 1 if they anticommute."""
    if len(x) != len(y):
        raise DimensionMismatchError(f"Paulis have lengths {len(x)} and {len(y)}")
    total = np.count_nonzero(x.x & y.z) + np.count_nonzero(x.z & y.x)
    return int(total & 1)


def trace_inner_product_gf4(x: PauliVec, y: PauliVec) -> int:
    """Reference form: sum_i Tr(x_i * conj(y_i)) mod 2, computed in GF(4)."""
    if len(x) != len(y):
        raise DimensionMismatchError(f"Paulis have lengths {len(x)} and {len(y)}")
    acc = 0
    for a, b in zip(x.symbols(), y.symbols()):
        acc ^= gf4_trace(gf4_mul(a, gf4_conj(b)))
    return acc


def stack_paulis(paulis: Sequence[PauliVec], n: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """(X, Z) uint8 matrices with one row per Pauli."""
    if not paulis:
        width = n or 0
        return np.zeros((0, width), dtype=np.uint8), np.zeros((0, width), dtype=np.uint8)
    lengths = {len(p) for p in paulis}
    if len(lengths) > 1:
        raise DimensionMismatchError(f"Paulis have mixed lengths {sorted(lengths)}")
    return np.stack([p.x for p in paulis]), np.stack([p.z for p in paulis])
