"""
Bounded-weight lookup decoder for qubit errors.

Every Pauli of weight <= t is enumerated once; each syndrome keeps a
minimum-weight error, ties going to the lexicographically smallest string
under I < X < Y < Z with qubit 1 compared first.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from math import comb

import numpy as np

from ..algebra.bitmatrix import bits_to_key, bits_to_keys
from ..algebra.pauli import PauliVec
from ..errors import DimensionMismatchError, LdgmError, TableCapacityError
from .code import StabilizerCode, syndrome

logger = logging.getLogger(__name__)

DEFAULT_MAX_ENTRIES = 2_000_000


@dataclass(frozen=True)
class QuantumLookupDecoder:
    n: int
    l: int
    t: int
    table: dict[int, PauliVec] = field(repr=False)

    def decode(self, s: np.ndarray) -> PauliVec | None:
        """Correction for a length-l syndrome, or None if the syndrome is not in the table."""
        s = np.asarray(s, dtype=np.uint8)
        if s.size != self.l:
            raise DimensionMismatchError(f"Syndrome of length {s.size}, decoder expects {self.l}")
        return self.table.get(bits_to_key(s))

    @cached_property
    def _arrays(self) -> tuple[dict[int, int], np.ndarray, np.ndarray]:
        keys = list(self.table)
        index = {key: i for i, key in enumerate(keys)}
        cx = np.stack([self.table[key].x for key in keys]) if keys else np.zeros((0, self.n), dtype=np.uint8)
        cz = np.stack([self.table[key].z for key in keys]) if keys else np.zeros((0, self.n), dtype=np.uint8)
        return index, cx, cz

    def decode_batch(self, syndromes: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(cx, cz, found) for a (batch, l) stack of syndromes; misses get the identity."""
        index, cx, cz = self._arrays
        rows = np.array([index.get(key, -1) for key in bits_to_keys(syndromes)], dtype=np.int64)
        found = rows >= 0
        out_x = np.zeros((len(rows), self.n), dtype=np.uint8)
        out_z = np.zeros((len(rows), self.n), dtype=np.uint8)
        out_x[found] = cx[rows[found]]
        out_z[found] = cz[rows[found]]
        return out_x, out_z, found

    def __len__(self) -> int:
        return len(self.table)


def quantum_table_size(n: int, t: int) -> int:
    return sum(comb(n, w) * 3**w for w in range(t + 1))


def build_quantum_lookup_decoder(
    code: StabilizerCode, t: int, max_entries: int = DEFAULT_MAX_ENTRIES
) -> QuantumLookupDecoder:
    n = code.n
    if t < 0 or t >= n:
        raise LdgmError(f"Decoder radius t={t} must satisfy 0 <= t < n={n}")
    size = quantum_table_size(n, t)
    if size > max_entries:
        raise TableCapacityError(f"Enumerating {size} Paulis of weight <= {t} exceeds the cap of {max_entries}")

    table: dict[int, PauliVec] = {bits_to_key(np.zeros(code.l, dtype=np.uint8)): PauliVec.identity(n)}
    order: dict[int, tuple[int, ...]] = {}
    stored_weight: dict[int, int] = {}
    for w in range(1, t + 1):
        for qubits in combinations(range(n), w):
            for labels in product("XYZ", repeat=w):
                e = _pauli_from(n, qubits, labels)
                key = bits_to_key(syndrome(code, e))
                if key in table and stored_weight.get(key, 0) < w:
                    continue
                okey = e.order_key()
                if key not in table or okey < order[key]:
                    table[key] = e
                    order[key] = okey
                    stored_weight[key] = w

    logger.info("Quantum lookup decoder: t=%d, %d candidate Paulis, %d syndromes", t, size, len(table))
    return QuantumLookupDecoder(n=n, l=code.l, t=t, table=table)


def _pauli_from(n: int, qubits: tuple[int, ...], labels: tuple[str, ...]) -> PauliVec:
    x = np.zeros(n, dtype=np.uint8)
    z = np.zeros(n, dtype=np.uint8)
    for q, label in zip(qubits, labels):
        if label in ("X", "Y"):
            x[q] = 1
        if label in ("Z", "Y"):
            z[q] = 1
    return PauliVec(x, z)
