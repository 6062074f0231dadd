"""
Bounded-distance lookup decoder for measurement errors.

The table maps each parity syndrome reached by a flip pattern of weight <= t
to one such pattern of minimum weight; among equal-weight patterns the
lexicographically smallest bit string wins. Syndromes outside the table are
reported as decode failures and the caller falls back to the raw estimate.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb

import numpy as np

from ..algebra.bitmatrix import bits_to_key, bits_to_keys
from ..errors import DimensionMismatchError, LdgmError, TableCapacityError
from .code import SmCode

logger = logging.getLogger(__name__)

DEFAULT_MAX_ENTRIES = 2_000_000


@dataclass(frozen=True)
class SmLookupDecoder:
    n_sm: int
    t: int
    table: dict[int, tuple[int, ...]] = field(repr=False)

    def lookup(self, parity_syndrome: np.ndarray) -> np.ndarray | None:
        """Flip pattern for a parity syndrome, or None when it is not in the table."""
        positions = self.table.get(bits_to_key(parity_syndrome))
        if positions is None:
            return None
        pattern = np.zeros(self.n_sm, dtype=np.uint8)
        pattern[list(positions)] = 1
        return pattern

    @cached_property
    def _arrays(self) -> tuple[dict[int, int], np.ndarray]:
        index = {key: i for i, key in enumerate(self.table)}
        patterns = np.zeros((len(self.table), self.n_sm), dtype=np.uint8)
        for i, positions in enumerate(self.table.values()):
            patterns[i, list(positions)] = 1
        return index, patterns

    def lookup_batch(self, parity_syndromes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """(patterns, found) for a (batch, n_SM - l) stack; misses get the zero pattern."""
        index, patterns = self._arrays
        rows = np.array([index.get(key, -1) for key in bits_to_keys(parity_syndromes)], dtype=np.int64)
        found = rows >= 0
        out = np.zeros((len(rows), self.n_sm), dtype=np.uint8)
        out[found] = patterns[rows[found]]
        return out, found

    def __len__(self) -> int:
        return len(self.table)


def sm_table_size(n_sm: int, t: int) -> int:
    return sum(comb(n_sm, w) for w in range(t + 1))


def build_sm_lookup_decoder(sm: SmCode, t: int, max_entries: int = DEFAULT_MAX_ENTRIES) -> SmLookupDecoder:
    n = sm.n_sm
    if t < 0 or t > n:
        raise LdgmError(f"Decoder radius t={t} must satisfy 0 <= t <= n_SM={n}")
    size = sm_table_size(n, t)
    if size > max_entries:
        raise TableCapacityError(f"{size} flip patterns of weight <= {t} exceed the cap of {max_entries}")
    if 2 * t + 1 > sm.distance:
        logger.warning("t=%d exceeds the unique-decoding radius of a distance-%d SM code", t, sm.distance)

    H = sm.parity.bits
    # keys are XOR-linear, so a pattern's key is the XOR of its column keys
    col_keys = [bits_to_key(H[:, j]) for j in range(n)]
    table: dict[int, tuple[int, ...]] = {bits_to_key(np.zeros(H.shape[0], dtype=np.uint8)): ()}
    weight_of: dict[int, int] = {next(iter(table)): 0}
    for w in range(1, t + 1):
        for positions in combinations(range(n), w):
            key = 0
            for j in positions:
                key ^= col_keys[j]
            # combinations() runs from the largest bit string to the smallest at fixed weight
            if weight_of.get(key, w) == w:
                table[key] = positions
                weight_of[key] = w

    logger.info("SM lookup decoder: t=%d, %d patterns, %d syndromes", t, size, len(table))
    return SmLookupDecoder(n_sm=n, t=t, table=table)


def decode_measured(sm: SmCode, dec: SmLookupDecoder, m_hat: np.ndarray) -> tuple[np.ndarray, bool]:
    """(s, ok): the recovered length-l syndrome and whether the lookup succeeded."""
    m_hat = np.asarray(m_hat, dtype=np.uint8).reshape(-1)
    if m_hat.size != sm.n_sm:
        raise DimensionMismatchError(f"Measured syndrome of length {m_hat.size}, expected {sm.n_sm}")
    s, ok = decode_measured_batch(sm, dec, m_hat[None, :])
    return s[0], bool(ok[0])


def decode_measured_batch(sm: SmCode, dec: SmLookupDecoder, m_hat: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    m_hat = np.asarray(m_hat, dtype=np.uint8)
    if m_hat.ndim != 2 or m_hat.shape[1] != sm.n_sm:
        raise DimensionMismatchError(f"Measured syndromes of shape {m_hat.shape}, expected (batch, {sm.n_sm})")
    H = sm.parity.bits.astype(np.int64)
    parity_syndromes = ((m_hat.astype(np.int64) @ H.T) & 1).astype(np.uint8)
    patterns, found = dec.lookup_batch(parity_syndromes)
    corrected = m_hat ^ patterns
    J, inv = sm.pivots
    s = ((corrected[:, J].astype(np.int64) @ inv.astype(np.int64)) & 1).astype(np.uint8)
    return s, found
