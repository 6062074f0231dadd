"""
Fixed-weight error patterns, drawn uniformly or enumerated exhaustively.

Qubit patterns carry a label per site: 1 = X, 2 = Z, 3 = Y (x-bit + 2 z-bit).
"""

from __future__ import annotations

from itertools import combinations, product
from math import comb
from typing import Iterator

import numpy as np

from ..errors import LdgmError


def sample_weighted_error(
    n_sites: int, w: int, rng: np.random.Generator, pauli: bool = False
) -> tuple[np.ndarray, np.ndarray | None]:
    """Uniform w-subset of sites (sorted) and, for qubit errors, a uniform X/Y/Z label per site."""
    if not 0 <= w <= n_sites:
        raise LdgmError(f"Cannot place {w} errors on {n_sites} sites")
    sites = np.sort(rng.choice(n_sites, size=w, replace=False))
    labels = rng.integers(1, 4, size=w) if pauli else None
    return sites, labels


def sample_masks(n_sites: int, w: int, batch: int, rng: np.random.Generator) -> np.ndarray:
    """(batch, n_sites) 0/1 rows, each a uniform weight-w pattern."""
    if not 0 <= w <= n_sites:
        raise LdgmError(f"Cannot place {w} errors on {n_sites} sites")
    out = np.zeros((batch, n_sites), dtype=np.uint8)
    if w:
        picks = rng.random((batch, n_sites)).argsort(axis=1)[:, :w]
        out[np.arange(batch)[:, None], picks] = 1
    return out


def sample_pauli_batch(n: int, w: int, batch: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """(qx, qz) for a batch of uniform weight-w depolarizing errors."""
    mask = sample_masks(n, w, batch, rng)
    labels = rng.integers(1, 4, size=(batch, n), dtype=np.uint8) * mask
    return labels & 1, labels >> 1


def pattern_count(n_qubits: int, w_q: int, n_sm: int, w_m: int) -> int:
    return comb(n_qubits, w_q) * 3**w_q * comb(n_sm, w_m)


def _combination_array(n: int, w: int) -> np.ndarray:
    count = comb(n, w)
    flat = np.fromiter((i for c in combinations(range(n), w) for i in c), dtype=np.int64, count=count * w)
    return flat.reshape(count, w)


def enumerate_patterns(
    n_qubits: int, w_q: int, n_sm: int, w_m: int, chunk: int = 65_536
) -> Iterator[tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """Every (qubit error, measurement flips) pair of the given weights, as (qx, qz, meas) chunks."""
    q_sites = _combination_array(n_qubits, w_q)
    q_labels = np.array(list(product((1, 2, 3), repeat=w_q)), dtype=np.uint8).reshape(3**w_q, w_q)
    m_sites = _combination_array(n_sm, w_m)
    n_labels, n_meas = len(q_labels), len(m_sites)
    total = len(q_sites) * n_labels * n_meas

    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total))
        qi, rest = np.divmod(idx, n_labels * n_meas)
        li, mi = np.divmod(rest, n_meas)
        rows = np.arange(len(idx))[:, None]
        labels = np.zeros((len(idx), n_qubits), dtype=np.uint8)
        if w_q:
            labels[rows, q_sites[qi]] = q_labels[li]
        meas = np.zeros((len(idx), n_sm), dtype=np.uint8)
        if w_m:
            meas[rows, m_sites[mi]] = 1
        yield labels & 1, labels >> 1, meas

