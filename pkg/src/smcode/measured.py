"""
Measured stabilizer-group elements.

Element k is the product of the generators i with gen[i][k] = 1. In the
binary (x | z) picture that is a matrix product, so the element stack is
gen^T · G_x and gen^T · G_z over GF(2).
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..algebra.pauli import PauliVec
from ..errors import DimensionMismatchError
from ..stabilizer.code import StabilizerCode, effective_distance
from .code import SmCode

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MeasuredStabilizerSet:
    source: StabilizerCode
    sm: SmCode
    elements: tuple[PauliVec, ...]

    @cached_property
    def ex(self) -> np.ndarray:
        return np.stack([e.x for e in self.elements])

    @cached_property
    def ez(self) -> np.ndarray:
        return np.stack([e.z for e in self.elements])

    @property
    def n_sm(self) -> int:
        return len(self.elements)


def encode_stabilizers(code: StabilizerCode, sm: SmCode) -> MeasuredStabilizerSet:
    if sm.l != code.l:
        raise DimensionMismatchError(f"SM code has {sm.l} rows but the stabilizer code has {code.l} generators")
    sel = sm.gen.bits.T.astype(np.int64)
    ex = (sel @ code.gx.astype(np.int64)) & 1
    ez = (sel @ code.gz.astype(np.int64)) & 1
    elements = tuple(PauliVec(x, z) for x, z in zip(ex, ez))
    logger.debug("Encoded %d generators into %d measured elements", code.l, len(elements))
    return MeasuredStabilizerSet(source=code, sm=sm, elements=elements)


def measured_syndrome(ms: MeasuredStabilizerSet, qubit_error: PauliVec, meas_error: np.ndarray) -> np.ndarray:
    """Bit k: commutation of element k with the qubit error, flipped by meas_error[k]."""
    meas = np.asarray(meas_error, dtype=np.uint8).reshape(-1)
    if len(qubit_error) != ms.source.n:
        raise DimensionMismatchError(f"Qubit error of length {len(qubit_error)} on a {ms.source.n}-qubit code")
    if meas.size != ms.n_sm:
        raise DimensionMismatchError(f"Measurement error of length {meas.size}, expected {ms.n_sm}")
    s = (ms.ex.astype(np.int64) @ qubit_error.z.astype(np.int64) + ms.ez.astype(np.int64) @ qubit_error.x.astype(np.int64)) & 1
    return s.astype(np.uint8) ^ meas


def measured_syndromes_batch(
    ms: MeasuredStabilizerSet, qx: np.ndarray, qz: np.ndarray, meas: np.ndarray
) -> np.ndarray:
    """measured_syndrome over (batch, n) qubit errors and (batch, n_SM) flips."""
    s = (qz.astype(np.int64) @ ms.ex.T.astype(np.int64) + qx.astype(np.int64) @ ms.ez.T.astype(np.int64)) & 1
    return s.astype(np.uint8) ^ np.asarray(meas, dtype=np.uint8)


def stabilizer_weight_profile(ms: MeasuredStabilizerSet) -> list[int]:
    return [e.weight for e in ms.elements]


def weight_histogram(ms: MeasuredStabilizerSet) -> dict[int, int]:
    return dict(sorted(Counter(stabilizer_weight_profile(ms)).items()))


def element_generators(ms: MeasuredStabilizerSet, k: int) -> list[int]:
    """0-based indices of the generators multiplied into element k."""
    return [int(i) for i in np.flatnonzero(ms.sm.gen.col(k))]


def worst_effective_distance(ms: MeasuredStabilizerSet, d: int) -> int:
    """Hook-error distance floor(d / w) at the heaviest measured element."""
    return effective_distance(d, max(stabilizer_weight_profile(ms)))


def audit_records(ms: MeasuredStabilizerSet) -> list[dict]:
    return [
        {"index": k, "pauli": e.to_string(), "weight": e.weight, "generators": element_generators(ms, k)}
        for k, e in enumerate(ms.elements)
    ]
