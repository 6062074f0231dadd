"""
One decoding round: qubit errors, noisy measurement of the encoded stabilizer
elements, SM decoding back to a length-l syndrome, quantum lookup decoding,
and the logical-failure test on the residual.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ..algebra.pauli import PauliVec
from ..errors import DimensionMismatchError
from ..smcode.code import SmCode
from ..smcode.decoder import SmLookupDecoder, build_sm_lookup_decoder, decode_measured_batch
from ..smcode.measured import MeasuredStabilizerSet, encode_stabilizers, measured_syndromes_batch
from ..stabilizer.code import StabilizerCode, logical_failures_batch
from ..stabilizer.lookup import QuantumLookupDecoder, build_quantum_lookup_decoder

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DecodingSystem:
    name: str
    code: StabilizerCode
    ms: MeasuredStabilizerSet
    sm_dec: SmLookupDecoder
    q_dec: QuantumLookupDecoder

    @property
    def sm(self) -> SmCode:
        return self.ms.sm

    @property
    def n_qubits(self) -> int:
        return self.code.n

    @property
    def n_sm(self) -> int:
        return self.ms.n_sm


def build_system(
    name: str,
    code: StabilizerCode,
    sm: SmCode,
    sm_t: int | None = None,
    q_dec: QuantumLookupDecoder | None = None,
    quantum_t: int = 2,
    sm_max_entries: int = 2_000_000,
    quantum_max_entries: int = 2_000_000,
) -> DecodingSystem:
    """sm_t defaults to the unique-decoding radius of the SM code."""
    ms = encode_stabilizers(code, sm)
    if sm_t is None:
        sm_t = (sm.distance - 1) // 2
    sm_dec = build_sm_lookup_decoder(sm, sm_t, max_entries=sm_max_entries)
    if q_dec is None:
        q_dec = build_quantum_lookup_decoder(code, quantum_t, max_entries=quantum_max_entries)
    logger.info("System %s: [%d,%d,%d] SM code, SM t=%d, quantum t=%d", name, *sm.params(), sm_t, q_dec.t)
    return DecodingSystem(name=name, code=code, ms=ms, sm_dec=sm_dec, q_dec=q_dec)


def run_batch(system: DecodingSystem, qx: np.ndarray, qz: np.ndarray, meas: np.ndarray) -> np.ndarray:
    """Failure flag per trial for (batch, n) qubit errors and (batch, n_SM) measurement flips.

    A syndrome the quantum decoder has no entry for counts as a failure.
    """
    m_hat = measured_syndromes_batch(system.ms, qx, qz, meas)
    s, _ = decode_measured_batch(system.sm, system.sm_dec, m_hat)
    cx, cz, found = system.q_dec.decode_batch(s)
    fails = logical_failures_batch(system.code, qx ^ cx, qz ^ cz)
    return fails | ~found


def run_trial(system: DecodingSystem, qubit_error: PauliVec, meas_error: np.ndarray) -> bool:
    meas = np.asarray(meas_error, dtype=np.uint8).reshape(1, -1)
    if len(qubit_error) != system.n_qubits or meas.shape[1] != system.n_sm:
        raise DimensionMismatchError(
            f"Trial needs {system.n_qubits} qubits and {system.n_sm} measurement bits, "
            f"got {len(qubit_error)} and {meas.shape[1]}"
        )
    return bool(run_batch(system, qubit_error.x[None, :], qubit_error.z[None, :], meas)[0])
