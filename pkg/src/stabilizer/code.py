"""
Stabilizer codes: syndromes, stabilizer-group membership and logical-failure tests.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from ..algebra.bitmatrix import rank, row_space_contains
from ..algebra.pauli import PauliVec, stack_paulis, trace_inner_product
from ..errors import DimensionMismatchError, LdgmError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StabilizerCode:
    n: int
    k: int
    generators: tuple[PauliVec, ...]
    logical_x: PauliVec
    logical_z: PauliVec
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "generators", tuple(self.generators))
        if len(self.generators) != self.n - self.k:
            raise DimensionMismatchError(
                f"[[{self.n},{self.k}]] code needs {self.n - self.k} generators, got {len(self.generators)}"
            )
        for p in (*self.generators, self.logical_x, self.logical_z):
            if len(p) != self.n:
                raise DimensionMismatchError(f"Pauli of length {len(p)} on a {self.n}-qubit code")

    @property
    def l(self) -> int:
        return self.n - self.k

    @cached_property
    def gx(self) -> np.ndarray:
        return stack_paulis(self.generators, self.n)[0]

    @cached_property
    def gz(self) -> np.ndarray:
        return stack_paulis(self.generators, self.n)[1]

    @cached_property
    def symplectic_matrix(self) -> np.ndarray:
        """l x 2n binary matrix (X | Z)."""
        return np.hstack([self.gx, self.gz])

    def generator_weights(self) -> list[int]:
        return [g.weight for g in self.generators]

    def generator_types(self) -> list[str]:
        labels = []
        for g in self.generators:
            has_x, has_z = bool(g.x.any()), bool(g.z.any())
            if has_x and not has_z:
                labels.append("X")
            elif has_z and not has_x:
                labels.append("Z")
            else:
                labels.append("mixed")
        return labels

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "generators": [g.to_string() for g in self.generators],
            "logical_x": self.logical_x.to_string(),
            "logical_z": self.logical_z.to_string(),
        }

    @classmethod
    def from_json(cls, payload: dict | str) -> "StabilizerCode":
        data = json.loads(payload) if isinstance(payload, str) else payload
        code = stabilizer_code_from_strings(data["generators"], data["logical_x"], data["logical_z"])
        if (code.n, code.k) != (int(data["n"]), int(data["k"])):
            raise LdgmError(f"Declared [[{data['n']},{data['k']}]] does not match the generators")
        return code


def stabilizer_code_from_strings(
    generators: Sequence[str], logical_x: str, logical_z: str, name: str = ""
) -> StabilizerCode:
    gens = tuple(PauliVec.from_string(g) for g in generators)
    lx = PauliVec.from_string(logical_x)
    lz = PauliVec.from_string(logical_z)
    n = len(lx)
    code = StabilizerCode(n=n, k=n - len(gens), generators=gens, logical_x=lx, logical_z=lz, name=name)
    validate(code)
    return code


def validate(code: StabilizerCode) -> None:
    """Raises LdgmError naming the first broken stabilizer-code invariant."""
    gx, gz = code.gx.astype(np.int64), code.gz.astype(np.int64)
    commutators = (gx @ gz.T + gz @ gx.T) & 1
    if commutators.any():
        i, j = (int(v) for v in np.argwhere(commutators)[0])
        raise LdgmError(f"Generators {i} and {j} anticommute")
    r = rank(code.symplectic_matrix)
    if r != code.l:
        raise LdgmError(f"Generators are dependent: symplectic rank {r} < {code.l}")
    for label, logical in (("logical_x", code.logical_x), ("logical_z", code.logical_z)):
        bad = np.flatnonzero(syndrome(code, logical))
        if bad.size:
            raise LdgmError(f"{label} anticommutes with generator {int(bad[0])}")
    if trace_inner_product(code.logical_x, code.logical_z) != 1:
        raise LdgmError("logical_x and logical_z must anticommute")


# ======================================================================
# Syndromes and membership
# ======================================================================


def syndrome(code: StabilizerCode, e: PauliVec) -> np.ndarray:
    """Bit i is the trace inner product of generator i with e."""
    if len(e) != code.n:
        raise DimensionMismatchError(f"Error of length {len(e)} on a {code.n}-qubit code")
    s = (code.gx.astype(np.int64) @ e.z.astype(np.int64) + code.gz.astype(np.int64) @ e.x.astype(np.int64)) & 1
    return s.astype(np.uint8)


def syndromes_batch(code: StabilizerCode, ex: np.ndarray, ez: np.ndarray) -> np.ndarray:
    """Syndromes of a (batch, n) stack of errors given by their X and Z parts."""
    s = (ez.astype(np.int64) @ code.gx.T.astype(np.int64) + ex.astype(np.int64) @ code.gz.T.astype(np.int64)) & 1
    return s.astype(np.uint8)


def in_stabilizer_group(code: StabilizerCode, e: PauliVec) -> bool:
    """True iff e lies in the GF(2) row space of the symplectic generator matrix."""
    if len(e) != code.n:
        raise DimensionMismatchError(f"Error of length {len(e)} on a {code.n}-qubit code")
    return row_space_contains(code.symplectic_matrix, e.symplectic())


def is_logical_failure(code: StabilizerCode, residual: PauliVec) -> bool:
    """True iff the residual is not a stabilizer.

    For k = 1 a residual is a stabilizer exactly when it commutes with every
    generator and with both logical operators.
    """
    if code.k != 1:
        return not in_stabilizer_group(code, residual)
    if syndrome(code, residual).any():
        return True
    return bool(trace_inner_product(residual, code.logical_x) or trace_inner_product(residual, code.logical_z))


def logical_failures_batch(code: StabilizerCode, rx: np.ndarray, rz: np.ndarray) -> np.ndarray:
    """Vectorised is_logical_failure over a (batch, n) stack of residuals."""
    if code.k != 1:
        return np.array([is_logical_failure(code, PauliVec(x, z)) for x, z in zip(rx, rz)], dtype=bool)
    fails = syndromes_batch(code, rx, rz).any(axis=1)
    lx, lz = code.logical_x, code.logical_z
    rx64, rz64 = rx.astype(np.int64), rz.astype(np.int64)
    anti_x = (rx64 @ lx.z.astype(np.int64) + rz64 @ lx.x.astype(np.int64)) & 1
    anti_z = (rx64 @ lz.z.astype(np.int64) + rz64 @ lz.x.astype(np.int64)) & 1
    return fails | anti_x.astype(bool) | anti_z.astype(bool)


def effective_distance(d: int, w: int) -> int:
    """Worst-case distance when a weight-w measurement can spread a hook error onto w qubits."""
    if d < 1 or w < 1:
        raise LdgmError(f"effective_distance needs positive d and w, got d={d}, w={w}")
    return d // w
