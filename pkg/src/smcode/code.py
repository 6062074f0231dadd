"""
Syndrome-measurement (SM) codes and their parameter bounds.

An SM code is a classical [n_SM, l, d_SM] code with an l x n_SM generator.
Column k of the generator selects which stabilizer generators are multiplied
into the k-th measured element, so the column weight w_C caps how many
generators any measurement touches.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from ..algebra.bitmatrix import BitMatrix, parity_check_of, rank, solve_pivots
from ..algebra.distance import min_distance
from ..errors import LdgmError, RankDeficientError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SmCode:
    gen: BitMatrix
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        r = rank(self.gen)
        if r != self.gen.rows:
            raise RankDeficientError(f"SM generator {self.name!r} has rank {r} < {self.gen.rows} rows")

    @property
    def l(self) -> int:
        return self.gen.rows

    @property
    def n_sm(self) -> int:
        return self.gen.cols

    @cached_property
    def distance(self) -> int:
        return min_distance(self.gen)

    @cached_property
    def parity(self) -> BitMatrix:
        return parity_check_of(self.gen)

    @cached_property
    def column_weights(self) -> tuple[int, ...]:
        return tuple(int(w) for w in self.gen.col_weights())

    @property
    def max_column_weight(self) -> int:
        return max(self.column_weights, default=0)

    @cached_property
    def pivots(self) -> tuple[np.ndarray, np.ndarray]:
        """(J, inv) with s = c[J] · inv for every codeword c = s · gen."""
        return solve_pivots(self.gen)

    def params(self) -> tuple[int, int, int]:
        return self.n_sm, self.l, self.distance

    def to_json(self) -> dict:
        return {"l": self.l, "n_sm": self.n_sm, "rows": self.gen.row_strings(), "distance": self.distance}

    @classmethod
    def from_json(cls, payload: dict | str, name: str = "") -> "SmCode":
        data = json.loads(payload) if isinstance(payload, str) else payload
        gen = BitMatrix.from_row_strings(data["rows"])
        if gen.shape != (int(data["l"]), int(data["n_sm"])):
            raise LdgmError(f"Declared {data['l']}x{data['n_sm']} generator does not match {gen.shape}")
        sm = cls(gen, name=name)
        if "distance" in data and data["distance"] is not None and int(data["distance"]) != sm.distance:
            raise LdgmError(f"Declared distance {data['distance']} but the generator has distance {sm.distance}")
        return sm


def repetition_sm_code(l: int, r: int) -> SmCode:
    """Block repetition: row i has ones in columns i·r .. i·r + r - 1, giving [r·l, l, r]."""
    if l < 1 or r < 1:
        raise LdgmError(f"Repetition code needs l >= 1 and r >= 1, got l={l}, r={r}")
    gen = np.kron(np.eye(l, dtype=np.uint8), np.ones((1, r), dtype=np.uint8))
    return SmCode(BitMatrix(gen), name=f"rep:{l}:{r}")


def identity_sm_code(l: int) -> SmCode:
    return SmCode(BitMatrix.identity(l), name=f"id:{l}")


# ======================================================================
# Parameter bounds
# ======================================================================


def d_max_bound(rows: int, cols: int, col_weight: int) -> int:
    """floor(C · w_C / R): no generator row can be heavier, so d_SM cannot exceed it."""
    if rows < 1 or cols < 1 or col_weight < 1:
        raise LdgmError(f"d_max_bound needs positive R, C, w_C, got ({rows}, {cols}, {col_weight})")
    return (cols * col_weight) // rows


def min_improvement_factor(col_weight: int) -> Fraction:
    if col_weight < 1:
        raise LdgmError(f"Column weight must be >= 1, got {col_weight}")
    return Fraction(1, col_weight)


def improvement_factor(cols: int, d: int, l: int) -> Fraction:
    """C / (d · l): measurements used relative to d-fold repetition."""
    if d < 1 or l < 1:
        raise LdgmError(f"improvement_factor needs positive d and l, got d={d}, l={l}")
    return Fraction(cols, d * l)


def additional_measurements(l: int, d: int, col_weight: int) -> Fraction:
    """l · (d / w_C - 1), the fewest measurements beyond l that can still reach distance d."""
    if col_weight < 1:
        raise LdgmError(f"Column weight must be >= 1, got {col_weight}")
    return l * (Fraction(d, col_weight) - 1)


def repetition_equivalent(sm: SmCode) -> tuple[int, Fraction]:
    """(d_SM · l, ratio to n_SM): what repeated extraction needs for the same distance."""
    needed = sm.distance * sm.l
    return needed, Fraction(needed, sm.n_sm)
