"""
Phenomenological noise model and binomial weight bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.stats import binom

from ..errors import LdgmError

ModelKind = Literal["meas", "combined"]


@dataclass(frozen=True)
class NoiseModel:
    kind: ModelKind
    p_m: float
    qubit_ratio: float = 5.0

    def __post_init__(self) -> None:
        if self.kind not in ("meas", "combined"):
            raise LdgmError(f"Unknown noise model {self.kind!r}; expected 'meas' or 'combined'")
        if not 0.0 <= self.p_m <= 1.0:
            raise LdgmError(f"p_m must lie in [0, 1], got {self.p_m}")
        if self.qubit_ratio <= 0:
            raise LdgmError(f"qubit_ratio must be positive, got {self.qubit_ratio}")

    @property
    def p_q(self) -> float:
        return 0.0 if self.kind == "meas" else self.p_m / self.qubit_ratio


def binomial_weight(n: int, w: int, p: float) -> float:
    """A_w(p) = C(n, w) p^w (1 - p)^(n - w)."""
    if not 0 <= w <= n:
        raise LdgmError(f"Weight {w} outside [0, {n}]")
    if p <= 0.0:
        return 1.0 if w == 0 else 0.0
    if p >= 1.0:
        return 1.0 if w == n else 0.0
    return float(np.exp(binom.logpmf(w, n, p)))


def tail_mass(n: int, W: int, p: float) -> float:
    """Probability of more than W errors among n sites."""
    if W >= n or p <= 0.0:
        return 0.0
    return float(binom.sf(W, n, p))


def choose_truncation(n: int, p: float, tol: float) -> int:
    """Smallest W with P(weight > W) <= tol."""
    if tol <= 0:
        raise LdgmError(f"Tail tolerance must be positive, got {tol}")
    for W in range(n + 1):
        if tail_mass(n, W, p) <= tol:
            return W
    return n


def parse_grid(spec: str) -> np.ndarray:
    """'start:stop:points' (linear) or 'start:stop:points,log' (geometric)."""
    body, _, scale = spec.partition(",")
    parts = body.split(":")
    if len(parts) != 3:
        raise LdgmError(f"Grid spec {spec!r} must look like 'start:stop:points[,log]'")
    try:
        start, stop, points = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise LdgmError(f"Grid spec {spec!r} has non-numeric fields") from None
    if points < 1:
        raise LdgmError(f"Grid spec {spec!r} has no points")
    if not (0.0 <= start <= 1.0 and 0.0 <= stop <= 1.0):
        raise LdgmError(f"Grid spec {spec!r} leaves [0, 1]")
    scale = scale.strip().lower()
    if scale == "log":
        if start <= 0 or stop <= 0:
            raise LdgmError(f"Log grid {spec!r} needs positive endpoints")
        return np.geomspace(start, stop, points)
    if scale not in ("", "lin"):
        raise LdgmError(f"Unknown grid scale {scale!r}")
    return np.linspace(start, stop, points)
