"""
Rotated surface code of odd distance d.

Data qubit (r, c), 1 <= r, c <= d, has 1-based index (r - 1)·d + c.

- Bulk plaquettes sit on the (d-1)^2 cells with top-left corner (a, b);
  cell type is X when a + b is even, Z otherwise.
- Weight-2 X checks lie on the top edge above Z cells (b even) and on the
  bottom edge below Z cells (b odd).
- Weight-2 Z checks lie on the left edge beside X cells (a odd) and on the
  right edge beside X cells (a even).

With this layout Z on row 1 and X on column 1 are the logical operators.
"""

from __future__ import annotations

import logging

from ..algebra.pauli import PauliVec
from ..errors import LdgmError
from .code import StabilizerCode, validate

logger = logging.getLogger(__name__)


def _qubit(d: int, r: int, c: int) -> int:
    """0-based index of data qubit (r, c)."""
    return (r - 1) * d + (c - 1)


def build_rotated_surface_code(d: int) -> StabilizerCode:
    if d < 3 or d % 2 == 0:
        raise LdgmError(f"Rotated surface code needs an odd distance >= 3, got {d}")
    n = d * d
    x_checks: list[list[int]] = []
    z_checks: list[list[int]] = []

    for a in range(1, d):
        for b in range(1, d):
            support = [_qubit(d, a, b), _qubit(d, a, b + 1), _qubit(d, a + 1, b), _qubit(d, a + 1, b + 1)]
            (x_checks if (a + b) % 2 == 0 else z_checks).append(support)

    for b in range(1, d):
        if b % 2 == 0:
            x_checks.append([_qubit(d, 1, b), _qubit(d, 1, b + 1)])
        else:
            x_checks.append([_qubit(d, d, b), _qubit(d, d, b + 1)])

    for a in range(1, d):
        if a % 2 == 1:
            z_checks.append([_qubit(d, a, 1), _qubit(d, a + 1, 1)])
        else:
            z_checks.append([_qubit(d, a, d), _qubit(d, a + 1, d)])

    generators = [PauliVec.on_qubits(n, "X", s) for s in x_checks]
    generators += [PauliVec.on_qubits(n, "Z", s) for s in z_checks]
    logical_z = PauliVec.on_qubits(n, "Z", [_qubit(d, 1, c) for c in range(1, d + 1)])
    logical_x = PauliVec.on_qubits(n, "X", [_qubit(d, r, 1) for r in range(1, d + 1)])

    code = StabilizerCode(
        n=n,
        k=1,
        generators=tuple(generators),
        logical_x=logical_x,
        logical_z=logical_z,
        name=f"rsc:{d}",
    )
    validate(code)
    logger.debug("Built rotated surface code d=%d: %d X checks, %d Z checks", d, len(x_checks), len(z_checks))
    return code


def parse_code_spec(spec: str) -> StabilizerCode:
    """'rsc:<d>' -> rotated surface code."""
    kind, _, arg = spec.partition(":")
    if kind != "rsc" or not arg.isdigit():
        raise LdgmError(f"Unknown code spec {spec!r}; expected 'rsc:<odd d>'")
    return build_rotated_surface_code(int(arg))
