"""
Text form of a quasi-cyclic lift.

    # optional comments
    N=12
    expect=60,24,7
    x^6; x^7+x^6; 1; x^6+x; x^9+x^6
    x^7+x^5; x^10; x^10+x^7; x^6; x^3

Rows are lines, entries are separated by ';'. An entry is '0', or a sum of
terms joined by '+', each term '1', 'x' or 'x^k'. Whitespace is ignored.
The optional expect line declares [n, k, d] for verification.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from ..errors import FixtureParseError, LdgmError
from .lifting import QcLift

_TERM = re.compile(r"^(?:1|x(?:\^(\d+))?)$")


@dataclass(frozen=True)
class PolyMatrixFile:
    lift: QcLift
    expect: tuple[int, int, int] | None = None
    name: str = ""


def _parse_entry(text: str, N: int, where: str) -> list[int]:
    entry = "".join(text.split())
    if entry == "0":
        return []
    if not entry:
        raise FixtureParseError(f"Empty entry at {where}")
    shifts: list[int] = []
    for term in entry.split("+"):
        m = _TERM.match(term)
        if m is None:
            raise FixtureParseError(f"Malformed term {term!r} at {where}")
        if term == "1":
            s = 0
        else:
            s = int(m.group(1)) if m.group(1) is not None else 1
        if s >= N:
            raise FixtureParseError(f"Shift {s} >= N={N} at {where}")
        if s in shifts:
            raise FixtureParseError(f"Duplicate shift x^{s} at {where}")
        shifts.append(s)
    return shifts


def parse_poly_file(text: str, name: str = "") -> PolyMatrixFile:
    N: int | None = None
    expect: tuple[int, int, int] | None = None
    rows: list[list[list[int]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        compact = "".join(line.split())
        if compact.lower().startswith("n="):
            try:
                N = int(compact[2:])
            except ValueError:
                raise FixtureParseError(f"Line {lineno}: bad lifting factor {compact!r}") from None
            if N < 1:
                raise FixtureParseError(f"Line {lineno}: lifting factor must be positive")
            continue
        if compact.lower().startswith("expect="):
            parts = compact[7:].split(",")
            if len(parts) != 3 or not all(p.isdigit() for p in parts):
                raise FixtureParseError(f"Line {lineno}: expect needs n,k,d, got {compact!r}")
            expect = (int(parts[0]), int(parts[1]), int(parts[2]))
            continue
        if N is None:
            raise FixtureParseError(f"Line {lineno}: matrix row before the N=<factor> header")
        rows.append([_parse_entry(e, N, f"line {lineno}, entry {k + 1}") for k, e in enumerate(line.split(";"))])

    if N is None:
        raise FixtureParseError("Missing N=<factor> header")
    if not rows:
        raise FixtureParseError("Polynomial matrix has no rows")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise FixtureParseError(f"Ragged polynomial matrix (row widths {sorted(widths)})")
    try:
        lift = QcLift.from_shifts(rows, N)
    except LdgmError as exc:
        raise FixtureParseError(str(exc)) from exc
    return PolyMatrixFile(lift=lift, expect=expect, name=name)


def parse_poly_matrix(text: str) -> QcLift:
    return parse_poly_file(text).lift


def _format_entry(shifts: tuple[int, ...]) -> str:
    if not shifts:
        return "0"
    terms = []
    for s in sorted(shifts, reverse=True):
        terms.append("1" if s == 0 else ("x" if s == 1 else f"x^{s}"))
    return "+".join(terms)


def format_poly_matrix(lift: QcLift, expect: tuple[int, int, int] | None = None) -> str:
    lines = [f"N={lift.N}"]
    if expect is not None:
        lines.append("expect=" + ",".join(str(v) for v in expect))
    for row in lift.shifts:
        lines.append("; ".join(_format_entry(entry) for entry in row))
    return "\n".join(lines) + "\n"


def load_poly_file(path: str | Path) -> PolyMatrixFile:
    path = Path(path)
    return parse_poly_file(path.read_text(encoding="utf-8"), name=path.stem)
