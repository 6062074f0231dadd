"""
Published protographs and the shipped lifted fixtures.

All six lifts expand to 24 x 60 generators with uniform column weight 3 and
minimum distance 7.
"""

from __future__ import annotations

from pathlib import Path

from ..utils.paths import FIXTURE_DIR
from .polymatrix import PolyMatrixFile, load_poly_file
from .protograph import Protograph

PROTOGRAPHS: dict[str, list[list[int]]] = {
    "b2x5": [
        [1, 2, 1, 2, 2],
        [2, 1, 2, 1, 1],
    ],
    "b4x10": [
        [1, 0, 1, 1, 1, 0, 1, 1, 0, 1],
        [0, 1, 1, 1, 1, 1, 1, 0, 1, 1],
        [1, 1, 0, 0, 1, 1, 1, 1, 1, 0],
        [1, 1, 1, 1, 0, 1, 0, 1, 1, 1],
    ],
    "b6x15": [
        [1, 1, 0, 0, 1, 0, 1, 1, 0, 0, 0, 1, 0, 1, 1],
        [1, 0, 0, 1, 0, 0, 0, 1, 1, 0, 1, 1, 1, 0, 0],
        [1, 1, 1, 0, 0, 1, 0, 0, 0, 1, 1, 0, 0, 1, 0],
        [0, 1, 1, 1, 1, 0, 0, 1, 1, 1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 1, 1, 0, 1, 0, 1, 0, 1, 1, 1],
        [0, 0, 1, 1, 0, 1, 1, 0, 0, 1, 0, 1, 1, 0, 1],
    ],
    "b8x20": [
        [1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 1, 1],
        [1, 1, 0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 0, 0, 1],
        [0, 1, 1, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 1, 0, 0, 0, 0, 1, 1],
        [0, 1, 0, 0, 1, 0, 1, 0, 1, 0, 1, 1, 0, 0, 0, 1, 0, 0, 0, 0],
        [0, 0, 1, 1, 0, 1, 0, 1, 1, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0],
        [1, 0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 0, 1, 1, 0, 0],
        [0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 1, 1, 0, 1, 1, 0],
    ],
}

# fixture name -> (protograph it lifts, lifting factor)
FIXTURES: dict[str, tuple[str, int]] = {
    "h2x5_1": ("b2x5", 12),
    "h2x5_2": ("b2x5", 12),
    "h4x10_1": ("b4x10", 6),
    "h4x10_2": ("b4x10", 6),
    "h6x15": ("b6x15", 4),
    "h8x20": ("b8x20", 3),
}

# (n_c, n_v, N) for each published shape, all giving 24 x 60 generators
REFERENCE_SHAPES: dict[str, tuple[int, int, int]] = {
    "b2x5": (2, 5, 12),
    "b4x10": (4, 10, 6),
    "b6x15": (6, 15, 4),
    "b8x20": (8, 20, 3),
}


def reference_protographs() -> dict[str, Protograph]:
    return {name: Protograph(rows) for name, rows in PROTOGRAPHS.items()}


def fixture_path(name: str, fixture_dir: Path = FIXTURE_DIR) -> Path:
    return Path(fixture_dir) / f"{name}.txt"


def load_fixture(name: str, fixture_dir: Path = FIXTURE_DIR) -> PolyMatrixFile:
    if name not in FIXTURES:
        raise KeyError(f"Unknown fixture {name!r}; known: {', '.join(FIXTURES)}")
    return load_poly_file(fixture_path(name, fixture_dir))


def load_all_fixtures(fixture_dir: Path = FIXTURE_DIR) -> dict[str, PolyMatrixFile]:
    return {name: load_fixture(name, fixture_dir) for name in FIXTURES}
