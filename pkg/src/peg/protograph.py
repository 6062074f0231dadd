"""
Protograph design by progressive edge growth (PEG).

Edges are added one symbol node at a time. Each new edge goes to a check
node as far as possible from the symbol node in the current graph: an
unreachable check if one exists, otherwise a check on the deepest BFS level.
Ties go to the check with the lowest current degree, then to the earliest
check in the tie-break order (natural order, or a seeded permutation).
A repeated edge (protograph entry > 1) is only placed when every check is
already adjacent to the symbol node.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import networkx as nx
import numpy as np

from ..errors import InfeasibleError, LdgmError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DegreeSequence:
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if any(v < 0 for v in self.values):
            raise LdgmError(f"Degrees must be nonnegative, got {self.values}")
        if any(a > b for a, b in zip(self.values, self.values[1:])):
            raise LdgmError(f"Degree sequence must be nondecreasing, got {self.values}")

    @classmethod
    def uniform(cls, count: int, degree: int) -> "DegreeSequence":
        return cls((degree,) * count)

    @classmethod
    def parse(cls, text: str, count: int | None = None) -> "DegreeSequence":
        """'3' (uniform, needs count) or '2,3,3' (explicit)."""
        parts = [p.strip() for p in text.split(",") if p.strip()]
        if not parts or not all(p.isdigit() for p in parts):
            raise LdgmError(f"Cannot parse degree sequence {text!r}")
        if len(parts) == 1 and count is not None:
            return cls.uniform(count, int(parts[0]))
        return cls(tuple(int(p) for p in parts))

    def __len__(self) -> int:
        return len(self.values)

    @property
    def total(self) -> int:
        return sum(self.values)


@dataclass(frozen=True)
class Protograph:
    b: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.b, dtype=np.int64, copy=True)
        if arr.ndim != 2:
            raise LdgmError(f"Protograph must be a 2-D matrix, got shape {arr.shape}")
        if (arr < 0).any():
            raise LdgmError("Protograph entries must be nonnegative")
        arr.setflags(write=False)
        object.__setattr__(self, "b", arr)

    @property
    def n_c(self) -> int:
        return int(self.b.shape[0])

    @property
    def n_v(self) -> int:
        return int(self.b.shape[1])

    @property
    def column_sums(self) -> list[int]:
        return [int(v) for v in self.b.sum(axis=0)]

    @property
    def row_sums(self) -> list[int]:
        return [int(v) for v in self.b.sum(axis=1)]

    @property
    def edge_count(self) -> int:
        return int(self.b.sum())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Protograph):
            return NotImplemented
        return bool(np.array_equal(self.b, other.b))

    def __hash__(self) -> int:
        return hash((self.b.shape, self.b.tobytes()))

    def __repr__(self) -> str:
        return f"Protograph({self.b.tolist()})"


class _CheckTargets:
    """Tracks which checks may still take an edge."""

    def __init__(self, n_c: int, total: int, dc: Sequence[int] | None) -> None:
        self.dc = list(dc) if dc is not None else None
        self.lo, self.extra = divmod(total, n_c)
        self.n_at_hi = 0

    def open(self, i: int, degree: int) -> bool:
        if self.dc is not None:
            return degree < self.dc[i]
        if degree < self.lo:
            return True
        return degree == self.lo and self.n_at_hi < self.extra

    def placed(self, degree_after: int) -> None:
        if self.dc is None and degree_after == self.lo + 1:
            self.n_at_hi += 1


def peg_protograph(
    n_c: int,
    n_v: int,
    ds: DegreeSequence | Sequence[int],
    seed: int | None = None,
    dc: Sequence[int] | None = None,
    max_multiplicity: int | None = None,
) -> Protograph:
    """PEG protograph with column sums ds and, if given, row sums dc.

    With seed=None remaining ties go to the lowest check index. A seed replaces
    that rule with a seeded permutation of the checks, so restarts over seeds
    explore different protographs; seed=None is the canonical construction.
    """
    ds = ds if isinstance(ds, DegreeSequence) else DegreeSequence(tuple(ds))
    if n_c < 1 or n_v < 1:
        raise InfeasibleError(f"Protograph needs positive dimensions, got {n_c}x{n_v}")
    if n_c > n_v:
        raise InfeasibleError(f"Protograph needs n_c <= n_v, got {n_c}x{n_v}")
    if len(ds) != n_v:
        raise InfeasibleError(f"Symbol degree sequence has {len(ds)} entries for {n_v} symbol nodes")
    cap = max_multiplicity if max_multiplicity is not None else max(ds.values, default=0)
    for j, deg in enumerate(ds.values):
        if deg > n_c * cap:
            raise InfeasibleError(f"Symbol {j} needs degree {deg} but {n_c} checks x multiplicity {cap} allow {n_c * cap}")
    if dc is not None:
        dc = [int(v) for v in dc]
        if len(dc) != n_c:
            raise InfeasibleError(f"Check degree sequence has {len(dc)} entries for {n_c} check nodes")
        if sum(dc) != ds.total:
            logger.warning("Check degrees sum to %d but symbol degrees sum to %d; symbol degrees win", sum(dc), ds.total)

    rng = np.random.default_rng(seed) if seed is not None else None
    order = rng.permutation(n_c) if rng is not None else np.arange(n_c)
    tie_rank = {int(c): r for r, c in enumerate(order)}

    b = np.zeros((n_c, n_v), dtype=np.int64)
    degree = [0] * n_c
    targets = _CheckTargets(n_c, ds.total, dc)
    graph = nx.Graph()
    graph.add_nodes_from(("c", i) for i in range(n_c))
    graph.add_nodes_from(("s", j) for j in range(n_v))

    def pick(cands: list[int]) -> int:
        return min(cands, key=lambda i: (degree[i], tie_rank[i]))

    for j in range(n_v):
        for _ in range(ds.values[j]):
            open_checks = [i for i in range(n_c) if targets.open(i, degree[i])]
            if not open_checks:
                open_checks = list(range(n_c))
            fresh = [i for i in open_checks if b[i, j] == 0]
            if fresh:
                dist = nx.single_source_shortest_path_length(graph, ("s", j))
                unreachable = [i for i in fresh if ("c", i) not in dist]
                if unreachable:
                    cands = unreachable
                else:
                    deepest = max(dist[("c", i)] for i in fresh)
                    cands = [i for i in fresh if dist[("c", i)] == deepest]
            else:
                cands = [i for i in open_checks if b[i, j] < cap]
                if not cands:
                    cands = [i for i in range(n_c) if b[i, j] < cap]
                if not cands:
                    raise InfeasibleError(f"No check can take another edge of symbol {j} (multiplicity cap {cap})")
            i = pick(cands)
            b[i, j] += 1
            degree[i] += 1
            targets.placed(degree[i])
            graph.add_edge(("c", i), ("s", j))

    proto = Protograph(b)
    if dc is not None and proto.row_sums != dc:
        logger.warning("Requested check degrees %s not met; achieved %s", dc, proto.row_sums)
    logger.debug("PEG protograph %dx%d: row sums %s", n_c, n_v, proto.row_sums)
    return proto
