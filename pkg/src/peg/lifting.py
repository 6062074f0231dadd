"""
Quasi-cyclic lifting of protographs.

Each protograph entry b_ij becomes a sum of b_ij distinct N x N circulant
permutation matrices. x^r denotes the circulant whose row i has its one at
column (i + r) mod N.

Shift selection is greedy, edge by edge in PEG order: for every free shift of
the current entry, all N copies are added to the lifted Tanner graph and the
shortest cycle through the new edge is measured; the shift with the longest
such cycle is kept. A bounded backtracking pass then removes any lifted
4-cycle the greedy pass left behind.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from typing import Sequence

import networkx as nx
import numpy as np

from ..algebra.bitmatrix import BitMatrix
from ..errors import LdgmError
from .protograph import Protograph

logger = logging.getLogger(__name__)

DEFAULT_REPAIR_BUDGET = 200_000


def circulant(N: int, r: int) -> BitMatrix:
    if N < 1:
        raise LdgmError(f"Lifting factor must be positive, got {N}")
    if not 0 <= r < N:
        raise LdgmError(f"Shift {r} out of range [0, {N})")
    return BitMatrix(np.roll(np.eye(N, dtype=np.uint8), r, axis=1))


@dataclass(frozen=True)
class QcLift:
    proto: Protograph
    N: int
    shifts: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self) -> None:
        if self.N < 1:
            raise LdgmError(f"Lifting factor must be positive, got {self.N}")
        shifts = tuple(tuple(tuple(sorted(int(s) for s in entry)) for entry in row) for row in self.shifts)
        object.__setattr__(self, "shifts", shifts)
        if len(shifts) != self.proto.n_c or any(len(row) != self.proto.n_v for row in shifts):
            raise LdgmError(f"Shift table does not match the {self.proto.n_c}x{self.proto.n_v} protograph")
        for i, row in enumerate(shifts):
            for j, entry in enumerate(row):
                if len(entry) != self.proto.b[i, j]:
                    raise LdgmError(f"Entry ({i},{j}) has {len(entry)} shifts, protograph wants {self.proto.b[i, j]}")
                if len(set(entry)) != len(entry):
                    raise LdgmError(f"Duplicate shift in entry ({i},{j}): {entry}")
                if any(not 0 <= s < self.N for s in entry):
                    raise LdgmError(f"Shift out of range [0, {self.N}) in entry ({i},{j}): {entry}")

    @classmethod
    def from_shifts(cls, shifts: Sequence[Sequence[Sequence[int]]], N: int) -> "QcLift":
        b = [[len(entry) for entry in row] for row in shifts]
        return cls(Protograph(np.array(b, dtype=np.int64).reshape(len(b), -1 if b else 0)), N, shifts)

    @property
    def shape(self) -> tuple[int, int]:
        return self.proto.n_c * self.N, self.proto.n_v * self.N


def expand(lift: QcLift) -> BitMatrix:
    N = lift.N
    out = np.zeros(lift.shape, dtype=np.uint8)
    eye = np.eye(N, dtype=np.uint8)
    for i, row in enumerate(lift.shifts):
        for j, entry in enumerate(row):
            block = out[i * N : (i + 1) * N, j * N : (j + 1) * N]
            for s in entry:
                block += np.roll(eye, s, axis=1)
    return BitMatrix(out, cols=lift.shape[1])


# ======================================================================
# Cycle checks
# ======================================================================


def _four_cycle_through(shifts: Sequence[Sequence[Sequence[int]]], N: int, i: int, j: int) -> bool:
    """Lifted 4-cycle using some edge of entry (i, j), among the shifts assigned so far."""
    n_c, n_v = len(shifts), len(shifts[0])
    for i2 in range(n_c):
        for j2 in range(n_v):
            for a, b, c, d in product(shifts[i][j], shifts[i2][j], shifts[i2][j2], shifts[i][j2]):
                if i2 == i and a == b:
                    continue
                if j2 == j and b == c:
                    continue
                if i2 == i and c == d:
                    continue
                if j2 == j and d == a:
                    continue
                if (a - b + c - d) % N == 0:
                    return True
    return False


def has_four_cycle(lift: QcLift) -> bool:
    """Shift-sum test: some closed walk c-s-c'-s' has a - b + c - d = 0 mod N."""
    return any(
        _four_cycle_through(lift.shifts, lift.N, i, j)
        for i in range(lift.proto.n_c)
        for j in range(lift.proto.n_v)
        if lift.shifts[i][j]
    )


def tanner_graph(M: BitMatrix) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(("c", i) for i in range(M.rows))
    graph.add_nodes_from(("s", j) for j in range(M.cols))
    for i, j in np.argwhere(M.bits):
        graph.add_edge(("c", int(i)), ("s", int(j)))
    return graph


def tanner_girth(M: BitMatrix) -> float:
    """Length of the shortest cycle in the Tanner graph of M, or inf if there is none."""
    graph = tanner_graph(M)
    best = float("inf")
    for root in graph.nodes:
        if graph.degree(root) < 2:
            continue
        pred, dist = nx.predecessor(graph, root, return_seen=True)
        for node, parents in pred.items():
            if len(parents) >= 2:
                best = min(best, 2 * dist[node])
    return best


# ======================================================================
# Shift selection
# ======================================================================


def _edge_order(proto: Protograph) -> list[tuple[int, int]]:
    """One slot per protograph edge, symbol by symbol."""
    return [(i, j) for j in range(proto.n_v) for i in range(proto.n_c) for _ in range(int(proto.b[i, j]))]


def _local_girth(graph: nx.Graph, N: int, i: int, j: int, s: int) -> float:
    u, v = ("c", i, 0), ("s", j, s % N)
    graph.remove_edge(u, v)
    try:
        return nx.shortest_path_length(graph, u, v) + 1
    except nx.NetworkXNoPath:
        return float("inf")
    finally:
        graph.add_edge(u, v)


def _add_circulant(graph: nx.Graph, N: int, i: int, j: int, s: int) -> None:
    graph.add_edges_from((("c", i, r), ("s", j, (r + s) % N)) for r in range(N))


def _remove_circulant(graph: nx.Graph, N: int, i: int, j: int, s: int) -> None:
    graph.remove_edges_from((("c", i, r), ("s", j, (r + s) % N)) for r in range(N))


def _scan_order(N: int, rng: np.random.Generator | None) -> list[int]:
    start = int(rng.integers(N)) if rng is not None else 0
    return [(start + k) % N for k in range(N)]


def qc_peg_shifts(
    proto: Protograph,
    N: int,
    seed: int | None = None,
    repair_budget: int = DEFAULT_REPAIR_BUDGET,
) -> QcLift:
    """Circulant shifts for every protograph edge, each maximising the local girth.

    With seed=None shifts are scanned from 0, so ties go to the smallest shift.
    A seed replaces that rule with a scan starting at a seeded offset; the
    repair pass uses the same order.
    """
    if N < 1:
        raise LdgmError(f"Lifting factor must be positive, got {N}")
    if int(proto.b.max(initial=0)) > N:
        raise LdgmError(f"Entry {int(proto.b.max())} needs more distinct shifts than N={N} provides")
    rng = np.random.default_rng(seed) if seed is not None else None

    graph = nx.Graph()
    graph.add_nodes_from(("c", i, r) for i in range(proto.n_c) for r in range(N))
    graph.add_nodes_from(("s", j, r) for j in range(proto.n_v) for r in range(N))
    shifts: list[list[list[int]]] = [[[] for _ in range(proto.n_v)] for _ in range(proto.n_c)]

    slots = _edge_order(proto)
    for i, j in slots:
        best_shift, best_girth = -1, -1.0
        for s in _scan_order(N, rng):
            if s in shifts[i][j]:
                continue
            _add_circulant(graph, N, i, j, s)
            girth = _local_girth(graph, N, i, j, s)
            _remove_circulant(graph, N, i, j, s)
            if girth > best_girth:
                best_shift, best_girth = s, girth
        shifts[i][j].append(best_shift)
        _add_circulant(graph, N, i, j, best_shift)

    lift = QcLift(proto, N, shifts)
    if has_four_cycle(lift):
        repaired = _repair_four_cycles(proto, N, slots, shifts, repair_budget, rng)
        if repaired is not None:
            lift = QcLift(proto, N, repaired)
        else:
            logger.warning("Lifted 4-cycles remain after a repair budget of %d steps", repair_budget)
    logger.debug("QC-PEG lift %dx%d, N=%d, four-cycle free: %s", proto.n_c, proto.n_v, N, not has_four_cycle(lift))
    return lift


def _repair_four_cycles(
    proto: Protograph,
    N: int,
    slots: list[tuple[int, int]],
    greedy: list[list[list[int]]],
    budget: int,
    rng: np.random.Generator | None,
) -> list[list[list[int]]] | None:
    """Depth-first search for a 4-cycle-free assignment, greedy choice tried first at every slot."""
    preferred: list[list[int]] = []
    seen: dict[tuple[int, int], int] = {}
    for i, j in slots:
        k = seen.get((i, j), 0)
        seen[(i, j)] = k + 1
        first = greedy[i][j][k]
        preferred.append([first] + [s for s in _scan_order(N, rng) if s != first])

    current: list[list[list[int]]] = [[[] for _ in range(proto.n_v)] for _ in range(proto.n_c)]
    steps = 0

    def place(depth: int) -> bool:
        nonlocal steps
        if depth == len(slots):
            return True
        i, j = slots[depth]
        for s in preferred[depth]:
            if s in current[i][j]:
                continue
            steps += 1
            if steps > budget:
                return False
            current[i][j].append(s)
            if not _four_cycle_through(current, N, i, j) and place(depth + 1):
                return True
            current[i][j].pop()
        return False

    if place(0):
        return current
    return None
