"""Max-cut problem instances: edge-list parsing, generators, and the exact oracle.

Graphs are undirected, stored as a strict upper-triangular edge list plus
per-row connectivity bitmasks used by the bitwise cost kernel.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

import numpy as np

MASK_BITS = 64
BRUTE_FORCE_GUARD = 24


class GraphParseError(ValueError):
    """Raised when an edge-list text cannot be parsed."""


@dataclass(frozen=True)
class Graph:
    """An undirected weighted graph with n nodes and upper-triangular edges."""

    n: int
    edges: tuple[tuple[int, int, float], ...]
    row_mask: tuple[int, ...]
    tot_edge: int
    is_unweighted: bool

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int, float]]) -> "Graph":
        """Build a normalized Graph from (i, j, w) triples.

        Endpoints are swapped into i < j order; edges are sorted row-major.
        """
        if n < 1:
            raise ValueError("graph needs at least one node")
        if n > MASK_BITS:
            raise ValueError(f"node count {n} exceeds mask width {MASK_BITS}")
        norm = []
        seen = set()
        for i, j, w in edges:
            if i == j:
                raise ValueError(f"self-loop on node {i}")
            if i > j:
                i, j = j, i
            if not (0 <= i < j < n):
                raise ValueError(f"edge ({i}, {j}) out of range for n={n}")
            if (i, j) in seen:
                raise ValueError(f"duplicate edge ({i}, {j})")
            seen.add((i, j))
            norm.append((i, j, float(w)))
        norm.sort()
        masks = [0] * n
        for i, j, _ in norm:
            masks[i] |= 1 << j
        return Graph(
            n=n,
            edges=tuple(norm),
            row_mask=tuple(masks),
            tot_edge=len(norm),
            is_unweighted=all(w == 1.0 for _, _, w in norm),
        )

    @property
    def total_weight(self) -> float:
        return sum(w for _, _, w in self.edges)


@dataclass(frozen=True)
class Cut:
    """A partition of the nodes (bit i of `assignment` = side of node i)."""

    assignment: int
    value: float


def parse_edge_list(text: str) -> Graph:
    """Parse edge-list text: one "i j" or "i j w" per line, '#' comments.

    Omitted weights default to 1. Node count is 1 + max node id.
    """
    edges: list[tuple[int, int, float]] = []
    seen: set[tuple[int, int]] = set()
    max_node = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise GraphParseError(f"line {lineno}: expected 'i j' or 'i j w', got {line!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
            w = float(parts[2]) if len(parts) == 3 else 1.0
        except ValueError:
            raise GraphParseError(f"line {lineno}: non-numeric token in {line!r}") from None
        if i < 0 or j < 0:
            raise GraphParseError(f"line {lineno}: negative node id in {line!r}")
        if i == j:
            raise GraphParseError(f"line {lineno}: self-loop on node {i}")
        if i > j:
            i, j = j, i
        if (i, j) in seen:
            raise GraphParseError(f"line {lineno}: duplicate edge ({i}, {j})")
        seen.add((i, j))
        edges.append((i, j, w))
        max_node = max(max_node, j)
    if not edges:
        raise GraphParseError("no edges found")
    return Graph.from_edges(max_node + 1, edges)


def format_edge_list(g: Graph) -> str:
    """Render a Graph back to the canonical edge-list text."""
    lines = []
    for i, j, w in g.edges:
        if w == 1.0:
            lines.append(f"{i} {j}")
        else:
            lines.append(f"{i} {j} {w!r}")
    return "\n".join(lines) + "\n"


def row_mask_of(g: Graph, i: int) -> int:
    """Connectivity bitmask of node i: bit j set iff edge (i, j) with j > i."""
    if not 0 <= i < g.n:
        raise IndexError(f"node index {i} out of range for n={g.n}")
    return g.row_mask[i]


def cut_value(g: Graph, assignment: int) -> float:
    """Total weight of edges whose endpoints lie on opposite sides."""
    total = 0.0
    for i, j, w in g.edges:
        if ((assignment >> i) ^ (assignment >> j)) & 1:
            total += w
    return total


def cut_values_array(g: Graph) -> np.ndarray:
    """Cut value for every assignment b in [0, 2^n), as a float64 array."""
    idx = np.arange(1 << g.n, dtype=np.uint64)
    values = np.zeros(1 << g.n, dtype=np.float64)
    for i, j, w in g.edges:
        diff = ((idx >> np.uint64(i)) ^ (idx >> np.uint64(j))) & np.uint64(1)
        values += w * diff.astype(np.float64)
    return values


def brute_force_max_cut(g: Graph, max_nodes: int = BRUTE_FORCE_GUARD) -> Cut:
    """Exact max-cut by enumerating all 2^n assignments.

    Ties break toward the numerically smallest assignment. Refuses n above
    `max_nodes`; raise the guard explicitly for bigger instances.
    """
    if g.n > max_nodes:
        raise ValueError(
            f"brute force on n={g.n} exceeds guard {max_nodes}; "
            "pass max_nodes explicitly to enumerate anyway"
        )
    values = cut_values_array(g)
    best = int(np.argmax(values))
    return Cut(assignment=best, value=float(values[best]))


def random_regular_graph(
    n: int, d: int, weighted: bool = False, seed: int = 0, max_tries: int = 500
) -> Graph:
    """Simple d-regular graph via the pairing model with rejection.

    Weighted graphs draw edge weights uniformly from (0, 1]. Deterministic
    for a fixed (n, d, weighted, seed).
    """
    if d >= n:
        raise ValueError(f"degree {d} must be less than node count {n}")
    if (n * d) % 2 != 0:
        raise ValueError(f"n*d = {n * d} is odd; no {d}-regular graph on {n} nodes")
    rng = random.Random(seed)
    for _ in range(max_tries):
        stubs = [v for v in range(n) for _ in range(d)]
        rng.shuffle(stubs)
        pairs = set()
        ok = True
        for a, b in zip(stubs[::2], stubs[1::2]):
            if a == b:
                ok = False
                break
            e = (min(a, b), max(a, b))
            if e in pairs:
                ok = False
                break
            pairs.add(e)
        if not ok:
            continue
        ordered = sorted(pairs)
        if weighted:
            edges = [(i, j, 1.0 - rng.random()) for i, j in ordered]
        else:
            edges = [(i, j, 1.0) for i, j in ordered]
        return Graph.from_edges(n, edges)
    raise RuntimeError(f"pairing model failed after {max_tries} tries (n={n}, d={d})")


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j, 1.0) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 nodes")
    edges = [(i, i + 1, 1.0) for i in range(n - 1)] + [(0, n - 1, 1.0)]
    return Graph.from_edges(n, edges)
