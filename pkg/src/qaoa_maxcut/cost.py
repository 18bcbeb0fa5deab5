"""Cost-layer kernels: one pass over the amplitudes instead of one per edge.

The weighted kernel accumulates each amplitude's total signed rotation
(+w for an uncut edge, -w for a cut edge) and applies a single phase
exp(-i*gamma*tot/2). The unweighted kernel gets the same total from
per-row popcounts of the adjacency bitmasks. Rotation totals depend only
on the graph, so plans cache them across layers and angles.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .graph import MASK_BITS, Graph
from .state import StateVector, _run_sliced, write_counter

_ONE = np.uint64(1)
_ALL_ONES = np.uint64(0xFFFFFFFFFFFFFFFF)

_POPCOUNT8 = np.array([bin(v).count("1") for v in range(256)], dtype=np.uint8)
_POPCOUNT8_LIST = _POPCOUNT8.tolist()


def popcount_u64(values: np.ndarray, use_table: bool = False) -> np.ndarray:
    """Set-bit count per element of a uint64 array.

    `use_table=True` forces the 8-bit lookup-table fallback for targets
    without a native popcount.
    """
    values = np.ascontiguousarray(values, dtype=np.uint64)
    if not use_table:
        return np.bitwise_count(values)
    as_bytes = values.view(np.uint8).reshape(-1, 8)
    return _POPCOUNT8[as_bytes].sum(axis=1, dtype=np.uint64).reshape(values.shape)


def popcount_int(value: int, use_table: bool = False) -> int:
    if not use_table:
        return value.bit_count()
    total = 0
    while value:
        total += _POPCOUNT8_LIST[value & 0xFF]
        value >>= 8
    return total


def broadcast_bit(b: int, i: int, word_bits: int = MASK_BITS) -> int:
    """Spread bit i of b to all word positions via two's-complement negation."""
    word_mask = (1 << word_bits) - 1
    return (~((b >> i) & 1) + 1) & word_mask


def row_cut_count(
    b: int, row_mask: int, i: int, word_bits: int = MASK_BITS, use_table: bool = False
) -> tuple[int, int, int, int]:
    """One row of the bitwise kernel; returns (b_I, b_I^b, masked, popcount)."""
    word_mask = (1 << word_bits) - 1
    b_broadcast = broadcast_bit(b, i, word_bits)
    xored = (b_broadcast ^ b) & word_mask
    masked = row_mask & xored
    return b_broadcast, xored, masked, popcount_int(masked, use_table)


class CompressedCostPlan:
    """Per-graph precomputation shared by the compressed cost kernels."""

    def __init__(self, graph: Graph):
        self.graph = graph
        self.row_mask = np.array(graph.row_mask, dtype=np.uint64)
        self.tot_edge = graph.tot_edge
        self.weights = tuple(w for _, _, w in graph.edges)
        self._rotation_totals: np.ndarray | None = None
        self._cut_counts: np.ndarray | None = None

    def rotation_totals(self) -> np.ndarray:
        """Signed rotation total per basis index (float64, cached)."""
        if self._rotation_totals is None:
            idx = np.arange(1 << self.graph.n, dtype=np.uint64)
            totals = np.zeros(idx.size, dtype=np.float64)
            for i, j, w in self.graph.edges:
                diff = ((idx >> np.uint64(i)) ^ (idx >> np.uint64(j))) & _ONE
                totals += w * (1.0 - 2.0 * diff.astype(np.float64))
            self._rotation_totals = totals
        return self._rotation_totals

    def cut_counts(self) -> np.ndarray:
        """Cut-edge count per basis index via bitmask popcounts (int64, cached)."""
        if self._cut_counts is None:
            self._require_unweighted()
            idx = np.arange(1 << self.graph.n, dtype=np.uint64)
            counts = np.zeros(idx.size, dtype=np.uint64)
            for i in range(self.graph.n):
                bit = (idx >> np.uint64(i)) & _ONE
                broadcast = bit * _ALL_ONES
                counts += popcount_u64(self.row_mask[i] & (broadcast ^ idx))
            self._cut_counts = counts.astype(np.int64)
        return self._cut_counts

    def _require_unweighted(self) -> None:
        if not self.graph.is_unweighted:
            raise ValueError("bitwise cost kernel requires an unweighted graph")


@lru_cache(maxsize=128)
def plan_for(graph: Graph) -> CompressedCostPlan:
    return CompressedCostPlan(graph)


def total_rotation_weighted(plan: CompressedCostPlan, b: int) -> float:
    """Sum over edges of w * (-1)^(b_i xor b_j)."""
    total = 0.0
    for i, j, w in plan.graph.edges:
        if ((b >> i) ^ (b >> j)) & 1:
            total -= w
        else:
            total += w
    return total


def cut_edge_count_bitwise(plan: CompressedCostPlan, b: int, use_table: bool = False) -> int:
    """Number of cut edges of assignment b, from per-row mask popcounts."""
    plan._require_unweighted()
    c_neg = 0
    for i in range(plan.graph.n):
        c_neg += row_cut_count(b, plan.graph.row_mask[i], i, use_table=use_table)[3]
    return c_neg


def total_rotation_unweighted(plan: CompressedCostPlan, b: int) -> int:
    """totEdge - 2 * cut count; equals the weighted total on unit weights."""
    return plan.tot_edge - 2 * cut_edge_count_bitwise(plan, b)


def _phase_table(tot_edge: int, gamma: float) -> np.ndarray:
    # Entry t+tot_edge holds exp(-i*gamma*t/2) for t in [-tot_edge, tot_edge].
    levels = np.arange(-tot_edge, tot_edge + 1, dtype=np.float64)
    return np.exp(-0.5j * gamma * levels)


def _check_state(s: StateVector, plan: CompressedCostPlan) -> None:
    if s.n != plan.graph.n:
        raise ValueError(f"state has {s.n} qubits but graph has {plan.graph.n} nodes")


def apply_cost_compressed(
    s: StateVector, plan: CompressedCostPlan, gamma: float, threads: int = 1
) -> StateVector:
    """Weighted rotation-compressed cost layer: one phase per amplitude."""
    _check_state(s, plan)
    phases = np.exp(-0.5j * gamma * plan.rotation_totals())

    def work(lo: int, hi: int) -> None:
        s.amps[lo:hi] *= phases[lo:hi]

    _run_sliced(work, s.amps.size, threads)
    write_counter.add(s.amps.size)
    return s


def apply_cost_bitwise(
    s: StateVector, plan: CompressedCostPlan, gamma: float, threads: int = 1
) -> StateVector:
    """Unweighted cost layer: integer rotation totals and a phase table."""
    _check_state(s, plan)
    table = _phase_table(plan.tot_edge, gamma)
    totals = plan.tot_edge - 2 * plan.cut_counts()
    phases = table[totals + plan.tot_edge]

    def work(lo: int, hi: int) -> None:
        s.amps[lo:hi] *= phases[lo:hi]

    _run_sliced(work, s.amps.size, threads)
    write_counter.add(s.amps.size)
    return s


def apply_cost_batched(
    s: StateVector,
    plan: CompressedCostPlan,
    gamma: float,
    batch_width: int,
    use_table_popcount: bool = False,
) -> StateVector:
    """Strip-mined variant of the bitwise kernel.

    The index space is walked in strips of `batch_width`; each strip
    computes its rotation totals lane by lane before its phases are
    gathered, mirroring a fixed-width vector unit. The final deposit is
    a single pass so the result is bit-identical to apply_cost_bitwise.
    """
    if batch_width not in (1, 2, 4, 8):
        raise ValueError(f"batch width must be 1, 2, 4, or 8, got {batch_width}")
    _check_state(s, plan)
    plan._require_unweighted()
    n = plan.graph.n
    masks = plan.graph.row_mask
    tot_edge = plan.tot_edge
    table = _phase_table(tot_edge, gamma)
    size = s.amps.size
    phases = np.empty(size, dtype=np.complex128)
    slots = np.empty(batch_width, dtype=np.int64)
    for base in range(0, size, batch_width):
        width = min(batch_width, size - base)
        counts = [0] * width
        for i in range(n):
            mask = masks[i]
            for lane in range(width):
                b = base + lane
                broadcast = broadcast_bit(b, i)
                counts[lane] += popcount_int(mask & (broadcast ^ b), use_table_popcount)
        for lane in range(width):
            slots[lane] = tot_edge - 2 * counts[lane] + tot_edge
        phases[base : base + width] = table[slots[:width]]
    s.amps[0:size] *= phases[0:size]
    write_counter.add(size)
    return s
