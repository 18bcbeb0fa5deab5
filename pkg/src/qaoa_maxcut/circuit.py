"""Assemble and run the p-level QAOA circuit for a max-cut graph."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import cost, state
from .graph import Graph, cut_values_array
from .state import DEFAULT_MAX_QUBITS, StateVector, check_qubit_budget

BACKENDS = ("baseline", "compressed", "bitwise")


@dataclass(frozen=True)
class QaoaParams:
    """Angle schedule: gamma in [0, 2*pi) and beta in [0, pi), one per level."""

    gamma: tuple[float, ...]
    beta: tuple[float, ...]

    def __post_init__(self):
        if len(self.gamma) != len(self.beta):
            raise ValueError("gamma and beta must have the same length")
        if len(self.gamma) < 1:
            raise ValueError("need at least one level")

    @property
    def p(self) -> int:
        return len(self.gamma)


def validate_backend(backend: str, g: Graph | None = None) -> str:
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}; choose from {BACKENDS}")
    if backend == "bitwise" and g is not None and not g.is_unweighted:
        raise ValueError("bitwise backend requires an unweighted graph")
    return backend


def init_uniform(n: int, max_qubits: int = DEFAULT_MAX_QUBITS) -> StateVector:
    """Uniform superposition set directly, skipping the N Hadamard gates."""
    check_qubit_budget(n, max_qubits)
    amp = np.sqrt(1.0 / (1 << n))  # one correctly rounded sqrt, not n products
    amps = np.full(1 << n, amp, dtype=np.complex128)
    state.write_counter.add(1 << n)
    return StateVector(n, amps)


def init_state(
    n: int,
    launch_control: bool = True,
    threads: int = 1,
    max_qubits: int = DEFAULT_MAX_QUBITS,
) -> StateVector:
    if launch_control:
        return init_uniform(n, max_qubits)
    s = state.init_zero_state(n, max_qubits)
    for q in range(n):
        state.apply_h(s, q, threads=threads)
    return s


def apply_cost_layer(
    s: StateVector,
    g: Graph,
    gamma: float,
    backend: str = "baseline",
    threads: int = 1,
    batch_width: int | None = None,
    use_table_popcount: bool = False,
) -> StateVector:
    """One cost layer. Baseline sweeps RZZ(w*gamma) per edge in row-major
    upper-triangular order; the other backends do a single compressed pass."""
    validate_backend(backend, g)
    if backend == "baseline":
        for i, j, w in g.edges:
            state.apply_rzz(s, i, j, w * gamma, threads=threads)
        return s
    plan = cost.plan_for(g)
    if backend == "compressed":
        return cost.apply_cost_compressed(s, plan, gamma, threads=threads)
    if batch_width is not None:
        return cost.apply_cost_batched(s, plan, gamma, batch_width, use_table_popcount)
    return cost.apply_cost_bitwise(s, plan, gamma, threads=threads)


def apply_mixer_layer(s: StateVector, beta: float, threads: int = 1) -> StateVector:
    # Mixer convention paired with the RZZ(w*gamma) cost layer; on a single
    # unit edge at p=1 it yields F = (1 + sin(2*beta)*sin(gamma)) / 2.
    for q in range(s.n):
        state.apply_rx(s, q, -beta, threads=threads)
    return s


def simulate(
    g: Graph,
    params: QaoaParams,
    backend: str = "baseline",
    launch_control: bool = True,
    threads: int = 1,
    batch_width: int | None = None,
    use_table_popcount: bool = False,
    max_qubits: int = DEFAULT_MAX_QUBITS,
) -> StateVector:
    """Run the full p-level circuit and return the final state."""
    validate_backend(backend, g)
    s = init_state(g.n, launch_control, threads, max_qubits)
    for gamma, beta in zip(params.gamma, params.beta):
        apply_cost_layer(s, g, gamma, backend, threads, batch_width, use_table_popcount)
        apply_mixer_layer(s, beta, threads)
    return s


def expectation(g: Graph, s: StateVector) -> float:
    """Exact expected cut value: sum_b |amps[b]|^2 * cutValue(b)."""
    if s.n != g.n:
        raise ValueError(f"state has {s.n} qubits but graph has {g.n} nodes")
    probs = np.abs(s.amps) ** 2
    return float(np.sum(probs * cut_values_array(g)))


def sample(s: StateVector, shots: int, seed: int = 0) -> np.ndarray:
    """Draw basis indices with probability |amps[b]|^2 (seeded)."""
    if shots < 1:
        raise ValueError("shots must be at least 1")
    probs = np.abs(s.amps) ** 2
    total = probs.sum()
    if abs(total - 1.0) > 1e-6:
        raise ValueError(f"state is not normalized (norm^2 = {total!r})")
    rng = np.random.default_rng(seed)
    return rng.choice(probs.size, size=shots, p=probs / total)


def gate_counts(n: int, g: Graph, p: int) -> tuple[int, int, int]:
    """(H, RZZ, RX) gate counts for a p-level circuit without launch control."""
    return n, p * g.tot_edge, p * n
