"""Benchmark harness: per-layer timing, backend comparison, p sweeps."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import circuit
from .circuit import QaoaParams
from .graph import Graph, complete_graph, cycle_graph, random_regular_graph
from .state import DEFAULT_MAX_QUBITS, max_abs_diff

EQUIVALENCE_TOL = 1e-10

BENCH_CSV_COLUMNS = (
    "qubits",
    "p",
    "backend",
    "threads",
    "batch_width",
    "init_time_ns",
    "cost_time_ns",
    "mixer_time_ns",
    "total_time_ns",
    "expectation",
    "approx_ratio",
    "seed",
    "normalized_time",
)

COMPARE_CSV_COLUMNS = BENCH_CSV_COLUMNS[:-1] + ("cost_speedup", "total_speedup", "max_abs_diff")


class EquivalenceError(RuntimeError):
    """Backends disagreed on the final state; speedups are not reported."""


@dataclass
class BenchRecord:
    qubits: int
    p: int
    backend: str
    threads: int
    batch_width: int | None
    init_time_ns: int
    cost_time_ns: int
    mixer_time_ns: int
    total_time_ns: int
    expectation: float | None = None
    approx_ratio: float | None = None
    seed: int = 0
    normalized_time: float | None = None

    def to_dict(self) -> dict:
        return {name: getattr(self, name) for name in BENCH_CSV_COLUMNS}


def params_from_seed(p: int, seed: int) -> QaoaParams:
    """Seeded random angle schedule used for benchmarking runs."""
    rng = np.random.default_rng(seed)
    return QaoaParams(
        gamma=tuple(rng.uniform(0.0, 2.0 * math.pi, p)),
        beta=tuple(rng.uniform(0.0, math.pi, p)),
    )


def parse_generator_spec(spec: str, n_override: int | None = None) -> Graph:
    """Build a graph from a spec like "u3r:n=10,seed=3" or "complete:n=4"."""
    kind, _, rest = spec.partition(":")
    kind = kind.strip().lower()
    kwargs: dict[str, int] = {}
    if rest:
        for item in rest.split(","):
            key, _, value = item.partition("=")
            if not value:
                raise ValueError(f"bad generator option {item!r} in {spec!r}")
            try:
                kwargs[key.strip()] = int(value)
            except ValueError:
                raise ValueError(f"non-integer generator option {item!r} in {spec!r}") from None
    if n_override is not None:
        kwargs["n"] = n_override
    if "n" not in kwargs:
        raise ValueError(f"generator spec {spec!r} needs n=")
    n = kwargs["n"]
    seed = kwargs.get("seed", 0)
    if kind in ("u3r", "w3r"):
        d = kwargs.get("d", 3)
        return random_regular_graph(n, d, weighted=(kind == "w3r"), seed=seed)
    if kind == "complete":
        return complete_graph(n)
    if kind == "cycle":
        return cycle_graph(n)
    raise ValueError(f"unknown generator kind {kind!r}; use u3r, w3r, complete, or cycle")


def timed_simulate(
    g: Graph,
    params: QaoaParams,
    backend: str,
    launch_control: bool = True,
    threads: int = 1,
    batch_width: int | None = None,
    max_qubits: int = DEFAULT_MAX_QUBITS,
):
    """Run the circuit with per-layer monotonic-clock timing.

    Returns (final state, init_ns, cost_ns, mixer_ns, total_ns).
    """
    circuit.validate_backend(backend, g)
    t_start = time.perf_counter_ns()
    s = circuit.init_state(g.n, launch_control, threads, max_qubits)
    init_ns = time.perf_counter_ns() - t_start
    cost_ns = 0
    mixer_ns = 0
    for gamma, beta in zip(params.gamma, params.beta):
        t0 = time.perf_counter_ns()
        circuit.apply_cost_layer(s, g, gamma, backend, threads, batch_width)
        t1 = time.perf_counter_ns()
        circuit.apply_mixer_layer(s, beta, threads)
        t2 = time.perf_counter_ns()
        cost_ns += t1 - t0
        mixer_ns += t2 - t1
    total_ns = time.perf_counter_ns() - t_start
    return s, init_ns, cost_ns, mixer_ns, total_ns


def run_simulate(
    g: Graph,
    p: int,
    backend: str,
    launch_control: bool = True,
    threads: int = 1,
    batch_width: int | None = None,
    seed: int = 0,
    reps: int = 1,
    with_ratio: bool = False,
    max_qubits: int = DEFAULT_MAX_QUBITS,
) -> list[BenchRecord]:
    """One timed record per repetition, expectation included."""
    from .optimize import approximation_ratio

    params = params_from_seed(p, seed)
    records = []
    for _ in range(reps):
        s, init_ns, cost_ns, mixer_ns, total_ns = timed_simulate(
            g, params, backend, launch_control, threads, batch_width, max_qubits
        )
        exp_val = circuit.expectation(g, s)
        ratio = approximation_ratio(g, exp_val) if with_ratio else None
        records.append(
            BenchRecord(
                qubits=g.n,
                p=p,
                backend=backend,
                threads=threads,
                batch_width=batch_width,
                init_time_ns=init_ns,
                cost_time_ns=cost_ns,
                mixer_time_ns=mixer_ns,
                total_time_ns=total_ns,
                expectation=exp_val,
                seed=seed,
                approx_ratio=ratio,
            )
        )
    return records


def _best_of(g, params, backend, launch_control, threads, batch_width, max_qubits, reps):
    best = None
    for _ in range(reps):
        _, init_ns, cost_ns, mixer_ns, total_ns = timed_simulate(
            g, params, backend, launch_control, threads, batch_width, max_qubits
        )
        if best is None or total_ns < best[3]:
            best = (init_ns, cost_ns, mixer_ns, total_ns)
    return best


def run_compare(
    qubit_counts: list[int],
    backends: list[str],
    graph_for_n,
    p: int = 5,
    launch_control: bool = True,
    threads: int = 1,
    batch_width: int | None = None,
    seed: int = 0,
    reps: int = 3,
    max_qubits: int = DEFAULT_MAX_QUBITS,
) -> list[dict]:
    """Time every backend on identical inputs; speedups are relative to the
    first backend and only reported after the states pass the equivalence gate."""
    if not backends:
        raise ValueError("need at least one backend to compare")
    rows = []
    for n in qubit_counts:
        g = graph_for_n(n)
        params = params_from_seed(p, seed)
        # Warm run doubles as the correctness gate.
        states = {
            b: circuit.simulate(g, params, b, launch_control, threads, batch_width, max_qubits=max_qubits)
            for b in backends
        }
        reference = states[backends[0]]
        diffs = {b: max_abs_diff(reference, states[b]) for b in backends}
        worst = max(diffs.values())
        if worst > EQUIVALENCE_TOL:
            raise EquivalenceError(
                f"backends disagree at n={n}: max |amp diff| = {worst:.3e} "
                f"(tolerance {EQUIVALENCE_TOL}); refusing to report speedups"
            )
        timings = {
            b: _best_of(g, params, b, launch_control, threads, batch_width, max_qubits, reps)
            for b in backends
        }
        ref_init, ref_cost, ref_mixer, ref_total = timings[backends[0]]
        for b in backends:
            init_ns, cost_ns, mixer_ns, total_ns = timings[b]
            rows.append(
                {
                    "qubits": n,
                    "p": p,
                    "backend": b,
                    "threads": threads,
                    "batch_width": batch_width,
                    "init_time_ns": init_ns,
                    "cost_time_ns": cost_ns,
                    "mixer_time_ns": mixer_ns,
                    "total_time_ns": total_ns,
                    "expectation": circuit.expectation(g, states[b]),
                    "approx_ratio": None,
                    "seed": seed,
                    "cost_speedup": ref_cost / cost_ns if cost_ns else math.inf,
                    "total_speedup": ref_total / total_ns if total_ns else math.inf,
                    "max_abs_diff": diffs[b],
                }
            )
    return rows


def run_sweep_p(
    g: Graph,
    p_values: list[int],
    backends: list[str],
    launch_control: bool = True,
    threads: int = 1,
    batch_width: int | None = None,
    seed: int = 0,
    reps: int = 3,
    max_qubits: int = DEFAULT_MAX_QUBITS,
) -> list[BenchRecord]:
    """One record per (p, backend); times normalized to the first backend at
    the smallest p."""
    if not p_values or not backends:
        raise ValueError("need at least one p value and one backend")
    p_values = sorted(p_values)
    records = []
    reference_total = None
    for backend in backends:
        for p in p_values:
            params = params_from_seed(p, seed)
            init_ns, cost_ns, mixer_ns, total_ns = _best_of(
                g, params, backend, launch_control, threads, batch_width, max_qubits, reps
            )
            if reference_total is None:
                reference_total = total_ns
            records.append(
                BenchRecord(
                    qubits=g.n,
                    p=p,
                    backend=backend,
                    threads=threads,
                    batch_width=batch_width,
                    init_time_ns=init_ns,
                    cost_time_ns=cost_ns,
                    mixer_time_ns=mixer_ns,
                    total_time_ns=total_ns,
                    seed=seed,
                    normalized_time=total_ns / reference_total,
                )
            )
    return records
