"""Classical side of the hybrid loop: tune the angle schedule.

A seeded Nelder-Mead simplex search maximizes the exact cut expectation
over the 2p-dimensional angle space. Angles wrap into [0, 2*pi) for gamma
and [0, pi) for beta, keeping the search space compact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .circuit import QaoaParams, expectation, simulate, validate_backend
from .graph import Graph, brute_force_max_cut
from .state import DEFAULT_MAX_QUBITS

TWO_PI = 2.0 * math.pi

INIT_STRATEGIES = ("linear-ramp", "random")


@dataclass
class OptimizeReport:
    best_params: QaoaParams
    best_expectation: float
    history: list[tuple[int, float]] = field(default_factory=list)
    evaluations: int = 0
    approx_ratio: float | None = None

    def to_dict(self) -> dict:
        return {
            "best_gamma": list(self.best_params.gamma),
            "best_beta": list(self.best_params.beta),
            "best_expectation": self.best_expectation,
            "evaluations": self.evaluations,
            "approx_ratio": self.approx_ratio,
            "history": [[i, v] for i, v in self.history],
        }


def linear_ramp_params(p: int) -> QaoaParams:
    """gamma rises and beta falls linearly across the levels."""
    frac = [(i + 0.5) / p for i in range(p)]
    gamma = tuple(f * (math.pi / 2.0) for f in frac)
    beta = tuple((1.0 - f) * (math.pi / 2.0) for f in frac)
    return QaoaParams(gamma=gamma, beta=beta)


def _wrap(x: np.ndarray, p: int) -> QaoaParams:
    gamma = tuple(float(v % TWO_PI) for v in x[:p])
    beta = tuple(float(v % math.pi) for v in x[p:])
    return QaoaParams(gamma=gamma, beta=beta)


class _BudgetExhausted(Exception):
    pass


def _nelder_mead_min(fn, x0: np.ndarray, step: float, max_iter: int = 100_000) -> None:
    """Standard reflect/expand/contract/shrink loop; fn raises to stop."""
    dim = x0.size
    pts = [x0.copy()]
    for i in range(dim):
        x = x0.copy()
        x[i] += step
        pts.append(x)
    vals = [fn(x) for x in pts]
    for _ in range(max_iter):
        order = sorted(range(dim + 1), key=lambda k: vals[k])
        pts = [pts[k] for k in order]
        vals = [vals[k] for k in order]
        if vals[-1] - vals[0] < 1e-12:
            return
        centroid = np.mean(pts[:-1], axis=0)
        reflected = centroid + (centroid - pts[-1])
        f_ref = fn(reflected)
        if f_ref < vals[0]:
            expanded = centroid + 2.0 * (centroid - pts[-1])
            f_exp = fn(expanded)
            if f_exp < f_ref:
                pts[-1], vals[-1] = expanded, f_exp
            else:
                pts[-1], vals[-1] = reflected, f_ref
        elif f_ref < vals[-2]:
            pts[-1], vals[-1] = reflected, f_ref
        else:
            contracted = centroid + 0.5 * (pts[-1] - centroid)
            f_con = fn(contracted)
            if f_con < vals[-1]:
                pts[-1], vals[-1] = contracted, f_con
            else:
                for k in range(1, dim + 1):
                    pts[k] = pts[0] + 0.5 * (pts[k] - pts[0])
                    vals[k] = fn(pts[k])


def optimize(
    g: Graph,
    p: int,
    backend: str = "compressed",
    budget: int = 1000,
    seed: int = 0,
    init_strategy: str = "linear-ramp",
    launch_control: bool = True,
    threads: int = 1,
    max_qubits: int = DEFAULT_MAX_QUBITS,
) -> OptimizeReport:
    """Maximize the cut expectation within `budget` circuit evaluations."""
    if budget < 1:
        raise ValueError("budget must be at least 1")
    if p < 1:
        raise ValueError("level count must be at least 1")
    validate_backend(backend, g)
    if init_strategy not in INIT_STRATEGIES:
        raise ValueError(f"unknown init strategy {init_strategy!r}; choose from {INIT_STRATEGIES}")

    if init_strategy == "linear-ramp":
        start = linear_ramp_params(p)
    else:
        rng = np.random.default_rng(seed)
        start = QaoaParams(
            gamma=tuple(rng.uniform(0.0, TWO_PI, p)),
            beta=tuple(rng.uniform(0.0, math.pi, p)),
        )
    x0 = np.array(start.gamma + start.beta, dtype=np.float64)

    history: list[tuple[int, float]] = []
    best_x = x0.copy()
    best_val = -math.inf
    evals = 0

    def objective(x: np.ndarray) -> float:
        nonlocal evals, best_x, best_val
        if evals >= budget:
            raise _BudgetExhausted
        params = _wrap(x, p)
        val = expectation(
            g,
            simulate(g, params, backend, launch_control, threads, max_qubits=max_qubits),
        )
        history.append((evals, val))
        evals += 1
        if val > best_val:
            best_val = val
            best_x = x.copy()
        return -val

    try:
        _nelder_mead_min(objective, x0, step=0.25)
    except _BudgetExhausted:
        pass

    return OptimizeReport(
        best_params=_wrap(best_x, p),
        best_expectation=best_val,
        history=history,
        evaluations=evals,
    )


def approximation_ratio(g: Graph, expectation_value: float, max_nodes: int = 24) -> float:
    """Expectation over the brute-force optimum; 1 for an edgeless graph."""
    if g.tot_edge == 0:
        return 1.0
    try:
        optimum = brute_force_max_cut(g, max_nodes=max_nodes).value
    except ValueError as exc:
        raise ValueError(
            f"cannot compute approximation ratio: {exc}; skip ratio reporting for n={g.n}"
        ) from exc
    return expectation_value / optimum
