"""State-vector storage and the H / RX / RZZ gate kernels.

Conventions: bit i of the basis index is the value of qubit i,
RX(theta) = exp(-i*theta*X/2), RZZ(theta) = exp(-i*theta*ZZ/2).

All kernels update amplitudes in place and return the same StateVector.
Each kernel accepts a `threads` argument; the index space is partitioned
into disjoint contiguous slices so the parallel result is bit-identical
to the sequential one.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

DEFAULT_MAX_QUBITS = 26
_INV_SQRT2 = 1.0 / math.sqrt(2.0)

_ONE = np.uint64(1)


class _WriteCounter:
    """Counts amplitude writes performed by gate and cost kernels."""

    def __init__(self) -> None:
        self.amp_writes = 0

    def add(self, k: int) -> None:
        self.amp_writes += k

    def reset(self) -> None:
        self.amp_writes = 0


write_counter = _WriteCounter()


@dataclass
class StateVector:
    n: int
    amps: np.ndarray

    def copy(self) -> "StateVector":
        return StateVector(self.n, self.amps.copy())

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amps) ** 2)))


def check_qubit_budget(n: int, max_qubits: int = DEFAULT_MAX_QUBITS) -> None:
    if n < 1:
        raise ValueError("qubit count must be at least 1")
    if n > max_qubits:
        needed = 16 * (1 << n)
        raise ValueError(
            f"{n} qubits need {needed / 2**30:.1f} GiB of amplitudes "
            f"(guard is {max_qubits} qubits; raise max_qubits to override)"
        )


def init_zero_state(n: int, max_qubits: int = DEFAULT_MAX_QUBITS) -> StateVector:
    """|0...0>: amplitude 1 at index 0."""
    check_qubit_budget(n, max_qubits)
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = 1.0
    write_counter.add(1 << n)
    return StateVector(n, amps)


def _partition(total: int, threads: int) -> list[tuple[int, int]]:
    threads = max(1, min(threads, total))
    step = -(-total // threads)
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


def _run_sliced(work: Callable[[int, int], None], total: int, threads: int) -> None:
    if threads <= 1 or total <= 1:
        work(0, total)
        return
    parts = _partition(total, threads)
    with ThreadPoolExecutor(max_workers=len(parts)) as pool:
        for f in [pool.submit(work, lo, hi) for lo, hi in parts]:
            f.result()


def apply_h(s: StateVector, q: int, threads: int = 1) -> StateVector:
    """Hadamard on qubit q."""
    if not 0 <= q < s.n:
        raise IndexError(f"qubit {q} out of range for n={s.n}")
    view = s.amps.reshape(-1, 2, 1 << q)

    def work(lo: int, hi: int) -> None:
        a = view[lo:hi, 0]
        b = view[lo:hi, 1]
        top = (a + b) * _INV_SQRT2
        bot = (a - b) * _INV_SQRT2
        view[lo:hi, 0] = top
        view[lo:hi, 1] = bot

    _run_sliced(work, view.shape[0], threads)
    write_counter.add(s.amps.size)
    return s


def apply_rx(s: StateVector, q: int, theta: float, threads: int = 1) -> StateVector:
    """X-rotation exp(-i*theta*X/2) on qubit q."""
    if not 0 <= q < s.n:
        raise IndexError(f"qubit {q} out of range for n={s.n}")
    c = math.cos(theta / 2.0)
    ms = -1j * math.sin(theta / 2.0)
    view = s.amps.reshape(-1, 2, 1 << q)

    def work(lo: int, hi: int) -> None:
        a = view[lo:hi, 0]
        b = view[lo:hi, 1]
        top = c * a + ms * b
        bot = ms * a + c * b
        view[lo:hi, 0] = top
        view[lo:hi, 1] = bot

    _run_sliced(work, view.shape[0], threads)
    write_counter.add(s.amps.size)
    return s


def apply_rzz(s: StateVector, q1: int, q2: int, theta: float, threads: int = 1) -> StateVector:
    """ZZ-rotation exp(-i*theta*ZZ/2) on qubits q1, q2 (diagonal)."""
    if q1 == q2:
        raise ValueError("RZZ needs two distinct qubits")
    for q in (q1, q2):
        if not 0 <= q < s.n:
            raise IndexError(f"qubit {q} out of range for n={s.n}")
    e_same = complex(np.exp(-0.5j * theta))
    e_diff = complex(np.exp(0.5j * theta))
    uq1, uq2 = np.uint64(q1), np.uint64(q2)

    def work(lo: int, hi: int) -> None:
        idx = np.arange(lo, hi, dtype=np.uint64)
        diff = ((idx >> uq1) ^ (idx >> uq2)) & _ONE
        s.amps[lo:hi] *= np.where(diff.astype(bool), e_diff, e_same)

    _run_sliced(work, s.amps.size, threads)
    write_counter.add(s.amps.size)
    return s


def max_abs_diff(a: StateVector, b: StateVector) -> float:
    """Componentwise max |a[b] - b[b]|. Global phase is not quotiented."""
    if a.n != b.n:
        raise ValueError(f"qubit counts differ: {a.n} vs {b.n}")
    return float(np.max(np.abs(a.amps - b.amps)))


def dump_state(s: StateVector) -> str:
    """Debug dump: one "index real imag" line per amplitude."""
    lines = [f"{b} {float(amp.real)!r} {float(amp.imag)!r}" for b, amp in enumerate(s.amps)]
    return "\n".join(lines) + "\n"
