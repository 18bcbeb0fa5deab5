import math

import numpy as np
import pytest

from qaoa_maxcut.circuit import (
    QaoaParams,
    expectation,
    gate_counts,
    init_state,
    init_uniform,
    sample,
    simulate,
)
from qaoa_maxcut.graph import Graph, complete_graph, random_regular_graph
from qaoa_maxcut.state import StateVector, max_abs_diff

TRIANGLE = Graph.from_edges(3, [(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)])
SINGLE_EDGE = Graph.from_edges(2, [(0, 1, 1.0)])


def random_params(p, seed):
    rng = np.random.default_rng(seed)
    return QaoaParams(
        gamma=tuple(rng.uniform(0, 2 * math.pi, p)),
        beta=tuple(rng.uniform(0, math.pi, p)),
    )


class TestParams:
    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            QaoaParams(gamma=(0.1,), beta=(0.1, 0.2))

    def test_empty(self):
        with pytest.raises(ValueError):
            QaoaParams(gamma=(), beta=())

    def test_p(self):
        assert QaoaParams(gamma=(1, 2), beta=(3, 4)).p == 2


class TestInitUniform:
    def test_two_qubits(self):
        np.testing.assert_array_equal(init_uniform(2).amps, np.full(4, 0.5))

    def test_three_qubits(self):
        np.testing.assert_allclose(init_uniform(3).amps, np.full(8, 1 / (2 * math.sqrt(2))))

    def test_equals_hadamard_chain(self):
        for n in range(1, 13):
            direct = init_uniform(n)
            via_h = init_state(n, launch_control=False)
            assert max_abs_diff(direct, via_h) < 1e-12

    def test_guard(self):
        with pytest.raises(ValueError, match="GiB"):
            init_uniform(40)


class TestSimulate:
    def test_zero_angles_leave_uniform_state(self):
        g = random_regular_graph(6, 3, seed=0)
        s = simulate(g, QaoaParams(gamma=(0.0,), beta=(0.0,)), "baseline")
        assert max_abs_diff(s, init_uniform(6)) < 1e-14

    def test_single_edge_closed_form_point(self):
        s = simulate(SINGLE_EDGE, QaoaParams(gamma=(math.pi / 2,), beta=(math.pi / 8,)), "baseline")
        assert expectation(SINGLE_EDGE, s) == pytest.approx(
            0.5 * (1 + math.sin(math.pi / 4)), abs=1e-12
        )

    def test_backend_equivalence_triangle_p3(self):
        params = random_params(3, 7)
        base = simulate(TRIANGLE, params, "baseline")
        comp = simulate(TRIANGLE, params, "compressed")
        assert max_abs_diff(base, comp) <= 1e-10

    def test_bitwise_on_weighted_rejected(self):
        g = random_regular_graph(6, 3, weighted=True, seed=0)
        with pytest.raises(ValueError, match="unweighted"):
            simulate(g, random_params(1, 0), "bitwise")

    def test_unknown_backend(self):
        with pytest.raises(ValueError, match="unknown backend"):
            simulate(TRIANGLE, random_params(1, 0), "fast")

    def test_launch_control_equivalence(self):
        for backend in ("baseline", "compressed", "bitwise"):
            g = random_regular_graph(8, 3, seed=3)
            params = random_params(2, 3)
            on = simulate(g, params, backend, launch_control=True)
            off = simulate(g, params, backend, launch_control=False)
            assert max_abs_diff(on, off) < 1e-12

    def test_threads_match_sequential(self):
        g = random_regular_graph(7, 2, seed=4)
        params = random_params(2, 4)
        for backend in ("baseline", "compressed"):
            seq = simulate(g, params, backend, threads=1)
            par = simulate(g, params, backend, threads=3)
            assert max_abs_diff(seq, par) == 0

    def test_batched_matches_plain_bitwise(self):
        g = random_regular_graph(8, 3, seed=5)
        params = random_params(2, 5)
        plain = simulate(g, params, "bitwise")
        batched = simulate(g, params, "bitwise", batch_width=4)
        assert max_abs_diff(plain, batched) == 0


class TestExpectation:
    def test_triangle_uniform(self):
        # (6 assignments cutting 2 edges + 2 cutting none) / 8
        assert expectation(TRIANGLE, init_uniform(3)) == pytest.approx(1.5)

    def test_all_zeros_state(self):
        g = random_regular_graph(6, 3, seed=1)
        amps = np.zeros(64, dtype=np.complex128)
        amps[0] = 1.0
        assert expectation(g, StateVector(6, amps)) == 0

    def test_concentrated_on_cut(self):
        amps = np.zeros(4, dtype=np.complex128)
        amps[0b01] = 1.0
        assert expectation(SINGLE_EDGE, StateVector(2, amps)) == 1

    def test_bounded_by_total_weight(self):
        g = random_regular_graph(8, 3, weighted=True, seed=2)
        for seed in range(20):
            rng = np.random.default_rng(seed)
            amps = rng.normal(size=256) + 1j * rng.normal(size=256)
            amps /= np.linalg.norm(amps)
            val = expectation(g, StateVector(8, amps))
            assert 0 <= val <= g.total_weight + 1e-12

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            expectation(TRIANGLE, init_uniform(4))

    def test_permutation_equivariance(self):
        rng = np.random.default_rng(11)
        for trial in range(5):
            n = 6
            g = random_regular_graph(n, 3, weighted=bool(trial % 2), seed=trial)
            perm = rng.permutation(n)
            relabeled = Graph.from_edges(
                n, [(int(perm[i]), int(perm[j]), w) for i, j, w in g.edges]
            )
            params = random_params(2, trial)
            val = expectation(g, simulate(g, params, "compressed"))
            val_rel = expectation(relabeled, simulate(relabeled, params, "compressed"))
            assert val == pytest.approx(val_rel, abs=1e-9)


class TestSample:
    def test_concentrated_state(self):
        amps = np.zeros(4, dtype=np.complex128)
        amps[0b10] = 1.0
        draws = sample(StateVector(2, amps), shots=50, seed=1)
        assert set(draws.tolist()) == {0b10}

    def test_uniform_frequency(self):
        draws = sample(init_uniform(1), shots=10000, seed=3)
        freq0 = np.mean(draws == 0)
        assert 0.47 <= freq0 <= 0.53

    def test_zero_shots_rejected(self):
        with pytest.raises(ValueError):
            sample(init_uniform(2), shots=0)

    def test_unnormalized_rejected(self):
        s = StateVector(2, np.full(4, 0.6, dtype=np.complex128))
        with pytest.raises(ValueError, match="normalized"):
            sample(s, shots=10)

    def test_seed_determinism(self):
        s = init_uniform(4)
        np.testing.assert_array_equal(sample(s, 100, seed=9), sample(s, 100, seed=9))


class TestGateCounts:
    def test_complete_10(self):
        g = complete_graph(10)
        h, rzz, rx = gate_counts(10, g, 1)
        assert (h, rzz, rx) == (10, 45, 10)
        assert rzz / (h + rzz + rx) == pytest.approx(0.6923, abs=1e-3)

    def test_complete_30(self):
        g = complete_graph(30)
        h, rzz, rx = gate_counts(30, g, 1)
        assert (h, rzz, rx) == (30, 435, 30)
        assert rzz / (h + rzz + rx) == pytest.approx(0.879, abs=1e-3)

    def test_p_zero(self):
        assert gate_counts(5, TRIANGLE, 0) == (5, 0, 0)

    def test_ratio_formula(self):
        # complete graph at p=1: H : RZZ : RX = 2 : N-1 : 2
        for n in (10, 20, 30):
            h, rzz, rx = gate_counts(n, complete_graph(n), 1)
            assert (h * (n - 1), rx * (n - 1)) == (2 * rzz, 2 * rzz)
