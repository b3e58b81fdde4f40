import math

import numpy as np
import pytest

from specmm import (
    InstanceSet,
    SimplexPoint,
    SpectraplexPoint,
    SymMatrix,
    best_response_index,
    frobenius_inner,
    lambda_min,
    lambda_min_by_bisection,
    payoff,
    sample_simplex,
    sample_spectraplex,
    spectraplex_linear_min,
    weighted_combination,
)

from conftest import random_instance, random_orthogonal, random_symmetric


def pauli_pair():
    z = SymMatrix(np.array([[1.0, 0.0], [0.0, -1.0]]))
    x = SymMatrix(np.array([[0.0, 1.0], [1.0, 0.0]]))
    return InstanceSet((z, x))


def diag_pair():
    return InstanceSet((SymMatrix(np.diag([1.0, 0.0])), SymMatrix(np.diag([0.0, 1.0]))))


class TestDomainTypes:
    def test_spectraplex_accepts_density_matrices(self):
        SpectraplexPoint(SymMatrix(np.eye(3) / 3.0))
        SpectraplexPoint(SymMatrix(np.diag([1.0, 0.0])))

    def test_spectraplex_rejects_bad_trace(self):
        with pytest.raises(ValueError, match="trace"):
            SpectraplexPoint(SymMatrix(np.eye(2)))

    def test_spectraplex_rejects_indefinite(self):
        with pytest.raises(ValueError, match="semidefinite"):
            SpectraplexPoint(SymMatrix(np.diag([1.5, -0.5])))

    def test_spectraplex_tolerates_rounding_noise(self):
        SpectraplexPoint(SymMatrix(np.diag([1.0 + 1e-12, -1e-12])))

    def test_simplex_accepts_probability_vectors(self):
        SimplexPoint(np.array([0.25, 0.75]))
        SimplexPoint(np.array([1.0]))
        assert SimplexPoint.uniform(4).weights == pytest.approx([0.25] * 4)

    def test_simplex_rejects_negative_mass(self):
        with pytest.raises(ValueError, match="nonnegative"):
            SimplexPoint(np.array([1.5, -0.5]))

    def test_simplex_rejects_bad_sum(self):
        with pytest.raises(ValueError, match="sum"):
            SimplexPoint(np.array([0.4, 0.4]))

    def test_instance_rejects_mixed_orders(self):
        with pytest.raises(ValueError, match="order"):
            InstanceSet((SymMatrix(np.eye(2)), SymMatrix(np.eye(3))))

    def test_instance_rejects_empty(self):
        with pytest.raises(ValueError, match="at least one"):
            InstanceSet(())


class TestSpectraplexLinearMin:
    def test_diagonal(self):
        val, x = spectraplex_linear_min(SymMatrix(np.diag([3.0, -2.0, 5.0])))
        assert val == -2.0
        expect = np.zeros((3, 3))
        expect[1, 1] = 1.0
        assert np.array_equal(x.array, expect)

    def test_tie_takes_first_eigenvector(self):
        val, x = spectraplex_linear_min(SymMatrix(np.eye(2)))
        assert val == 1.0
        assert np.array_equal(x.array, np.diag([1.0, 0.0]))

    def test_exchange_matrix(self):
        val, x = spectraplex_linear_min(SymMatrix(np.array([[0.0, 1.0], [1.0, 0.0]])))
        assert val == pytest.approx(-1.0, abs=1e-12)
        assert np.abs(x.array - np.array([[0.5, -0.5], [-0.5, 0.5]])).max() <= 1e-12

    def test_minimum_is_attained_by_reported_point(self, rng):
        for _ in range(10):
            a = random_symmetric(rng, 6)
            val, x = spectraplex_linear_min(a)
            assert frobenius_inner(a, x.matrix) == pytest.approx(val, abs=1e-9)

    def test_value_lower_bounds_all_feasible_points(self, rng):
        a = random_symmetric(rng, 5)
        val, _ = spectraplex_linear_min(a)
        for _ in range(100):
            x = sample_spectraplex(5, rng)
            assert frobenius_inner(a, x.matrix) >= val - 1e-9

    def test_rotation_invariance(self, rng):
        for _ in range(10):
            a = random_symmetric(rng, 5)
            q = random_orthogonal(rng, 5)
            val, _ = spectraplex_linear_min(a)
            val_rot, _ = spectraplex_linear_min(SymMatrix(q @ a.array @ q.T))
            assert val_rot == pytest.approx(val, abs=1e-10)


class TestBisection:
    def test_identity(self):
        assert lambda_min_by_bisection(SymMatrix(np.eye(2)), 1e-8) == pytest.approx(1.0, abs=1e-8)

    def test_diagonal(self):
        got = lambda_min_by_bisection(SymMatrix(np.diag([3.0, -2.0, 5.0])), 1e-8)
        assert got == pytest.approx(-2.0, abs=1e-8)

    def test_zero_matrix(self):
        assert lambda_min_by_bisection(SymMatrix(np.zeros((3, 3))), 1e-8) == 0.0

    def test_agrees_with_direct_route(self, rng):
        for _ in range(15):
            a = random_symmetric(rng, 6)
            got = lambda_min_by_bisection(a, 1e-8)
            assert abs(got - lambda_min(a)) <= 1e-8 + 1e-9

    def test_respects_requested_tolerance(self, rng):
        a = random_symmetric(rng, 4)
        for tol in (1e-4, 1e-6, 1e-8):
            assert abs(lambda_min_by_bisection(a, tol) - lambda_min(a)) <= tol + 1e-9

    def test_rejects_nonpositive_tolerance(self):
        with pytest.raises(ValueError, match="positive"):
            lambda_min_by_bisection(SymMatrix(np.eye(2)), 0.0)


class TestBestResponse:
    def test_tie_breaks_to_lowest_index(self):
        x = SpectraplexPoint(SymMatrix(np.eye(2) / 2.0))
        z = SymMatrix(np.array([[1.0, 0.0], [0.0, -1.0]]))
        xm = SymMatrix(np.array([[0.0, 1.0], [1.0, 0.0]]))
        assert best_response_index(x, InstanceSet((z, xm))) == (0, 0.0)

    def test_diagonal_instances(self):
        inst = diag_pair()
        e1 = SpectraplexPoint(SymMatrix(np.diag([1.0, 0.0])))
        e2 = SpectraplexPoint(SymMatrix(np.diag([0.0, 1.0])))
        assert best_response_index(e1, inst) == (0, 1.0)
        assert best_response_index(e2, inst) == (1, 1.0)

    def test_envelope_upper_bound(self, rng):
        # the best response dominates the payoff at every simplex corner
        inst = random_instance(rng, 4, 5)
        for _ in range(10):
            x = sample_spectraplex(4, rng)
            _, best = best_response_index(x, inst)
            for i in range(5):
                e = np.zeros(5)
                e[i] = 1.0
                assert best >= payoff(SimplexPoint(e), x, inst) - 1e-12

    def test_dimension_mismatch(self, rng):
        x = sample_spectraplex(3, rng)
        with pytest.raises(ValueError, match="mismatch"):
            best_response_index(x, diag_pair())


class TestWeightedCombinationAndPayoff:
    def test_weighted_combination_entries(self):
        inst = pauli_pair()
        y = SimplexPoint(np.array([0.25, 0.75]))
        got = weighted_combination(y, inst)
        assert np.array_equal(got.array, np.array([[0.25, 0.75], [0.75, -0.25]]))

    def test_payoff_two_routes_agree(self, rng):
        inst = random_instance(rng, 4, 3)
        for _ in range(10):
            y = sample_simplex(3, rng)
            x = sample_spectraplex(4, rng)
            direct = payoff(y, x, inst)
            via_combo = frobenius_inner(weighted_combination(y, inst), x.matrix)
            assert direct == pytest.approx(via_combo, abs=1e-12)

    def test_payoff_bilinear_in_y(self, rng):
        inst = random_instance(rng, 3, 4)
        x = sample_spectraplex(3, rng)
        a = sample_simplex(4, rng)
        b = sample_simplex(4, rng)
        mix = SimplexPoint(0.5 * a.weights + 0.5 * b.weights)
        assert payoff(mix, x, inst) == pytest.approx(
            0.5 * payoff(a, x, inst) + 0.5 * payoff(b, x, inst), abs=1e-12
        )

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="mismatch"):
            weighted_combination(SimplexPoint(np.array([1.0])), diag_pair())


class TestSamplers:
    def test_spectraplex_sampler_hits_domain(self, rng):
        for n in (1, 2, 5):
            x = sample_spectraplex(n, rng)
            assert abs(np.trace(x.array) - 1.0) <= 1e-10
            assert lambda_min(x.matrix) >= -1e-10

    def test_simplex_sampler_hits_domain(self, rng):
        for m in (1, 3, 6):
            y = sample_simplex(m, rng)
            assert y.weights.min() >= 0.0
            assert y.weights.sum() == pytest.approx(1.0, abs=1e-12)

    def test_deterministic_under_seed(self):
        a = sample_spectraplex(4, np.random.default_rng(7))
        b = sample_spectraplex(4, np.random.default_rng(7))
        assert np.array_equal(a.array, b.array)
