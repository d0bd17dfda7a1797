import math
import random

import pytest

from lutform.errors import ConvergenceError, DegenerateInputError
from lutform.excitations import Branch
from lutform.formfactor import (vertex_minus_left, vertex_minus_right, vertex_plus_left,
                                vertex_plus_right)
from lutform.oracle import (QuadratureConfig, brute_force_states, cauchy_det_lu,
                            determinant_suite, enumeration_suite, fourier_coefficient,
                            quadrature_suite, random_configuration,
                            vertex_left_quadrature, vertex_minus_right_quadrature,
                            vertex_plus_right_quadrature)


class TestQuadrature:
    @pytest.mark.parametrize("fn, args, expected", [
        (vertex_plus_right_quadrature, (1, -0.5), -0.5),
        (vertex_plus_right_quadrature, (2, -0.5), -0.25),
        (vertex_minus_right_quadrature, (0, -0.5), 1.0),
        (vertex_minus_right_quadrature, (-1, -0.5), 1.5),
        (vertex_minus_right_quadrature, (0, 0.7), 1.0),
        (vertex_left_quadrature, (-1, 0.5), 1.0),
        (vertex_left_quadrature, (0, 0.5), 0.5),
        (vertex_left_quadrature, (1, 0.5), 0.75),
    ])
    def test_examples(self, fn, args, expected):
        assert fn(*args) == pytest.approx(expected, abs=1e-8)

    def test_zero_prefactor(self):
        assert vertex_plus_right_quadrature(1, 0.0) == 0.0

    @pytest.mark.parametrize("s", [-0.95, -0.5, 0.0, 0.4, 2.3])
    def test_binomial_coefficients(self, s):
        # coefficient of z^k in (1 - z)^s is (-s)_k / k!
        for k in range(8):
            expected = 1.0
            for j in range(k):
                expected *= (j - s) / (j + 1)
            assert fourier_coefficient(k, s) == pytest.approx(expected, abs=1e-10)

    def test_continuation_below_minus_one(self):
        # (1 - z)^(-2.5): coefficients (2.5)_k / k!
        assert fourier_coefficient(3, -2.5) == pytest.approx(2.5 * 3.5 * 4.5 / 6, rel=1e-10)

    def test_pole_rejected(self):
        with pytest.raises(ValueError):
            fourier_coefficient(2, -2.0)

    @pytest.mark.parametrize("a", [-0.9, -0.5, 0.3, 0.7])
    def test_all_vertices(self, a):
        for k in range(1, 11):
            assert vertex_plus_right_quadrature(k, a) == pytest.approx(vertex_plus_right(k, a), abs=1e-7)
            assert vertex_left_quadrature(-k, a) == pytest.approx(vertex_plus_left(-k, a), abs=1e-7)
        for k in range(0, 11):
            assert vertex_minus_right_quadrature(-k, a) == pytest.approx(vertex_minus_right(-k, a), abs=1e-7)
            assert vertex_left_quadrature(k, a) == pytest.approx(vertex_minus_left(k, a), abs=1e-7)

    def test_config_invariants(self):
        with pytest.raises(ValueError):
            QuadratureConfig(nodes=8)
        with pytest.raises(ValueError):
            QuadratureConfig(singularity_offset=0.2)
        with pytest.raises(ValueError):
            QuadratureConfig(tolerance=0)

    def test_non_convergence(self):
        cfg = QuadratureConfig(nodes=16, tolerance=1e-300, max_doublings=1)
        with pytest.raises(ConvergenceError):
            fourier_coefficient(3, -0.5, cfg)

    def test_suite(self):
        cases = quadrature_suite()
        assert len(cases) == 4 * 42 and all(c["passed"] for c in cases)


class TestDeterminant:
    def test_examples(self):
        assert cauchy_det_lu((1,), (0,)) == 1.0
        assert cauchy_det_lu((2, 1), (0, -1)) == pytest.approx(-1 / 12, abs=1e-13)
        assert cauchy_det_lu((), ()) == 1.0

    def test_degenerate(self):
        with pytest.raises(DegenerateInputError):
            cauchy_det_lu((3,), (3,))

    def test_random_n6(self):
        from lutform.formfactor import cauchy_det

        p, q = (17, -4, 9, 25, -30, 2), (0, -11, 5, 28, -1, 13)
        assert cauchy_det_lu(p, q) == pytest.approx(cauchy_det(p, q), rel=1e-11)

    def test_random_configuration(self):
        rng = random.Random(3)
        for _ in range(50):
            p, q = random_configuration(rng)
            assert len(p) == len(q) <= 8
            assert len(set(p + q)) == 2 * len(p)

    def test_suite_seeded(self):
        a = determinant_suite(seed=5, count=50)
        b = determinant_suite(seed=5, count=50)
        assert a == b and all(c["passed"] for c in a)


class TestBruteForce:
    @pytest.mark.parametrize("m, count", [(0, 1), (3, 3), (7, 15), (12, 77)])
    def test_counts(self, m, count):
        assert len(brute_force_states("right", m)) == count
        assert len(brute_force_states("left", m)) == count

    def test_limit(self):
        with pytest.raises(ValueError):
            brute_force_states(Branch.RIGHT, 13)

    def test_suite(self):
        assert all(c["passed"] for c in enumeration_suite(8))
