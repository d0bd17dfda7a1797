import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lutform.errors import DomainError, UnsupportedOperatorError
from lutform.excitations import ParticleHoleState
from lutform.params import (ExponentPair, KleinSector, LuttingerParameters, OperatorKind,
                            OperatorSpec, excitation_energy, exponents_for_operator,
                            finite_size_energy, params_from_coupling, xi_from_xxz)


class TestXiFromXXZ:
    def test_xx_point(self):
        assert xi_from_xxz(0.0) == pytest.approx(1.0, abs=1e-15)

    def test_half(self):
        # eta = pi/3
        assert xi_from_xxz(0.5) == pytest.approx(4 / 3, rel=1e-14)

    def test_isotropic_limit(self):
        assert xi_from_xxz(1 - 1e-14) == pytest.approx(2.0, abs=1e-6)

    @pytest.mark.parametrize("delta", [1.0, -1.0, 1.5, -3.0])
    def test_rejects_gapped(self, delta):
        with pytest.raises(DomainError, match=r"\|delta\| < 1"):
            xi_from_xxz(delta)

    def test_monotone_on_grid(self):
        grid = np.linspace(-1, 1, 1002)[1:-1]
        xs = np.array([xi_from_xxz(d) for d in grid])
        assert np.all(np.diff(xs) > 0)
        assert xs.min() > 0 and xs.max() < 2


class TestCoupling:
    def test_free_fermions(self):
        p = params_from_coupling(0.0)
        assert (p.xi, p.u) == (1.0, 1.0)

    @pytest.mark.parametrize("lam, xi", [(0.6, 2.0), (-0.6, 0.5)])
    def test_values(self, lam, xi):
        p = params_from_coupling(lam)
        assert p.xi == pytest.approx(xi, rel=1e-14)
        assert p.u == pytest.approx(0.8, rel=1e-14)

    @given(st.floats(min_value=-0.999, max_value=0.999))
    def test_duality(self, lam):
        assert params_from_coupling(lam).xi * params_from_coupling(-lam).xi == pytest.approx(1, rel=1e-14)

    def test_rejects(self):
        with pytest.raises(DomainError):
            params_from_coupling(1.0)


def test_parameter_invariants():
    with pytest.raises(DomainError):
        LuttingerParameters(xi=0.0)
    with pytest.raises(DomainError):
        LuttingerParameters(xi=1.0, damping=-0.1)
    with pytest.raises(DomainError):
        LuttingerParameters(xi=1.0, length=0)


class TestExponents:
    def test_spin_xx(self):
        assert exponents_for_operator(OperatorSpec(OperatorKind.SPIN_LOWERING), 1.0) == ExponentPair(-0.5, 0.5)

    def test_density_xx(self):
        assert exponents_for_operator(OperatorSpec(OperatorKind.DENSITY), 1.0) == ExponentPair(1.0, -1.0)

    def test_fermi_lambda1_xx(self):
        pair = exponents_for_operator(OperatorSpec(OperatorKind.FERMI_FIELD_RIGHT), 1.0, KleinSector.LAMBDA1)
        assert pair == ExponentPair(-1.0, 0.0)

    @given(st.floats(min_value=0.05, max_value=10.0))
    def test_sum_rules(self, xi):
        for kind in (OperatorKind.SPIN_LOWERING, OperatorKind.BOSE_FIELD, OperatorKind.DENSITY):
            pair = exponents_for_operator(OperatorSpec(kind), xi)
            assert pair.a + pair.c == pytest.approx(0, abs=1e-15)
        for kind in (OperatorKind.FERMI_FIELD_RIGHT, OperatorKind.FERMI_FIELD_LEFT):
            l1 = exponents_for_operator(OperatorSpec(kind), xi, "lambda1")
            l2 = exponents_for_operator(OperatorSpec(kind), xi, "lambda2")
            assert l1.a + l2.c == pytest.approx(0, abs=1e-14)
            assert l1.c + l2.a == pytest.approx(0, abs=1e-14)

    def test_fermi_needs_sector(self):
        with pytest.raises(UnsupportedOperatorError):
            exponents_for_operator(OperatorSpec(OperatorKind.FERMI_FIELD_LEFT), 1.0)
        with pytest.raises(UnsupportedOperatorError):
            exponents_for_operator(OperatorSpec(OperatorKind.DENSITY), 1.0, "lambda1")

    def test_higher_fermi_harmonic_refused(self):
        with pytest.raises(UnsupportedOperatorError):
            exponents_for_operator(OperatorSpec(OperatorKind.FERMI_FIELD_RIGHT, 1), 1.0, "lambda1")


class TestEnergies:
    L0 = 37.0

    def test_ground(self):
        assert finite_size_energy(0, 0, LuttingerParameters(1.3, 1.0, self.L0)) == 0

    def test_unit(self):
        assert finite_size_energy(1, 1, LuttingerParameters(1.0, 1.0, self.L0)) == pytest.approx(math.pi / self.L0)

    def test_charge_two(self):
        assert finite_size_energy(2, 0, LuttingerParameters(2.0, 1.0, self.L0)) == pytest.approx(4 * math.pi / self.L0)

    @given(st.integers(-20, 20), st.integers(-20, 20), st.floats(0.1, 5.0))
    def test_reflection(self, dn, dq, xi):
        p = LuttingerParameters(xi, 0.7, 11.0)
        assert finite_size_energy(dn, dq, p) == finite_size_energy(-dn, -dq, p)

    def test_excitation(self):
        p = LuttingerParameters(1.0, 1.0, self.L0)
        assert excitation_energy(ParticleHoleState.empty(), p) == 0
        assert excitation_energy(ParticleHoleState("right", (1,), (0,)), p) == pytest.approx(2 * math.pi / self.L0)
        assert excitation_energy(ParticleHoleState("right", (2, 1), (0, -1)), p) == pytest.approx(8 * math.pi / self.L0)
