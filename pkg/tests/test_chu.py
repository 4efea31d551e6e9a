import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from churate import (
    GAMMA_INF, ChuCircuit, DomainError, fano_budget, input_impedance,
    unmatched_power_transmission, unmatched_reflection, unmatched_transmission,
)
from churate.numerics import QuadratureSpec, integrate_semi_infinite

# closed forms of the two weighted log integrals of the bare circuit,
# quadrature-verified in TestStandardIntegrals below
SQRT2_PI = 4.442882938158366        # int_0^inf u^-2 ln(1+u^4) du
SQRT2_PI_3 = 1.4809609793861221     # int_0^inf u^-4 ln(1+u^4) du
K1_A005_INF = 6.579736267392906e-9  # 4 pi^2 a / c at a = 5 cm


def _freq_at_x(circ, x):
    """Frequency where 2*pi*f*a/c equals x."""
    return x / (2 * math.pi * circ.tau)


class TestInputImpedance:
    def test_high_frequency_limit(self):
        circ = ChuCircuit(a=0.05)
        z = input_impedance(circ, 1e15)
        assert z.real == pytest.approx(circ.r2, rel=1e-10)
        assert abs(z.imag) < 1e-3 * circ.r2

    def test_unit_electrical_size(self):
        # at 2*pi*f*a/c = 1: Z = R2*(0.5 - 0.5j)
        circ = ChuCircuit(a=0.05, r2=7.0)
        z = input_impedance(circ, _freq_at_x(circ, 1.0))
        assert z == pytest.approx(7.0 * (0.5 - 0.5j), rel=1e-12)

    @given(st.floats(min_value=1e-4, max_value=1.0),
           st.floats(min_value=1e3, max_value=1e12))
    def test_passive_real_part(self, a, f):
        z = input_impedance(ChuCircuit(a=a), f)
        assert 0.0 < z.real <= 1.0

    def test_dc_pole(self):
        with pytest.raises(DomainError):
            input_impedance(ChuCircuit(a=0.05), 0.0)


class TestBareResponses:
    def test_dc_values(self):
        circ = ChuCircuit(a=0.01)
        assert unmatched_transmission(circ, 0.0) == 0.0
        assert unmatched_reflection(circ, 0.0) == 1.0

    def test_high_frequency_transparency(self):
        circ = ChuCircuit(a=0.01)
        assert abs(unmatched_transmission(circ, 1e16)) == pytest.approx(1.0, abs=1e-6)

    def test_half_power_point(self):
        # 4x^4 = 1  =>  |T|^2 = |G|^2 = 1/2
        circ = ChuCircuit(a=0.03)
        f = _freq_at_x(circ, 4.0 ** -0.25)
        assert abs(unmatched_transmission(circ, f)) ** 2 == pytest.approx(0.5, rel=1e-12)
        assert abs(unmatched_reflection(circ, f)) ** 2 == pytest.approx(0.5, rel=1e-12)
        assert unmatched_power_transmission(circ, f) == pytest.approx(0.5, rel=1e-12)

    @given(st.floats(min_value=1e-4, max_value=1.0))
    def test_lossless_identity(self, a):
        circ = ChuCircuit(a=a)
        fs = np.geomspace(1e3, 1e13, 200)
        total = (np.abs(unmatched_reflection(circ, fs)) ** 2
                 + np.abs(unmatched_transmission(circ, fs)) ** 2)
        assert np.max(np.abs(total - 1.0)) < 1e-12


class TestFanoBudget:
    def test_no_finite_zero(self):
        budget = fano_budget(ChuCircuit(a=0.05), GAMMA_INF)
        assert budget.k1 == pytest.approx(K1_A005_INF, rel=1e-12)
        assert budget.k1 == pytest.approx(4 * math.pi ** 2 * 0.05 / 3e8, rel=1e-14)
        assert budget.k2 == pytest.approx(32 * math.pi ** 4 * 0.05 ** 3 / (3 * (3e8) ** 3),
                                          rel=1e-14)

    def test_zero_at_light_cone(self):
        circ = ChuCircuit(a=0.05)
        budget = fano_budget(circ, circ.c / circ.a)
        # zero up to round-off of the two cancelling 2a/c-sized terms
        assert abs(budget.k1) < 1e-15 * (4 * math.pi ** 2 * circ.tau)

    def test_rejects_nonpositive_zero(self):
        with pytest.raises(DomainError):
            fano_budget(ChuCircuit(a=0.05), 0.0)

    @given(st.floats(min_value=1e-4, max_value=1.0))
    def test_k2_always_positive(self, a):
        circ = ChuCircuit(a=a)
        for gamma in (circ.c / a, 10 * circ.c / a, GAMMA_INF):
            assert fano_budget(circ, gamma).k2 > 0


class TestStandardIntegrals:
    """Quadrature verification of the closed forms used by the saturation
    tests, before the saturation tests rely on them."""

    SPEC = QuadratureSpec(rel_tol=1e-10)

    def test_log_kernel_f2(self):
        got = integrate_semi_infinite(
            lambda u: np.where(u > 0, np.log1p(u ** 4) / np.maximum(u, 1e-300) ** 2, 0.0),
            self.SPEC)
        assert got == pytest.approx(SQRT2_PI, rel=1e-8)
        assert got == pytest.approx(math.sqrt(2) * math.pi, rel=1e-8)

    def test_log_kernel_f4(self):
        got = integrate_semi_infinite(
            lambda u: np.where(u > 0, np.log1p(u ** 4) / np.maximum(u, 1e-300) ** 4, 0.0),
            self.SPEC)
        assert got == pytest.approx(SQRT2_PI_3, rel=1e-8)
        assert got == pytest.approx(math.sqrt(2) * math.pi / 3, rel=1e-8)

    def test_quartic_pole_kernel(self):
        got = integrate_semi_infinite(lambda u: 1.0 / (1.0 + u ** 4), self.SPEC)
        assert got == pytest.approx(math.pi / (2 * math.sqrt(2)), rel=1e-9)


@pytest.mark.parametrize("a", [0.0005, 0.005, 0.05])
def test_bare_circuit_saturates_both_budgets(a):
    """The unmatched response spends the entire realizability budget.

    Integrals are evaluated in the dimensionless variable x = 2*pi*f*a/c to
    tame the f^-2 and f^-4 weights.
    """
    circ = ChuCircuit(a=a)
    spec = QuadratureSpec(rel_tol=1e-9)
    scale = 2 * math.pi * circ.tau

    def log_inv_refl(x):
        return np.log1p(4.0 * x ** 4)

    i2 = scale * integrate_semi_infinite(
        lambda x: np.where(x > 0, log_inv_refl(x) / np.maximum(x, 1e-300) ** 2, 0.0),
        spec)
    i4 = scale ** 3 * integrate_semi_infinite(
        lambda x: np.where(x > 0, log_inv_refl(x) / np.maximum(x, 1e-300) ** 4, 0.0),
        spec)
    budget = fano_budget(circ, GAMMA_INF)
    assert i2 == pytest.approx(budget.k1, rel=1e-6)
    assert i4 == pytest.approx(budget.k2, rel=1e-6)
