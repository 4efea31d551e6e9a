import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from churate import (
    BracketError, ConvergenceError, DomainError, QuadratureSpec, RootBracket,
    find_root, integrate_band, integrate_semi_infinite,
)
from churate.numerics import integrate_band_log

DOTTIE = 0.7390851332151607   # fixed point of cos, see oracle below

SPEC = QuadratureSpec(rel_tol=1e-10)


class TestIntegrateBand:
    def test_constant(self):
        assert integrate_band(lambda f: np.ones_like(f), (1.0, 2.0), SPEC) \
            == pytest.approx(1.0, rel=1e-12)

    def test_sine_half_period(self):
        got = integrate_band(np.sin, (0.0, math.pi), SPEC)
        assert got == pytest.approx(2.0, rel=1e-10)

    def test_inverse_square(self):
        got = integrate_band(lambda f: f ** -2.0, (1.0, 10.0), SPEC)
        assert got == pytest.approx(0.9, rel=1e-12)

    def test_invalid_band(self):
        with pytest.raises(DomainError):
            integrate_band(np.sin, (2.0, 1.0), SPEC)
        with pytest.raises(DomainError):
            integrate_band(np.sin, (-1.0, 1.0), SPEC)

    def test_convergence_error_carries_best_estimate(self):
        tight = QuadratureSpec(rel_tol=1e-14, max_subdivisions=2)
        with pytest.raises(ConvergenceError) as err:
            integrate_band(lambda f: np.exp(-f) * np.sin(40 * f), (0.0, 20.0), tight)
        assert err.value.best_estimate is not None
        assert err.value.error_estimate > 0

    def test_deterministic(self):
        f = lambda x: np.exp(-x) * np.cos(7 * x)
        a = integrate_band(f, (0.0, 30.0), SPEC)
        b = integrate_band(f, (0.0, 30.0), SPEC)
        assert a == b

    @given(st.floats(min_value=-3, max_value=3),
           st.floats(min_value=-3, max_value=3))
    def test_linearity(self, alpha, beta):
        g = lambda f: np.sin(f)
        h = lambda f: f ** 2
        band = (0.5, 2.5)
        combined = integrate_band(lambda f: alpha * g(f) + beta * h(f), band, SPEC)
        split = alpha * integrate_band(g, band, SPEC) \
            + beta * integrate_band(h, band, SPEC)
        scale = abs(combined) + abs(split) + 1.0
        assert abs(combined - split) <= 2 * SPEC.rel_tol * scale


class TestIntegrateBandLog:
    def test_matches_linear_axis(self):
        got = integrate_band_log(lambda f: f ** -2.0, (1.0, 1e6), SPEC)
        assert got == pytest.approx(1.0 - 1e-6, rel=1e-11)

    def test_requires_positive_edge(self):
        with pytest.raises(DomainError):
            integrate_band_log(lambda f: f, (0.0, 1.0), SPEC)


class TestSemiInfinite:
    def test_exponential(self):
        got = integrate_semi_infinite(lambda x: np.exp(-x), SPEC)
        assert got == pytest.approx(1.0, rel=1e-10)

    def test_log_quartic(self):
        got = integrate_semi_infinite(
            lambda u: np.where(u > 0, np.log1p(u ** 4) / np.maximum(u, 1e-300) ** 2, 0.0),
            SPEC)
        # cross-checked against a 2^22-point fixed trapezoid oracle and the
        # closed form sqrt(2)*pi
        assert got == pytest.approx(4.442882938158366, rel=1e-8)

    def test_quartic_pole(self):
        got = integrate_semi_infinite(lambda u: 1.0 / (1.0 + u ** 4), SPEC)
        assert got == pytest.approx(math.pi / (2 * math.sqrt(2)), rel=1e-9)


class TestFindRoot:
    def test_parabola(self):
        root = find_root(lambda x: x * x - 4.0, (0.0, 5.0))
        assert root == pytest.approx(2.0, abs=1e-10)

    def test_dottie_number(self):
        # oracle: damped fixed-point iteration of cos
        x = 0.7
        for _ in range(200):
            x = 0.5 * (x + math.cos(x))
        root = find_root(lambda t: math.cos(t) - t, (0.0, 1.0))
        assert root == pytest.approx(x, abs=1e-9)
        assert root == pytest.approx(DOTTIE, abs=1e-6)

    def test_bad_bracket(self):
        with pytest.raises(BracketError):
            find_root(lambda x: x + 10.0, (0.0, 1.0))
        with pytest.raises(BracketError):
            RootBracket(lo=1.0, hi=0.0, f_lo=-1.0, f_hi=1.0)

    @given(st.floats(min_value=0.05, max_value=0.95))
    def test_bracket_independence(self, split):
        residual = lambda x: math.expm1(x) - 1.0   # root at ln 2
        whole = find_root(residual, (0.0, 2.0), tol=1e-13)
        lo = split * math.log(2.0)
        partial = find_root(residual, (lo, 2.0), tol=1e-13)
        assert whole == pytest.approx(partial, abs=1e-11)
        assert whole == pytest.approx(math.log(2.0), abs=1e-11)

    def test_endpoint_root_returned(self):
        assert find_root(lambda x: x, (0.0, 1.0)) == 0.0


class TestQuadratureSpec:
    def test_validation(self):
        with pytest.raises(DomainError):
            QuadratureSpec(rel_tol=-1.0)
        with pytest.raises(DomainError):
            QuadratureSpec(max_subdivisions=0)
