import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from churate import (
    DomainError, GammaModel, InterferenceField, SystemConfig,
    gamma_match, interference_moments, ppp_oracle, rate_adaptive_antenna,
    rate_fixed_antenna_closed_form, rate_fixed_antenna_numeric,
    shannon_rate_with_interference, solve_for_size, unmatched_t_of_f,
)
from churate.interference import truncated_moments
from churate.core import channel_gain, noise_densities, transmit_psd
from churate.rate import band_rate


def _field(rho=None, alpha=2.5, r0=1000.0, pt=6.0, lam=0.5):
    if rho is None:
        rho = 1.0 / (math.pi * r0 ** 2)
    return InterferenceField(density=rho, alpha=alpha, r0=r0, pt=pt, lambda_c=lam)


@pytest.fixture(scope="module")
def small_cfg():
    # interference-era link: 600 MHz, BW = 0.25 fc, P = 6 W
    return SystemConfig.from_total_power(fc=600e6, bw=0.25 * 600e6, power=6.0,
                                         d=333.0, a=0.01)


class TestMoments:
    def test_linear_in_density(self):
        base = _field()
        double = _field(rho=2.0 * base.density)
        m1, v1 = interference_moments(base)
        m2, v2 = interference_moments(double)
        assert m2 == pytest.approx(2 * m1, rel=1e-12)
        assert v2 == pytest.approx(2 * v1, rel=1e-12)

    def test_steep_pathloss_suppresses(self):
        gentle = interference_moments(_field(alpha=2.5))
        steep = interference_moments(_field(alpha=12.0))
        assert steep[0] < 1e-6 * gentle[0]
        assert steep[1] < 1e-6 * gentle[1]

    def test_divergent_mean_rejected(self):
        with pytest.raises(DomainError):
            _field(alpha=2.0)


class TestGammaMatch:
    def test_one_user_per_cell_shape(self):
        gm = gamma_match(_field())
        assert gm.k == pytest.approx(12.0, rel=1e-12)

    @given(st.floats(min_value=2.1, max_value=6.0),
           st.floats(min_value=10.0, max_value=1e4),
           st.floats(min_value=1e-9, max_value=1e-3))
    def test_moment_identities(self, alpha, r0, rho):
        field = _field(rho=rho, alpha=alpha, r0=r0)
        mean, var = interference_moments(field)
        gm = gamma_match(field)
        assert gm.k * gm.theta == pytest.approx(mean, rel=1e-12)
        assert gm.k * gm.theta ** 2 == pytest.approx(var, rel=1e-12)

    def test_parameter_validation(self):
        with pytest.raises(DomainError):
            GammaModel(k=0.0, theta=1.0)


class TestPppOracle:
    def test_vanishing_density(self):
        field = _field(rho=1e-30)
        mean, var = ppp_oracle(field, 200, seed=1, tail_compensation=False)
        assert mean == 0.0 and var == 0.0

    def test_matches_closed_moments(self):
        field = _field(r0=1000.0)
        n = 3000
        mean_hat, var_hat = ppp_oracle(field, n, seed=42)
        mean, var = interference_moments(field)
        se_mean = math.sqrt(var_hat / n)
        assert abs(mean_hat - mean) < 3 * se_mean
        mean2, var2 = ppp_oracle(field, n, seed=42)
        assert (mean2, var2) == (mean_hat, var_hat)   # deterministic per seed
        # variance agreement at a loose multiple of its own sampling error
        se_var = var * math.sqrt(2.0 / (n - 1)) * 3.0   # gaussian-ish lower bound
        assert abs(var_hat - var) < max(5 * se_var, 0.3 * var)

    def test_truncated_field_pure_monte_carlo(self):
        # zero-circularity check: raw truncated simulation against the
        # truncated closed form
        field = _field(r0=1000.0)
        n = 3000
        mean_hat, var_hat = ppp_oracle(field, n, seed=11,
                                       tail_compensation=False)
        mean_t, var_t = truncated_moments(field, r_max_factor=100.0)
        se_mean = math.sqrt(var_hat / n)
        assert abs(mean_hat - mean_t) < 3 * se_mean
        se_var = var_t * math.sqrt(2.0 / (n - 1)) * 3.0
        assert abs(var_hat - var_t) < max(5 * se_var, 0.3 * var_t)

    def test_tail_weights(self):
        # at alpha = 2.5 the mean tail beyond 100*r0 carries 10% of the
        # total while the variance tail is already negligible; the oracle's
        # default compensation accounts for exactly this
        field = _field()
        mean, var = interference_moments(field)
        tail_mean, tail_var = interference_moments(
            _field(rho=field.density, r0=100.0 * field.r0))
        assert tail_mean / mean == pytest.approx(100.0 ** -0.5, rel=1e-9)
        assert tail_var / var == pytest.approx(100.0 ** -3.0, rel=1e-9)


class TestFixedAntennaRates:
    def test_point_mass_limit(self, small_cfg):
        mean = 1e-12
        gm = GammaModel(k=1e8, theta=mean / 1e8)
        t_of_f = unmatched_t_of_f(small_cfg)
        numeric = rate_fixed_antenna_numeric(small_cfg, t_of_f, gm, n_nodes=64)
        direct = band_rate(small_cfg, t_of_f, extra_noise_psd=mean / small_cfg.bw)
        assert numeric == pytest.approx(direct, rel=1e-6)

    def test_zero_profile_zero_rate(self, small_cfg):
        gm = GammaModel(k=12.0, theta=1e-13)
        zero = lambda f: np.zeros_like(np.asarray(f, float))
        with pytest.warns(UserWarning):   # k = 12 violates the validity bound
            assert rate_fixed_antenna_closed_form(small_cfg, zero, gm) == 0.0

    def test_vanishing_variance_drops_the_correction(self, small_cfg):
        # near-point-mass law: closed form reduces to the deterministic rate
        # at the mean interference level
        mean = 1e-12
        gm = GammaModel(k=1e10, theta=mean / 1e10)
        t_of_f = unmatched_t_of_f(small_cfg)
        cf = rate_fixed_antenna_closed_form(small_cfg, t_of_f, gm)
        direct = band_rate(small_cfg, t_of_f, extra_noise_psd=mean / small_cfg.bw)
        assert cf == pytest.approx(direct, rel=1e-9)

    def test_closed_form_tracks_numeric_when_valid(self, small_cfg):
        t_of_f = unmatched_t_of_f(small_cfg)
        k = 150.0   # variance/mean^2 = 1/k < 0.01
        for theta in (1e-16, 1e-14, 1e-12):
            gm = GammaModel(k=k, theta=theta)
            cf = rate_fixed_antenna_closed_form(small_cfg, t_of_f, gm)
            nm = rate_fixed_antenna_numeric(small_cfg, t_of_f, gm, n_nodes=64)
            assert abs(cf - nm) / nm < 0.01

    def test_validity_warning(self, small_cfg):
        gm = GammaModel(k=12.0, theta=1e-13)
        with pytest.warns(UserWarning):
            rate_fixed_antenna_closed_form(small_cfg, unmatched_t_of_f(small_cfg), gm)

    def test_monotone_in_mean_power(self, small_cfg):
        t_of_f = unmatched_t_of_f(small_cfg)
        rates = [rate_fixed_antenna_numeric(small_cfg, t_of_f,
                                            GammaModel(k=12.0, theta=th),
                                            n_nodes=32)
                 for th in (1e-16, 1e-14, 1e-12)]
        assert rates[0] > rates[1] > rates[2]

    def test_matches_monte_carlo(self, small_cfg):
        rng = np.random.default_rng(7)
        gm = GammaModel(k=12.0, theta=2e-15)
        t_of_f = unmatched_t_of_f(small_cfg)
        numeric = rate_fixed_antenna_numeric(small_cfg, t_of_f, gm, n_nodes=64)

        # vectorized Monte Carlo oracle on a fixed Gauss-Legendre f-grid
        x, w = np.polynomial.legendre.leggauss(128)
        f1, f2 = small_cfg.rate_band
        fs = 0.5 * (f1 + f2) + 0.5 * (f2 - f1) * x
        wf = 0.5 * (f2 - f1) * w
        n0, nlna = noise_densities(small_cfg)
        ph = transmit_psd(small_cfg, fs) * channel_gain(small_cfg, fs)
        tf = np.asarray(t_of_f(fs))
        n = 1_000_000
        rates = np.empty(n)
        for start in range(0, n, 100_000):
            stop = min(start + 100_000, n)
            i_psd = rng.gamma(gm.k, gm.theta, stop - start)[:, None] / small_cfg.bw
            snr = ph * tf / ((n0 + i_psd) * tf + nlna)
            rates[start:stop] = np.log2(1.0 + snr) @ wf
        se = rates.std(ddof=1) / math.sqrt(n)
        assert abs(numeric - rates.mean()) < 3 * se


class TestAdaptiveAntenna:
    def test_degenerate_interference_recovers_clean_link(self, small_cfg):
        gm = GammaModel(k=1e6, theta=1e-40)   # essentially zero power
        adaptive = rate_adaptive_antenna(small_cfg, gm, n_nodes=4)
        sol = solve_for_size(small_cfg, small_cfg.a)
        clean = band_rate(small_cfg, sol.t_star)
        assert adaptive == pytest.approx(clean, rel=1e-6)

    def test_dominates_fixed_matching(self, small_cfg):
        gm = GammaModel(k=12.0, theta=2e-15)
        adaptive = rate_adaptive_antenna(small_cfg, gm, n_nodes=8)
        # fixed network optimized for the mean interference level
        sol = solve_for_size(small_cfg, small_cfg.a,
                             extra_noise_psd=gm.mean / small_cfg.bw)
        fixed = rate_fixed_antenna_numeric(small_cfg, sol.t_star, gm, n_nodes=8)
        assert adaptive >= fixed * (1.0 - 1e-9)

    def test_shannon_reference_exceeds_adaptive(self, small_cfg):
        gm = GammaModel(k=12.0, theta=2e-15)
        adaptive = rate_adaptive_antenna(small_cfg, gm, n_nodes=6)
        shannon = shannon_rate_with_interference(small_cfg, gm, n_nodes=32)
        assert adaptive < shannon
