"""Per-frequency SNR and integrated achievable rate.

The Shannon baseline is always computed with the same quadrature machinery
(t = 1 inside the identical integrand) so capacity fractions carry no
quadrature-scheme bias.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chu import ChuCircuit, unmatched_power_transmission
from .core import SystemConfig, channel_gain, noise_densities, transmit_psd
from .errors import DomainError, InfeasibleError
from .matching import solve_for_size
from .numerics import DEFAULT_SPEC, QuadratureSpec, integrate_band_log

__all__ = ["RateReport", "snr_at", "achievable_rate", "capacity_fraction_sweep",
           "unmatched_t_of_f"]

SNR_TRACE_POINTS = 512


@dataclass(frozen=True)
class RateReport:
    rate_bps: float
    shannon_bps: float
    fraction: float
    snr_trace: tuple     # ((f, snr), ...) on a uniform in-band grid


def snr_at(cfg: SystemConfig, f, t, extra_noise_psd=0.0):
    """SNR(f) = P_t(f)|H(f)|^2 t / (N0 t + N_LNA) for a transmission value t."""
    t_arr = np.asarray(t, dtype=float)
    if np.any((t_arr < 0.0) | (t_arr > 1.0)):
        raise DomainError("transmission value must lie in [0, 1]")
    n0, nlna = noise_densities(cfg)
    n0 = n0 + extra_noise_psd
    signal = transmit_psd(cfg, f) * channel_gain(cfg, f) * t_arr
    den = n0 * t_arr + nlna
    with np.errstate(invalid="ignore", divide="ignore"):
        snr = np.where(signal > 0.0, signal / den, 0.0)
    return float(snr) if snr.ndim == 0 else snr


def band_rate(cfg: SystemConfig, t_of_f, extra_noise_psd=0.0,
              spec: QuadratureSpec = DEFAULT_SPEC):
    """Rate integral in bits/s over the (DC-clipped) signaling band."""
    def integrand(f):
        return np.log2(1.0 + snr_at(cfg, f, t_of_f(f), extra_noise_psd))

    return integrate_band_log(integrand, cfg.rate_band, spec)


def achievable_rate(cfg: SystemConfig, t_of_f, extra_noise_psd=0.0,
                    spec: QuadratureSpec = DEFAULT_SPEC,
                    trace_points=SNR_TRACE_POINTS) -> RateReport:
    """Integrated rate for a transmission profile, with the Shannon baseline.

    ``t_of_f`` must be vectorized over frequency and vanish outside the band.
    """
    rate = band_rate(cfg, t_of_f, extra_noise_psd, spec)
    shannon = band_rate(cfg, lambda f: np.ones_like(np.asarray(f, dtype=float)),
                        extra_noise_psd, spec)
    f1, f2 = cfg.rate_band
    fs = np.linspace(f1, f2, trace_points)
    trace = tuple(zip(fs.tolist(), np.asarray(
        snr_at(cfg, fs, t_of_f(fs), extra_noise_psd)).tolist()))
    return RateReport(rate_bps=rate, shannon_bps=shannon,
                      fraction=rate / shannon if shannon > 0 else 0.0,
                      snr_trace=trace)


def unmatched_t_of_f(cfg: SystemConfig):
    """Power transmission of the bare antenna, zero outside the band."""
    circ = ChuCircuit(a=cfg.a, c=cfg.constants.c)

    def t_of_f(f):
        on = np.asarray(transmit_psd(cfg, f)) > 0
        return np.where(on, unmatched_power_transmission(circ, f), 0.0)

    return t_of_f


@dataclass(frozen=True)
class FractionRow:
    lambda_over_a: float
    fraction: float
    status: str            # ok | infeasible


def capacity_fraction_sweep(cfg_template: SystemConfig, lambda_over_a,
                            matching="optimal", spec=DEFAULT_SPEC):
    """Capacity fraction vs antenna size ratio for one matching mode.

    Solver infeasibility is recorded per row and the sweep continues.
    """
    if matching not in ("optimal", "none"):
        raise DomainError("matching mode must be 'optimal' or 'none'")
    rows = []
    for ratio in lambda_over_a:
        if ratio <= 0:
            raise DomainError("size ratios must be positive")
        cfg = cfg_template.with_radius(cfg_template.wavelength / ratio)
        try:
            if matching == "optimal":
                sol = solve_for_size(cfg, cfg.a)
                report = achievable_rate(cfg, sol.t_star, spec=spec, trace_points=2)
            else:
                report = achievable_rate(cfg, unmatched_t_of_f(cfg), spec=spec,
                                         trace_points=2)
            rows.append(FractionRow(ratio, report.fraction, "ok"))
        except InfeasibleError:
            rows.append(FractionRow(ratio, float("nan"), "infeasible"))
    return rows
