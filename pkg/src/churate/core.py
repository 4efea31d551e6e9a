"""System configuration, propagation channel, and noise densities.

Everything downstream (matching optimizer, rate engine, interference module)
consumes the link through this module: the line-of-sight channel gain, the
flat transmit PSD, and the two receiver noise densities.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .errors import ConfigError, DomainError

# Paper-style speed of light; CODATA value selectable via PhysicalConstants.
C_PAPER = 3.0e8
C_CODATA = 299_792_458.0
KB = 1.38e-23  # Boltzmann, J/K

# Lower edge used when a band formally starts at 0 Hz: the 1/f^2 channel
# diverges at DC, so rate integrals clip here.
F_LOW_CLIP_HZ = 1.0e3


@dataclass(frozen=True)
class PhysicalConstants:
    """Physical constants used across the model.

    ``c`` defaults to the round 3e8 value so the reference sweeps reproduce;
    pass ``c=C_CODATA`` for the exact value.
    """

    c: float = C_PAPER          # m/s
    kb: float = KB              # J/K
    mu0: float = 1.25e-6        # vacuum permeability
    eps0: float = 8.85e-12      # vacuum permittivity

    def __post_init__(self):
        for name in ("c", "kb", "mu0", "eps0"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be strictly positive")


@dataclass(frozen=True)
class SystemConfig:
    """Link-level parameters of the size-constrained SISO system.

    ``emax`` is the flat transmit PSD ceiling in W/Hz. Use
    :meth:`from_total_power` when the budget is given as total power P (W),
    in which case emax = P / bw.
    """

    fc: float                   # carrier, Hz
    bw: float                   # absolute bandwidth, Hz
    emax: float                 # transmit PSD ceiling, W/Hz
    d: float                    # Tx-Rx distance, m
    gt: float = 1.5             # transmit antenna gain
    gr: float = 1.5             # receive antenna gain
    temperature: float = 300.0  # K
    nf: float = 2.0             # LNA noise factor, >= 1
    a: float = 0.05             # receive-antenna sphere radius, m
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)

    def __post_init__(self):
        if self.fc <= 0:
            raise ConfigError("carrier frequency must be positive")
        if self.bw <= 0:
            raise ConfigError("bandwidth must be positive")
        if self.fc - self.bw / 2 < 0:
            raise ConfigError("band must not extend below 0 Hz")
        if self.d <= 0:
            raise ConfigError("distance must be positive")
        if self.a <= 0:
            raise ConfigError("antenna radius must be positive")
        if self.nf < 1:
            raise ConfigError("noise factor must be >= 1")
        if self.temperature <= 0:
            raise ConfigError("temperature must be positive")
        if self.emax <= 0:
            raise ConfigError("transmit PSD ceiling must be positive")

    @classmethod
    def from_total_power(cls, fc, bw, power, d, **kwargs):
        """Build a config from total transmit power P (W): emax = P / bw."""
        return cls(fc=fc, bw=bw, emax=power / bw, d=d, **kwargs)

    @property
    def band(self):
        """Signaling band (f1, f2) in Hz."""
        return (self.fc - self.bw / 2, self.fc + self.bw / 2)

    @property
    def rate_band(self):
        """Band used for rate integrals; lower edge clipped away from DC."""
        f1, f2 = self.band
        return (max(f1, F_LOW_CLIP_HZ), f2)

    @property
    def wavelength(self):
        return self.constants.c / self.fc

    @property
    def total_power(self):
        return self.emax * self.bw

    def with_radius(self, a):
        return replace(self, a=a)


@dataclass(frozen=True)
class FrequencyGrid:
    """Ordered frequency samples tagged with the scheme that produced them."""

    samples: np.ndarray         # Hz, strictly increasing, > 0
    scheme: str = "uniform"     # uniform | log | quadrature-nodes

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float)
        object.__setattr__(self, "samples", samples)
        if samples.ndim != 1 or samples.size == 0:
            raise ConfigError("frequency grid must be a non-empty 1-d array")
        if samples[0] <= 0 or np.any(np.diff(samples) <= 0):
            raise ConfigError("frequency grid must be strictly increasing and positive")

    @classmethod
    def uniform(cls, band, n):
        f1, f2 = band
        return cls(np.linspace(f1, f2, n), "uniform")

    @classmethod
    def log(cls, band, n):
        f1, f2 = band
        return cls(np.geomspace(f1, f2, n), "log")


def channel_gain(cfg: SystemConfig, f):
    """Squared line-of-sight channel magnitude |H(f)|^2 = Gt*Gr*(c/(4*pi*f*d))^2."""
    f = np.asarray(f, dtype=float)
    if np.any(f <= 0):
        raise DomainError("channel gain is undefined for f <= 0")
    g = cfg.gt * cfg.gr * (cfg.constants.c / (4.0 * np.pi * f * cfg.d)) ** 2
    return g if g.ndim else float(g)


def noise_densities(cfg: SystemConfig):
    """(N0, Nlna) in W/Hz: thermal floor kb*T and amplifier excess kb*T*(nf-1)."""
    if cfg.nf < 1:
        raise ConfigError("noise factor must be >= 1")
    n0 = cfg.constants.kb * cfg.temperature
    return n0, n0 * (cfg.nf - 1.0)


def transmit_psd(cfg: SystemConfig, f):
    """Flat allocation: emax inside the signaling band, 0 elsewhere."""
    f = np.asarray(f, dtype=float)
    f1, f2 = cfg.band
    psd = np.where((f >= max(f1, 0.0)) & (f <= f2), cfg.emax, 0.0)
    return psd if psd.ndim else float(psd)


def _admittance_entries(cfg: SystemConfig, f, r1=1.0, r2=1.0):
    """|Y11| and |Y12| of the two-port channel model at s = j*2*pi*f."""
    c = cfg.constants.c
    s = 1j * 2.0 * np.pi * f
    a = cfg.a
    den = (s * a * r2) ** 2 + (c * r2) ** 2 + s * a * c * r2 ** 2
    friis = (c / (4.0 * np.pi * f * cfg.d)) ** 2
    y11 = (den - 4.0 * friis * s * a * c * r2 ** 2 * math.sqrt(cfg.gt * cfg.gr)) / (den * r1)
    y12 = (-2.0 * c * (s * a) ** 2 * math.sqrt(cfg.gt * cfg.gr)
           / (4.0 * np.pi * f * cfg.d * den)) * math.sqrt(r2 ** 3 / r1)
    return abs(y11), abs(y12)


def unilateral_check(cfg: SystemConfig, f, threshold=1e-3):
    """Far-field sanity check: |Y12|/|Y11| of the channel two-port.

    Returns (ratio, ok). Small ratios justify dropping the reaction of the
    receive side onto the transmitter.
    """
    if f <= 0:
        raise DomainError("frequency must be positive")
    y11, y12 = _admittance_entries(cfg, float(f))
    ratio = y12 / y11
    return ratio, bool(ratio < threshold)


_CONFIG_KEYS = {
    "fc_hz", "bw_hz", "power_w", "emax_w_per_hz", "distance_m",
    "gain_tx", "gain_rx", "temperature_k", "noise_factor",
    "radius_m", "lambda_over_a",
}


def config_from_mapping(doc: dict) -> SystemConfig:
    """Build a SystemConfig from the flat key-value document format."""
    unknown = set(doc) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    try:
        fc = float(doc["fc_hz"])
        bw = float(doc["bw_hz"])
        d = float(doc["distance_m"])
    except KeyError as exc:
        raise ConfigError(f"missing required config key: {exc}") from exc

    if "power_w" in doc:             # total power wins when both are given
        emax = float(doc["power_w"]) / bw
    elif "emax_w_per_hz" in doc:
        emax = float(doc["emax_w_per_hz"])
    else:
        raise ConfigError("config needs power_w or emax_w_per_hz")

    if "radius_m" in doc:
        a = float(doc["radius_m"])
    elif "lambda_over_a" in doc:
        a = (C_PAPER / fc) / float(doc["lambda_over_a"])
    else:
        raise ConfigError("config needs radius_m or lambda_over_a")

    return SystemConfig(
        fc=fc, bw=bw, emax=emax, d=d,
        gt=float(doc.get("gain_tx", 1.5)),
        gr=float(doc.get("gain_rx", 1.5)),
        temperature=float(doc.get("temperature_k", 300.0)),
        nf=float(doc.get("noise_factor", 2.0)),
        a=a,
    )


def load_config(path) -> SystemConfig:
    """Load a SystemConfig from a flat JSON document."""
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(doc, dict):
        raise ConfigError("config file must hold a JSON object")
    return config_from_mapping(doc)
