"""TM1 spherical-mode equivalent circuit of a radius-a receive antenna.

The circuit is a series capacitance a/(c*R2) feeding a parallel inductance
a*R2/c and radiation resistance R2. Its reflection response has a double
transmission zero at DC, which induces two integral realizability budgets
on any lossless matching network placed in front of it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import C_PAPER
from .errors import DomainError

# Sentinel for "no finite positive-real reflection zero" (1/gamma = 0).
GAMMA_INF = math.inf


@dataclass(frozen=True)
class ChuCircuit:
    """Radius-parameterized TM1 equivalent circuit."""

    a: float                # sphere radius, m
    r2: float = 1.0         # radiation resistance, ohm
    c: float = C_PAPER      # propagation speed, m/s

    def __post_init__(self):
        if self.a <= 0:
            raise DomainError("radius must be positive")
        if self.r2 <= 0:
            raise DomainError("radiation resistance must be positive")

    @property
    def tau(self):
        """Time constant a/c in seconds; capacitance and inductance scale."""
        return self.a / self.c

    @property
    def capacitance(self):
        return self.a / (self.c * self.r2)

    @property
    def inductance(self):
        return self.a * self.r2 / self.c


@dataclass(frozen=True)
class FanoBudget:
    """Values of the two realizability budgets for a given reflection zero.

    k1 (seconds) bounds the f^-2 weighted log-reflection integral, k2 (s^3)
    the f^-4 weighted one. k1 >= 0 requires gamma >= c/a.
    """

    k1: float
    k2: float
    gamma: float    # rad/s; GAMMA_INF means no finite zero


def input_impedance(circ: ChuCircuit, f):
    """Driving-point impedance of the TM1 circuit at frequency f (Hz)."""
    f = np.asarray(f, dtype=float)
    if np.any(f <= 0):
        raise DomainError("input impedance has a capacitive pole at f = 0")
    jx = 1j * 2.0 * np.pi * f * circ.tau
    z = circ.r2 / jx + circ.r2 / (1.0 / jx + 1.0)
    return z if z.ndim else complex(z)


def unmatched_transmission(circ: ChuCircuit, f):
    """Transmission coefficient of the bare (unmatched) circuit at s = j*2*pi*f."""
    f = np.asarray(f, dtype=float)
    if np.any(f < 0):
        raise DomainError("frequency must be non-negative")
    s_tau = 1j * 2.0 * np.pi * f * circ.tau
    t = 2.0 * s_tau ** 2 / (2.0 * s_tau ** 2 + 2.0 * s_tau + 1.0)
    return t if t.ndim else complex(t)


def unmatched_reflection(circ: ChuCircuit, f):
    """Reflection coefficient of the bare circuit; |.|^2 = 1/(1+4x^4), x = 2*pi*f*a/c."""
    f = np.asarray(f, dtype=float)
    if np.any(f < 0):
        raise DomainError("frequency must be non-negative")
    s_tau = 1j * 2.0 * np.pi * f * circ.tau
    g = 1.0 / (2.0 * s_tau ** 2 + 2.0 * s_tau + 1.0)
    return g if g.ndim else complex(g)


def unmatched_power_transmission(circ: ChuCircuit, f):
    """|T~(f)|^2 = 4x^4/(1+4x^4) with x = 2*pi*f*a/c; real-valued and vectorized."""
    f = np.asarray(f, dtype=float)
    x4 = (2.0 * np.pi * f * circ.tau) ** 4
    t2 = 4.0 * x4 / (1.0 + 4.0 * x4)
    return t2 if t2.ndim else float(t2)


def fano_budget(circ: ChuCircuit, gamma) -> FanoBudget:
    """Realizability budgets K1, K2 for a reflection zero at gamma (rad/s).

    K1 = 2*pi^2*(2a/c - 2/gamma), K2 = 8*pi^4*(4a^3/(3c^3) + 2/(3 gamma^3)).
    Pass GAMMA_INF for the no-finite-zero case (bare-circuit saturation).
    Budgets are independent of R2.
    """
    if gamma <= 0:
        raise DomainError("reflection zero must be positive (or GAMMA_INF)")
    inv_g = 0.0 if math.isinf(gamma) else 1.0 / gamma
    tau = circ.tau
    k1 = 2.0 * math.pi ** 2 * (2.0 * tau - 2.0 * inv_g)
    k2 = 8.0 * math.pi ** 4 * (4.0 * tau ** 3 / 3.0 + 2.0 * inv_g ** 3 / 3.0)
    return FanoBudget(k1=k1, k2=k2, gamma=gamma)
