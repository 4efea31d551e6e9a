"""Quadrature and root-finding kernel.

The adaptive quadrature is a Gauss-Kronrod (G7, K15) panel scheme with
batched panel evaluation: integrands must accept and return numpy arrays.
Results are bit-deterministic for fixed inputs (panels are kept sorted by
left endpoint and reduced with math.fsum).

Root finding wraps scipy's Brent implementation behind bracket validation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import BracketError, ConvergenceError, DomainError

__all__ = [
    "QuadratureSpec", "RootBracket",
    "integrate_band", "integrate_semi_infinite", "find_root",
]


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-9
    abs_tol: float = 1e-300
    max_subdivisions: int = 4000   # max number of live panels

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise DomainError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be >= 1")


DEFAULT_SPEC = QuadratureSpec()
# Looser spec for residual evaluations inside nested multiplier solves; the
# outer root-finder dominates the error there.
INNER_SPEC = QuadratureSpec(rel_tol=1e-7)


@dataclass(frozen=True)
class RootBracket:
    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise BracketError("bracket endpoints must satisfy lo < hi")
        if self.f_lo * self.f_hi > 0:
            raise BracketError("bracket endpoints must straddle a sign change")

    @classmethod
    def from_endpoints(cls, residual, lo, hi):
        return cls(lo=lo, hi=hi, f_lo=residual(lo), f_hi=residual(hi))


# 15-point Kronrod nodes on [-1, 1] and matching Kronrod / embedded Gauss-7
# weights (standard tabulated values).
_XGK = np.array([
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0,
])
_WGK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
])
_WG = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469,
])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])      # 15 ascending nodes
_W_KRON = np.concatenate([_WGK[:-1], _WGK[::-1]])
_W_GAUSS = np.zeros(15)
_W_GAUSS[1:-1:2] = np.concatenate([_WG[:-1], _WG[::-1]])


def _panel_eval(integrand, panels):
    """Kronrod and Gauss estimates for each (a, b) panel, batched."""
    mid = 0.5 * (panels[:, 0] + panels[:, 1])
    half = 0.5 * (panels[:, 1] - panels[:, 0])
    x = mid[:, None] + half[:, None] * _NODES[None, :]
    y = np.asarray(integrand(x.ravel()), dtype=float).reshape(x.shape)
    if not np.all(np.isfinite(y)):
        raise DomainError("integrand returned non-finite values")
    i_kron = (y * _W_KRON).sum(axis=1) * half
    i_gauss = (y * _W_GAUSS).sum(axis=1) * half
    return i_kron, np.abs(i_kron - i_gauss)


def integrate_band(integrand, band, spec: QuadratureSpec = DEFAULT_SPEC):
    """Adaptive Gauss-Kronrod integral of a vectorized integrand over [f1, f2].

    Panels failing their proportional share of the tolerance are bisected in
    batches until the summed error estimate meets spec. Deterministic for
    fixed inputs.
    """
    f1, f2 = float(band[0]), float(band[1])
    if f1 < 0 or not f1 < f2:
        raise DomainError("band must satisfy 0 <= f1 < f2")

    panels = np.array([[f1, f2]])
    i_kron, err = _panel_eval(integrand, panels)
    width = f2 - f1
    while True:
        total = math.fsum(i_kron)
        total_err = math.fsum(err)
        tol = max(spec.abs_tol, spec.rel_tol * abs(total))
        if total_err <= tol:
            return total
        share = tol * (panels[:, 1] - panels[:, 0]) / (2.0 * width)
        bad = err > share
        if not bad.any():
            bad = err >= err.max()
        if len(panels) + bad.sum() > spec.max_subdivisions:
            raise ConvergenceError(
                f"quadrature needs more than {spec.max_subdivisions} panels",
                best_estimate=total, error_estimate=total_err)
        split = panels[bad]
        mids = 0.5 * (split[:, 0] + split[:, 1])
        children = np.concatenate([
            np.stack([split[:, 0], mids], axis=1),
            np.stack([mids, split[:, 1]], axis=1),
        ])
        child_i, child_err = _panel_eval(integrand, children)
        panels = np.concatenate([panels[~bad], children])
        i_kron = np.concatenate([i_kron[~bad], child_i])
        err = np.concatenate([err[~bad], child_err])
        order = np.argsort(panels[:, 0], kind="stable")
        panels, i_kron, err = panels[order], i_kron[order], err[order]


def integrate_band_log(integrand, band, spec: QuadratureSpec = DEFAULT_SPEC):
    """integrate_band on a logarithmic axis; efficient for wide bands.

    Requires f1 > 0. Substitutes f = exp(y) so power-law integrands become
    gentle exponentials.
    """
    f1, f2 = float(band[0]), float(band[1])
    if f1 <= 0 or not f1 < f2:
        raise DomainError("log-axis band must satisfy 0 < f1 < f2")

    def on_log_axis(y):
        f = f1 * np.exp(y)
        return np.asarray(integrand(f), dtype=float) * f

    return integrate_band(on_log_axis, (0.0, math.log(f2 / f1)), spec)


def integrate_semi_infinite(integrand, spec: QuadratureSpec = DEFAULT_SPEC):
    """Integral of a decaying integrand over [0, inf).

    Compactifies with x = t/(1-t) and integrates over (0, 1); quadrature
    nodes never touch the endpoints.
    """
    def compactified(t):
        one_minus = 1.0 - t
        x = t / one_minus
        return np.asarray(integrand(x), dtype=float) / one_minus ** 2

    return integrate_band(compactified, (0.0, 1.0), spec)


def find_root(residual, bracket, tol=1e-12):
    """Brent iteration for a root of ``residual`` inside a sign-change bracket.

    ``bracket`` may be a RootBracket or an (lo, hi) pair; the endpoints are
    validated either way. Deterministic.
    """
    if not isinstance(bracket, RootBracket):
        bracket = RootBracket.from_endpoints(residual, *bracket)
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    if bracket.f_lo == 0.0:
        return bracket.lo
    if bracket.f_hi == 0.0:
        return bracket.hi
    try:
        root = brentq(residual, bracket.lo, bracket.hi,
                      xtol=tol, rtol=8.9e-16, maxiter=200)
    except RuntimeError as exc:   # pragma: no cover - scipy iteration cap
        raise ConvergenceError(f"root iteration did not converge: {exc}") from exc
    return float(root)
