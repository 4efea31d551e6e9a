"""Achievable rate of a SISO link with a size-constrained receive antenna.

Combines the TM1 spherical-mode equivalent circuit, broadband-matching
realizability budgets, and a variationally optimal matching response into
rate sweeps, with a Gamma-matched homogeneous-interference extension.
"""

from .chu import (
    GAMMA_INF, ChuCircuit, FanoBudget, fano_budget, input_impedance,
    unmatched_power_transmission, unmatched_reflection, unmatched_transmission,
)
from .core import (
    FrequencyGrid, PhysicalConstants, SystemConfig, channel_gain,
    config_from_mapping, load_config, noise_densities, transmit_psd,
    unilateral_check,
)
from .errors import (
    BracketError, ChurateError, ConfigError, ConsistencyError,
    ConvergenceError, DomainError, InfeasibleError, OperationError,
)
from .interference import (
    GammaModel, InterferenceField, gamma_match, interference_moments,
    ppp_oracle, rate_adaptive_antenna, rate_fixed_antenna_closed_form,
    rate_fixed_antenna_numeric, shannon_rate_with_interference,
)
from .matching import (
    KktReport, MatchingSolution, Multipliers, constraint_residual, gamma_opt,
    optimal_transmission, quadratic_coeffs, size_of_multipliers,
    solve_for_size, verify_kkt,
)
from .numerics import (
    QuadratureSpec, RootBracket, find_root, integrate_band,
    integrate_semi_infinite,
)
from .rate import (
    RateReport, achievable_rate, capacity_fraction_sweep, snr_at,
    unmatched_t_of_f,
)

__version__ = "0.1.0"
