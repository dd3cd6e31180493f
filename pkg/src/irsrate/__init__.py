"""Uplink rate analysis for IRS-aided mmWave links with low-resolution ADCs.

The library covers the geometric single-path channel, optimal IRS phases
with discrete-phase noise, the additive quantization noise model (AQNM),
exact / Monte Carlo / closed-form achievable rates and a hardware sizing
solver for IRS phase bits and ADC bits.
"""

from irsrate.aqnm import AdcModel, rho_for_bits
from irsrate.arrays import AnglePair, UspaGeometry, build_channels, steering_vector
from irsrate.config import SystemConfig
from irsrate.design import DesignBudget, DesignOutcome, Bound, solve_design
from irsrate.phase import optimal_phases, sample_phase_noise, sinc
from irsrate.rate import (
    Method,
    RateResult,
    exact_sinr,
    rate_ceiling,
    rate_closed_form,
    rate_conditional,
    rate_ideal_adc,
    rate_monte_carlo,
    rate_power_scaling_limit,
)

__all__ = [
    "AdcModel",
    "AnglePair",
    "Bound",
    "DesignBudget",
    "DesignOutcome",
    "Method",
    "RateResult",
    "SystemConfig",
    "UspaGeometry",
    "build_channels",
    "exact_sinr",
    "optimal_phases",
    "rate_ceiling",
    "rate_closed_form",
    "rate_conditional",
    "rate_ideal_adc",
    "rate_monte_carlo",
    "rate_power_scaling_limit",
    "rho_for_bits",
    "sample_phase_noise",
    "sinc",
    "solve_design",
    "steering_vector",
]

__version__ = "0.1.0"
