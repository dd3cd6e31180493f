"""Achievable uplink rate under MRC: exact per-realization, Monte Carlo,
large-N closed form and its limiting forms."""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from irsrate.aqnm import AdcModel, quantization_noise_covariance
from irsrate.arrays import build_channels
from irsrate.config import SystemConfig
from irsrate.phase import (
    PhaseNoiseRealization,
    cascaded_channels_direct,
    coherence_factor,
    optimal_phases,
    sample_phase_noise_batch,
)

LN2 = math.log(2.0)
# Trials per independently seeded block; fixes the random stream layout
# regardless of how many workers process the blocks.
TRIAL_BLOCK = 1024


class Method(str, enum.Enum):
    EXACT_CONDITIONAL = "exact_conditional"
    MONTE_CARLO = "monte_carlo"
    CLOSED_FORM = "closed_form"
    IDEAL_ADC = "ideal_adc"
    CEILING = "ceiling"
    POWER_SCALING_LIMIT = "power_scaling_limit"


@dataclass(frozen=True)
class RateResult:
    rate_bits: float
    method: Method
    trials: int = 0
    std_error: float = 0.0


def log2_1p(x):
    """log2(1 + x), accurate for small x."""
    return np.log1p(x) / LN2


def _sinr(gamma: float, M: int, P_gain: float, phasor_power):
    """Scalar SINR given |S|^2, where S = sum_n exp(j theta_hat_n)."""
    return gamma * P_gain * M * phasor_power / (gamma + (1.0 - gamma) * (1.0 + P_gain * phasor_power))


def exact_sinr(config: SystemConfig, noise: PhaseNoiseRealization | None = None) -> float:
    """MRC SINR for one phase-noise realization under optimal phases.

    gamma P|ab|^2 M |S|^2 / (gamma + (1 - gamma)(1 + P|ab|^2 |S|^2)).
    """
    S2 = float(config.N) ** 2 if noise is None else abs(noise.phasor_sum) ** 2
    return float(_sinr(config.gamma, config.M, config.P * config.gain, S2))


def vector_sinr(config: SystemConfig, noise: PhaseNoiseRealization | None = None, phases=None) -> float:
    """The same SINR evaluated from the M-dimensional vectors.

    Builds g and g~ by explicit matrix products and evaluates

        gamma^2 P |g^H g~|^2 / (gamma^2 ||g||^2 + g^H R_nq g).

    Independent of the scalar reduction in :func:`exact_sinr`; ``phases``
    defaults to the optimal ones.
    """
    channel = build_channels(config)
    if phases is None:
        phases = optimal_phases(config)
    g, g_tilde = cascaded_channels_direct(channel, phases, noise)
    gamma, P = config.gamma, config.P
    num = gamma**2 * P * abs(np.vdot(g, g_tilde)) ** 2
    R = quantization_noise_covariance(g_tilde, P, gamma)
    den = gamma**2 * np.vdot(g, g).real + np.sum(np.abs(g) ** 2 * R)
    return float(num / den)


def rate_conditional(config: SystemConfig, noise: PhaseNoiseRealization | None = None) -> RateResult:
    return RateResult(float(log2_1p(exact_sinr(config, noise))), Method.EXACT_CONDITIONAL)


def _block_rates(config: SystemConfig, seed: int, block: int, size: int) -> np.ndarray:
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(block,)))
    theta_hat = sample_phase_noise_batch(config.B, config.N, size, rng)
    S2 = np.cos(theta_hat).sum(axis=1) ** 2 + np.sin(theta_hat).sum(axis=1) ** 2
    return log2_1p(_sinr(config.gamma, config.M, config.P * config.gain, S2))


def trial_rates(config: SystemConfig, trials: int, seed: int = 0, workers: int = 1) -> np.ndarray:
    """Per-trial conditional rates in trial order."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    blocks = [(b, min(TRIAL_BLOCK, trials - b * TRIAL_BLOCK)) for b in range(-(-trials // TRIAL_BLOCK))]
    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda bs: _block_rates(config, seed, *bs), blocks))
    else:
        parts = [_block_rates(config, seed, b, size) for b, size in blocks]
    return np.concatenate(parts)


def rate_monte_carlo(config: SystemConfig, trials: int = 10_000, seed: int = 0, workers: int = 1) -> RateResult:
    """Mean of the conditional rate over i.i.d. phase-noise draws, with its standard error.

    Bitwise reproducible for a given (seed, trials) whatever ``workers`` is.
    """
    rates = trial_rates(config, trials, seed, workers)
    spread = trials > 1 and rates.max() > rates.min()
    se = float(rates.std(ddof=1) / math.sqrt(trials)) if spread else 0.0
    return RateResult(float(rates.mean()), Method.MONTE_CARLO, trials, se)


def effective_snr(config: SystemConfig) -> float:
    """P|ab|^2 N^2 sinc^2(pi/2^B)."""
    return config.P * config.gain * config.N**2 * coherence_factor(config.B) ** 2


def closed_form_rate(gamma: float, M: float, s_hat: float) -> float:
    """log2(1 + gamma M s / (gamma + (1-gamma)(1+s))) for effective SNR s."""
    return float(log2_1p(gamma * M * s_hat / (gamma + (1.0 - gamma) * (1.0 + s_hat))))


def rate_closed_form(config: SystemConfig) -> RateResult:
    """Large-N almost-sure limit of the rate."""
    return RateResult(closed_form_rate(config.gamma, config.M, effective_snr(config)), Method.CLOSED_FORM)


def rate_ideal_adc(config: SystemConfig) -> RateResult:
    """Closed form with gamma = 1: log2(1 + P|ab|^2 N^2 M sinc^2(pi/2^B))."""
    return RateResult(float(log2_1p(config.M * effective_snr(config))), Method.IDEAL_ADC)


def phase_noise_loss(B: int | None) -> float:
    """Constant large-N rate loss log2(sinc^2(pi/2^B)) (<= 0) of an ideal-ADC link."""
    return 2.0 * math.log2(coherence_factor(B))


def rate_ideal_adc_large_n(config: SystemConfig) -> float:
    """log2(P|ab|^2 N^2 M) + log2(sinc^2(pi/2^B))."""
    return math.log2(config.P * config.gain * config.N**2 * config.M) + phase_noise_loss(config.B)


def rate_ceiling(adc: AdcModel, M: int) -> RateResult:
    """ADC-limited rate log2(1 + gamma M / (1 - gamma)) reached as N or P grows.

    Infinite for an ideal ADC.
    """
    if adc.ideal:
        return RateResult(math.inf, Method.CEILING)
    return RateResult(float(log2_1p(adc.gamma * M / (1.0 - adc.gamma))), Method.CEILING)


def scaled_power(E_u: float, M: int, N: int) -> float:
    """Transmit SNR P = E_u / (M N^2)."""
    return E_u / (M * N**2)


def rate_power_scaling_limit(config: SystemConfig) -> RateResult:
    """M -> inf limit under P = E_u/(M N^2): log2(1 + gamma E_u |ab|^2 sinc^2(pi/2^B))."""
    if config.E_u is None:
        raise ValueError("config.E_u must be set for the power-scaling limit")
    x = config.gamma * config.E_u * config.gain * coherence_factor(config.B) ** 2
    return RateResult(float(log2_1p(x)), Method.POWER_SCALING_LIMIT)


def evaluate(config: SystemConfig, method: Method | str, trials: int = 10_000, seed: int = 0, workers: int = 1) -> RateResult:
    """Dispatch one rate method by name."""
    method = Method(method)
    if method is Method.EXACT_CONDITIONAL:
        return rate_conditional(config)
    if method is Method.MONTE_CARLO:
        return rate_monte_carlo(config, trials, seed, workers)
    if method is Method.CLOSED_FORM:
        return rate_closed_form(config)
    if method is Method.IDEAL_ADC:
        return rate_ideal_adc(config)
    if method is Method.CEILING:
        return rate_ceiling(config.adc, config.M)
    return rate_power_scaling_limit(config)
