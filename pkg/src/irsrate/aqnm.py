"""Additive quantization noise model (AQNM) for b-bit ADCs.

A b-bit quantizer is linearized as ``y_q = gamma*y + n_q`` with gain
``gamma = 1 - rho`` and Gaussian distortion ``n_q`` uncorrelated with ``y``.
``rho`` is the inverse SQNR of the non-uniform MMSE scalar quantizer for a
Gaussian input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# rho for b = 1..5; b >= 6 uses the high-resolution approximation.
RHO_TABLE = {1: 0.3634, 2: 0.1175, 3: 0.03454, 4: 0.009497, 5: 0.002499}
HIGH_RES_COEFF = math.sqrt(3.0) * math.pi / 2.0


def rho_for_bits(b: int) -> float:
    """Distortion factor rho of a b-bit ADC."""
    if int(b) != b or b < 1:
        raise ValueError(f"ADC resolution must be a positive integer, got {b}")
    b = int(b)
    if b in RHO_TABLE:
        return RHO_TABLE[b]
    return HIGH_RES_COEFF * 2.0 ** (-2 * b)


@dataclass(frozen=True)
class AdcModel:
    """ADC resolution and its AQNM parameters.

    ``bits=None`` with ``rho=0`` is an ideal ADC; ``bits=None`` with
    ``rho>0`` is a device specified directly by its distortion factor.
    """

    bits: int | None
    rho: float
    gamma: float

    def __post_init__(self):
        if not (0.0 <= self.rho < 1.0):
            raise ValueError(f"rho must lie in [0, 1), got {self.rho}")
        if self.gamma != 1.0 - self.rho:
            raise ValueError("gamma must equal 1 - rho")

    @classmethod
    def from_bits(cls, bits: int | None) -> "AdcModel":
        if bits is None:
            return cls(None, 0.0, 1.0)
        rho = rho_for_bits(bits)
        return cls(int(bits), rho, 1.0 - rho)

    @classmethod
    def from_rho(cls, rho: float) -> "AdcModel":
        """Model for an arbitrary distortion factor, not tied to a bit count."""
        return cls(None, rho, 1.0 - rho)

    @property
    def ideal(self) -> bool:
        return self.rho == 0.0

    @property
    def label(self) -> str:
        if self.bits is not None:
            return str(self.bits)
        return "ideal" if self.ideal else f"rho={self.rho:.6g}"


def quantization_noise_covariance(g_tilde: np.ndarray, P: float, gamma: float) -> np.ndarray:
    """Diagonal of R_nq = gamma(1-gamma) diag(P g~ g~^H + I)."""
    if not (0.0 < gamma <= 1.0):
        raise ValueError(f"gamma must lie in (0, 1], got {gamma}")
    return gamma * (1.0 - gamma) * (P * np.abs(np.asarray(g_tilde)) ** 2 + 1.0)


def _cn(rng: np.random.Generator, shape) -> np.ndarray:
    """Circularly-symmetric complex Gaussian, unit variance."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2.0)


def simulate_sinr_signal_level(
    channels,
    phases,
    noise_realization,
    adc: AdcModel,
    P: float,
    num_samples: int = 10**6,
    seed=None,
    chunk: int = 100_000,
) -> float:
    """Brute-force SINR estimate from sampled received signals.

    Draws the symbol ``s``, thermal noise ``n`` and quantization noise
    ``n_q``, forms ``y_q = gamma sqrt(P) g~ s + gamma n + n_q`` and the MRC
    output ``r = g^H y_q``, and returns the ratio of the empirical power of
    the signal part of ``r`` to that of the remainder.
    """
    from irsrate.phase import cascaded_channels_direct

    g, g_tilde = cascaded_channels_direct(channels, phases, noise_realization)
    gamma = adc.gamma
    R = quantization_noise_covariance(g_tilde, P, gamma)
    sig_std = np.sqrt(R)[:, None]
    rng = np.random.default_rng(seed)
    M = g.shape[0]
    gh = g.conj()
    signal_power = 0.0
    noise_power = 0.0
    done = 0
    while done < num_samples:
        k = min(chunk, num_samples - done)
        s = _cn(rng, k)
        n = _cn(rng, (M, k))
        n_q = sig_std * _cn(rng, (M, k))
        y = math.sqrt(P) * g_tilde[:, None] * s + n
        y_q = gamma * y + n_q
        r = gh @ y_q
        r_signal = gamma * math.sqrt(P) * (gh @ g_tilde) * s
        signal_power += float(np.sum(np.abs(r_signal) ** 2))
        noise_power += float(np.sum(np.abs(r - r_signal) ** 2))
        done += k
    return signal_power / noise_power
