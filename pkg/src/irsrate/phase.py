"""IRS phase design and the discrete-phase noise model.

A B-bit IRS picks phases from {0, 2pi/2^B, ...}; the resulting error on each
element is modelled as i.i.d. uniform on [-pi/2^B, pi/2^B]. The designed
phases ignore the noise and maximize the coherent gain |f(Theta)|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from irsrate.arrays import TWO_PI, GeometricChannel, UspaGeometry

SINC_EPS = 1e-10

SeedLike = int | np.random.SeedSequence | np.random.Generator | None


def sinc(x):
    """Unnormalized sinc, sin(x)/x, with sinc(0) = 1.

    Works on scalars and arrays.
    """
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < SINC_EPS
    safe = np.where(small, 1.0, x)
    out = np.where(small, 1.0, np.sin(safe) / safe)
    return float(out) if out.ndim == 0 else out


def noise_halfwidth(B: int | None) -> float:
    """pi / 2^B; zero for an ideal (B=None) IRS."""
    return 0.0 if B is None else math.pi / 2.0**B


def coherence_factor(B: int | None) -> float:
    """E[exp(j theta_hat)] = sinc(pi/2^B)."""
    return sinc(noise_halfwidth(B))


@dataclass(frozen=True)
class PhaseNoiseRealization:
    theta_hat: np.ndarray
    B: int | None = None

    @property
    def N(self) -> int:
        return self.theta_hat.shape[0]

    @property
    def phasor_sum(self) -> complex:
        """S = sum_n exp(j theta_hat_n)."""
        return complex(np.exp(1j * self.theta_hat).sum())

    @classmethod
    def zeros(cls, N: int) -> "PhaseNoiseRealization":
        return cls(np.zeros(N), None)


def _rng(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def sample_phase_noise(B: int | None, N: int, rng_seed: SeedLike = None) -> PhaseNoiseRealization:
    """Draw N i.i.d. U[-pi/2^B, pi/2^B] phase errors (all zero when B is None)."""
    if B is not None and B < 1:
        raise ValueError(f"B must be >= 1, got {B}")
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    w = noise_halfwidth(B)
    if w == 0.0:
        return PhaseNoiseRealization(np.zeros(N), B)
    return PhaseNoiseRealization(_rng(rng_seed).uniform(-w, w, size=N), B)


def sample_phase_noise_batch(B: int | None, N: int, trials: int, rng: np.random.Generator) -> np.ndarray:
    """(trials, N) array of phase errors; used by the Monte Carlo path."""
    w = noise_halfwidth(B)
    if w == 0.0:
        return np.zeros((trials, N))
    return rng.uniform(-w, w, size=(trials, N))


def phase_gradient(config) -> tuple[float, float]:
    """(p, q): difference of the IRS arrival and departure directions."""
    ur, vr = config.irs_aoa.direction
    ut, vt = config.irs_aod.direction
    return ur - ut, vr - vt


def _cascade_phase(config) -> np.ndarray:
    x, y = UspaGeometry(config.N, config.spacing_ratio).grid_indices()
    p, q = phase_gradient(config)
    return TWO_PI * config.spacing_ratio * (x * p + y * q)


def optimal_phases(config) -> np.ndarray:
    """theta_n = -2pi (d/lambda)(x p + y q), wrapped to [0, 2pi)."""
    theta = np.mod(-_cascade_phase(config), TWO_PI)
    # mod can return exactly 2pi for tiny negative inputs
    theta[theta >= TWO_PI] = 0.0
    return theta


def f_theta(config, phases: np.ndarray, noise: PhaseNoiseRealization | None = None) -> complex:
    """f(Theta) = a_N(AoD)^H Theta a_N(AoA), with Theta carrying the noisy phases."""
    phases = np.asarray(phases, dtype=float)
    if phases.shape != (config.N,):
        raise ValueError(f"expected {config.N} phases, got shape {phases.shape}")
    total = phases if noise is None else phases + noise.theta_hat
    return complex(np.exp(1j * (_cascade_phase(config) + total)).sum())


def _check_dims(channel: GeometricChannel, phases, noise):
    if np.shape(phases) != (channel.N,):
        raise ValueError(f"phase vector has shape {np.shape(phases)}, channel has N={channel.N}")
    if noise is not None and noise.N != channel.N:
        raise ValueError(f"noise realization has N={noise.N}, channel has N={channel.N}")


def cascaded_channels(channel: GeometricChannel, phases, noise: PhaseNoiseRealization | None = None):
    """(g, g_tilde) under optimal phases, in closed form.

    g = alpha beta N a_M and g_tilde = alpha beta a_M sum_n exp(j theta_hat_n).
    ``phases`` must be the optimal ones; only their shape is checked.
    """
    _check_dims(channel, phases, noise)
    ab = channel.alpha * channel.beta
    g = ab * channel.N * channel.bs_response
    if noise is None:
        return g, g.copy()
    return g, ab * channel.bs_response * noise.phasor_sum


def cascaded_channels_direct(channel: GeometricChannel, phases, noise: PhaseNoiseRealization | None = None):
    """(g, g_tilde) = (H2 Theta h1, H2 Theta_tilde h1) by explicit products; any phases."""
    _check_dims(channel, phases, noise)
    phases = np.asarray(phases, dtype=float)
    g = channel.irs_bs @ (np.exp(1j * phases) * channel.user_irs)
    if noise is None:
        return g, g.copy()
    g_tilde = channel.irs_bs @ (np.exp(1j * (phases + noise.theta_hat)) * channel.user_irs)
    return g, g_tilde
