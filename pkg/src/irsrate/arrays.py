"""Uniform square planar array (USPA) responses and the single-path geometric
channels user -> IRS -> BS."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi


def is_perfect_square(x: int) -> bool:
    return x >= 1 and math.isqrt(x) ** 2 == x


@dataclass(frozen=True)
class AnglePair:
    """Azimuth / elevation pair in radians.

    Canonicalized to azimuth in [0, 2pi) and elevation in [0, pi]. An
    elevation outside [0, pi] is reflected and the azimuth rotated by pi,
    which leaves ``sin(el)*sin(az)`` and ``sin(el)*cos(az)`` unchanged.
    """

    azimuth: float
    elevation: float

    def __post_init__(self):
        az = float(self.azimuth)
        el = float(self.elevation) % TWO_PI
        if el > math.pi:
            el = TWO_PI - el
            az += math.pi
        az %= TWO_PI
        if az >= TWO_PI:  # tiny negative inputs wrap to exactly 2pi
            az = 0.0
        object.__setattr__(self, "azimuth", az)
        object.__setattr__(self, "elevation", el)

    @property
    def direction(self) -> tuple[float, float]:
        """(sin el sin az, sin el cos az): the two phase-progression terms."""
        s = math.sin(self.elevation)
        return s * math.sin(self.azimuth), s * math.cos(self.azimuth)

    @classmethod
    def random(cls, rng: np.random.Generator) -> "AnglePair":
        return cls(rng.uniform(0.0, TWO_PI), rng.uniform(0.0, math.pi))


@dataclass(frozen=True)
class UspaGeometry:
    num_elements: int
    spacing_ratio: float = 0.5

    def __post_init__(self):
        if not is_perfect_square(int(self.num_elements)):
            raise ValueError(f"USPA size must be a perfect square, got {self.num_elements}")
        if not self.spacing_ratio > 0:
            raise ValueError(f"spacing ratio d/lambda must be positive, got {self.spacing_ratio}")

    @property
    def side(self) -> int:
        return math.isqrt(self.num_elements)

    def grid_indices(self) -> tuple[np.ndarray, np.ndarray]:
        """Row/column indices (x, y) of each flat element n = 1..X.

        x = floor((n-1)/sqrt(X)), y = (n-1) mod sqrt(X).
        """
        k = np.arange(self.num_elements)
        return k // self.side, k % self.side


def steering_vector(geom: UspaGeometry, angles: AnglePair) -> np.ndarray:
    """Unit-modulus USPA array response of length ``geom.num_elements``."""
    x, y = geom.grid_indices()
    u, v = angles.direction
    return np.exp(1j * TWO_PI * geom.spacing_ratio * (x * u + y * v))


@dataclass(frozen=True)
class GeometricChannel:
    """h1 = alpha a_N(IRS AoA); H2 = beta a_M(BS AoA) a_N(IRS AoD)^H."""

    user_irs: np.ndarray
    irs_bs: np.ndarray
    alpha: complex
    beta: complex
    bs_response: np.ndarray

    @property
    def N(self) -> int:
        return self.user_irs.shape[0]

    @property
    def M(self) -> int:
        return self.irs_bs.shape[0]


def build_channels(config) -> GeometricChannel:
    """Deterministic geometric channels for a :class:`~irsrate.config.SystemConfig`.

    Link strengths are the non-negative square roots of the link gains.
    """
    irs = UspaGeometry(config.N, config.spacing_ratio)
    bs = UspaGeometry(config.M, config.spacing_ratio)
    alpha = math.sqrt(config.alpha2)
    beta = math.sqrt(config.beta2)
    h1 = alpha * steering_vector(irs, config.irs_aoa)
    a_bs = steering_vector(bs, config.bs_aoa)
    a_irs_t = steering_vector(irs, config.irs_aod)
    H2 = beta * np.outer(a_bs, a_irs_t.conj())
    return GeometricChannel(h1, H2, complex(alpha), complex(beta), a_bs)
