"""System parameters of the IRS-aided uplink."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from irsrate.aqnm import AdcModel
from irsrate.arrays import AnglePair, is_perfect_square

# Default link: N=64, M=16, B=1, b=2, d1=10 m, d2=40 m, P = 20 dBm over a -80 dBm floor.
DEFAULT_D1 = 10.0
DEFAULT_D2 = 40.0
DEFAULT_P_DB = 100.0


def path_loss(distance: float, exponent: float = 2.2, reference: float = 1e-3) -> float:
    """Link gain ``reference * distance**-exponent``."""
    return reference * distance ** (-exponent)


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def random_angles(seed: int | None) -> tuple[AnglePair, AnglePair, AnglePair]:
    """IRS AoA, IRS AoD and BS AoA drawn from U[0, 2pi) x U[0, pi]."""
    rng = np.random.default_rng(seed)
    return AnglePair.random(rng), AnglePair.random(rng), AnglePair.random(rng)


_DEFAULT_ANGLES = random_angles(0)


@dataclass(frozen=True)
class SystemConfig:
    """Scalar link parameters.

    ``B=None`` is an ideal (continuous-phase) IRS; ``adc=AdcModel(None)`` an
    ideal ADC. ``P`` is the linear normalized transmit SNR; ``alpha2`` and
    ``beta2`` are the user-IRS and IRS-BS link gains |alpha|^2, |beta|^2.
    """

    M: int = 16
    N: int = 64
    B: int | None = 1
    adc: AdcModel = field(default_factory=lambda: AdcModel.from_bits(2))
    P: float = db_to_linear(DEFAULT_P_DB)
    alpha2: float = path_loss(DEFAULT_D1)
    beta2: float = path_loss(DEFAULT_D2)
    irs_aoa: AnglePair = _DEFAULT_ANGLES[0]
    irs_aod: AnglePair = _DEFAULT_ANGLES[1]
    bs_aoa: AnglePair = _DEFAULT_ANGLES[2]
    spacing_ratio: float = 0.5
    E_u: float | None = None

    def __post_init__(self):
        for name in ("M", "N"):
            if not is_perfect_square(int(getattr(self, name))):
                raise ValueError(f"{name} must be a perfect square >= 1, got {getattr(self, name)}")
        if self.B is not None and (int(self.B) != self.B or self.B < 1):
            raise ValueError(f"B must be a positive integer or None (ideal IRS), got {self.B}")
        if not self.P > 0:
            raise ValueError(f"P must be positive, got {self.P}")
        if not (self.alpha2 > 0 and self.beta2 > 0):
            raise ValueError("link gains alpha2, beta2 must be positive")
        if not self.spacing_ratio > 0:
            raise ValueError("spacing_ratio must be positive")

    @property
    def gamma(self) -> float:
        return self.adc.gamma

    @property
    def gain(self) -> float:
        """|alpha beta|^2."""
        return self.alpha2 * self.beta2

    def replace(self, **changes) -> "SystemConfig":
        if "adc_bits" in changes:
            changes["adc"] = AdcModel.from_bits(changes.pop("adc_bits"))
        return dataclasses.replace(self, **changes)

    def with_random_angles(self, seed: int | None) -> "SystemConfig":
        aoa, aod, bs = random_angles(seed)
        return self.replace(irs_aoa=aoa, irs_aod=aod, bs_aoa=bs)

    def to_dict(self) -> dict[str, Any]:
        return {
            "M": self.M,
            "N": self.N,
            "B": self.B,
            "adc_bits": self.adc.bits,
            "P": self.P,
            "alpha2": self.alpha2,
            "beta2": self.beta2,
            "irs_aoa": [self.irs_aoa.azimuth, self.irs_aoa.elevation],
            "irs_aod": [self.irs_aod.azimuth, self.irs_aod.elevation],
            "bs_aoa": [self.bs_aoa.azimuth, self.bs_aoa.elevation],
            "spacing_ratio": self.spacing_ratio,
            "E_u": self.E_u,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any], seed: int | None = None) -> "SystemConfig":
        """Build from JSON-style keys.

        Accepts ``P`` (linear) or ``P_db``; ``alpha2``/``beta2`` or the
        distances ``d1``/``d2`` (path-loss exponent ``pl_exponent``, default
        2.2). Angles missing from ``data`` are drawn from ``seed``.
        """
        data = dict(data)
        known = {f.name for f in dataclasses.fields(cls)} | {
            "adc_bits", "P_db", "d1", "d2", "pl_exponent",
        }
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        kw: dict[str, Any] = {}
        for key in ("M", "N", "spacing_ratio", "E_u"):
            if key in data:
                kw[key] = data[key]
        if "B" in data:
            kw["B"] = None if data["B"] in (None, "inf", "ideal") else int(data["B"])
        if "adc_bits" in data:
            b = data["adc_bits"]
            kw["adc"] = AdcModel.from_bits(None if b in (None, "inf", "ideal") else int(b))
        if "P" in data and "P_db" in data:
            raise ValueError("give either P or P_db, not both")
        if "P" in data:
            kw["P"] = float(data["P"])
        elif "P_db" in data:
            kw["P"] = db_to_linear(float(data["P_db"]))
        exponent = float(data.get("pl_exponent", 2.2))
        for gain, dist in (("alpha2", "d1"), ("beta2", "d2")):
            if gain in data:
                kw[gain] = float(data[gain])
            elif dist in data or "pl_exponent" in data:
                default = DEFAULT_D1 if dist == "d1" else DEFAULT_D2
                kw[gain] = path_loss(float(data.get(dist, default)), exponent)
        drawn = random_angles(seed) if seed is not None else _DEFAULT_ANGLES
        for i, key in enumerate(("irs_aoa", "irs_aod", "bs_aoa")):
            kw[key] = AnglePair(*data[key]) if key in data else drawn[i]
        return cls(**kw)

