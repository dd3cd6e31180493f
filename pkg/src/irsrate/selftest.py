"""Oracle-equivalence checks runnable from the command line."""

from __future__ import annotations

import math

import numpy as np

from irsrate.aqnm import AdcModel
from irsrate.arrays import AnglePair, build_channels
from irsrate.config import SystemConfig
from irsrate.design import arcsinc
from irsrate.phase import (
    cascaded_channels,
    cascaded_channels_direct,
    f_theta,
    optimal_phases,
    sample_phase_noise,
    sinc,
)
from irsrate.rate import exact_sinr, vector_sinr


def random_config(rng: np.random.Generator, N_choices=(4, 16, 64), M_choices=(4, 16)) -> SystemConfig:
    """Random link with random angles, sizes, resolutions and P in [1, 1e10]."""
    return SystemConfig(
        M=int(rng.choice(M_choices)),
        N=int(rng.choice(N_choices)),
        B=int(rng.integers(1, 5)),
        adc=AdcModel.from_bits(int(rng.integers(1, 6))),
        P=float(10.0 ** rng.uniform(0.0, 10.0)),
        irs_aoa=AnglePair.random(rng),
        irs_aod=AnglePair.random(rng),
        bs_aoa=AnglePair.random(rng),
        spacing_ratio=float(rng.uniform(0.1, 1.0)),
    )


def sinr_oracle_max_error(num_configs: int = 1000, seed: int = 0) -> float:
    """Largest relative gap between scalar and vector-level SINR."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(num_configs):
        cfg = random_config(rng)
        noise = sample_phase_noise(cfg.B, cfg.N, rng)
        a, b = exact_sinr(cfg, noise), vector_sinr(cfg, noise)
        worst = max(worst, abs(a - b) / abs(b))
    return worst


def coherent_gain_max_error(num_configs: int = 1000, seed: int = 1) -> float:
    """Largest | |f(Theta_opt)| - N | / N over random angle draws."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(num_configs):
        cfg = random_config(rng, N_choices=(1, 4, 16, 64, 256))
        worst = max(worst, abs(abs(f_theta(cfg, optimal_phases(cfg))) - cfg.N) / cfg.N)
    return worst


def cascade_max_error(num_configs: int = 200, seed: int = 2) -> float:
    """Closed-form vs explicit-product cascaded channel with noise, relative."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(num_configs):
        cfg = random_config(rng)
        ch = build_channels(cfg)
        ph = optimal_phases(cfg)
        noise = sample_phase_noise(cfg.B, cfg.N, rng)
        for u, v in zip(cascaded_channels(ch, ph, noise), cascaded_channels_direct(ch, ph, noise)):
            worst = max(worst, float(np.linalg.norm(u - v) / np.linalg.norm(v)))
    return worst


def arcsinc_max_error(num_points: int = 100, seed: int = 3) -> float:
    ys = np.random.default_rng(seed).uniform(1e-6, 1.0, num_points)
    return max(abs(sinc(arcsinc(float(y))) - y) for y in ys)


CHECKS = (
    ("scalar SINR == vector SINR", sinr_oracle_max_error, 1e-9),
    ("|f(optimal phases)| == N", coherent_gain_max_error, 1e-9),
    ("closed-form cascade == H2 Theta h1", cascade_max_error, 1e-9),
    ("sinc(arcsinc(y)) == y", arcsinc_max_error, 1e-10),
)


def run_selftest(emit=print) -> bool:
    ok = True
    for name, fn, tol in CHECKS:
        err = fn()
        passed = math.isfinite(err) and err <= tol
        ok &= passed
        emit(f"{'PASS' if passed else 'FAIL'}  {name}  max_err={err:.3e}  tol={tol:g}")
    return ok
