"""Hardware sizing for a target rate degradation.

Given an allowed loss ``delta`` (bits/s/Hz), find the fewest IRS phase bits
B and the largest ADC distortion rho (hence fewest ADC bits b) such that the
closed-form rate stays within ``delta`` of the matching ideal-hardware rate:

* IRS side: reference is the same ADC with an ideal IRS (sinc = 1).
* ADC side: reference is an ideal ADC with the same IRS.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from irsrate.aqnm import AdcModel, rho_for_bits
from irsrate.config import SystemConfig
from irsrate.phase import coherence_factor, sinc
from irsrate.rate import closed_form_rate, log2_1p

MAX_BITS = 64
ARCSINC_UPPER = math.pi - 1e-9
ARCSINC_MAX_ITER = 200
# Real-valued IRS bound at or below this is the "B >= 0" regime.
UNCONSTRAINED_TOL = 1e-6


class Bound(str, enum.Enum):
    UNCONSTRAINED = "unconstrained"
    INFINITE = "infinite"
    INFEASIBLE = "infeasible"


def arcsinc(y: float) -> float:
    """The unique x in [0, pi) with sin(x)/x = y, by bisection."""
    if not (0.0 < y <= 1.0):
        raise ValueError(f"arcsinc is defined on (0, 1], got {y}")
    if y == 1.0:
        return 0.0
    lo, hi = 0.0, ARCSINC_UPPER
    if sinc(hi) >= y:
        return hi
    for _ in range(ARCSINC_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if sinc(mid) > y:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class DesignBudget:
    delta: float
    config: SystemConfig = field(default_factory=SystemConfig)

    def __post_init__(self):
        if not self.delta >= 0:
            raise ValueError(f"rate degradation delta must be >= 0, got {self.delta}")


def _snr_n2(config: SystemConfig) -> float:
    """P |ab|^2 N^2."""
    return config.P * config.gain * config.N**2


def irs_loss(config: SystemConfig, B: int | None = None) -> float:
    """Closed-form rate lost to B-bit phase noise at the config's ADC."""
    B = config.B if B is None else B
    x = _snr_n2(config)
    c2 = coherence_factor(B) ** 2
    return closed_form_rate(config.gamma, config.M, x) - closed_form_rate(config.gamma, config.M, x * c2)


def adc_loss(config: SystemConfig, gamma: float | None = None) -> float:
    """Closed-form rate lost to an ADC of gain ``gamma`` at the config's B."""
    gamma = config.gamma if gamma is None else gamma
    s = _snr_n2(config) * coherence_factor(config.B) ** 2
    return float(log2_1p(config.M * s)) - closed_form_rate(gamma, config.M, s)


def a_hat(config: SystemConfig, delta: float) -> float:
    """1 + gamma x M / (1 + (1 - gamma) x) - 2^delta, with x = P|ab|^2 N^2."""
    x = _snr_n2(config)
    g = config.gamma
    return 1.0 + g * x * config.M / (1.0 + (1.0 - g) * x) - 2.0**delta


def s_hat(config: SystemConfig, B: int | None = None) -> float:
    """P |ab|^2 N^2 sinc^2(pi/2^B)."""
    B = config.B if B is None else B
    return _snr_n2(config) * coherence_factor(B) ** 2


def irs_bits_bound(config: SystemConfig, delta: float):
    """Real-valued lower bound on B, or a :class:`Bound` outcome.

    B >= log2(pi) - log2 arcsinc(sqrt(a / (x (2^delta gamma M - a + a gamma)))).
    Returns ``None`` when the arcsinc argument is >= 1, which only occurs
    through roundoff near delta=0; the caller then searches B directly.
    """
    if delta < 0:
        raise ValueError(f"delta must be >= 0, got {delta}")
    if delta == 0:
        return Bound.INFINITE
    a = a_hat(config, delta)
    if a <= 0:
        return Bound.UNCONSTRAINED
    g = config.gamma
    den = 2.0**delta * g * config.M - a + a * g
    if den <= 0:
        return Bound.INFEASIBLE
    arg = a / (_snr_n2(config) * den)
    if arg >= 1.0:
        return None
    return math.log2(math.pi) - math.log2(arcsinc(math.sqrt(arg)))


def min_irs_bits(budget: DesignBudget):
    """Fewest IRS phase bits meeting the budget, or a :class:`Bound`.

    The formula's integer ceiling is corrected by direct loss evaluation so
    that loss(B) <= delta < loss(B - 1).
    """
    config, delta = budget.config, budget.delta
    bound = irs_bits_bound(config, delta)
    if isinstance(bound, Bound):
        return bound
    if bound is not None and bound <= UNCONSTRAINED_TOL:
        return Bound.UNCONSTRAINED
    B = 1 if bound is None else max(1, math.ceil(bound))
    while B < MAX_BITS and irs_loss(config, B) > delta:
        B += 1
    if irs_loss(config, B) > delta:
        return Bound.INFINITE
    while B > 1 and irs_loss(config, B - 1) <= delta:
        B -= 1
    return B


def adc_gain_threshold(s: float, M: float, delta: float) -> float:
    """f(s) = ((1+Ms)2^-delta - 1)(1+s) / (((1+Ms)2^-delta - 1 + M) s).

    An ADC meets the budget iff its gain gamma >= f(s).
    """
    k = (1.0 + M * s) * 2.0**-delta - 1.0
    return k * (1.0 + s) / ((k + M) * s)


def max_rho(budget: DesignBudget, B: int | None = None):
    """Largest ADC distortion rho = 1 - f(s_hat) meeting the budget, or INFEASIBLE."""
    config, delta = budget.config, budget.delta
    if delta < 0:
        raise ValueError(f"delta must be >= 0, got {delta}")
    if delta == 0:
        return Bound.INFEASIBLE
    s = s_hat(config, config.B if B is None else B)
    if not s > 0:
        raise ValueError("s_hat must be positive")
    r = 1.0 - adc_gain_threshold(s, config.M, delta)
    return Bound.INFEASIBLE if r <= 0 else r


def min_adc_bits(rho_max):
    """Coarsest ADC (smallest b) whose tabulated rho is <= ``rho_max``."""
    if isinstance(rho_max, Bound) or rho_max <= 0:
        return Bound.INFEASIBLE
    for b in range(1, MAX_BITS + 1):
        if rho_for_bits(b) <= rho_max:
            return b
    return Bound.INFEASIBLE


@dataclass(frozen=True)
class DesignOutcome:
    min_irs_bits: int | Bound
    max_rho: float | Bound
    min_adc_bits: int | Bound
    a_hat: float
    s_hat: float
    irs_bound: float | Bound | None
    irs_slack: float | None = None
    adc_slack: float | None = None
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        def enc(v):
            if isinstance(v, Bound):
                return v.value
            if isinstance(v, float) and not math.isfinite(v):
                return str(v)
            return v

        return {
            "min_irs_bits": enc(self.min_irs_bits),
            "max_rho": enc(self.max_rho),
            "min_adc_bits": enc(self.min_adc_bits),
            "a_hat": enc(self.a_hat),
            "s_hat": enc(self.s_hat),
            "irs_bound": enc(self.irs_bound),
            "irs_slack": enc(self.irs_slack),
            "adc_slack": enc(self.adc_slack),
            "notes": list(self.notes),
        }


def solve_design(budget: DesignBudget) -> DesignOutcome:
    """Both sizing rules plus their verification slack (delta - achieved loss)."""
    config, delta = budget.config, budget.delta
    notes = []
    bound = irs_bits_bound(config, delta)
    if bound is None:
        notes.append("arcsinc argument >= 1 (roundoff regime); B found by direct search")
    elif bound is Bound.INFEASIBLE:
        notes.append("2^delta gamma M - a_hat + a_hat gamma <= 0; IRS bound undefined")
    elif bound is Bound.UNCONSTRAINED:
        notes.append("a_hat <= 0: any IRS resolution meets the budget")
    B = min_irs_bits(budget)
    rho = max_rho(budget)
    b = min_adc_bits(rho)
    irs_slack = delta - irs_loss(config, B) if isinstance(B, int) else None
    adc_slack = delta - adc_loss(config, 1.0 - rho_for_bits(b)) if isinstance(b, int) else None
    if isinstance(rho, float) and rho >= 1.0:
        notes.append("rho bound >= 1: any ADC resolution meets the budget")
    return DesignOutcome(B, rho, b, a_hat(config, delta), s_hat(config), bound, irs_slack, adc_slack, tuple(notes))


def _central_diff(fn, x: np.ndarray, rel_step: float = 1e-5) -> np.ndarray:
    # x > 0 on every grid used here
    h = rel_step * np.abs(x)
    return (fn(x + h) - fn(x - h)) / (2.0 * h)


def df_ds(s, M, delta):
    """Closed-form partial derivative of f with respect to s."""
    t = 2.0**-delta
    den = (s * t + M * s**2 * t - s + M * s) ** 2
    return (2 * M * s * t * (1 - t) + (M - 1) * (1 - t) + M**2 * s**2 * t * (1 - t) + t * (1 - t)) / den


def df_dM(s, M, delta):
    """Closed-form partial derivative of f with respect to M."""
    t = 2.0**-delta
    den = (s * t + M * s**2 * t - s + M * s) ** 2
    return (s * (1 - t) + s**2 * (1 - t)) / den


@dataclass
class MonotonicityReport:
    s_values: np.ndarray
    M_values: np.ndarray
    f: np.ndarray
    dfds: np.ndarray
    dfdM: np.ndarray
    tol: float = 1e-9

    @property
    def nondecreasing_in_s(self) -> bool:
        return bool(np.all(self.dfds >= -self.tol))

    @property
    def nondecreasing_in_M(self) -> bool:
        return bool(np.all(self.dfdM >= -self.tol))

    def dfdM_shrinks(self, M_small: float, M_large: float, delta: float) -> np.ndarray:
        """Per s row: |df/dM| at M_large < |df/dM| at M_small."""
        s = self.s_values
        fd = lambda M: _central_diff(lambda m: adc_gain_threshold(s, m, delta), np.full_like(s, M))
        return np.abs(fd(M_large)) < np.abs(fd(M_small))


def monotonicity_report(delta: float, s_values, M_values, tol: float = 1e-9) -> MonotonicityReport:
    """Finite-difference derivatives of f over an (s, M) grid (rows: s, columns: M)."""
    s = np.asarray(s_values, dtype=float)[:, None]
    M = np.asarray(M_values, dtype=float)[None, :]
    S, MM = np.broadcast_arrays(s, M)
    f = adc_gain_threshold(S, MM, delta)
    dfds = _central_diff(lambda x: adc_gain_threshold(x, MM, delta), S.astype(float))
    dfdM = _central_diff(lambda m: adc_gain_threshold(S, m, delta), MM.astype(float))
    return MonotonicityReport(s.ravel(), M.ravel(), f, dfds, dfdM, tol)
