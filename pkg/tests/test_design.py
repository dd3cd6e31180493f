import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from irsrate.aqnm import AdcModel, rho_for_bits
from irsrate.config import SystemConfig
from irsrate.design import (
    Bound,
    DesignBudget,
    a_hat,
    adc_gain_threshold,
    adc_loss,
    arcsinc,
    df_dM,
    df_ds,
    irs_loss,
    max_rho,
    min_adc_bits,
    min_irs_bits,
    monotonicity_report,
    solve_design,
)
from irsrate.phase import sinc
from irsrate.rate import closed_form_rate, log2_1p


def test_arcsinc_endpoints():
    assert arcsinc(1.0) == 0.0
    assert math.isclose(arcsinc(2 / math.pi), math.pi / 2, rel_tol=1e-12)


@pytest.mark.parametrize("y", [0.0, -0.1, 1.0000001, 2.0])
def test_arcsinc_domain(y):
    with pytest.raises(ValueError):
        arcsinc(y)


@settings(max_examples=100)
@given(st.floats(1e-8, 1.0))
def test_arcsinc_round_trip(y):
    x = arcsinc(y)
    assert 0 <= x < math.pi
    assert abs(sinc(x) - y) <= 1e-10


def brute_force_irs_loss(cfg, B):
    """Loss from the two closed-form rates, written out longhand."""
    g, M = cfg.gamma, cfg.M
    x = cfg.P * cfg.gain * cfg.N**2
    c2 = (1.0 if B is None else math.sin(math.pi / 2**B) / (math.pi / 2**B)) ** 2
    ref = math.log2(1 + g * x * M / (g + (1 - g) * (1 + x)))
    return ref - math.log2(1 + g * x * c2 * M / (g + (1 - g) * (1 + x * c2)))


def test_irs_loss_matches_longhand():
    rng = np.random.default_rng(0)
    for _ in range(50):
        cfg = SystemConfig(P=10 ** rng.uniform(4, 12), B=int(rng.integers(1, 6)))
        assert math.isclose(irs_loss(cfg), brute_force_irs_loss(cfg, cfg.B), rel_tol=1e-9, abs_tol=1e-12)


def test_irs_bound_equivalent_to_loss_inequality():
    """The real bound is exactly where loss(B) crosses delta (B treated as continuous)."""
    from irsrate.design import irs_bits_bound

    cfg = SystemConfig(adc=AdcModel.from_bits(5), P=1e12, N=16)
    delta = 0.2
    bound = irs_bits_bound(cfg, delta)
    x = cfg.P * cfg.gain * cfg.N**2
    c2 = sinc(math.pi / 2**bound) ** 2
    loss = closed_form_rate(cfg.gamma, cfg.M, x) - closed_form_rate(cfg.gamma, cfg.M, x * c2)
    assert math.isclose(loss, delta, rel_tol=1e-8)


def test_adc_threshold_equivalent_to_loss_inequality():
    cfg = SystemConfig()
    delta = 0.3
    rho = max_rho(DesignBudget(delta, cfg))
    assert isinstance(rho, float)
    assert math.isclose(adc_loss(cfg, 1 - rho), delta, rel_tol=1e-9)


def test_delta_zero_is_never_a_number():
    out = solve_design(DesignBudget(0.0, SystemConfig()))
    assert out.min_irs_bits is Bound.INFINITE
    assert out.max_rho is Bound.INFEASIBLE
    assert out.min_adc_bits is Bound.INFEASIBLE


def test_negative_delta_rejected():
    with pytest.raises(ValueError):
        DesignBudget(-0.1, SystemConfig())


def test_large_N_regime():
    cfg = SystemConfig(N=31623**2)  # ~1e9 elements
    b = DesignBudget(0.3, cfg)
    assert min_irs_bits(b) is Bound.UNCONSTRAINED
    r = max_rho(b)
    assert r is Bound.INFEASIBLE or r < 1e-6


def test_default_link_budget():
    cfg = SystemConfig()
    b = DesignBudget(0.3, cfg)
    B = min_irs_bits(b)
    assert isinstance(B, int)
    assert irs_loss(cfg, B) <= 0.3
    if B > 1:
        assert irs_loss(cfg, B - 1) > 0.3
    bits = min_adc_bits(max_rho(b))
    assert adc_loss(cfg, 1 - rho_for_bits(bits)) <= 0.3
    if bits > 1:
        assert adc_loss(cfg, 1 - rho_for_bits(bits - 1)) > 0.3


def test_tight_budget_needs_several_irs_bits():
    cfg = SystemConfig(adc=AdcModel.from_bits(None), N=256)
    B = min_irs_bits(DesignBudget(0.05, cfg))
    assert isinstance(B, int) and B > 1
    assert irs_loss(cfg, B) <= 0.05 < irs_loss(cfg, B - 1)


def test_a_hat_nonpositive_is_unconstrained():
    cfg = SystemConfig(P=1e-3, N=4, M=1)
    assert a_hat(cfg, 5.0) <= 0
    assert min_irs_bits(DesignBudget(5.0, cfg)) is Bound.UNCONSTRAINED


@pytest.mark.parametrize("rho, bits", [(0.12, 2), (1.0, 1), (0.0, Bound.INFEASIBLE), (-0.2, Bound.INFEASIBLE)])
def test_min_adc_bits(rho, bits):
    assert min_adc_bits(rho) == bits


def test_max_rho_decreasing_when_N_doubles():
    rng = np.random.default_rng(4)
    for _ in range(50):
        k = int(rng.integers(2, 20))
        cfg = SystemConfig(N=k * k, M=int(rng.choice([4, 16, 64])), P=10 ** rng.uniform(6, 11))
        cfg2 = cfg.replace(N=4 * k * k)  # side doubled
        d = float(rng.uniform(0.1, 1.0))
        r1, r2 = max_rho(DesignBudget(d, cfg)), max_rho(DesignBudget(d, cfg2))
        if isinstance(r1, float) and isinstance(r2, float):
            assert r2 < r1


@settings(max_examples=200)
@given(
    st.sampled_from([4, 16, 64, 256]),
    st.sampled_from([1, 4, 16, 64]),
    st.floats(1e4, 1e12),
    st.integers(1, 6),
    st.floats(0.05, 2.0),
    st.sampled_from(["N", "P", "B", "M"]),
)
def test_max_rho_monotone(N, M, P, B, delta, var):
    cfg = SystemConfig(N=N, M=M, P=P, B=B)
    bigger = {
        "N": cfg.replace(N=(math.isqrt(N) + 1) ** 2),
        "P": cfg.replace(P=2 * P),
        "B": cfg.replace(B=B + 1),
        "M": cfg.replace(M=(math.isqrt(M) + 1) ** 2),
    }[var]
    r1, r2 = max_rho(DesignBudget(delta, cfg)), max_rho(DesignBudget(delta, bigger))
    if isinstance(r2, float):
        assert isinstance(r1, float) and r2 <= r1 + 1e-12


def test_threshold_delta_zero_is_one():
    s = np.logspace(-2, 4, 20)
    np.testing.assert_allclose(adc_gain_threshold(s, 16.0, 0.0), 1.0, rtol=1e-12)


def test_analytic_derivatives_match_finite_differences():
    s = np.logspace(-2, 4, 25)[:, None]
    M = np.geomspace(1, 512, 25)[None, :]
    rep = monotonicity_report(0.4, s.ravel(), M.ravel())
    np.testing.assert_allclose(rep.dfds, df_ds(s, M, 0.4), rtol=1e-6, atol=1e-10)
    np.testing.assert_allclose(rep.dfdM, df_dM(s, M, 0.4), rtol=1e-6, atol=1e-10)


def test_monotonicity_report_flags():
    rep = monotonicity_report(0.5, np.logspace(-2, 4, 30), np.geomspace(1, 1024, 30))
    assert rep.nondecreasing_in_s and rep.nondecreasing_in_M
    assert rep.dfdM_shrinks(64, 128, 0.5).all()
    assert rep.f.shape == (30, 30)


def test_outcome_verification_slack():
    out = solve_design(DesignBudget(0.3, SystemConfig()))
    assert out.irs_slack >= -1e-9 and out.adc_slack >= -1e-9
    d = out.to_dict()
    assert d["min_irs_bits"] == out.min_irs_bits
