import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from irsrate.arrays import AnglePair, UspaGeometry, build_channels, steering_vector
from irsrate.config import SystemConfig

angles = st.builds(
    AnglePair,
    st.floats(-20, 20, allow_nan=False),
    st.floats(-20, 20, allow_nan=False),
)


def loop_steering(X, d, az, el):
    side = math.isqrt(X)
    out = []
    for n in range(1, X + 1):
        x, y = (n - 1) // side, (n - 1) % side
        out.append(np.exp(1j * 2 * math.pi * d * (x * math.sin(el) * math.sin(az) + y * math.sin(el) * math.cos(az))))
    return np.array(out)


def test_single_element():
    assert np.array_equal(steering_vector(UspaGeometry(1), AnglePair(1.3, 0.7)), [1.0 + 0j])


def test_zero_elevation_all_ones():
    np.testing.assert_allclose(steering_vector(UspaGeometry(4), AnglePair(2.1, 0.0)), np.ones(4))


def test_half_wavelength_broadside_pattern():
    v = steering_vector(UspaGeometry(4, 0.5), AnglePair(math.pi / 2, math.pi / 2))
    np.testing.assert_allclose(v, [1, 1, -1, -1], atol=1e-12)


@pytest.mark.parametrize("X", [1, 4, 9, 16, 64])
def test_matches_loop_oracle(X):
    rng = np.random.default_rng(X)
    for _ in range(20):
        az, el, d = rng.uniform(0, 2 * math.pi), rng.uniform(0, math.pi), rng.uniform(0.1, 2)
        np.testing.assert_allclose(
            steering_vector(UspaGeometry(X, d), AnglePair(az, el)), loop_steering(X, d, az, el), atol=1e-12
        )


@given(angles, st.sampled_from([1, 4, 16, 64, 256]), st.floats(0.05, 3.0))
def test_steering_invariants(a, X, d):
    v = steering_vector(UspaGeometry(X, d), a)
    np.testing.assert_allclose(np.abs(v), 1.0, atol=1e-12)
    assert v[0] == 1 + 0j
    assert math.isclose(np.vdot(v, v).real, X, rel_tol=1e-9)


@given(st.floats(-50, 50), st.floats(-50, 50))
def test_angle_canonicalization(az, el):
    a = AnglePair(az, el)
    assert 0 <= a.azimuth < 2 * math.pi
    assert 0 <= a.elevation <= math.pi
    u, v = a.direction
    assert math.isclose(u, math.sin(el) * math.sin(az), abs_tol=1e-9)
    assert math.isclose(v, math.sin(el) * math.cos(az), abs_tol=1e-9)


@pytest.mark.parametrize("X", [0, 2, 8, 15])
def test_non_square_rejected(X):
    with pytest.raises(ValueError):
        UspaGeometry(X)


def test_nonpositive_spacing_rejected():
    with pytest.raises(ValueError):
        UspaGeometry(4, 0.0)


def test_trivial_channels():
    ch = build_channels(SystemConfig(M=1, N=1, alpha2=1.0, beta2=1.0))
    np.testing.assert_allclose(ch.user_irs, [1])
    np.testing.assert_allclose(ch.irs_bs, [[1]])


def test_default_link_gains():
    cfg = SystemConfig()
    assert math.isclose(cfg.alpha2, 10**-5.2, rel_tol=1e-12)
    assert math.isclose(cfg.beta2, 2.9886015618438637e-07, rel_tol=1e-12)
    assert math.isclose(cfg.beta2, 2.99e-7, rel_tol=1e-3)


def test_channel_properties():
    rng = np.random.default_rng(5)
    for _ in range(50):
        cfg = SystemConfig().with_random_angles(int(rng.integers(1 << 30))).replace(
            N=int(rng.choice([4, 16, 64])), M=int(rng.choice([1, 4, 16]))
        )
        ch = build_channels(cfg)
        assert math.isclose(np.vdot(ch.user_irs, ch.user_irs).real, cfg.alpha2 * cfg.N, rel_tol=1e-9)
        sv = np.linalg.svd(ch.irs_bs, compute_uv=False)
        if len(sv) > 1:
            assert sv[1] <= 1e-9 * sv[0]


def test_build_channels_is_pure():
    cfg = SystemConfig()
    a, b = build_channels(cfg), build_channels(cfg)
    assert a.user_irs.tobytes() == b.user_irs.tobytes()
    assert a.irs_bs.tobytes() == b.irs_bs.tobytes()
