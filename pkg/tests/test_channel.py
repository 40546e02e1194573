"""Channel synthesis tests: path loss, geometry, stream discipline."""

import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from irswpsn.channel import (
    LINK_G0,
    LINK_HR,
    dump_channels,
    link_rng,
    los_steering,
    path_loss,
    sensor_positions,
    synth_channels,
)
from irswpsn.config import SystemConfig


def test_path_loss_reference():
    # 10^(-20/10) * 10^-2.2, checked against mpmath
    assert path_loss(10.0, 2.2) == pytest.approx(6.3095734448019325e-05, rel=1e-14)
    assert path_loss(1.0, 2.2) == pytest.approx(1e-2, rel=1e-14)
    assert path_loss(2.0, 2.0, ref_db=0.0) == pytest.approx(0.25, rel=1e-14)


def test_path_loss_rejects_nonpositive_distance():
    with pytest.raises(ValueError):
        path_loss(0.0, 2.2)


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=0.1, max_value=1e4), st.floats(min_value=0.5, max_value=6.0))
def test_path_loss_monotone(d, eps):
    assert path_loss(d * 2.0, eps) < path_loss(d, eps)


def test_steering_reference():
    # spacing 1/2, angle argument 1: phase step of pi per element
    got = los_steering(4, 1.0, spacing=0.5)
    assert np.allclose(got, [1.0, -1.0, 1.0, -1.0], atol=1e-12)
    assert np.allclose(np.abs(los_steering(16, 0.37)), 1.0, atol=1e-14)


def test_sensor_positions_alternate():
    pos = sensor_positions(6, 1.0)
    assert np.allclose(pos[:, 0], 0.0)
    assert np.allclose(pos[:, 1], 0.0)
    assert np.allclose(pos[:, 2], [0.5, -0.5, 1.5, -1.5, 2.5, -2.5])
    assert np.allclose(sensor_positions(3, 2.0)[:, 2], [1.0, -1.0, 3.0])


def test_geometry_distances(linear_cfg, channels_for):
    ch = channels_for(linear_cfg, 0)
    assert np.linalg.norm(ch.es_pos - ch.irs_pos) == pytest.approx(10.0)
    assert np.linalg.norm(ch.ap_pos - ch.irs_pos) == pytest.approx(math.sqrt(144 + 36))
    assert ch.n_elements == linear_cfg.n_elements
    assert ch.n_sensors == linear_cfg.n_sensors
    assert ch.g_r.shape == (6, 30)


def test_synthesis_deterministic(default_cfg):
    a = synth_channels(default_cfg, 123)
    b = synth_channels(default_cfg, 123)
    for name in ("g0", "h_r", "g_r", "g_d", "h_d"):
        assert np.array_equal(getattr(a, name), getattr(b, name))
    c = synth_channels(default_cfg, 124)
    assert not np.array_equal(a.g0, c.g0)


def test_link_streams_independent():
    # same seed, different link codes: distinct streams
    x = link_rng(5, LINK_G0).standard_normal(8)
    y = link_rng(5, LINK_HR).standard_normal(8)
    assert not np.allclose(x, y)
    with pytest.raises(ValueError):
        link_rng(-1, LINK_G0)


def test_element_draws_prefix_stable(default_cfg):
    """Growing the surface extends every vector without redrawing the head."""
    small = dataclasses.replace(default_cfg, n_elements=10)
    a = synth_channels(small, 7)
    b = synth_channels(default_cfg, 7)
    assert np.array_equal(a.g0, b.g0[:10])
    assert np.array_equal(a.h_r, b.h_r[:10])
    assert np.array_equal(a.g_r, b.g_r[:, :10])
    # direct links do not depend on the surface size at all
    assert np.array_equal(a.g_d, b.g_d)
    assert np.array_equal(a.h_d, b.h_d)


def test_sensor_streams_prefix_stable(default_cfg):
    small = dataclasses.replace(default_cfg, n_sensors=3)
    a = synth_channels(small, 9)
    b = synth_channels(default_cfg, 9)
    assert np.array_equal(a.g_d, b.g_d[:3])
    assert np.array_equal(a.h_d, b.h_d[:3])
    assert np.array_equal(a.g_r, b.g_r[:3])


def test_second_moment_tracks_path_loss():
    """E|entry|^2 equals the link path loss for Rician and Gaussian links."""
    cfg = SystemConfig(n_elements=64, n_sensors=4)
    pl_g0 = path_loss(10.0, cfg.pathloss_exp, cfg.pathloss_ref_db)
    acc_g0 = 0.0
    acc_hd = 0.0
    trials = 400
    for seed in range(trials):
        ch = synth_channels(cfg, seed)
        acc_g0 += float(np.mean(np.abs(ch.g0) ** 2))
        acc_hd += float(np.mean(np.abs(ch.h_d) ** 2))
    d_s_ap = float(np.linalg.norm(ch.ap_pos - ch.sensor_pos[0]))
    pl_hd0 = path_loss(d_s_ap, cfg.pathloss_exp, cfg.pathloss_ref_db)
    # 64*400 and 4*400 samples: a few percent of Monte Carlo slack
    assert acc_g0 / trials == pytest.approx(pl_g0, rel=0.05)
    assert acc_hd / trials == pytest.approx(pl_hd0, rel=0.10)


def test_rician_los_share(default_cfg):
    """With K1 = 6 dB about 80 percent of the link power sits in the LOS part."""
    cfg = dataclasses.replace(default_cfg, n_elements=256)
    k1 = cfg.rician_k
    share = k1 / (k1 + 1.0)
    ch = synth_channels(cfg, 3)
    # the LOS component is the coherent part: |mean over elements of
    # g0 * conj(steering)|^2 estimates pl * k1/(k1+1)
    pl = path_loss(10.0, cfg.pathloss_exp, cfg.pathloss_ref_db)
    phi = math.acos((cfg.es_x - cfg.irs_x) / 10.0)
    coh = np.mean(ch.g0 * np.conj(los_steering(256, phi, cfg.element_spacing)))
    assert abs(coh) ** 2 / pl == pytest.approx(share, rel=0.15)


def test_steering_cos_switch(default_cfg):
    alt = dataclasses.replace(default_cfg, steering_uses_cos=True)
    a = synth_channels(default_cfg, 2)
    b = synth_channels(alt, 2)
    # same magnitudes (the switch only rotates the LOS phase ramp)
    assert not np.allclose(a.g0, b.g0)
    assert np.allclose(np.abs(a.g_d), np.abs(b.g_d))


def test_dump_channels_round_trip(tmp_path, linear_cfg, channels_for):
    ch = channels_for(linear_cfg, 0)
    out = tmp_path / "channels.csv"
    dump_channels(ch, out)
    rows = out.read_text().strip().splitlines()
    assert rows[0] == "link,element,re,im"
    # 2 element vectors + K reflect rows of N entries + 2K scalars
    n, k = ch.n_elements, ch.n_sensors
    assert len(rows) - 1 == 2 * n + k * n + 2 * k

    table = {}
    for line in rows[1:]:
        link, elem, re_s, im_s = line.split(",")
        table.setdefault(link, []).append(float(re_s) + 1j * float(im_s))
    assert np.array_equal(np.array(table["g0"]), ch.g0)
    assert np.array_equal(np.array(table["h_r"]), ch.h_r)
    for i in range(k):
        assert np.array_equal(np.array(table[f"g_r[{i}]"]), ch.g_r[i])
        assert table[f"g_d[{i}]"][0] == ch.g_d[i]
        assert table[f"h_d[{i}]"][0] == ch.h_d[i]
