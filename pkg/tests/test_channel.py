import numpy as np
import pytest

from beamspace.channel import (ChannelMatrix, PathSet, PlacementError,
                               ScenarioConfig, apply_power_control,
                               draw_scenario, dump_channel_csv,
                               load_channel_csv, steering_vector,
                               synth_ue_channel)
from beamspace.frontend import dft_unitary


def test_steering_boresight():
    assert np.allclose(steering_vector(0.0, 4), np.ones(4))


def test_steering_alternating():
    assert np.allclose(steering_vector(np.pi, 3), [1, -1, 1])


def test_steering_quarter_turn():
    assert np.allclose(steering_vector(np.pi / 2, 4), [1, 1j, -1, -1j])


def test_steering_norm_is_num_antennas():
    rng = np.random.default_rng(1)
    for _ in range(20):
        phi = rng.uniform(-np.pi, np.pi)
        B = int(rng.integers(1, 100))
        a = steering_vector(phi, B)
        assert np.allclose(np.abs(a), 1.0)
        assert abs(np.linalg.norm(a) ** 2 - B) < 1e-9


def test_single_boresight_path():
    p = PathSet(np.array([1.0 + 0j]), np.array([0.0]))
    assert np.allclose(synth_ue_channel(p, 5), np.ones(5))


def test_destructive_superposition():
    p = PathSet(np.array([1.0, -1.0]), np.array([0.0, 0.0]))
    assert np.allclose(synth_ue_channel(p, 6), 0.0)


def test_matches_per_path_accumulation_oracle():
    rng = np.random.default_rng(3)
    gains = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    freqs = rng.uniform(-np.pi, np.pi, 2)
    h = synth_ue_channel(PathSet(gains, freqs), 16)
    ref = sum(g * steering_vector(f, 16) for g, f in zip(gains, freqs))
    assert np.allclose(h, ref, atol=1e-12)


def test_single_ue_scenario():
    cfg = ScenarioConfig(num_antennas=16, num_ues=1)
    scen = draw_scenario(cfg, np.random.default_rng(0))
    assert scen.H.shape == (16, 1)


def test_same_seed_same_channel():
    cfg = ScenarioConfig()
    a = draw_scenario(cfg, np.random.default_rng(42))
    b = draw_scenario(cfg, np.random.default_rng(42))
    assert np.array_equal(a.H, b.H)
    assert np.array_equal(a.angles_deg, b.angles_deg)


def test_pairwise_separation():
    cfg = ScenarioConfig()
    for seed in range(5):
        scen = draw_scenario(cfg, np.random.default_rng(seed))
        az = scen.angles_deg
        gaps = np.abs(az[:, None] - az[None, :])
        np.fill_diagonal(gaps, np.inf)
        assert gaps.min() >= cfg.min_sep_deg
        assert np.all(np.abs(az) <= cfg.sector_deg / 2)


def test_power_control_window():
    cfg = ScenarioConfig(los=False)
    B = cfg.num_antennas
    for seed in range(5):
        scen = draw_scenario(cfg, np.random.default_rng(seed))
        col_db = 10 * np.log10(np.linalg.norm(scen.H, axis=0) ** 2 / B)
        assert np.all(np.abs(col_db) <= cfg.power_ctrl_db + 1e-9)


def test_power_control_zero_offset():
    H = 2.0 * np.ones((4, 1), dtype=complex)  # power 16 = 4B

    class _ZeroRng:
        def uniform(self, lo, hi):
            return 0.0

    out = apply_power_control(H, 3.0, 4.0, _ZeroRng())
    assert abs(np.linalg.norm(out[:, 0]) ** 2 - 4.0) < 1e-12


def test_power_control_plus3_offset():
    H = np.ones((4, 1), dtype=complex)

    class _TopRng:
        def uniform(self, lo, hi):
            return hi

    out = apply_power_control(H, 3.0, 4.0, _TopRng())
    assert abs(np.linalg.norm(out[:, 0]) ** 2 - 4.0 * 10 ** 0.3) < 1e-9


def test_power_control_rejects_zero_column():
    with pytest.raises(ValueError):
        apply_power_control(np.zeros((4, 1)), 3.0, 4.0, np.random.default_rng(0))


def test_dft_grid_path_is_one_beam():
    B = 32
    k = 5
    alpha = 0.7 - 0.2j
    h = alpha * steering_vector(2 * np.pi * k / B, B)
    hb = dft_unitary(h)
    mags = np.abs(hb)
    # the DFT here uses exp(-j...), so the energy lands on bin B-k
    assert np.count_nonzero(mags > 1e-9) == 1
    assert abs(mags.max() - np.sqrt(B) * abs(alpha)) < 1e-9


def test_infeasible_geometry_rejected_at_config():
    with pytest.raises(ValueError):
        ScenarioConfig(num_antennas=64, num_ues=8, sector_deg=6.0, min_sep_deg=1.0)


def test_placement_gives_up_after_bounded_tries():
    # 8 UEs in an 8 degree sector with 1 degree gaps barely fits; a single
    # rejection-sampling try essentially never lands it.
    cfg = ScenarioConfig(num_antennas=64, num_ues=8, sector_deg=8.0,
                         min_sep_deg=1.0, max_placement_tries=1)
    with pytest.raises(PlacementError):
        draw_scenario(cfg, np.random.default_rng(0))


def test_channel_csv_roundtrip(tmp_path):
    scen = draw_scenario(ScenarioConfig(num_antennas=8, num_ues=3),
                         np.random.default_rng(9))
    path = tmp_path / "chan.csv"
    dump_channel_csv(scen.H, path)
    loaded = load_channel_csv(path)
    assert isinstance(loaded, ChannelMatrix)
    assert np.array_equal(loaded.H, scen.H)
