"""Channel-law, fading, and power-accounting tests."""

import numpy as np
import pytest

from wideband_simo import (
    FrameSignal,
    SystemDims,
    apply_channel,
    average_power,
    sample_fading,
    sample_iduv,
    substream,
)
from wideband_simo.em import build_constellation


def test_sample_fading_deterministic():
    dims = SystemDims(n_antennas=1)
    a = sample_fading(dims, substream(99, 0)).gains
    b = sample_fading(dims, substream(99, 0)).gains
    assert a == b
    c = sample_fading(dims, substream(99, 1)).gains
    assert a != c


def test_fading_unit_variance():
    dims = SystemDims(n_antennas=10_000)
    h = sample_fading(dims, substream(1, 0)).gains
    mean_sq = np.mean(np.abs(h) ** 2)
    assert 0.97 <= mean_sq <= 1.03


def test_fading_entries_distinct():
    dims = SystemDims(n_antennas=2, n_subchannels_available=2, n_active=2)
    h = sample_fading(dims, substream(2, 0)).gains.ravel()
    assert len(set(h.tolist())) == 4


def test_fading_independence_proxy():
    # correlation between two fixed entries across many blocks
    dims = SystemDims(n_antennas=2, n_subchannels_available=2, n_active=2)
    draws = np.array(
        [sample_fading(dims, substream(3, i)).gains for i in range(4000)]
    )
    x = draws[:, 0, 0].real
    y = draws[:, 1, 1].real
    corr = np.corrcoef(x, y)[0, 1]
    assert abs(corr) < 3.0 / np.sqrt(len(x))


def test_apply_channel_noise_only():
    dims = SystemDims(n_antennas=50, n_subchannels_available=4, n_active=4, coherence_len=8)
    frame = FrameSignal(np.zeros((4, 8), dtype=complex))
    y = apply_channel(frame, sample_fading(dims, substream(4, 0)), substream(4, 1))
    assert np.mean(np.abs(y) ** 2) == pytest.approx(1.0, abs=0.05)


def test_apply_channel_noiseless_identity():
    from wideband_simo.channel import FadingBlock

    frame = FrameSignal(np.ones((2, 3), dtype=complex))
    block = FadingBlock(np.full((4, 2), 0.5 + 0.5j))
    y = apply_channel(frame, block, substream(5, 0), noiseless=True)
    assert np.allclose(y, 0.5 + 0.5j)


def test_apply_channel_scalar_case():
    from wideband_simo.channel import FadingBlock

    frame = FrameSignal(np.array([[2.0 + 0j]]))
    block = FadingBlock(np.array([[1.0 + 0j]]))
    y = apply_channel(frame, block, substream(5, 1), noiseless=True)
    assert y.shape == (1, 1, 1)
    assert y[0, 0, 0] == 2.0


def test_apply_channel_shape_mismatch():
    from wideband_simo.channel import FadingBlock

    frame = FrameSignal(np.ones((3, 2), dtype=complex))
    block = FadingBlock(np.ones((4, 2), dtype=complex))
    with pytest.raises(ValueError, match="shape mismatch"):
        apply_channel(frame, block, substream(5, 2))


def test_average_power_zero_frame():
    dims = SystemDims(n_antennas=1, n_subchannels_available=3, n_active=1, coherence_len=5)
    assert average_power(FrameSignal(np.zeros((1, 5), dtype=complex)), dims) == 0.0


def test_average_power_direct():
    dims = SystemDims(n_antennas=1, coherence_len=2)
    frame = FrameSignal(np.array([[1.0 + 0j, 1.0 + 0j]]))
    assert average_power(frame, dims) == pytest.approx(1.0)


def test_average_power_em_ensemble():
    # single active subchannel, single-symbol blocks: the grid average equals
    # the constellation level, whose ensemble mean is P/M = 1
    dims = SystemDims(n_antennas=1, coherence_len=1)
    const = build_constellation(1, 4)
    rng = substream(7, 0)
    idx = rng.integers(0, 4, size=10_000)
    powers = [
        average_power(FrameSignal(np.sqrt(const.levels[k]) * np.ones((1, 1), dtype=complex)), dims)
        for k in idx
    ]
    assert 0.98 <= np.mean(powers) <= 1.02


def test_em_total_block_energy_is_unit_power():
    # with M active subchannels the expected total block energy is exactly P = 1
    m = 8
    const = build_constellation(m, 4)
    assert np.mean(const.levels) * m == pytest.approx(1.0)


def test_iduv_phase_only_for_single_symbol():
    u = sample_iduv(1, substream(8, 0))
    assert abs(u[0]) == pytest.approx(1.0, abs=1e-12)


def test_iduv_unit_norm_exact():
    for i in range(50):
        u = sample_iduv(4, substream(8, i))
        assert np.sum(np.abs(u) ** 2) == pytest.approx(1.0, abs=1e-12)


def test_iduv_component_symmetry():
    rng = substream(9, 0)
    vals = [np.abs(sample_iduv(2, rng)[0]) ** 2 for _ in range(10_000)]
    assert 0.48 <= np.mean(vals) <= 0.52


def test_dims_validation():
    with pytest.raises(ValueError):
        SystemDims(n_antennas=0)
    with pytest.raises(ValueError):
        SystemDims(n_antennas=1, n_subchannels_available=1, n_active=2)
    with pytest.raises(ValueError):
        SystemDims(n_antennas=1, avg_power=0.0)
    with pytest.raises(ValueError, match="lie in"):
        SystemDims(n_antennas=4, epsilon=0.3, t=0.6).require_em_family()
