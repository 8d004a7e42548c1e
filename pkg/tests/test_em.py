"""Energy-modulation constellation, coding, and detector tests."""

import numpy as np
import pytest

from wideband_simo import substream
from wideband_simo.em import (
    build_constellation,
    choose_num_levels,
    decode_symbol,
    decode_symbols,
    energy_statistic,
    gray_decode,
    gray_encode,
    modulate,
    transmitted_rate,
)


def test_constellation_levels_k2():
    c = build_constellation(1, 2)
    assert c.half_distance == pytest.approx(1.0)
    assert np.allclose(c.levels, [0.0, 2.0])
    assert np.allclose(c.boundaries, [2.0])


def test_constellation_levels_k4_m2():
    c = build_constellation(2, 4)
    d = 1.0 / 6.0
    assert c.half_distance == pytest.approx(d)
    assert np.allclose(c.levels, [0.0, 2 * d, 4 * d, 6 * d])
    assert np.allclose(c.boundaries, [d + 1, 3 * d + 1, 5 * d + 1])


def test_constellation_top_level_is_two_over_m():
    for m in (1, 3, 10):
        for k in (2, 4, 8, 16):
            c = build_constellation(m, k)
            assert c.levels[-1] == pytest.approx(2.0 / m)


def test_constellation_mean_level_is_one_over_m():
    for m in (1, 2, 7):
        c = build_constellation(m, 8)
        assert np.mean(c.levels) == pytest.approx(1.0 / m)


def test_constellation_uniform_spacing():
    c = build_constellation(3, 8)
    diffs = np.diff(c.levels)
    assert np.allclose(diffs, 2 * c.half_distance)


def test_constellation_rejects_non_power_of_two():
    with pytest.raises(ValueError):
        build_constellation(1, 3)


def test_choose_num_levels_examples():
    assert choose_num_levels(10_000, 0.25, 0.45) == 8
    assert choose_num_levels(256, 0.40, 0.45) == 2


def test_choose_num_levels_monotone_in_n():
    prev = 0
    for n in (16, 256, 4096, 65536, 2**20):
        k = choose_num_levels(n, 0.0, 0.45)
        assert k >= max(prev, 2)
        prev = k


def test_choose_num_levels_invalid_exponents():
    with pytest.raises(ValueError, match="lie in"):
        choose_num_levels(64, 0.45, 0.45)
    with pytest.raises(ValueError, match="lie in"):
        choose_num_levels(64, 0.2, 0.5)


def test_modulate_energy_exact():
    c = build_constellation(1, 4)
    for k in range(4):
        for l_c in (1, 7, 200):
            x = modulate(k, c, l_c)
            assert np.sum(np.abs(x) ** 2) == pytest.approx(c.levels[k], abs=1e-12)


def test_modulate_out_of_range():
    c = build_constellation(1, 2)
    with pytest.raises(ValueError):
        modulate(2, c, 10)


def test_energy_statistic_noiseless_constant():
    # pure constant-gain, noiseless reception: V = |h|^2 * A exactly
    l_c = 16
    a = 0.75
    y = np.full((8, l_c), np.sqrt(a / l_c), dtype=complex)
    assert energy_statistic(y) == pytest.approx(a, abs=1e-12)


def test_energy_statistic_concentrates():
    # V for energy a concentrates at a + 1 with spread ~ 1/sqrt(N)
    rng = substream(11, 0)
    n, trials = 4096, 2000
    a = 0.5
    v = (a + 1.0) * rng.gamma(n, 1.0 / n, trials)
    assert np.mean(v) == pytest.approx(a + 1.0, rel=0.01)
    assert np.std(v) == pytest.approx((a + 1.0) / np.sqrt(n), rel=0.1)


def test_decode_symbol_centers():
    c = build_constellation(1, 8)
    for k in range(8):
        assert decode_symbol(c.levels[k] + 1.0, c) == k


def test_decode_symbol_boundary_side():
    c = build_constellation(1, 4)
    # a value exactly on a boundary belongs to the lower region
    assert decode_symbol(float(c.boundaries[0]), c) == 0
    assert decode_symbol(float(c.boundaries[0]) + 1e-9, c) == 1


def test_decode_symbols_matches_scalar():
    c = build_constellation(2, 8)
    rng = substream(12, 0)
    v = rng.uniform(0.5, 2.5, size=200)
    vec = decode_symbols(v, c)
    assert all(int(vec[i]) == decode_symbol(float(v[i]), c) for i in range(len(v)))


def test_decode_rejects_nan():
    c = build_constellation(1, 2)
    with pytest.raises(ValueError):
        decode_symbol(float("nan"), c)


def test_gray_roundtrip():
    for bps in (1, 2, 3, 4):
        rng = substream(13, bps)
        bits = rng.integers(0, 2, size=60 * bps)
        assert np.array_equal(gray_decode(gray_encode(bits, bps), bps), bits)


def test_gray_adjacent_differ_by_one_bit():
    bps = 4
    idx = np.arange(16)
    bits = gray_decode(idx, bps).reshape(16, bps)
    for k in range(15):
        assert np.sum(bits[k] != bits[k + 1]) == 1


def test_gray_encode_known_sequence():
    # indices for bit groups 00,01,10,11 under the reflected code
    bits = np.array([0, 0, 0, 1, 1, 0, 1, 1])
    assert gray_encode(bits, 2).tolist() == [0, 1, 3, 2]


def test_gray_encode_bad_length():
    with pytest.raises(ValueError):
        gray_encode(np.array([0, 1, 0]), 2)


def test_transmitted_rate():
    assert transmitted_rate(1, 2) == pytest.approx(1.0)
    assert transmitted_rate(10, 8) == pytest.approx(30.0)
    with pytest.raises(ValueError):
        transmitted_rate(1, 1)
