"""Monte Carlo harnesses: BER sweeps, rate tables, thresholds, exponent probe.

Every harness is a pure function of (configuration, master seed): work is
partitioned into fixed-size chunks, each chunk owns a substream derived
from its index, and results merge by commutative reduction. Worker count
changes speed only, never output.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from wideband_simo.channel import FrameSignal, apply_channel, sample_fading
from wideband_simo.dims import SystemDims
from wideband_simo.em import (
    build_constellation,
    choose_num_levels,
    decode_symbols,
    gray_decode,
    gray_encode,
    transmitted_rate,
)
from wideband_simo.rates import (
    PilotConfig,
    RateCurvePoint,
    _rates_on_grid,
    mrc_statistics,
    threshold_bandwidth,
    threshold_preset,
)
from wideband_simo.seeding import substream

__all__ = [
    "BerEstimate",
    "ExponentProbeResult",
    "run_ber",
    "run_rate_sweep",
    "run_threshold_experiment",
    "concentration_probe",
    "em_config_for",
]

# stream-id tags keep substreams of different experiments disjoint
_TAG_BER = 1
_TAG_THRESH = 2
_TAG_PROBE = 3

_BLOCK_CHUNK = 64


@dataclass(frozen=True)
class BerEstimate:
    """BER point estimate with a 95% normal-approximation half-width."""

    n_bits: int
    n_bit_errors: int
    n_symbols: int
    n_symbol_errors: int
    n_blocks: int
    n_block_errors: int
    dims: SystemDims
    n_levels: int

    @property
    def ber(self) -> float:
        return self.n_bit_errors / self.n_bits

    @property
    def ci_halfwidth(self) -> float:
        p = self.ber
        return 1.96 * math.sqrt(p * (1.0 - p) / self.n_bits)


@dataclass(frozen=True)
class ExponentProbeResult:
    """Pairwise error probabilities across an antenna grid and their decay fit."""

    t: float
    base_energy: float
    n_values: np.ndarray
    error_probs: np.ndarray
    n_trials: int
    excluded: np.ndarray
    fitted_slope: float


def em_config_for(n_antennas: int, epsilon: float, t: float) -> tuple[int, int]:
    """(M, K) for one grid point: M = ceil(N**epsilon), K per the scaling family.

    Exponents epsilon >= 1/2 fall outside the vanishing-error family; they
    run as negative controls with the most favorable binary constellation.
    """
    m = int(math.ceil(n_antennas**epsilon))
    if epsilon >= 0.5:
        return m, 2
    return m, choose_num_levels(n_antennas, epsilon, t)


def _ber_chunk(
    chunk_index: int,
    n_blocks: int,
    dims: SystemDims,
    n_levels: int,
    master_seed: int,
) -> tuple[int, int, int]:
    """Simulate a chunk of coherence blocks; returns error counts."""
    const = build_constellation(dims.n_active, n_levels)
    bps = const.bits_per_symbol
    m = dims.n_active
    bit_errors = 0
    symbol_errors = 0
    block_errors = 0
    for b in range(n_blocks):
        block_index = chunk_index * _BLOCK_CHUNK + b
        rng = substream(master_seed, _TAG_BER, block_index)
        bits = rng.integers(0, 2, size=m * bps)
        sent = gray_encode(bits, bps)
        amp = np.sqrt(const.levels[sent] / dims.coherence_len)
        frame = FrameSignal(np.repeat(amp[:, None], dims.coherence_len, axis=1).astype(complex))
        fading = sample_fading(dims, rng, block_index=block_index)
        y = apply_channel(frame, fading, rng)
        inner = y.sum(axis=2)
        v = np.sum(np.abs(inner) ** 2, axis=0) / (dims.n_antennas * dims.coherence_len)
        decoded = decode_symbols(v, const)
        bits_hat = gray_decode(decoded, bps)
        bit_errors += int(np.sum(bits != bits_hat))
        sym_err = int(np.sum(decoded != sent))
        symbol_errors += sym_err
        block_errors += int(sym_err > 0)
    return bit_errors, symbol_errors, block_errors


def run_ber(
    n_antennas: int,
    epsilon: float,
    t: float,
    coherence_len: int,
    n_bits: int,
    master_seed: int,
    threads: int = 1,
) -> BerEstimate:
    """Full modulate -> channel -> energy-statistic -> decode BER run.

    Simulates ceil(n_bits / (M * log2 K)) coherence blocks with M =
    ceil(N**epsilon) active subchannels carrying independent symbol
    streams; bit errors are counted through the Gray mapping.
    """
    m, k = em_config_for(n_antennas, epsilon, t)
    dims = SystemDims(
        n_antennas=n_antennas,
        n_subchannels_available=m,
        n_active=m,
        coherence_len=coherence_len,
        epsilon=epsilon,
        t=t,
    )
    bps = int(math.log2(k))
    bits_per_block = m * bps
    n_blocks = math.ceil(n_bits / bits_per_block)
    n_chunks = math.ceil(n_blocks / _BLOCK_CHUNK)

    def work(ci: int) -> tuple[int, int, int]:
        blocks = min(_BLOCK_CHUNK, n_blocks - ci * _BLOCK_CHUNK)
        return _ber_chunk(ci, blocks, dims, k, master_seed)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, range(n_chunks)))
    else:
        parts = [work(ci) for ci in range(n_chunks)]
    bit_errors = sum(p[0] for p in parts)
    symbol_errors = sum(p[1] for p in parts)
    block_errors = sum(p[2] for p in parts)
    return BerEstimate(
        n_bits=n_blocks * bits_per_block,
        n_bit_errors=bit_errors,
        n_symbols=n_blocks * m,
        n_symbol_errors=symbol_errors,
        n_blocks=n_blocks,
        n_block_errors=block_errors,
        dims=dims,
        n_levels=k,
    )


def run_rate_sweep(
    n_list: list[int], epsilon_list: list[float], t: float
) -> list[dict]:
    """Transmitted EM rate M * log2(K) in bits per coherence block per grid point."""
    rows = []
    for eps in epsilon_list:
        for n in n_list:
            t_eff = effective_spacing_exponent(eps, t)
            m, k = em_config_for(n, eps, t_eff)
            rows.append(
                {
                    "N": n,
                    "epsilon": eps,
                    "t": t_eff,
                    "M": m,
                    "K": k,
                    "rate_bits_per_block": transmitted_rate(m, k),
                }
            )
    return rows


def effective_spacing_exponent(epsilon: float, t: float) -> float:
    """Clamp t into the valid family (epsilon, 1/2) where one exists.

    For epsilon >= 1/2 no valid t exists (negative-control regime); the
    requested t is passed through unchanged and ignored downstream.
    """
    if epsilon >= 0.5 or epsilon < t < 0.5:
        return t
    return (epsilon + 0.5) / 2.0


def run_threshold_experiment(
    preset: dict | None = None,
    trials: int | None = None,
    master_seed: int = 0,
) -> tuple[dict[int, list[RateCurvePoint]], dict[int, float]]:
    """Genie and pilot rate curves over a bandwidth grid, plus thresholds.

    Genie and pilot rates at each grid point share the same MRC draws, so
    the pilot rate never exceeds the genie rate, pointwise and exactly.
    """
    cfg = dict(threshold_preset())
    if preset:
        cfg.update(preset)
    if trials is not None:
        cfg["trials"] = trials
    pilot: PilotConfig = cfg["pilot"]
    grid = np.asarray(cfg["bandwidth_grid"], dtype=float)
    curves: dict[int, list[RateCurvePoint]] = {}
    thresholds: dict[int, float] = {}
    for i, n in enumerate(cfg["n_list"]):
        rng = substream(master_seed, _TAG_THRESH, i)
        s = mrc_statistics(n, cfg["trials"], rng)
        genie, pilot_rate, mmse = _rates_on_grid(
            grid, s, cfg["power"], cfg["subchannel_bw"], pilot
        )
        curve = [
            RateCurvePoint(
                n_antennas=n,
                bandwidth_hz=float(b * cfg["subchannel_bw"]),
                genie_rate=float(g),
                pilot_rate=float(p),
                mmse=float(mm),
                n_trials=cfg["trials"],
            )
            for b, g, p, mm in zip(grid, genie, pilot_rate, mmse)
        ]
        curves[n] = curve
        thresholds[n] = threshold_bandwidth(curve)
    return curves, thresholds


def _statistic_samples(
    n_antennas: int, energy: float, trials: int, rng: np.random.Generator
) -> np.ndarray:
    """Draw the energy statistic for a constant-envelope block of given energy.

    The per-antenna coherent symbol sum is CN(0, L_c * (energy + 1)), so
    the statistic equals (energy + 1) times an average of N unit
    exponentials; sampling that Gamma(N, 1/N) form is exact for every
    coherence length and avoids materializing the symbol grid.
    """
    return (energy + 1.0) * rng.gamma(shape=n_antennas, scale=1.0 / n_antennas, size=trials)


def concentration_probe(
    n_list: list[int],
    t: float,
    base_energy: float,
    trials: int,
    master_seed: int,
) -> ExponentProbeResult:
    """Pairwise misclassification of energies a and a + 2d with d = N**-t.

    Uses the midpoint threshold a + d + 1 on the energy statistic and fits
    the decay slope of log(-log Pe) against log N. Grid points whose
    estimated Pe hits exactly 0 or 1 are flagged and excluded from the
    fit (insufficient trials for the tail).
    """
    if t <= 0:
        raise ValueError("t must be > 0")
    n_arr = np.asarray(n_list, dtype=int)
    probs = np.empty(len(n_arr))
    for i, n in enumerate(n_arr):
        d = float(n) ** (-t)
        thr = base_energy + d + 1.0
        rng = substream(master_seed, _TAG_PROBE, i)
        v_low = _statistic_samples(n, base_energy, trials, rng)
        v_high = _statistic_samples(n, base_energy + 2.0 * d, trials, rng)
        errs = int(np.sum(v_low > thr)) + int(np.sum(v_high <= thr))
        probs[i] = errs / (2.0 * trials)
    excluded = (probs <= 0.0) | (probs >= 1.0)
    usable = ~excluded
    if usable.sum() < 2:
        raise ValueError("not enough measurable grid points to fit a slope")
    x = np.log(n_arr[usable].astype(float))
    y = np.log(-np.log(probs[usable]))
    slope = float(np.polyfit(x, y, 1)[0])
    return ExponentProbeResult(
        t=t,
        base_energy=base_energy,
        n_values=n_arr,
        error_probs=probs,
        n_trials=trials,
        excluded=excluded,
        fitted_slope=slope,
    )
