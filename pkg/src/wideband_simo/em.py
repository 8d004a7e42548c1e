"""Energy modulation: constellations, framing, and the energy detector.

Information is carried only by the transmit energy of each active
subchannel during a coherence block. The receiver computes the average
energy statistic

    V = (1 / (N * L_c)) * sum_r | sum_l Y[r, l] |**2

which concentrates at (transmitted energy + 1); decoding slices V against
boundaries shifted by the unit noise power.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "EnergyConstellation",
    "choose_num_levels",
    "build_constellation",
    "modulate",
    "energy_statistic",
    "decode_symbol",
    "decode_symbols",
    "gray_encode",
    "gray_decode",
    "transmitted_rate",
]


@dataclass(frozen=True)
class EnergyConstellation:
    """Equally spaced energy levels {0, 2d, ..., 2(K-1)d} with 2(K-1)d = 2/M.

    The level mean is exactly 1/M, so M active subchannels carry unit
    average power in total. Decision boundaries sit midway between the
    noise-shifted level centers: boundaries[k] = (2k+1)d + 1.
    """

    n_active: int
    half_distance: float
    levels: np.ndarray
    boundaries: np.ndarray
    bits_per_symbol: int = field(init=False)

    def __post_init__(self) -> None:
        k = len(self.levels)
        if k < 2 or (k & (k - 1)) != 0:
            raise ValueError("level count must be a power of two, >= 2")
        object.__setattr__(self, "bits_per_symbol", k.bit_length() - 1)

    @property
    def n_levels(self) -> int:
        return len(self.levels)


def choose_num_levels(n_antennas: int, epsilon: float, t: float) -> int:
    """Constellation size for the scaling family: K grows like N**(t - epsilon).

    K is the power of two nearest to 1 + N**(t - epsilon), never below 2.
    Requires epsilon < t < 1/2 (below, spacing cannot keep up with the
    statistic's spread; above, the rate target is missed).
    """
    if not (epsilon < t < 0.5):
        raise ValueError(
            f"t must lie in (epsilon, 0.5); got t={t}, epsilon={epsilon}"
        )
    x = 1.0 + float(n_antennas) ** (t - epsilon)
    # round-half-up keeps the choice deterministic across platforms
    exponent = max(1, int(math.floor(math.log2(x) + 0.5)))
    return 2**exponent


def build_constellation(n_active: int, n_levels: int) -> EnergyConstellation:
    """Build the K-level energy constellation for M active subchannels."""
    if n_active < 1:
        raise ValueError("n_active must be >= 1")
    if n_levels < 2:
        raise ValueError("n_levels must be >= 2")
    d = 1.0 / (n_active * (n_levels - 1))
    levels = 2.0 * d * np.arange(n_levels)
    boundaries = (2.0 * np.arange(n_levels - 1) + 1.0) * d + 1.0
    return EnergyConstellation(
        n_active=n_active, half_distance=d, levels=levels, boundaries=boundaries
    )


def modulate(symbol_index: int, constellation: EnergyConstellation, coherence_len: int) -> np.ndarray:
    """Length-L_c sample vector for one symbol: constant sqrt(level / L_c).

    The vector energy equals the constellation level exactly.
    """
    if not 0 <= symbol_index < constellation.n_levels:
        raise ValueError(f"symbol index {symbol_index} out of range")
    a = constellation.levels[symbol_index]
    return np.full(coherence_len, np.sqrt(a / coherence_len), dtype=complex)


def energy_statistic(y_sub: np.ndarray) -> float:
    """Average energy statistic of one subchannel's (N, L_c) received block.

    The coherent sum over symbols precedes the squared modulus, so the
    statistic rewards the constant-envelope EM waveform.
    """
    n, l_c = y_sub.shape
    inner = np.sum(y_sub, axis=1)
    return float(np.sum(np.abs(inner) ** 2) / (n * l_c))


def decode_symbol(v: float, constellation: EnergyConstellation) -> int:
    """Map a statistic value to the symbol whose decoding region contains it."""
    if not np.isfinite(v):
        raise ValueError("statistic must be finite")
    return int(np.searchsorted(constellation.boundaries, v, side="left"))


def decode_symbols(v: np.ndarray, constellation: EnergyConstellation) -> np.ndarray:
    """Vectorized :func:`decode_symbol`."""
    if not np.all(np.isfinite(v)):
        raise ValueError("statistics must be finite")
    return np.searchsorted(constellation.boundaries, v, side="left")


def gray_encode(bits: np.ndarray, bits_per_symbol: int) -> np.ndarray:
    """Pack a bit vector into symbol indices under reflected-Gray labeling.

    Level index k carries the Gray codeword of k, so the bit group with
    value b transmits level index gray_inverse(b). Energy-detector errors
    to a neighboring region then cost exactly one bit.
    """
    bits = np.asarray(bits, dtype=np.int64)
    if bits.size % bits_per_symbol != 0:
        raise ValueError(
            f"bit count {bits.size} is not a multiple of {bits_per_symbol}"
        )
    groups = bits.reshape(-1, bits_per_symbol)
    weights = 1 << np.arange(bits_per_symbol - 1, -1, -1)
    binary = groups @ weights
    shift = 1
    while shift < bits_per_symbol:
        binary ^= binary >> shift
        shift <<= 1
    return binary


def gray_decode(indices: np.ndarray, bits_per_symbol: int) -> np.ndarray:
    """Inverse of :func:`gray_encode`: symbol indices back to a bit vector."""
    idx = np.asarray(indices, dtype=np.int64)
    code = idx ^ (idx >> 1)
    out = np.zeros((code.size, bits_per_symbol), dtype=np.int64)
    for b in range(bits_per_symbol):
        out[:, b] = (code >> (bits_per_symbol - 1 - b)) & 1
    return out.reshape(-1)


def transmitted_rate(n_active: int, n_levels: int) -> float:
    """Bits per coherence block: M * log2(K)."""
    if n_levels < 2:
        raise ValueError("n_levels must be >= 2")
    return n_active * math.log2(n_levels)
