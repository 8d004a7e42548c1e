"""Block-Rayleigh fading, AWGN, and the per-subchannel channel law.

The received sample at antenna r, subchannel m, symbol l is

    Y[r, m, l] = H[r, m] * X[m, l] + Z[r, m, l]

with H and Z unit-variance circularly-symmetric complex Gaussians; H is
constant over the symbols of one coherence block and i.i.d. across
antennas, subchannels, and blocks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from wideband_simo.dims import SystemDims

__all__ = [
    "FadingBlock",
    "FrameSignal",
    "sample_fading",
    "apply_channel",
    "average_power",
    "sample_iduv",
    "complex_gaussian",
]


@dataclass(frozen=True)
class FadingBlock:
    """Channel gains of one coherence block: an (N, M) complex matrix."""

    gains: np.ndarray
    block_index: int = 0

    @property
    def n_antennas(self) -> int:
        return self.gains.shape[0]

    @property
    def n_active(self) -> int:
        return self.gains.shape[1]


@dataclass(frozen=True)
class FrameSignal:
    """Transmit samples of one coherence block: an (M, L_c) complex matrix."""

    samples: np.ndarray

    @property
    def energies(self) -> np.ndarray:
        """Per-subchannel energies A_m = sum_l |X[m, l]|**2."""
        return np.sum(np.abs(self.samples) ** 2, axis=1)


def complex_gaussian(rng: np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
    """Unit-variance CN(0, 1) samples: independent real/imag parts of variance 1/2."""
    re = rng.standard_normal(shape)
    im = rng.standard_normal(shape)
    return (re + 1j * im) / np.sqrt(2.0)


def sample_fading(dims: SystemDims, rng: np.random.Generator, block_index: int = 0) -> FadingBlock:
    """Draw one coherence block of i.i.d. CN(0, 1) gains, shape (N, M)."""
    gains = complex_gaussian(rng, (dims.n_antennas, dims.n_active))
    return FadingBlock(gains=gains, block_index=block_index)


def apply_channel(
    frame: FrameSignal,
    block: FadingBlock,
    rng: np.random.Generator,
    *,
    noiseless: bool = False,
) -> np.ndarray:
    """Pass a frame through the block-fading channel.

    Returns the (N, M, L_c) received tensor. ``noiseless`` suppresses the
    AWGN term for deterministic unit tests.
    """
    x = frame.samples
    h = block.gains
    if x.ndim != 2 or h.ndim != 2 or h.shape[1] != x.shape[0]:
        raise ValueError(
            f"shape mismatch: gains {h.shape} vs samples {x.shape}"
        )
    y = h[:, :, None] * x[None, :, :]
    if not noiseless:
        y = y + complex_gaussian(rng, y.shape)
    return y


def average_power(frame: FrameSignal, dims: SystemDims) -> float:
    """Grid-averaged transmit power (1 / (B * L_c)) * sum |X[m, l]|**2.

    The divisor uses the available subchannel count B, not the active
    count M, so inactive subchannels count as zero-power entries.
    """
    total = float(np.sum(np.abs(frame.samples) ** 2))
    return total / (dims.n_subchannels_available * dims.coherence_len)


def sample_iduv(coherence_len: int, rng: np.random.Generator) -> np.ndarray:
    """Isotropically distributed unit vector of length L_c.

    A normalized complex Gaussian vector; its squared norm is exactly 1.
    For L_c = 1 this is a uniform random phase.
    """
    if coherence_len < 1:
        raise ValueError("coherence_len must be >= 1")
    v = complex_gaussian(rng, (coherence_len,))
    return v / np.linalg.norm(v)
