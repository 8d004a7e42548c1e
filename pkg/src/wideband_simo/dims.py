"""Scenario parameters shared by the channel, EM, and rate modules."""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["SystemDims"]


@dataclass(frozen=True)
class SystemDims:
    """All scenario parameters for one simulated link.

    Powers are dimensionless SNR-like quantities: the per-antenna noise is
    normalized to unit variance, and physical rates are recovered through
    the ``subchannel_bw`` multiplier.

    Attributes:
        n_antennas: receive antennas N.
        n_subchannels_available: available subchannels B.
        n_active: active subchannels M (M <= B).
        coherence_len: symbols per fading block L_c.
        subchannel_bw: subchannel bandwidth in Hz.
        avg_power: average transmit power P (noise-normalized).
        epsilon: bandwidth-scaling exponent (B grows like N**epsilon).
        t: constellation-spacing exponent (symbol half-distance decays
            like N**-t); must satisfy epsilon < t < 1/2 when the EM
            constellation family is in use.
    """

    n_antennas: int
    n_subchannels_available: int = 1
    n_active: int = 1
    coherence_len: int = 1
    subchannel_bw: float = 1.0
    avg_power: float = 1.0
    epsilon: float = 0.0
    t: float = 0.45

    def __post_init__(self) -> None:
        if self.n_antennas < 1:
            raise ValueError("n_antennas must be >= 1")
        if self.n_active < 1:
            raise ValueError("n_active must be >= 1")
        if self.n_subchannels_available < self.n_active:
            raise ValueError("n_subchannels_available must be >= n_active")
        if self.coherence_len < 1:
            raise ValueError("coherence_len must be >= 1")
        if not self.avg_power > 0:
            raise ValueError("avg_power must be > 0")
        if not self.subchannel_bw > 0:
            raise ValueError("subchannel_bw must be > 0")
        if self.epsilon < 0:
            raise ValueError("epsilon must be >= 0")

    def require_em_family(self) -> None:
        """Validate the spacing exponent for the EM constellation family."""
        if not (self.epsilon < self.t < 0.5):
            raise ValueError(
                f"t must lie in (epsilon, 0.5); got t={self.t}, epsilon={self.epsilon}"
            )
