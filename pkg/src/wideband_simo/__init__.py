"""Wideband block-Rayleigh SIMO link simulator and rate calculator.

Implements a seeded Monte Carlo pipeline for a single-antenna transmitter
and an N-antenna receiver over B frequency-flat subchannels:

* block-fading channel sampling and the per-subchannel channel law,
* energy-modulation (EM) constellations with an energy-detection receiver,
* genie-aided coherent ergodic rates and pilot-assisted effective-SNR rates,
* experiment harnesses for BER sweeps, rate sweeps, threshold-bandwidth
  curves, and an error-exponent concentration probe.

All randomness flows through explicit, hierarchically seeded streams so
that every result is a pure function of (configuration, master seed).
"""

from wideband_simo.dims import SystemDims
from wideband_simo.seeding import substream
from wideband_simo.channel import (
    FadingBlock,
    FrameSignal,
    apply_channel,
    average_power,
    sample_fading,
    sample_iduv,
)
from wideband_simo.em import (
    EnergyConstellation,
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
from wideband_simo.rates import (
    PilotConfig,
    RateCurvePoint,
    coherent_scaling_fit,
    genie_rate_mc,
    pilot_mmse,
    pilot_rate_mc,
    threshold_bandwidth,
    threshold_preset,
)
from wideband_simo.experiments import (
    BerEstimate,
    ExponentProbeResult,
    concentration_probe,
    run_ber,
    run_rate_sweep,
    run_threshold_experiment,
)

__all__ = [
    "SystemDims",
    "substream",
    "FadingBlock",
    "FrameSignal",
    "sample_fading",
    "apply_channel",
    "average_power",
    "sample_iduv",
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
    "PilotConfig",
    "RateCurvePoint",
    "genie_rate_mc",
    "pilot_mmse",
    "pilot_rate_mc",
    "threshold_bandwidth",
    "threshold_preset",
    "coherent_scaling_fit",
    "BerEstimate",
    "ExponentProbeResult",
    "run_ber",
    "run_rate_sweep",
    "run_threshold_experiment",
    "concentration_probe",
]
