"""Command-line entry point: parse config, run experiments, write CSV.

Subcommands: ber-sweep, rate-sweep, threshold, probe, capacity-point.
Outputs are deterministic given the seed: CSV bodies carry no timestamps
(run metadata goes to a ``<out>.meta.json`` sidecar), rows are emitted in
sorted grid order, and floats use 12 significant digits with lowercase
scientific notation so reruns are byte-identical.

Exit codes: 0 success, 2 configuration error, 3 unwritable output path.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from wideband_simo.experiments import (
    concentration_probe,
    effective_spacing_exponent,
    run_ber,
    run_rate_sweep,
    run_threshold_experiment,
)
from wideband_simo.rates import (
    PilotConfig,
    genie_rate_mc,
    pilot_rate_mc,
    pilot_mmse,
    threshold_preset,
)
from wideband_simo.seeding import substream

DEFAULT_SEED = 12345  # fixed documented default; never time-based

_EXIT_CONFIG = 2
_EXIT_OUTPUT = 3


class ConfigError(Exception):
    pass


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.11e}"


def write_csv(rows: list[dict], columns: list[str], path: str) -> None:
    """Header plus one formatted row per grid point, in the given order."""
    if not rows:
        raise ConfigError("no results to write")
    try:
        with open(path, "w", encoding="ascii") as f:
            f.write(",".join(columns) + "\n")
            for row in rows:
                f.write(",".join(_fmt(row[c]) for c in columns) + "\n")
    except OSError as e:
        raise OutputError(f"cannot write {path}: {e}") from e


class OutputError(Exception):
    pass


def _write_sidecar(path: str, args: argparse.Namespace, extra: dict | None = None) -> None:
    meta = {
        "command": args.command,
        "seed": args.seed,
        "threads": args.threads,
        "wall_clock": time.strftime("%Y-%m-%dT%H:%M:%S"),
    }
    if extra:
        meta.update(extra)
    try:
        Path(path + ".meta.json").write_text(json.dumps(meta, indent=2) + "\n")
    except OSError as e:
        raise OutputError(f"cannot write sidecar for {path}: {e}") from e


# -- config file ---------------------------------------------------------

def parse_config_file(path: str) -> dict[str, str]:
    """Flat ``key = value`` lines; '#' starts a comment; unknown keys are
    rejected later against each subcommand's schema."""
    out: dict[str, str] = {}
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{ln}: expected 'key = value', got {raw!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        if not key or not val:
            raise ConfigError(f"{path}:{ln}: empty key or value")
        if key in out:
            raise ConfigError(f"{path}:{ln}: duplicate key {key!r}")
        out[key] = val
    return out


def _coerce(schema: dict, key: str, raw: str):
    kind = schema[key][0]
    try:
        if kind == "int":
            return int(raw)
        if kind == "float":
            return float(raw)
        if kind == "bool":
            if raw.lower() in ("1", "true", "yes", "on"):
                return True
            if raw.lower() in ("0", "false", "no", "off"):
                return False
            raise ValueError(raw)
        if kind == "int_list":
            return [int(s) for s in raw.split(",") if s.strip()]
        if kind == "float_list":
            return [float(s) for s in raw.split(",") if s.strip()]
    except ValueError as e:
        raise ConfigError(f"config key {key!r}: bad value {raw!r}") from e
    raise AssertionError(kind)


def resolve_config(schema: dict, file_cfg: dict[str, str]) -> dict:
    """Apply a subcommand schema {key: (type, default)} to the parsed file."""
    for key in file_cfg:
        if key not in schema:
            raise ConfigError(f"unknown config key {key!r}")
    out = {}
    for key, (_, default) in schema.items():
        out[key] = _coerce(schema, key, file_cfg[key]) if key in file_cfg else default
    return out


# -- subcommands ---------------------------------------------------------

BER_SCHEMA = {
    "n_list": ("int_list", [64, 256, 1024, 4096, 16384]),
    "epsilon_list": ("float_list", [0.25, 0.40, 0.45, 0.55, 0.75]),
    "t": ("float", 0.45),
    "coherence_len": ("int", 1),
    "n_bits": ("int", 100_000),
}

RATE_SCHEMA = {
    "n_list": ("int_list", [64, 256, 1024, 4096, 16384]),
    "epsilon_list": ("float_list", [0.25, 0.40, 0.45, 0.55, 0.75]),
    "t": ("float", 0.45),
}

THRESHOLD_SCHEMA = {
    "n_list": ("int_list", [16, 64, 256]),
    "bw_min_mhz": ("float", 0.1),
    "bw_max_mhz": ("float", 100.0),
    "bw_step_mhz": ("float", 0.01),
    "subchannel_bw_hz": ("float", 1e6),
    "power": ("float", 10.0 ** 0.3),
    "overhead_fraction": ("float", 0.2),
    "coherence_len": ("int", 200),
    "pilot_energy_factor": ("float", 0.125),
    "count_overhead": ("bool", False),
}

PROBE_SCHEMA = {
    "n_list": ("int_list", [64, 128, 256, 512, 1024, 2048, 4096, 8192, 16384]),
    "t": ("float", 0.3),
    "base_energy": ("float", 0.0),
}

CAPACITY_SCHEMA = {
    "n_antennas": ("int", 1),
    "bandwidth_subchannels": ("float", 1.0),
    "power": ("float", 1.0),
    "subchannel_bw_hz": ("float", 1.0),
    "overhead_fraction": ("float", 0.2),
    "coherence_len": ("int", 200),
    "pilot_energy_factor": ("float", 0.125),
}


def _validate_family(epsilon_list: list[float], t: float) -> None:
    if not 0.0 < t < 0.5:
        raise ConfigError(f"t must lie in (0, 0.5); got t={t}")
    for eps in epsilon_list:
        if eps < 0.5 and not (eps < t < 0.5):
            te = effective_spacing_exponent(eps, t)
            if not (eps < te < 0.5):
                raise ConfigError(
                    f"t must lie in (epsilon, 0.5) for epsilon={eps}; got t={t}"
                )


def cmd_ber_sweep(args: argparse.Namespace, cfg: dict) -> list[dict]:
    _validate_family(cfg["epsilon_list"], cfg["t"])
    rows = []
    for eps in sorted(cfg["epsilon_list"]):
        for n in sorted(cfg["n_list"]):
            t_eff = effective_spacing_exponent(eps, cfg["t"])
            est = run_ber(
                n, eps, t_eff, cfg["coherence_len"], cfg["n_bits"], args.seed,
                threads=args.threads,
            )
            rows.append(
                {
                    "N": n,
                    "epsilon": eps,
                    "t": t_eff,
                    "M": est.dims.n_active,
                    "K": est.n_levels,
                    "L_c": cfg["coherence_len"],
                    "n_bits": est.n_bits,
                    "n_bit_errors": est.n_bit_errors,
                    "ber": est.ber,
                    "ci_halfwidth": est.ci_halfwidth,
                    "seed": args.seed,
                }
            )
    columns = [
        "N", "epsilon", "t", "M", "K", "L_c", "n_bits", "n_bit_errors",
        "ber", "ci_halfwidth", "seed",
    ]
    write_csv(rows, columns, args.out)
    return rows


def cmd_rate_sweep(args: argparse.Namespace, cfg: dict) -> list[dict]:
    _validate_family(cfg["epsilon_list"], cfg["t"])
    rows = run_rate_sweep(sorted(cfg["n_list"]), sorted(cfg["epsilon_list"]), cfg["t"])
    for row in rows:
        row["seed"] = args.seed
    rows.sort(key=lambda r: (r["epsilon"], r["N"]))
    columns = ["N", "epsilon", "t", "M", "K", "rate_bits_per_block", "seed"]
    write_csv(rows, columns, args.out)
    return rows


def _pilot_from_cfg(cfg: dict) -> PilotConfig:
    return PilotConfig(
        overhead_fraction=cfg["overhead_fraction"],
        coherence_len=cfg["coherence_len"],
        pilot_energy_factor=cfg["pilot_energy_factor"],
        count_overhead=bool(cfg.get("count_overhead", False)),
    )


def cmd_threshold(args: argparse.Namespace, cfg: dict) -> list[dict]:
    if cfg["bw_min_mhz"] <= 0 or cfg["bw_max_mhz"] <= cfg["bw_min_mhz"]:
        raise ConfigError("bw_min_mhz/bw_max_mhz: need 0 < min < max")
    grid = np.arange(cfg["bw_min_mhz"], cfg["bw_max_mhz"] + 1e-9, cfg["bw_step_mhz"])
    preset = {
        "n_list": tuple(sorted(cfg["n_list"])),
        "subchannel_bw": cfg["subchannel_bw_hz"],
        "power": cfg["power"],
        "pilot": _pilot_from_cfg(cfg),
        "bandwidth_grid": grid,
        "trials": args.trials or threshold_preset()["trials"],
    }
    curves, thresholds = run_threshold_experiment(preset, master_seed=args.seed)
    rows = []
    for n in sorted(curves):
        for pt in curves[n]:
            rows.append(
                {
                    "N": n,
                    "bandwidth_hz": pt.bandwidth_hz,
                    "genie_rate_bps": pt.genie_rate,
                    "pilot_rate_bps": pt.pilot_rate,
                    "mmse": pt.mmse,
                    "n_trials": pt.n_trials,
                    "seed": args.seed,
                    "is_threshold": False,
                }
            )
    for n in sorted(curves):
        best = max(curves[n], key=lambda p: (p.pilot_rate, -p.bandwidth_hz))
        rows.append(
            {
                "N": n,
                "bandwidth_hz": thresholds[n],
                "genie_rate_bps": best.genie_rate,
                "pilot_rate_bps": best.pilot_rate,
                "mmse": best.mmse,
                "n_trials": best.n_trials,
                "seed": args.seed,
                "is_threshold": True,
            }
        )
    columns = [
        "N", "bandwidth_hz", "genie_rate_bps", "pilot_rate_bps", "mmse",
        "n_trials", "seed", "is_threshold",
    ]
    write_csv(rows, columns, args.out)
    for n in sorted(thresholds):
        print(f"threshold N={n}: {thresholds[n] / 1e6:.2f} MHz", file=sys.stderr)
    return rows


def cmd_probe(args: argparse.Namespace, cfg: dict) -> list[dict]:
    trials = args.trials or 200_000
    res = concentration_probe(
        sorted(cfg["n_list"]), cfg["t"], cfg["base_energy"], trials, args.seed
    )
    rows = []
    for n, pe, excl in zip(res.n_values, res.error_probs, res.excluded):
        rows.append(
            {
                "t": res.t,
                "N": int(n),
                "base_energy": res.base_energy,
                "n_trials": res.n_trials,
                "pe": pe,
                "excluded": bool(excl),
                "seed": args.seed,
            }
        )
    columns = ["t", "N", "base_energy", "n_trials", "pe", "excluded", "seed"]
    write_csv(rows, columns, args.out)
    print(f"fitted_slope = {res.fitted_slope:.4f}", file=sys.stderr)
    args._extra_meta = {"fitted_slope": res.fitted_slope}
    return rows


def cmd_capacity_point(args: argparse.Namespace, cfg: dict) -> list[dict]:
    trials = args.trials or 100_000
    n = cfg["n_antennas"]
    b = cfg["bandwidth_subchannels"]
    rng = substream(args.seed, 0xCAFE, 0)
    genie = genie_rate_mc(n, b, cfg["power"], cfg["subchannel_bw_hz"], trials, rng)
    pilot = _pilot_from_cfg({**cfg, "count_overhead": False})
    rng = substream(args.seed, 0xCAFE, 0)
    pr = pilot_rate_mc(n, b, cfg["power"], cfg["subchannel_bw_hz"], pilot, trials, rng)
    rows = [
        {
            "N": n,
            "bandwidth_hz": b * cfg["subchannel_bw_hz"],
            "genie_rate_bps": genie,
            "pilot_rate_bps": pr,
            "mmse": pilot_mmse(pilot, cfg["power"] / b),
            "n_trials": trials,
            "seed": args.seed,
        }
    ]
    columns = ["N", "bandwidth_hz", "genie_rate_bps", "pilot_rate_bps", "mmse", "n_trials", "seed"]
    write_csv(rows, columns, args.out)
    return rows


_COMMANDS = {
    "ber-sweep": (BER_SCHEMA, cmd_ber_sweep, "ber"),
    "rate-sweep": (RATE_SCHEMA, cmd_rate_sweep, "rate"),
    "threshold": (THRESHOLD_SCHEMA, cmd_threshold, "threshold"),
    "probe": (PROBE_SCHEMA, cmd_probe, None),
    "capacity-point": (CAPACITY_SCHEMA, cmd_capacity_point, None),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wideband-simo",
        description="Seeded Monte Carlo experiments for wideband SIMO links",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                       help="master seed (fixed default; results are pure functions of it)")
        p.add_argument("--trials", type=int, default=None, help="Monte Carlo trials")
        p.add_argument("--out", type=str, default=f"{name}.csv", help="output CSV path")
        p.add_argument("--config", type=str, default=None, help="flat key=value config file")
        p.add_argument("--threads", type=int, default=1,
                       help="worker threads (affects speed only, never results)")
        p.add_argument("--plot", type=str, default=None,
                       help="also render the matching figure to this image path")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    schema, fn, plot_kind = _COMMANDS[args.command]
    try:
        file_cfg = parse_config_file(args.config) if args.config else {}
        cfg = resolve_config(schema, file_cfg)
        if args.seed < 0:
            raise ConfigError("seed must be a non-negative integer")
        rows = fn(args, cfg)
        _write_sidecar(args.out, args, getattr(args, "_extra_meta", None))
        if args.plot:
            if plot_kind is None:
                raise ConfigError(f"{args.command} has no figure renderer")
            from wideband_simo.plotting import render_figure

            render_figure(plot_kind, rows, args.plot)
    except (ConfigError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return _EXIT_CONFIG
    except OutputError as e:
        print(f"error: {e}", file=sys.stderr)
        return _EXIT_OUTPUT
    return 0


if __name__ == "__main__":
    sys.exit(main())
