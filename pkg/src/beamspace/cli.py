"""Command-line interface for the beamspace equalization harness.

Every configuration key can come from a flat key=value config file
(--config) and be overridden by a CLI flag of the same name.  Outputs are
CSV with a single header row; validation failures print one
machine-readable ``error: ...`` line and exit nonzero.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from dataclasses import fields

import numpy as np

from . import hwmodel
from .channel import ScenarioConfig, draw_scenario, dump_channel_csv
from .harness import (ConfigError, SimConfig, UnreachableError,
                      activity_samples, pareto_sweep, run_ber_curve,
                      snr_operating_point)
from .spade import ThresholdPair

# key -> (type, belongs-to-scenario)
_BOOL = "bool"
_CONFIG_KEYS = {
    "num_antennas": (int, True),
    "num_ues": (int, True),
    "los": (_BOOL, True),
    "sector_deg": (float, True),
    "min_sep_deg": (float, True),
    "power_ctrl_db": (float, True),
    "num_paths_los": (int, True),
    "num_paths_nlos": (int, True),
    "los_scatter_db": (float, True),
    "decay_db_per_path": (float, True),
    "algorithm": (str, False),
    "delta": (float, False),
    "tau_w": (float, False),
    "tau_y": (float, False),
    "adc_bits": (int, False),
    "coherence_len": (int, False),
    "csi_mode": (str, False),
    "snr_lo_db": (float, False),
    "snr_hi_db": (float, False),
    "min_bits_per_point": (int, False),
    "min_errors_per_point": (int, False),
    "max_bits_per_point": (int, False),
    "Es": (float, False),
    "seed": (int, False),
    "arithmetic": (str, False),
    "workers": (int, False),
}


def _parse_value(key: str, raw: str):
    typ, _ = _CONFIG_KEYS[key]
    raw = raw.strip()
    if raw.lower() in ("none", ""):
        return None
    if typ is _BOOL:
        if raw.lower() in ("1", "true", "yes"):
            return True
        if raw.lower() in ("0", "false", "no"):
            return False
        raise ConfigError(f"bad boolean for {key}: {raw!r}")
    return typ(raw)


def read_config_file(path: str) -> dict:
    values = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, raw = line.split("=", 1)
            key = key.strip()
            if key not in _CONFIG_KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = _parse_value(key, raw)
    return values


def build_sim_config(args: argparse.Namespace, validate: bool = True) -> SimConfig:
    values = {}
    if args.config:
        values.update(read_config_file(args.config))
    for key in _CONFIG_KEYS:
        cli_val = getattr(args, key, None)
        if cli_val is not None:
            values[key] = _parse_value(key, cli_val)
    scen_kwargs = {k: v for k, (t, is_scen) in _CONFIG_KEYS.items()
                   if is_scen and (v := values.get(k)) is not None}
    sim_kwargs = {k: values[k] for k, (t, is_scen) in _CONFIG_KEYS.items()
                  if not is_scen and k in values}
    try:
        scenario = ScenarioConfig(**scen_kwargs)
        cfg = SimConfig(scenario=scenario, **sim_kwargs)
        if validate:
            cfg.validate()
    except (ValueError, ConfigError) as exc:
        raise ConfigError(str(exc)) from exc
    return cfg


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat key=value config file")
    parser.add_argument("--out", help="output CSV path (default: stdout)")
    for key in _CONFIG_KEYS:
        parser.add_argument(f"--{key.replace('_', '-')}", dest=key, metavar="V")


def _write_csv(path, header, rows) -> None:
    fh = open(path, "w", newline="") if path else sys.stdout
    try:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(float(v)) if isinstance(v, float) else v
                             for v in row])
    finally:
        if path:
            fh.close()


def _parse_grid(raw: str) -> list[float]:
    return [float(x) for x in raw.split(",") if x.strip()]


def _cmd_ber(args) -> int:
    cfg = build_sim_config(args)
    grid = _parse_grid(args.snr_grid_db)
    points = run_ber_curve(cfg, grid)
    _write_csv(args.out, ["snr_db", "ber", "bits", "mean_alpha"],
               [(p.snr_db, p.ber, p.bits, p.mean_alpha) for p in points])
    return 0


def _cmd_snrop(args) -> int:
    cfg = build_sim_config(args)
    try:
        snr_op = snr_operating_point(cfg, target_ber=args.target_ber)
    except UnreachableError as exc:
        print(f"error: unreachable: {exc}", file=sys.stderr)
        return 3
    _write_csv(args.out, ["snr_op_db"], [(snr_op,)])
    return 0


def _cmd_pareto(args) -> int:
    # candidate thresholds / densities come from the sweep grid, so the
    # per-candidate configs are validated inside pareto_sweep instead
    cfg = build_sim_config(args, validate=False)
    if args.delta_grid:
        candidates = _parse_grid(args.delta_grid)
        header = ["delta", "alpha", "snr_op_db"]
        rows = lambda pts: [(p.delta, p.alpha, p.snr_op_db) for p in pts]
    elif args.tau_w_grid and args.tau_y_grid:
        candidates = [ThresholdPair(tw, ty)
                      for tw in _parse_grid(args.tau_w_grid)
                      for ty in _parse_grid(args.tau_y_grid)]
        header = ["tau_w", "tau_y", "alpha", "snr_op_db"]
        rows = lambda pts: [(p.tau_w, p.tau_y, p.alpha, p.snr_op_db) for p in pts]
    else:
        raise ConfigError("pareto needs --delta-grid or both --tau-w-grid and --tau-y-grid")
    pts = pareto_sweep(cfg, candidates, target_ber=args.target_ber)
    _write_csv(args.out, header, rows(pts))
    return 0


def _cmd_activity(args) -> int:
    cfg = build_sim_config(args)
    alphas = activity_samples(cfg, float(args.snr_db), int(args.num_blocks))
    edges = np.linspace(0.0, 1.0, int(args.bins) + 1)
    counts, _ = np.histogram(alphas, bins=edges)
    _write_csv(args.out, ["bin_lo", "bin_hi", "count"],
               [(float(edges[i]), float(edges[i + 1]), int(counts[i]))
                for i in range(len(counts))])
    return 0


def _cmd_power(args) -> int:
    alpha = float(args.alpha)
    if args.mute_fraction is not None:
        mf = float(args.mute_fraction)
        archs = [(args.arch or "custom", mf)]
    elif args.arch:
        archs = [(args.arch, hwmodel.MUTE_FRACTIONS[args.arch.lower()])]
    else:
        archs = sorted(hwmodel.MUTE_FRACTIONS.items())
    rows = []
    for name, mf in archs:
        kind = "MAC" if name.lower().startswith("mac") else "AT"
        arch = hwmodel.ArchModel(kind=kind, mute_fraction=mf,
                                 clock_hz=float(args.clock_hz),
                                 num_ues=int(args.num_ues or 8),
                                 num_beams=int(args.num_antennas or 64),
                                 bits_per_symbol=4)
        rows.append((name, alpha, mf, hwmodel.power_proxy(alpha, mf),
                     hwmodel.savings_vs_baseline(alpha, mf),
                     hwmodel.throughput_bps(arch) / 1e9))
    _write_csv(args.out, ["arch", "alpha", "mute_fraction", "relative_power",
                          "savings", "throughput_gbps"], rows)
    return 0


def _cmd_gen_channels(args) -> int:
    cfg = build_sim_config(args)
    os.makedirs(args.outdir, exist_ok=True)
    for i in range(int(args.count)):
        rng = np.random.default_rng([cfg.seed, i])
        scen = draw_scenario(cfg.scenario, rng)
        dump_channel_csv(scen.H, os.path.join(args.outdir, f"channel_{i:04d}.csv"))
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="beamspace",
                                     description="Beamspace equalization simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ber", help="uncoded BER curve over an SNR grid")
    _add_common(p)
    p.add_argument("--snr-grid-db", required=True, help="comma-separated SNR list")
    p.set_defaults(func=_cmd_ber)

    p = sub.add_parser("snrop", help="minimum SNR reaching the target BER")
    _add_common(p)
    p.add_argument("--target-ber", type=float, default=1e-3)
    p.set_defaults(func=_cmd_snrop)

    p = sub.add_parser("pareto", help="threshold or density Pareto sweep")
    _add_common(p)
    p.add_argument("--target-ber", type=float, default=1e-3)
    p.add_argument("--tau-w-grid")
    p.add_argument("--tau-y-grid")
    p.add_argument("--delta-grid")
    p.set_defaults(func=_cmd_pareto)

    p = sub.add_parser("activity", help="activity-rate histogram at fixed thresholds")
    _add_common(p)
    p.add_argument("--snr-db", required=True)
    p.add_argument("--num-blocks", default=100)
    p.add_argument("--bins", default=20)
    p.set_defaults(func=_cmd_activity)

    p = sub.add_parser("power", help="architectural power-proxy report")
    p.add_argument("--out")
    p.add_argument("--alpha", required=True)
    p.add_argument("--arch", choices=sorted(hwmodel.MUTE_FRACTIONS) + ["custom"])
    p.add_argument("--mute-fraction")
    p.add_argument("--clock-hz", default=1e9)
    p.add_argument("--num-ues")
    p.add_argument("--num-antennas")
    p.set_defaults(func=_cmd_power)

    p = sub.add_parser("gen-channels", help="dump channel realizations as CSV")
    _add_common(p)
    p.add_argument("--count", default=10)
    p.add_argument("--outdir", required=True)
    p.set_defaults(func=_cmd_gen_channels)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
