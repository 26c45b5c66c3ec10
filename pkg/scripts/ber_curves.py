#!/usr/bin/env python3
"""Compare BER curves of the dense and sparsity-adaptive equalizers.

Runs the default 64-antenna / 8-UE LoS scenario in fixed point with 6-bit
ADCs and writes one CSV per algorithm next to --outdir.
"""

import argparse
import csv
import pathlib

from beamspace.channel import ScenarioConfig
from beamspace.harness import SimConfig, run_ber_curve


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="results/ber")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=8)
    ap.add_argument("--min-bits", type=int, default=1_000_000)
    ap.add_argument("--snr-grid", default="-4,-2,0,2,4,6,8,10,12")
    args = ap.parse_args()

    grid = [float(x) for x in args.snr_grid.split(",")]
    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    runs = {
        "almmse": dict(algorithm="almmse"),
        "blmmse": dict(algorithm="blmmse"),
        "eomp_d25": dict(algorithm="eomp", delta=0.25),
        "comp_d25": dict(algorithm="comp", delta=0.25),
        "cspade": dict(algorithm="cspade", tau_w=0.028, tau_y=10.0),
    }
    for name, kw in runs.items():
        cfg = SimConfig(scenario=ScenarioConfig(), csi_mode="perfect",
                        min_bits_per_point=args.min_bits, seed=args.seed,
                        workers=args.workers, **kw)
        points = run_ber_curve(cfg, grid)
        path = outdir / f"{name}.csv"
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["snr_db", "ber", "bits", "mean_alpha"])
            for p in points:
                w.writerow([p.snr_db, p.ber, p.bits, p.mean_alpha])
        print(f"{name}: wrote {path}")


if __name__ == "__main__":
    main()
