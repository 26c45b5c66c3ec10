#!/usr/bin/env python3
"""Power proxy of each modeled architecture at a given activity rate."""

import argparse

from beamspace.hwmodel import (MUTE_FRACTIONS, ArchModel, power_proxy,
                               savings_vs_baseline, throughput_bps)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alpha", type=float, default=0.21)
    ap.add_argument("--clock-ghz", type=float, default=1.0)
    args = ap.parse_args()

    print(f"activity rate alpha = {args.alpha}")
    print("arch,mute_fraction,relative_power,savings,throughput_gbps")
    for name, mf in sorted(MUTE_FRACTIONS.items()):
        kind = "MAC" if name.startswith("mac") else "AT"
        arch = ArchModel(kind, mf, args.clock_ghz * 1e9, 8, 64, 4)
        print(f"{name},{mf},{power_proxy(args.alpha, mf):.4f},"
              f"{savings_vs_baseline(args.alpha, mf):.4f},"
              f"{throughput_bps(arch) / 1e9:g}")


if __name__ == "__main__":
    main()
