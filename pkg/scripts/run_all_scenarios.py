#!/usr/bin/env python3
"""Run every scenario in scenarios/ and print a one-line health summary each.

    python3 scripts/run_all_scenarios.py                # all of them
    python3 scripts/run_all_scenarios.py landau fig3    # a subset
"""

import argparse
import logging
import time
from pathlib import Path

import numpy as np

from vortexcyclo.config import load_config
from vortexcyclo.formats import read_ledger_csv
from vortexcyclo.runner import run_scenario

ROOT = Path(__file__).resolve().parents[1]


def summarize(name, led, rho_b, seconds):
    dev = np.hypot(led["x"] - led["x_analytic"], led["y"] - led["y_analytic"]).max() / rho_b
    centre = np.hypot(led["orbit_cx"] - led["orbit_cx"][0], led["orbit_cy"] - led["orbit_cy"][0]).max()
    return (
        f"{name:12s} {seconds:7.1f}s  norm drift {np.abs(led['norm'] - 1).max():.1e}  "
        f"L_can drift {np.ptp(led['l_can']):.1e}  centre drift {centre:.1e}  "
        f"orbit dev {dev:.1e} rho_B  ledger res {led['res_ledger'].max():.1e}"
    )


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("names", nargs="*", help="scenario stems (default: all)")
    ap.add_argument("--out-root", default=str(ROOT / "out"))
    args = ap.parse_args()
    logging.basicConfig(level=logging.WARNING)

    paths = sorted((ROOT / "scenarios").glob("*.cfg"))
    if args.names:
        paths = [p for p in paths if p.stem in args.names]
    for path in paths:
        sc = load_config(path)
        t0 = time.perf_counter()
        result = run_scenario(sc, out_dir=Path(args.out_root) / sc.name)
        led = read_ledger_csv(result.ledger_path)
        line = summarize(sc.name, led, sc.params.rho_b, time.perf_counter() - t0)
        if not result.ok:
            line += f"  ABORTED: {result.error}"
        print(line, flush=True)


if __name__ == "__main__":
    main()
