"""Export the CSV data behind the four design-study sweeps.

Writes figure{4,5,6,7}.csv plus metadata sidecars into --out (default
out/sweeps), using the co-axial study vehicle for figures 4-6 and the
offset sweep preset for figure 7.

Usage: python scripts/run_figure_sweeps.py [--out DIR]
"""
import argparse
import json
import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), os.pardir, "src"))

from monospin.config import load_config
from monospin import optimize

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), os.pardir)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=os.path.join(ROOT, "out", "sweeps"))
    ap.add_argument("--config",
                    default=os.path.join(ROOT, "configs", "config1.ini"))
    args = ap.parse_args()

    cfg = load_config(args.config)
    os.makedirs(args.out, exist_ok=True)
    for fig in (4, 5, 6, 7):
        space = optimize.figure_space(fig)
        t0 = time.perf_counter()
        grid = optimize.sweep(space, cfg.base, cfg.masses)
        elapsed = time.perf_counter() - t0
        csv_path = os.path.join(args.out, f"figure{fig}.csv")
        with open(csv_path, "w", encoding="utf-8") as fh:
            fh.write(grid.to_csv())
        meta = optimize.sweep_metadata(space, cfg.base, cfg.masses,
                                       "quadratic")
        meta["axis_names"] = list(grid.axis_names)
        with open(os.path.join(args.out, f"figure{fig}.meta.json"),
                  "w", encoding="utf-8") as fh:
            json.dump(meta, fh, indent=2)
            fh.write("\n")
        idx, best = grid.min_feasible()
        where = ", ".join(
            f"{n}={grid.axis_values[j][idx[j]]:.4g}"
            for j, n in enumerate(grid.axis_names))
        print(f"figure {fig}: {grid.P_s.size} points in {elapsed:.1f} s, "
              f"min P_s = {best:.4f} W/N at {where} -> {csv_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
