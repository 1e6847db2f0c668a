"""Local power-optimal design search from the co-axial starting point.

Reproduces the design-search experiment: start at the symmetric design
(alpha = 10 deg, chord ratio 1, radius ratio 5, no tilt, no offset) and
descend in specific power.  The symmetric start is a stationary saddle of
the objective (P_s is even in tilt and offset there), so the search
relies on the built-in deterministic poll to break the symmetry.

Usage: python scripts/optimize_tilted.py [--config CONFIG]
"""
import argparse
import math
import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), os.pardir, "src"))

from monospin.config import load_config
from monospin.model import DesignVector
from monospin import optimize

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), os.pardir)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--config",
                    default=os.path.join(ROOT, "configs", "config2.ini"))
    args = ap.parse_args()
    cfg = load_config(args.config)

    x0 = DesignVector(10.0, 10.0, 1.0, 5.0, 0.0, 0.0)
    space = optimize.DesignSpace.from_dict(
        {"alpha_p": (0.0, 10.0, 11), "alpha_B": (0.0, 10.0, 11),
         "chord_ratio": (0.5, 1.5, 11), "radius_ratio": (1.0, 6.0, 11),
         "delta": (0.0, 0.5, 11), "offset_ratio": (-1.0, 1.0, 11)}, x0)

    start = optimize.evaluate_design(cfg.base, cfg.masses, x0)
    print(f"start:   P_s = {start.P_s:.4f} W/N at {x0.as_tuple()}")
    t0 = time.perf_counter()
    res = optimize.local_search(x0, space, cfg.base, cfg.masses)
    elapsed = time.perf_counter() - t0
    x = res.x
    print(f"optimum: P_s = {res.P_s:.4f} W/N after {res.n_evals} "
          f"evaluations ({elapsed:.0f} s)")
    print(f"  alpha_p      = {x.alpha_p:.3f} deg")
    print(f"  alpha_B      = {x.alpha_B:.3f} deg")
    print(f"  chord_ratio  = {x.chord_ratio:.3f}")
    print(f"  radius_ratio = {x.radius_ratio:.3f}")
    print(f"  delta        = {x.delta:.4f} rad "
          f"({math.degrees(x.delta):.2f} deg)")
    print(f"  offset_ratio = {x.offset_ratio:.3f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
