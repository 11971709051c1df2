"""Gap witnesses on planar polygon pairs.

Prints the 19/18 CHSH-style bound and the linf(2) convexity ratio for the
hexagon and for a batch of random centrally symmetric polygons.

    python scripts/hexagon_gap.py --count 20 --seed 0
"""
import argparse
import csv
import sys

import numpy as np

from tensorgap import spaces, witnesses


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.Generator(np.random.Philox(args.seed))
    out = csv.writer(sys.stdout)
    out.writerow(["case", "vertices_x", "vertices_y", "chsh19_bound", "convexity_ratio"])
    h = spaces.hexagon()
    r = witnesses.chsh19_witness(h, h)
    c = witnesses.linf2_convexity_witness(h)
    out.writerow(["hexagon", 6, 6, f"{r.ratio_bound:.12g}", f"{c.ratio:.12g}"])
    for i in range(args.count):
        x, y = spaces.random_polygon(rng), spaces.random_polygon(rng)
        r = witnesses.chsh19_witness(x, y)
        c = witnesses.linf2_convexity_witness(x)
        out.writerow([f"random-{i}", len(x.vertices), len(y.vertices),
                      f"{r.ratio_bound:.12g}", f"{c.ratio:.12g}"])


if __name__ == "__main__":
    main()
