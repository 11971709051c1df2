"""GUE operator/trace norm scaling and Gaussian ell-norms, as CSV.

    python scripts/mc_scaling.py --k 5 10 20 50 --samples 500 > gue.csv
"""
import argparse
import sys

import numpy as np

from tensorgap import montecarlo as mc, spaces


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--k", type=int, nargs="+", default=[5, 10, 20, 50])
    ap.add_argument("--samples", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    reports = mc.gue_opnorm_scaling(args.k, args.samples, args.seed)
    reports += mc.gue_tracenorm_scaling(args.k, args.samples, args.seed)
    for n in (2, 4, 8):
        reports.append(mc.ell_norm_estimate(spaces.l2(n), np.eye(n), 100_000, args.seed))
        reports.append(mc.ell_norm_estimate(spaces.l1(n), np.eye(n), 100_000, args.seed))
    sys.stdout.write(mc.to_csv(reports))


if __name__ == "__main__":
    main()
