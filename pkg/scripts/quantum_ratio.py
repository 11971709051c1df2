"""Certified eps/pi intervals for Gaussian Hermitian tensors.

For each n the script samples tensors in Herm(n) (x) Herm(n) with trace-class
factors and prints the median certified ratio pi_lower / eps_upper together
with the median interval widths.

    python scripts/quantum_ratio.py --n 2 3 4 --samples 50
"""
import argparse

import numpy as np

from tensorgap import quantum


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--samples", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'n':>3} {'ratio_lo':>10} {'ratio_hi':>10} {'eps_width':>10} {'pi_width':>10}")
    for n in args.n:
        rng = np.random.Generator(np.random.Philox([args.seed, n]))
        lo, hi, we, wp = [], [], [], []
        for i in range(args.samples):
            z = quantum.gue_tensor(n, n, rng)
            e = quantum.epsilon_interval(z, "s1", seed=i)
            p = quantum.pi_interval(z, "s1", seed=i, eps=e)
            lo.append(p.lower / e.upper)
            hi.append(p.upper / e.lower)
            we.append(e.width / e.upper)
            wp.append(p.width / p.upper)
        print(f"{n:>3} {np.median(lo):>10.4f} {np.median(hi):>10.4f} "
              f"{np.median(we):>10.4f} {np.median(wp):>10.4f}")


if __name__ == "__main__":
    main()
