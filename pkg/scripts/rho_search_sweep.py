"""Heuristic lower bounds on the pi/eps constant for pairs of small spaces.

    python scripts/rho_search_sweep.py --iterations 200
"""
import argparse
import math

from tensorgap import spaces, witnesses
from tensorgap.tensors import rho_search


def pairs():
    for n in range(2, 7):
        yield f"l1({n}) x l1({n})", spaces.l1(n), spaces.l1(n), witnesses.projection_constant_l1(n)
    for n in range(2, 5):
        yield f"l1({n}) x l2({n})", spaces.l1(n), spaces.l2(n), math.sqrt(n)
    yield "hexagon x hexagon", spaces.hexagon(), spaces.hexagon(), float("nan")
    for k in (4, 5, 8):
        p = spaces.regular_polygon(k)
        yield f"{2 * k}-gon x {2 * k}-gon", p, p, float("nan")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--iterations", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    print(f"{'pair':<22} {'found':>8} {'reference':>10}")
    for name, x, y, ref in pairs():
        res = rho_search(x, y, seed=args.seed, iterations=args.iterations)
        print(f"{name:<22} {res.ratio:>8.4f} {ref:>10.4f}")


if __name__ == "__main__":
    main()
