"""Golden-constant checks shared by the CLI ``verify`` command and the tests."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import gpt, spaces, witnesses
from .tensors import Tensor, ratio_witness

TOL = 1e-7


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str


def _close(a, b, tol=TOL):
    return abs(a - b) <= tol


def identity_l1_l2():
    errs = [abs(ratio_witness(witnesses.identity_witness(("l1", "l2"), n)) - math.sqrt(n))
            for n in range(2, 9)]
    return Check("identity l1 x l2 ratio = sqrt(n), n=2..8", max(errs) <= TOL, f"max err {max(errs):.3g}")


def identity_l1_linf():
    errs = [abs(ratio_witness(witnesses.identity_witness(("l1", "linf"), n)) - n)
            for n in range(2, 7)]
    return Check("identity l1 x linf ratio = n, n=2..6", max(errs) <= TOL, f"max err {max(errs):.3g}")


def projection_constants():
    exact = [witnesses.projection_constant_l1(n, exact=True) for n in (2, 3, 4)]
    ok = exact == [Fraction(2), Fraction(2), Fraction(8, 3)]
    enum_ok = all(_close(n / witnesses.rademacher_abs_mean_enum(n), float(v))
                  for n, v in zip((2, 3, 4), exact))
    rel = witnesses.projection_constant_l1(30) / math.sqrt(math.pi * 30 / 2) - 1
    return Check("projection constant of l1(n): 2, 2, 8/3 and n=30 within 5%",
                 ok and enum_ok and abs(rel) <= 0.05, f"values {exact}, n=30 rel {rel:.4f}")


def chsh19_hexagon():
    h = spaces.hexagon()
    r = witnesses.chsh19_witness(h, h)
    ok = r.pairing == 19.0 or _close(r.pairing, 19.0, 1e-12)
    ok = ok and _close(r.tensor_eps, 9.0) and r.ratio_bound >= 19 / 18 - TOL
    return Check("19/18 witness on hexagon pair", ok,
                 f"pairing {r.pairing:.12g}, eps {r.tensor_eps:.12g}, bound {r.ratio_bound:.12g}")


def classical_base_norm(samples=1000, seed=0):
    rng = np.random.Generator(np.random.Philox(seed))
    worst = 0.0
    for i in range(samples):
        d = 1 + i % 6
        x = rng.standard_normal(d)
        worst = max(worst, abs(gpt.base_norm(gpt.classical(d), x) - np.abs(x).sum()))
    return Check(f"classical base norm = l1 norm ({samples} samples, d<=6)", worst <= TOL,
                 f"max err {worst:.3g}")


def central_base_norm(samples=1000, seed=0):
    rng = np.random.Generator(np.random.Philox(seed))
    models = [(sp, gpt.centrally_symmetric(sp))
              for sp in (spaces.hexagon(), spaces.l1(2), spaces.linf(2), spaces.regular_polygon(5))]
    worst = 0.0
    for i in range(samples):
        sp, g = models[i % len(models)]
        x = rng.standard_normal(sp.dim + 1) * rng.uniform(0.1, 3)
        want = max(spaces.norm(sp, x[:-1]), abs(x[-1]))
        worst = max(worst, abs(gpt.base_norm(g, x) - want))
    return Check(f"centrally symmetric base norm = max(|x|, |a|) ({samples} samples)",
                 worst <= TOL, f"max err {worst:.3g}")


def two_isomorphic(count=20, seed=0):
    rng = np.random.Generator(np.random.Philox(seed))
    factors = []
    for _ in range(count):
        sp = spaces.random_polygon(rng)
        factors.append(witnesses_free_factor(sp))
    ok = all(1 - 1e-9 <= f <= 2 + 1e-9 for f in factors)
    return Check(f"two-isomorphic base norm B <= B_X <= 2B ({count} polygons)", ok,
                 f"factors in [{min(factors):.6g}, {max(factors):.6g}]")


def witnesses_free_factor(sp):
    return gpt.two_isomorphic_base_norm(sp).factor


SUITES = {
    "paper-constants": [identity_l1_l2, identity_l1_linf, projection_constants, chsh19_hexagon,
                        classical_base_norm, central_base_norm, two_isomorphic],
}


def run_suite(name="paper-constants"):
    return [check() for check in SUITES[name]]
