"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL criterion N`` line (visible with
``pytest -s``) listing its sub-checks, then asserts that all of them hold.
"""
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from oracles import rademacher_enum
from tensorgap import gpt, montecarlo as mc, quantum, spaces, witnesses
from tensorgap.tensors import Tensor, injective_norm, projective_norm, ratio_witness, rho_search


def report(number, title, checks, elapsed=None, limit=None):
    if limit is not None:
        checks.append((f"runtime {elapsed:.1f}s < {limit}s", elapsed < limit))
    ok = all(c for _, c in checks)
    failed = [name for name, c in checks if not c]
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}"
    if failed:
        line += " | failing: " + "; ".join(failed)
    print("\n" + line)
    for name, c in checks:
        print(f"    [{'ok' if c else 'FAIL'}] {name}")
    assert ok, line


def philox(seed):
    return np.random.Generator(np.random.Philox(seed))


def test_criterion_1_golden_constants():
    t0 = time.perf_counter()
    tol = 1e-7
    checks = []
    err = max(abs(ratio_witness(witnesses.identity_witness(("l1", "l2"), n)) - math.sqrt(n))
              for n in range(2, 9))
    checks.append((f"identity l1(n) x l2(n) ratio = sqrt(n), n=2..8 (err {err:.2g})", err <= tol))
    err = max(abs(ratio_witness(witnesses.identity_witness(("l1", "linf"), n)) - n) for n in range(2, 7))
    checks.append((f"identity l1(n) x linf(n) ratio = n, n=2..6 (err {err:.2g})", err <= tol))

    exact = [witnesses.projection_constant_l1(n, exact=True) for n in (2, 3, 4)]
    enum = [n / rademacher_enum(n) for n in (2, 3, 4)]
    checks.append(("projection constants 2, 2, 8/3 (exact and enumeration)",
                   exact == [2, 2, Fraction(8, 3)]
                   and all(abs(a - float(b)) <= tol for a, b in zip(enum, exact))))
    rel = witnesses.projection_constant_l1(30) / math.sqrt(math.pi * 30 / 2) - 1
    checks.append((f"projection constant n=30 within 5% of sqrt(pi n/2) (rel {rel:.4f})", abs(rel) <= 0.05))

    h = spaces.hexagon()
    r = witnesses.chsh19_witness(h, h)
    # enumeration oracle for |z|_eps: every pair of dual-ball vertices
    dv = spaces.dual_vertex_list(h)
    eps_enum = float(np.abs(dv @ r.tensor.coeffs @ dv.T).max())
    checks.append((f"19/18 witness pairing = 19 ({r.pairing!r})", r.pairing == 19.0))
    checks.append((f"19/18 witness |z|_eps = 9 by enumeration ({eps_enum:.12g})",
                   abs(eps_enum - 9) <= tol and abs(r.tensor_eps - 9) <= tol))
    checks.append((f"19/18 witness certified ratio >= 19/18 ({r.ratio_bound:.12g})",
                   r.ratio_bound >= 19 / 18 - tol))

    rng = philox(1)
    worst = 0.0
    for i in range(1000):
        d = 1 + i % 6
        x = rng.standard_normal(d) * rng.uniform(0.1, 5)
        worst = max(worst, abs(gpt.base_norm(gpt.classical(d), x) - np.abs(x).sum()))
    checks.append((f"classical base norm = l1 on 1000 vectors (err {worst:.2g})", worst <= tol))

    pool = [spaces.hexagon(), spaces.l1(2), spaces.linf(2), spaces.regular_polygon(5)]
    pool += [spaces.random_polygon(rng) for _ in range(4)]
    models = [(sp, gpt.centrally_symmetric(sp)) for sp in pool]
    worst = 0.0
    for i in range(1000):
        sp, g = models[i % len(models)]
        x = rng.standard_normal(sp.dim + 1) * rng.uniform(0.1, 5)
        want = max(spaces.norm(sp, x[:-1]), abs(x[-1]))
        worst = max(worst, abs(gpt.base_norm(g, x) - want))
    checks.append((f"centrally symmetric base norm = max(|x|, |a|) on 1000 samples (err {worst:.2g})",
                   worst <= tol))

    bad = 0
    for _ in range(20):
        sp = spaces.random_polygon(rng)
        t = gpt.two_isomorphic_base_norm(sp)
        ball = gpt.base_norm_space(t.gpt)
        inner = max(spaces.norm(sp, s) for s in spaces.ball_vertex_list(ball))
        outer = max(spaces.norm(ball, v) for v in spaces.ball_vertex_list(sp))
        bad += not (inner <= 1 + tol and outer <= 2 + tol)
    checks.append((f"two-isomorphic containment B in B_X in 2B on 20 polygons ({bad} failures)", bad == 0))
    report(1, "golden constants", checks, time.perf_counter() - t0, 5)


def _random_game(rng, rule):
    a = gpt.centrally_symmetric(spaces.random_polygon(rng))
    b = gpt.centrally_symmetric(spaces.random_polygon(rng))
    prod = gpt.compose(a, b, "min").cone.generators
    nq = int(rng.integers(1, 5))
    qs = []
    for _ in range(nq):
        idx = rng.choice(len(prod), size=min(3, len(prod)), replace=False)
        qs.append(rng.dirichlet(np.ones(len(idx))) @ prod[idx])
    p = rng.dirichlet(np.ones(nq))
    return a, b, qs, p / p.sum(), [int(v) for v in rng.integers(0, 2, nq)]


def test_criterion_2_game_consistency():
    t0 = time.perf_counter()
    rng = philox(2)
    eq_loc = eq_glob = order = 0
    worst = 0.0
    for _ in range(50):
        a, b, qs, p, bits = _random_game(rng, "min")
        gmin = gpt.XorGame(gpt.compose(a, b, "min"), qs, p, bits)
        gmax = gpt.XorGame(gpt.compose(a, b, "max"), qs, p, bits)
        z = gpt.game_vector(gmin)
        loc, glob = gpt.bias_local(gmin), gpt.bias_global(gmin)
        d1, d2 = abs(loc - injective_norm(z)), abs(glob - projective_norm(z))
        worst = max(worst, d1, d2)
        eq_loc += d1 > 1e-8
        eq_glob += d2 > 1e-8
        order += gpt.bias_global(gmax) > glob + 1e-8
    checks = [
        (f"bias_local = eps(z_G) on 50 games (mismatches {eq_loc}, max diff {worst:.2g})", eq_loc == 0),
        (f"bias_global(min) = pi(z_G) on 50 games (mismatches {eq_glob})", eq_glob == 0),
        (f"bias_global(max) <= bias_global(min) ({order} violations)", order == 0),
    ]
    c = gpt.compose(gpt.classical(2), gpt.classical(2), "min")
    qs = [np.kron(np.eye(2)[x], np.eye(2)[y]) for x in range(2) for y in range(2)]
    chsh = gpt.XorGame(c, qs, [0.25] * 4, [x & y for x in range(2) for y in range(2)])
    loc, glob = gpt.bias_local(chsh), gpt.bias_global(chsh)
    checks.append((f"classical CHSH local bias = 1/2 (got {loc:.12g})", abs(loc - 0.5) <= 1e-8))
    checks.append((f"classical CHSH global bias = 1/2 (got {glob:.12g})", abs(glob - 0.5) <= 1e-8))
    report(2, "game biases match tensor norms", checks, time.perf_counter() - t0, 10)


def _fast_pair(rng):
    kind = int(rng.integers(0, 4))
    if kind == 0:
        n, m = rng.integers(1, 5, 2)
        return spaces.l1(int(n)), [spaces.l2, spaces.l1, spaces.linf][int(rng.integers(0, 3))](int(m))
    if kind == 1:
        n, m = rng.integers(1, 5, 2)
        return spaces.l2(int(n)), spaces.l2(int(m))
    if kind == 2:
        return spaces.random_polygon(rng), spaces.random_polygon(rng)
    return spaces.linf(int(rng.integers(1, 4))), spaces.random_polygon(rng)


def test_criterion_3_property_suites():
    rng = philox(3)
    n_cases = 500
    sandwich = cross = duality = bipolar = 0
    for _ in range(n_cases):
        x, y = _fast_pair(rng)
        z = Tensor(x, y, rng.standard_normal((x.dim, y.dim)))
        e, p = injective_norm(z), projective_norm(z)
        sandwich += not (e <= p * (1 + 1e-9) + 1e-12)

        x, y = _fast_pair(rng)
        u, v = rng.standard_normal(x.dim), rng.standard_normal(y.dim)
        z = Tensor(x, y, np.outer(u, v))
        want = spaces.norm(x, u) * spaces.norm(y, v)
        cross += not (abs(injective_norm(z) - want) <= 1e-8 * max(1, want)
                      and abs(projective_norm(z) - want) <= 1e-8 * max(1, want))

        g = gpt.centrally_symmetric(spaces.random_polygon(rng)) if rng.random() < 0.5 \
            else gpt.classical(int(rng.integers(1, 6)))
        w = rng.standard_normal(g.dim)
        val = gpt.base_norm(g, w, check=False)
        dval, f = gpt.base_norm_dual_witness(g, w)
        duality += not (abs(val - dval) <= 1e-8 * max(1, val)
                        and gpt.order_unit_norm(g, f) <= 1 + 1e-8
                        and abs(f @ w - val) <= 1e-8 * max(1, val))

        if rng.random() < 0.5:
            sp = spaces.random_polygon(rng)
        else:
            pts = rng.standard_normal((int(rng.integers(3, 7)), 3))
            sp = spaces.polytope(np.vstack([pts, -pts]))
        back = spaces.dual_space(spaces.dual_space(sp))
        probe = rng.standard_normal((20, sp.dim))
        bipolar += not np.allclose(spaces.norms(back, probe), spaces.norms(sp, probe), rtol=1e-9, atol=1e-12)
    checks = [
        (f"eps <= pi on {n_cases} random tensors ({sandwich} failures)", sandwich == 0),
        (f"eps = pi = |x||y| on {n_cases} product tensors ({cross} failures)", cross == 0),
        (f"base norm primal = dual LP on {n_cases} vectors ({duality} failures)", duality == 0),
        (f"bipolar (B*)* = B on {n_cases} polytopes ({bipolar} failures)", bipolar == 0),
    ]
    report(3, "norm axiom and duality suites", checks)


def test_criterion_4_universal_gap():
    rng = philox(4)
    low19 = low_conv = 0
    worst19, worst_conv = np.inf, np.inf
    for _ in range(50):
        r = witnesses.chsh19_witness(spaces.random_polygon(rng), spaces.random_polygon(rng))
        worst19 = min(worst19, r.ratio_bound)
        low19 += r.ratio_bound < 19 / 18 - 1e-9
    for _ in range(50):
        c = witnesses.linf2_convexity_witness(spaces.random_polygon(rng))
        worst_conv = min(worst_conv, c.ratio)
        low_conv += c.ratio < math.sqrt(2) - 1e-6
    checks = [
        (f"19/18 witness >= 19/18 on 50 polygon pairs (min {worst19:.9g})", low19 == 0),
        (f"linf(2) convexity witness >= sqrt2 on 50 polygons (min {worst_conv:.9g})", low_conv == 0),
    ]
    report(4, "universal gap evidence", checks)


def test_criterion_5_quantum():
    t0 = time.perf_counter()
    rng = philox(5)
    shapes = [(2, 2), (2, 3), (3, 2), (3, 3)]
    recon_bad = order_bad = 0
    worst = 0.0
    for i in range(500):
        n, m = shapes[i % 4]
        z = quantum.gue_tensor(n, m, rng)
        d = quantum.pi_upper_decomposition(z)
        rel = d.reconstruction_error / np.abs(z.operator()).max()
        worst = max(worst, rel)
        recon_bad += rel > 1e-9
        e = quantum.epsilon_interval(z, "s1", seed=i)
        p = quantum.pi_interval(z, "s1", seed=i, eps=e)
        order_bad += not (e.lower <= e.upper + 1e-9 and e.upper <= p.upper + 1e-9
                          and p.lower <= p.upper + 1e-9)
    reps = mc.quantum_ratio_scaling([2, 3, 4], samples=100, seed=0)
    meds = [r.estimate for r in reps[:-1]]
    checks = [
        (f"decomposition reconstruction <= 1e-9 relative on 500 samples (max {worst:.2g})", recon_bad == 0),
        (f"eps_lo <= eps_hi <= pi_hi and pi_lo <= pi_hi on 500 samples ({order_bad} failures)",
         order_bad == 0),
        (f"ratio medians strictly increase over n = 2, 3, 4 ({', '.join(f'{v:.4f}' for v in meds)})",
         reps[-1].passed and all(r.passed for r in reps)),
    ]
    report(5, "quantum suite", checks, time.perf_counter() - t0, 60)


def test_criterion_6_monte_carlo():
    t0 = time.perf_counter()
    op = mc.gue_opnorm_scaling([50], samples=500, seed=0)[0]
    ell = mc.ell_norm_estimate(spaces.l2(2), np.eye(2), samples=100_000, seed=0)
    target = math.sqrt(math.pi / 2)
    one_sided = [mc.chevet_epsilon_check(n, m, samples=50, seed=0) for n, m in [(2, 2), (2, 3), (3, 3)]]
    one_sided += [r for r in mc.quantum_ratio_scaling([2, 3], samples=50, seed=1) if r.sided == "upper"]
    checks = [
        (f"E|GUE_50|_inf within 12% of 2 sqrt(50) (est {op.estimate:.5g})",
         abs(op.estimate / (2 * math.sqrt(50)) - 1) <= 0.12),
        (f"ell(L2(2), I) within 2% of sqrt(pi/2) (est {ell.estimate:.5g})",
         abs(ell.estimate / target - 1) <= 0.02),
        (f"one-sided bounds hold ({sum(r.passed for r in one_sided)}/{len(one_sided)})",
         all(r.passed for r in one_sided)),
    ]
    report(6, "Monte Carlo suite", checks, time.perf_counter() - t0, 120)


def test_criterion_7_l1_search():
    bad = []
    vals = []
    for n in range(2, 7):
        res = rho_search(spaces.l1(n), spaces.l1(n), seed=0)
        cap = witnesses.projection_constant_l1(n)
        vals.append(f"n={n}: {res.ratio:.4f} in [{0.5 * math.sqrt(n):.4f}, {cap:.4f}]")
        if not 0.5 * math.sqrt(n) <= res.ratio <= cap + 1e-9:
            bad.append(n)
    report(7, "l1(n) x l1(n) search between sqrt(n)/2 and the projection constant",
           [("; ".join(vals), not bad)])
