"""Desk-scale Monte Carlo estimates for Gaussian random matrices and tensors.

Every estimator draws from ``numpy.random.Philox`` keyed by (seed, size), so a
report depends only on its arguments.  Gaussian Hermitian matrices have
i.i.d. standard normal coordinates in the Hilbert-Schmidt orthonormal basis:
diagonal entries N(0, 1), off-diagonal real and imaginary parts N(0, 1/2).
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .errors import ValidationError
from .hermitian import herm_eigvalsh
from .quantum import QuantumTensor, epsilon_interval, pi_lower_bound_trace
from .spaces import Kind, Space, norms

CSV_COLUMNS = ("quantity", "k", "samples", "seed", "estimate", "stderr", "target", "pass")


@dataclass(frozen=True)
class McReport:
    quantity: str
    k: int
    samples: int
    seed: int
    estimate: float
    stderr: float
    target: float
    tolerance: float
    sided: str  # "two-sided", "upper" or "trend"
    passed: bool
    note: str = ""

    def row(self) -> dict:
        return {"quantity": self.quantity, "k": self.k, "samples": self.samples,
                "seed": self.seed, "estimate": self.estimate, "stderr": self.stderr,
                "target": self.target, "pass": self.passed}


def _rng(seed, *key):
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), *map(int, key)])))


def _mean_se(x):
    x = np.asarray(x, float)
    se = float(x.std(ddof=1) / math.sqrt(len(x))) if len(x) > 1 else 0.0
    return float(x.mean()), se


def _two_sided(quantity, k, samples, seed, vals, target, tol, note=""):
    est, se = _mean_se(vals)
    ok = abs(est - target) / abs(target) <= tol
    return McReport(quantity, k, samples, seed, est, se, target, tol, "two-sided", bool(ok), note)


def _upper(quantity, k, samples, seed, vals, bound, note=""):
    est, se = _mean_se(vals)
    ok = est <= bound + 3 * se
    return McReport(quantity, k, samples, seed, est, se, bound, 3.0, "upper", bool(ok), note)


def gue_batch(rng, count: int, k: int) -> np.ndarray:
    """``count`` Gaussian Hermitian k x k matrices, shape (count, k, k)."""
    a = rng.standard_normal((count, k, k)) + 1j * rng.standard_normal((count, k, k))
    h = (a + np.conj(np.swapaxes(a, 1, 2))) / 2
    # diagonal of (a + a^*)/2 is Re a_ii ~ N(0, 1); off-diagonal parts ~ N(0, 1/2)
    return h


def _gue_spectra(k, samples, seed):
    rng = _rng(seed, k)
    out = []
    for start in range(0, samples, 256):
        out.append(herm_eigvalsh(gue_batch(rng, min(256, samples - start), k)))
    return np.concatenate(out)


def _check(samples, lo=2):
    if samples < lo:
        raise ValidationError(f"need at least {lo} samples")


def gue_opnorm_scaling(k_list, samples=500, seed=0, tol=0.12) -> list:
    """Mean operator norm against 2 sqrt(k); the relative tolerance applies at k >= 50."""
    _check(samples)
    out = []
    for k in k_list:
        if not 1 <= k <= 64:
            raise ValidationError("k must be in 1..64")
        vals = np.abs(_gue_spectra(k, samples, seed)).max(axis=1)
        if k == 1:
            out.append(_two_sided("gue_opnorm", k, samples, seed, vals, math.sqrt(2 / math.pi), tol,
                                  "half-normal mean"))
            continue
        rep = _two_sided("gue_opnorm", k, samples, seed, vals, 2 * math.sqrt(k), tol,
                         "asymptotic 2 sqrt(k)")
        if k < 50:
            rep = McReport(rep.quantity, k, samples, seed, rep.estimate, rep.stderr, rep.target,
                           tol, "trend", rep.estimate < rep.target, "below the asymptote for small k")
        out.append(rep)
    return out


def semicircle_trace_norm(k: float) -> float:
    """k E|lambda| for the semicircle on [-2 sqrt(k), 2 sqrt(k)]: 8 k^{3/2} / (3 pi)."""
    return 8 * k ** 1.5 / (3 * math.pi)


def gue_tracenorm_scaling(k_list, samples=500, seed=0) -> list:
    """Mean trace norm against the one-sided bound k^{3/2}."""
    _check(samples)
    out = []
    for k in k_list:
        if not 1 <= k <= 64:
            raise ValidationError("k must be in 1..64")
        vals = np.abs(_gue_spectra(k, samples, seed)).sum(axis=1)
        out.append(_upper("gue_tracenorm", k, samples, seed, vals, k ** 1.5,
                          f"refined target {semicircle_trace_norm(k):.6g}"))
    return out


def chevet_epsilon_check(n, m, samples=200, seed=0, restarts=4) -> McReport:
    """Mean see-saw lower bound of the S1 injective norm of a Gaussian tensor,
    against n^{3/2} sqrt(m) + m^{3/2} sqrt(n)."""
    if not (1 <= n <= 4 and 1 <= m <= 4):
        raise ValidationError("n, m must be in 1..4")
    _check(samples)
    rng = _rng(seed, n, m)
    vals = []
    for i in range(samples):
        z = QuantumTensor(n, m, rng.standard_normal((n * n, m * m)))
        vals.append(epsilon_interval(z, "s1", seed=i, restarts=restarts).lower)
    bound = n ** 1.5 * math.sqrt(m) + m ** 1.5 * math.sqrt(n)
    return _upper("chevet_epsilon", n * 10 + m, samples, seed, vals, bound,
                  "pre-constant chain; k encodes 10 n + m")


def ell_norm_estimate(space: Space, t, samples=100_000, seed=0, tol=0.02) -> McReport:
    """E |sum_i g_i T e_i|_X; targets known in closed form for identity maps."""
    t = np.atleast_2d(np.asarray(t, float))
    if t.shape[0] != space.ambient_dim:
        raise ValidationError("map must land in the space")
    _check(samples)
    rng = _rng(seed, space.ambient_dim, t.shape[1])
    vals = []
    for start in range(0, samples, 20_000):
        g = rng.standard_normal((min(20_000, samples - start), t.shape[1]))
        vals.append(norms(space, g @ t.T))
    vals = np.concatenate(vals)
    target = _ell_target(space, t)
    if target is None:
        est, se = _mean_se(vals)
        return McReport("ell_norm", space.dim, samples, seed, est, se, float("nan"), tol,
                        "two-sided", True, "no closed-form target")
    return _two_sided("ell_norm", space.dim, samples, seed, vals, target, tol)


def _ell_target(space, t) -> Optional[float]:
    n = space.dim
    if t.shape != (n, n) or not np.allclose(t, np.eye(n)):
        return None
    if space.kind is Kind.L2:
        return math.sqrt(2) * math.exp(math.lgamma((n + 1) / 2) - math.lgamma(n / 2))
    if space.kind is Kind.L1:
        return n * math.sqrt(2 / math.pi)
    if space.kind is Kind.LINF and n == 1:
        return math.sqrt(2 / math.pi)
    return None


def quantum_ratio_scaling(n_list, samples=100, seed=0) -> list:
    """Median of (certified pi lower bound) / (certified eps upper bound) for
    Gaussian tensors in Herm(n) (x) Herm(n); the last report checks strict growth."""
    _check(samples, 1)
    out, meds = [], []
    for n in n_list:
        if not 1 <= n <= 4:
            raise ValidationError("n must be in 1..4")
        rng = _rng(seed, n)
        vals = []
        for _ in range(samples):
            z = QuantumTensor(n, n, rng.standard_normal((n * n, n * n)))
            ev = np.abs(herm_eigvalsh(z.operator()))
            pi_lo = max(pi_lower_bound_trace(z), float(ev.sum()))
            eps_hi = min(float(ev.sum()),
                         n * float(np.linalg.svd(z.coeffs, compute_uv=False)[0]))
            vals.append(pi_lo / eps_hi)
        vals = np.array(vals)
        med = float(np.median(vals))
        _, se = _mean_se(vals)
        ok = bool(np.all(vals >= 1 - 1e-9) and np.all(vals <= n * n + 1e-7))
        meds.append(med)
        out.append(McReport("quantum_ratio", n, samples, seed, med, se, float(n * n), 0.0,
                            "upper", ok, "median; target is the dimension cap"))
    grows = all(b > a for a, b in zip(meds, meds[1:]))
    out.append(McReport("quantum_ratio_growth", max(n_list), samples, seed, meds[-1], 0.0,
                        meds[0], 0.0, "trend", grows, "strictly increasing medians"))
    return out


def to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        w.writerow(r.row())
    return buf.getvalue()


def to_json(reports) -> str:
    return json.dumps([asdict(r) for r in reports], indent=2)


def from_json(text) -> list:
    return [McReport(**d) for d in json.loads(text)]
