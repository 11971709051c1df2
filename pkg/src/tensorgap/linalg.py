"""Dense linear algebra and small exact optimization kernels.

Everything here works on plain numpy arrays. The LP solver is a two-phase
revised simplex with a lexicographic ratio test; polyhedral conversions use the double
description method and are capped in dimension (see ``config.BUDGET``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .config import BUDGET, TOL
from .errors import (
    LpStalled,
    DegenerateCone,
    DimensionMismatch,
    DimensionTooLarge,
    Infeasible,
    NotFullDimensional,
    NotSymmetric,
    Unbounded,
    ValidationError,
)


def _frozen(a, ndim=None):
    arr = np.array(a, dtype=float)
    if ndim is not None and arr.ndim != ndim:
        raise DimensionMismatch(f"expected a {ndim}-d array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("non-finite entries")
    arr.setflags(write=False)
    return arr


# ---------------------------------------------------------------------------
# Linear programming
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LpProblem:
    """minimize c.x  s.t.  A_eq x = b_eq,  x_i >= lower_i.

    ``lower`` entries may be ``None`` (or ``-inf``) for free variables; if
    ``lower`` is omitted every variable is nonnegative.
    """

    c: np.ndarray
    a_eq: np.ndarray
    b_eq: np.ndarray
    lower: Optional[Sequence[Optional[float]]] = None

    def __post_init__(self):
        c = _frozen(self.c, 1)
        a = _frozen(np.atleast_2d(self.a_eq) if np.size(self.a_eq) else
                    np.zeros((0, len(c))), 2)
        b = _frozen(self.b_eq, 1)
        if a.shape[1] != len(c):
            raise DimensionMismatch(
                f"constraint matrix has {a.shape[1]} columns, objective has {len(c)}")
        if a.shape[0] != len(b):
            raise DimensionMismatch("rhs length differs from constraint rows")
        if self.lower is not None and len(self.lower) != len(c):
            raise DimensionMismatch("lower bounds length differs from objective")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "a_eq", a)
        object.__setattr__(self, "b_eq", b)


@dataclass(frozen=True)
class LpResult:
    value: float
    x: np.ndarray
    duals: np.ndarray           # y with A^T y <= c on nonneg vars; value == b.y
    iterations: int


def _lex_leaving(xb, binv, direction, rows, tol):
    """Leaving row by the lexicographic ratio rule, which cannot cycle."""
    ratios = np.where(xb[rows] <= tol, 0.0, xb[rows]) / direction[rows]
    best = ratios.min()
    tied = np.nonzero(ratios <= best + tol * max(1.0, abs(best)))[0]
    if len(tied) == 1:
        return int(rows[tied[0]])
    rows = rows[tied]
    keys = np.column_stack([np.where(xb[rows] <= tol, 0.0, xb[rows]), binv[rows]]) / direction[rows, None]
    alive = np.arange(len(rows))
    for col in range(keys.shape[1]):
        vals = keys[alive, col]
        alive = alive[vals <= vals.min() + tol * max(1.0, abs(vals.min()))]
        if len(alive) == 1:
            break
    return int(rows[alive[0]])


def _pivots(a, b, c, basis, tol, cap):
    """Revised-simplex pivots on min c.x, a x = b, x >= 0.

    ``basis`` (list of column indices) is updated in place.  Entering column
    by the most negative reduced cost, leaving row by the lexicographic ratio
    test (finite with any entering rule).  Basic values, duals and reduced costs are recomputed from the
    basis inverse every step, so round-off does not accumulate.
    """
    iters = 0
    amax = float(np.abs(a).max(initial=0.0))
    cmax = float(np.abs(c).max(initial=0.0))
    while True:
        if iters > cap:
            raise LpStalled(f"no optimum after {iters} pivots")
        binv = np.linalg.inv(a[:, basis])
        xb = binv @ b
        xb[xb < 0] = np.where(xb[xb < 0] > -tol, 0.0, xb[xb < 0])
        y = binv.T @ c[basis]
        reduced = c - a.T @ y
        reduced[basis] = 0.0
        # reduced costs carry round-off proportional to the dual magnitude
        scale = max(1.0, cmax, amax * float(np.abs(y).max(initial=0.0)))
        candidates = np.nonzero(reduced < -tol * scale)[0]
        if candidates.size == 0:
            return iters
        col = int(candidates[np.argmin(reduced[candidates])])
        direction = binv @ a[:, col]
        rows = np.nonzero(direction > 1e-9 * max(1.0, float(np.abs(direction).max())))[0]
        if rows.size == 0:
            raise Unbounded("objective unbounded below")
        basis[_lex_leaving(xb, binv, direction, rows, tol)] = col
        iters += 1


def _standard_form_solve(a, b, c, tol):
    """min c.x, a x = b, x >= 0. Returns (x, basis, kept_rows, iterations)."""
    m, n = a.shape
    a = a.copy()
    b = b.copy()
    neg = b < 0
    a[neg] *= -1
    b[neg] *= -1
    zero_rows = np.all(np.abs(a) <= TOL.pivot, axis=1)
    if np.any(np.abs(b[zero_rows]) > tol):
        raise Infeasible("zero constraint row with nonzero rhs")
    keep = np.nonzero(~zero_rows)[0]
    a, b = a[keep], b[keep]
    m = len(keep)
    cap = 50 * (m + n) + 1000

    # phase 1: artificials n..n+m-1 with unit cost.  Rows that already own a
    # column with a single positive entry (a slack) start with that column.
    a1 = np.hstack([a, np.eye(m)])
    c1 = np.concatenate([np.zeros(n), np.ones(m)])
    basis = list(range(n, n + m))
    nonzero = np.abs(a) > TOL.pivot
    for j in np.nonzero(nonzero.sum(axis=0) == 1)[0]:
        i = int(np.argmax(nonzero[:, j]))
        if a[i, j] > 0 and basis[i] >= n:
            basis[i] = int(j)
    iters = 0
    if max(basis, default=0) >= n:
        iters = _pivots(a1, b, c1, basis, tol, cap)
        xb = np.linalg.solve(a1[:, basis], b)
        scale = max(1.0, float(np.abs(b).max(initial=0.0)))
        art = sum(v for j, v in zip(basis, xb) if j >= n)
        if art > 1e3 * tol * scale:
            raise Infeasible(f"phase-1 residual {art:.3e}")

    # drive zero-level artificials out of the basis; drop redundant rows
    row = 0
    while row < len(basis):
        if basis[row] >= n:
            inv_row = np.linalg.solve(a1[:, basis].T, np.eye(len(basis))[row])
            entries = inv_row @ a
            entries[[j for j in basis if j < n]] = 0.0
            nz = np.nonzero(np.abs(entries) > 1e-9)[0]
            if nz.size:
                basis[row] = int(nz[0])
            else:
                # row is a combination of the others: remove it with its artificial
                a1 = np.delete(a1, row, axis=0)
                a = np.delete(a, row, axis=0)
                b = np.delete(b, row)
                keep = np.delete(keep, row)
                del basis[row]
                # artificial columns keep their indices; only rows change
                continue
        row += 1

    # phase 2 on the original columns
    iters += _pivots(a, b, c, basis, tol, cap)
    x = np.zeros(n)
    if basis:
        x[basis] = np.maximum(np.linalg.solve(a[:, basis], b), 0.0)
    return x, basis, keep, iters


def lp_solve(problem: LpProblem, tol: float = TOL.feas) -> LpResult:
    """Solve an equality-form LP exactly up to floating point.

    Raises ``Infeasible`` or ``Unbounded``. The returned duals ``y`` satisfy
    ``value == b_eq . y`` at optimality.
    """
    c0, a0, b0 = problem.c, problem.a_eq, problem.b_eq
    n0 = len(c0)
    if problem.lower is None:
        free = np.zeros(n0, dtype=bool)
        shift = np.zeros(n0)
    else:
        lo = np.array([-np.inf if v is None else v for v in problem.lower], float)
        free = lo == -np.inf
        shift = np.where(free, 0.0, lo)
    # free variables become differences of two nonnegative copies
    cols = np.concatenate([np.arange(n0), np.nonzero(free)[0]])
    signs = np.concatenate([np.ones(n0), -np.ones(int(free.sum()))])
    a = a0[:, cols] * signs
    c = c0[cols] * signs
    b = b0 - a0 @ shift

    x_std, basis, keep, iters = _standard_form_solve(a, b, c, tol)

    # duals from the final (square) basis
    if len(basis):
        y_kept = np.linalg.solve(a[keep][:, basis].T, c[basis])
    else:
        y_kept = np.zeros(0)
    y = np.zeros(len(b0))
    y[keep] = y_kept

    x = shift.copy()
    np.add.at(x, cols, signs * x_std)
    resid = np.abs(a0 @ x - b0).max(initial=0.0)
    if resid > 1e3 * tol * max(1.0, np.abs(b0).max(initial=0.0)):
        raise Infeasible(f"solution residual {resid:.3e} exceeds tolerance")
    return LpResult(value=float(c0 @ x), x=x, duals=y, iterations=iters)


def lp_feasible(a_eq, b_eq) -> Optional[np.ndarray]:
    """A nonnegative solution of ``a_eq x = b_eq`` or ``None``."""
    a_eq = np.atleast_2d(np.asarray(a_eq, float))
    try:
        return lp_solve(LpProblem(np.zeros(a_eq.shape[1]), a_eq, b_eq)).x
    except Infeasible:
        return None


def in_convex_hull(points, x) -> bool:
    points = np.asarray(points, float)
    a = np.vstack([points.T, np.ones(len(points))])
    b = np.append(np.asarray(x, float), 1.0)
    return lp_feasible(a, b) is not None


def in_cone(generators, x) -> bool:
    generators = np.asarray(generators, float)
    return lp_feasible(generators.T, np.asarray(x, float)) is not None


# ---------------------------------------------------------------------------
# Spectral kernels
# ---------------------------------------------------------------------------

def sym_eig(m):
    """Eigenvalues (descending) and orthonormal eigenvectors (columns)."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"square matrix required, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValidationError("non-finite entries")
    scale = max(1.0, float(np.abs(m).max(initial=0.0)))
    if np.abs(m - m.T).max(initial=0.0) > TOL.sym * scale:
        raise NotSymmetric("matrix is not symmetric")
    w, v = np.linalg.eigh((m + m.T) / 2)
    return w[::-1], v[:, ::-1]


def svd(m):
    """Singular values (descending) with factors ``u, s, vt``."""
    m = np.asarray(m, dtype=float)
    if not np.all(np.isfinite(m)):
        raise ValidationError("non-finite entries")
    u, s, vt = np.linalg.svd(m, full_matrices=False)
    return u, s, vt


def nuclear_norm(m) -> float:
    return float(svd(m)[1].sum())


def spectral_norm(m) -> float:
    s = svd(m)[1]
    return float(s[0]) if s.size else 0.0


# ---------------------------------------------------------------------------
# Polyhedral cones
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolyhedralConeRep:
    """A polyhedral cone by generators (rows) and optional inner facet normals."""

    dim: int
    generators: np.ndarray
    facets: Optional[np.ndarray] = field(default=None)

    def __post_init__(self):
        g = _frozen(np.atleast_2d(self.generators), 2)
        if g.shape[1] != self.dim:
            raise DimensionMismatch(f"generators have dimension {g.shape[1]}, cone {self.dim}")
        if np.any(np.abs(g).max(axis=1) <= TOL.eq):
            raise ValidationError("zero generator")
        object.__setattr__(self, "generators", g)
        if self.facets is not None:
            f = _frozen(np.atleast_2d(self.facets), 2)
            if f.shape[1] != self.dim:
                raise DimensionMismatch("facet dimension differs from cone dimension")
            if np.min(f @ g.T, initial=0.0) < -1e-7:
                raise ValidationError("a generator violates a facet inequality")
            object.__setattr__(self, "facets", f)

    def contains(self, x) -> bool:
        if self.facets is not None:
            x = np.asarray(x, float)
            scale = max(1.0, float(np.abs(x).max(initial=0.0)))
            return bool(np.all(self.facets @ x >= -1e-9 * scale))
        return in_cone(self.generators, x)


def _normalize_rows(r):
    return r / np.linalg.norm(r, axis=1, keepdims=True)


def dedupe_rows(rows, tol=TOL.eq):
    """Drop rows equal (within ``tol``, max-norm) to an earlier row."""
    rows = np.asarray(rows, float)
    kept = []
    for r in rows:
        if not any(np.abs(r - k).max() <= tol for k in kept):
            kept.append(r)
    return np.array(kept).reshape(-1, rows.shape[1])


def _sort_rows(r):
    key = np.round(r, 9)
    order = np.lexsort(key.T[::-1])
    return r[order]


def _double_description(a, tol=1e-9):
    """Extreme rays of the pointed cone {f : a f >= 0} (a of full column rank)."""
    k, d = a.shape
    an = a / np.linalg.norm(a, axis=1, keepdims=True)
    # initial simplicial cone on d independent rows, chosen greedily in order
    chosen = []
    for i in range(k):
        trial = chosen + [i]
        if np.linalg.matrix_rank(an[trial], tol=1e-10) == len(trial):
            chosen = trial
        if len(chosen) == d:
            break
    rays = np.linalg.inv(an[chosen]).T          # row r_j satisfies an[chosen] r_j = e_j
    rays = _normalize_rows(rays)
    processed = list(chosen)
    tight = np.abs(rays @ an[processed].T) <= tol

    for i in range(k):
        if i in chosen:
            continue
        s = rays @ an[i]
        pos = np.nonzero(s > tol)[0]
        neg = np.nonzero(s < -tol)[0]
        zer = np.nonzero(np.abs(s) <= tol)[0]
        new_rays, new_tight = [], []
        for p in pos:
            for q in neg:
                common = tight[p] & tight[q]
                if common.sum() < d - 2:
                    continue
                others = np.all(tight[:, common], axis=1)
                others[[p, q]] = False
                if others.any():
                    continue
                r = s[p] * rays[q] - s[q] * rays[p]
                r /= np.linalg.norm(r)
                new_rays.append(r)
                new_tight.append(np.append(common, True))
        keep = np.concatenate([pos, zer])
        zcol = np.zeros((len(rays), 1), bool)
        zcol[zer] = True
        tight = np.hstack([tight, zcol])[keep]
        rays = rays[keep]
        if new_rays:
            rays = np.vstack([rays, np.array(new_rays)])
            tight = np.vstack([tight, np.array(new_tight)])
        processed.append(i)
        if len(rays) == 0:
            break
    return rays


def cone_dualize(cone: PolyhedralConeRep) -> PolyhedralConeRep:
    """Dual cone {f : <f, g> >= 0 for all generators g}.

    The returned generators are the facet normals of ``cone``; its ``facets``
    are the extreme rays of ``cone`` (normalized).
    """
    d = cone.dim
    if d > BUDGET.max_cone_dim:
        raise DimensionTooLarge(f"cone dimension {d} exceeds {BUDGET.max_cone_dim}")
    g = dedupe_rows(_normalize_rows(cone.generators))
    if np.linalg.matrix_rank(g, tol=1e-10) < d:
        raise DegenerateCone("generators do not span the ambient space")
    if d == 1:
        signs = np.sign(g[:, 0])
        if np.all(signs > 0):
            rays = np.array([[1.0]])
        elif np.all(signs < 0):
            rays = np.array([[-1.0]])
        else:
            raise DegenerateCone("cone is a line; dual is {0}")
    else:
        rays = _double_description(g)
    if len(rays) == 0:
        raise DegenerateCone("dual cone is trivial")
    rays = _sort_rows(dedupe_rows(rays))
    # extreme generators of the input: tight dual rays span a hyperplane
    ext = []
    for v in g:
        t = rays[np.abs(rays @ v) <= 1e-9]
        if d == 1 or (len(t) and np.linalg.matrix_rank(t, tol=1e-9) == d - 1):
            ext.append(v)
    return PolyhedralConeRep(dim=d, generators=rays, facets=_sort_rows(np.array(ext)))


# ---------------------------------------------------------------------------
# Centrally symmetric polytopes
# ---------------------------------------------------------------------------

def prune_to_extreme(points, tol=TOL.eq):
    """Deduplicate and drop points lying in the convex hull of the others."""
    pts = dedupe_rows(points, tol)
    keep = []
    for i in range(len(pts)):
        others = np.delete(pts, i, axis=0)
        if len(others) == 0 or not in_convex_hull(others, pts[i]):
            keep.append(i)
    return pts[keep]


def check_symmetric(points, tol=TOL.eq):
    for v in points:
        if not np.any(np.abs(points + v).max(axis=1) <= tol):
            raise NotSymmetric(f"vertex set is not centrally symmetric (missing -{v})")


def polytope_dual_ball(vertices, pruned=False) -> np.ndarray:
    """Vertices of the polar {w : <w, v> <= 1} of a symmetric polytope.

    ``pruned=True`` skips deduplication and the extreme-point LP filter.
    """
    v = np.atleast_2d(np.asarray(vertices, float))
    d = v.shape[1]
    if d > BUDGET.max_ball_dim:
        raise DimensionTooLarge(f"ball dimension {d} exceeds {BUDGET.max_ball_dim}")
    if np.linalg.matrix_rank(v, tol=1e-10) < d:
        raise NotFullDimensional("vertices do not span the space")
    if not pruned:
        v = prune_to_extreme(v)
    check_symmetric(v)
    if d == 1:
        r = float(np.abs(v).max())
        return np.array([[1.0 / r], [-1.0 / r]])
    homog = np.hstack([-v, np.ones((len(v), 1))])
    rays = _double_description(homog / np.linalg.norm(homog, axis=1, keepdims=True))
    w = rays[:, :d] / rays[:, d:]
    w = _sort_rows(dedupe_rows(w))
    return np.where(np.abs(w) < 1e-12, 0.0, w)
