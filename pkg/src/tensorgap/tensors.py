"""Injective and projective norms of tensors z in X (x) Y.

A tensor is its coefficient matrix Z (n x m) in the coordinates of X and Y,
z = sum_ij Z[i, j] e_i (x) f_j.  Polytopal pairs are solved exactly (vertex
enumeration for the injective norm, an LP over product vertices for the
projective norm).  Pairs of Schatten spaces return certified intervals.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import quantum
from .certified import CertifiedInterval
from .config import BUDGET, TOL
from .errors import (
    DimensionMismatch,
    NotContraction,
    UnsupportedPair,
    ValidationError,
    VertexBudgetExceeded,
    ZeroTensor,
)
from .linalg import LpProblem, lp_solve, nuclear_norm, spectral_norm
from .spaces import (
    SCHATTEN,
    Kind,
    Space,
    ball_vertex_list,
    dual_space,
    dual_vertex_list,
    half_vertices,
    norms,
)


@dataclass(frozen=True, eq=False)
class Tensor:
    x_space: Space
    y_space: Space
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float)
        if c.ndim == 1 and self.x_space.ambient_dim == 1:
            c = c.reshape(1, -1)
        shape = (self.x_space.ambient_dim, self.y_space.ambient_dim)
        if c.shape != shape:
            raise DimensionMismatch(f"coeffs shape {c.shape}, expected {shape}")
        if not np.all(np.isfinite(c)):
            raise ValidationError("non-finite coefficient")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def product(cls, x_space, y_space, x, y) -> "Tensor":
        return cls(x_space, y_space, np.outer(x, y))

    def flip(self) -> "Tensor":
        return Tensor(self.y_space, self.x_space, self.coeffs.T)

    def scaled(self, t: float) -> "Tensor":
        return Tensor(self.x_space, self.y_space, t * self.coeffs)

    def __add__(self, other: "Tensor") -> "Tensor":
        if self.x_space != other.x_space or self.y_space != other.y_space:
            raise DimensionMismatch("tensors live in different spaces")
        return Tensor(self.x_space, self.y_space, self.coeffs + other.coeffs)

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def to_json(self) -> dict:
        return {"x_space": self.x_space.to_json(), "y_space": self.y_space.to_json(),
                "coeffs": self.coeffs.tolist()}

    @classmethod
    def from_json(cls, obj) -> "Tensor":
        if not isinstance(obj, dict) or not {"x_space", "y_space", "coeffs"} <= set(obj):
            raise ValidationError("tensor needs x_space, y_space and coeffs")
        return cls(Space.from_json(obj["x_space"]), Space.from_json(obj["y_space"]),
                   np.asarray(obj["coeffs"], float))


def _quantum(z: Tensor):
    k = z.x_space.kind
    if z.y_space.kind is not k:
        raise UnsupportedPair("mixed Schatten pairs are not supported")
    kind = "s1" if k is Kind.SCHATTEN1 else "sinf"
    return quantum.QuantumTensor(z.x_space.dim, z.y_space.dim, z.coeffs), kind


def _is_schatten_pair(z):
    return z.x_space.kind in SCHATTEN and z.y_space.kind in SCHATTEN


def _enumerable(space: Space) -> bool:
    return space.is_polytopal


def _pair_name(z):
    return f"{z.x_space.kind.value} x {z.y_space.kind.value}"


# -- injective ----------------------------------------------------------------

def injective_witness(z: Tensor):
    """Exact injective norm with an attaining pair (value, x*, y*).

    Requires one enumerable factor; the other factor needs only a computable
    norm.  Ties go to the lowest vertex index.
    """
    x, y = z.x_space, z.y_space
    if _enumerable(x):
        d = dual_vertex_list(x)
        _vertex_budget(len(d), _vertex_count(y))
        vals = norms(y, d @ z.coeffs)
        i = int(np.argmax(vals))
        xs = d[i]
        ys = _dual_attainer(y, z.coeffs.T @ xs)
        return float(vals[i]), xs, ys
    if _enumerable(y):
        v, ys, xs = injective_witness(z.flip())
        return v, xs, ys
    if x.kind is Kind.L2 and y.kind is Kind.L2:
        u, s, vt = np.linalg.svd(z.coeffs)
        return float(s[0]), u[:, 0], vt[0]
    raise UnsupportedPair(f"injective norm not available for {_pair_name(z)}")


def _vertex_count(space):
    if space.kind is Kind.LINF:
        return 2 ** min(space.dim, 62)
    if space.kind is Kind.L1:
        return 2 * space.dim
    if space.kind is Kind.POLYTOPE:
        return len(space.polar) if space.polar is not None else len(space.vertices)
    return 1


def _vertex_budget(a, b):
    if a * b > BUDGET.max_vertex_pairs:
        raise VertexBudgetExceeded(f"{a} x {b} vertex pairs exceed budget {BUDGET.max_vertex_pairs}")


def _dual_attainer(space: Space, f):
    """A point of the dual unit ball attaining the norm of f."""
    if space.is_polytopal:
        d = dual_vertex_list(space)
        return d[int(np.argmax(d @ f))]
    if space.kind is Kind.L2:
        n = np.linalg.norm(f)
        return f / n if n > 0 else np.zeros_like(f)
    from .hermitian import herm_coords, herm_from_coords, herm_eigh
    a = herm_from_coords(f)
    w, v = herm_eigh(a)
    if space.kind is Kind.SCHATTEN1:
        s = np.where(w >= 0, 1.0, -1.0)
        return herm_coords((v * s) @ v.conj().T)
    i = int(np.argmax(np.abs(w)))
    return herm_coords(np.sign(w[i] or 1.0) * np.outer(v[:, i], v[:, i].conj()))


def injective_norm(z: Tensor):
    if _is_schatten_pair(z):
        qz, kind = _quantum(z)
        return quantum.epsilon_interval(qz, kind)
    if z.x_space.kind is Kind.L2 and z.y_space.kind is Kind.L2:
        return spectral_norm(z.coeffs)
    return injective_witness(z)[0]


# -- projective ---------------------------------------------------------------

@dataclass(frozen=True)
class ProjectiveLp:
    value: float
    weights: np.ndarray
    x_vertices: np.ndarray
    y_vertices: np.ndarray
    dual: np.ndarray  # W with <W, z> = value and <W, v (x) w> <= 1 for all vertex pairs


def projective_lp(z: Tensor) -> ProjectiveLp:
    """min sum lambda_ij s.t. sum lambda_ij v_i (x) w_j = Z, lambda >= 0.

    v runs over all vertices of B_X and w over one vertex of each antipodal
    pair of B_Y, which suffices since -v is also a vertex of B_X.
    """
    vx = ball_vertex_list(z.x_space)
    vy = half_vertices(ball_vertex_list(z.y_space))
    nv = len(vx) * len(vy)
    if nv > BUDGET.max_lp_vars:
        raise VertexBudgetExceeded(f"{nv} LP variables exceed budget {BUDGET.max_lp_vars}")
    cols = np.einsum("ia,jb->ijab", vx, vy).reshape(nv, -1)
    res = lp_solve(LpProblem(np.ones(nv), cols.T, z.coeffs.ravel()))
    w = np.asarray(res.duals).reshape(z.coeffs.shape)
    return ProjectiveLp(res.value, res.x.reshape(len(vx), len(vy)), vx, vy, w)


def projective_norm(z: Tensor):
    x, y = z.x_space, z.y_space
    if _is_schatten_pair(z):
        qz, kind = _quantum(z)
        return quantum.pi_interval(qz, kind)
    if x.kind is Kind.L1:
        return float(norms(y, z.coeffs).sum())
    if y.kind is Kind.L1:
        return float(norms(x, z.coeffs.T).sum())
    if x.kind is Kind.L2 and y.kind is Kind.L2:
        return nuclear_norm(z.coeffs)
    if x.is_polytopal and y.is_polytopal:
        if z.is_zero():
            return 0.0
        return projective_lp(z).value
    raise UnsupportedPair(f"projective norm not available for {_pair_name(z)}")


# -- ratios -------------------------------------------------------------------

def ratio_witness(z: Tensor):
    """projective / injective norm of z; a lower bound on rho(X, Y)."""
    if z.is_zero() or np.abs(z.coeffs).max() <= 1e-300:
        raise ZeroTensor("ratio of the zero tensor is undefined")
    p, e = projective_norm(z), injective_norm(z)
    if isinstance(p, CertifiedInterval):
        lo = p.lower / e.upper
        hi = p.upper / e.lower if e.lower > 0 else np.inf
        return CertifiedInterval(lo, max(hi, lo), {"tag": "pi-lower/eps-upper",
                                                   "pi": p.to_json(), "eps": e.to_json()},
                                 {"tag": "pi-upper/eps-lower"})
    return p / e


def _operator_norm(m: np.ndarray, src: Space, dst: Space) -> float:
    """Norm of the linear map with matrix m (dst coords x src coords)."""
    t = Tensor(dual_space(src), dst, m.T)
    val = injective_norm(t)
    return val.upper if isinstance(val, CertifiedInterval) else val


def trace_ratio_bound(u, v, x_space: Space, y_space: Space) -> float:
    """tr(vu) for contractions u: X -> Y* and v: Y* -> X; a lower bound on rho(X, Y).

    ``u`` is a (dim Y) x (dim X) matrix and ``v`` a (dim X) x (dim Y) matrix.
    """
    u = np.atleast_2d(np.asarray(u, float))
    v = np.atleast_2d(np.asarray(v, float))
    n, m = x_space.ambient_dim, y_space.ambient_dim
    if u.shape != (m, n) or v.shape != (n, m):
        raise DimensionMismatch(f"u must be {m}x{n} and v {n}x{m}")
    ys = dual_space(y_space)
    nu = _operator_norm(u, x_space, ys)
    if nu > 1 + 1e-9:
        raise NotContraction("u", nu)
    nv = _operator_norm(v, ys, x_space)
    if nv > 1 + 1e-9:
        raise NotContraction("v", nv)
    return float(np.trace(v @ u))


# -- heuristic search ---------------------------------------------------------

@dataclass(frozen=True)
class RhoSearchResult:
    ratio: float
    tensor: Tensor
    iterations: int
    history: tuple


def _exact_supported(x: Space, y: Space) -> bool:
    if x.kind in SCHATTEN or y.kind in SCHATTEN:
        return x.kind is Kind.L1 or y.kind is Kind.L1
    if x.is_polytopal or y.is_polytopal:
        return True
    return x.kind is Kind.L2 and y.kind is Kind.L2


def _alternate(z: Tensor):
    """One dual-witness step: z -> W (pi LP dual) -> z' (pi LP dual on X* (x) Y*).

    z' maximizes W over the injective unit ball, so it tends to have a large
    pi/eps ratio when W does.
    """
    w = projective_lp(z).dual
    wd = Tensor(dual_space(z.x_space), dual_space(z.y_space), w)
    return projective_lp(wd).dual


def rho_search(x_space: Space, y_space: Space, seed: int = 0,
               iterations: int = 200) -> RhoSearchResult:
    """Heuristic lower bound on rho(X, Y) by randomized local search.

    Candidate t depends only on the seed and the best tensor found before it,
    so the running best is nondecreasing in ``iterations``.  Never a
    certificate for an upper bound.
    """
    if not _exact_supported(x_space, y_space):
        raise UnsupportedPair(f"rho_search needs an exact pair, got "
                              f"{x_space.kind.value} x {y_space.kind.value}")
    if iterations < 1:
        raise ValidationError("iterations must be positive")
    n, m = x_space.ambient_dim, y_space.ambient_dim
    rng = np.random.Generator(np.random.Philox(seed))
    use_lp = x_space.is_polytopal and y_space.is_polytopal
    if use_lp:
        try:
            dual_space(x_space), dual_space(y_space)
            _alternate(Tensor(x_space, y_space, np.eye(n, m) + 1e-3))
        except Exception:
            use_lp = False

    def score(c):
        if not np.any(c):
            return -np.inf, None
        t = Tensor(x_space, y_space, c)
        e = injective_norm(t)
        t = t.scaled(1.0 / e)
        return projective_norm(t) / injective_norm(t), t

    best, best_t, hist = -np.inf, None, []
    for it in range(iterations):
        noise = rng.standard_normal((n, m))
        if best_t is None or it % 10 == 0:
            cand = noise
        else:
            step = 0.5 * 0.5 ** ((it % 40) / 5.0)
            cand = best_t.coeffs + step * noise / np.sqrt(n * m)
        cands = [cand]
        if use_lp and it % 2 == 1:
            base = best_t.coeffs if best_t is not None else cand
            cands.append(_alternate(Tensor(x_space, y_space, base + 0.05 * noise)))
        for c in cands:
            r, t = score(c)
            if r > best:
                best, best_t = r, t
        hist.append(best)
    return RhoSearchResult(float(best), best_t, iterations, tuple(hist))
