"""Finite-dimensional normed spaces: norms, dual norms, unit-ball vertices.

A ``Space`` is one of

* ``l1``, ``l2``, ``linf`` on R^dim,
* ``polytope``: R^dim with a centrally symmetric polytopal unit ball given
  by its vertices,
* ``schatten1`` / ``schatteninf``: k x k Hermitian matrices (dim = k) with the
  trace / operator norm, in coordinates of the Hilbert-Schmidt orthonormal
  basis of :mod:`tensorgap.hermitian` (ambient dimension k*k).

Polytope spaces carry their polar vertices, computed once at construction.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .config import BUDGET, TOL
from .errors import (
    DimensionMismatch,
    DimensionTooLarge,
    UnsupportedKind,
    ValidationError,
)
from .hermitian import HermitianMatrix, herm_eigvalsh, herm_from_coords
from .linalg import (
    LpProblem,
    check_symmetric,
    lp_solve,
    polytope_dual_ball,
    prune_to_extreme,
)


class Kind(str, Enum):
    L1 = "l1"
    L2 = "l2"
    LINF = "linf"
    POLYTOPE = "polytope"
    SCHATTEN1 = "schatten1"
    SCHATTENINF = "schatteninf"


POLYTOPAL = (Kind.L1, Kind.LINF, Kind.POLYTOPE)
SCHATTEN = (Kind.SCHATTEN1, Kind.SCHATTENINF)

_DUAL_KIND = {
    Kind.L1: Kind.LINF,
    Kind.LINF: Kind.L1,
    Kind.L2: Kind.L2,
    Kind.SCHATTEN1: Kind.SCHATTENINF,
    Kind.SCHATTENINF: Kind.SCHATTEN1,
}


def _snap(a, tol=1e-12):
    a = np.where(np.abs(a) < tol, 0.0, a)
    return a


@dataclass(frozen=True, eq=False)
class Space:
    kind: Kind
    dim: int
    vertices: Optional[np.ndarray] = None
    polar: Optional[np.ndarray] = None

    def __post_init__(self):
        kind = Kind(self.kind)
        object.__setattr__(self, "kind", kind)
        if int(self.dim) < 1:
            raise ValidationError("dim must be at least 1")
        object.__setattr__(self, "dim", int(self.dim))
        if kind is not Kind.POLYTOPE:
            if self.vertices is not None:
                raise ValidationError("vertices are only allowed for polytope spaces")
            return
        if self.vertices is None:
            raise ValidationError("polytope space needs vertices")
        v = np.atleast_2d(np.asarray(self.vertices, float))
        if v.shape[1] != self.dim:
            raise DimensionMismatch(f"vertices have dimension {v.shape[1]}, space {self.dim}")
        if not np.all(np.isfinite(v)):
            raise ValidationError("non-finite vertex")
        if self.dim <= BUDGET.max_ball_dim:
            v = prune_to_extreme(v)
            polar = (polytope_dual_ball(v, pruned=True) if self.polar is None
                     else np.asarray(self.polar, float))
        else:
            if np.linalg.matrix_rank(v) < self.dim:
                raise ValidationError("vertices do not span the space")
            v = prune_to_extreme(v)
            check_symmetric(v)
            polar = None
        v = _snap(v)
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)
        if polar is not None:
            polar = _snap(polar)
            polar.setflags(write=False)
        object.__setattr__(self, "polar", polar)

    @property
    def ambient_dim(self) -> int:
        return self.dim * self.dim if self.kind in SCHATTEN else self.dim

    @property
    def is_polytopal(self) -> bool:
        return self.kind in POLYTOPAL

    def __eq__(self, other):
        if not isinstance(other, Space):
            return NotImplemented
        if (self.kind, self.dim) != (other.kind, other.dim):
            return False
        if self.kind is Kind.POLYTOPE:
            a, b = self.vertices, other.vertices
            return a.shape == b.shape and all(
                np.any(np.abs(b - v).max(axis=1) <= 1e-9) for v in a)
        return True

    def __repr__(self):
        if self.kind is Kind.POLYTOPE:
            return f"Space(polytope, dim={self.dim}, {len(self.vertices)} vertices)"
        return f"Space({self.kind.value}, dim={self.dim})"

    def to_json(self) -> dict:
        out = {"kind": self.kind.value, "dim": self.dim}
        if self.kind is Kind.POLYTOPE:
            out["vertices"] = self.vertices.tolist()
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Space":
        if not isinstance(obj, dict) or "kind" not in obj:
            raise ValidationError("space must be an object with a 'kind' field")
        try:
            kind = Kind(obj["kind"])
        except ValueError:
            raise ValidationError(f"unknown space kind {obj['kind']!r}") from None
        if kind is Kind.POLYTOPE:
            verts = np.asarray(obj.get("vertices"), float)
            dim = obj.get("dim", verts.shape[-1] if verts.ndim == 2 else None)
            return cls(kind, dim, verts)
        if "dim" not in obj:
            raise ValidationError("space needs a 'dim' field")
        return cls(kind, obj["dim"])


# -- constructors -----------------------------------------------------------

def l1(n): return Space(Kind.L1, n)
def l2(n): return Space(Kind.L2, n)
def linf(n): return Space(Kind.LINF, n)
def schatten1(k): return Space(Kind.SCHATTEN1, k)
def schatteninf(k): return Space(Kind.SCHATTENINF, k)


def polytope(vertices) -> Space:
    v = np.atleast_2d(np.asarray(vertices, float))
    return Space(Kind.POLYTOPE, v.shape[1], v)


def hexagon() -> Space:
    """The hexagon (+-1,0), (0,+-1), +-(2/3,2/3)."""
    t = 2 / 3
    return polytope([[1, 0], [-1, 0], [0, 1], [0, -1], [t, t], [-t, -t]])


def regular_polygon(k: int) -> Space:
    """Regular polygon with 2k vertices on the unit circle (k antipodal pairs)."""
    ang = np.pi * np.arange(k) / k
    half = np.column_stack([np.cos(ang), np.sin(ang)])
    return polytope(np.vstack([half, -half]))


def random_polygon(rng, pairs=None) -> Space:
    """Random centrally symmetric polygon with 3..8 antipodal vertex pairs."""
    if pairs is None:
        pairs = int(rng.integers(3, 9))
    while True:
        ang = np.sort(rng.uniform(0, np.pi, pairs))
        rad = rng.uniform(0.5, 1.5, pairs)
        half = np.column_stack([rad * np.cos(ang), rad * np.sin(ang)])
        pts = np.vstack([half, -half])
        if np.linalg.matrix_rank(pts) == 2:
            return polytope(pts)


# -- norms -----------------------------------------------------------------

def _as_coords(space: Space, x) -> np.ndarray:
    if isinstance(x, HermitianMatrix):
        if space.kind not in SCHATTEN:
            raise DimensionMismatch("Hermitian matrix given for a vector space")
        if x.k != space.dim:
            raise DimensionMismatch(f"matrix size {x.k}, space expects {space.dim}")
        return x.coords()
    x = np.asarray(x, float)
    if x.shape[-1] != space.ambient_dim:
        raise DimensionMismatch(
            f"vector has length {x.shape[-1]}, space ambient dimension is {space.ambient_dim}")
    return x


def _spectra(space, x):
    return herm_eigvalsh(herm_from_coords(x))


def norms(space: Space, x) -> np.ndarray:
    """Row-wise norms of a 2-d array of coordinate vectors."""
    x = np.atleast_2d(_as_coords(space, x))
    k = space.kind
    if k is Kind.L1:
        return np.abs(x).sum(axis=1)
    if k is Kind.L2:
        return np.linalg.norm(x, axis=1)
    if k is Kind.LINF:
        return np.abs(x).max(axis=1)
    if k is Kind.POLYTOPE:
        if space.polar is not None:
            return np.maximum((x @ space.polar.T).max(axis=1), 0.0)
        return np.array([gauge_lp(space.vertices, row) for row in x])
    ev = _spectra(space, x)
    if k is Kind.SCHATTEN1:
        return np.abs(ev).sum(axis=-1)
    return np.abs(ev).max(axis=-1)


def norm(space: Space, x) -> float:
    x = _as_coords(space, x)
    if x.ndim != 1:
        raise DimensionMismatch("norm expects a single vector")
    return float(norms(space, x)[0])


def gauge_lp(vertices, x) -> float:
    """min t with x in t conv(vertices), for a symmetric vertex set, by LP."""
    v = np.asarray(vertices, float)
    res = lp_solve(LpProblem(np.ones(len(v)), v.T, np.asarray(x, float)))
    return res.value


def dual_norms(space: Space, f) -> np.ndarray:
    f = np.atleast_2d(_as_coords(space, f))
    k = space.kind
    if k is Kind.POLYTOPE:
        return np.maximum((f @ space.vertices.T).max(axis=1), 0.0)
    return norms(dual_space(space), f)


def dual_norm(space: Space, f) -> float:
    """max <f, x> over the unit ball of ``space``."""
    f = _as_coords(space, f)
    if f.ndim != 1:
        raise DimensionMismatch("dual_norm expects a single functional")
    return float(dual_norms(space, f)[0])


def dual_space(space: Space) -> Space:
    if space.kind is Kind.POLYTOPE:
        if space.polar is None:
            raise DimensionTooLarge(
                f"polar of a {space.dim}-dimensional polytope exceeds the dimension cap "
                f"{BUDGET.max_ball_dim}")
        return Space(Kind.POLYTOPE, space.dim, space.polar, polar=space.vertices)
    return Space(_DUAL_KIND[space.kind], space.dim)


def ball_vertex_list(space: Space) -> np.ndarray:
    """Extreme points of the closed unit ball (polytopal kinds only)."""
    k, n = space.kind, space.dim
    if k is Kind.L1:
        out = np.zeros((2 * n, n))
        for i in range(n):
            out[2 * i, i] = 1.0
            out[2 * i + 1, i] = -1.0
        return out
    if k is Kind.LINF:
        if n > BUDGET.max_linf_vertex_dim:
            raise DimensionTooLarge(
                f"linf({n}) has 2^{n} vertices; cap is dim {BUDGET.max_linf_vertex_dim}")
        return np.array(list(itertools.product([1.0, -1.0], repeat=n)))
    if k is Kind.POLYTOPE:
        return np.array(space.vertices)
    raise UnsupportedKind(f"{k.value} has a non-polytopal unit ball")


def dual_vertex_list(space: Space) -> np.ndarray:
    if space.kind is Kind.POLYTOPE:
        if space.polar is None:
            raise DimensionTooLarge("polar vertices not available above the dimension cap")
        return np.array(space.polar)
    return ball_vertex_list(dual_space(space))


def half_vertices(vertices) -> np.ndarray:
    """One representative of each antipodal pair +-v (first nonzero entry > 0)."""
    v = np.asarray(vertices, float)
    keep = []
    for row in v:
        nz = np.nonzero(np.abs(row) > TOL.eq)[0]
        if nz.size and row[nz[0]] > 0:
            keep.append(row)
    return np.array(keep).reshape(-1, v.shape[1])
