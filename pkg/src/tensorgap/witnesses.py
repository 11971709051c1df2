"""Explicit constructions exhibiting gaps between the injective and
projective norms."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NotTwoDimensional, UnsupportedKind, ValidationError
from .spaces import Kind, Space, ball_vertex_list, dual_norm, dual_vertex_list, l1, l2, linf, norm, norms
from .tensors import Tensor, injective_witness, projective_norm


@dataclass(frozen=True)
class AuerbachPair:
    space: Space
    e1: np.ndarray
    e2: np.ndarray
    e1s: np.ndarray
    e2s: np.ndarray

    def check(self, tol=1e-9):
        sp = self.space
        for v in (self.e1, self.e2):
            if abs(norm(sp, v) - 1) > tol:
                raise ValidationError("basis vector is not a unit vector")
        for f in (self.e1s, self.e2s):
            if abs(dual_norm(sp, f) - 1) > tol:
                raise ValidationError("functional is not of norm one")
        gram = np.array([[self.e1s @ self.e1, self.e1s @ self.e2],
                         [self.e2s @ self.e1, self.e2s @ self.e2]])
        if np.abs(gram - np.eye(2)).max() > tol:
            raise ValidationError("pair is not biorthogonal")
        if norm(sp, self.e1 + self.e2) > 1.5 + tol:
            raise ValidationError("|e1 + e2| exceeds 3/2")
        return self

    @property
    def sum_norm(self) -> float:
        return norm(self.space, self.e1 + self.e2)


def hexagon_auerbach(space: Space) -> AuerbachPair:
    """Biorthogonal unit pair with |e1 + e2| <= 3/2 in a planar polytopal space.

    The dual pair (f, g) maximizes |det(f, g)| over dual-ball vertices and
    (e1, e2) is the dual basis.  Among maximizing pairs, one already giving
    |e1 + e2| = 3/2 is preferred, then the lowest vertex indices.
    """
    if space.ambient_dim != 2 or space.kind in (Kind.SCHATTEN1, Kind.SCHATTENINF):
        raise NotTwoDimensional(f"need a 2-dimensional space, got {space!r}")
    if not space.is_polytopal:
        raise UnsupportedKind(f"{space.kind.value} has no finite dual vertex set")
    d = dual_vertex_list(space)
    dets = np.abs(d[:, 0][:, None] * d[:, 1][None, :] - d[:, 1][:, None] * d[:, 0][None, :])
    top = dets.max()
    best = None
    for i, j in itertools.combinations(range(len(d)), 2):
        if dets[i, j] < top - 1e-12 * max(top, 1.0):
            continue
        f = np.array([d[i], d[j]])
        e = np.linalg.inv(f)
        e1, e2 = e[:, 0], e[:, 1]
        e1s, e2s = d[i], d[j]
        if norm(space, e1 + e2) > 1.5 + 1e-12:
            e2, e2s = -e2, -e2s
        key = abs(norm(space, e1 + e2) - 1.5) > 1e-12
        if best is None or key < best[0]:
            best = (key, e1, e2, e1s, e2s)
        if not key:
            break
    _, e1, e2, e1s, e2s = best
    return AuerbachPair(space, e1, e2, e1s, e2s).check()


@dataclass(frozen=True)
class Chsh19Report:
    tensor: Tensor
    functional: np.ndarray  # coefficient matrix of w* in X* (x) Y* coordinates
    pairing: float
    functional_eps: float
    tensor_eps: float
    ratio_bound: float
    attaining: tuple  # dual pair attaining the injective norm of z

    def to_json(self) -> dict:
        return {"witness": "chsh19", "value": self.ratio_bound,
                "certificate": {"tensor": self.tensor.to_json(),
                                "functional": self.functional.tolist(),
                                "pairing": self.pairing,
                                "functional_eps": self.functional_eps,
                                "tensor_eps": self.tensor_eps,
                                "attaining_x": np.asarray(self.attaining[0]).tolist(),
                                "attaining_y": np.asarray(self.attaining[1]).tolist()}}


_Z19 = np.array([[5.0, 5.0], [5.0, -4.0]])
_W19 = np.array([[1.0, 1.0], [1.0, -1.0]])


def chsh19_witness(x_space: Space, y_space: Space) -> Chsh19Report:
    """Certified ratio w*(z) / (|w*|_eps |z|_eps) for the 5,5,5,-4 tensor."""
    ax, ay = hexagon_auerbach(x_space), hexagon_auerbach(y_space)
    bx = np.column_stack([ax.e1, ax.e2])
    by = np.column_stack([ay.e1, ay.e2])
    fx = np.vstack([ax.e1s, ax.e2s])
    fy = np.vstack([ay.e1s, ay.e2s])
    z = Tensor(x_space, y_space, bx @ _Z19 @ by.T)
    w = fx.T @ _W19 @ fy
    from .spaces import dual_space
    pairing = float((w * z.coeffs).sum())
    w_eps = injective_witness(Tensor(dual_space(x_space), dual_space(y_space), w))[0]
    z_eps, xs, ys = injective_witness(z)
    return Chsh19Report(z, w, pairing, w_eps, z_eps, pairing / (w_eps * z_eps), (xs, ys))


@dataclass(frozen=True)
class ConvexityWitness:
    y1: np.ndarray
    y2: np.ndarray
    ratio: float

    def to_json(self):
        return {"witness": "linf2-convexity", "value": self.ratio,
                "certificate": {"y1": self.y1.tolist(), "y2": self.y2.tolist()}}


def linf2_convexity_witness(y_space: Space) -> ConvexityWitness:
    """Maximize (|y1+y2| + |y1-y2|) / (2 max(|y1|, |y2|)).

    This is the projective/injective ratio of e1 (x) y1 + e2 (x) y2 in
    linf(2) (x) Y.  Candidates are unit-ball vertices and normalized
    midpoints of vertex pairs; the numerator is convex in each argument,
    so vertex pairs already reach the supremum.
    """
    if not y_space.is_polytopal:
        raise UnsupportedKind(f"{y_space.kind.value} is not polytopal")
    if y_space.dim < 2:
        raise ValidationError("need dimension at least 2")
    v = ball_vertex_list(y_space)
    mids = []
    for i, j in itertools.combinations(range(len(v)), 2):
        m = (v[i] + v[j]) / 2
        if np.abs(m).max() > 1e-12:
            mids.append(m)
    cand = np.vstack([v] + ([np.array(mids)] if mids else []))
    cand = cand / norms(y_space, cand)[:, None]
    s = norms(y_space, (cand[:, None, :] + cand[None, :, :]).reshape(-1, cand.shape[1]))
    d = norms(y_space, (cand[:, None, :] - cand[None, :, :]).reshape(-1, cand.shape[1]))
    r = (s + d) / 2
    k = int(np.argmax(r))
    i, j = divmod(k, len(cand))
    return ConvexityWitness(cand[i], cand[j], float(r[k]))


def rademacher_abs_mean(n: int) -> Fraction:
    """E|e_1 + ... + e_n| for independent random signs, exactly."""
    if n < 0:
        raise ValidationError("n must be nonnegative")
    tot = sum(math.comb(n, k) * abs(n - 2 * k) for k in range(n + 1))
    return Fraction(tot, 2 ** n)


def rademacher_abs_mean_enum(n: int) -> float:
    """Same mean by enumerating all 2^n sign vectors."""
    codes = np.arange(2 ** n, dtype=np.int64)
    ones = np.zeros_like(codes)
    for b in range(n):
        ones += (codes >> b) & 1
    return float(np.abs(n - 2 * ones).mean())


def projection_constant_l1(n: int, exact: bool = False):
    """n / E|sum of n random signs|, the 1-summing norm of the identity of l1(n)."""
    if not 1 <= n <= 30:
        raise ValidationError("n must be in 1..30")
    val = Fraction(n) / rademacher_abs_mean(n)
    return val if exact else float(val)


_KINDS = {"l1": l1, "l2": l2, "linf": linf}


def identity_witness(kind_pair, n: int) -> Tensor:
    """The n x n identity as a tensor over ``kind_pair``, e.g. ("l1", "l2")."""
    kx, ky = kind_pair
    try:
        return Tensor(_KINDS[kx](n), _KINDS[ky](n), np.eye(n))
    except KeyError:
        raise UnsupportedKind(f"identity witness needs l1/l2/linf kinds, got {kind_pair}") from None
