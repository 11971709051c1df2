"""Polyhedral general probabilistic theories and XOR games over composites.

A theory is a cone C in R^d, given by generators normalized so that the
unit effect u equals 1 on each of them, together with u.  The base norm has
unit ball conv(states and their negatives); its dual is the order-unit
norm with ball [-u, u].
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .config import BUDGET, TOL
from .errors import (
    BudgetExceeded,
    DegenerateCone,
    DimensionMismatch,
    InvalidGame,
    TensorGapError,
    UnsupportedKind,
    ValidationError,
)
from .linalg import LpProblem, PolyhedralConeRep, cone_dualize, dedupe_rows, in_cone, lp_solve, prune_to_extreme
from .spaces import Space, ball_vertex_list, dual_vertex_list, norm, polytope
from .tensors import Tensor, injective_witness


@dataclass(frozen=True, eq=False)
class Gpt:
    dim: int
    generators: np.ndarray
    unit: np.ndarray

    def __post_init__(self):
        d = int(self.dim)
        g = np.atleast_2d(np.asarray(self.generators, float))
        u = np.asarray(self.unit, float)
        if g.shape[1] != d or u.shape != (d,):
            raise DimensionMismatch("generators and unit must have length dim")
        if not (np.all(np.isfinite(g)) and np.all(np.isfinite(u))):
            raise ValidationError("non-finite data")
        ug = g @ u
        if np.any(ug <= TOL.eq):
            raise DegenerateCone("unit effect must be strictly positive on every generator")
        g = dedupe_rows(g / ug[:, None])
        if np.linalg.matrix_rank(g, tol=1e-10) < d:
            raise DegenerateCone("generators do not span the space")
        for i, row in enumerate(g):
            # salient: -g is never in the cone (u > 0 on the cone rules it out,
            # the LP check guards against sloppy input)
            if in_cone(np.delete(g, i, axis=0), -row) if len(g) > 1 else False:
                raise DegenerateCone("cone contains a line")
        g.setflags(write=False)
        u = u.copy()
        u.setflags(write=False)
        object.__setattr__(self, "dim", d)
        object.__setattr__(self, "generators", g)
        object.__setattr__(self, "unit", u)

    def cone(self) -> PolyhedralConeRep:
        return PolyhedralConeRep(self.dim, self.generators)

    def to_json(self) -> dict:
        return {"dim": self.dim, "generators": self.generators.tolist(), "unit": self.unit.tolist()}

    @classmethod
    def from_json(cls, obj) -> "Gpt":
        if isinstance(obj, dict) and "gpt" in obj:
            obj = obj["gpt"]
        try:
            return cls(obj["dim"], obj["generators"], obj["unit"])
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"bad gpt: missing or malformed field {exc}") from None


def classical(d: int) -> Gpt:
    if d < 1:
        raise ValidationError("d must be at least 1")
    return Gpt(d, np.eye(d), np.ones(d))


def centrally_symmetric(x_space: Space) -> Gpt:
    """Cone {(x, a) : a >= |x|} with unit (x, a) -> a."""
    if not x_space.is_polytopal:
        raise UnsupportedKind(f"{x_space.kind.value} ball has no finite vertex set")
    v = ball_vertex_list(x_space)
    n = x_space.dim
    gens = np.hstack([v, np.ones((len(v), 1))])
    unit = np.zeros(n + 1)
    unit[-1] = 1.0
    return Gpt(n + 1, gens, unit)


@dataclass(frozen=True)
class TwoIsomorphic:
    gpt: Gpt
    point: np.ndarray  # x with |x| = 1 = x*(x)
    functional: np.ndarray  # x*, |x*| = 1
    factor: float  # smallest t with B_X inside t B, at most 2


def _hyperplane_slice(vertices, f, level):
    """Vertices of conv(vertices) intersected with {f = level}."""
    h = vertices @ f - level
    pts = [v for v, s in zip(vertices, h) if abs(s) <= 1e-12]
    for i, j in itertools.combinations(range(len(vertices)), 2):
        if h[i] * h[j] < 0:
            t = h[i] / (h[i] - h[j])
            pts.append(vertices[i] + t * (vertices[j] - vertices[i]))
    return prune_to_extreme(dedupe_rows(np.array(pts)))


def two_isomorphic_base_norm(x_space: Space, functional=None) -> TwoIsomorphic:
    """Base-norm theory with B inside B_X inside 2B.

    States are F = {x in B_X : x*(x) = 1/2} and the unit is 2x*, for a norm
    one functional x* (default: first dual-ball vertex) attained at x.
    """
    if not x_space.is_polytopal or x_space.dim > 6:
        raise UnsupportedKind("need a polytopal space of dimension at most 6")
    verts = ball_vertex_list(x_space)
    if functional is None:
        fstar = dual_vertex_list(x_space)[0]
    else:
        fstar = np.asarray(functional, float)
        if fstar.shape != (x_space.dim,) or abs((verts @ fstar).max() - 1) > 1e-9:
            raise ValidationError("functional must have dual norm one")
    x = verts[int(np.argmax(verts @ fstar))]
    if x_space.dim == 1:
        states = np.array([x / 2])
    else:
        states = _hyperplane_slice(verts, fstar, 0.5)
    g = Gpt(x_space.dim, states, 2 * fstar)
    factor = max(base_norm(g, v) for v in verts)
    # B inside B_X: every state lies in the ball
    if np.max(_norms_of(x_space, g.generators)) > 1 + 1e-9 or factor > 2 + 1e-9:
        raise TensorGapError("containment B <= B_X <= 2B failed")
    return TwoIsomorphic(g, x, fstar, float(factor))


def _norms_of(space, pts):
    return np.array([norm(space, p) for p in pts])


# -- norms -------------------------------------------------------------------

def order_unit_norm(g: Gpt, f) -> float:
    """min t >= 0 with f in t[-u, u]; equals max |f(state)| over extreme states."""
    f = np.asarray(f, float)
    if f.shape != (g.dim,):
        raise DimensionMismatch(f"functional must have length {g.dim}")
    return float(np.abs(g.generators @ f).max())


def _base_norm_primal(gens, x):
    k = len(gens)
    a = np.hstack([gens.T, -gens.T])
    return lp_solve(LpProblem(np.ones(2 * k), a, x))


def _base_norm_dual(gens, x):
    """max f(x) s.t. -1 <= f(g) <= 1, f free, slacks s >= 0."""
    k, d = gens.shape
    a = np.block([[gens, np.eye(k), np.zeros((k, k))],
                  [-gens, np.zeros((k, k)), np.eye(k)]])
    c = np.concatenate([-x, np.zeros(2 * k)])
    lower = np.concatenate([np.full(d, -np.inf), np.zeros(2 * k)])
    res = lp_solve(LpProblem(c, a, np.ones(2 * k), lower))
    return -res.value, res.x[:d]


def base_norm(g: Gpt, x, check: bool = True) -> float:
    """min u(x+ + x-) over x = x+ - x- with x+- in the cone (strong duality checked)."""
    x = np.asarray(x, float)
    if x.shape != (g.dim,):
        raise DimensionMismatch(f"vector must have length {g.dim}")
    if not np.any(x):
        return 0.0
    p = _base_norm_primal(g.generators, x).value
    if check:
        d, _ = _base_norm_dual(g.generators, x)
        if abs(p - d) > 1e-8 * max(1.0, abs(p)):
            raise TensorGapError(f"base norm duality gap {p - d}")
    return float(p)


def base_norm_dual_witness(g: Gpt, x):
    """(value, f) with f in [-u, u] and f(x) = base norm of x."""
    return _base_norm_dual(g.generators, np.asarray(x, float))


def base_norm_space(g: Gpt) -> Space:
    """The base-norm space as a polytope with vertices +-states."""
    return polytope(np.vstack([g.generators, -g.generators]))


def order_interval_vertices(g: Gpt) -> np.ndarray:
    """Vertices of [-u, u] = {f : -1 <= f(state) <= 1}.

    Extreme rays of {(f, t) : t - f(s) >= 0, t + f(s) >= 0} with t = 1.
    """
    s = g.generators
    rows = np.vstack([np.hstack([-s, np.ones((len(s), 1))]),
                      np.hstack([s, np.ones((len(s), 1))])])
    rays = cone_dualize(PolyhedralConeRep(g.dim + 1, rows)).generators
    rays = rays[rays[:, -1] > 1e-12]
    return dedupe_rows(rays[:, :-1] / rays[:, -1:])


def dual_cone_generators(g: Gpt) -> np.ndarray:
    return np.array(cone_dualize(g.cone()).generators)


# -- composites ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Composite:
    factor_a: Gpt
    factor_b: Gpt
    rule: str
    cone: PolyhedralConeRep  # generators for min, dual generators for max

    @property
    def unit(self) -> np.ndarray:
        return np.kron(self.factor_a.unit, self.factor_b.unit)

    @property
    def dim(self) -> int:
        return self.factor_a.dim * self.factor_b.dim

    def contains(self, w, tol=1e-9) -> bool:
        w = np.asarray(w, float)
        if self.rule == "min":
            return in_cone(self.cone.generators, w)
        scale = max(1.0, float(np.abs(w).max(initial=0.0)))
        return bool(np.all(self.cone.generators @ w >= -tol * scale))


def compose(a: Gpt, b: Gpt, rule: str = "min") -> Composite:
    if rule == "min":
        k = len(a.generators) * len(b.generators)
        if k > BUDGET.max_min_generators:
            raise BudgetExceeded(f"{k} product generators exceed {BUDGET.max_min_generators}")
        gens = np.einsum("ia,jb->ijab", a.generators, b.generators).reshape(k, -1)
    elif rule == "max":
        da, db = dual_cone_generators(a), dual_cone_generators(b)
        k = len(da) * len(db)
        if k > BUDGET.max_min_generators:
            raise BudgetExceeded(f"{k} dual product generators exceed {BUDGET.max_min_generators}")
        gens = np.einsum("ia,jb->ijab", da, db).reshape(k, -1)
    else:
        raise ValidationError(f"rule must be 'min' or 'max', got {rule!r}")
    return Composite(a, b, rule, PolyhedralConeRep(a.dim * b.dim, gens))


def composite_base_norm(c: Composite, z) -> float:
    """Base norm of z in the composite theory."""
    z = np.asarray(z, float).ravel()
    if z.shape != (c.dim,):
        raise DimensionMismatch(f"vector must have length {c.dim}")
    if not np.any(z):
        return 0.0
    if c.rule == "min":
        return float(_base_norm_primal(c.cone.generators, z).value)
    # max f(z) over u - f and u + f in the min cone of dual generators:
    # f = u - sum mu d, sum (mu + nu) d = 2u
    d = c.cone.generators
    k = len(d)
    u = c.unit
    cost = np.concatenate([d @ z, np.zeros(k)])
    res = lp_solve(LpProblem(cost, np.hstack([d.T, d.T]), 2 * u))
    return float(u @ z - res.value)


# -- games ----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class XorGame:
    model: Composite
    questions: np.ndarray
    probs: np.ndarray
    bits: tuple

    def __post_init__(self):
        q = np.atleast_2d(np.asarray(self.questions, float))
        p = np.asarray(self.probs, float)
        bits = tuple(int(b) for b in self.bits)
        if q.shape[1] != self.model.dim:
            raise InvalidGame(f"questions must have length {self.model.dim}")
        if not (len(q) == len(p) == len(bits)) or len(q) == 0:
            raise InvalidGame("questions, probs and bits must have equal nonzero length")
        if set(bits) - {0, 1}:
            raise InvalidGame("bits must be 0 or 1")
        if np.any(p < 0) or abs(p.sum() - 1) > 1e-12:
            raise InvalidGame("probabilities must be nonnegative and sum to 1")
        u = self.model.unit
        for i, w in enumerate(q):
            if abs(u @ w - 1) > 1e-9:
                raise InvalidGame(f"question {i} is not normalized (u = {u @ w})")
            if not self.model.contains(w):
                raise InvalidGame(f"question {i} is not a state of the {self.model.rule} composite")
        q.setflags(write=False)
        object.__setattr__(self, "questions", q)
        object.__setattr__(self, "probs", p)
        object.__setattr__(self, "bits", bits)

    def to_json(self) -> dict:
        return {"rule": self.model.rule, "a": self.model.factor_a.to_json(),
                "b": self.model.factor_b.to_json(), "questions": self.questions.tolist(),
                "probs": self.probs.tolist(), "bits": list(self.bits)}

    @classmethod
    def from_json(cls, obj) -> "XorGame":
        if isinstance(obj, dict) and "game" in obj:
            obj = obj["game"]
        try:
            model = compose(Gpt.from_json(obj["a"]), Gpt.from_json(obj["b"]), obj.get("rule", "min"))
            return cls(model, obj["questions"], obj["probs"], obj["bits"])
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"bad game: missing or malformed field {exc}") from None


def game_vector(game: XorGame) -> Tensor:
    """sum_i p_i (-1)^c_i w_i as a tensor over the factor base-norm spaces."""
    signs = np.where(np.array(game.bits) == 0, 1.0, -1.0)
    z = (game.probs * signs) @ game.questions
    a, b = game.model.factor_a, game.model.factor_b
    return Tensor(base_norm_space(a), base_norm_space(b), z.reshape(a.dim, b.dim))


def _game_coeffs(game):
    signs = np.where(np.array(game.bits) == 0, 1.0, -1.0)
    a, b = game.model.factor_a, game.model.factor_b
    return ((game.probs * signs) @ game.questions).reshape(a.dim, b.dim)


def bias_local(game: XorGame) -> float:
    """Best bias with local measurements: max of (f (x) g)(z) over order intervals."""
    z = _game_coeffs(game)
    fa = order_interval_vertices(game.model.factor_a)
    fb = order_interval_vertices(game.model.factor_b)
    return float(max(0.0, (fa @ z @ fb.T).max()))


def bias_global(game: XorGame) -> float:
    """Best bias with arbitrary measurements on the composite: its base norm of z."""
    return composite_base_norm(game.model, _game_coeffs(game).ravel())


def game_from_tensor(a: Gpt, b: Gpt, z, rule: str = "min") -> XorGame:
    """Two-question game with game vector z / |z|_min.

    z = z+ - z- with z+- in the min cone from the base-norm LP; the questions
    are z+-/u(z+-) with probabilities u(z+-)/|z| and bits 0, 1.
    """
    z = np.asarray(z, float).ravel()
    c = compose(a, b, "min")
    res = _base_norm_primal(c.cone.generators, z)
    k = len(c.cone.generators)
    zp = res.x[:k] @ c.cone.generators
    zm = res.x[k:] @ c.cone.generators
    mp, mm = res.x[:k].sum(), res.x[k:].sum()
    qs, ps, bs = [], [], []
    for m, w, bit in ((mp, zp, 0), (mm, zm, 1)):
        if m > 1e-12:
            qs.append(w / m)
            ps.append(m)
            bs.append(bit)
    ps = np.array(ps) / sum(ps)
    model = c if rule == "min" else compose(a, b, rule)
    return XorGame(model, np.array(qs), ps, bs)
