import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import lp_highs
from tensorgap import gpt, spaces
from tensorgap.errors import BudgetExceeded, DegenerateCone, InvalidGame, UnsupportedKind
from tensorgap.tensors import Tensor, injective_norm, projective_norm, ratio_witness


def chsh_game(rule="min"):
    c = gpt.compose(gpt.classical(2), gpt.classical(2), rule)
    qs = [np.kron(np.eye(2)[x], np.eye(2)[y]) for x in range(2) for y in range(2)]
    return gpt.XorGame(c, qs, [0.25] * 4, [x & y for x in range(2) for y in range(2)])


def random_state(comp, rng, terms=3):
    g = comp.cone.generators if comp.rule == "min" else gpt.compose(
        comp.factor_a, comp.factor_b, "min").cone.generators
    idx = rng.choice(len(g), size=min(terms, len(g)), replace=False)
    w = rng.dirichlet(np.ones(len(idx)))
    return w @ g[idx]


def random_game(rng, rule="min", questions=3):
    a = gpt.centrally_symmetric(spaces.random_polygon(rng))
    b = gpt.centrally_symmetric(spaces.random_polygon(rng))
    comp = gpt.compose(a, b, rule)
    qs = [random_state(comp, rng) for _ in range(questions)]
    p = rng.dirichlet(np.ones(questions))
    bits = rng.integers(0, 2, questions)
    return gpt.XorGame(comp, qs, p / p.sum(), bits)


def test_order_unit_examples():
    assert gpt.order_unit_norm(gpt.classical(3), [1, -2, 1]) == 2
    g = gpt.centrally_symmetric(spaces.hexagon())
    assert gpt.order_unit_norm(g, g.unit) == pytest.approx(1)
    assert gpt.order_unit_norm(g, [0, 0, 1]) == pytest.approx(1)


def test_order_unit_matches_lp():
    g = gpt.centrally_symmetric(spaces.regular_polygon(5))
    f = np.array([0.3, -1.2, 0.4])
    # min t s.t. t u(s) - f(s) >= 0, t u(s) + f(s) >= 0 with slacks
    s = g.generators
    k = len(s)
    a = np.block([[(s @ g.unit)[:, None], -np.eye(k), np.zeros((k, k))],
                  [(s @ g.unit)[:, None], np.zeros((k, k)), -np.eye(k)]])
    b = np.concatenate([s @ f, -(s @ f)])
    ref = lp_highs(np.r_[1.0, np.zeros(2 * k)], a, b)
    assert gpt.order_unit_norm(g, f) == pytest.approx(ref.fun, rel=1e-9)


def test_base_norm_examples():
    assert gpt.base_norm(gpt.classical(2), [1, -2]) == pytest.approx(3)
    g = gpt.centrally_symmetric(spaces.l1(2))
    assert gpt.base_norm(g, [1, 0, 0]) == pytest.approx(1)
    for s in g.generators:
        assert gpt.base_norm(g, s) == pytest.approx(1)


def test_classical_constructor():
    assert gpt.classical(1).generators.shape == (1, 1)
    c3 = gpt.classical(3)
    np.testing.assert_allclose(c3.generators @ c3.unit, 1)


def test_centrally_symmetric_shapes():
    g = gpt.centrally_symmetric(spaces.l1(1))
    assert {tuple(r) for r in g.generators} == {(1.0, 1.0), (-1.0, 1.0)}
    assert len(gpt.centrally_symmetric(spaces.hexagon()).generators) == 6
    with pytest.raises(UnsupportedKind):
        gpt.centrally_symmetric(spaces.l2(2))


def test_bad_cones():
    with pytest.raises(DegenerateCone):
        gpt.Gpt(2, [[1, 0], [-1, 0], [0, 1]], [0, 1])
    with pytest.raises(DegenerateCone):
        gpt.Gpt(2, [[1, 1]], [1, 0])


@given(st.integers(0, 10_000))
def test_base_norm_strong_duality(seed):
    rng = np.random.default_rng(seed)
    g = gpt.centrally_symmetric(spaces.random_polygon(rng))
    x = rng.normal(size=3)
    val = gpt.base_norm(g, x)
    d, f = gpt.base_norm_dual_witness(g, x)
    assert d == pytest.approx(val, rel=1e-8, abs=1e-10)
    assert gpt.order_unit_norm(g, f) <= 1 + 1e-8


@pytest.mark.parametrize("space", [spaces.l1(2), spaces.regular_polygon(8), spaces.linf(2)])
def test_two_isomorphic(space):
    t = gpt.two_isomorphic_base_norm(space)
    assert 1 - 1e-9 <= t.factor <= 2 + 1e-9
    ball = gpt.base_norm_space(t.gpt)
    for v in spaces.ball_vertex_list(space):
        assert spaces.norm(ball, v) <= 2 + 1e-9
    for s in t.gpt.generators:
        assert spaces.norm(space, s) <= 1 + 1e-9


def test_two_isomorphic_l1_e1():
    t = gpt.two_isomorphic_base_norm(spaces.l1(2), functional=[1, 0])
    assert {tuple(r) for r in np.round(t.gpt.generators, 12)} == {(0.5, 0.5), (0.5, -0.5)}
    assert t.factor == pytest.approx(2)


def test_compose_min_and_max():
    c = gpt.compose(gpt.classical(2), gpt.classical(2), "min")
    assert len(c.cone.generators) == 4
    m = gpt.compose(gpt.classical(2), gpt.classical(2), "max")
    rng = np.random.default_rng(0)
    for _ in range(1000):
        w = rng.normal(size=4)
        assert c.contains(w) == m.contains(w)
    with pytest.raises(BudgetExceeded):
        gpt.compose(gpt.classical(101), gpt.classical(100), "min")


def test_min_products_in_max_cone():
    a = gpt.centrally_symmetric(spaces.l1(2))
    m = gpt.compose(a, a, "max")
    for s in gpt.compose(a, a, "min").cone.generators:
        assert m.contains(s)


def test_game_vector_examples():
    c = gpt.compose(gpt.classical(2), gpt.classical(2), "min")
    w = np.kron([1, 0], [0, 1.0])
    w2 = np.kron([0, 1.0], [0, 1.0])
    g1 = gpt.XorGame(c, [w], [1.0], [0])
    np.testing.assert_allclose(gpt.game_vector(g1).coeffs.ravel(), w)
    g2 = gpt.XorGame(c, [w, w2], [0.5, 0.5], [0, 1])
    np.testing.assert_allclose(gpt.game_vector(g2).coeffs.ravel(), (w - w2) / 2)
    np.testing.assert_allclose(gpt.game_vector(chsh_game()).coeffs, [[0.25, 0.25], [0.25, -0.25]])
    assert gpt.bias_local(g1) == pytest.approx(1)
    assert gpt.bias_global(g1) == pytest.approx(1)


def test_chsh_biases():
    g = chsh_game()
    assert gpt.bias_local(g) == pytest.approx(0.5)
    # orthogonal classical questions are perfectly distinguishable globally
    assert gpt.bias_global(g) == pytest.approx(1.0)
    assert gpt.bias_global(chsh_game("max")) == pytest.approx(1.0)


def test_zero_game_vector():
    c = gpt.compose(gpt.classical(2), gpt.classical(2), "min")
    w = np.kron([1, 0], [0, 1.0])
    g = gpt.XorGame(c, [w, w], [0.5, 0.5], [0, 1])
    assert gpt.bias_local(g) == 0
    assert gpt.bias_global(g) == 0


def test_invalid_games():
    c = gpt.compose(gpt.classical(2), gpt.classical(2), "min")
    with pytest.raises(InvalidGame):
        gpt.XorGame(c, [np.kron([1, 0], [0, 2.0])], [1.0], [0])  # u != 1
    with pytest.raises(InvalidGame):
        gpt.XorGame(c, [[1.5, -0.5, 0, 0]], [1.0], [0])  # not in the cone
    with pytest.raises(InvalidGame):
        gpt.XorGame(c, [np.kron([1, 0], [0, 1.0])], [0.9], [0])
    with pytest.raises(InvalidGame):
        gpt.XorGame(c, [np.kron([1, 0], [0, 1.0])], [1.0], [2])


def test_identity_game_reproduces_ratio():
    a = gpt.centrally_symmetric(spaces.l1(2))
    z = np.zeros((3, 3))
    z[0, 0] = z[1, 1] = 1.0
    game = gpt.game_from_tensor(a, a, z)
    zg = gpt.game_vector(game)
    assert gpt.bias_global(game) == pytest.approx(1.0)
    assert gpt.bias_global(game) / gpt.bias_local(game) == pytest.approx(ratio_witness(zg))


@given(st.integers(0, 10_000))
def test_game_properties(seed):
    rng = np.random.default_rng(seed)
    game = random_game(rng)
    loc, glob = gpt.bias_local(game), gpt.bias_global(game)
    assert loc <= glob + 1e-9 <= 1 + 2e-9
    z = gpt.game_vector(game)
    assert loc == pytest.approx(injective_norm(z), abs=1e-8)
    assert glob == pytest.approx(projective_norm(z), abs=1e-8)
    gmax = gpt.XorGame(gpt.compose(game.model.factor_a, game.model.factor_b, "max"),
                       game.questions, game.probs, game.bits)
    assert gpt.bias_global(gmax) <= glob + 1e-9
    assert gpt.bias_local(gmax) == loc


def test_json_round_trip():
    g = chsh_game()
    again = gpt.XorGame.from_json(json.loads(json.dumps({"game": g.to_json()})))
    np.testing.assert_array_equal(again.questions, g.questions)
    assert again.bits == g.bits
    a = gpt.Gpt.from_json({"gpt": gpt.classical(3).to_json()})
    assert a.dim == 3


def test_extension_decomposition_bound():
    # z' built from z in X (x) Y by the explicit decomposition; its pi is at most
    # (2 + pi(z)/eps(z)) eps(z') with eps(z') = max(eps(z), |s|, |t|, |a|)
    rng = np.random.default_rng(4)
    for _ in range(10):
        X, Y = spaces.random_polygon(rng), spaces.random_polygon(rng)
        z = Tensor(X, Y, rng.normal(size=(2, 2)))
        e, p = injective_norm(z), projective_norm(z)
        z = z.scaled(1 / e)
        gx, gy = gpt.centrally_symmetric(X), gpt.centrally_symmetric(Y)
        s, t = rng.normal(size=(2, 2)) * 0.5
        a = rng.uniform(-1, 1)
        zp = np.zeros((3, 3))
        zp[:2, :2] = z.coeffs
        zp[:2, 2] += s
        zp[2, :2] += t
        zp[2, 2] = a
        big = Tensor(gpt.base_norm_space(gx), gpt.base_norm_space(gy), zp)
        eps_big = injective_norm(big)
        assert eps_big == pytest.approx(max(1.0, spaces.norm(X, s), spaces.norm(Y, t), abs(a)), rel=1e-8)
        assert projective_norm(big) <= (2 + p / e) * eps_big + 1e-8


# seeds whose degenerate composite LPs once made a tableau simplex cycle
@pytest.mark.parametrize("seed", [76, 146, 215, 240, 554, 938, 1043, 1294, 1585, 1932, 2251, 2265, 2559])
def test_degenerate_game_lps_match_highs(seed):
    from scipy.optimize import linprog

    game = random_game(np.random.default_rng(seed))
    for rule in ("min", "max"):
        g = gpt.XorGame(gpt.compose(game.model.factor_a, game.model.factor_b, rule),
                        game.questions, game.probs, game.bits)
        d = g.model.cone.generators
        k = len(d)
        z = ((g.probs * np.where(np.array(g.bits) == 0, 1.0, -1.0)) @ g.questions)
        if rule == "min":
            ref = linprog(np.ones(2 * k), A_eq=np.hstack([d.T, -d.T]), b_eq=z, method="highs").fun
        else:
            r = linprog(np.concatenate([d @ z, np.zeros(k)]), A_eq=np.hstack([d.T, d.T]),
                        b_eq=2 * g.model.unit, method="highs")
            ref = g.model.unit @ z - r.fun
        assert gpt.bias_global(g) == pytest.approx(ref, abs=1e-8)
