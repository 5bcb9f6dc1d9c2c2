import json

import numpy as np
import pytest

from termswarm.errors import EmptyGoldStandard, InvalidConfig, ModelParseError
from termswarm.features import FeatureMatrix, prepare
from termswarm.optimizer import (
    Particle,
    SwarmConfig,
    anchor_weights,
    fitness,
    initialize_swarm,
    load_model,
    optimize,
    run_swarm,
    save_model,
    swarm_step,
    update_position,
    update_velocity,
)
from termswarm.pipeline import TermKey
from termswarm.synthetic import planted_gold, synthetic_corpora


def K(*words):
    return TermKey(tuple(words))


def matrix(keys, rows):
    rows = np.asarray(rows, dtype=float)
    return FeatureMatrix(tuple(keys), rows, rows)


def particle(x, v, pbest):
    x = np.atleast_1d(np.asarray(x, dtype=float))
    return Particle(x, np.atleast_1d(np.asarray(v, float)), np.atleast_1d(np.asarray(pbest, float)), 0.0, None)


@pytest.fixture(scope="module")
def synthetic():
    t, c = synthetic_corpora(seed=5, n_target_docs=6, sentences_per_doc=30)
    return prepare(t, [c]).features


class TestConfig:
    @pytest.mark.parametrize("kw", [
        {"num_particles": 1}, {"max_iterations": 0}, {"c1": 0}, {"c2": -1}, {"v_max": 0}, {"fitness_k": 0}])
    def test_invalid(self, kw):
        with pytest.raises(InvalidConfig):
            SwarmConfig(**kw)

    def test_defaults(self):
        cfg = SwarmConfig()
        assert (cfg.num_particles, cfg.max_iterations, cfg.c1, cfg.c2) == (40, 500, 2.0, 2.0)


class TestInitialize:
    def test_anchors(self):
        state = initialize_swarm(SwarmConfig(), lambda x: 0.0)
        assert len(state.particles) == 40
        for p, a in zip(state.particles[:6], anchor_weights()):
            np.testing.assert_array_equal(p.position, a)
        np.testing.assert_array_equal(state.particles[5].position, np.full(5, 0.5))
        for p in state.particles:
            assert ((0 <= p.position) & (p.position <= 1)).all()
            assert (np.abs(p.velocity) <= 0.25).all()

    def test_deterministic(self):
        a = initialize_swarm(SwarmConfig(rng_seed=9), lambda x: float(x.sum()))
        b = initialize_swarm(SwarmConfig(rng_seed=9), lambda x: float(x.sum()))
        for p, q in zip(a.particles, b.particles):
            assert p.position.tobytes() == q.position.tobytes()
            assert p.velocity.tobytes() == q.velocity.tobytes()
        assert a.global_best_fitness == b.global_best_fitness

    def test_global_best_is_argmax_lowest_index(self):
        state = initialize_swarm(SwarmConfig(), lambda x: float(x.max() == 1.0))
        # e1 is the first particle reaching the max
        np.testing.assert_array_equal(state.global_best_position, np.eye(5)[0])


class TestUpdates:
    def test_velocity_clamped(self):
        p = particle(0.0, 0.1, 0.2)
        cfg = SwarmConfig(v_max=0.25)
        v = update_velocity(p, [0.4], 0.7, cfg, [0.5], [0.5])
        assert v[0] == pytest.approx(0.25)

    def test_velocity_unclamped_value(self):
        p = particle(0.0, 0.1, 0.2)
        v = update_velocity(p, [0.4], 0.7, SwarmConfig(v_max=10), [0.5], [0.5])
        assert v[0] == pytest.approx(0.67, abs=1e-12)

    def test_converged_terms_vanish(self):
        p = particle(0.3, 0.1, 0.3)
        assert update_velocity(p, [0.3], 0.8, SwarmConfig(), [0.9], [0.2])[0] == pytest.approx(0.08)
        p = particle(0.3, 0.0, 0.3)
        assert update_velocity(p, [0.3], 0.8, SwarmConfig(), [0.9], [0.2])[0] == 0.0

    @pytest.mark.parametrize("x, v, x_new, v_new", [
        (0.5, 0.2, 0.7, 0.2), (0.9, 0.25, 1.0, 0.0), (0.4, 0.0, 0.4, 0.0), (0.1, -0.2, 0.0, 0.0)])
    def test_position(self, x, v, x_new, v_new):
        xs, vs = update_position(particle(x, v, x))
        assert xs[0] == pytest.approx(x_new) and vs[0] == v_new


class TestFitness:
    keys = [K("a"), K("b"), K("c"), K("d")]
    rows = [[0.9, 0, 0, 0, 0], [0.8, 0, 0, 0, 0], [0.7, 0, 0, 0, 0], [0.1, 0, 0, 0, 0]]

    def test_top3(self):
        fm = matrix(self.keys, self.rows)
        assert fitness(np.eye(5)[0], fm, {K("a"), K("c")}, 3) == 2

    def test_disjoint_gold(self):
        fm = matrix(self.keys, self.rows)
        for w in anchor_weights():
            assert fitness(w, fm, {K("zz")}, 2) == 0

    def test_k_covers_all(self):
        fm = matrix(self.keys, self.rows)
        assert fitness(np.eye(5)[1], fm, {K("a"), K("d")}, 10) == 2

    def test_ties_broken_by_key(self):
        fm = matrix(self.keys, [[0.5, 0, 0, 0, 0]] * 4)
        assert fitness(np.eye(5)[0], fm, {K("a")}, 1) == 1
        assert fitness(np.eye(5)[0], fm, {K("d")}, 3) == 0

    def test_empty_gold(self):
        with pytest.raises(EmptyGoldStandard):
            fitness(np.ones(5), matrix(self.keys, self.rows), set(), 1)


def _hand_step_one_iteration(objective, cfg, dim):
    """Replay initialization plus one iteration with plain Python arithmetic."""
    anchors = [[1.0 if d == i else 0.0 for d in range(dim)] for i in range(dim)] + [[0.5] * dim]
    xs, vs, rngs = [], [], []
    for i in range(cfg.num_particles):
        rng = np.random.default_rng(np.random.SeedSequence(cfg.rng_seed, spawn_key=(i,)))
        x = anchors[i] if i < len(anchors) else list(rng.random(dim))
        v = list(rng.uniform(-cfg.v_max, cfg.v_max, dim))
        xs.append(list(x)); vs.append(v); rngs.append(rng)
    pf = [objective(np.array(x)) for x in xs]
    pb = [list(x) for x in xs]
    g_idx = max(range(len(xs)), key=lambda i: (pf[i], -i))
    g = list(pb[g_idx]); gf = pf[g_idx]
    w = 0.5 + np.random.default_rng(np.random.SeedSequence(cfg.rng_seed)).random() / 2
    for i in range(cfg.num_particles):
        r1 = rngs[i].random(dim); r2 = rngs[i].random(dim)
        for d in range(dim):
            v = w * vs[i][d] + cfg.c1 * r1[d] * (pb[i][d] - xs[i][d]) + cfg.c2 * r2[d] * (g[d] - xs[i][d])
            v = min(max(v, -cfg.v_max), cfg.v_max)
            x = xs[i][d] + v
            if x < 0 or x > 1:
                x, v = min(max(x, 0.0), 1.0), 0.0
            xs[i][d], vs[i][d] = x, v
    for i in range(cfg.num_particles):
        f = objective(np.array(xs[i]))
        if f > pf[i]:
            pf[i], pb[i] = f, list(xs[i])
    g_idx = max(range(len(xs)), key=lambda i: (pf[i], -i))
    if pf[g_idx] > gf:
        g, gf = pb[g_idx], pf[g_idx]
    return g, gf


class TestSwarm:
    def test_single_iteration_matches_hand_replay(self):
        fm = matrix([K("a"), K("b")], [[0.2, 0.9, 0, 0, 0], [0.8, 0.1, 0, 0, 0]])
        gold = {K("a")}
        obj = lambda x: fitness(x, fm, gold, 1)
        cfg = SwarmConfig(num_particles=2, max_iterations=1, rng_seed=3)
        res = run_swarm(obj, cfg)
        g, gf = _hand_step_one_iteration(obj, cfg, 5)
        assert res.fitness == gf
        np.testing.assert_allclose(res.position, g, atol=1e-15)
        assert res.iterations == 1

    def test_continuous_replay_one_iteration(self):
        obj = lambda x: -float(((x - 0.3) ** 2).sum())
        cfg = SwarmConfig(num_particles=8, max_iterations=1, rng_seed=17)
        res = run_swarm(obj, cfg)
        g, gf = _hand_step_one_iteration(obj, cfg, 5)
        assert res.fitness == pytest.approx(gf, abs=1e-15)
        np.testing.assert_allclose(res.position, g, atol=1e-15)

    def test_bounds_and_monotone_trace(self):
        obj = lambda x: -float(((x - 0.7) ** 2).sum())
        cfg = SwarmConfig(num_particles=10, max_iterations=60, rng_seed=1)
        state = initialize_swarm(cfg, obj)
        for _ in range(cfg.max_iterations):
            swarm_step(state, obj, cfg)
            for p in state.particles:
                assert ((0 <= p.position) & (p.position <= 1)).all()
                assert (np.abs(p.velocity) <= cfg.v_max).all()
            assert state.global_best_fitness == max(p.best_fitness for p in state.particles)
        assert all(b >= a for a, b in zip(state.trace, state.trace[1:]))

    def test_continuous_sanity(self):
        res = run_swarm(lambda x: -float(((x - 0.3) ** 2).sum()), SwarmConfig(rng_seed=0))
        assert res.fitness >= -1e-2


class TestOptimize:
    def test_dominates_anchors(self, synthetic):
        rng = np.random.default_rng(0)
        gold = set(rng.choice(np.array(synthetic.keys, dtype=object), 40, replace=False))
        cfg = SwarmConfig(max_iterations=50, rng_seed=2)
        model = optimize(synthetic, gold, cfg)
        for w in anchor_weights():
            assert model.fitness >= fitness(w, synthetic, gold, len(gold))
        assert model.fitness == fitness(model.weights, synthetic, gold, len(gold))

    def test_deterministic(self, synthetic):
        gold = planted_gold(synthetic, [0.1, 0.9, 0.4, 0.2, 0.6], 30)
        cfg = SwarmConfig(max_iterations=30, rng_seed=8)
        a, b = optimize(synthetic, gold, cfg), optimize(synthetic, gold, cfg)
        assert a.weights == b.weights and a.trace == b.trace

    def test_perfect_early_stop(self, synthetic):
        gold = planted_gold(synthetic, np.eye(5)[2], 20)
        model = optimize(synthetic, gold, SwarmConfig(rng_seed=1))
        assert model.fitness == 20
        assert len(model.trace) == 1  # anchor e3 is already perfect

    def test_model_roundtrip(self, synthetic, tmp_path):
        gold = planted_gold(synthetic, [0.3, 0.3, 0.2, 0.9, 0.1], 25)
        model = optimize(synthetic, gold, SwarmConfig(max_iterations=20, rng_seed=4))
        path = tmp_path / "model.json"
        save_model(model, path, {"note": "x"})
        loaded = load_model(path)
        assert loaded.weights == model.weights
        assert loaded.trace == model.trace and loaded.config == model.config
        assert loaded.extra == {"note": "x"}
        doc = json.loads(path.read_text())
        assert doc["seed"] == 4 and len(doc["weights"]) == 5

    @pytest.mark.parametrize("content", ["not json", '{"format": "other"}',
                                         '{"format": "termswarm-model", "weights": [1, 2]}'])
    def test_model_parse_errors(self, tmp_path, content):
        path = tmp_path / "bad.json"
        path.write_text(content)
        with pytest.raises(ModelParseError):
            load_model(path)
