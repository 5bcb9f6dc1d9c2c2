"""Particle swarm optimizer for learning the five feature weights.

The swarm lives in the unit hypercube. Each iteration draws one inertia
weight ``w = 0.5 + u/2`` shared by all particles, then for every particle

    v <- w v + c1 r1 (p_best - x) + c2 r2 (g_best - x),  clipped to +-v_max
    x <- x + v,                                          clipped to [0, 1]

where ``r1``, ``r2`` come from the particle's own random stream, so the result
does not depend on evaluation order. Velocity is zeroed in any dimension
where the position hits a bound.

The first ``dim + 1`` particles are anchors: the one-hot vectors and the
all-0.5 vector. The final global best therefore never scores below a single
feature ranking or the equal-weight ranking on the training data.
"""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from termswarm.errors import EmptyGoldStandard, InvalidConfig, ModelParseError
from termswarm.features import FEATURE_NAMES, FeatureMatrix

__all__ = [
    "SwarmConfig", "Particle", "SwarmState", "SwarmResult", "TrainedModel",
    "initialize_swarm", "update_velocity", "update_position", "draw_inertia",
    "swarm_step", "run_swarm", "rank_order", "fitness", "optimize",
    "save_model", "load_model", "anchor_weights",
]

logger = logging.getLogger(__name__)

N_FEATURES = len(FEATURE_NAMES)
_SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class SwarmConfig:
    """PSO settings. Defaults are 40 particles, 500 iterations, c1 = c2 = 2."""

    num_particles: int = 40
    max_iterations: int = 500
    c1: float = 2.0
    c2: float = 2.0
    v_max: float = 0.25
    rng_seed: int = 42
    fitness_k: int | None = None

    def __post_init__(self):
        if self.num_particles < 2:
            raise InvalidConfig(f"num_particles must be >= 2, got {self.num_particles}")
        if self.max_iterations < 1:
            raise InvalidConfig(f"max_iterations must be >= 1, got {self.max_iterations}")
        if not (self.c1 > 0 and self.c2 > 0):
            raise InvalidConfig("c1 and c2 must be positive")
        if not self.v_max > 0:
            raise InvalidConfig("v_max must be positive")
        if self.fitness_k is not None and self.fitness_k < 1:
            raise InvalidConfig("fitness_k must be >= 1")


@dataclass
class Particle:
    position: np.ndarray
    velocity: np.ndarray
    best_position: np.ndarray
    best_fitness: float
    rng: np.random.Generator = field(repr=False)


@dataclass
class SwarmState:
    particles: list[Particle]
    global_best_position: np.ndarray
    global_best_fitness: float
    iteration: int
    trace: list
    rng: np.random.Generator = field(repr=False)


@dataclass(frozen=True)
class SwarmResult:
    position: np.ndarray
    fitness: float
    trace: tuple
    iterations: int
    state: SwarmState = field(repr=False, compare=False)


def _particle_rng(seed, index):
    return np.random.default_rng(np.random.SeedSequence(seed & _SEED_MASK, spawn_key=(index,)))


def _anchors(dim):
    return [np.eye(dim)[d] for d in range(dim)] + [np.full(dim, 0.5)]


def _global_best(particles):
    # max fitness, lowest index on ties
    best = max(range(len(particles)), key=lambda i: (particles[i].best_fitness, -i))
    return particles[best]


def initialize_swarm(cfg: SwarmConfig, objective: Callable, dim: int = N_FEATURES) -> SwarmState:
    """Create and evaluate the initial swarm."""
    anchors = _anchors(dim)
    particles = []
    for i in range(cfg.num_particles):
        rng = _particle_rng(cfg.rng_seed, i)
        x = anchors[i].copy() if i < len(anchors) else rng.random(dim)
        v = rng.uniform(-cfg.v_max, cfg.v_max, dim)
        particles.append(Particle(x, v, x.copy(), objective(x), rng))
    best = _global_best(particles)
    master = np.random.default_rng(np.random.SeedSequence(cfg.rng_seed & _SEED_MASK))
    return SwarmState(
        particles, best.best_position.copy(), best.best_fitness, 0, [best.best_fitness], master
    )


def draw_inertia(rng: np.random.Generator) -> float:
    return 0.5 + rng.random() / 2.0


def update_velocity(p: Particle, g, w: float, cfg: SwarmConfig, r1, r2) -> np.ndarray:
    v = (
        w * p.velocity
        + cfg.c1 * np.asarray(r1) * (p.best_position - p.position)
        + cfg.c2 * np.asarray(r2) * (np.asarray(g) - p.position)
    )
    return np.clip(v, -cfg.v_max, cfg.v_max)


def update_position(p: Particle) -> tuple[np.ndarray, np.ndarray]:
    """Move ``p`` by its (already updated) velocity.

    Returns the new position and velocity; the velocity is zeroed in every
    dimension clipped to the [0, 1] bounds.
    """
    moved = p.position + p.velocity
    x = np.clip(moved, 0.0, 1.0)
    v = np.where(x != moved, 0.0, p.velocity)
    return x, v


def swarm_step(state: SwarmState, objective: Callable, cfg: SwarmConfig) -> SwarmState:
    """Advance the swarm by one synchronous iteration, in place."""
    w = draw_inertia(state.rng)
    particles = state.particles
    dim = state.global_best_position.shape[0]
    # r1, r2 for each particle from its own stream; the update itself is
    # elementwise, so it runs on the stacked swarm at once
    r = np.stack([p.rng.random((2, dim)) for p in particles])
    swarm = Particle(
        np.stack([p.position for p in particles]),
        np.stack([p.velocity for p in particles]),
        np.stack([p.best_position for p in particles]),
        0.0,
        None,
    )
    swarm.velocity = update_velocity(swarm, state.global_best_position, w, cfg, r[:, 0], r[:, 1])
    positions, velocities = update_position(swarm)
    for i, p in enumerate(particles):
        p.position, p.velocity = positions[i], velocities[i]
        f = objective(p.position)
        if f > p.best_fitness:
            p.best_fitness = f
            p.best_position = p.position.copy()
    best = _global_best(particles)
    if best.best_fitness > state.global_best_fitness:
        state.global_best_fitness = best.best_fitness
        state.global_best_position = best.best_position.copy()
    state.iteration += 1
    state.trace.append(state.global_best_fitness)
    return state


def run_swarm(
    objective: Callable[[np.ndarray], float],
    cfg: SwarmConfig | None = None,
    dim: int = N_FEATURES,
    target: float | None = None,
) -> SwarmResult:
    """Maximize ``objective`` over ``[0, 1]^dim``.

    Stops after ``cfg.max_iterations`` iterations, or earlier once the global
    best reaches ``target``. ``trace[0]`` is the initial global best and
    ``trace[t]`` the global best after iteration ``t``.
    """
    cfg = cfg or SwarmConfig()
    state = initialize_swarm(cfg, objective, dim)
    while state.iteration < cfg.max_iterations:
        if target is not None and state.global_best_fitness >= target:
            break
        swarm_step(state, objective, cfg)
    return SwarmResult(
        state.global_best_position.copy(),
        state.global_best_fitness,
        tuple(state.trace),
        state.iteration,
        state,
    )


def _gold_keys(gold) -> frozenset:
    if isinstance(gold, (set, frozenset, list, tuple)):
        return frozenset(gold)
    return frozenset(gold.keys)


def rank_order(scores: np.ndarray) -> np.ndarray:
    """Row indices by descending score; rows are in key order, so ties fall back to key order."""
    return np.argsort(-np.asarray(scores, dtype=float), kind="stable")


def _gold_mask(features: FeatureMatrix, gold) -> np.ndarray:
    keys = _gold_keys(gold)
    if not keys:
        raise EmptyGoldStandard("gold standard is empty")
    return np.fromiter((k in keys for k in features.keys), dtype=bool, count=len(features))


def _hits(normalized, mask, weights, k):
    order = rank_order(normalized @ np.asarray(weights, dtype=float))
    return int(mask[order[:k]].sum())


def fitness(weights, features: FeatureMatrix, gold, k: int) -> int:
    """Number of gold-standard terms among the top ``k`` under ``weights``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return _hits(features.normalized, _gold_mask(features, gold), weights, k)


@dataclass(frozen=True)
class TrainedModel:
    weights: tuple[float, ...]
    fitness: int
    fitness_k: int
    trace: tuple[int, ...]
    config: SwarmConfig
    extra: dict = field(default_factory=dict, compare=False)

    def weight_array(self) -> np.ndarray:
        return np.array(self.weights, dtype=float)


def optimize(features: FeatureMatrix, gold, cfg: SwarmConfig | None = None) -> TrainedModel:
    """Learn feature weights that maximize gold-standard hits in the top k.

    ``k`` is ``cfg.fitness_k`` or, when unset, the gold-standard size.
    """
    cfg = cfg or SwarmConfig()
    gold_keys = _gold_keys(gold)
    mask = _gold_mask(features, gold_keys)
    k = cfg.fitness_k or len(gold_keys)
    perfect = min(k, int(mask.sum()))
    normalized = features.normalized

    result = run_swarm(lambda x: _hits(normalized, mask, x, k), cfg, N_FEATURES, target=perfect)
    logger.info("swarm finished after %d iterations with fitness %d/%d", result.iterations, result.fitness, perfect)
    return TrainedModel(
        weights=tuple(float(x) for x in result.position),
        fitness=int(result.fitness),
        fitness_k=k,
        trace=tuple(int(f) for f in result.trace),
        config=cfg,
    )


MODEL_FORMAT = "termswarm-model"


def save_model(model: TrainedModel, path, run_config: dict | None = None) -> None:
    """Write ``model`` as JSON; floats use shortest round-trip repr."""
    doc = {
        "format": MODEL_FORMAT,
        "version": 1,
        "features": list(FEATURE_NAMES),
        "weights": list(model.weights),
        "fitness": model.fitness,
        "fitness_k": model.fitness_k,
        "seed": model.config.rng_seed,
        "swarm": asdict(model.config),
        "config": run_config if run_config is not None else model.extra,
        "trace": list(model.trace),
    }
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def load_model(path) -> TrainedModel:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ModelParseError(f"cannot read model file {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise ModelParseError(f"model file {path} is not valid JSON: {exc}") from exc
    try:
        if doc.get("format") != MODEL_FORMAT:
            raise ValueError(f"unexpected format {doc.get('format')!r}")
        weights = tuple(float(w) for w in doc["weights"])
        if len(weights) != N_FEATURES or not all(np.isfinite(weights)):
            raise ValueError(f"expected {N_FEATURES} finite weights")
        cfg = SwarmConfig(**doc["swarm"])
        return TrainedModel(
            weights=weights,
            fitness=int(doc["fitness"]),
            fitness_k=int(doc["fitness_k"]),
            trace=tuple(int(f) for f in doc["trace"]),
            config=cfg,
            extra=doc.get("config") or {},
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelParseError(f"malformed model file {path}: {exc}") from exc


def anchor_weights(dim: int = N_FEATURES) -> list[np.ndarray]:
    """The deterministic initial positions: one-hot vectors then all-0.5."""
    return _anchors(dim)

