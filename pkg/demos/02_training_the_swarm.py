"""
Learning feature weights with a particle swarm
==============================================

Build a synthetic domain corpus, hide a weight vector, and let the swarm
find weights that put the same terms in the top k.
"""

import numpy as np

from termswarm import SwarmConfig, fitness, optimize, prepare
from termswarm.optimizer import anchor_weights
from termswarm.synthetic import planted_gold, synthetic_corpora

target, contrastive = synthetic_corpora(seed=3, n_target_docs=8, sentences_per_doc=20)
features = prepare(target, [contrastive]).features
print(f"{len(features)} candidates")

######################################################################
# The "gold standard" is the top 50 under a hidden weight vector.

hidden = np.array([0.09, 0.24, 0.8, 0.58, 0.09])
gold = planted_gold(features, hidden, 50)

######################################################################
# Single-feature rankings (one-hot weights) and equal weights are the
# swarm's anchor particles. Their fitness is the bar to beat.

for name, w in zip(["f1", "f2", "f3", "f4", "f5", "equal"], anchor_weights()):
    print(f"{name:>6}: {fitness(w, features, gold, 50)} / 50")

model = optimize(features, gold, SwarmConfig(rng_seed=7))
print("learned weights:", np.round(model.weights, 3))
print(f"fitness {model.fitness} / 50 after {len(model.trace) - 1} iterations")

######################################################################
# Only the ordering matters, so the learned weights need not equal the
# hidden ones; scaling them leaves every ranking unchanged.

print("trace:", model.trace[:20])
