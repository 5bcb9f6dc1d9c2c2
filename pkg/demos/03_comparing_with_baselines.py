"""
Swarm model against the classical baselines
===========================================

Train on one synthetic corpus, then rank a held-out corpus with the
learned weights and with TFIDF, Weirdness, GlossaryExtraction and
TermExtractor. Precision is reported at the top 25, 50, 150 and 250.
"""

import numpy as np

from termswarm import SwarmConfig, compare, optimize, prepare
from termswarm.cli import all_rankings
from termswarm.evaluation import DEFAULT_K_VALUES
from termswarm.synthetic import planted_gold, synthetic_corpora

hidden = np.array([0.3, 0.6, 0.5, 0.2, 0.4])

train, contrastive = synthetic_corpora(seed=21, n_target_docs=10, sentences_per_doc=25)
test, _ = synthetic_corpora(seed=21, n_target_docs=14, sentences_per_doc=25)

train_prep = prepare(train, [contrastive])
test_prep = prepare(test, [contrastive])

######################################################################
# Both corpora share a vocabulary, so a gold list from the training side
# also makes sense for the test side.

gold = planted_gold(train_prep.features, hidden, 120) | planted_gold(test_prep.features, hidden, 120)
model = optimize(train_prep.features, gold, SwarmConfig(rng_seed=1))
print(f"training fitness {model.fitness} / {model.fitness_k}")

######################################################################
# Rows f1..f5 are the single-feature rankings.

rows = all_rankings(test_prep, model.weights, per_feature=True)
report = compare(rows, gold, DEFAULT_K_VALUES)
print(report.to_text())
report.write("comparison")
