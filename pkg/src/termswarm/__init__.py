"""Domain term extraction with swarm-learned feature weights."""

from termswarm.evaluation import GoldStandard, PrecisionReport, compare, load_gold, precision_at_k
from termswarm.features import FeatureMatrix, FrequencyModel, build_frequency_model, feature_matrix, prepare
from termswarm.optimizer import SwarmConfig, TrainedModel, fitness, load_model, optimize, run_swarm, save_model
from termswarm.pipeline import (
    Corpus,
    CorpusRole,
    Document,
    PipelineConfig,
    TermKey,
    build_candidate_set,
    load_corpus,
    normalize_term,
    tokenize,
)
from termswarm.porter import stem
from termswarm.scoring import (
    RankedTermList,
    rank_feature,
    rank_glossary,
    rank_swarm,
    rank_termextractor,
    rank_tfidf,
    rank_weirdness,
)

__version__ = "0.1.0"
