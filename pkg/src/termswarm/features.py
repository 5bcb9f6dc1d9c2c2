"""Frequency statistics and the five per-candidate feature scores.

Features, all oriented so that larger is better:

* ``f1`` domain relevance, target probability over the best probability in
  any domain (target included);
* ``f2`` domain consensus, base-2 entropy of the term's spread over target
  documents;
* ``f3`` term cohesion, ``|N| F log10(F) / sum f(w)``;
* ``f4`` first occurrence, ``1 - mean(position / doc length)``;
* ``f5`` length score, ``F |N|``.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from termswarm.errors import NoCandidates, UnknownTerm
from termswarm.pipeline import (
    CandidateTerm,
    Corpus,
    PipelineConfig,
    TermKey,
    _emit,
    build_candidate_set,
    stem,
    tokenize_document,
)

__all__ = [
    "FEATURE_NAMES", "FrequencyModel", "FeatureVector", "FeatureMatrix",
    "build_frequency_model", "domain_relevance", "domain_consensus",
    "term_cohesion", "first_occurrence", "np_length_score", "feature_matrix",
    "minmax_normalize", "write_feature_matrix", "PreparedCorpus", "prepare",
]

logger = logging.getLogger(__name__)

FEATURE_NAMES = ("f1", "f2", "f3", "f4", "f5")


@dataclass(frozen=True)
class FrequencyModel:
    """Immutable frequency tables over the target and contrastive domains.

    ``term_freq[domain][key]`` holds candidate counts per domain; a missing
    entry means zero. ``mass[domain]`` is the total number of n-gram
    emissions in that domain (every candidate occurrence, whether or not it
    is a target candidate).
    """

    target_name: str
    domains: tuple[str, ...]
    term_freq: dict[str, dict[TermKey, int]]
    mass: dict[str, int]
    doc_term_freq: dict[TermKey, dict[str, int]]
    first_positions: dict[TermKey, dict[str, int]]
    word_freq: dict[str, int]
    doc_token_counts: dict[str, int]
    doc_freq: dict[TermKey, int]
    total_documents: int

    @property
    def contrastive_domains(self) -> tuple[str, ...]:
        return tuple(d for d in self.domains if d != self.target_name)

    @property
    def n_target_docs(self) -> int:
        return len(self.doc_token_counts)

    def frequency(self, key: TermKey, domain: str | None = None) -> int:
        return self.term_freq[domain or self.target_name].get(key, 0)

    def _check(self, key):
        if key not in self.doc_term_freq:
            raise UnknownTerm(f"{key} is not a target candidate")


def build_frequency_model(
    target: Corpus,
    contrastive: Sequence[Corpus],
    candidates: Sequence[CandidateTerm],
    config: PipelineConfig | None = None,
) -> FrequencyModel:
    """Count candidate occurrences in every domain plus target word stats."""
    config = config or PipelineConfig()
    names = [target.name] + [c.name for c in contrastive]
    if len(set(names)) != len(names):
        raise ValueError(f"corpus names must be distinct, got {names}")
    if not contrastive:
        logger.warning("no contrastive corpora: domain relevance is 1 for every term")

    keys = {c.key for c in candidates}
    doc_term_freq = {}
    first_positions = {}
    for cand in candidates:
        per_doc = Counter(o.doc_id for o in cand.occurrences)
        doc_term_freq[cand.key] = dict(sorted(per_doc.items()))
        firsts = {}
        for o in cand.occurrences:
            if o.doc_id not in firsts or o.first_word_position < firsts[o.doc_id]:
                firsts[o.doc_id] = o.first_word_position
        first_positions[cand.key] = firsts

    term_freq = {target.name: {c.key: c.frequency for c in candidates}}
    mass = {}
    doc_freq = Counter({k: len(v) for k, v in doc_term_freq.items()})
    word_freq = Counter()
    doc_token_counts = {}

    target_mass = 0
    for doc in target.documents:
        if doc.tokens is None:
            tokenize_document(doc, config)
        doc_token_counts[doc.id] = doc.token_count
        word_freq.update(stem(t.surface) for t in doc.tokens if not t.is_stopword)
        target_mass += sum(1 for _ in _emit(doc, config.max_len))
    mass[target.name] = target_mass

    total_docs = len(target)
    for corpus in contrastive:
        counts = Counter()
        m = 0
        for doc in corpus.documents:
            if doc.tokens is None:
                tokenize_document(doc, config)
            seen = set()
            for key, _, _ in _emit(doc, config.max_len):
                m += 1
                if key in keys:
                    counts[key] += 1
                    seen.add(key)
            doc_freq.update(seen)
        term_freq[corpus.name] = dict(counts)
        mass[corpus.name] = m
        total_docs += len(corpus)

    return FrequencyModel(
        target_name=target.name,
        domains=tuple(names),
        term_freq=term_freq,
        mass=mass,
        doc_term_freq=doc_term_freq,
        first_positions=first_positions,
        word_freq=dict(word_freq),
        doc_token_counts=doc_token_counts,
        doc_freq=dict(doc_freq),
        total_documents=total_docs,
    )


def _probability(m: FrequencyModel, key, domain):
    total = m.mass[domain]
    return m.frequency(key, domain) / total if total else 0.0


def domain_relevance(t: TermKey, m: FrequencyModel) -> float:
    m._check(t)
    p_target = _probability(m, t, m.target_name)
    best = max([p_target] + [_probability(m, t, d) for d in m.contrastive_domains])
    if best == 0.0:
        return 0.0
    return p_target / best


def domain_consensus(t: TermKey, m: FrequencyModel) -> float:
    """Base-2 entropy of ``t``'s frequency distribution over target documents."""
    m._check(t)
    counts = m.doc_term_freq[t].values()
    total = sum(counts)
    dc = 0.0
    for c in counts:
        if c > 0:
            phi = c / total
            dc -= phi * math.log2(phi)
    return dc


def term_cohesion(t: TermKey, m: FrequencyModel) -> float:
    m._check(t)
    freq = m.frequency(t)
    word_mass = sum(m.word_freq.get(w, 0) for w in t.stems)
    if word_mass == 0:
        return 0.0
    return len(t) * freq * math.log10(freq) / word_mass


def first_occurrence(t: TermKey, m: FrequencyModel) -> float:
    """One minus the mean relative position of ``t``'s first appearance per document."""
    m._check(t)
    firsts = m.first_positions[t]
    ratios = [pos / m.doc_token_counts[doc] for doc, pos in firsts.items()]
    return 1.0 - sum(ratios) / len(ratios)


def np_length_score(t: TermKey, m: FrequencyModel) -> float:
    m._check(t)
    return float(m.frequency(t) * len(t))


_FEATURE_FUNCS = (domain_relevance, domain_consensus, term_cohesion, first_occurrence, np_length_score)


def minmax_normalize(values):
    """Rescale each column to [0, 1]; constant columns become all zeros."""
    arr = np.asarray(values, dtype=float)
    lo = arr.min(axis=0)
    span = arr.max(axis=0) - lo
    safe = np.where(span > 0, span, 1.0)
    out = (arr - lo) / safe
    out[..., span == 0] = 0.0
    return out


@dataclass(frozen=True)
class FeatureVector:
    raw: tuple[float, ...]
    normalized: tuple[float, ...]


@dataclass(frozen=True)
class FeatureMatrix:
    """Raw and normalized features, one row per candidate in key order."""

    keys: tuple[TermKey, ...]
    raw: np.ndarray
    normalized: np.ndarray

    def __len__(self):
        return len(self.keys)

    def __iter__(self) -> Iterator[tuple[TermKey, FeatureVector]]:
        for i, key in enumerate(self.keys):
            yield key, self.vector(i)

    def vector(self, i: int) -> FeatureVector:
        return FeatureVector(tuple(self.raw[i].tolist()), tuple(self.normalized[i].tolist()))

    def index(self) -> dict[TermKey, int]:
        return {k: i for i, k in enumerate(self.keys)}

    def column(self, name: str, normalized=True) -> np.ndarray:
        data = self.normalized if normalized else self.raw
        return data[:, FEATURE_NAMES.index(name)]


def feature_matrix(candidates: Sequence[CandidateTerm], m: FrequencyModel) -> FeatureMatrix:
    if not candidates:
        raise NoCandidates("cannot build a feature matrix without candidates")
    keys = tuple(sorted(c.key for c in candidates))
    raw = np.array([[f(k, m) for f in _FEATURE_FUNCS] for k in keys], dtype=float)
    raw.setflags(write=False)
    norm = minmax_normalize(raw)
    norm.setflags(write=False)
    return FeatureMatrix(keys, raw, norm)


def write_feature_matrix(fm: FeatureMatrix, path) -> None:
    """Tab-separated export: key, five raw values, five normalized values."""
    header = ["term"] + [f"{n}_raw" for n in FEATURE_NAMES] + [f"{n}_norm" for n in FEATURE_NAMES]
    lines = ["\t".join(header)]
    for i, key in enumerate(fm.keys):
        vals = [f"{v:.6f}" for v in fm.raw[i]] + [f"{v:.6f}" for v in fm.normalized[i]]
        lines.append("\t".join([str(key)] + vals))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


@dataclass(frozen=True)
class PreparedCorpus:
    """Candidates, frequency model and feature matrix for one target corpus."""

    target: Corpus
    contrastive: tuple[Corpus, ...]
    candidates: tuple[CandidateTerm, ...]
    model: FrequencyModel
    features: FeatureMatrix


def prepare(target: Corpus, contrastive: Sequence[Corpus] = (), config: PipelineConfig | None = None) -> PreparedCorpus:
    """Run the full pipeline: candidates, frequency model, feature matrix."""
    config = config or PipelineConfig()
    candidates = build_candidate_set(target, config)
    model = build_frequency_model(target, contrastive, candidates, config)
    return PreparedCorpus(target, tuple(contrastive), tuple(candidates), model, feature_matrix(candidates, model))
