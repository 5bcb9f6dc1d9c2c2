"""Weighted term scoring, ranked lists, and the four baseline rankers."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from termswarm.errors import NoCandidates, NoContrastiveCorpora, RankedListParseError
from termswarm.features import FeatureMatrix, FeatureVector, FrequencyModel, minmax_normalize
from termswarm.optimizer import rank_order
from termswarm.pipeline import TermKey

__all__ = [
    "RankedEntry", "RankedTermList", "score_term", "rank_scores",
    "rank_swarm", "rank_feature", "rank_tfidf", "rank_weirdness",
    "rank_glossary", "rank_termextractor", "tfidf_scores",
    "weirdness_scores", "write_ranked_list", "read_ranked_list",
]


@dataclass(frozen=True)
class RankedEntry:
    rank: int
    key: TermKey
    score: float


@dataclass(frozen=True)
class RankedTermList:
    method: str
    entries: tuple[RankedEntry, ...]

    def __len__(self):
        return len(self.entries)

    def top(self, k: int) -> list[TermKey]:
        return [e.key for e in self.entries[:k]]

    @property
    def keys(self) -> list[TermKey]:
        return [e.key for e in self.entries]


def score_term(fv: FeatureVector, w) -> float:
    return float(sum(wi * xi for wi, xi in zip(w, fv.normalized)))


def rank_scores(method: str, keys: Sequence[TermKey], scores) -> RankedTermList:
    """Rank by descending score, ties broken by ascending key."""
    if len(keys) == 0:
        raise NoCandidates(f"{method}: nothing to rank")
    keys = list(keys)
    scores = np.asarray(scores, dtype=float)
    by_key = sorted(range(len(keys)), key=keys.__getitem__)
    order = [by_key[i] for i in rank_order(scores[by_key])]
    return RankedTermList(
        method,
        tuple(RankedEntry(r, keys[i], float(scores[i])) for r, i in enumerate(order, start=1)),
    )


def rank_swarm(features: FeatureMatrix, w, method: str = "swarm") -> RankedTermList:
    return rank_scores(method, features.keys, features.normalized @ np.asarray(w, dtype=float))


def rank_feature(features: FeatureMatrix, name: str) -> RankedTermList:
    """Single-feature ranking, the one-hot special case of ``rank_swarm``."""
    return rank_scores(name, features.keys, features.column(name))


def tfidf_scores(keys: Sequence[TermKey], m: FrequencyModel) -> np.ndarray:
    """``F(t) * ln(N / df(t))`` over the pooled target + contrastive documents."""
    n = m.total_documents
    return np.array([m.frequency(k) * math.log(n / m.doc_freq[k]) for k in keys])


def rank_tfidf(features: FeatureMatrix, m: FrequencyModel) -> RankedTermList:
    return rank_scores("TFIDF", features.keys, tfidf_scores(features.keys, m))


def weirdness_scores(keys: Sequence[TermKey], m: FrequencyModel) -> np.ndarray:
    """Target relative frequency over add-one smoothed pooled contrastive frequency."""
    contrastive = m.contrastive_domains
    if not contrastive:
        raise NoContrastiveCorpora("weirdness needs at least one contrastive corpus")
    target_mass = m.mass[m.target_name]
    pooled_mass = sum(m.mass[d] for d in contrastive)
    out = []
    for k in keys:
        pooled = sum(m.frequency(k, d) for d in contrastive)
        out.append((m.frequency(k) / target_mass) / ((pooled + 1) / (pooled_mass + 1)))
    return np.array(out)


def rank_weirdness(features: FeatureMatrix, m: FrequencyModel) -> RankedTermList:
    return rank_scores("Weirdness", features.keys, weirdness_scores(features.keys, m))


def rank_glossary(features: FeatureMatrix, m: FrequencyModel) -> RankedTermList:
    """Equal mix of normalized weirdness and normalized term cohesion."""
    weird = minmax_normalize(weirdness_scores(features.keys, m))
    scores = 0.5 * weird + 0.5 * features.column("f3")
    return rank_scores("GlossaryExtraction", features.keys, scores)


def rank_termextractor(features: FeatureMatrix) -> RankedTermList:
    """Mean of normalized domain relevance, domain consensus and cohesion."""
    cols = features.normalized[:, :3]
    return rank_scores("TermExtractor", features.keys, cols.sum(axis=1) / 3.0)


def write_ranked_list(ranked: RankedTermList, path, config: dict | None = None) -> None:
    """Tab-separated ``rank, term, score`` rows after ``#`` header lines."""
    lines = [f"# method: {ranked.method}"]
    if config is not None:
        lines.append("# config: " + json.dumps(config, sort_keys=True))
    lines.append("rank\tterm\tscore")
    lines += [f"{e.rank}\t{e.key}\t{e.score:.6f}" for e in ranked.entries]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_ranked_list(path) -> RankedTermList:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise RankedListParseError(f"cannot read ranked list {path}: {exc.strerror or exc}") from exc
    method = None
    entries = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("method:"):
                method = body[len("method:"):].strip()
            continue
        if line == "rank\tterm\tscore":
            continue
        parts = line.split("\t")
        try:
            if len(parts) != 3:
                raise ValueError(f"expected 3 tab-separated fields, got {len(parts)}")
            rank, term, score = int(parts[0]), parts[1], float(parts[2])
            if rank != len(entries) + 1:
                raise ValueError(f"rank {rank} out of sequence")
            if not term.strip():
                raise ValueError("empty term")
        except ValueError as exc:
            raise RankedListParseError(f"{path}:{lineno}: {exc}") from exc
        entries.append(RankedEntry(rank, TermKey.parse(term), score))
    if method is None:
        raise RankedListParseError(f"{path}: missing '# method:' header line")
    return RankedTermList(method, tuple(entries))
