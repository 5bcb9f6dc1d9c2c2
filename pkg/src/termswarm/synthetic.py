"""Seeded synthetic corpora for tests, benchmarks and demos.

Documents are sentences of pseudo-words separated by stopwords. The target
domain favours its own vocabulary and a set of recurring multi-word phrases;
the contrastive domain mostly uses a general vocabulary, with a few target
words leaking in so domain relevance is not trivially 1.
"""

from __future__ import annotations

import itertools

import numpy as np

from termswarm.pipeline import Corpus, CorpusRole, default_stopwords
from termswarm.porter import stem
from termswarm.scoring import rank_swarm

__all__ = ["make_vocabulary", "synthetic_corpora", "planted_gold"]

_ONSETS = "b d f g k l m n p r t v z".split()
_NUCLEI = "a i o u".split()
_GLUE = ("the", "of", "and", "in", "to", "with", "for", "on", "by", "from")


def make_vocabulary(size: int, rng: np.random.Generator, exclude=frozenset()) -> list[str]:
    """``size`` distinct pseudo-words whose stems are distinct and not stopwords."""
    syllables = [o + n for o, n in itertools.product(_ONSETS, _NUCLEI)]
    stop = default_stopwords()
    words, stems = [], set()
    while len(words) < size:
        n_syl = int(rng.integers(2, 4))
        word = "".join(syllables[i] for i in rng.integers(0, len(syllables), n_syl))
        s = stem(word)
        if word in stop or s in stems or word in exclude:
            continue
        words.append(word)
        stems.add(s)
    return words


def _zipf_weights(n, a=1.1):
    w = 1.0 / np.arange(1, n + 1) ** a
    return w / w.sum()


def _sentence(rng, vocab, weights, phrases, phrase_rate, max_chunk=3):
    parts = []
    for _ in range(int(rng.integers(2, 6))):
        if phrases and rng.random() < phrase_rate:
            chunk = list(phrases[int(rng.integers(len(phrases)))])
        else:
            n = int(rng.integers(1, max_chunk + 1))
            chunk = [vocab[i] for i in rng.choice(len(vocab), size=n, p=weights)]
        parts.append(" ".join(chunk))
        parts.append(_GLUE[int(rng.integers(len(_GLUE)))])
    return " ".join(parts[:-1]).capitalize() + "."


def _document(rng, n_sentences, vocab, weights, phrases, phrase_rate):
    return " ".join(_sentence(rng, vocab, weights, phrases, phrase_rate) for _ in range(n_sentences))


def synthetic_corpora(
    seed: int = 0,
    n_target_docs: int = 6,
    n_contrastive_docs: int = 6,
    sentences_per_doc: int = 12,
    domain_vocab: int = 60,
    general_vocab: int = 120,
    n_phrases: int = 15,
    leak: float = 0.15,
) -> tuple[Corpus, Corpus]:
    """A (target, contrastive) corpus pair drawn from ``seed``."""
    rng = np.random.default_rng(seed)
    domain = make_vocabulary(domain_vocab, rng)
    general = make_vocabulary(general_vocab, rng, exclude=frozenset(domain))
    phrases = [
        tuple(domain[i] for i in rng.choice(len(domain), size=int(rng.integers(2, 4)), replace=False))
        for _ in range(n_phrases)
    ]
    target_vocab = domain + general[: general_vocab // 4]
    target_w = _zipf_weights(len(target_vocab))
    n_leak = max(1, int(leak * len(domain)))
    contrast_vocab = general + domain[:n_leak]
    contrast_w = _zipf_weights(len(contrast_vocab))

    target = {
        f"t{i:03d}.txt": _document(rng, sentences_per_doc, target_vocab, target_w, phrases, 0.3)
        for i in range(n_target_docs)
    }
    contrastive = {
        f"c{i:03d}.txt": _document(rng, sentences_per_doc, contrast_vocab, contrast_w, phrases[:2], 0.05)
        for i in range(n_contrastive_docs)
    }
    return (
        Corpus.from_texts("target", target, CorpusRole.TARGET),
        Corpus.from_texts("contrastive", contrastive, CorpusRole.CONTRASTIVE),
    )


def planted_gold(features, weights, k: int):
    """Keys of the top ``k`` candidates under ``weights`` (ties by key)."""
    ranked = rank_swarm(features, weights)
    return frozenset(ranked.top(k))
