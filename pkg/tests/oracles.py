"""Brute-force reference computations, independent of the package's counting code.

Only the token stream (``tokenize``) and ``stem`` are shared with the code
under test. N-grams are found by scanning every window of the token stream
and rejecting windows that contain a stopword or cross a boundary, rather
than by chunking first.
"""

import math
from collections import defaultdict
from fractions import Fraction

from termswarm.pipeline import tokenize
from termswarm.porter import stem


def window_ngrams(tokens, max_len):
    """[(stems tuple, start position)] for every valid window."""
    out = []
    for start in range(len(tokens)):
        for n in range(1, max_len + 1):
            window = tokens[start:start + n]
            if len(window) < n:
                break
            if any(t.is_stopword for t in window):
                break
            if any(t.boundary_before for t in window[1:]):
                break
            out.append((tuple(stem(t.surface) for t in window), start))
    return out


def recount(target_texts, contrastive_sets, stopwords, max_len=4):
    """Raw features per key recomputed from scratch.

    ``target_texts`` is ``{doc_id: text}``; ``contrastive_sets`` is a list of
    such dicts. Returns ``{stems: (f1, f2, f3, f4, f5)}``.
    """
    streams = {d: tokenize(t, stopwords) for d, t in target_texts.items()}
    per_doc = defaultdict(lambda: defaultdict(int))
    first = defaultdict(dict)
    target_mass = 0
    words = defaultdict(int)
    for d, toks in streams.items():
        for t in toks:
            if not t.is_stopword:
                words[stem(t.surface)] += 1
        for key, pos in window_ngrams(toks, max_len):
            target_mass += 1
            per_doc[key][d] += 1
            if d not in first[key] or pos < first[key][d]:
                first[key][d] = pos
    contrast = []
    for texts in contrastive_sets:
        counts = defaultdict(int)
        mass = 0
        for text in texts.values():
            for key, _ in window_ngrams(tokenize(text, stopwords), max_len):
                counts[key] += 1
                mass += 1
        contrast.append((counts, mass))

    result = {}
    for key, docs in per_doc.items():
        freq = sum(docs.values())
        p_target = Fraction(freq, target_mass)
        probs = [p_target] + [Fraction(c[key], m) for c, m in contrast if m]
        dr = float(p_target / max(probs))
        dc = 0.0
        for c in docs.values():
            phi = c / freq
            dc += phi * math.log2(1 / phi)
        tc = len(key) * freq * math.log10(freq) / sum(words[w] for w in key)
        ratios = [Fraction(pos, len(streams[d])) for d, pos in first[key].items()]
        fo = float(1 - sum(ratios) / len(ratios))
        result[key] = (dr, dc, tc, fo, float(freq * len(key)))
    return result


def tfidf(target_texts, contrastive_sets, stopwords, max_len=4):
    docs = [tokenize(t, stopwords) for t in target_texts.values()]
    n_target = len(docs)
    for texts in contrastive_sets:
        docs += [tokenize(t, stopwords) for t in texts.values()]
    grams = [[k for k, _ in window_ngrams(toks, max_len)] for toks in docs]
    out = {}
    for i in range(n_target):
        for key in grams[i]:
            if key in out:
                continue
            tf = sum(g.count(key) for g in grams[:n_target])
            df = sum(1 for g in grams if key in g)
            out[key] = tf * math.log(len(docs) / df)
    return out


def hits(ranked_keys, gold, k):
    count = 0
    for key in ranked_keys[:k]:
        for g in gold:
            if g == key:
                count += 1
                break
    return count
