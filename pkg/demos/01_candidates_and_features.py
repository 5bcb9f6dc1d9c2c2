"""
From raw text to candidate terms and features
=============================================

Tokenize a handful of short documents, cut them into stopword-delimited
chunks, and look at the five feature scores of the resulting candidates.
"""

from termswarm import Corpus, CorpusRole, prepare, tokenize
from termswarm.features import write_feature_matrix

######################################################################
# Tokens carry a stopword flag and their word position. Numbers are
# dropped, hyphenated words stay whole.

for tok in tokenize("The mid-day prayers, 5 times a day."):
    print(tok)

######################################################################
# A tiny target domain and a contrastive one.

target = Corpus.from_texts("prayer", {
    "a.txt": "Ritual prayer at dawn. The night prayer follows the evening prayer.",
    "b.txt": "Congregational prayer in the mosque. Ritual prayer requires ablution.",
    "c.txt": "Ablution before ritual prayer. Dawn prayer is short.",
})
news = Corpus.from_texts("news", {
    "n1.txt": "Oil prices rose at dawn in early trading.",
    "n2.txt": "The central bank held rates. Traders expect a cut.",
}, CorpusRole.CONTRASTIVE)

prepared = prepare(target, [news])
print(f"{len(prepared.candidates)} candidates")

######################################################################
# Raw features per candidate: domain relevance, domain consensus, term
# cohesion, first occurrence, length score. Normalized columns are
# min-max rescaled to [0, 1].

print(f"{'term':<28}" + "".join(f"{n:>8}" for n in ("f1", "f2", "f3", "f4", "f5")))
for key, fv in prepared.features:
    print(f"{str(key):<28}" + "".join(f"{v:8.3f}" for v in fv.raw))

######################################################################
# The whole matrix can be exported as tab-separated text.

write_feature_matrix(prepared.features, "features.tsv")
