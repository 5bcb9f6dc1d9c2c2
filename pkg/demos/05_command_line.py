"""
Training and evaluating from the command line
=============================================

Write a synthetic corpus to disk, then drive ``termswarm`` through its
subcommands: split, train, extract, compare.
"""

import subprocess
import sys
import tempfile
from pathlib import Path

from termswarm import prepare
from termswarm.synthetic import planted_gold, synthetic_corpora

work = Path(tempfile.mkdtemp(prefix="termswarm-"))
corpus, news = synthetic_corpora(seed=4, n_target_docs=20, sentences_per_doc=25)
for name, c in (("quran", corpus), ("news", news)):
    (work / name).mkdir()
    for doc in c.documents:
        (work / name / doc.id).write_text(doc.text)

prep = prepare(corpus, [news])
surface = {c.key: min(c.surface_forms) for c in prep.candidates}
gold = planted_gold(prep.features, [0.2, 0.7, 0.4, 0.1, 0.5], 300)
(work / "gold.txt").write_text("\n".join(sorted(surface[k] for k in gold)) + "\n")


def termswarm(*args):
    print("$ termswarm", " ".join(args))
    subprocess.run([sys.executable, "-m", "termswarm", *args], check=True, cwd=work)


######################################################################
# A seeded 70/30 document split.

termswarm("split", "--target", "quran", "--split", "0.7,42", "--out", "split")

######################################################################
# Training writes a JSON model with the weights, the seed and the trace.

termswarm("train", "--target", "split/train", "--contrastive", "news", "--gold", "gold.txt",
          "--seed", "42", "--out", "model.json")

termswarm("extract", "--model", "model.json", "--target", "split/test", "--contrastive", "news",
          "--top-n", "25", "--out", "top25.tsv")
print((work / "top25.tsv").read_text()[:400])

termswarm("compare", "--model", "model.json", "--target", "split/test", "--contrastive", "news",
          "--gold", "gold.txt", "--per-feature", "--out", "report")
