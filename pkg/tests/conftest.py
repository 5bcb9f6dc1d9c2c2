import random

import pytest

from termswarm.pipeline import Corpus, CorpusRole, PipelineConfig, default_stopwords

TOY_WORDS = ["prayer", "ritual", "prayers", "night", "dawn", "mosque", "verse", "fasting",
             "charity", "pilgrim", "market", "stock", "oil", "trade", "price", "bank"]
TOY_STOP = ["the", "of", "and", "in", "to", "a"]


def random_texts(rng, n_docs, max_tokens=60, prefix="d"):
    texts = {}
    for i in range(n_docs):
        words = []
        for _ in range(rng.randint(3, max_tokens)):
            r = rng.random()
            if r < 0.25:
                words.append(rng.choice(TOY_STOP))
            elif r < 0.32:
                words.append(rng.choice([".", ",", "7", "!"]))
            else:
                words.append(rng.choice(TOY_WORDS))
        texts[f"{prefix}{i}.txt"] = " ".join(words)
    return texts


def random_toy_corpora(seed, max_docs=5, max_tokens=60):
    """(target texts, [contrastive texts...]) with at most ``max_docs`` docs each."""
    rng = random.Random(seed)
    target = random_texts(rng, rng.randint(1, max_docs), max_tokens, "t")
    contrastive = [random_texts(rng, rng.randint(1, max_docs), max_tokens, f"c{j}_")
                   for j in range(rng.randint(0, 2))]
    return target, contrastive


def as_corpora(target_texts, contrastive_sets):
    target = Corpus.from_texts("target", target_texts, CorpusRole.TARGET)
    contrastive = [Corpus.from_texts(f"contrastive{j}", t, CorpusRole.CONTRASTIVE)
                   for j, t in enumerate(contrastive_sets)]
    return target, contrastive


@pytest.fixture
def config():
    return PipelineConfig()


@pytest.fixture
def stopwords():
    return default_stopwords()


@pytest.fixture
def corpus_dirs(tmp_path):
    """A small on-disk train/test/contrastive layout plus a gold file."""
    from termswarm.synthetic import synthetic_corpora

    train, contrast = synthetic_corpora(seed=11, n_target_docs=6, sentences_per_doc=40)
    test, _ = synthetic_corpora(seed=11, n_target_docs=9, sentences_per_doc=40)
    dirs = {}
    for name, corpus in (("train", train), ("test", test), ("news", contrast)):
        d = tmp_path / name
        d.mkdir()
        for doc in corpus.documents:
            (d / doc.id).write_text(doc.text, encoding="utf-8")
        dirs[name] = d
    from termswarm.features import prepare
    from termswarm.synthetic import planted_gold

    prep = prepare(train, [contrast])
    gold = planted_gold(prep.features, [0.2, 0.5, 0.9, 0.1, 0.3], 60)
    gold_path = tmp_path / "gold.txt"
    surfaces = {c.key: min(c.surface_forms) for c in prep.candidates}
    gold_path.write_text("\n".join(sorted(surfaces[k] for k in gold)) + "\n", encoding="utf-8")
    dirs["gold"] = gold_path
    return dirs


_ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record one acceptance line, then fail the test if the criterion failed."""

    def record(label, ok, detail=""):
        _ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else ""))
        assert ok, f"{label}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
