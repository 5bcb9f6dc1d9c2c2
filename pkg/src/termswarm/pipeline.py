"""Corpus ingestion, tokenization and candidate term generation.

Candidates are stopword-delimited chunks of the token stream plus every
contiguous sub-n-gram of those chunks, each normalized to a ``TermKey`` of
lowercased Porter stems.
"""

from __future__ import annotations

import enum
import logging
import re
import unicodedata
from collections import defaultdict
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from termswarm.errors import (
    ContainsStopword,
    EmptyCorpus,
    EmptyTerm,
    IoFailure,
    MissingDirectory,
    NoCandidates,
    TooLong,
)
from termswarm.porter import stem

__all__ = [
    "CorpusRole", "Document", "Corpus", "Token", "TermKey", "Occurrence",
    "CandidateTerm", "PipelineConfig", "load_stopwords", "default_stopwords",
    "load_corpus", "tokenize", "stem", "normalize_term",
    "generate_candidates", "build_candidate_set",
]

logger = logging.getLogger(__name__)

# word characters joined by single internal apostrophes or hyphens
_TOKEN_RE = re.compile(r"[^\W_]+(?:['’-][^\W_]+)*")
_SENTENCE_END = frozenset(".!?;:")


class CorpusRole(str, enum.Enum):
    TARGET = "target"
    CONTRASTIVE = "contrastive"


@dataclass(frozen=True)
class Token:
    surface: str
    position: int
    is_stopword: bool
    # a sentence boundary or a dropped numeric token separates this token
    # from the previous one
    boundary_before: bool = False


@dataclass(frozen=True, order=True)
class TermKey:
    """Normalized identity of a candidate phrase: its ordered stems."""

    stems: tuple[str, ...]

    def __len__(self):
        return len(self.stems)

    def __str__(self):
        return " ".join(self.stems)

    @classmethod
    def parse(cls, text: str) -> "TermKey":
        return cls(tuple(text.split()))


@dataclass(frozen=True, order=True)
class Occurrence:
    doc_id: str
    first_word_position: int


@dataclass
class CandidateTerm:
    key: TermKey
    surface_forms: frozenset[str]
    occurrences: list[Occurrence]

    @property
    def frequency(self) -> int:
        return len(self.occurrences)


@dataclass
class Document:
    id: str
    text: str
    tokens: list[Token] | None = field(default=None, repr=False)

    @property
    def token_count(self) -> int:
        if self.tokens is None:
            raise ValueError(f"document {self.id!r} has not been tokenized")
        return len(self.tokens)


@dataclass
class Corpus:
    name: str
    documents: list[Document]
    role: CorpusRole = CorpusRole.TARGET

    def __post_init__(self):
        if not self.documents:
            raise EmptyCorpus(f"corpus {self.name!r} has no documents")
        ids = [d.id for d in self.documents]
        if len(set(ids)) != len(ids):
            raise ValueError(f"corpus {self.name!r} has duplicate document ids")
        self.role = CorpusRole(self.role)

    @classmethod
    def from_texts(cls, name, texts, role=CorpusRole.TARGET):
        """Build a corpus from ``{id: text}`` or a sequence of texts."""
        if isinstance(texts, dict):
            items = list(texts.items())
        else:
            items = [(f"doc{i:04d}", t) for i, t in enumerate(texts)]
        return cls(name, [Document(i, t) for i, t in items], role)

    def __len__(self):
        return len(self.documents)


def load_stopwords(path) -> frozenset[str]:
    """Read a stopword file: one word per line, ``#`` starts a comment."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(path, exc.strerror or str(exc)) from exc
    return _parse_stopwords(text)


def _parse_stopwords(text):
    words = set()
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            words.add(_fold(line))
    return frozenset(words)


_DEFAULT_STOPWORDS = None


def default_stopwords() -> frozenset[str]:
    """The bundled English stopword list (SMART, 570 words)."""
    global _DEFAULT_STOPWORDS
    if _DEFAULT_STOPWORDS is None:
        text = resources.files("termswarm").joinpath("data/stopwords_en.txt").read_text("utf-8")
        _DEFAULT_STOPWORDS = _parse_stopwords(text)
    return _DEFAULT_STOPWORDS


@dataclass(frozen=True)
class PipelineConfig:
    max_len: int = 4
    min_freq: int = 1
    stopwords: frozenset[str] = field(default_factory=default_stopwords, repr=False)
    extensions: tuple[str, ...] = (".txt",)

    def __post_init__(self):
        if self.max_len < 1:
            raise ValueError("max_len must be >= 1")
        if self.min_freq < 1:
            raise ValueError("min_freq must be >= 1")


def _fold(text):
    return unicodedata.normalize("NFC", text).lower()


def load_corpus(dir_path, name=None, role=CorpusRole.TARGET, config=None) -> Corpus:
    """Load every matching file under ``dir_path`` as one document.

    Files are found recursively and ordered lexicographically by their path
    relative to ``dir_path``, which also serves as the document id.
    """
    config = config or PipelineConfig()
    root = Path(dir_path)
    if not root.is_dir():
        raise MissingDirectory(f"corpus directory not found: {root}")
    exts = tuple(e.lower() for e in config.extensions)
    files = sorted(
        (p for p in root.rglob("*") if p.is_file() and p.suffix.lower() in exts),
        key=lambda p: p.relative_to(root).as_posix(),
    )
    if not files:
        raise EmptyCorpus(f"no {'/'.join(exts)} files in {root}")
    docs = []
    for path in files:
        try:
            raw = path.read_bytes()
        except OSError as exc:
            raise IoFailure(path, exc.strerror or str(exc)) from exc
        docs.append(Document(path.relative_to(root).as_posix(), raw.decode("utf-8", errors="replace")))
    return Corpus(name or root.name, docs, role)


def tokenize(text: str, stopwords: frozenset[str] | None = None) -> list[Token]:
    """Split text into lowercased word tokens.

    Runs of non-alphanumeric characters separate tokens, except apostrophes
    and hyphens between two word characters. Purely numeric tokens are
    dropped. Sentence punctuation (``.!?;:``) between two tokens, or a
    dropped number, marks the later token with ``boundary_before``.
    """
    if stopwords is None:
        stopwords = default_stopwords()
    text = _fold(text)
    tokens = []
    last_end = 0
    pending_break = False
    for match in _TOKEN_RE.finditer(text):
        word = match.group()
        gap = text[last_end:match.start()]
        last_end = match.end()
        if any(ch in _SENTENCE_END for ch in gap):
            pending_break = True
        if not any(ch.isalpha() for ch in word):
            pending_break = True
            continue
        tokens.append(Token(word, len(tokens), word in stopwords, pending_break and bool(tokens)))
        pending_break = False
    return tokens


def tokenize_document(doc: Document, config: PipelineConfig | None = None) -> Document:
    config = config or PipelineConfig()
    doc.tokens = tokenize(doc.text, config.stopwords)
    return doc


def tokenize_corpus(corpus: Corpus, config: PipelineConfig | None = None) -> Corpus:
    for doc in corpus.documents:
        tokenize_document(doc, config)
    return corpus


def normalize_term(words: Sequence[str], config: PipelineConfig | None = None) -> TermKey:
    """Lowercase and stem ``words`` into a ``TermKey``."""
    config = config or PipelineConfig()
    if not words:
        raise EmptyTerm("a term needs at least one word")
    if len(words) > config.max_len:
        raise TooLong(f"{len(words)} words exceeds max_len={config.max_len}")
    folded = [_fold(w) for w in words]
    for w in folded:
        if w in config.stopwords:
            raise ContainsStopword(f"{w!r} is a stopword")
    return TermKey(tuple(stem(w) for w in folded))


def _chunks(tokens: Sequence[Token]) -> Iterable[list[Token]]:
    chunk: list[Token] = []
    for tok in tokens:
        if tok.is_stopword or tok.boundary_before:
            if chunk:
                yield chunk
            chunk = []
        if not tok.is_stopword:
            chunk.append(tok)
    if chunk:
        yield chunk


def _emit(doc: Document, max_len: int):
    """Yield ``(key, occurrence, surface)`` for every sub-n-gram of every chunk."""
    if doc.tokens is None:
        raise ValueError(f"document {doc.id!r} has not been tokenized")
    for chunk in _chunks(doc.tokens):
        stems = [stem(t.surface) for t in chunk]
        for n in range(1, min(len(chunk), max_len) + 1):
            for i in range(len(chunk) - n + 1):
                yield (
                    TermKey(tuple(stems[i:i + n])),
                    Occurrence(doc.id, chunk[i].position),
                    " ".join(t.surface for t in chunk[i:i + n]),
                )


def generate_candidates(doc: Document, max_len: int = 4) -> list[tuple[TermKey, Occurrence]]:
    """All keyed occurrences of sub-n-grams (length 1..max_len) of ``doc``'s chunks."""
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    return [(key, occ) for key, occ, _ in _emit(doc, max_len)]


def build_candidate_set(target: Corpus, config: PipelineConfig | None = None) -> list[CandidateTerm]:
    """Merge the target corpus's emissions into candidates sorted by key."""
    config = config or PipelineConfig()
    occurrences = defaultdict(list)
    surfaces = defaultdict(set)
    for doc in target.documents:
        if doc.tokens is None:
            tokenize_document(doc, config)
        for key, occ, surface in _emit(doc, config.max_len):
            occurrences[key].append(occ)
            surfaces[key].add(surface)
    candidates = [
        CandidateTerm(key, frozenset(surfaces[key]), sorted(occs))
        for key, occs in occurrences.items()
        if len(occs) >= config.min_freq
    ]
    if not candidates:
        raise NoCandidates(f"no candidate terms with frequency >= {config.min_freq} in {target.name!r}")
    candidates.sort(key=lambda c: c.key)
    logger.debug("%d candidates from %d documents", len(candidates), len(target))
    return candidates
