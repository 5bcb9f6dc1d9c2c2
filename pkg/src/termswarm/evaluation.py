"""Gold-standard matching, precision@k and comparison reports."""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from termswarm.errors import ContainsStopword, EmptyGoldStandard, EmptyTerm, KTooLarge, MissingFile, TooLong
from termswarm.pipeline import PipelineConfig, TermKey, normalize_term, tokenize
from termswarm.scoring import RankedTermList

__all__ = [
    "DEFAULT_K_VALUES", "GoldStandard", "PrecisionReport", "load_gold",
    "gold_from_lines", "hits_at_k", "precision_at_k", "compare",
]

logger = logging.getLogger(__name__)

DEFAULT_K_VALUES = (25, 50, 150, 250)


@dataclass(frozen=True)
class GoldStandard:
    keys: frozenset[TermKey]
    raw_lines: tuple[str, ...] = ()
    skipped: int = 0

    def __len__(self):
        return len(self.keys)

    def __contains__(self, key):
        return key in self.keys


def gold_from_lines(lines, config: PipelineConfig | None = None) -> GoldStandard:
    """Normalize gold terms the same way candidates are normalized.

    Each line is tokenized, stopwords at either edge are stripped, and the
    rest goes through ``normalize_term``. Lines that end up empty, too long
    or with an inner stopword cannot match any candidate and are skipped.
    """
    config = config or PipelineConfig()
    keys = set()
    raw = []
    skipped = 0
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        raw.append(line)
        tokens = tokenize(line, config.stopwords)
        while tokens and tokens[0].is_stopword:
            tokens.pop(0)
        while tokens and tokens[-1].is_stopword:
            tokens.pop()
        try:
            keys.add(normalize_term([t.surface for t in tokens], config))
        except (EmptyTerm, TooLong, ContainsStopword) as exc:
            skipped += 1
            logger.debug("skipping gold line %r: %s", line, exc)
    if skipped:
        logger.warning("%d gold-standard lines could not be normalized and were skipped", skipped)
    if not keys:
        raise EmptyGoldStandard("gold standard contains no usable terms")
    return GoldStandard(frozenset(keys), tuple(raw), skipped)


def load_gold(path, config: PipelineConfig | None = None) -> GoldStandard:
    path = Path(path)
    if not path.is_file():
        raise MissingFile(f"gold standard file not found: {path}")
    return gold_from_lines(path.read_text(encoding="utf-8").splitlines(), config)


def _gold_keys(gold):
    return gold.keys if isinstance(gold, GoldStandard) else frozenset(gold)


def hits_at_k(ranked: RankedTermList, gold, k: int) -> int:
    keys = _gold_keys(gold)
    if not keys:
        raise EmptyGoldStandard("gold standard is empty")
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > len(ranked):
        raise KTooLarge(k, len(ranked))
    return sum(1 for key in ranked.top(k) if key in keys)


def precision_at_k(ranked: RankedTermList, gold, k: int) -> float:
    return hits_at_k(ranked, gold, k) / k


@dataclass
class PrecisionReport:
    k_values: tuple[int, ...]
    rows: dict[str, dict[int, float]]
    hits: dict[str, dict[int, int]] = field(default_factory=dict)
    config: dict | None = None

    def to_dict(self) -> dict:
        doc = {
            "k_values": list(self.k_values),
            "methods": list(self.rows),
            "precision": {m: {str(k): p for k, p in row.items()} for m, row in self.rows.items()},
            "hits": {m: {str(k): h for k, h in row.items()} for m, row in self.hits.items()},
        }
        if self.config is not None:
            doc["config"] = self.config
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        """Aligned table, one row per method, one column per k."""
        name_w = max([len("precision(algorithm)")] + [len(m) for m in self.rows])
        col_w = max(7, max(len(str(k)) for k in self.k_values))
        lines = []
        if self.config is not None:
            lines.append("# config: " + json.dumps(self.config, sort_keys=True))
        lines.append(" " * name_w + "  number of terms")
        lines.append("precision(algorithm)".ljust(name_w) + "".join(f"  {k:>{col_w}}" for k in self.k_values))
        for method, row in self.rows.items():
            lines.append(method.ljust(name_w) + "".join(f"  {row[k]:>{col_w}.3f}" for k in self.k_values))
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        if self.config is not None:
            buf.write("# config: " + json.dumps(self.config, sort_keys=True) + "\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["method"] + [str(k) for k in self.k_values])
        for method, row in self.rows.items():
            writer.writerow([method] + [f"{row[k]:.6f}" for k in self.k_values])
        return buf.getvalue()

    def write(self, prefix) -> list[Path]:
        """Write ``prefix.json``, ``prefix.txt`` and ``prefix.csv``."""
        prefix = Path(prefix)
        out = []
        for ext, text in ((".json", self.to_json()), (".txt", self.to_text()), (".csv", self.to_csv())):
            path = prefix.with_name(prefix.name + ext)
            path.write_text(text, encoding="utf-8")
            out.append(path)
        return out


def compare(methods: Sequence[RankedTermList], gold, k_values: Sequence[int], config=None) -> PrecisionReport:
    """Precision of every method at every k, rows in input order."""
    k_values = tuple(k_values)
    if not k_values:
        raise ValueError("k_values must not be empty")
    if any(b <= a for a, b in zip(k_values, k_values[1:])) or k_values[0] < 1:
        raise ValueError("k_values must be strictly increasing positive integers")
    rows, hits = {}, {}
    for ranked in methods:
        if ranked.method in rows:
            raise ValueError(f"duplicate method name {ranked.method!r}")
        h = {k: hits_at_k(ranked, gold, k) for k in k_values}
        hits[ranked.method] = h
        rows[ranked.method] = {k: h[k] / k for k in k_values}
    return PrecisionReport(k_values, rows, hits, config)
