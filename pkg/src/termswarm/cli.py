"""Command line front end: train, extract, evaluate, compare, split."""

from __future__ import annotations

import argparse
import logging
import random
import shutil
import sys
from pathlib import Path

from termswarm.errors import EmptyCorpus, KTooLarge, TermSwarmError
from termswarm.evaluation import DEFAULT_K_VALUES, compare, load_gold
from termswarm.features import FEATURE_NAMES, prepare
from termswarm.optimizer import SwarmConfig, load_model, optimize, save_model
from termswarm.pipeline import CorpusRole, PipelineConfig, load_corpus, load_stopwords
from termswarm.scoring import (
    RankedTermList,
    rank_feature,
    rank_glossary,
    rank_swarm,
    rank_termextractor,
    rank_tfidf,
    rank_weirdness,
    read_ranked_list,
    write_ranked_list,
)

logger = logging.getLogger("termswarm")

SWARM_METHOD = "Swarm Model"


def _pipeline_config(args) -> PipelineConfig:
    kw = {"max_len": args.max_len, "min_freq": args.min_freq}
    if args.stopwords:
        kw["stopwords"] = load_stopwords(args.stopwords)
    return PipelineConfig(**kw)


def _load_corpora(args, config):
    target = load_corpus(args.target, "target", CorpusRole.TARGET, config)
    contrastive = [
        load_corpus(path, f"contrastive{i}", CorpusRole.CONTRASTIVE, config)
        for i, path in enumerate(args.contrastive or [])
    ]
    return target, contrastive


def _config_echo(args, *names) -> dict:
    echo = {"command": args.command}
    for name in names:
        echo[name] = getattr(args, name)
    return echo


_CORPUS_ARGS = ("target", "contrastive", "stopwords", "max_len", "min_freq")


def cmd_train(args) -> int:
    config = _pipeline_config(args)
    target, contrastive = _load_corpora(args, config)
    gold = load_gold(args.gold, config)
    prepared = prepare(target, contrastive, config)
    cfg = SwarmConfig(
        num_particles=args.particles,
        max_iterations=args.iterations,
        c1=args.c1,
        c2=args.c2,
        v_max=args.vmax,
        rng_seed=args.seed,
        fitness_k=args.fitness_k,
    )
    model = optimize(prepared.features, gold, cfg)
    echo = _config_echo(args, *_CORPUS_ARGS, "gold")
    save_model(model, args.out, echo)
    print(f"fitness {model.fitness} (top {model.fitness_k}, {len(prepared.features)} candidates)")
    for name, w in zip(FEATURE_NAMES, model.weights):
        print(f"{name}\t{w:.6f}")
    return 0


def cmd_extract(args) -> int:
    model = load_model(args.model)
    config = _pipeline_config(args)
    target, contrastive = _load_corpora(args, config)
    prepared = prepare(target, contrastive, config)
    ranked = rank_swarm(prepared.features, model.weights, SWARM_METHOD)
    if args.top_n is not None:
        if args.top_n > len(ranked):
            raise KTooLarge(args.top_n, len(ranked))
        ranked = RankedTermList(ranked.method, ranked.entries[: args.top_n])
    echo = _config_echo(args, "model", *_CORPUS_ARGS, "top_n")
    write_ranked_list(ranked, args.out, echo)
    print(f"wrote {len(ranked)} terms to {args.out}")
    return 0


def cmd_evaluate(args) -> int:
    config = _pipeline_config(args)
    gold = load_gold(args.gold, config)
    lists = [read_ranked_list(p) for p in args.ranked]
    k_values = sorted(set(args.k or DEFAULT_K_VALUES))
    report = compare(lists, gold, k_values, _config_echo(args, "ranked", "gold", "k", "stopwords", "max_len"))
    paths = report.write(args.out)
    sys.stdout.write(report.to_text())
    logger.info("wrote %s", ", ".join(map(str, paths)))
    return 0


def all_rankings(prepared, weights, per_feature=False) -> list[RankedTermList]:
    """Per-feature rows (optional), the four baselines, then the swarm model."""
    features, model = prepared.features, prepared.model
    rows = []
    if per_feature:
        rows += [rank_feature(features, name) for name in FEATURE_NAMES]
    rows.append(rank_tfidf(features, model))
    if model.contrastive_domains:
        rows += [
            rank_weirdness(features, model),
            rank_glossary(features, model),
            rank_termextractor(features),
        ]
    else:
        logger.warning("no contrastive corpora: Weirdness, GlossaryExtraction and TermExtractor omitted")
    rows.append(rank_swarm(features, weights, SWARM_METHOD))
    return rows


def cmd_compare(args) -> int:
    model = load_model(args.model)
    config = _pipeline_config(args)
    target, contrastive = _load_corpora(args, config)
    gold = load_gold(args.gold, config)
    prepared = prepare(target, contrastive, config)
    rows = all_rankings(prepared, model.weights, args.per_feature)
    k_values = sorted(set(args.k or DEFAULT_K_VALUES))
    echo = _config_echo(args, "model", *_CORPUS_ARGS, "gold", "k", "per_feature")
    report = compare(rows, gold, k_values, echo)
    report.write(args.out)
    sys.stdout.write(report.to_text())
    return 0


def _parse_split(text):
    ratio, _, seed = text.partition(",")
    try:
        ratio = float(ratio)
        seed = int(seed) if seed else None
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected RATIO[,SEED], got {text!r}")
    if not 0.0 < ratio < 1.0:
        raise argparse.ArgumentTypeError("split ratio must be strictly between 0 and 1")
    return ratio, seed


def cmd_split(args) -> int:
    ratio, seed = args.split
    seed = args.seed if seed is None else seed
    corpus = load_corpus(args.target, "target", CorpusRole.TARGET, _pipeline_config(args))
    ids = [d.id for d in corpus.documents]
    if len(ids) < 2:
        raise EmptyCorpus("need at least two documents to split")
    random.Random(seed).shuffle(ids)
    n_train = min(max(1, round(ratio * len(ids))), len(ids) - 1)
    out = Path(args.out)
    for part, members in (("train", ids[:n_train]), ("test", ids[n_train:])):
        for doc_id in sorted(members):
            dest = out / part / doc_id
            dest.parent.mkdir(parents=True, exist_ok=True)
            shutil.copyfile(Path(args.target) / doc_id, dest)
    print(f"train: {n_train} documents, test: {len(ids) - n_train} documents (seed {seed})")
    return 0


def _add_corpus_args(p, target_help):
    p.add_argument("--target", required=True, help=target_help)
    p.add_argument("--contrastive", action="append", default=[], metavar="DIR",
                   help="contrastive corpus directory (repeatable)")
    _add_text_args(p)


def _add_text_args(p):
    p.add_argument("--stopwords", help="stopword file, one word per line (default: bundled English list)")
    p.add_argument("--max-len", type=int, default=4, help="longest candidate in words (default 4)")
    p.add_argument("--min-freq", type=int, default=1, help="minimum candidate frequency (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="termswarm", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="learn feature weights on a training corpus")
    _add_corpus_args(p, "training corpus directory")
    p.add_argument("--gold", required=True, help="gold-standard term file")
    p.add_argument("--particles", type=int, default=40)
    p.add_argument("--iterations", type=int, default=500)
    p.add_argument("--c1", type=float, default=2.0)
    p.add_argument("--c2", type=float, default=2.0)
    p.add_argument("--vmax", type=float, default=0.25)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--fitness-k", type=int, default=None,
                   help="cutoff for the training fitness (default: gold-standard size)")
    p.add_argument("--out", required=True, help="model file to write")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("extract", help="rank terms of a test corpus with a trained model")
    p.add_argument("--model", required=True)
    _add_corpus_args(p, "test corpus directory")
    p.add_argument("--top-n", type=int, default=None, help="number of terms to write (default: all)")
    p.add_argument("--out", required=True, help="ranked-list file to write")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("evaluate", help="precision@k of ranked-list files")
    p.add_argument("ranked", nargs="+", help="ranked-list files")
    p.add_argument("--gold", required=True)
    p.add_argument("--k", type=int, action="append", help="cutoff (repeatable; default 25 50 150 250)")
    _add_text_args(p)
    p.add_argument("--out", required=True, help="report path prefix (.json/.txt/.csv are appended)")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("compare", help="evaluate the swarm model against the baselines")
    p.add_argument("--model", required=True)
    _add_corpus_args(p, "test corpus directory")
    p.add_argument("--gold", required=True)
    p.add_argument("--k", type=int, action="append", help="cutoff (repeatable; default 25 50 150 250)")
    p.add_argument("--per-feature", action="store_true", help="also report single-feature rankings f1..f5")
    p.add_argument("--out", required=True, help="report path prefix (.json/.txt/.csv are appended)")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("split", help="seeded random train/test split of a corpus directory")
    p.add_argument("--target", required=True)
    p.add_argument("--split", type=_parse_split, default=(0.8, None), metavar="RATIO[,SEED]",
                   help="fraction of documents for training, optional seed (default 0.8)")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", required=True, help="directory receiving train/ and test/")
    _add_text_args(p)
    p.set_defaults(func=cmd_split)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    if any(k < 1 for k in getattr(args, "k", None) or ()):
        parser.error("--k values must be positive")
    try:
        return args.func(args)
    except TermSwarmError as exc:
        print(f"termswarm {args.command}: error [{exc.module}]: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"termswarm {args.command}: error [io]: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"termswarm {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
