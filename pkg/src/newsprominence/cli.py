"""Command-line interface.

Exit codes: 0 success, 2 validation or usage error, 3 missing or unusable
resource.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from contextlib import contextmanager
from dataclasses import replace
from pathlib import Path

from newsprominence import __version__
from newsprominence.coresc import load_coresc_labels
from newsprominence.corpus import (
    DocumentKind,
    corpus_lines,
    load_corpus,
    partition_collections,
    write_links,
)
from newsprominence.errors import ResourceError, ValidationError
from newsprominence.linkextract import link_documents
from newsprominence.pipeline import (
    FORMATS,
    ExperimentConfig,
    ExperimentReport,
    compare_impact_distributions,
    emit_report,
    load_context,
    run_experiment,
)
from newsprominence.semsimrank import RankConfig, rank_document, ordering
from newsprominence.similarity import SimilarityMethod
from newsprominence.stats import (
    BootstrapConfig,
    SampleSet,
    bootstrap_mean_diff,
    dagostino_pearson,
    ks2_test,
)
from newsprominence.textproc import (
    TokenFilterConfig,
    prepare_document,
    read_word_list,
    segment_sentences,
)

EXIT_OK, EXIT_VALIDATION, EXIT_RESOURCE = 0, 2, 3

log = logging.getLogger("newsprominence")


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    default = argparse.SUPPRESS if suppress else None
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--corpus", default=default, help="corpus JSONL file")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS if suppress else 0)
    p.add_argument("--jobs", type=int, default=argparse.SUPPRESS if suppress else 1)
    p.add_argument("--out", default=default, help="output file or directory")
    p.add_argument("--stopwords", default=default, help="replacement stopword list")
    p.add_argument("--abbreviations", default=default, help="replacement abbreviation list")
    p.add_argument("-v", "--verbose", action="store_true",
                   default=argparse.SUPPRESS if suppress else False)
    return p


def _rank_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--damping", type=float, default=0.85)
    p.add_argument("--max-iter", type=int, default=100)
    p.add_argument("--epsilon", type=float, default=1e-6)
    p.add_argument("--top-n", type=int, default=1)
    p.add_argument("--word-vectors")
    p.add_argument("--sentence-embeddings")


def _bootstrap_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--resamples", type=int, default=10000)
    p.add_argument("--level", type=float, default=0.95)


def _csv_list(value: str) -> list[str]:
    return [v.strip() for v in value.split(",") if v.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="newsprominence",
        parents=[_global_flags(suppress=False)],
        description="Prominence of scientific papers in linked news articles.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    common = [_global_flags(suppress=True)]

    p = sub.add_parser("ingest", parents=common, help="validate a corpus, optionally rewrite it")
    p.add_argument("--labels", help="CoreSC label JSONL to attach")
    p.add_argument("--segment", action="store_true", help="store segmented sentences")

    p = sub.add_parser("extract-links", parents=common, help="find news->paper DOI links")
    p.add_argument("--html-dir", help="directory of saved pages named <document id>.html")

    p = sub.add_parser("rank", parents=common, help="rank sentences with SemSimRank")
    p.add_argument("--method", choices=[m.value for m in SimilarityMethod], default="bow_jsd")
    p.add_argument("--kind", choices=[k.value for k in DocumentKind], default="news")
    p.add_argument("--doc-id", action="append", help="rank only these documents")
    _rank_flags(p)

    p = sub.add_parser("experiment", parents=common, help="run the F vs D comparison")
    p.add_argument("--labels", help="CoreSC label JSONL")
    p.add_argument("--methods", type=_csv_list, default=["bow_jsd"])
    p.add_argument("--rankers", type=_csv_list,
                   default=["semsimrank", "first_sentence", "random_sentence"])
    p.add_argument("--format", type=_csv_list, default=list(FORMATS))
    _rank_flags(p)
    _bootstrap_flags(p)

    p = sub.add_parser("impact-stats", parents=common, help="compare REF impact scores")
    _bootstrap_flags(p)

    p = sub.add_parser("report", parents=common, help="re-emit a saved report.json")
    p.add_argument("--input", required=True)
    p.add_argument("--format", type=_csv_list, default=list(FORMATS))

    p = sub.add_parser("stats", parents=common, help="compare two sample files")
    p.add_argument("sample_a")
    p.add_argument("sample_b")
    _bootstrap_flags(p)
    return parser


@contextmanager
def _output(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        try:
            fh = open(path, "w", encoding="utf-8", newline="\n")
        except OSError as exc:
            raise ResourceError(f"cannot write {path}: {exc}") from None
        with fh:
            yield fh


def _dump(obj, path=None) -> None:
    with _output(path) as fh:
        fh.write(json.dumps(obj, indent=2) + "\n")


def _need_corpus(args):
    if not args.corpus:
        raise ValidationError("--corpus is required for this command")
    if not Path(args.corpus).is_file():
        raise ResourceError(f"corpus file not found: {args.corpus}")
    return load_corpus(args.corpus)


def _rank_config(args) -> RankConfig:
    return RankConfig(
        damping=args.damping,
        max_iterations=args.max_iter,
        convergence_threshold=args.epsilon,
        top_n=args.top_n,
        random_seed=args.seed,
    )


def _token_config(args) -> TokenFilterConfig:
    if args.stopwords:
        return TokenFilterConfig(stopwords=read_word_list(args.stopwords))
    return TokenFilterConfig()


def _abbreviations(args):
    return read_word_list(args.abbreviations) if args.abbreviations else None


def cmd_ingest(args) -> int:
    corpus = _need_corpus(args)
    abbreviations = _abbreviations(args)
    if args.labels:
        corpus = load_coresc_labels(args.labels, corpus, abbreviations)
    if args.segment:
        corpus = corpus.with_documents(
            replace(d, sentences=tuple(segment_sentences(d.raw_text, abbreviations)))
            for d in corpus.documents.values()
            if not d.sentences
        )
    f_coll, d_coll = partition_collections(corpus)
    summary = {
        "documents": {k.value: len(corpus.of_kind(k)) for k in DocumentKind},
        "links": len(corpus.links),
        "uoa_results": len(corpus.uoa_results),
        "pairs_F": len(f_coll),
        "pairs_D": len(d_coll),
    }
    if args.out:
        with _output(args.out) as fh:
            for line in corpus_lines(corpus):
                fh.write(line + "\n")
    _dump(summary)
    return EXIT_OK


def cmd_extract_links(args) -> int:
    corpus = _need_corpus(args)
    if args.html_dir and not Path(args.html_dir).is_dir():
        raise ResourceError(f"HTML directory not found: {args.html_dir}")
    links = link_documents(corpus, args.html_dir)
    if args.out:
        write_links(links, args.out)
    else:
        from newsprominence.corpus import dumps_record

        for link in links:
            print(dumps_record(link.to_json()))
    log.info("%d new links", len(links))
    return EXIT_OK


def cmd_rank(args) -> int:
    corpus = _need_corpus(args)
    config = _rank_config(args)
    method = SimilarityMethod(args.method)
    context = load_context(ExperimentConfig(
        methods=(method,),
        word_vectors=args.word_vectors,
        sentence_embeddings=args.sentence_embeddings,
    ))
    token_config, abbreviations = _token_config(args), _abbreviations(args)
    if args.doc_id:
        docs = [corpus[d] for d in args.doc_id if d in corpus]
        missing = [d for d in args.doc_id if d not in corpus]
        if missing:
            raise ValidationError(f"unknown document id(s): {', '.join(missing)}")
    else:
        docs = corpus.of_kind(DocumentKind(args.kind))
    with _output(args.out) as fh:
        for doc in docs:
            doc = prepare_document(doc, token_config, abbreviations)
            if not doc.sentences:
                log.warning("skipping %s: no sentences", doc.id)
                continue
            ranked = rank_document(doc, method, config, context)
            top = ordering(ranked.scores)[: config.top_n]
            record = {
                "doc_id": doc.id,
                "ranking": [{"index": i, "score": s} for i, s in top],
                "converged": ranked.converged,
                "iterations": ranked.iterations_used,
            }
            fh.write(json.dumps(record) + "\n")
    return EXIT_OK


def cmd_experiment(args) -> int:
    corpus = _need_corpus(args)
    if not args.out:
        raise ValidationError("experiment needs --out DIR")
    config = ExperimentConfig(
        methods=tuple(args.methods),
        rankers=tuple(args.rankers),
        rank_config=_rank_config(args),
        bootstrap=BootstrapConfig(args.resamples, args.level, args.seed),
        word_vectors=args.word_vectors,
        sentence_embeddings=args.sentence_embeddings,
        coresc_labels=args.labels,
        stopwords=args.stopwords,
        abbreviations=args.abbreviations,
        jobs=args.jobs,
    )
    report = run_experiment(corpus, config)
    for path in emit_report(report, args.out, args.format):
        print(path)
    return EXIT_OK


def cmd_impact_stats(args) -> int:
    corpus = _need_corpus(args)
    result = compare_impact_distributions(
        corpus, BootstrapConfig(args.resamples, args.level, args.seed)
    )
    _dump(result, args.out)
    return EXIT_OK


def cmd_report(args) -> int:
    if not args.out:
        raise ValidationError("report needs --out DIR")
    try:
        with open(args.input, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ResourceError(f"cannot read {args.input}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{args.input}: not JSON ({exc.msg})") from None
    try:
        report = ExperimentReport.from_json(obj)
    except KeyError as exc:
        raise ValidationError(f"{args.input}: missing report field {exc}") from None
    for path in emit_report(report, args.out, args.format):
        print(path)
    return EXIT_OK


def read_samples(path, label: str) -> SampleSet:
    """One number per line; blank lines ignored."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = [line.strip() for line in fh]
    except OSError as exc:
        raise ResourceError(f"cannot read {path}: {exc}") from None
    try:
        return SampleSet.of(label, [float(line) for line in lines if line])
    except ValueError as exc:
        raise ValidationError(f"{path}: {exc}") from None


def cmd_stats(args) -> int:
    a = read_samples(args.sample_a, Path(args.sample_a).stem)
    b = read_samples(args.sample_b, Path(args.sample_b).stem)
    normality = {}
    for s in (a, b):
        try:
            normality[s.label] = dagostino_pearson(s).to_json()
        except ValidationError as exc:
            normality[s.label] = {"skipped": str(exc)}
    out = {
        "ks": ks2_test(a, b).to_json(),
        "normality": normality,
        "bootstrap": bootstrap_mean_diff(
            a, b, BootstrapConfig(args.resamples, args.level, args.seed)
        ).to_json(),
    }
    _dump(out, args.out)
    return EXIT_OK


COMMANDS = {
    "ingest": cmd_ingest,
    "extract-links": cmd_extract_links,
    "rank": cmd_rank,
    "experiment": cmd_experiment,
    "impact-stats": cmd_impact_stats,
    "report": cmd_report,
    "stats": cmd_stats,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ResourceError, FileNotFoundError) as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
