"""Command line interface.

    mipe idf build --corpus FILE --out DICT
    mipe score --dataset D --idf I [--embeddings E] [--metrics bleu,nist,wer,ter]
               [--external-scores F ...] [--config C] --out DIR
    mipe report --scores DIR [--out DIR2]
    mipe config

Exit codes: 0 success, 1 usage error, 2 data error.
"""
from __future__ import annotations

import argparse
import logging
import sys

from mipe.config import ConfigError, MipeConfig, dump_config, load_config
from mipe.embedding import load_embeddings
from mipe.harness import build_report, emit_report, evaluate_dataset, load_dataset, read_instance_scores
from mipe.idf import DEFAULT_MU_MISS, build_idf_from_file, load_idf, save_idf
from mipe.metrics import MissingScoreError, load_external_scores
from mipe.pipeline import Resources, UnknownMetricError

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2

log = logging.getLogger("mipe")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _cmd_idf_build(args) -> int:
    d = build_idf_from_file(args.corpus, args.mu_miss)
    save_idf(d, args.out)
    log.info("wrote %d words from %d sentences to %s", len(d), d.n_docs, args.out)
    return EXIT_OK


def _load_resources(args, cfg: MipeConfig) -> Resources:
    idf = load_idf(args.idf)
    store = load_embeddings(args.embeddings) if args.embeddings else None
    external = {}
    for path in args.external_scores or []:
        ext = load_external_scores(path)
        if ext.name in external:
            raise UsageError(f"external metric {ext.name!r} given twice")
        external[ext.name] = ext
    return Resources(idf=idf, costs=cfg.phonetic, store=store, sws_cfg=cfg.sws,
                     adj_cfg=cfg.scoring, external=external)


def _cmd_score(args) -> int:
    cfg = load_config(args.config) if args.config else MipeConfig()
    metrics = [m.strip().lower() for m in args.metrics.split(",") if m.strip()]
    if not metrics:
        raise UsageError("--metrics is empty")
    resources = _load_resources(args, cfg)
    for m in metrics:
        try:
            resources.spec(m)
        except UnknownMetricError as exc:
            raise UsageError(str(exc)) from None
    instances = load_dataset(args.dataset)
    workers = args.workers or cfg.harness.workers
    records = evaluate_dataset(instances, metrics, resources, workers)
    report = build_report(records, cfg.harness.rating_mode)
    for path in emit_report(report, args.out):
        log.info("wrote %s", path)
    return EXIT_OK


def _cmd_report(args) -> int:
    records = read_instance_scores(f"{args.scores}/instance_scores.csv")
    cfg = load_config(args.config) if args.config else MipeConfig()
    report = build_report(records, args.rating_mode or cfg.harness.rating_mode)
    for path in emit_report(report, args.out or args.scores):
        log.info("wrote %s", path)
    return EXIT_OK


def _cmd_config(args) -> int:
    cfg = load_config(args.config) if args.config else MipeConfig()
    sys.stdout.write(dump_config(cfg))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mipe", description="Code-mixed NLG evaluation with MIPE adjustments")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    idf = sub.add_parser("idf", help="IDF dictionary tools")
    idf_sub = idf.add_subparsers(dest="idf_command", required=True, parser_class=_Parser)
    build = idf_sub.add_parser("build", help="build an IDF dictionary from a corpus")
    build.add_argument("--corpus", required=True, help="one sentence per line")
    build.add_argument("--out", required=True)
    build.add_argument("--mu-miss", type=float, default=DEFAULT_MU_MISS)
    build.set_defaults(func=_cmd_idf_build)

    score = sub.add_parser("score", help="score a dataset and write reports")
    score.add_argument("--dataset", required=True, help="JSON-lines instances")
    score.add_argument("--idf", required=True)
    score.add_argument("--embeddings", help="word2vec-format aligned vectors")
    score.add_argument("--metrics", default="bleu,nist,wer,ter")
    score.add_argument("--external-scores", action="append", metavar="FILE")
    score.add_argument("--config")
    score.add_argument("--workers", type=int)
    score.add_argument("--out", required=True)
    score.set_defaults(func=_cmd_score)

    report = sub.add_parser("report", help="rebuild tables from instance_scores.csv")
    report.add_argument("--scores", required=True, help="directory written by 'mipe score'")
    report.add_argument("--out")
    report.add_argument("--config")
    report.add_argument("--rating-mode", choices=("duplicate", "mean"))
    report.set_defaults(func=_cmd_report)

    config = sub.add_parser("config", help="print the effective configuration")
    config.add_argument("--config")
    config.set_defaults(func=_cmd_config)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"mipe: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        print(f"mipe: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, MissingScoreError, OSError) as exc:
        print(f"mipe: data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
