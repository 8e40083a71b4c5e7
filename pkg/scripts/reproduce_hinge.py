"""Score the HinGE dataset and print the with/without comparison tables.

    python scripts/reproduce_hinge.py --dataset hinge.jsonl --corpus parallel.txt \
        --embeddings aligned.vec --out results/hinge

The dataset must already be converted to the JSON-lines schema read by
``mipe.harness.load_dataset``.  Either --idf or --corpus is required.
"""
import argparse
import os
import sys

from mipe.embedding import load_embeddings
from mipe.harness import build_report, emit_report, evaluate_dataset, load_dataset, report_files
from mipe.idf import build_idf_from_file, load_idf, save_idf
from mipe.metrics import load_external_scores
from mipe.pipeline import Resources


def main():
    ap = argparse.ArgumentParser(description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--dataset", required=True)
    ap.add_argument("--idf")
    ap.add_argument("--corpus")
    ap.add_argument("--embeddings")
    ap.add_argument("--external-scores", action="append", default=[])
    ap.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--out", required=True)
    args = ap.parse_args()
    if not (args.idf or args.corpus):
        ap.error("one of --idf or --corpus is required")

    if args.idf:
        idf = load_idf(args.idf)
    else:
        idf = build_idf_from_file(args.corpus)
        os.makedirs(args.out, exist_ok=True)
        save_idf(idf, os.path.join(args.out, "idf.tsv"))
    external = {e.name: e for e in map(load_external_scores, args.external_scores)}
    res = Resources(idf=idf, store=load_embeddings(args.embeddings) if args.embeddings else None,
                    external=external)
    metrics = ["bleu", "nist", "wer", "ter"] + sorted(external)
    records = evaluate_dataset(load_dataset(args.dataset), metrics, res, args.workers)
    report = build_report(records)
    emit_report(report, args.out)
    files = report_files(report)
    sys.stdout.write(files["rating_means.txt"] + "\n" + files["correlations.txt"])


if __name__ == "__main__":
    main()
