"""Score a synthetic dataset end to end and print the correlation table.

Runs entirely in memory; pass --out to also write the report files.
"""
import argparse

from mipe.harness import build_report, emit_report, evaluate_dataset, report_files
from mipe.idf import build_idf
from mipe.pipeline import Resources
from mipe.synthetic import make_corpus, make_dataset, make_embeddings


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--instances", type=int, default=400)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out")
    args = ap.parse_args()

    res = Resources(idf=build_idf(make_corpus(2000, seed=args.seed + 1)),
                    store=make_embeddings(seed=args.seed + 2))
    records = evaluate_dataset(make_dataset(args.instances, seed=args.seed),
                               ["bleu", "nist", "wer", "ter"], res, args.workers)
    report = build_report(records)
    print(report_files(report)["correlations.txt"])
    if args.out:
        for path in emit_report(report, args.out):
            print("wrote", path)


if __name__ == "__main__":
    main()
