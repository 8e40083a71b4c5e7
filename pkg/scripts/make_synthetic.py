"""Write a synthetic corpus, dataset and embedding file to a directory."""
import argparse
from pathlib import Path

from mipe.harness import save_dataset
from mipe.synthetic import make_corpus, make_dataset, make_embeddings, write_embeddings


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out", type=Path)
    ap.add_argument("--instances", type=int, default=400)
    ap.add_argument("--corpus-size", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "corpus.txt").write_text(
        "\n".join(make_corpus(args.corpus_size, seed=args.seed + 1)) + "\n", encoding="utf-8")
    save_dataset(make_dataset(args.instances, seed=args.seed), args.out / "dataset.jsonl")
    write_embeddings(make_embeddings(seed=args.seed + 2), args.out / "vectors.txt")
    print(f"wrote corpus.txt, dataset.jsonl, vectors.txt to {args.out}")


if __name__ == "__main__":
    main()
