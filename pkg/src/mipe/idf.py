"""Inverse document frequency over a sentence corpus.

Each sentence is one document.  ``idf(w) = ln(n_docs / df(w))``; words that
occur in every sentence get a tiny positive floor instead of 0 so that every
stored value is strictly positive.  Unseen words get ``mu_miss``.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from mipe.textnorm import tokenize

IDF_FLOOR = 1e-6
DEFAULT_MU_MISS = 20.0


class IdfFormatError(ValueError):
    pass


@dataclass
class IdfDictionary:
    table: dict[str, float] = field(default_factory=dict)
    n_docs: int = 0
    mu_miss: float = DEFAULT_MU_MISS

    def __post_init__(self):
        if self.n_docs < 1:
            raise ValueError("n_docs must be >= 1")
        if self.mu_miss <= 0:
            raise ValueError("mu_miss must be positive")
        for word, value in self.table.items():
            if not value > 0:
                raise ValueError(f"idf of {word!r} must be positive, got {value}")

    def __getitem__(self, word: str) -> float:
        return self.table.get(word, self.mu_miss)

    def __contains__(self, word: str) -> bool:
        return word in self.table

    def __len__(self) -> int:
        return len(self.table)

    def with_mu_miss(self, mu_miss: float) -> "IdfDictionary":
        return IdfDictionary(self.table, self.n_docs, mu_miss)


def build_idf(corpus: Iterable[str], mu_miss: float = DEFAULT_MU_MISS) -> IdfDictionary:
    """Build from an iterable of raw sentences (one document each)."""
    df: Counter = Counter()
    n_docs = 0
    for sentence in corpus:
        n_docs += 1
        df.update(set(tokenize(sentence)))
    if n_docs == 0:
        raise ValueError("cannot build an IDF dictionary from an empty corpus")
    table = {w: max(math.log(n_docs / c), IDF_FLOOR) for w, c in df.items()}
    return IdfDictionary(table, n_docs, mu_miss)


def build_idf_from_file(path, mu_miss: float = DEFAULT_MU_MISS) -> IdfDictionary:
    with open(path, encoding="utf-8") as fh:
        return build_idf((line.rstrip("\n") for line in fh), mu_miss)


def save_idf(d: IdfDictionary, path) -> None:
    # repr() round-trips floats exactly
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"n_docs {d.n_docs} mu_miss {d.mu_miss!r}\n")
        for word in sorted(d.table):
            fh.write(f"{word}\t{d.table[word]!r}\n")


def load_idf(path) -> IdfDictionary:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().split()
        if len(header) != 4 or header[0] != "n_docs" or header[2] != "mu_miss":
            raise IdfFormatError("line 1: expected header 'n_docs <int> mu_miss <float>'")
        try:
            n_docs, mu_miss = int(header[1]), float(header[3])
        except ValueError as exc:
            raise IdfFormatError(f"line 1: {exc}") from None
        if n_docs < 1 or not mu_miss > 0:
            raise IdfFormatError("line 1: n_docs must be >= 1 and mu_miss positive")
        table = {}
        for lineno, line in enumerate(fh, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0]:
                raise IdfFormatError(f"line {lineno}: expected 'word<TAB>idf'")
            word, raw = parts
            try:
                value = float(raw)
            except ValueError:
                raise IdfFormatError(f"line {lineno}: non-numeric idf {raw!r}") from None
            if not value > 0 or math.isinf(value):
                raise IdfFormatError(f"line {lineno}: idf must be positive and finite, got {raw}")
            if word in table:
                raise IdfFormatError(f"line {lineno}: duplicate word {word!r}")
            table[word] = value
    return IdfDictionary(table, n_docs, mu_miss)
