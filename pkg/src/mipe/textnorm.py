"""Tokenization shared by every scoring stage.

Tokens are maximal runs of letters/digits, lowercased. Everything else
(whitespace, punctuation, symbols) separates tokens and is discarded.
"""
from __future__ import annotations

import itertools
import re

_WORD = re.compile(r"[^\W_]+")


def tokenize(text: str) -> list[str]:
    # lowercase first: some characters lowercase into non-word sequences
    return _WORD.findall(text.lower())


def detokenize(tokens: list[str]) -> str:
    return " ".join(tokens)


def collapse_repeats(word: str) -> str:
    """Replace each run of an identical character with a single occurrence.

    >>> collapse_repeats("koee")
    'koe'
    """
    return "".join(ch for ch, _ in itertools.groupby(word))
