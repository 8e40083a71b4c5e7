"""Similar word search and candidate canonicalization.

A candidate word is mapped onto a reference word when the two are
phonetically close (spelling variant) or, failing that, close in the shared
embedding space (language switch).
"""
from __future__ import annotations

from dataclasses import dataclass

from mipe.embedding import EmbeddingStore, best_cosine_match
from mipe.phonetic import DEFAULT_COSTS, PhoneticCostTable, pds


@dataclass(frozen=True)
class SwsConfig:
    sigma_thres: float = 2.0
    sigma_cos: float = 0.5
    # variant cap used by the missing-word presence check
    max_pds_for_variant: float = 1.0
    canonicalize_refs: bool = False

    def __post_init__(self):
        if self.sigma_thres <= 0:
            raise ValueError("sigma_thres must be positive")
        if not 0 < self.sigma_cos <= 1:
            raise ValueError("sigma_cos must lie in (0, 1]")
        if self.max_pds_for_variant > self.sigma_thres:
            raise ValueError("max_pds_for_variant must not exceed sigma_thres")


def nearest_phonetic(word: str, ref_words, costs: PhoneticCostTable = DEFAULT_COSTS):
    """(reference word, PDS) with the smallest PDS; earliest wins ties.

    An exact occurrence of ``word`` always wins, even over an earlier word
    that only differs by repeated characters.
    """
    if word in ref_words:
        return word, 0.0
    best = None
    for ref in ref_words:
        d = pds(word, ref, costs)
        if best is None or d < best[1]:
            best = (ref, d)
            if d == 0:
                break
    return best


def sws(word: str, ref_words, costs: PhoneticCostTable = DEFAULT_COSTS,
        store: EmbeddingStore | None = None, cfg: SwsConfig = SwsConfig()) -> str | None:
    ref_words = list(ref_words)
    if not ref_words:
        raise ValueError("sws needs at least one reference word")
    match, dist = nearest_phonetic(word, ref_words, costs)
    if dist < cfg.sigma_thres:
        return match
    if store is None:
        return None
    found = best_cosine_match(word, ref_words, store)
    if found is not None and found[1] > cfg.sigma_cos:
        return found[0]
    return None


def _reference_vocabulary(refs) -> list[str]:
    # reading order, first occurrence only; keeps tie-breaking deterministic
    return list(dict.fromkeys(tok for ref in refs for tok in ref))


def canonicalize_sentence(cand, refs, costs: PhoneticCostTable = DEFAULT_COSTS,
                          store: EmbeddingStore | None = None,
                          cfg: SwsConfig = SwsConfig()) -> list[str]:
    """Rewrite candidate tokens to the surface form of their reference match."""
    refs = list(refs)
    if not refs:
        raise ValueError("at least one reference is required")
    vocab = _reference_vocabulary(refs)
    if not vocab:
        return list(cand)
    out = []
    for tok in cand:
        match = sws(tok, vocab, costs, store, cfg)
        out.append(tok if match is None else match)
    return out


def canonicalize_references(refs, costs: PhoneticCostTable = DEFAULT_COSTS,
                            store: EmbeddingStore | None = None,
                            cfg: SwsConfig = SwsConfig()) -> list[list[str]]:
    """Align spellings across references.

    Each reference is canonicalized against the references before it, so
    the earliest reference supplies the surface form for every variant.
    """
    out: list[list[str]] = []
    for ref in refs:
        if out and any(out):
            out.append(canonicalize_sentence(ref, out, costs, store, cfg))
        else:
            out.append(list(ref))
    return out
