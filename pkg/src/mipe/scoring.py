"""Missing-word penalty and trigram phrase score.

Both quantities are IDF-weighted.  The missing-word penalty charges a
candidate for reference words it lacks (spelling variants count as
present); the phrase score credits candidate words found anywhere in the
references and charges for the rest, then divides by the raw penalty.
"""
from __future__ import annotations

from dataclasses import dataclass

from mipe.embedding import EmbeddingStore, best_cosine_match
from mipe.idf import IdfDictionary
from mipe.phonetic import DEFAULT_COSTS, PhoneticCostTable, pds
from mipe.sws import SwsConfig

CHUNKING_MODES = ("partition", "sliding")


@dataclass(frozen=True)
class AdjustmentConfig:
    epsilon: float = 1e-4
    # overrides the dictionary's own fallback when set
    mu_miss: float | None = None
    normalize_mwp: bool = True
    phrase_cap: float = 1.0
    mwp_use_embeddings: bool = False
    chunking: str = "partition"

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if not self.phrase_cap > 0:
            raise ValueError("phrase_cap must be positive")
        if self.mu_miss is not None and not self.mu_miss > 0:
            raise ValueError("mu_miss must be positive")
        if self.chunking not in CHUNKING_MODES:
            raise ValueError(f"chunking must be one of {CHUNKING_MODES}")

    def weights(self, idf: IdfDictionary) -> IdfDictionary:
        if self.mu_miss is None or self.mu_miss == idf.mu_miss:
            return idf
        return idf.with_mu_miss(self.mu_miss)


def _is_present(word, cand, cand_set, costs, sws_cfg, store, use_embeddings) -> bool:
    if word in cand_set:
        return True
    if any(pds(word, c, costs) <= sws_cfg.max_pds_for_variant for c in cand):
        return True
    if use_embeddings and store is not None:
        found = best_cosine_match(word, cand, store)
        return found is not None and found[1] > sws_cfg.sigma_cos
    return False


def mwp_parts(cand, refs, idf: IdfDictionary, costs: PhoneticCostTable = DEFAULT_COSTS,
              sws_cfg: SwsConfig = SwsConfig(), cfg: AdjustmentConfig = AdjustmentConfig(),
              store: EmbeddingStore | None = None) -> tuple[float, float]:
    """Return ``(raw, normalized)`` missing-word penalty.

    ``raw`` is the smallest per-reference sum of IDF over missing reference
    words.  ``normalized`` divides it by the total IDF of that reference
    (earliest reference on ties), so it lies in [0, 1].
    """
    refs = list(refs)
    if not refs:
        raise ValueError("at least one reference is required")
    weights = cfg.weights(idf)
    cand = list(cand)
    cand_set = set(cand)
    best = None
    for ref in refs:
        penalty = 0.0
        mass = 0.0
        for w in ref:
            weight = weights[w]
            mass += weight
            if not _is_present(w, cand, cand_set, costs, sws_cfg, store, cfg.mwp_use_embeddings):
                penalty += weight
        if best is None or penalty < best[0]:
            best = (penalty, mass)
    raw, mass = best
    return raw, (raw / mass if mass > 0 else 0.0)


def mwp(cand, refs, idf: IdfDictionary, costs: PhoneticCostTable = DEFAULT_COSTS,
        sws_cfg: SwsConfig = SwsConfig(), cfg: AdjustmentConfig = AdjustmentConfig(),
        store: EmbeddingStore | None = None) -> float:
    raw, normalized = mwp_parts(cand, refs, idf, costs, sws_cfg, cfg, store)
    return normalized if cfg.normalize_mwp else raw


def chunk_trigrams(tokens, mode: str = "partition") -> list[list[str]]:
    """Split into consecutive 3-token chunks; the last may hold 1 or 2.

    ``mode="sliding"`` yields every contiguous trigram instead (a sentence
    shorter than three tokens is its own single chunk).
    """
    tokens = list(tokens)
    if mode == "partition":
        return [tokens[i:i + 3] for i in range(0, len(tokens), 3)]
    if mode == "sliding":
        if len(tokens) <= 3:
            return [tokens] if tokens else []
        return [tokens[i:i + 3] for i in range(len(tokens) - 2)]
    raise ValueError(f"unknown chunking mode {mode!r}")


def phrase_score(cand, refs, idf: IdfDictionary, cfg: AdjustmentConfig = AdjustmentConfig(),
                 mwp_value: float = 0.0) -> float:
    """Chunk-averaged signed IDF mass divided by ``mwp_value + epsilon``.

    ``mwp_value`` must be the raw (unnormalized) penalty for the same pair.
    An empty candidate scores 0.
    """
    chunks = chunk_trigrams(cand, cfg.chunking)
    if not chunks:
        return 0.0
    weights = cfg.weights(idf)
    ref_words = {w for ref in refs for chunk in chunk_trigrams(ref, cfg.chunking) for w in chunk}
    total = 0.0
    for chunk in chunks:
        for w in chunk:
            total += weights[w] if w in ref_words else -weights[w]
    return total / len(chunks) / (mwp_value + cfg.epsilon)


def clamp_phrase(value: float, cfg: AdjustmentConfig = AdjustmentConfig()) -> float:
    return max(-cfg.phrase_cap, min(cfg.phrase_cap, value))
