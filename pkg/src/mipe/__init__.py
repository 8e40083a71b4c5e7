"""Metric-independent evaluation pipeline for code-mixed generated text."""

from mipe.textnorm import tokenize, detokenize, collapse_repeats
from mipe.phonetic import PhoneticCostTable, pds, pds_directed
from mipe.embedding import EmbeddingStore, load_embeddings, cosine, best_cosine_match
from mipe.sws import SwsConfig, sws, canonicalize_sentence
from mipe.idf import IdfDictionary, build_idf, load_idf, save_idf
from mipe.scoring import AdjustmentConfig, mwp, chunk_trigrams, phrase_score
from mipe.metrics import MetricScore, bleu, nist, wer, ter, load_external_scores
from mipe.pipeline import MipeResult, Resources, mipe_score, evaluate_instance

__version__ = "0.1.0"
