"""Augmenting a base metric score with the MIPE adjustments.

For one candidate/reference set the candidate is canonicalized against
the references, the base metric is computed on the canonical form, and the
score is shifted by the missing-word penalty and the clamped phrase score:

    higher-is-better:  clamp(raw - penalty + phrase)
    lower-is-better:   max(0, raw + penalty - phrase)

The adjustments do not depend on the metric, so they are computed once per
instance and shared.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from mipe.embedding import EmbeddingStore
from mipe.idf import IdfDictionary
from mipe.metrics import HIGHER, NATIVE, NATIVE_FUNCS, ExternalScores, MetricScore, MetricSpec
from mipe.phonetic import DEFAULT_COSTS, PhoneticCostTable
from mipe.scoring import AdjustmentConfig, clamp_phrase, mwp_parts, phrase_score
from mipe.sws import SwsConfig, canonicalize_references, canonicalize_sentence
from mipe.textnorm import tokenize


class UnknownMetricError(ValueError):
    pass


@dataclass
class Resources:
    idf: IdfDictionary
    costs: PhoneticCostTable = DEFAULT_COSTS
    store: EmbeddingStore | None = None
    sws_cfg: SwsConfig = field(default_factory=SwsConfig)
    adj_cfg: AdjustmentConfig = field(default_factory=AdjustmentConfig)
    external: dict[str, ExternalScores] = field(default_factory=dict)

    def metric_names(self) -> list[str]:
        return list(NATIVE) + sorted(self.external)

    def spec(self, metric: str) -> MetricSpec:
        if metric in NATIVE:
            return NATIVE[metric]
        if metric in self.external:
            return self.external[metric].spec
        raise UnknownMetricError(
            f"unknown metric {metric!r}; valid names: {', '.join(self.metric_names())}")


@dataclass(frozen=True)
class Adjustments:
    candidate: list
    references: list
    mwp_raw: float
    mwp_scaled: float
    phrase_score_raw: float
    phrase_score_scaled: float


@dataclass(frozen=True)
class MipeResult:
    raw: MetricScore
    canonicalized_candidate: list
    mwp_raw: float
    mwp_scaled: float
    phrase_score_raw: float
    phrase_score_scaled: float
    augmented: MetricScore
    # metric on the uncanonicalized candidate ("without MIPE")
    baseline: MetricScore


def compute_adjustments(cand, refs, resources: Resources) -> Adjustments:
    refs = [list(r) for r in refs]
    if not refs:
        raise ValueError("at least one reference is required")
    r = resources
    if r.sws_cfg.canonicalize_refs:
        refs = canonicalize_references(refs, r.costs, r.store, r.sws_cfg)
    cand2 = canonicalize_sentence(cand, refs, r.costs, r.store, r.sws_cfg)
    raw_pen, norm_pen = mwp_parts(cand2, refs, r.idf, r.costs, r.sws_cfg, r.adj_cfg, r.store)
    scaled_pen = norm_pen if r.adj_cfg.normalize_mwp else raw_pen
    ps = phrase_score(cand2, refs, r.idf, r.adj_cfg, raw_pen)
    return Adjustments(cand2, refs, raw_pen, scaled_pen, ps, clamp_phrase(ps, r.adj_cfg))


def combine(raw: float, spec: MetricSpec, penalty: float, phrase: float) -> float:
    if spec.orientation == HIGHER:
        value = raw - penalty + phrase
    else:
        value = raw + penalty - phrase
    lower = 0.0 if spec.orientation != HIGHER and math.isinf(spec.lower) else spec.lower
    return min(spec.upper, max(lower, value))


def _base_score(metric: str, cand, refs, resources: Resources, instance_id) -> MetricScore:
    if metric in NATIVE_FUNCS:
        return NATIVE_FUNCS[metric](cand, refs)
    if instance_id is None:
        raise ValueError(f"external metric {metric!r} needs an instance id")
    return resources.external[metric].score(str(instance_id))


def _result(metric, adj: Adjustments, surface_cand, surface_refs, resources, instance_id):
    spec = resources.spec(metric)
    raw = _base_score(metric, adj.candidate, adj.references, resources, instance_id)
    if metric in NATIVE_FUNCS:
        baseline = NATIVE_FUNCS[metric](surface_cand, surface_refs)
    else:
        baseline = raw
    value = combine(raw.value, spec, adj.mwp_scaled, adj.phrase_score_scaled)
    return MipeResult(
        raw=raw,
        canonicalized_candidate=list(adj.candidate),
        mwp_raw=adj.mwp_raw,
        mwp_scaled=adj.mwp_scaled,
        phrase_score_raw=adj.phrase_score_raw,
        phrase_score_scaled=adj.phrase_score_scaled,
        augmented=MetricScore(raw.name, value, raw.orientation),
        baseline=baseline,
    )


def mipe_score(cand, refs, metric: str, resources: Resources, instance_id=None) -> MipeResult:
    """Augmented score of a tokenized candidate against tokenized references."""
    resources.spec(metric)
    refs = [list(r) for r in refs]
    adj = compute_adjustments(list(cand), refs, resources)
    return _result(metric, adj, list(cand), refs, resources, instance_id)


def evaluate_instance(inst, metrics, resources: Resources) -> list[MipeResult]:
    metrics = list(metrics)
    for m in metrics:
        resources.spec(m)
    if not inst.references:
        raise ValueError(f"instance {inst.id!r} has no references")
    if not metrics:
        return []
    cand = tokenize(inst.candidate)
    refs = [tokenize(r) for r in inst.references]
    adj = compute_adjustments(cand, refs, resources)
    return [_result(m, adj, cand, refs, resources, inst.id) for m in metrics]
