"""Acceptance gate.

Criteria 1-9 are self-contained property checks.  Criteria 10-12 need the
HinGE data and matching resources and run only when these are set:

    MIPE_HINGE_DATASET   JSON-lines dataset
    MIPE_IDF             IDF dictionary written by ``mipe idf build``
    MIPE_EMBEDDINGS      aligned word vectors (optional)
    MIPE_HINGE_EXTERNAL  extra score files, ``os.pathsep``-separated (optional)

Each criterion prints one PASS/FAIL/SKIP line in the terminal summary.
"""
import itertools
import math
import os
import random

import pytest

from mipe.cli import main
from mipe.embedding import load_embeddings
from mipe.harness import (BUCKETS, build_report, evaluate_dataset, load_dataset, pearson,
                          save_dataset)
from mipe.idf import IdfDictionary, build_idf, load_idf
from mipe.metrics import bleu, load_external_scores, nist, ter_single, wer
from mipe.phonetic import DEFAULT_COSTS, PhoneticCostTable, pds
from mipe.pipeline import Resources, mipe_score
from mipe.scoring import AdjustmentConfig, chunk_trigrams, mwp, mwp_parts, phrase_score
from mipe.synthetic import (DISTRACTORS, FUNCTION_WORDS, LEXICON, make_corpus, make_dataset,
                            make_embeddings, write_embeddings)
from oracles import (collapse, levenshtein_oracle, pds_oracle, variant_present,
                     weighted_levenshtein_oracle)

ALPHABET = "abcehkos"  # vowels a/e/o, silent h/e, similar c~k and c~s
SEED = 20240501


def _collapsed_word(rng, max_len=6):
    out = []
    for _ in range(rng.randint(1, max_len)):
        out.append(rng.choice([c for c in ALPHABET if not out or c != out[-1]]))
    return "".join(out)


def _with_repeats(rng, word):
    return "".join(c * rng.choice((1, 1, 2)) for c in word)


@pytest.mark.criterion(1, "PDS dynamic program equals exhaustive edit-script enumeration")
def test_pds_matches_enumeration(note):
    rng = random.Random(SEED)
    pairs = [(_with_repeats(rng, _collapsed_word(rng)), _with_repeats(rng, _collapsed_word(rng)))
             for _ in range(10_000)]
    assert all(len(collapse(a)) <= 6 and len(collapse(b)) <= 6 for a, b in pairs)
    bad = [(a, b) for a, b in pairs if pds(a, b) != pds_oracle(a, b, DEFAULT_COSTS)]
    note(f"{len(pairs)} pairs over '{ALPHABET}', {len(bad)} mismatches")
    assert not bad, bad[:5]


@pytest.mark.criterion(2, "PDS without discounts equals Levenshtein with substitution 2")
def test_pds_degenerates_to_levenshtein(note):
    rng = random.Random(SEED + 2)
    plain = PhoneticCostTable.without_discounts()
    pairs = [(_collapsed_word(rng), _collapsed_word(rng)) for _ in range(1000)]
    bad = [(a, b) for a, b in pairs if pds(a, b, plain) != weighted_levenshtein_oracle(a, b, 2.0)]
    note(f"{len(pairs)} pairs, {len(bad)} mismatches")
    assert not bad, bad[:5]


def _sentence(rng, vocab, lo=1, hi=6):
    return [rng.choice(vocab) for _ in range(rng.randint(lo, hi))]


@pytest.mark.criterion(3, "WER equals brute-force oracle; TER never exceeds per-reference WER")
def test_wer_and_ter(note):
    rng = random.Random(SEED + 3)
    vocab = list("abcdef")
    wer_bad = ter_bad = 0
    for _ in range(1000):
        cand = _sentence(rng, vocab, 0, 6)
        refs = [_sentence(rng, vocab) for _ in range(rng.randint(1, 3))]
        expect = min(levenshtein_oracle(cand, r) / len(r) for r in refs)
        wer_bad += wer(cand, refs).value != expect
        ter_bad += any(ter_single(cand, r) > levenshtein_oracle(cand, r) / len(r) + 1e-12
                       for r in refs)
    note(f"1000 instances: {wer_bad} WER mismatches, {ter_bad} TER > WER")
    assert wer_bad == ter_bad == 0


@pytest.mark.criterion(4, "BLEU/NIST endpoints: identical gives BLEU 1, disjoint gives ~0 and NIST 0")
def test_bleu_nist_endpoints():
    rng = random.Random(SEED + 4)
    left, right = [f"w{i}" for i in range(10)], [f"v{i}" for i in range(10)]
    for _ in range(500):
        s = _sentence(rng, left, 1, 15)
        assert bleu(s, [s]).value == pytest.approx(1.0, abs=1e-9)
        refs = [_sentence(rng, right, 1, 15) for _ in range(rng.randint(1, 3))]
        assert bleu(s, refs).value <= 1e-9
        assert nist(s, refs).value == 0.0


MWP_VOCAB = ["bhai", "pai", "bai", "gharo", "gar"]


@pytest.mark.criterion(5, "MWP is zero iff a reference is fully matched; normalized MWP in [0, 1]")
def test_mwp_zero_iff_matched(note):
    idf = build_idf(["bhai pai", "gar", "bai gharo bhai", "pai"])
    present = {(w, c): variant_present(w, [c], DEFAULT_COSTS) for w in MWP_VOCAB for c in MWP_VOCAB}
    seqs = [list(s) for n in range(0, 5) for s in itertools.product(MWP_VOCAB, repeat=n)]
    checked = 0
    for cand in seqs:
        for ref in seqs:
            if not ref:
                continue
            matched = all(any(present[w, c] for c in cand) for w in ref)
            assert (mwp(cand, [ref], idf) == 0.0) == matched, (cand, ref)
            checked += 1
    rng = random.Random(SEED + 5)
    big = list(LEXICON) + MWP_VOCAB + DISTRACTORS
    for _ in range(10_000):
        cand = _sentence(rng, big, 0, 8)
        refs = [_sentence(rng, big, 1, 8) for _ in range(rng.randint(1, 3))]
        assert 0.0 <= mwp(cand, refs, idf) <= 1.0
    note(f"{checked} exhaustive pairs, 10000 fuzzed normalized checks")


def _direct_phrase_score(cand, refs, idf, eps, m):
    ref_words = set(itertools.chain.from_iterable(refs))
    chunks = [cand[i:i + 3] for i in range(0, len(cand), 3)]
    signed = [sum(idf[w] if w in ref_words else -idf[w] for w in c) for c in chunks]
    return sum(signed) / len(chunks) / (m + eps)


@pytest.mark.criterion(6, "Phrase score: chunk partition, sign flip and divisor laws")
def test_phrase_score_laws():
    rng = random.Random(SEED + 6)
    idf = build_idf(make_corpus(300))
    vocab = [w for en, hi in LEXICON.values() for w in en + hi] + FUNCTION_WORDS + DISTRACTORS
    for _ in range(2000):
        cand = _sentence(rng, vocab, 1, 12)
        refs = [_sentence(rng, vocab, 1, 12) for _ in range(rng.randint(1, 3))]
        chunks = chunk_trigrams(cand)
        assert list(itertools.chain.from_iterable(chunks)) == cand
        assert all(len(c) == 3 for c in chunks[:-1]) and 1 <= len(chunks[-1]) <= 3

        m = mwp_parts(cand, refs, idf)[0]
        got = phrase_score(cand, refs, idf, mwp_value=m)
        assert math.isclose(got, _direct_phrase_score(cand, refs, idf, 1e-4, m), rel_tol=1e-9)

        ref_words = set(itertools.chain.from_iterable(refs))
        flipped = [[w for w in dict.fromkeys(cand) if w not in ref_words] + ["unused"]]
        assert math.isclose(phrase_score(cand, flipped, idf, mwp_value=m), -got,
                            rel_tol=1e-9, abs_tol=1e-12)


def _monotonicity_cases(n):
    rng = random.Random(7)
    words = [f for en, hi in LEXICON.values() for f in en + hi] + FUNCTION_WORDS + DISTRACTORS
    for case in range(n):
        refs = [_sentence(rng, words, 2, 10) for _ in range(rng.randint(1, 3))]
        base = rng.choice(refs)
        cand = [w for w in base if rng.random() > 0.3] + _sentence(rng, words, 0, 4)
        if rng.random() < 0.3:
            rng.shuffle(cand)
        cand = cand or [rng.choice(words)]
        fresh = f"unseenword{case}"
        yield cand, refs, [r + [fresh] for r in refs]


@pytest.fixture(scope="module")
def synthetic_resources():
    return Resources(idf=build_idf(make_corpus(2000)), store=make_embeddings())


@pytest.mark.criterion(7, "Injecting a missing reference word never raises a higher-better score")
def test_pipeline_monotonicity(synthetic_resources, note):
    violations = {"bleu": [], "nist": []}
    for cand, refs, injected in _monotonicity_cases(1000):
        for metric, found in violations.items():
            before = mipe_score(cand, refs, metric, synthetic_resources).augmented.value
            after = mipe_score(cand, injected, metric, synthetic_resources).augmented.value
            if after > before + 1e-12:
                found.append((before, after))
    for metric, found in violations.items():
        worst = max((a - b for b, a in found), default=0.0)
        note(f"{metric}: {len(found)}/1000 increases, largest +{worst:.4f}")
    counts = {m: len(v) for m, v in violations.items()}
    assert not any(counts.values()), f"increases per metric: {counts}"


@pytest.mark.criterion(8, "Pearson identities")
def test_pearson_identities():
    rng = random.Random(SEED + 8)
    for _ in range(1000):
        xs = [rng.uniform(-10, 10) for _ in range(rng.randint(2, 12))]
        a = rng.choice([-1, 1]) * rng.uniform(0.1, 10)
        b = rng.uniform(-10, 10)
        ys = [a * x + b for x in xs]
        assert abs(pearson(xs, ys) - math.copysign(1.0, a)) <= 1e-12
    assert abs(pearson([1, 2, 3], [1, 3, 2]) - 0.5) <= 1e-12
    assert abs(pearson(list(range(2, 11)), [0.1 * k for k in range(2, 11)]) - 1.0) <= 1e-12


@pytest.mark.criterion(9, "Two end-to-end runs give byte-identical reports")
def test_end_to_end_determinism(tmp_path):
    (tmp_path / "corpus.txt").write_text("\n".join(make_corpus(500)) + "\n")
    save_dataset(make_dataset(50), tmp_path / "data.jsonl")
    write_embeddings(make_embeddings(), tmp_path / "vec.txt")
    assert main(["idf", "build", "--corpus", str(tmp_path / "corpus.txt"),
                 "--out", str(tmp_path / "idf.tsv")]) == 0
    for run, workers in (("a", "1"), ("b", "2")):
        assert main(["score", "--dataset", str(tmp_path / "data.jsonl"),
                     "--idf", str(tmp_path / "idf.tsv"), "--embeddings", str(tmp_path / "vec.txt"),
                     "--workers", workers, "--out", str(tmp_path / run)]) == 0
    names = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert len(names) == 6
    for name in names:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes(), name


# -- conditional reproduction ------------------------------------------------

HINGE = os.environ.get("MIPE_HINGE_DATASET")
IDF_PATH = os.environ.get("MIPE_IDF")
needs_hinge = pytest.mark.skipif(not (HINGE and IDF_PATH),
                                 reason="set MIPE_HINGE_DATASET and MIPE_IDF to run")


@pytest.fixture(scope="module")
def hinge_report():
    idf = load_idf(IDF_PATH)
    emb = os.environ.get("MIPE_EMBEDDINGS")
    external = {}
    for path in filter(None, os.environ.get("MIPE_HINGE_EXTERNAL", "").split(os.pathsep)):
        ext = load_external_scores(path)
        external[ext.name] = ext
    res = Resources(idf=idf, store=load_embeddings(emb) if emb else None, external=external)
    metrics = ["bleu", "nist", "wer", "ter"] + sorted(external)
    records = evaluate_dataset(load_dataset(HINGE), metrics, res, workers=os.cpu_count() or 1)
    return build_report(records)


@needs_hinge
@pytest.mark.criterion(10, "WAC bucket 1 and 3 correlations improve with the adjustments")
def test_bucket_correlations_improve(hinge_report, note):
    wins = 0
    for metric in hinge_report.metrics:
        ok = True
        for bucket in (BUCKETS[0], BUCKETS[2]):
            table = hinge_report.correlations[bucket.label]
            raw, aug = table[("WAC", metric, "raw")], table[("WAC", metric, "augmented")]
            ok &= raw is not None and aug is not None and abs(aug) > abs(raw)
        wins += ok
        note(f"{metric}: {'PASS' if ok else 'FAIL'}")
    assert wins >= min(4, len(hinge_report.metrics) - 1)


@needs_hinge
@pytest.mark.criterion(11, "WAC augmented BLEU means rise from rating 4 to 10 (one inversion allowed)")
def test_bleu_means_rise(hinge_report, note):
    means = hinge_report.means["augmented"]
    series = [means.get(("WAC", "bleu", r)) for r in range(4, 11)]
    note("means " + ", ".join("NA" if v is None else f"{v:.3f}" for v in series))
    assert None not in series
    inversions = sum(b < a for a, b in zip(series, series[1:]))
    assert inversions <= 1


@needs_hinge
@pytest.mark.criterion(12, "WAC with/without rating-mean correlation above 0.8 for WER, TER, NIST")
def test_with_without_agreement(hinge_report, note):
    values = {m: hinge_report.agreement[("WAC", m)] for m in ("wer", "ter", "nist")}
    for m, r in values.items():
        note(f"{m}: {'NA' if r is None else f'{r:.3f}'}")
    assert all(r is not None and r > 0.8 for r in values.values())
