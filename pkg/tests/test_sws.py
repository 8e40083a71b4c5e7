import pytest
from hypothesis import given, settings, strategies as st

from mipe.embedding import EmbeddingStore
from mipe.phonetic import DEFAULT_COSTS, PhoneticCostTable, pds
from mipe.sws import SwsConfig, canonicalize_references, canonicalize_sentence, sws
from oracles import pds_oracle

FIXTURE = EmbeddingStore.from_dict({
    "market": [1.0, 0.0, 0.0],
    "bazaar": [0.6, 0.8, 0.0],   # cosine with market = 0.6
    "open": [0.0, 0.0, 1.0],
    "khula": [0.0, 0.95, 0.3122498999199199],  # cosine with open ~ 0.31
})

word = st.text(alphabet="abcehknost", min_size=1, max_size=6)


def test_exact_presence():
    assert sws("samaj", ["kya", "samaj"]) == "samaj"


def test_language_switch_through_embeddings():
    assert pds_oracle("bazaar", "market", DEFAULT_COSTS) >= 2
    assert sws("bazaar", ["market"], store=FIXTURE) == "market"
    # cosine must strictly exceed the threshold
    assert sws("bazaar", ["market"], store=FIXTURE, cfg=SwsConfig(sigma_cos=0.6)) is None


def test_no_match():
    assert sws("zzz", ["market"], store=FIXTURE) is None
    assert sws("bazaar", ["market"]) is None


def test_phonetic_stage_is_strict():
    # pds(kanekt, connect) is 2.25 under defaults
    assert sws("kanekt", ["connect"]) is None
    assert sws("kanekt", ["connect"], cfg=SwsConfig(sigma_thres=2.25)) is None
    assert sws("kanekt", ["connect"], cfg=SwsConfig(sigma_thres=2.5)) == "connect"


def test_phonetic_ties_prefer_earliest():
    assert pds("bai", "bhai") == pds("bai", "pai") == 0.75
    assert sws("bai", ["bhai", "pai"]) == "bhai"
    assert sws("bai", ["pai", "bhai"]) == "pai"


def test_canonicalize_identity():
    ref = ["koi", "dusra", "human", "yeh", "kahe"]
    assert canonicalize_sentence(ref, [ref]) == ref


def test_canonicalize_spelling_variant():
    cheap = PhoneticCostTable(rho_sub=0.5)
    assert pds_oracle("kanekt", "connect", cheap) == 1.5
    assert canonicalize_sentence(["kanekt"], [["connect"]], cheap) == ["connect"]
    assert canonicalize_sentence(["kanekt"], [["connect"]]) == ["kanekt"]


def test_canonicalize_with_embeddings():
    assert pds_oracle("khula", "open", DEFAULT_COSTS) >= 2
    assert pds_oracle("khula", "market", DEFAULT_COSTS) >= 2
    out = canonicalize_sentence(["bazaar", "khula"], [["market", "open"]], store=FIXTURE)
    assert out == ["market", "khula"]


def test_fig1_sentence():
    cand = "koee doosra human ye kahe kya aapko samajh aaya".split()
    refs = ["is another human being saying kya aapko samaj aaya".split(),
            "koi dusra human being yeh kahe do you understand this".split()]
    out = canonicalize_sentence(cand, refs)
    assert out == "koi dusra human yeh kahe kya aapko samaj aaya".split()


def test_canonicalize_references_option():
    refs = [["koi", "dusra"], ["koee", "doosra", "banda"]]
    assert canonicalize_references(refs) == [["koi", "dusra"], ["koi", "dusra", "banda"]]


def test_config_validation():
    with pytest.raises(ValueError):
        SwsConfig(sigma_thres=0)
    with pytest.raises(ValueError):
        SwsConfig(sigma_cos=1.5)
    with pytest.raises(ValueError):
        SwsConfig(sigma_thres=0.5, max_pds_for_variant=1.0)


@settings(max_examples=200)
@given(word, st.lists(word, min_size=1, max_size=5))
def test_returns_reference_word_with_minimal_pds(w, refs):
    out = sws(w, refs)
    assert out is None or out in refs
    dists = [pds(w, r) for r in refs]
    if min(dists) < 2.0:
        assert pds(w, out) == min(dists)
    else:
        assert out is None


@settings(max_examples=200)
@given(word, st.lists(word, min_size=1, max_size=5), st.floats(0.5, 3.0), st.floats(0.0, 3.0))
def test_threshold_monotone(w, refs, low, extra):
    if sws(w, refs, cfg=SwsConfig(sigma_thres=low, max_pds_for_variant=0.5)) is not None:
        assert sws(w, refs, cfg=SwsConfig(sigma_thres=low + extra, max_pds_for_variant=0.5)) is not None


@settings(max_examples=150)
@given(st.lists(word, max_size=6), st.lists(st.lists(word, min_size=1, max_size=5), min_size=1, max_size=3))
def test_canonicalize_idempotent(cand, refs):
    once = canonicalize_sentence(cand, refs)
    assert len(once) == len(cand)
    assert canonicalize_sentence(once, refs) == once
