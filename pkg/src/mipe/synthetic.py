"""Small synthetic Hinglish world for demos and end-to-end tests.

Sentences are drawn from a fixed bilingual lexicon.  Each concept has an
English form and a romanized Hindi form, and some forms have spelling
variants.  Candidates are derived from the first reference by harmless
edits (variant spellings, language switches) and harmful ones (dropped or
replaced words, reordered chunks); the synthetic human rating falls with
the number of harmful edits.
"""
from __future__ import annotations

import random

import numpy as np

from mipe.embedding import EmbeddingStore
from mipe.harness import EvalInstance

# concept -> (english forms, hindi forms); first form is the "standard" spelling
LEXICON = {
    "market": (["market"], ["bazaar", "bajar"]),
    "understand": (["understand"], ["samajh", "samaj", "samjh"]),
    "other": (["other"], ["dusra", "doosra"]),
    "someone": (["someone"], ["koi", "koee"]),
    "say": (["say"], ["kahe", "kahein"]),
    "house": (["house", "home"], ["ghar"]),
    "water": (["water"], ["paani", "pani"]),
    "good": (["good"], ["accha", "acha", "achha"]),
    "open": (["open"], ["khula", "khulaa"]),
    "book": (["book"], ["kitab", "kitaab"]),
    "today": (["today"], ["aaj"]),
    "friend": (["friend"], ["dost"]),
    "time": (["time"], ["samay", "samy"]),
    "work": (["work"], ["kaam", "kam"]),
    "big": (["big"], ["bada", "badaa"]),
    "city": (["city"], ["shahar", "sheher"]),
    "road": (["road"], ["sadak", "sadakk"]),
    "food": (["food"], ["khana", "khaana"]),
    "school": (["school", "skool"], ["vidyalay"]),
    "connect": (["connect", "connekt", "kanekt"], ["jod"]),
    "phone": (["phone", "fone"], ["phone"]),
    "human": (["human"], ["insaan", "insan"]),
    "money": (["money"], ["paisa", "paise"]),
    "child": (["child"], ["baccha", "bacha"]),
    "news": (["news"], ["khabar", "kabar"]),
}
FUNCTION_WORDS = ["hai", "ka", "ki", "ko", "mein", "se", "yeh", "kya", "aap", "hum",
                  "nahi", "bhi", "tha", "aur", "par"]
DISTRACTORS = ["zebra", "quantum", "violin", "glacier", "saffron", "tornado", "pyramid"]


def _surface(concept: str, rng: random.Random, english: bool, variant: bool) -> str:
    forms = LEXICON[concept][0 if english else 1]
    return rng.choice(forms) if variant else forms[0]


def _sentence_plan(rng: random.Random, length: int) -> list:
    concepts = list(LEXICON)
    plan = []
    for _ in range(length):
        if rng.random() < 0.35:
            plan.append(("fw", rng.choice(FUNCTION_WORDS)))
        else:
            plan.append(("c", rng.choice(concepts)))
    return plan


def _realize(plan, rng: random.Random, p_english: float, variant: bool) -> list[str]:
    out = []
    for kind, item in plan:
        if kind == "fw":
            out.append(item)
        else:
            out.append(_surface(item, rng, rng.random() < p_english, variant))
    return out


def make_instance(idx: int, rng: random.Random, system: str = "WAC") -> EvalInstance:
    plan = _sentence_plan(rng, rng.randint(6, 12))
    langs = [rng.random() < 0.4 for _ in plan]
    ref1 = [item if kind == "fw" else _surface(item, rng, eng, False)
            for (kind, item), eng in zip(plan, langs)]
    ref2 = _realize(plan, rng, 0.5, False)

    harm = rng.randint(0, 5)
    cand = []
    for (kind, item), eng in zip(plan, langs):
        if kind == "fw":
            cand.append(item)
        elif rng.random() < 0.3:
            # harmless: language switch or variant spelling
            cand.append(_surface(item, rng, not eng if rng.random() < 0.5 else eng, True))
        else:
            cand.append(_surface(item, rng, eng, True))
    for _ in range(harm):
        op = rng.choice(("drop", "replace", "reorder"))
        if op == "drop" and len(cand) > 3:
            del cand[rng.randrange(len(cand))]
        elif op == "replace":
            cand[rng.randrange(len(cand))] = rng.choice(DISTRACTORS)
        else:
            i = rng.randrange(max(1, len(cand) - 3))
            cand = cand[:i] + cand[i + 3:i + 6] + cand[i:i + 3] + cand[i + 6:]
    base = 10 - 1.6 * harm
    ratings = tuple(int(min(10, max(1, round(base + rng.gauss(0, 0.8))))) for _ in range(2))
    return EvalInstance(
        id=str(idx), system=system, candidate=" ".join(cand),
        references=(" ".join(ref1), " ".join(ref2)), ratings=ratings,
    )


def make_dataset(n: int = 50, seed: int = 0, systems=("WAC", "PAC")) -> list[EvalInstance]:
    rng = random.Random(seed)
    return [make_instance(i, rng, systems[i % len(systems)]) for i in range(n)]


def make_corpus(n: int = 2000, seed: int = 1) -> list[str]:
    rng = random.Random(seed)
    return [" ".join(_realize(_sentence_plan(rng, rng.randint(5, 14)), rng, 0.4, True))
            for _ in range(n)]


def make_embeddings(dim: int = 16, seed: int = 2, noise: float = 0.25) -> EmbeddingStore:
    """Every surface form of a concept lies near that concept's direction."""
    rng = np.random.default_rng(seed)
    vectors = {}
    for concept, (en, hi) in LEXICON.items():
        base = rng.normal(size=dim)
        base /= np.linalg.norm(base)
        for form in en + hi:
            if form not in vectors:
                vectors[form] = base + noise * rng.normal(size=dim) / np.sqrt(dim)
    for word in FUNCTION_WORDS + DISTRACTORS:
        if word not in vectors:
            vectors[word] = rng.normal(size=dim)
    return EmbeddingStore(dim, vectors)


def write_embeddings(store: EmbeddingStore, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{len(store)} {store.dim}\n")
        for word, vec in store.vectors.items():
            fh.write(word + " " + " ".join(repr(float(x)) for x in vec) + "\n")
