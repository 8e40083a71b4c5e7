"""Phonetic dissimilarity (PDS): an edit distance with phonetically
discounted operation costs.

Repeated characters are collapsed before comparison, similar-sounding
substitutions are cheap, vowel insertions/deletions are cheap (deletions
more so than insertions) and likely-silent letters are cheap to add or
drop.  The directed distance counts edits that turn the first word into
the second; :func:`pds` takes the minimum over both directions.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from functools import lru_cache
from pathlib import Path

from mipe.textnorm import collapse_repeats

DEFAULT_SIMILAR_PAIRS = (
    ("c", "k"), ("k", "q"), ("c", "s"), ("s", "z"), ("j", "z"),
    ("g", "j"), ("b", "p"), ("v", "w"), ("f", "v"),
)


def _symmetric(pairs) -> frozenset[tuple[str, str]]:
    out = set()
    for a, b in pairs:
        if len(a) != 1 or len(b) != 1:
            raise ValueError(f"similar pair must be two single characters, got {(a, b)!r}")
        if a == b:
            raise ValueError(f"similar pair must join distinct characters, got {(a, b)!r}")
        out.add((a, b))
        out.add((b, a))
    return frozenset(out)


@dataclass(frozen=True)
class PhoneticCostTable:
    add_default: float = 1.0
    del_default: float = 1.0
    sub_default: float = 2.0
    rho_sub: float = 0.75
    rho_add: float = 0.75
    rho_del: float = 0.25
    rho_sil: float = 0.75
    similar_pairs: frozenset = field(default_factory=lambda: _symmetric(DEFAULT_SIMILAR_PAIRS))
    vowels: frozenset = frozenset("aeiou")
    silent_chars: frozenset = frozenset("he")
    # any vowel-for-vowel substitution costs rho_sub
    vowels_similar: bool = True

    def __post_init__(self):
        object.__setattr__(self, "similar_pairs", _symmetric(self.similar_pairs))
        object.__setattr__(self, "vowels", frozenset(self.vowels))
        object.__setattr__(self, "silent_chars", frozenset(self.silent_chars))
        costs = {f.name: getattr(self, f.name) for f in fields(self)
                 if f.name.startswith(("rho_", "add_", "del_", "sub_"))}
        for name, value in costs.items():
            if value < 0:
                raise ValueError(f"{name} must be >= 0, got {value}")
        # non-strict so that the discount-free table stays constructible
        if self.rho_add < self.rho_del:
            raise ValueError("rho_add must not be smaller than rho_del")
        if self.rho_sub > self.sub_default:
            raise ValueError("rho_sub must not exceed sub_default")
        if self.rho_add > self.add_default or self.rho_sil > self.add_default:
            raise ValueError("rho_add and rho_sil must not exceed add_default")
        if self.rho_del > self.del_default:
            raise ValueError("rho_del must not exceed del_default")

    @classmethod
    def without_discounts(cls) -> "PhoneticCostTable":
        """Plain weighted Levenshtein: insert/delete 1, substitute 2."""
        return cls(rho_sub=2.0, rho_add=1.0, rho_del=1.0, rho_sil=1.0,
                   similar_pairs=frozenset(), vowels_similar=False)

    @classmethod
    def from_dict(cls, data: dict) -> "PhoneticCostTable":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown phonetic config keys: {sorted(unknown)}")
        kwargs = dict(data)
        if "similar_pairs" in kwargs:
            kwargs["similar_pairs"] = [tuple(p) for p in kwargs["similar_pairs"]]
        for key in ("vowels", "silent_chars"):
            if key in kwargs:
                kwargs[key] = frozenset(kwargs[key])
        return cls(**kwargs)

    def to_dict(self) -> dict:
        data = asdict(self)
        data["similar_pairs"] = sorted({tuple(sorted(p)) for p in self.similar_pairs})
        data["vowels"] = "".join(sorted(self.vowels))
        data["silent_chars"] = "".join(sorted(self.silent_chars))
        return data

    def substitution(self, a: str, b: str) -> float:
        if a == b:
            return 0.0
        if (a, b) in self.similar_pairs:
            return self.rho_sub
        if self.vowels_similar and a in self.vowels and b in self.vowels:
            return self.rho_sub
        return self.sub_default

    def insertion(self, ch: str) -> float:
        if ch in self.vowels:
            return self.rho_add
        if ch in self.silent_chars:
            return self.rho_sil
        return self.add_default

    def deletion(self, ch: str) -> float:
        if ch in self.vowels:
            return self.rho_del
        if ch in self.silent_chars:
            return self.rho_sil
        return self.del_default


DEFAULT_COSTS = PhoneticCostTable()


def load_cost_table(path) -> PhoneticCostTable:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return PhoneticCostTable.from_dict(data.get("phonetic", data))


@lru_cache(maxsize=1 << 18)
def _directed(src: str, dst: str, costs: PhoneticCostTable) -> float:
    n = len(dst)
    prev = [0.0] * (n + 1)
    for j in range(1, n + 1):
        prev[j] = prev[j - 1] + costs.insertion(dst[j - 1])
    for a in src:
        cur = [prev[0] + costs.deletion(a)] + [0.0] * n
        for j in range(1, n + 1):
            b = dst[j - 1]
            cur[j] = min(
                prev[j - 1] + costs.substitution(a, b),
                prev[j] + costs.deletion(a),
                cur[j - 1] + costs.insertion(b),
            )
        prev = cur
    return prev[n]


def pds_directed(w1: str, w2: str, costs: PhoneticCostTable = DEFAULT_COSTS) -> float:
    """Minimum cost of editing ``w1`` into ``w2`` after repeat collapse.

    Insertions add characters of ``w2``; deletions remove characters of ``w1``.
    """
    return _directed(collapse_repeats(w1), collapse_repeats(w2), costs)


@lru_cache(maxsize=1 << 18)
def _symmetric_pds(w1: str, w2: str, costs: PhoneticCostTable) -> float:
    return min(pds_directed(w1, w2, costs), pds_directed(w2, w1, costs))


def pds(w1: str, w2: str, costs: PhoneticCostTable = DEFAULT_COSTS) -> float:
    """Order-free PDS: the smaller of the two directed distances."""
    if w1 == w2:
        return 0.0
    return _symmetric_pds(w1, w2, costs)


def save_cost_table(costs: PhoneticCostTable, path) -> None:
    Path(path).write_text(json.dumps({"phonetic": costs.to_dict()}, indent=2) + "\n",
                          encoding="utf-8")
