"""Sentence-level string metrics over token lists, plus an adapter for
scores computed elsewhere (e.g. BERTScore).

Multi-reference policy: BLEU clips against the per-n-gram maximum over
references, NIST pools reference n-gram counts for its information
weights, WER and TER take the best single reference.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

HIGHER = "higher"
LOWER = "lower"

BLEU_MAX_ORDER = 4
BLEU_EPSILON = 1e-9
NIST_MAX_ORDER = 5
# NIST brevity factor is 0.5 when the candidate is 2/3 of the reference length
NIST_BETA = math.log(0.5) / math.log(1.5) ** 2

TER_MAX_SHIFT_SIZE = 10
TER_MAX_SHIFT_DIST = 50
TER_MAX_SHIFT_CANDIDATES = 1000


class MissingScoreError(KeyError):
    pass


class ScoreFormatError(ValueError):
    pass


@dataclass(frozen=True)
class MetricScore:
    name: str
    value: float
    orientation: str

    @property
    def higher_is_better(self) -> bool:
        return self.orientation == HIGHER


@dataclass(frozen=True)
class MetricSpec:
    name: str
    orientation: str
    lower: float = 0.0
    upper: float = math.inf


NATIVE = {
    "bleu": MetricSpec("bleu", HIGHER, 0.0, 1.0),
    "nist": MetricSpec("nist", HIGHER),
    "wer": MetricSpec("wer", LOWER),
    "ter": MetricSpec("ter", LOWER),
}


def ngrams(tokens, n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def _check_refs(refs):
    refs = [list(r) for r in refs]
    if not refs:
        raise ValueError("at least one reference is required")
    return refs


def bleu(cand, refs, max_order: int = BLEU_MAX_ORDER, epsilon: float = BLEU_EPSILON) -> MetricScore:
    """Smoothed sentence BLEU.

    Orders above the candidate length are dropped (effective order), a zero
    match count is replaced by ``epsilon`` and the brevity penalty uses the
    closest reference length (shorter wins ties).
    """
    cand = list(cand)
    refs = _check_refs(refs)
    if not cand:
        return MetricScore("bleu", 0.0, HIGHER)
    order = min(max_order, len(cand))
    log_sum = 0.0
    precisions = []
    for n in range(1, order + 1):
        counts = ngrams(cand, n)
        max_ref: Counter = Counter()
        for ref in refs:
            max_ref |= ngrams(ref, n)
        matches = sum(min(c, max_ref[g]) for g, c in counts.items())
        total = len(cand) - n + 1
        precisions.append((matches if matches > 0 else epsilon) / total)
        log_sum += math.log(precisions[-1])
    ref_len = min((abs(len(r) - len(cand)), len(r)) for r in refs)[1]
    bp = 1.0 if len(cand) > ref_len else math.exp(1 - ref_len / len(cand))
    # exp/log round-off can push the geometric mean outside its terms
    geo = min(max(precisions), max(min(precisions), math.exp(log_sum / order)))
    value = bp * geo
    return MetricScore("bleu", min(1.0, value), HIGHER)


def nist_information(refs, max_order: int = NIST_MAX_ORDER) -> dict:
    """Information weight of every reference n-gram, from pooled counts.

    ``info(w1..wn) = log2(count(w1..wn-1) / count(w1..wn))`` where the empty
    prefix counts all reference tokens.
    """
    pooled: Counter = Counter()
    for ref in refs:
        for n in range(1, max_order + 1):
            pooled.update(ngrams(ref, n))
    n_words = sum(len(r) for r in refs)
    info = {}
    for gram, count in pooled.items():
        prefix = n_words if len(gram) == 1 else pooled[gram[:-1]]
        info[gram] = math.log2(prefix / count)
    return info


def nist(cand, refs, max_order: int = NIST_MAX_ORDER) -> MetricScore:
    cand = list(cand)
    refs = _check_refs(refs)
    if not cand:
        return MetricScore("nist", 0.0, HIGHER)
    info = nist_information(refs, max_order)
    score = 0.0
    for n in range(1, min(max_order, len(cand)) + 1):
        counts = ngrams(cand, n)
        max_ref: Counter = Counter()
        for ref in refs:
            max_ref |= ngrams(ref, n)
        gained = sum(min(c, max_ref[g]) * info[g] for g, c in counts.items() if max_ref[g])
        score += gained / (len(cand) - n + 1)
    ref_len = sum(len(r) for r in refs) / len(refs)
    ratio = min(len(cand) / ref_len, 1.0) if ref_len else 1.0
    bp = math.exp(NIST_BETA * math.log(ratio) ** 2)
    return MetricScore("nist", score * bp, HIGHER)


def levenshtein(a, b) -> int:
    prev = list(range(len(b) + 1))
    for i, x in enumerate(a, start=1):
        cur = [i] + [0] * len(b)
        for j, y in enumerate(b, start=1):
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (x != y))
        prev = cur
    return prev[-1]


def _nonempty_refs(refs):
    refs = _check_refs(refs)
    for i, ref in enumerate(refs):
        if not ref:
            raise ValueError(f"reference {i} is empty")
    return refs


def wer(cand, refs) -> MetricScore:
    cand = list(cand)
    refs = _nonempty_refs(refs)
    return MetricScore("wer", min(levenshtein(cand, r) / len(r) for r in refs), LOWER)


def _alignment(hyp, ref):
    """Levenshtein distance plus the alignment TER uses to place shifts.

    Returns ``(distance, align, hyp_err, ref_err)``: ``align`` maps each
    reference position to the hypothesis position it lines up with (a
    reference word with no counterpart maps to the preceding hypothesis
    position, possibly -1); the error lists flag positions that are not
    exact matches.
    """
    m, n = len(hyp), len(ref)
    dist = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(m + 1):
        dist[i][0] = i
    for j in range(n + 1):
        dist[0][j] = j
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            dist[i][j] = min(dist[i - 1][j - 1] + (hyp[i - 1] != ref[j - 1]),
                             dist[i - 1][j] + 1, dist[i][j - 1] + 1)
    ops = []
    i, j = m, n
    while i > 0 or j > 0:
        if i > 0 and j > 0 and dist[i][j] == dist[i - 1][j - 1] + (hyp[i - 1] != ref[j - 1]):
            ops.append("M" if hyp[i - 1] == ref[j - 1] else "S")
            i, j = i - 1, j - 1
        elif i > 0 and dist[i][j] == dist[i - 1][j] + 1:
            ops.append("I")
            i -= 1
        else:
            ops.append("D")
            j -= 1
    ops.reverse()
    align, hyp_err, ref_err = {}, [], []
    h = r = -1
    for op in ops:
        if op in "MS":
            h += 1
            r += 1
            align[r] = h
            hyp_err.append(op == "S")
            ref_err.append(op == "S")
        elif op == "I":
            h += 1
            hyp_err.append(True)
        else:
            r += 1
            align[r] = h
            ref_err.append(True)
    return dist[m][n], align, hyp_err, ref_err


def _matching_spans(hyp, ref):
    for sh in range(len(hyp)):
        for sr in range(len(ref)):
            if abs(sr - sh) > TER_MAX_SHIFT_DIST:
                continue
            length = 0
            while (sh + length < len(hyp) and sr + length < len(ref)
                   and length < TER_MAX_SHIFT_SIZE and hyp[sh + length] == ref[sr + length]):
                length += 1
                yield sh, sr, length


def _move(words, start, length, target):
    """Move ``words[start:start+length]`` so it begins before ``target``."""
    block = words[start:start + length]
    if target < start:
        return words[:target] + block + words[target:start] + words[start + length:]
    if target > start + length:
        return words[:start] + words[start + length:target] + block + words[target:]
    return words[:start] + words[start + length:length + target] + block + words[length + target:]


def _best_shift(hyp, ref, distance):
    _, align, hyp_err, ref_err = _alignment(hyp, ref)
    best = None
    tried = 0
    for sh, sr, length in _matching_spans(hyp, ref):
        # only move words that are currently wrong onto positions that are wrong
        if not any(hyp_err[sh:sh + length]) or not any(ref_err[sr:sr + length]):
            continue
        if sh <= align[sr] < sh + length:
            continue
        last = None
        for offset in range(-1, length):
            if sr + offset == -1:
                target = 0
            elif sr + offset in align:
                target = align[sr + offset] + 1
            else:
                break
            if target == last:
                continue
            last = target
            moved = _move(hyp, sh, length, target)
            gain = distance - levenshtein(moved, ref)
            # rank: gain, then longer block, earlier block, earlier target
            key = (gain, length, -sh, -target)
            if best is None or key > best[0]:
                best = (key, moved)
            tried += 1
        if tried >= TER_MAX_SHIFT_CANDIDATES:
            break
    return best


def ter_edits(cand, ref) -> tuple[int, int]:
    """Greedy block-shift TER against one reference: (shifts, edits)."""
    hyp = list(cand)
    ref = list(ref)
    distance = levenshtein(hyp, ref)
    shifts = 0
    while distance > 0:
        best = _best_shift(hyp, ref, distance)
        if best is None or best[0][0] <= 0:
            break
        hyp = best[1]
        distance -= best[0][0]
        shifts += 1
    return shifts, distance


def ter_single(cand, ref) -> float:
    ref = list(ref)
    if not ref:
        raise ValueError("reference is empty")
    shifts, edits = ter_edits(cand, ref)
    return (shifts + edits) / len(ref)


def ter(cand, refs) -> MetricScore:
    cand = list(cand)
    refs = _nonempty_refs(refs)
    return MetricScore("ter", min(ter_single(cand, r) for r in refs), LOWER)


NATIVE_FUNCS = {"bleu": bleu, "nist": nist, "wer": wer, "ter": ter}


@dataclass
class ExternalScores:
    """Scores for one externally computed metric, keyed by instance id."""
    spec: MetricSpec
    values: dict[str, float]

    @property
    def name(self) -> str:
        return self.spec.name

    def score(self, instance_id: str) -> MetricScore:
        try:
            value = self.values[instance_id]
        except KeyError:
            raise MissingScoreError(
                f"external metric {self.name!r} has no score for instance {instance_id!r}") from None
        return MetricScore(self.name, value, self.spec.orientation)


def _parse_score_header(line: str) -> MetricSpec:
    parts = line.split()
    fields = {}
    i = 0
    while i < len(parts):
        key = parts[i]
        if key == "range":
            if i + 2 >= len(parts):
                raise ScoreFormatError("line 1: 'range' needs two bounds")
            fields["range"] = parts[i + 1:i + 3]
            i += 3
        else:
            if i + 1 >= len(parts):
                raise ScoreFormatError(f"line 1: header key {key!r} has no value")
            fields[key] = parts[i + 1]
            i += 2
    unknown = set(fields) - {"name", "orientation", "range"}
    if unknown or "name" not in fields or "orientation" not in fields:
        raise ScoreFormatError(
            "line 1: expected header 'name <id> orientation higher|lower [range <lo> <hi>]'")
    orientation = fields["orientation"]
    if orientation not in (HIGHER, LOWER):
        raise ScoreFormatError(f"line 1: orientation must be 'higher' or 'lower', got {orientation!r}")
    lower, upper = -math.inf, math.inf
    if "range" in fields:
        try:
            lower, upper = (float(x) for x in fields["range"])
        except ValueError:
            raise ScoreFormatError("line 1: range bounds must be numeric") from None
        if lower > upper:
            raise ScoreFormatError("line 1: empty range")
    name = fields["name"].lower()
    if name in NATIVE:
        raise ScoreFormatError(f"line 1: {name!r} clashes with a native metric")
    return MetricSpec(name, orientation, lower, upper)


def load_external_scores(path) -> ExternalScores:
    """Read a header line then ``instance_id<TAB>value`` lines."""
    with open(path, encoding="utf-8") as fh:
        spec = _parse_score_header(fh.readline())
        values: dict[str, float] = {}
        for lineno, line in enumerate(fh, start=2):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ScoreFormatError(f"line {lineno}: expected 'instance_id<TAB>value'")
            key, raw = parts[0].strip(), parts[1].strip()
            try:
                value = float(raw)
            except ValueError:
                raise ScoreFormatError(f"line {lineno}: non-numeric value {raw!r}") from None
            if math.isnan(value) or not spec.lower <= value <= spec.upper:
                raise ScoreFormatError(
                    f"line {lineno}: value {value} outside declared range [{spec.lower}, {spec.upper}]")
            if key in values:
                raise ScoreFormatError(f"line {lineno}: duplicate instance id {key!r}")
            values[key] = value
    return ExternalScores(spec, values)
