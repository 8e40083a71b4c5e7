"""Dataset scoring, per-rating aggregation and human-correlation reports."""
from __future__ import annotations

import csv
import io
import json
import math
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from mipe.pipeline import Resources, evaluate_instance

VARIANTS = ("raw", "augmented")
TABLE_RATINGS = range(2, 11)


class DatasetError(ValueError):
    pass


class BucketError(ValueError):
    pass


class ReportError(ValueError):
    pass


@dataclass(frozen=True)
class EvalInstance:
    id: str
    system: str
    candidate: str
    references: tuple
    ratings: tuple


@dataclass(frozen=True)
class Bucket:
    label: str
    low: int
    high: int

    def __contains__(self, rating) -> bool:
        return self.low <= rating <= self.high


BUCKETS = (Bucket("bucket1", 2, 10), Bucket("bucket2", 2, 5), Bucket("bucket3", 6, 10))


def _instance_from_json(obj, lineno: int) -> EvalInstance:
    def fail(msg):
        raise DatasetError(f"line {lineno}: {msg}")

    if not isinstance(obj, dict):
        fail("expected a JSON object")
    missing = {"id", "system", "candidate", "references", "ratings"} - set(obj)
    if missing:
        fail(f"missing fields {sorted(missing)}")
    for key in ("id", "system", "candidate"):
        if not isinstance(obj[key], str):
            fail(f"{key!r} must be a string")
    if not obj["id"]:
        fail("'id' must be non-empty")
    refs = obj["references"]
    if not isinstance(refs, list) or not all(isinstance(r, str) for r in refs):
        fail("'references' must be a list of strings")
    if not refs:
        fail("'references' must not be empty")
    ratings = obj["ratings"]
    if (not isinstance(ratings, list) or not ratings
            or not all(isinstance(r, int) and not isinstance(r, bool) for r in ratings)):
        fail("'ratings' must be a non-empty list of integers")
    for r in ratings:
        if not 1 <= r <= 10:
            fail(f"rating {r} outside [1, 10]")
    return EvalInstance(obj["id"], obj["system"], obj["candidate"], tuple(refs), tuple(ratings))


def load_dataset(path) -> list[EvalInstance]:
    """Read JSON lines with fields id, system, candidate, references, ratings."""
    out = []
    seen = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DatasetError(f"line {lineno}: invalid JSON ({exc.msg})") from None
            inst = _instance_from_json(obj, lineno)
            if inst.id in seen:
                raise DatasetError(f"line {lineno}: duplicate id {inst.id!r}")
            seen.add(inst.id)
            out.append(inst)
    return out


def save_dataset(instances, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for inst in instances:
            fh.write(json.dumps({
                "id": inst.id, "system": inst.system, "candidate": inst.candidate,
                "references": list(inst.references), "ratings": list(inst.ratings),
            }, ensure_ascii=False) + "\n")


@dataclass(frozen=True)
class InstanceScore:
    id: str
    system: str
    metric: str
    ratings: tuple
    raw: float
    augmented: float
    mwp: float
    phrase_score: float
    canonical_raw: float
    mwp_raw: float
    phrase_score_raw: float

    def value(self, variant: str) -> float:
        if variant == "raw":
            return self.raw
        if variant == "augmented":
            return self.augmented
        raise ValueError(f"unknown variant {variant!r}")


def _score_instance(inst, metrics, resources) -> list[InstanceScore]:
    return [
        InstanceScore(
            id=inst.id, system=inst.system, metric=res.raw.name, ratings=tuple(inst.ratings),
            raw=res.baseline.value, augmented=res.augmented.value, mwp=res.mwp_scaled,
            phrase_score=res.phrase_score_scaled, canonical_raw=res.raw.value,
            mwp_raw=res.mwp_raw, phrase_score_raw=res.phrase_score_raw,
        )
        for res in evaluate_instance(inst, metrics, resources)
    ]


_WORKER_STATE: dict = {}


def _worker_init(metrics, resources):
    _WORKER_STATE["args"] = (metrics, resources)


def _worker_score(inst):
    metrics, resources = _WORKER_STATE["args"]
    return _score_instance(inst, metrics, resources)


def evaluate_dataset(instances, metrics, resources: Resources, workers: int = 1) -> list[InstanceScore]:
    """Score every instance; output follows the input order regardless of workers."""
    instances = list(instances)
    metrics = list(metrics)
    for m in metrics:
        resources.spec(m)
    if workers <= 1 or len(instances) < 2:
        batches = [_score_instance(inst, metrics, resources) for inst in instances]
    else:
        with ProcessPoolExecutor(workers, initializer=_worker_init,
                                 initargs=(metrics, resources)) as pool:
            batches = list(pool.map(_worker_score, instances, chunksize=16))
    return [rec for batch in batches for rec in batch]


def _observed_ratings(ratings, mode: str) -> list[int]:
    if mode == "duplicate":
        return list(ratings)
    if mode == "mean":
        # round half up
        return [int(math.floor(sum(ratings) / len(ratings) + 0.5))]
    raise ValueError(f"unknown rating mode {mode!r}")


def _rating_groups(records, variant: str, mode: str) -> dict:
    groups = defaultdict(list)
    for rec in records:
        for rating in _observed_ratings(rec.ratings, mode):
            groups[(rec.system, rec.metric, rating)].append(rec.value(variant))
    return groups


def per_rating_means(records, variant: str, mode: str = "duplicate") -> dict:
    """Mean score per ``(system, metric, rating)``.

    In ``duplicate`` mode an instance rated [9, 8] counts once at 9 and once
    at 8.
    """
    records = list(records)
    if not records:
        raise ValueError("no results to aggregate")
    groups = _rating_groups(records, variant, mode)
    return {key: math.fsum(vals) / len(vals) for key, vals in sorted(groups.items())}


def pearson(xs, ys) -> float:
    xs = [float(x) for x in xs]
    ys = [float(y) for y in ys]
    if len(xs) != len(ys):
        raise ValueError("pearson needs sequences of equal length")
    if len(xs) < 2:
        raise ValueError("pearson needs at least two points")
    mx = math.fsum(xs) / len(xs)
    my = math.fsum(ys) / len(ys)
    dx = [x - mx for x in xs]
    dy = [y - my for y in ys]
    sxx = math.fsum(d * d for d in dx)
    syy = math.fsum(d * d for d in dy)
    if sxx == 0 or syy == 0:
        raise ValueError("pearson is undefined for a constant sequence")
    r = math.fsum(a * b for a, b in zip(dx, dy)) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def _series(means: dict, system: str, metric: str, bucket: Bucket | None = None):
    pts = sorted((rating, v) for (s, m, rating), v in means.items()
                 if s == system and m == metric and (bucket is None or rating in bucket))
    return [p[0] for p in pts], [p[1] for p in pts]


def bucket_correlations(means_by_variant: dict, bucket: Bucket) -> dict:
    """Pearson r between rating level and mean score inside ``bucket``.

    ``means_by_variant`` maps a variant name to a :func:`per_rating_means`
    result.  Keys of the output are ``(system, metric, variant)``.
    """
    out = {}
    for variant, means in means_by_variant.items():
        for system, metric in sorted({(s, m) for s, m, _ in means}):
            levels, values = _series(means, system, metric, bucket)
            if len(levels) < 2:
                raise BucketError(
                    f"{bucket.label} [{bucket.low}-{bucket.high}] has {len(levels)} rating "
                    f"level(s) for {system}/{metric}; need at least 2")
            out[(system, metric, variant)] = pearson(levels, values)
    return out


def _safe_pearson(xs, ys):
    try:
        return pearson(xs, ys)
    except ValueError:
        return None


@dataclass
class ScoreReport:
    records: list
    rating_mode: str = "duplicate"
    means: dict = field(default_factory=dict)
    correlations: dict = field(default_factory=dict)
    agreement: dict = field(default_factory=dict)

    @property
    def systems(self) -> list[str]:
        return sorted({r.system for r in self.records})

    @property
    def metrics(self) -> list[str]:
        return list(dict.fromkeys(r.metric for r in self.records))


def build_report(records, rating_mode: str = "duplicate") -> ScoreReport:
    """Aggregate instance scores into rating means and correlation tables.

    Correlations that are undefined (too few levels, constant means) are
    stored as ``None`` rather than aborting the report.
    """
    records = list(records)
    if not records:
        raise ReportError("no results to report")
    report = ScoreReport(records, rating_mode)
    report.means = {v: per_rating_means(records, v, rating_mode) for v in VARIANTS}
    for bucket in BUCKETS:
        table = {}
        for system in report.systems:
            for metric in report.metrics:
                for variant in VARIANTS:
                    levels, values = _series(report.means[variant], system, metric, bucket)
                    table[(system, metric, variant)] = _safe_pearson(levels, values)
        report.correlations[bucket.label] = table
    bucket1 = BUCKETS[0]
    for system in report.systems:
        for metric in report.metrics:
            lv_raw, raw = _series(report.means["raw"], system, metric, bucket1)
            lv_aug, aug = _series(report.means["augmented"], system, metric, bucket1)
            report.agreement[(system, metric)] = _safe_pearson(raw, aug) if lv_raw == lv_aug else None
    return report


INSTANCE_COLUMNS = ("id", "system", "metric", "raw", "augmented", "mwp", "phrase_score",
                    "canonical_raw", "mwp_raw", "phrase_score_raw", "ratings")


def _num(x) -> str:
    return "NA" if x is None else repr(float(x))


def _fixed(x, width=8) -> str:
    return f"{'NA':>{width}}" if x is None else f"{x:>{width}.3f}"


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _render_means(report: ScoreReport) -> str:
    metrics = report.metrics
    lines = [f"# per-rating mean scores (rating mode: {report.rating_mode})", ""]
    for system in report.systems:
        lines.append(f"## {system}")
        head = "rating | " + " ".join(f"{m.upper():>8}" for m in metrics)
        lines.append(f"{'':6} | {'without MIPE':^{9 * len(metrics) - 1}} | {'with MIPE':^{9 * len(metrics) - 1}}")
        lines.append(head + " | " + " ".join(f"{m.upper():>8}" for m in metrics))
        for rating in TABLE_RATINGS:
            row = []
            for variant in VARIANTS:
                row.append(" ".join(
                    _fixed(report.means[variant].get((system, m, rating))) for m in metrics))
            lines.append(f"{rating:>6} | " + " | ".join(row))
        lines.append("")
    return "\n".join(lines)


def _render_correlations(report: ScoreReport) -> str:
    lines = [f"# Pearson r between rating level and mean score (rating mode: {report.rating_mode})",
             ""]
    header = f"{'system':<8} {'metric':<8} {'variant':<10}" + "".join(
        f" {b.label + ' ' + str(b.low) + '-' + str(b.high):>14}" for b in BUCKETS)
    lines.append(header)
    for system in report.systems:
        for metric in report.metrics:
            for variant in VARIANTS:
                cells = "".join(
                    f" {_fixed(report.correlations[b.label][(system, metric, variant)], 14)}"
                    for b in BUCKETS)
                lines.append(f"{system:<8} {metric:<8} {variant:<10}{cells}")
    lines.append("")
    lines.append("# Pearson r between with- and without-MIPE rating means (ratings 2-10)")
    for system in report.systems:
        for metric in report.metrics:
            lines.append(f"{system:<8} {metric:<8} {_fixed(report.agreement[(system, metric)], 10)}")
    lines.append("")
    return "\n".join(lines)


def report_files(report: ScoreReport) -> dict[str, str]:
    """File name -> contents for every report artifact."""
    inst_rows = [
        (r.id, r.system, r.metric, _num(r.raw), _num(r.augmented), _num(r.mwp),
         _num(r.phrase_score), _num(r.canonical_raw), _num(r.mwp_raw),
         _num(r.phrase_score_raw), ";".join(str(x) for x in r.ratings))
        for r in report.records
    ]
    counts = {v: _rating_groups(report.records, v, report.rating_mode) for v in VARIANTS}
    mean_rows = [
        (s, m, v, rating, _num(value), len(counts[v][(s, m, rating)]))
        for v in VARIANTS for (s, m, rating), value in report.means[v].items()
    ]
    corr_rows = [
        (s, m, v, b.label, _num(report.correlations[b.label][(s, m, v)]))
        for b in BUCKETS for (s, m, v) in report.correlations[b.label]
    ]
    agree_rows = [(s, m, _num(r)) for (s, m), r in report.agreement.items()]
    return {
        "instance_scores.csv": _csv_text(INSTANCE_COLUMNS, inst_rows),
        "rating_means.csv": _csv_text(("system", "metric", "variant", "rating", "mean", "n"),
                                      mean_rows),
        "rating_means.txt": _render_means(report),
        "correlations.csv": _csv_text(("system", "metric", "variant", "bucket", "r"), corr_rows),
        "correlations.txt": _render_correlations(report),
        "agreement.csv": _csv_text(("system", "metric", "r"), agree_rows),
    }


def emit_report(report: ScoreReport, out_dir) -> list[Path]:
    if not report.records:
        raise ReportError("no results to report; nothing written")
    files = report_files(report)
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        written = []
        for name, text in files.items():
            path = out / name
            path.write_bytes(text.encode("utf-8"))
            written.append(path)
    except OSError as exc:
        raise ReportError(f"cannot write report to {out}: {exc}") from None
    return written


def read_instance_scores(path) -> list[InstanceScore]:
    """Inverse of the ``instance_scores.csv`` writer."""
    out = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or tuple(reader.fieldnames) != INSTANCE_COLUMNS:
            raise DatasetError(f"{path}: unexpected columns {reader.fieldnames}")
        for lineno, row in enumerate(reader, start=2):
            try:
                ratings = tuple(int(x) for x in row["ratings"].split(";") if x)
                out.append(InstanceScore(
                    id=row["id"], system=row["system"], metric=row["metric"], ratings=ratings,
                    **{k: float(row[k]) for k in INSTANCE_COLUMNS[3:-1]},
                ))
            except (TypeError, ValueError) as exc:
                raise DatasetError(f"{path}: line {lineno}: {exc}") from None
    return out
