"""JSON configuration holding every tunable of the pipeline.

Sections: ``phonetic``, ``sws``, ``scoring`` and ``harness``.  Missing keys
fall back to the defaults; unknown keys are rejected.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields

from mipe.phonetic import PhoneticCostTable
from mipe.scoring import AdjustmentConfig
from mipe.sws import SwsConfig

RATING_MODES = ("duplicate", "mean")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class HarnessConfig:
    # "duplicate": every rating is its own observation; "mean": one observation
    # at the rounded mean rating
    rating_mode: str = "duplicate"
    workers: int = 1

    def __post_init__(self):
        if self.rating_mode not in RATING_MODES:
            raise ValueError(f"rating_mode must be one of {RATING_MODES}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass(frozen=True)
class MipeConfig:
    phonetic: PhoneticCostTable = field(default_factory=PhoneticCostTable)
    sws: SwsConfig = field(default_factory=SwsConfig)
    scoring: AdjustmentConfig = field(default_factory=AdjustmentConfig)
    harness: HarnessConfig = field(default_factory=HarnessConfig)

    def to_dict(self) -> dict:
        return {
            "phonetic": self.phonetic.to_dict(),
            "sws": asdict(self.sws),
            "scoring": asdict(self.scoring),
            "harness": asdict(self.harness),
        }


def _section(cls, data: dict, name: str):
    known = {f.name for f in fields(cls)}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"[{name}] unknown keys: {sorted(unknown)}")
    try:
        return cls(**data)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"[{name}] {exc}") from None


def config_from_dict(data: dict) -> MipeConfig:
    unknown = set(data) - {"phonetic", "sws", "scoring", "harness"}
    if unknown:
        raise ConfigError(f"unknown config sections: {sorted(unknown)}")
    try:
        phonetic = PhoneticCostTable.from_dict(data.get("phonetic", {}))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"[phonetic] {exc}") from None
    return MipeConfig(
        phonetic=phonetic,
        sws=_section(SwsConfig, data.get("sws", {}), "sws"),
        scoring=_section(AdjustmentConfig, data.get("scoring", {}), "scoring"),
        harness=_section(HarnessConfig, data.get("harness", {}), "harness"),
    )


def load_config(path) -> MipeConfig:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be an object")
    return config_from_dict(data)


def dump_config(cfg: MipeConfig) -> str:
    return json.dumps(cfg.to_dict(), indent=2, sort_keys=True) + "\n"
