"""Run configuration: INI config files with command-line flag overrides.

The config file has one ``[run]`` section of key=value settings plus any
number of ``[event NAME]`` sections, each naming the hashtags and the
ground-truth source (a place table, or a track plus a towns file) for one
hurricane. Flags always win over file values.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from pathlib import Path

from .geolabel import CATEGORY_RULES, DEFAULT_RADIUS_KM

FEATURE_METHODS = ("bow", "embeddings")


class UsageError(Exception):
    """Bad invocation or unreadable input; exits with status 2."""


class DomainError(Exception):
    """Valid invocation that produced an empty or degenerate result; exits with status 1."""


@dataclass
class EventSpec:
    name: str
    hashtags: tuple[str, ...]
    place_table: str | None = None
    track: str | None = None
    towns: str | None = None

    def validate(self) -> None:
        if not self.hashtags:
            raise UsageError(f"event {self.name!r} needs at least one hashtag")
        has_table = self.place_table is not None
        has_track = self.track is not None or self.towns is not None
        if has_table == has_track:
            raise UsageError(
                f"event {self.name!r} needs exactly one ground-truth source: "
                "a place_table, or track+towns"
            )
        if has_track and (self.track is None or self.towns is None):
            raise UsageError(f"event {self.name!r} needs both track and towns files")


@dataclass
class RunConfig:
    corpus: str | None = None
    format: str = "jsonl"
    lang: str | None = None
    country: str | None = None
    out: str = "out"
    seed: int = 0
    k: int = 10
    features: str = "bow"
    algorithm: str = "naive_bayes"
    embeddings: str | None = None
    blocklist: str | None = None
    min_tweets: int = 10
    leaky_vocab: bool = False
    radius_km: float = DEFAULT_RADIUS_KM
    category_rule: str = "nearest"
    data: str | None = None
    model: str | None = None
    sweep: bool = False
    params: dict = field(default_factory=dict)
    events: list[EventSpec] = field(default_factory=list)

    def validate(self) -> None:
        if self.features not in FEATURE_METHODS:
            raise UsageError(f"unknown feature method {self.features!r}; expected one of {FEATURE_METHODS}")
        if self.category_rule not in CATEGORY_RULES:
            raise UsageError(f"unknown category rule {self.category_rule!r}; expected one of {CATEGORY_RULES}")
        if self.radius_km <= 0:
            raise UsageError("radius-km must be positive")
        if self.k < 2:
            raise UsageError("k must be >= 2")
        for event in self.events:
            event.validate()

    def resolved(self) -> dict:
        """Flat view of every setting, embedded in outputs as provenance."""
        out = {
            "corpus": self.corpus,
            "format": self.format,
            "lang": self.lang,
            "country": self.country,
            "out": self.out,
            "seed": self.seed,
            "k": self.k,
            "features": self.features,
            "algorithm": self.algorithm,
            "embeddings": self.embeddings,
            "blocklist": self.blocklist,
            "min_tweets": self.min_tweets,
            "leaky_vocab": self.leaky_vocab,
            "radius_km": self.radius_km,
            "category_rule": self.category_rule,
            "data": self.data,
            "model": self.model,
            "sweep": self.sweep,
            "params": dict(sorted(self.params.items())),
            "events": {
                e.name: {
                    "hashtags": list(e.hashtags),
                    "place_table": e.place_table,
                    "track": e.track,
                    "towns": e.towns,
                }
                for e in self.events
            },
        }
        return out


def _parse_bool(value: str) -> bool:
    lowered = value.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"expected a boolean, got {value!r}")


def parse_param(text: str) -> tuple[str, object]:
    """Parse one NAME=VALUE hyperparameter override (int, float, bool, or str)."""
    if "=" not in text:
        raise UsageError(f"expected NAME=VALUE, got {text!r}")
    name, raw = text.split("=", 1)
    name, raw = name.strip(), raw.strip()
    for caster in (int, float):
        try:
            return name, caster(raw)
        except ValueError:
            pass
    if raw.lower() in ("true", "false"):
        return name, raw.lower() == "true"
    return name, raw


def load_config_file(path: str | Path) -> RunConfig:
    parser = configparser.ConfigParser()
    read = parser.read(path, encoding="utf-8")
    if not read:
        raise UsageError(f"cannot read config file: {path}")
    config = RunConfig()
    if parser.has_section("run"):
        run = parser["run"]
        for key in ("corpus", "format", "lang", "country", "out", "features",
                    "algorithm", "embeddings", "blocklist", "category_rule",
                    "data", "model"):
            if key in run:
                setattr(config, key, run[key])
        if "seed" in run:
            config.seed = int(run["seed"])
        if "k" in run:
            config.k = int(run["k"])
        if "min_tweets" in run:
            config.min_tweets = int(run["min_tweets"])
        if "radius_km" in run:
            config.radius_km = float(run["radius_km"])
        if "leaky_vocab" in run:
            config.leaky_vocab = _parse_bool(run["leaky_vocab"])
        if "params" in run:
            for chunk in run["params"].split(","):
                if chunk.strip():
                    name, value = parse_param(chunk)
                    config.params[name] = value
    for section in parser.sections():
        if not section.startswith("event "):
            continue
        name = section[len("event "):].strip()
        sec = parser[section]
        hashtags = tuple(t.lower() for t in sec.get("hashtags", "").replace(",", " ").split())
        config.events.append(
            EventSpec(
                name=name,
                hashtags=hashtags,
                place_table=sec.get("place_table") or None,
                track=sec.get("track") or None,
                towns=sec.get("towns") or None,
            )
        )
    return config


def require_file(path: str | None, role: str) -> Path:
    if path is None:
        raise UsageError(f"missing required {role} path")
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"{role} file not found: {p}")
    return p
