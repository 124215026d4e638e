"""Run configuration, read from a JSON file (default ``r2k.json``)."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .errors import ConfigError, R2KError
from .gamma import GammaEmbedding, injectivity_audit

DEFAULT_PATH = "r2k.json"


@dataclass
class Config:
    rank: int = 1
    mode: str = "rational"
    generators: list = field(default_factory=lambda: ["1"])
    window: int = 4
    format: str = "json"

    def __post_init__(self):
        if self.mode not in ("rational", "generic"):
            raise ConfigError(f"unknown mode {self.mode!r}")
        if self.format not in ("json", "text"):
            raise ConfigError(f"unknown format {self.format!r}")
        if not isinstance(self.rank, int) or self.rank < 1:
            raise ConfigError("rank must be a positive integer")
        if not isinstance(self.window, int) or self.window < 1:
            raise ConfigError("window must be a positive integer")
        if self.mode == "generic":
            want = [f"u{k}" for k in range(1, self.rank + 1)]
            if self.generators in (None, [], ["1"]):
                self.generators = want
            if [str(g).replace(" ", "") for g in self.generators] != want:
                raise ConfigError(f"generic mode generators must be {', '.join(want)}")
        else:
            if self.rank != 1:
                raise ConfigError("rational mode requires rank 1")
            if len(self.generators) != 1:
                raise ConfigError("rational mode takes exactly one generator")

    def embedding(self):
        if self.mode == "generic":
            return GammaEmbedding.generic(self.rank)
        try:
            emb = GammaEmbedding.rational(str(self.generators[0]))
        except (R2KError, ValueError, ZeroDivisionError) as e:
            raise ConfigError(f"bad generator {self.generators[0]!r}: {e}") from None
        if not emb.generators[0].is_rational():
            raise ConfigError("rational mode needs a rational generator")
        return emb

    def checked_embedding(self, n=None):
        """The embedding, after confirming injectivity on the 2n box."""
        emb = self.embedding()
        rep = injectivity_audit(emb, n or self.window)
        if not rep.passed:
            raise ConfigError(f"embedding is not injective: {rep.failures()[0].witness}")
        return emb

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        unknown = set(d) - {"rank", "mode", "generators", "window", "format"}
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        d = dict(d)
        if "generators" in d:
            d["generators"] = [str(g) for g in d["generators"]]
        return cls(**d)


def load_config(path=None):
    """Read ``path``; a missing default file yields the default config."""
    p = Path(path or DEFAULT_PATH)
    if not p.exists():
        if path is None:
            return Config()
        raise ConfigError(f"config file {p} not found")
    try:
        data = json.loads(p.read_text())
    except json.JSONDecodeError as e:
        raise ConfigError(f"{p}: {e}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{p}: expected a JSON object")
    return Config.from_dict(data)
