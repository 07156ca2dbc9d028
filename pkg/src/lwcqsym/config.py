"""Run configuration: defaults, an optional JSON file, then command-line flags."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, fields, replace
from typing import Mapping

from .errors import PreconditionError

CONFIG_ENV = "LWCQSYM_CONFIG"


@dataclass(frozen=True)
class Config:
    tol: float = 1e-8
    max_cutoff: int = 2**24
    term_budget: int = 10**7
    N: int = 10
    D: int = 6
    zero_budget: int = 2
    q: float = 0.5
    output: str = "text"

    def __post_init__(self):
        for name in ("tol", "max_cutoff", "term_budget", "N", "D"):
            if not getattr(self, name) > 0:
                raise PreconditionError(f"config value {name} must be positive")
        if self.zero_budget < 0:
            raise PreconditionError("zero_budget must be nonnegative")
        if not 0 < self.q < 1:
            raise PreconditionError("q must lie in (0, 1)")
        if self.output not in ("text", "json"):
            raise PreconditionError("output must be 'text' or 'json'")

    def merged(self, values: Mapping) -> "Config":
        """Copy with every non-None entry of ``values`` applied."""
        known = {f.name: f.type for f in fields(self)}
        updates = {}
        for k, v in values.items():
            if v is None:
                continue
            if k not in known:
                raise PreconditionError(f"unknown config key {k!r}")
            updates[k] = v
        return replace(self, **updates)

    def to_dict(self) -> dict:
        return asdict(self)


def load_config(flags: Mapping | None = None, env: Mapping | None = None) -> Config:
    """Defaults, overridden by the file named in ``$LWCQSYM_CONFIG``, overridden by flags."""
    env = os.environ if env is None else env
    cfg = Config()
    path = env.get(CONFIG_ENV)
    if path:
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, ValueError) as exc:
            raise PreconditionError(f"cannot read config file {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise PreconditionError("config file must hold a JSON object")
        cfg = cfg.merged(data)
    return cfg.merged(flags or {})
