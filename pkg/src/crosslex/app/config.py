"""Service configuration: JSON file plus environment overrides.

Secrets never live in the file; the LLM key is read from the environment
variable named by ``llm_key_env`` at request time.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path


@dataclass
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8008
    workspace: str = "."
    default_pipeline: str = "aligned"
    align_method: str = "self_learn"
    expansion_k: int = 10
    max_contexts_per_term: int = 5
    max_per_paper: int = 2
    total_pairs_target: int = 50
    llm_endpoint: str = ""
    llm_model: str = ""
    llm_key_env: str = "CROSSLEX_LLM_KEY"
    cors_origins: list[str] = field(default_factory=lambda: ["http://localhost:5173"])

    def validate(self) -> None:
        if not (0 < self.port < 65536):
            raise ValueError(f"invalid port {self.port}")
        if not Path(self.workspace).is_dir():
            raise ValueError(f"workspace {self.workspace!r} is not a directory")


_ENV_PREFIX = "CROSSLEX_"


def load_config(path: str | Path | None = None, env: dict | None = None) -> ServiceConfig:
    values: dict = {}
    if path is not None:
        values.update(json.loads(Path(path).read_text(encoding="utf-8")))
    env = os.environ if env is None else env
    for name in ServiceConfig.__dataclass_fields__:
        key = _ENV_PREFIX + name.upper()
        if key in env:
            raw = env[key]
            if name == "cors_origins":
                values[name] = [o.strip() for o in raw.split(",") if o.strip()]
            elif name in ("port", "expansion_k", "max_contexts_per_term", "max_per_paper", "total_pairs_target"):
                values[name] = int(raw)
            else:
                values[name] = raw
    known = set(ServiceConfig.__dataclass_fields__)
    unknown = set(values) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return ServiceConfig(**values)
