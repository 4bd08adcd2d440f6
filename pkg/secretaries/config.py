"""Deployment settings with environment overrides."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from typing import Mapping, Optional

DEFAULT_PUBLIC_TAG = "friend"

_ENV_PREFIX = "SECRETARY_"


@dataclass(frozen=True)
class Settings:
    public_tag: str = DEFAULT_PUBLIC_TAG
    exact_limit: int = 12
    enumeration_cap: int = 10**7
    max_active_probes: int = 10_000
    allow_sensitive_guest: bool = False
    montecarlo_batch: int = 10_000

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "Settings":
        """Build settings, overriding defaults with ``SECRETARY_<FIELD>`` variables."""
        environ = os.environ if environ is None else environ
        overrides = {}
        for item in fields(cls):
            raw = environ.get(_ENV_PREFIX + item.name.upper())
            if raw is None:
                continue
            if item.type in ("bool", bool):
                overrides[item.name] = raw.strip().lower() in ("1", "true", "yes", "on")
            elif item.type in ("int", int):
                overrides[item.name] = int(raw)
            else:
                overrides[item.name] = raw
        return replace(cls(), **overrides)
