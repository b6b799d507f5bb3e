"""Toolkit configuration management.

Handles loading, validating, and creating wps.json which stores:
- Gröbner budgets (S-pair cap, term-storage cap in terms and bytes)
- Search settings (verification windows, probe samples, search ceilings)

The environment variable WPS_BUDGET overrides the S-pair cap.
"""

import json
import os
from dataclasses import dataclass, field, asdict
from pathlib import Path
from typing import Optional

from wps.errors import ParseError


DEFAULT_CONFIG_PATH = Path("wps.json")
BUDGET_ENV = "WPS_BUDGET"

DEFAULT_MAX_SPAIRS = 100_000
DEFAULT_MAX_TERMS = 4_000_000
DEFAULT_MAX_BYTES = 64 * 1024 * 1024
# Estimated storage per sparse term: exponent tuple plus rational coefficient.
TERM_BYTES = 16
DEFAULT_QP_WINDOW = 2
DEFAULT_PROBE_SAMPLES = 8
DEFAULT_SERIES_WINDOW = 6
DEFAULT_SERIES_MAX_STEPS = 400
DEFAULT_THREEFOLD_CEILING = 2


@dataclass
class Budget:
    """Limits for a single Gröbner computation.

    Term storage is capped both by count and by an estimated byte size;
    the smaller limit wins.
    """
    max_spairs: int = DEFAULT_MAX_SPAIRS
    max_terms: int = DEFAULT_MAX_TERMS
    max_bytes: int = DEFAULT_MAX_BYTES

    @property
    def term_limit(self) -> int:
        return min(self.max_terms, self.max_bytes // TERM_BYTES)


@dataclass
class SearchSettings:
    qp_window: int = DEFAULT_QP_WINDOW  # extra verification points per residue class
    probe_samples: int = DEFAULT_PROBE_SAMPLES
    series_window: int = DEFAULT_SERIES_WINDOW
    series_max_steps: int = DEFAULT_SERIES_MAX_STEPS
    threefold_ceiling: int = DEFAULT_THREEFOLD_CEILING  # a3 + b <= factor * w3


@dataclass
class Config:
    budget: Budget = field(default_factory=Budget)
    search: SearchSettings = field(default_factory=SearchSettings)
    version: str = "1.0"

    def to_dict(self) -> dict:
        return asdict(self)

    def save(self, path: Optional[Path] = None):
        path = Path(path or DEFAULT_CONFIG_PATH)
        path.write_text(json.dumps(self.to_dict(), indent=2) + "\n")

    @classmethod
    def from_dict(cls, data: dict) -> "Config":
        return cls(
            budget=Budget(**data.get("budget", {})),
            search=SearchSettings(**data.get("search", {})),
            version=data.get("version", "1.0"),
        )

    @classmethod
    def load(cls, path: Optional[Path] = None) -> "Config":
        path = Path(path or DEFAULT_CONFIG_PATH)
        if not path.exists():
            return cls()
        data = json.loads(path.read_text())
        return cls.from_dict(data)


def load_config(path: Optional[Path] = None) -> Config:
    """Load config from disk (defaults if absent) and apply WPS_BUDGET."""
    config = Config.load(path)
    override = os.environ.get(BUDGET_ENV)
    if override:
        try:
            config.budget.max_spairs = int(override)
        except ValueError:
            raise ParseError(f"{BUDGET_ENV} must be an integer, got {override!r}")
    return config


def init_config(directory: str = ".") -> Config:
    """Load existing config or write a fresh one into directory."""
    config_path = Path(directory) / DEFAULT_CONFIG_PATH
    if config_path.exists():
        return load_config(config_path)
    config = Config()
    config_path.parent.mkdir(parents=True, exist_ok=True)
    config.save(config_path)
    return config
