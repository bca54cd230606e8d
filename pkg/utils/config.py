"""
Run configuration: defaults from config.yaml, overridden by command-line flags.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from sympy import isprime

from utils.errors import ConfigError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunConfig:
    command: Optional[str] = None
    prime: int = 101
    second_prime: int = 211
    e_max: int = 2
    seed: int = 0
    output_format: str = "text"
    groebner_budget: int = 1_000_000
    enumeration_budget: int = 2_000_000
    retries: int = 32
    coefficient_bound: int = 50
    strict_primes: bool = False
    log_level: str = "INFO"
    log_file: Optional[str] = None

    @classmethod
    def from_config(cls, config: Dict[str, Any]) -> "RunConfig":
        analysis = config.get("analysis", {}) or {}
        construction = config.get("construction", {}) or {}
        output = config.get("output", {}) or {}
        app = config.get("app", {}) or {}
        try:
            run_config = cls(
                prime=int(analysis.get("prime", 101)),
                second_prime=int(analysis.get("second_prime", 211)),
                e_max=int(analysis.get("e_max", 2)),
                groebner_budget=int(analysis.get("groebner_budget", 1_000_000)),
                enumeration_budget=int(analysis.get("enumeration_budget", 2_000_000)),
                strict_primes=bool(analysis.get("strict_primes", False)),
                seed=int(construction.get("seed", 0)),
                retries=int(construction.get("retries", 32)),
                coefficient_bound=int(construction.get("coefficient_bound", 50)),
                output_format=str(output.get("format", "text")),
                log_level=str(app.get("log_level", "INFO")).upper(),
                log_file=app.get("log_file"),
            )
        except (TypeError, ValueError) as e:
            raise ConfigError(f"Invalid configuration value: {e}") from e
        run_config.validate()
        return run_config

    def with_overrides(self, **overrides: Any) -> "RunConfig":
        """Return a copy with every non-None override applied, then validate it."""
        changes = {key: value for key, value in overrides.items() if value is not None}
        updated = replace(self, **changes)
        updated.validate()
        return updated

    def validate(self) -> None:
        if not isprime(self.prime) or not isprime(self.second_prime):
            raise ConfigError(
                f"prime ({self.prime}) and second_prime ({self.second_prime}) must be primes"
            )
        if self.prime == self.second_prime:
            raise ConfigError("prime and second_prime must be distinct")
        if self.e_max < 1:
            raise ConfigError(f"e_max must be at least 1, got {self.e_max}")
        if min(self.groebner_budget, self.enumeration_budget) <= 0 or self.retries < 0:
            raise ConfigError("budgets must be positive and retries non-negative")
        if self.coefficient_bound < 1:
            raise ConfigError("coefficient_bound must be at least 1")
        if self.output_format not in ("text", "json"):
            raise ConfigError(f"Unknown output format: {self.output_format}")


def load_config(config_path: str) -> Dict[str, Any]:
    """
    Load configuration from a YAML file.

    A missing file yields an empty dict so built-in defaults apply; a file
    that is not valid YAML is a configuration error.
    """
    path = Path(config_path)
    if not path.exists():
        logger.warning(f"Configuration file not found: {config_path}, using defaults")
        return {}
    try:
        with open(path, 'r') as f:
            config = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise ConfigError(f"Error parsing configuration: {e}") from e
    if not isinstance(config, dict):
        raise ConfigError(f"Configuration root must be a mapping: {config_path}")
    logger.debug(f"Configuration loaded from {config_path}")
    return config
