# scanner/config.py
import logging
from typing import Any, Dict, List, Literal, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from arith import DomainError, LamrootError

logger = logging.getLogger("lamroot.scanner")

SIEGEL_ETA_CEILING = 1 / 52

# flag names that are Python keywords map onto field names
FILE_KEYS = {"from": "start", "to": "end"}


class ConfigError(LamrootError, ValueError):
    """Unreadable or invalid configuration file."""


class ScanConfig(BaseModel):
    """Parameters of a modulus-range scan; keys match the CLI flags with dashes as underscores."""
    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    start: int = Field(3, alias="from", ge=3, description="First modulus, inclusive")
    end: int = Field(1000, alias="to", description="Last modulus, inclusive")
    filter: Literal["all", "primes", "prime-powers", "cyclic"] = Field("all", description="Which moduli in the range are scanned")
    r: List[int] = Field(default_factory=lambda: [1, 2], description="Which g*_r to search for")
    limit_policy: str = Field("auto", description="Search bound policy: auto[:e] or fixed:N")
    eta: float = Field(0.0192, gt=0, lt=1, description="Sets the summary threshold exponent main_exponent(r) + 15 eta")
    epsilon: Optional[float] = Field(None, gt=0, description="Defaults to eta^2; echoed with the output, the scan itself does not use it")
    out: Optional[str] = Field(None, description="Output path; stdout when absent")
    format: Literal["csv", "json"] = "csv"
    jobs: int = Field(1, ge=1, description="Worker processes")

    @field_validator("r", mode="before")
    @classmethod
    def _split_r(cls, value):
        if isinstance(value, str):
            return parse_int_list(value)
        if isinstance(value, int):
            return [value]
        return value

    @field_validator("r")
    @classmethod
    def _check_r(cls, value: List[int]) -> List[int]:
        if not value or not set(value) <= {1, 2, 3, 4}:
            raise ValueError(f"r must be a nonempty subset of {{1, 2, 3, 4}}, got {value}")
        return sorted(set(value))

    @field_validator("limit_policy")
    @classmethod
    def _check_policy(cls, value: str) -> str:
        name, _, arg = value.partition(":")
        try:
            if name == "fixed" and int(arg) >= 2:
                return value
            if name == "auto" and (not arg or float(arg) > 0):
                return value
        except ValueError:
            pass
        raise ValueError(f"limit policy must be auto[:e] or fixed:N with N >= 2, got {value!r}")

    @model_validator(mode="after")
    def _check_range(self):
        if self.end < self.start:
            raise ValueError(f"empty modulus range [{self.start}, {self.end}]")
        return self

    @property
    def resolved_epsilon(self) -> float:
        return self.eta ** 2 if self.epsilon is None else self.epsilon

    def echo(self) -> Dict[str, Any]:
        """The configuration as written back into JSON output, epsilon resolved."""
        return {**self.model_dump(by_alias=True), "epsilon": self.resolved_epsilon}


class SiegelConfig(BaseModel):
    """Parameters of the Siegel-zero experiment; eta is held below 1/52."""
    q: int = Field(..., ge=3)
    x: float = Field(..., gt=1)
    z: Optional[float] = Field(None, ge=2, description="Sieve level for T(z); x^(1/3) when absent")
    eta: float = Field(0.0192, gt=0)

    @field_validator("eta")
    @classmethod
    def _check_eta(cls, value: float) -> float:
        if not value < SIEGEL_ETA_CEILING:
            raise ValueError(f"eta must lie in (0, 1/52) for Siegel experiments, got {value}")
        return value


def load_config_file(path: Optional[str]) -> Dict[str, Any]:
    """Read a YAML mapping of option names to values; an absent path gives {}."""
    if not path:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as file:
            data = yaml.safe_load(file)
    except OSError as e:
        raise ConfigError(f"Cannot read config file {path}: {e}") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"Invalid YAML in config file {path}: {e}") from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"Config file must hold a mapping, got {type(data).__name__}")
    logger.info(f"Loaded config file: {path}")
    options = {}
    for key, value in data.items():
        name = str(key).replace("-", "_")
        options[FILE_KEYS.get(name, name)] = value
    return options


def merge_options(file_values: Dict[str, Any], cli_values: Dict[str, Any]) -> Dict[str, Any]:
    """CLI values that were given (not None) override file values."""
    merged = dict(file_values)
    merged.update({k: v for k, v in cli_values.items() if v is not None})
    return merged


def build_scan_config(config_path: Optional[str] = None, **cli_values) -> ScanConfig:
    """
    Combine an optional YAML file with CLI values into a validated ScanConfig.

    Raises:
        ConfigError: unreadable file
        pydantic.ValidationError: invalid values
    """
    options = merge_options(load_config_file(config_path), cli_values)
    config = ScanConfig.model_validate(options)
    logger.debug(f"Scan config: {config.echo()}")
    return config


def parse_int_list(text: str) -> List[int]:
    """'1,2,4' -> [1, 2, 4]."""
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise DomainError(f"expected a comma-separated list of integers, got {text!r}") from e
