"""
Run configuration
Description: defaults, JSON config file loading and environment overrides.

Precedence is CLI flag > environment > config file > default. The
environment may only override paths and budgets.
"""

from dataclasses import dataclass, field, replace
import json
import logging
import os

from .errors import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_SEED = 20240917
DEFAULT_ENUM_BUDGET = 2**22
DEFAULT_DECIDE_BUDGET = 512
DEFAULT_REPORTS_DIR = "reports"
OUTPUT_FORMATS = ("csv", "json", "text")

ENV_OVERRIDES = {
    "ROUGHP_REPORTS_DIR": ("reports_dir", str),
    "ROUGHP_ENUM_BUDGET": ("enum_budget", int),
    "ROUGHP_DECIDE_BUDGET": ("decide_budget", int),
    "ROUGHP_CHAIN_GUARD": ("chain_guard", int),
}


@dataclass(frozen=True)
class RunConfig:
    language: str = "parity-odd"
    enum_budget: int = DEFAULT_ENUM_BUDGET
    decide_budget: int = DEFAULT_DECIDE_BUDGET
    chain_guard: int = None
    seed: int = DEFAULT_SEED
    reports_dir: str = DEFAULT_REPORTS_DIR
    output_format: str = "csv"
    workers: int = 1
    languages: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("enum_budget", "decide_budget", "workers"):
            value = getattr(self, name)
            if not isinstance(value, int) or value <= 0:
                raise ConfigError(f"{name} must be a positive integer, got {value!r}")
        if self.chain_guard is not None and (
            not isinstance(self.chain_guard, int) or self.chain_guard <= 0
        ):
            raise ConfigError(f"chain_guard must be a positive integer, got {self.chain_guard!r}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(
                f"output_format must be one of {', '.join(OUTPUT_FORMATS)}, got {self.output_format!r}"
            )

    def with_overrides(self, **overrides):
        """Apply non-None overrides (CLI flags)"""
        changes = {key: value for key, value in overrides.items() if value is not None}
        return replace(self, **changes) if changes else self

    def ensure_reports_dir(self):
        os.makedirs(self.reports_dir, exist_ok=True)
        return self.reports_dir

    def report_path(self, filename):
        return os.path.join(self.ensure_reports_dir(), filename)


def _from_file(path):
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except json.JSONDecodeError as e:
        raise ConfigError(f"config file {path} is not valid JSON: {e}")
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")

    budgets = data.get("budgets", {})
    values = {
        "enum_budget": budgets.get("enumeration"),
        "decide_budget": budgets.get("decide"),
        "chain_guard": budgets.get("chain_guard"),
        "seed": data.get("seed"),
        "reports_dir": data.get("reports_dir"),
        "output_format": data.get("output_format"),
        "workers": data.get("workers"),
        "languages": data.get("languages"),
    }
    if values["languages"] is not None and not isinstance(values["languages"], dict):
        raise ConfigError("'languages' must map names to registry entries")
    return {key: value for key, value in values.items() if value is not None}


def _from_environment(environ):
    values = {}
    for variable, (name, cast) in ENV_OVERRIDES.items():
        raw = environ.get(variable)
        if raw is None or raw == "":
            continue
        try:
            values[name] = cast(raw)
        except ValueError:
            raise ConfigError(f"{variable}={raw!r} is not a valid {cast.__name__}")
        logger.info(f"Environment override {variable} -> {name}={values[name]!r}")
    return values


def load_config(path=None, environ=None):
    """Build a RunConfig from an optional JSON file plus environment overrides"""
    values = _from_file(path) if path else {}
    values.update(_from_environment(os.environ if environ is None else environ))
    return RunConfig(**values)
