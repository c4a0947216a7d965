"""
Language registry
Description: built-in languages plus entries defined in the config file,
either over a built-in predicate or as a ``module:factory`` plugin.
"""

from dataclasses import replace
import importlib
import logging

from .errors import ConfigError, UnknownLanguageError
from .languages import PaddableLanguage, wrap_core
from . import predicates

logger = logging.getLogger(__name__)

BUILTIN_PREDICATES = {
    "parity-odd": predicates.parity_odd,
    "substring-11": predicates.substring_11,
    "triangle": predicates.triangle,
    "subset-sum": predicates.subset_sum,
    "cnf-sat": predicates.cnf_sat,
}

# Config "budgets" keys accepted by each predicate factory
PREDICATE_BUDGETS = {
    "subset-sum": {"subsets": "max_subsets"},
    "cnf-sat": {"variables": "max_variables"},
}


def available_languages(config=None):
    names = set(BUILTIN_PREDICATES)
    if config is not None:
        names |= set(config.languages)
    return sorted(names)


def _load_plugin(name, target, parameters):
    module_name, _, attribute = target.partition(":")
    if not module_name or not attribute:
        raise ConfigError(f"language '{name}': plugin must look like 'module:factory', got {target!r}")
    try:
        factory = getattr(importlib.import_module(module_name), attribute)
    except (ImportError, AttributeError) as e:
        raise ConfigError(f"language '{name}': cannot load plugin {target!r}: {e}")
    language = factory(**parameters)
    if not isinstance(language, PaddableLanguage):
        raise ConfigError(f"language '{name}': plugin {target!r} did not return a PaddableLanguage")
    logger.info(f"Loaded plugin language '{name}' from {target}")
    return language


def _from_entry(name, entry):
    if not isinstance(entry, dict):
        raise ConfigError(f"language '{name}': entry must be an object")
    parameters = dict(entry.get("parameters", {}))
    if "plugin" in entry:
        return _load_plugin(name, entry["plugin"], parameters)

    predicate_name = entry.get("predicate")
    if predicate_name not in BUILTIN_PREDICATES:
        raise ConfigError(
            f"language '{name}': unknown predicate {predicate_name!r}; "
            f"choose from {', '.join(sorted(BUILTIN_PREDICATES))}"
        )
    budget_keys = PREDICATE_BUDGETS.get(predicate_name, {})
    for key, value in entry.get("budgets", {}).items():
        if key not in budget_keys:
            raise ConfigError(f"language '{name}': predicate {predicate_name} has no budget {key!r}")
        parameters[budget_keys[key]] = value
    try:
        predicate = BUILTIN_PREDICATES[predicate_name](k=entry.get("k", 2), **parameters)
    except TypeError as e:
        raise ConfigError(f"language '{name}': bad parameters for {predicate_name}: {e}")
    # keep the registry name, not the predicate's
    return replace(wrap_core(predicate), name=name)


def registry_lookup(name, config=None):
    """Return the named language; config entries shadow built-ins"""
    if config is not None and name in config.languages:
        return _from_entry(name, config.languages[name])
    if name in BUILTIN_PREDICATES:
        return wrap_core(BUILTIN_PREDICATES[name]())
    raise UnknownLanguageError(name, available_languages(config))
