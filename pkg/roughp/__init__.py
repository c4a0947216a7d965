"""
RoughP toolkit
Description: errorless heuristic for paddable languages via a p-isomorphism
to an auxiliary language, and a generator of certified positive/negative
instances.
"""

from .auxiliary import HContext, build_context, decide_h
from .config import RunConfig, load_config
from .errors import RoughPError
from .generator import GenRequest, Sign, generate, uniformity_test, verify_outputs
from .heuristic import Decision, classify, scan_alpha_sphere
from .iso import IsoEngine
from .languages import PaddableLanguage, validate_language, wrap_core
from .registry import registry_lookup
from .sigma import SymString

__version__ = "0.1.0"

__all__ = [
    "Decision",
    "GenRequest",
    "HContext",
    "IsoEngine",
    "PaddableLanguage",
    "RoughPError",
    "RunConfig",
    "Sign",
    "SymString",
    "build_context",
    "classify",
    "decide_h",
    "generate",
    "load_config",
    "registry_lookup",
    "scan_alpha_sphere",
    "uniformity_test",
    "validate_language",
    "verify_outputs",
    "wrap_core",
]
