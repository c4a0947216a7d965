"""
Shared fixtures for the RoughP test suites
"""

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from roughp.auxiliary import build_context  # noqa: E402
from roughp.iso import IsoEngine  # noqa: E402
from roughp.registry import BUILTIN_PREDICATES, registry_lookup  # noqa: E402
from roughp.sigma import SymString  # noqa: E402

BUILTIN_NAMES = sorted(BUILTIN_PREDICATES)


def s(text, k=2):
    return SymString.parse(text, k)


@pytest.fixture
def parity():
    return registry_lookup("parity-odd")


@pytest.fixture
def parity_engine(parity):
    return IsoEngine(build_context(parity))


@pytest.fixture
def parity_engine_k3():
    from roughp.languages import wrap_core
    from roughp.predicates import parity_odd

    return IsoEngine(build_context(wrap_core(parity_odd(k=3))))
