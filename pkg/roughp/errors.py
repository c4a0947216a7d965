"""
Exception hierarchy for the RoughP toolkit.

Property failures (exit code 1 on the command line) and usage/config
failures (exit code 2) are separated by the ``exit_code`` attribute.
"""


class RoughPError(Exception):
    """Base class for every error raised by the toolkit"""

    exit_code = 2


class SymbolError(RoughPError, ValueError):
    """Malformed string text, out-of-range symbol or alphabet mismatch"""


class BudgetError(RoughPError):
    """An enumeration, decide or brute-force budget would be exceeded"""

    def __init__(self, message, requested=None, budget=None):
        super().__init__(message)
        self.requested = requested
        self.budget = budget


class ConfigError(RoughPError):
    """Invalid configuration file, entry or environment override"""


class UsageError(RoughPError):
    """Command-line arguments that parse but make no sense together"""


class UnknownLanguageError(RoughPError, KeyError):
    def __init__(self, name, available):
        self.name = name
        self.available = sorted(available)
        super().__init__(
            f"unknown language '{name}'; available: {', '.join(self.available)}"
        )

    def __str__(self):
        return self.args[0]


class PluginContractError(RoughPError):
    """A language plugin breaks the paddability contract"""

    exit_code = 1

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ChainGuardError(RoughPError):
    """Ancestor chain exceeded its guard or stopped shrinking"""

    exit_code = 1

    def __init__(self, message, start=None, steps=None):
        super().__init__(message)
        self.start = start
        self.steps = steps


class CorrectnessViolation(RoughPError):
    """The heuristic answered and disagreed with the membership oracle"""

    exit_code = 1

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class VerificationFailure(RoughPError):
    """A generated instance does not have its requested sign"""

    exit_code = 1

    def __init__(self, message, instance=None, index=None, seed=None):
        super().__init__(message)
        self.instance = instance
        self.index = index
        self.seed = seed


class InvariantViolation(RoughPError):
    """An exact-count law, support bound or support condition failed"""

    exit_code = 1
