"""
Paddable-language plugin contract
Description: the PaddableLanguage record, the strip-prefix padding wrapper
that turns a decidable core predicate into a paddable language, and the
contract validator.
"""

from dataclasses import dataclass, field
from datetime import datetime
from functools import partial
import json
import logging

import numpy as np

from .config import DEFAULT_DECIDE_BUDGET, DEFAULT_ENUM_BUDGET, DEFAULT_SEED
from .errors import BudgetError, PluginContractError
from .sigma import (
    SymString,
    ball_size,
    decode_block,
    encode_block,
    enumerate_ball,
    random_string,
)

logger = logging.getLogger(__name__)

WITNESSES = "witnesses"
TOTALITY = "pad/dec total"
ROUND_TRIP = "dec∘pad = id"
MEMBERSHIP = "pad preserves membership"
LENGTH = "|pad(x,y)| > |x|+|y|"
CHECK_NAMES = (WITNESSES, TOTALITY, ROUND_TRIP, MEMBERSHIP, LENGTH)


@dataclass(frozen=True)
class CorePredicate:
    name: str
    k: int
    eval: object
    suggested_w0: SymString
    suggested_w1: SymString
    description: str = ""


@dataclass(frozen=True)
class PaddingScheme:
    """Padding half of a language: everything except the decider"""

    name: str
    k: int
    pad: object
    dec: object
    w0: SymString
    w1: SymString


@dataclass(frozen=True)
class PaddableLanguage:
    name: str
    k: int
    decide: object
    pad: object
    dec: object
    w0: SymString
    w1: SymString
    description: str = ""

    def padding(self):
        return PaddingScheme(self.name, self.k, self.pad, self.dec, self.w0, self.w1)


def strip(x):
    """Remove every valid leading block; what remains is the core"""
    while True:
        decoded = decode_block(x)
        if decoded is None:
            return x
        x = decoded[1]


def _wrapped_decide(predicate, x):
    return bool(predicate.eval(strip(x)))


def _wrapped_pad(x, y):
    return encode_block(y) + x


def _wrapped_dec(k, z):
    decoded = decode_block(z)
    if decoded is None:
        return SymString.raw((), k)
    return decoded[0]


def wrap_core(predicate):
    """L_P = {x : P(strip(x))} with pad(x, y) = encode_block(y)·x"""
    k = predicate.k
    decide = partial(_wrapped_decide, predicate)
    w0, w1 = predicate.suggested_w0, predicate.suggested_w1
    for label, witness in (("w0", w0), ("w1", w1)):
        if witness.k != k:
            raise PluginContractError(
                f"{predicate.name}: witness {label} is over k={witness.k}, expected k={k}"
            )
    if decide(w1) is not True:
        raise PluginContractError(
            f"{predicate.name}: suggested w1={w1.display()} is not a member"
        )
    if decide(w0) is not False:
        raise PluginContractError(
            f"{predicate.name}: suggested w0={w0.display()} is a member"
        )
    return PaddableLanguage(
        name=predicate.name,
        k=k,
        decide=decide,
        pad=_wrapped_pad,
        dec=partial(_wrapped_dec, k),
        w0=w0,
        w1=w1,
        description=predicate.description,
    )


@dataclass
class CheckResult:
    name: str
    checked: int = 0
    failures: int = 0
    skipped: int = 0
    counterexample: str = None
    details: str = ""

    @property
    def passed(self):
        return self.failures == 0

    def record(self, ok, counterexample, details=""):
        self.checked += 1
        if ok:
            return
        self.failures += 1
        if self.counterexample is None:
            self.counterexample = counterexample
            self.details = details

    def to_dict(self):
        return {
            "test": self.name,
            "status": "PASS" if self.passed else "FAIL",
            "checked": self.checked,
            "failures": self.failures,
            "skipped": self.skipped,
            "counterexample": self.counterexample,
            "details": self.details,
        }


@dataclass
class ValidationReport:
    language: str
    k: int
    exhaustive_len: int
    samples: int
    seed: int
    checks: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(check.passed for check in self.checks.values())

    def failed_checks(self):
        return [check for check in self.checks.values() if not check.passed]

    def __getitem__(self, name):
        return self.checks[name]

    def to_dict(self):
        return {
            "validation_summary": {
                "language": self.language,
                "k": self.k,
                "test_timestamp": datetime.now().isoformat(),
                "exhaustive_len": self.exhaustive_len,
                "samples": self.samples,
                "seed": self.seed,
                "overall_status": "PASS" if self.passed else "FAIL",
            },
            "test_cases": [check.to_dict() for check in self.checks.values()],
        }

    def to_json(self, path):
        with open(path, "w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, indent=2, ensure_ascii=False)
        return path


def _pair_text(x, y):
    return f"x={x.display()}, y={y.display()}"


class _PairChecker:
    """Runs the per-pair contract checks against one language"""

    def __init__(self, language, report, decide_budget):
        self.language = language
        self.report = report
        self.decide_budget = decide_budget
        self._membership = {}

    def member(self, x):
        if x not in self._membership:
            self._membership[x] = bool(self.language.decide(x))
        return self._membership[x]

    def check(self, x, y):
        checks = self.report.checks
        where = _pair_text(x, y)
        try:
            padded = self.language.pad(x, y)
            decoded = self.language.dec(padded)
            ok = isinstance(padded, SymString) and isinstance(decoded, SymString)
            ok = ok and padded.k == self.language.k and decoded.k == self.language.k
        except Exception as e:
            checks[TOTALITY].record(False, where, f"{type(e).__name__}: {e}")
            return
        checks[TOTALITY].record(ok, where, "pad/dec returned a non-string or wrong alphabet")
        if not ok:
            return

        checks[ROUND_TRIP].record(
            decoded == y, where, f"dec(pad(x,y)) = {decoded.display()}"
        )
        checks[LENGTH].record(
            len(padded) > len(x) + len(y), where, f"|pad(x,y)| = {len(padded)}"
        )

        if max(len(x), len(padded)) > self.decide_budget:
            checks[MEMBERSHIP].skipped += 1
            return
        for subject in (x, padded):
            try:
                self.member(subject)
            except BudgetError:
                checks[MEMBERSHIP].skipped += 1
                return
            except Exception as e:
                checks[MEMBERSHIP].record(
                    False, where, f"decide({subject.display()}) raised {type(e).__name__}: {e}"
                )
                return
        same = self.member(padded) == self.member(x)
        checks[MEMBERSHIP].record(
            same, where, f"decide(x)={self.member(x)}, decide(pad(x,y))={self.member(padded)}"
        )


def validate_language(
    language,
    exhaustive_len=5,
    samples=200,
    seed=DEFAULT_SEED,
    enum_budget=DEFAULT_ENUM_BUDGET,
    decide_budget=DEFAULT_DECIDE_BUDGET,
):
    """Check the paddability contract exhaustively, then on seeded samples"""
    k = language.k
    pairs = ball_size(k, exhaustive_len) ** 2
    if pairs > enum_budget:
        raise BudgetError(
            f"exhaustive region |x|,|y| <= {exhaustive_len} has {pairs} pairs, "
            f"over the enumeration budget {enum_budget}",
            requested=pairs,
            budget=enum_budget,
        )

    report = ValidationReport(language.name, k, exhaustive_len, samples, seed)
    report.checks = {name: CheckResult(name) for name in CHECK_NAMES}

    witnesses = report.checks[WITNESSES]
    for label, witness, expected in (("w1", language.w1, True), ("w0", language.w0, False)):
        where = f"{label}={witness.display()}"
        try:
            member = bool(language.decide(witness))
        except Exception as e:
            witnesses.record(False, where, f"decide({label}) raised {type(e).__name__}: {e}")
            continue
        witnesses.record(
            member is expected, where, f"decide({label}) must be {str(expected).lower()}"
        )

    checker = _PairChecker(language, report, decide_budget)
    ball = list(enumerate_ball(k, exhaustive_len, budget=None))
    for x in ball:
        for y in ball:
            checker.check(x, y)

    rng = np.random.default_rng(seed)
    low, high = exhaustive_len + 1, 3 * exhaustive_len + 8
    for _ in range(samples):
        x = random_string(rng, k, int(rng.integers(low, high + 1)))
        y = random_string(rng, k, int(rng.integers(low, high + 1)))
        checker.check(x, y)

    for check in report.failed_checks():
        logger.warning(
            f"{language.name}: '{check.name}' failed {check.failures} time(s), "
            f"first at {check.counterexample}"
        )
    logger.info(f"{language.name}: validation {'passed' if report.passed else 'failed'}")
    return report
