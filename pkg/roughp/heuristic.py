"""
Errorless heuristic and alpha-sphere scanner
Description: classify() answers accept / reject / unknown from phi(x) alone;
scan_alpha_sphere() measures the unknown-rate on alpha-spheres against the
exact count k^(n/2) (even n) / 0 (odd n) and the bound k^(-n/2).
"""

from dataclasses import dataclass
from decimal import Decimal, localcontext
from enum import Enum
from fractions import Fraction
import logging
import threading

import numpy as np
from scipy import stats

from .config import DEFAULT_DECIDE_BUDGET, DEFAULT_ENUM_BUDGET, DEFAULT_SEED
from .errors import BudgetError, CorrectnessViolation, InvariantViolation
from .sigma import enumerate_sphere, is_symmetric, random_string, sphere_size, weight

logger = logging.getLogger(__name__)

EXHAUSTIVE = "exhaustive"
SAMPLED = "sampled"
CSV_COLUMNS = ["n", "sphere_size", "failures", "rate", "bound", "mode", "ci_low", "ci_high"]


class Decision(Enum):
    ACCEPT = "accept"
    REJECT = "reject"
    UNKNOWN = "unknown"

    def __str__(self):
        return self.value


def classify(engine, x):
    """Errorless answer for x: unknown when phi(x) is symmetric, else the parity of phi(x)"""
    q = engine.phi(x)
    if is_symmetric(q):
        return Decision.UNKNOWN
    if weight(q) % 2 == 1:
        return Decision.ACCEPT
    return Decision.REJECT


def bound(n, k):
    """k^(-n/2): exact Fraction for even n, 50-digit Decimal for odd n"""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n % 2 == 0:
        return Fraction(1, k ** (n // 2))
    with localcontext() as ctx:
        ctx.prec = 50
        return 1 / Decimal(k).sqrt() ** n


def expected_failures(n, k):
    """Number of symmetric strings of length n"""
    return k ** (n // 2) if n % 2 == 0 else 0


def wilson_interval(successes, total, confidence=0.95):
    """Wilson score interval for a binomial proportion"""
    if total <= 0:
        return (0.0, 1.0)
    z = stats.norm.ppf(0.5 + confidence / 2)
    p = successes / total
    z2 = z * z
    denom = 1.0 + z2 / total
    center = (p + z2 / (2.0 * total)) / denom
    margin = (z * ((p * (1.0 - p) / total + z2 / (4.0 * total * total)) ** 0.5)) / denom
    low = 0.0 if successes == 0 else max(0.0, center - margin)
    high = 1.0 if successes == total else min(1.0, center + margin)
    return (low, high)


@dataclass
class Tally:
    failures: int = 0
    accepts: int = 0
    rejects: int = 0
    checked: int = 0
    skipped: int = 0

    def merge(self, other):
        return Tally(
            self.failures + other.failures,
            self.accepts + other.accepts,
            self.rejects + other.rejects,
            self.checked + other.checked,
            self.skipped + other.skipped,
        )


@dataclass
class FailureStats:
    n: int
    k: int
    sphere_size: int
    mode: str
    failures: int
    rate: object
    bound: object
    samples: int = None
    observed: int = None
    ci: tuple = None
    accepts: int = 0
    rejects: int = 0
    correctness_checked: int = 0
    correctness_skipped: int = 0
    seed: int = None

    def to_row(self):
        ci_low, ci_high = self.ci if self.ci else ("", "")
        return {
            "n": self.n,
            "sphere_size": self.sphere_size,
            "failures": self.failures,
            "rate": _number_text(self.rate),
            "bound": _number_text(self.bound),
            "mode": self.mode,
            "ci_low": _number_text(ci_low) if ci_low != "" else "",
            "ci_high": _number_text(ci_high) if ci_high != "" else "",
        }

    def to_dict(self):
        data = self.to_row()
        data.update(
            {
                "k": self.k,
                "rate_exact": str(self.rate) if self.mode == EXHAUSTIVE else None,
                "samples": self.samples,
                "observed_failures": self.observed,
                "accepts": self.accepts,
                "rejects": self.rejects,
                "correctness_checked": self.correctness_checked,
                "correctness_skipped": self.correctness_skipped,
                "seed": self.seed,
            }
        )
        return data


def _number_text(value):
    return f"{float(value):.12g}"


class _Scanner:
    """Classifies alpha(z) for a batch of z, optionally checking against decide"""

    def __init__(self, engine, oracle, decide_budget):
        self.engine = engine
        self.oracle = oracle
        self.decide_budget = decide_budget

    def run(self, strings):
        tally = Tally()
        for z in strings:
            x = self.engine.alpha(z)
            decision = classify(self.engine, x)
            if decision is Decision.UNKNOWN:
                tally.failures += 1
                continue
            if decision is Decision.ACCEPT:
                tally.accepts += 1
            else:
                tally.rejects += 1
            if self.oracle is not None:
                self._check(x, decision, tally)
        return tally

    def _check(self, x, decision, tally):
        if len(x) > self.decide_budget:
            tally.skipped += 1
            return
        try:
            member = bool(self.oracle.decide(x))
        except BudgetError:
            tally.skipped += 1
            return
        tally.checked += 1
        if member != (decision is Decision.ACCEPT):
            raise CorrectnessViolation(
                f"heuristic answered {decision} on {x.display()} but decide says {member}",
                witness=x,
            )


def _run_workers(scanner, batches):
    """One thread per batch; tallies merged in batch order"""
    results = [None] * len(batches)
    errors = []

    def worker_function(index):
        try:
            results[index] = scanner.run(batches[index])
        except Exception as e:
            errors.append(e)

    threads = []
    for i in range(len(batches)):
        thread = threading.Thread(target=worker_function, args=(i,))
        threads.append(thread)
        thread.start()
    for thread in threads:
        thread.join()

    if errors:
        raise errors[0]
    total = Tally()
    for tally in results:
        total = total.merge(tally)
    return total


def scan_alpha_sphere(
    engine,
    n,
    mode=EXHAUSTIVE,
    sample_count=10000,
    seed=DEFAULT_SEED,
    check_correctness=False,
    oracle=None,
    decide_budget=DEFAULT_DECIDE_BUDGET,
    enum_budget=DEFAULT_ENUM_BUDGET,
    workers=1,
):
    """Failure statistics of classify() over the alpha-sphere of radius n"""
    if check_correctness and oracle is None:
        raise ValueError("check_correctness needs the language as oracle")
    k = engine.k
    size = sphere_size(k, n)
    scanner = _Scanner(engine, oracle if check_correctness else None, decide_budget)

    if mode == EXHAUSTIVE:
        batches = [
            enumerate_sphere(k, n, budget=enum_budget, chunk=i, chunks=workers)
            for i in range(workers)
        ]
        tally = _run_workers(scanner, batches)
        expected = expected_failures(n, k)
        if tally.failures != expected:
            raise InvariantViolation(
                f"alpha-sphere n={n}, k={k}: {tally.failures} unknowns, expected {expected}"
            )
        result = FailureStats(
            n, k, size, EXHAUSTIVE, tally.failures, Fraction(tally.failures, size), bound(n, k)
        )
    elif mode == SAMPLED:
        rng = np.random.default_rng(seed)
        drawn = [random_string(rng, k, n) for _ in range(sample_count)]
        batches = [drawn[i::workers] for i in range(workers)]
        tally = _run_workers(scanner, batches)
        rate = tally.failures / sample_count if sample_count else 0.0
        result = FailureStats(
            n,
            k,
            size,
            SAMPLED,
            round(Fraction(tally.failures, sample_count) * size) if sample_count else 0,
            rate,
            bound(n, k),
            samples=sample_count,
            observed=tally.failures,
            ci=wilson_interval(tally.failures, sample_count),
            seed=seed,
        )
    else:
        raise ValueError(f"unknown scan mode {mode!r}")

    result.accepts = tally.accepts
    result.rejects = tally.rejects
    result.correctness_checked = tally.checked
    result.correctness_skipped = tally.skipped
    logger.info(
        f"scan n={n} k={k} {mode}: {result.failures} unknown of {size} "
        f"(checked {tally.checked}, skipped {tally.skipped})"
    )
    return result


def scan_range(engine, min_n, max_n, **kwargs):
    return [scan_alpha_sphere(engine, n, **kwargs) for n in range(min_n, max_n + 1)]
