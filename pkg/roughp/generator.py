"""
Test-instance generator with certified signs
Description: draws an odd-length string z of the requested weight parity
(a uniform string, with one random symbol's parity flipped when needed) and
outputs alpha(z). For even k the drawn z is exactly uniform on its parity
class; for odd k the flip branch favours strings with more odd symbols.

Because |z| is odd, z is never symmetric, so z lies in H exactly when its
weight is odd, and alpha(z) lies in L exactly when z lies in H.

Also provides the verification side: sign checks against decide, exact
support counts, exact draw distributions, a chi-square uniformity test and
the length-bound check.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
import logging
import math
import threading

import numpy as np
from scipy import stats

from .config import DEFAULT_DECIDE_BUDGET, DEFAULT_ENUM_BUDGET, DEFAULT_SEED
from .errors import BudgetError, InvariantViolation, VerificationFailure
from .iso import fit_degree
from .sigma import SymString, enumerate_sphere, sphere_size, weight

logger = logging.getLogger(__name__)

UNIFORMITY_P_THRESHOLD = 0.001
SAMPLES_PER_CELL = 50


class Sign(Enum):
    POS = "pos"
    NEG = "neg"

    def __str__(self):
        return self.value

    @property
    def wants_odd(self):
        return self is Sign.POS


def preimage_length(n):
    """m = 4*floor(n/2) + 3, i.e. 2n+3 for even n and 2n+1 for odd n"""
    return 4 * (n // 2) + 3


@dataclass(frozen=True)
class GenRequest:
    n: int
    sign: Sign = Sign.POS
    count: int = 1
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"n must be >= 0, got {self.n}")
        if self.count < 0:
            raise ValueError(f"count must be >= 0, got {self.count}")
        object.__setattr__(self, "sign", Sign(self.sign))

    @property
    def m(self):
        return preimage_length(self.n)


class InstanceRng:
    """Seeded stream of uniform draws.

    numpy's bounded integer draws are rejection-based, so there is no modulo
    bias. Workers get independent streams keyed by (seed, worker, n, sign).
    """

    def __init__(self, seed, worker=0, n=0, sign=Sign.POS):
        sequence = np.random.SeedSequence(
            entropy=seed, spawn_key=(worker, n, 1 if sign is Sign.POS else 0)
        )
        self.seed = seed
        self.generator = np.random.default_rng(sequence)

    def symbols(self, k, m):
        return tuple(int(s) for s in self.generator.integers(0, k, size=m))

    def position(self, m):
        return int(self.generator.integers(0, m))

    def opposite_parity(self, k, s):
        while True:
            candidate = int(self.generator.integers(0, k))
            if candidate % 2 != s % 2:
                return candidate


def draw_preimage(rng, k, m, sign):
    """Uniform z of length m, then one parity flip if the weight is wrong"""
    symbols = rng.symbols(k, m)
    if (sum(symbols) % 2 == 1) != sign.wants_odd:
        nu = rng.position(m)
        symbols = symbols[:nu] + (rng.opposite_parity(k, symbols[nu]),) + symbols[nu + 1 :]
    return SymString.raw(symbols, k)


def _split(count, workers):
    return [count // workers + (1 if i < count % workers else 0) for i in range(workers)]


def generate_with_preimages(engine, req, workers=1):
    """Yield (z, alpha(z)) pairs; deterministic for a given (request, workers)"""
    k, m = engine.k, req.m
    if workers == 1:
        rng = InstanceRng(req.seed, 0, req.n, req.sign)
        for _ in range(req.count):
            z = draw_preimage(rng, k, m, req.sign)
            yield z, engine.alpha(z)
        return

    results = [None] * workers
    errors = []

    def worker_function(index, quota):
        try:
            rng = InstanceRng(req.seed, index, req.n, req.sign)
            pairs = []
            for _ in range(quota):
                z = draw_preimage(rng, k, m, req.sign)
                pairs.append((z, engine.alpha(z)))
            results[index] = pairs
        except Exception as e:
            errors.append(e)

    threads = []
    for i, quota in enumerate(_split(req.count, workers)):
        thread = threading.Thread(target=worker_function, args=(i, quota))
        threads.append(thread)
        thread.start()
    for thread in threads:
        thread.join()
    if errors:
        raise errors[0]
    for pairs in results:
        yield from pairs


def generate(engine, req, workers=1):
    for _, x in generate_with_preimages(engine, req, workers):
        yield x


@dataclass
class Verification:
    sign: Sign
    seed: int
    records: list = field(default_factory=list)

    @property
    def verified(self):
        return sum(1 for r in self.records if r["verified"])

    @property
    def unverified(self):
        return sum(1 for r in self.records if r["verified"] is None)


def verify_outputs(language, outputs, sign, seed=None, decide_budget=DEFAULT_DECIDE_BUDGET):
    """Run decide on every output; a wrong sign is a hard failure"""
    sign = Sign(sign)
    result = Verification(sign, seed)
    for index, x in enumerate(outputs):
        record = {"index": index, "instance": x.to_text(), "length": len(x), "verified": None}
        result.records.append(record)
        if len(x) > decide_budget:
            continue
        try:
            member = bool(language.decide(x))
        except BudgetError:
            continue
        if member != sign.wants_odd:
            logger.error(f"instance {index} (seed {seed}) has the wrong sign: {x.display()}")
            raise VerificationFailure(
                f"instance #{index} from seed {seed} should be {sign} but decide says "
                f"{'member' if member else 'non-member'}: {x.display()}",
                instance=x.to_text(),
                index=index,
                seed=seed,
            )
        record["verified"] = True
    return result


def parity_count(k, m, odd):
    """Number of length-m strings whose weight has the given parity"""
    evens, odds = (k + 1) // 2, k // 2
    count_even, count_odd = 1, 0
    for _ in range(m):
        count_even, count_odd = (
            count_even * evens + count_odd * odds,
            count_even * odds + count_odd * evens,
        )
    return count_odd if odd else count_even


def support_lower_bound(k, n):
    return k ** (2 * n)


def support_size(k, n, sign):
    """M = number of admissible preimages; at least floor(k^m / 2) >= k^(2n)"""
    m = preimage_length(n)
    count = parity_count(k, m, Sign(sign).wants_odd)
    if not count >= k**m // 2 >= support_lower_bound(k, n):
        raise InvariantViolation(
            f"support k={k} n={n} {sign}: {count} below floor(k^m/2)={k**m // 2} "
            f"or k^(2n)={support_lower_bound(k, n)}"
        )
    return count


def _check_budget(k, m, enum_budget):
    if sphere_size(k, m) > enum_budget:
        raise BudgetError(
            f"support enumeration needs {sphere_size(k, m)} strings, over the budget {enum_budget}",
            requested=sphere_size(k, m),
            budget=enum_budget,
        )


def flip_distribution(k, m, source_odd, enum_budget=DEFAULT_ENUM_BUDGET):
    """Exact law of z after one parity flip, z uniform on the source parity class"""
    _check_budget(k, m, enum_budget)
    sources = [
        z for z in enumerate_sphere(k, m, budget=None) if (weight(z) % 2 == 1) == source_odd
    ]
    dist = {}
    for z in sources:
        for nu in range(m):
            s = z.symbols[nu]
            replacements = [r for r in range(k) if r % 2 != s % 2]
            share = Fraction(1, len(sources) * m * len(replacements))
            for r in replacements:
                flipped = SymString.raw(z.symbols[:nu] + (r,) + z.symbols[nu + 1 :], k)
                dist[flipped] = dist.get(flipped, 0) + share
    return dist


def draw_distribution(k, m, sign, enum_budget=DEFAULT_ENUM_BUDGET):
    """Exact law of draw_preimage() for the given sign"""
    sign = Sign(sign)
    _check_budget(k, m, enum_budget)
    total = sphere_size(k, m)
    wrong = parity_count(k, m, not sign.wants_odd)
    dist = {
        z: Fraction(1, total)
        for z in enumerate_sphere(k, m, budget=None)
        if (weight(z) % 2 == 1) == sign.wants_odd
    }
    if wrong:
        for z, p in flip_distribution(k, m, not sign.wants_odd, enum_budget).items():
            dist[z] = dist.get(z, 0) + p * Fraction(wrong, total)
    return dist


def enumerate_support(engine, n, sign, enum_budget=DEFAULT_ENUM_BUDGET):
    """S = {alpha(z) : |z| = m, weight parity matches sign}; |S| must equal M"""
    sign = Sign(sign)
    k, m = engine.k, preimage_length(n)
    _check_budget(k, m, enum_budget)
    support = {
        engine.alpha(z)
        for z in enumerate_sphere(k, m, budget=None)
        if (weight(z) % 2 == 1) == sign.wants_odd
    }
    expected = support_size(k, n, sign)
    if len(support) != expected:
        raise InvariantViolation(f"support has {len(support)} distinct outputs, expected M={expected}")
    return support


def tally_support(outputs, support):
    counts = dict.fromkeys(support, 0)
    for x in outputs:
        if x not in counts:
            raise InvariantViolation(f"output {x.display()} lies outside the enumerated support")
        counts[x] += 1
    return counts


@dataclass
class UniformityReport:
    n: int
    k: int
    sign: Sign
    support: int
    samples: int
    statistic: float
    p_value: float
    threshold: float = UNIFORMITY_P_THRESHOLD

    @property
    def passed(self):
        return self.p_value >= self.threshold

    def to_dict(self):
        return {
            "n": self.n,
            "k": self.k,
            "sign": str(self.sign),
            "support_size": self.support,
            "samples": self.samples,
            "chi_square": self.statistic,
            "degrees_of_freedom": self.support - 1,
            "p_value": self.p_value,
            "status": "PASS" if self.passed else "FAIL",
        }


def uniformity_test(
    engine, n, sign, samples=None, seed=DEFAULT_SEED, enum_budget=DEFAULT_ENUM_BUDGET, workers=1
):
    """Chi-square of generated outputs against the uniform law on the support"""
    sign = Sign(sign)
    support = enumerate_support(engine, n, sign, enum_budget)
    samples = samples if samples is not None else SAMPLES_PER_CELL * len(support)
    outputs = generate(engine, GenRequest(n, sign, samples, seed), workers)
    counts = tally_support(outputs, support)
    observed = np.array([counts[x] for x in sorted(support, key=lambda s: s.symbols)])
    statistic, p_value = stats.chisquare(observed)
    report = UniformityReport(n, engine.k, sign, len(support), samples, float(statistic), float(p_value))
    logger.info(
        f"uniformity n={n} {sign}: M={len(support)} chi2={report.statistic:.3f} p={report.p_value:.4f}"
    )
    return report


@dataclass
class LengthReport:
    n: int
    k: int
    samples: int
    undersized: int
    bound: float
    allowance: float
    min_length: int
    max_length: int
    mean_length: float

    @property
    def fraction(self):
        return self.undersized / self.samples if self.samples else 0.0

    @property
    def passed(self):
        return self.fraction <= self.bound + self.allowance

    def to_dict(self):
        return {
            "n": self.n,
            "k": self.k,
            "samples": self.samples,
            "undersized": self.undersized,
            "fraction": self.fraction,
            "bound": self.bound,
            "allowance": self.allowance,
            "min_length": self.min_length,
            "max_length": self.max_length,
            "mean_length": self.mean_length,
            "status": "PASS" if self.passed else "FAIL",
        }


def length_bounds_check(outputs, n, k):
    """Fraction of outputs shorter than n against k^(-n) plus a 3-sigma allowance"""
    lengths = [len(x) for x in outputs]
    samples = len(lengths)
    limit = float(k) ** -n
    allowance = 3 * math.sqrt(limit * (1 - limit) / samples) if samples else 0.0
    return LengthReport(
        n=n,
        k=k,
        samples=samples,
        undersized=sum(1 for length in lengths if length < n),
        bound=limit,
        allowance=allowance,
        min_length=min(lengths, default=0),
        max_length=max(lengths, default=0),
        mean_length=float(np.mean(lengths)) if lengths else 0.0,
    )


@dataclass
class GenReport:
    request: GenRequest
    k: int
    instances: list
    length: LengthReport
    verification: Verification = None
    length_exponent: float = None

    @property
    def support_lower_bound(self):
        return support_lower_bound(self.k, self.request.n)

    def records(self):
        verified = {}
        if self.verification is not None:
            verified = {r["index"]: r["verified"] for r in self.verification.records}
        return [
            {"index": i, "instance": x.to_text(), "length": len(x), "verified": verified.get(i)}
            for i, x in enumerate(self.instances)
        ]

    def to_dict(self):
        return {
            "request": {
                "n": self.request.n,
                "m": self.request.m,
                "sign": str(self.request.sign),
                "count": self.request.count,
                "seed": self.request.seed,
            },
            "k": self.k,
            "aggregates": {
                "min_length": self.length.min_length,
                "max_length": self.length.max_length,
                "mean_length": self.length.mean_length,
                "length_violations": self.length.undersized,
                "support_lower_bound": str(self.support_lower_bound),
                "verified": self.verification.verified if self.verification else 0,
                "unverified": self.verification.unverified if self.verification else len(self.instances),
                "length_fit_exponent": self.length_exponent,
            },
            "length_check": self.length.to_dict(),
            "instances": self.records(),
        }


def build_report(engine, req, instances, verification=None):
    return GenReport(req, engine.k, instances, length_bounds_check(instances, req.n, engine.k), verification)


def length_degree(reports):
    """Empirical degree of p(n) from the largest output length per n"""
    return fit_degree([r.request.n for r in reports], [r.length.max_length for r in reports])


def attach_length_degree(reports):
    """Fit p(n) across reports for several n and record the exponent on each"""
    degree = length_degree(reports)
    for report in reports:
        report.length_exponent = degree
    return degree
