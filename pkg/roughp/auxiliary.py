"""
Auxiliary language H = {xx : x in L} ∪ {z : weight(z) odd}
Description: the reduction and padding functions between a paddable base
language L and H.

HContext keeps only the padding half of L. Nothing here except decide_h()
can evaluate membership, and decide_h() takes the full language explicitly.
"""

from dataclasses import dataclass
import logging

from .config import DEFAULT_DECIDE_BUDGET, DEFAULT_SEED
from .errors import BudgetError, PluginContractError
from .languages import validate_language
from .sigma import is_symmetric, weight

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HContext:
    scheme: object

    @property
    def k(self):
        return self.scheme.k

    @property
    def w0(self):
        return self.scheme.w0

    @property
    def w1(self):
        return self.scheme.w1


def build_context(language, exhaustive_len=3, samples=0, seed=DEFAULT_SEED, **budgets):
    """Validate the base language, then keep its padding scheme"""
    report = validate_language(
        language, exhaustive_len=exhaustive_len, samples=samples, seed=seed, **budgets
    )
    if not report.passed:
        failed = ", ".join(
            f"'{check.name}' at {check.counterexample}" for check in report.failed_checks()
        )
        raise PluginContractError(f"{language.name} breaks the padding contract: {failed}", report)
    return HContext(language.padding())


def u(ctx, z):
    """Reduce H to L: the half of a symmetric z, else the witness matching z's parity"""
    if is_symmetric(z):
        return z[: len(z) // 2]
    if weight(z) % 2 == 0:
        return ctx.w0
    return ctx.w1


def f(x):
    """Reduce L to H by doubling"""
    return x + x


def g(ctx, z):
    """The reduction from H back to L used by the bijection"""
    return u(ctx, z)


def pad_h(ctx, z, y):
    """Padding for H: pad u(z) in L, then double"""
    q = ctx.scheme.pad(u(ctx, z), y)
    return q + q


def dec_h(ctx, z):
    """Recover the padded data from a pad_h output"""
    return ctx.scheme.dec(u(ctx, z))


def decide_h(language, z, decide_budget=DEFAULT_DECIDE_BUDGET):
    """Membership in H; test oracle only"""
    if weight(z) % 2 == 1:
        return True
    if not is_symmetric(z):
        return False
    half = z[: len(z) // 2]
    if len(half) > decide_budget:
        raise BudgetError(
            f"decide_h needs decide on length {len(half)}, over the decide budget {decide_budget}",
            requested=len(half),
            budget=decide_budget,
        )
    return bool(language.decide(half))
