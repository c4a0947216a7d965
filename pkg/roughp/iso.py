"""
p-isomorphism between L and H
Description: length-increasing invertible reductions F: L -> H and G: H -> L,
and the bijection phi (with inverse alpha) chosen point by point from the
ancestor chain of the input.

The engine holds an HContext, i.e. only pad/dec and the two witnesses of L;
it cannot reach a membership decider.
"""

from dataclasses import dataclass, field
from functools import lru_cache
import logging

import numpy as np

from .auxiliary import dec_h, f, g, pad_h
from .config import DEFAULT_SEED
from .errors import ChainGuardError
from .sigma import random_string

logger = logging.getLogger(__name__)

G_INVERSE = "G-inverse"
F_INVERSE = "F-inverse"
APPLY_F = "apply-F"
APPLY_G_INVERSE = "apply-G-inverse"
APPLY_G = "apply-G"
APPLY_F_INVERSE = "apply-F-inverse"


@dataclass
class ChainTrace:
    mapping: str
    start: object
    steps: list = field(default_factory=list)
    failed: str = None
    terminal_rule: str = None
    result: object = None

    def to_dict(self):
        return {
            "mapping": self.mapping,
            "start": self.start.to_text(),
            "steps": [
                {"direction": direction, "value": value.to_text()}
                for direction, value in self.steps
            ],
            "failed_inversion": self.failed,
            "terminal_rule": self.terminal_rule,
            "result": self.result.to_text(),
        }

    def to_text(self):
        lines = [f"{self.mapping}({self.start.display()})"]
        for depth, (direction, value) in enumerate(self.steps, start=1):
            lines.append(f"{'  ' * depth}{direction} -> {value.display()}")
        lines.append(f"{'  ' * (len(self.steps) + 1)}{self.failed} -> none")
        lines.append(f"{self.terminal_rule} => {self.result.display()}")
        return "\n".join(lines)


class IsoEngine:
    def __init__(self, ctx, max_chain=None, cache_size=0):
        self.ctx = ctx
        self.max_chain = max_chain
        if cache_size:
            self.phi = lru_cache(maxsize=cache_size)(self.phi)
            self.alpha = lru_cache(maxsize=cache_size)(self.alpha)

    @property
    def k(self):
        return self.ctx.k

    def big_f(self, x):
        return pad_h(self.ctx, f(x), x)

    def big_f_inv(self, z):
        y = dec_h(self.ctx, z)
        return y if self.big_f(y) == z else None

    def big_g(self, z):
        return self.ctx.scheme.pad(g(self.ctx, z), z)

    def big_g_inv(self, x):
        z = self.ctx.scheme.dec(x)
        return z if self.big_g(z) == x else None

    def _walk(self, trace, inversions):
        guard = self.max_chain if self.max_chain is not None else len(trace.start) + 1
        current = trace.start
        turn = 0
        while True:
            direction, invert = inversions[turn % 2]
            parent = invert(current)
            if parent is None:
                trace.failed = direction
                return trace
            if len(parent) >= len(current):
                logger.error(f"Ancestor chain of {trace.start.display()} stopped shrinking")
                raise ChainGuardError(
                    f"{direction} of {current.display()} is not shorter; "
                    "a reduction is not length-increasing",
                    start=trace.start,
                    steps=trace.steps,
                )
            trace.steps.append((direction, parent))
            if len(trace.steps) > guard:
                logger.error(f"Ancestor chain of {trace.start.display()} exceeded {guard}")
                raise ChainGuardError(
                    f"ancestor chain longer than {guard}", start=trace.start, steps=trace.steps
                )
            current = parent
            turn += 1

    def trace_phi(self, x):
        trace = self._walk(
            ChainTrace("phi", x), ((G_INVERSE, self.big_g_inv), (F_INVERSE, self.big_f_inv))
        )
        if trace.failed == G_INVERSE:
            trace.terminal_rule, trace.result = APPLY_F, self.big_f(x)
        else:
            trace.terminal_rule, trace.result = APPLY_G_INVERSE, trace.steps[0][1]
        return trace

    def trace_alpha(self, z):
        trace = self._walk(
            ChainTrace("alpha", z), ((F_INVERSE, self.big_f_inv), (G_INVERSE, self.big_g_inv))
        )
        if trace.failed == F_INVERSE:
            trace.terminal_rule, trace.result = APPLY_G, self.big_g(z)
        else:
            trace.terminal_rule, trace.result = APPLY_F_INVERSE, trace.steps[0][1]
        return trace

    def phi(self, x):
        return self.trace_phi(x).result

    def alpha(self, z):
        return self.trace_alpha(z).result


def fit_degree(lengths, sizes):
    """Slope of log(size) against log(length) over lengths >= 1"""
    points = [(n, s) for n, s in zip(lengths, sizes) if n >= 1 and s >= 1]
    if len(points) < 2:
        return None
    xs, ys = zip(*points)
    slope, _ = np.polyfit(np.log(xs), np.log(ys), 1)
    return float(slope)


def measure_growth(engine, lengths, samples=200, seed=DEFAULT_SEED):
    """Largest |phi(x)| and |alpha(z)| seen per input length, plus fitted degrees"""
    rng = np.random.default_rng(seed)
    rows = []
    for n in lengths:
        inputs = [random_string(rng, engine.k, n) for _ in range(samples)]
        rows.append(
            {
                "n": n,
                "max_phi": max(len(engine.phi(x)) for x in inputs),
                "max_alpha": max(len(engine.alpha(z)) for z in inputs),
            }
        )
    return {
        "rows": rows,
        "phi_degree": fit_degree([r["n"] for r in rows], [r["max_phi"] for r in rows]),
        "alpha_degree": fit_degree([r["n"] for r in rows], [r["max_alpha"] for r in rows]),
    }
