"""
Acceptance Test Suite
Description: end-to-end criteria over the exhaustive regions: the exact
failure law, errorlessness, the bijection, the padding contract, certified
signs, support and uniformity, length bounds and the decider-free audit
"""

from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest

from conftest import BUILTIN_NAMES
from roughp.auxiliary import build_context
from roughp.generator import (
    GenRequest,
    Sign,
    build_report,
    enumerate_support,
    flip_distribution,
    generate,
    length_bounds_check,
    length_degree,
    support_size,
    tally_support,
    uniformity_test,
    verify_outputs,
)
from roughp.heuristic import EXHAUSTIVE, SAMPLED, bound, classify, scan_alpha_sphere, scan_range
from roughp.iso import IsoEngine
from roughp.languages import validate_language
from roughp.registry import registry_lookup
from roughp.sigma import enumerate_ball, random_string

pytestmark = [pytest.mark.acceptance, pytest.mark.slow]


class Tripwire:
    """Decider that answers normally until armed, then fails the test"""

    def __init__(self, decide):
        self.decide = decide
        self.armed = False
        self.calls = 0

    def __call__(self, x):
        if self.armed:
            self.calls += 1
            pytest.fail(f"decide was called on {x.display()}")
        return self.decide(x)


class TestFailureLaw:
    """Exact unknown counts on alpha-spheres, n = 0..16"""

    def test_exact_counts(self, parity_engine):
        """Test failures = 2^(n/2) for even n and 0 for odd n"""
        for stats in scan_range(parity_engine, 0, 16):
            expected = 2 ** (stats.n // 2) if stats.n % 2 == 0 else 0
            assert stats.failures == expected
            assert stats.sphere_size == 2**stats.n
            if stats.n % 2 == 0:
                assert stats.rate == bound(stats.n, 2) == Fraction(1, 2 ** (stats.n // 2))
            else:
                assert stats.rate == 0

    def test_errorless(self, parity_engine, parity):
        """Test no accept or reject over the same region disagrees with decide"""
        rows = scan_range(parity_engine, 0, 16, check_correctness=True, oracle=parity, workers=4)
        assert sum(r.correctness_checked for r in rows) == sum(r.accepts + r.rejects for r in rows)
        assert all(r.correctness_skipped == 0 for r in rows)


class TestBijectionRegion:
    """alpha and phi are mutually inverse"""

    def test_binary_ball(self, parity_engine):
        """Test every binary string of length <= 10"""
        for x in enumerate_ball(2, 10):
            assert parity_engine.alpha(parity_engine.phi(x)) == x
            assert parity_engine.phi(parity_engine.alpha(x)) == x

    def test_ternary_ball(self, parity_engine_k3):
        """Test every ternary string of length <= 6"""
        e = parity_engine_k3
        for x in enumerate_ball(3, 6):
            assert e.alpha(e.phi(x)) == x
            assert e.phi(e.alpha(x)) == x

    def test_random_longer_strings(self, parity_engine):
        """Test 10^5 seeded strings of length 11..40"""
        rng = np.random.default_rng(20240917)
        for _ in range(100_000):
            x = random_string(rng, 2, int(rng.integers(11, 41)))
            assert parity_engine.alpha(parity_engine.phi(x)) == x
            assert parity_engine.phi(parity_engine.alpha(x)) == x


class TestContract:
    """Every built-in language is paddable"""

    @pytest.mark.parametrize("name", BUILTIN_NAMES)
    def test_builtin_validates(self, name):
        """Test the validator passes for |x|,|y| <= 5"""
        report = validate_language(registry_lookup(name), exhaustive_len=5)
        assert report.passed, [c.to_dict() for c in report.failed_checks()]


class TestCertifiedSigns:
    """Generated instances carry their requested sign"""

    @pytest.mark.parametrize("name", BUILTIN_NAMES)
    def test_signs(self, name):
        """Test 1000 instances per sign and n in 1..8, each confirmed by decide"""
        language = registry_lookup(name)
        engine = IsoEngine(build_context(language))
        for n in range(1, 9):
            for sign in Sign:
                outputs = list(generate(engine, GenRequest(n, sign, 1000, 500 + n)))
                longest = max(len(x) for x in outputs)
                result = verify_outputs(
                    language, outputs, sign, seed=500 + n, decide_budget=max(longest, 1)
                )
                assert result.unverified == 0
                assert result.verified == 1000


class TestSupportAndUniformity:
    """Support sizes and chi-square uniformity for k=2"""

    @pytest.mark.parametrize("n,size", [(1, 4), (2, 64)])
    def test_support(self, parity_engine, n, size):
        """Test M = 4 and 64, each at least k^(2n), outputs inside the support"""
        for sign in Sign:
            support = enumerate_support(parity_engine, n, sign)
            assert len(support) == size == support_size(2, n, sign)
            assert size >= 2 ** (2 * n)
            tally_support(generate(parity_engine, GenRequest(n, sign, 500, 3)), support)

    @pytest.mark.statistical
    @pytest.mark.parametrize("n", [1, 2])
    @pytest.mark.parametrize("sign", [Sign.POS, Sign.NEG])
    def test_chi_square(self, parity_engine, n, sign):
        """Test 50*M samples pass at p >= 0.001"""
        report = uniformity_test(parity_engine, n, sign)
        assert report.passed, report.to_dict()

    def test_ternary_flip_oracle(self):
        """Test the exact flip distribution for k=3, m=2 is uniform 1/4"""
        dist = flip_distribution(3, 2, source_odd=False)
        assert len(dist) == 4
        assert all(p == Fraction(1, 4) for p in dist.values())


class TestLengthBounds:
    """Short outputs stay under k^(-n) plus a 3-sigma allowance"""

    def test_length_fractions(self, parity_engine):
        """Test 10^4 samples per n in 4..10 and report the fitted degree"""
        reports = []
        for n in range(4, 11):
            req = GenRequest(n, Sign.POS, 10_000, 40 + n)
            instances = list(generate(parity_engine, req))
            assert length_bounds_check(instances, n, 2).passed
            reports.append(build_report(parity_engine, req, instances))
        assert length_degree(reports) is not None


class TestDeciderFreeAudit:
    """phi, alpha, classify and scans never reach decide"""

    @pytest.fixture
    def wired(self, parity):
        tripwire = Tripwire(parity.decide)
        language = replace(parity, decide=tripwire)
        engine = IsoEngine(build_context(language))
        tripwire.armed = True
        return tripwire, engine

    def test_mappings_and_classify(self, wired):
        """Test the radius-8 ball under an armed decider"""
        tripwire, engine = wired
        for x in enumerate_ball(2, 8):
            classify(engine, engine.alpha(engine.phi(x)))
            classify(engine, x)
        assert tripwire.calls == 0

    def test_scans_and_generation(self, wired):
        """Test scans and unverified generation under an armed decider"""
        tripwire, engine = wired
        scan_alpha_sphere(engine, 10, mode=EXHAUSTIVE, workers=2)
        scan_alpha_sphere(engine, 24, mode=SAMPLED, sample_count=500)
        list(generate(engine, GenRequest(6, Sign.NEG, 200, 1), workers=3))
        assert tripwire.calls == 0

    def test_engine_holds_no_decider(self, wired):
        """Test the engine's context carries only the padding scheme"""
        _, engine = wired
        assert not hasattr(engine.ctx.scheme, "decide")
        assert not hasattr(engine.ctx, "decide")


if __name__ == "__main__":
    pytest.main([__file__, "-v", "--tb=short"])
