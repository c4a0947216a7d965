"""
Certified Instance Generator Test Suite
Description: preimage drawing, certified signs, support counts, exact draw
distributions, chi-square uniformity and length bounds
"""

from fractions import Fraction
from itertools import islice

import pytest

from conftest import BUILTIN_NAMES, s
from roughp.auxiliary import build_context
from roughp.errors import BudgetError, InvariantViolation, VerificationFailure
from roughp.generator import (
    GenRequest,
    InstanceRng,
    Sign,
    attach_length_degree,
    build_report,
    draw_distribution,
    draw_preimage,
    enumerate_support,
    flip_distribution,
    generate,
    generate_with_preimages,
    length_bounds_check,
    length_degree,
    parity_count,
    preimage_length,
    support_lower_bound,
    support_size,
    tally_support,
    uniformity_test,
    verify_outputs,
)
from roughp.iso import IsoEngine
from roughp.registry import registry_lookup
from roughp.sigma import SymString, enumerate_sphere, weight


class TestRequest:
    """Test request validation and the preimage length"""

    def test_preimage_length(self):
        """Test m = 2n+1 for odd n and 2n+3 for even n"""
        assert preimage_length(1) == 3
        assert preimage_length(2) == 7
        assert preimage_length(0) == 3
        assert all(preimage_length(n) % 2 == 1 for n in range(30))

    def test_sign_from_text(self):
        """Test signs coerce from their text form"""
        req = GenRequest(3, "neg", 5, 1)
        assert req.sign is Sign.NEG
        assert req.m == 7

    def test_negative_n_rejected(self):
        """Test n must be non-negative"""
        with pytest.raises(ValueError):
            GenRequest(-1)


class TestDrawing:
    """Test preimage drawing and the seeded streams"""

    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    @pytest.mark.parametrize("sign", [Sign.POS, Sign.NEG])
    def test_preimage_parity(self, k, sign):
        """Test every drawn preimage has the requested weight parity"""
        rng = InstanceRng(17, n=4, sign=sign)
        for _ in range(200):
            z = draw_preimage(rng, k, 11, sign)
            assert len(z) == 11
            assert (weight(z) % 2 == 1) == sign.wants_odd

    def test_opposite_parity(self):
        """Test replacement symbols have the other parity"""
        rng = InstanceRng(3)
        for s_ in range(5):
            for _ in range(50):
                assert rng.opposite_parity(5, s_) % 2 != s_ % 2

    def test_same_seed_same_stream(self, parity_engine):
        """Test identical requests give identical instances"""
        req = GenRequest(5, Sign.POS, 50, 123)
        assert list(generate(parity_engine, req)) == list(generate(parity_engine, req))

    def test_different_seed_differs(self, parity_engine):
        """Test the seed changes the stream"""
        a = list(generate(parity_engine, GenRequest(6, Sign.POS, 30, 1)))
        b = list(generate(parity_engine, GenRequest(6, Sign.POS, 30, 2)))
        assert a != b

    def test_workers_deterministic(self, parity_engine):
        """Test threaded generation is reproducible for a fixed worker count"""
        req = GenRequest(4, Sign.NEG, 40, 8)
        a = list(generate(parity_engine, req, workers=4))
        b = list(generate(parity_engine, req, workers=4))
        assert a == b
        assert len(a) == 40

    def test_hand_traced_output(self, parity_engine):
        """Test a preimage of weight 3 maps to alpha(111)"""
        assert parity_engine.alpha(s("111")) == s("111111011")

    def test_outputs_are_alpha_of_preimages(self, parity_engine):
        """Test outputs are alpha of the drawn preimage"""
        req = GenRequest(3, Sign.POS, 20, 4)
        for z, x in generate_with_preimages(parity_engine, req):
            assert x == parity_engine.alpha(z)
            assert parity_engine.phi(x) == z
            assert len(x) == 2 * len(z) + 3


class TestVerification:
    """Test certified signs"""

    @pytest.mark.parametrize("name", BUILTIN_NAMES)
    @pytest.mark.parametrize("sign", [Sign.POS, Sign.NEG])
    def test_signs_hold(self, name, sign):
        """Test 100 instances per n in 1..5 verify to their sign"""
        language = registry_lookup(name)
        engine = IsoEngine(build_context(language))
        for n in range(1, 6):
            outputs = list(generate(engine, GenRequest(n, sign, 100, 1000 + n)))
            result = verify_outputs(language, outputs, sign, seed=1000 + n)
            assert result.verified == 100
            assert result.unverified == 0

    def test_tampered_output_fails(self, parity_engine, parity):
        """Test flipping one symbol of a positive instance is caught"""
        outputs = list(generate(parity_engine, GenRequest(3, Sign.POS, 5, 9)))
        x = outputs[2]
        symbols = list(x.symbols)
        symbols[-1] = 1 - symbols[-1]
        outputs[2] = SymString(tuple(symbols), 2)
        with pytest.raises(VerificationFailure) as exc:
            verify_outputs(parity, outputs, Sign.POS, seed=9)
        assert exc.value.index == 2
        assert exc.value.seed == 9
        assert "#2" in str(exc.value)

    def test_over_budget_unverified(self, parity_engine, parity):
        """Test outputs beyond the decide budget are left unverified"""
        outputs = list(generate(parity_engine, GenRequest(4, Sign.NEG, 10, 2)))
        result = verify_outputs(parity, outputs, Sign.NEG, decide_budget=5)
        assert result.verified == 0
        assert result.unverified == 10
        assert all(r["verified"] is None for r in result.records)


class TestSupport:
    """Test support counts and the exact draw distribution"""

    def test_known_sizes(self):
        """Test M for the documented cells"""
        assert support_size(2, 1, Sign.POS) == 4 == support_lower_bound(2, 1)
        assert support_size(2, 2, Sign.POS) == 64
        assert parity_count(3, 2, odd=True) == 4

    @pytest.mark.exhaustive
    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_dp_matches_enumeration(self, k):
        """Test the parity DP against brute force for m <= 12"""
        for m in range(0, 13):
            if k**m > 2**20:
                break
            odd = sum(1 for z in enumerate_sphere(k, m) if weight(z) % 2 == 1)
            assert parity_count(k, m, True) == odd
            assert parity_count(k, m, False) == k**m - odd

    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    def test_lower_bound_holds(self, k):
        """Test M >= floor(k^m / 2) >= k^(2n)"""
        for n in range(0, 8):
            for sign in Sign:
                m = preimage_length(n)
                assert support_size(k, n, sign) >= k**m // 2 >= k ** (2 * n)

    def test_ternary_flip_is_uniform(self):
        """Test one flip from the 5 even-weight strings of length 2 is uniform on the 4 odd ones"""
        dist = flip_distribution(3, 2, source_odd=False)
        assert set(dist) == {SymString.parse(t, 3) for t in ("01", "10", "12", "21")}
        assert set(dist.values()) == {Fraction(1, 4)}

    @pytest.mark.parametrize("k,m", [(2, 3), (2, 7), (4, 3), (4, 5), (6, 3)])
    @pytest.mark.parametrize("sign", [Sign.POS, Sign.NEG])
    def test_draw_distribution_uniform(self, k, m, sign):
        """Test the mixture of both branches is exactly uniform for even k"""
        dist = draw_distribution(k, m, sign)
        assert sum(dist.values()) == 1
        assert len(dist) == parity_count(k, m, sign.wants_odd)
        assert set(dist.values()) == {Fraction(1, len(dist))}

    def test_ternary_draw_mixture(self):
        """Test k=3: uniform at m=2 for pos, weighted by the count of 1s at m=3"""
        assert set(draw_distribution(3, 2, Sign.POS).values()) == {Fraction(1, 4)}
        dist = draw_distribution(3, 3, Sign.POS)
        assert sum(dist.values()) == 1
        assert dist[SymString.parse("111", 3)] == Fraction(1, 9)
        assert dist[SymString.parse("100", 3)] == Fraction(2, 27)

    def test_distribution_budget(self):
        """Test exact distributions refuse large spheres"""
        with pytest.raises(BudgetError):
            draw_distribution(2, 15, Sign.POS, enum_budget=1000)

    def test_enumerated_support(self, parity_engine):
        """Test the support holds M distinct outputs"""
        support = enumerate_support(parity_engine, 1, Sign.POS)
        assert len(support) == 4
        assert parity_engine.alpha(s("111")) in support

    def test_output_outside_support(self, parity_engine):
        """Test tallying an output outside the support fails"""
        support = enumerate_support(parity_engine, 1, Sign.POS)
        with pytest.raises(InvariantViolation):
            tally_support([s("0")], support)


class TestUniformity:
    """Test the chi-square uniformity check"""

    @pytest.mark.statistical
    @pytest.mark.parametrize("n,sign", [(1, Sign.POS), (1, Sign.NEG), (2, Sign.POS)])
    def test_uniform_outputs(self, parity_engine, n, sign):
        """Test 50*M samples pass at p >= 0.001"""
        report = uniformity_test(parity_engine, n, sign, seed=20240917)
        assert report.passed, report.to_dict()
        assert report.samples == 50 * report.support
        assert report.to_dict()["degrees_of_freedom"] == report.support - 1

    @pytest.mark.statistical
    def test_documented_sample_count(self, parity_engine):
        """Test the k=2, n=1 cell with 16000 samples"""
        report = uniformity_test(parity_engine, 1, Sign.POS, samples=16000, seed=1)
        assert report.support == 4
        assert report.passed


class TestLengthBounds:
    """Test the output length check"""

    def test_no_short_outputs(self, parity_engine):
        """Test the parity wrapper never emits outputs shorter than n"""
        outputs = list(generate(parity_engine, GenRequest(8, Sign.POS, 2000, 3)))
        report = length_bounds_check(outputs, 8, 2)
        assert report.undersized == 0
        assert report.passed
        assert report.bound == pytest.approx(2**-8)
        assert report.min_length >= 2 * preimage_length(8) + 2

    def test_radius_zero(self, parity_engine):
        """Test n=0 passes trivially with bound 1"""
        outputs = list(generate(parity_engine, GenRequest(0, Sign.NEG, 10, 3)))
        report = length_bounds_check(outputs, 0, 2)
        assert report.bound == 1.0
        assert report.passed

    def test_short_outputs_counted(self):
        """Test undersized outputs push the fraction over the bound"""
        report = length_bounds_check([s("0")] * 50 + [s("0" * 20)] * 50, 10, 2)
        assert report.undersized == 50
        assert not report.passed

    def test_report_and_degree(self, parity_engine):
        """Test generator reports and the empirical length degree"""
        reports = []
        for n in (2, 4, 8, 16):
            req = GenRequest(n, Sign.POS, 30, n)
            instances = list(generate(parity_engine, req))
            reports.append(build_report(parity_engine, req, instances))
        data = reports[0].to_dict()
        assert data["aggregates"]["support_lower_bound"] == "16"
        assert data["aggregates"]["unverified"] == 30
        assert len(data["instances"]) == 30
        assert 0.5 < length_degree(reports) < 2.0

    def test_attached_degree_in_every_report(self, parity_engine):
        """Test the fitted exponent is recorded on each report of a multi-n run"""
        reports = []
        for n in (2, 4, 8):
            req = GenRequest(n, Sign.NEG, 20, n)
            reports.append(build_report(parity_engine, req, list(generate(parity_engine, req))))
        assert reports[0].to_dict()["aggregates"]["length_fit_exponent"] is None
        degree = attach_length_degree(reports)
        assert degree == length_degree(reports)
        assert degree is not None
        for report in reports:
            assert report.to_dict()["aggregates"]["length_fit_exponent"] == degree

    def test_single_report_has_no_degree(self, parity_engine):
        """Test one report is too few points to fit an exponent"""
        req = GenRequest(3, Sign.POS, 10, 1)
        report = build_report(parity_engine, req, list(generate(parity_engine, req)))
        assert attach_length_degree([report]) is None
        assert report.to_dict()["aggregates"]["length_fit_exponent"] is None

    def test_instance_records(self, parity_engine, parity):
        """Test per-instance records carry the verification flag"""
        req = GenRequest(2, Sign.POS, 3, 6)
        instances = list(islice(generate(parity_engine, req), 3))
        verification = verify_outputs(parity, instances, req.sign, seed=req.seed)
        records = build_report(parity_engine, req, instances, verification).records()
        assert [r["verified"] for r in records] == [True, True, True]


if __name__ == "__main__":
    pytest.main([__file__, "-v", "--tb=short"])
