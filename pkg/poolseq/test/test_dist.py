from fractions import Fraction

import numpy as np
from hypothesis import given, settings
import hypothesis.strategies as st

from .lib import TestBase, binomial_pmf_exact, negbin_pmf_exact, pool_theta

from poolseq.dist import (
    Kind,
    OutcomeDistribution,
    pmf,
    tail_mass,
    truncated_support,
    truncation_bound,
)
from poolseq.exc import DegenerateDistributionError, DomainError, TruncationError


class TestDist(TestBase):

    def test_pmf_against_rationals(self):
        p, k = Fraction(1, 10), 3
        theta = pool_theta(p, k)
        fixed = OutcomeDistribution.from_pool(Kind.FIXED_BINOMIAL, 12, k, float(p))
        for x in range(13):
            self.assertAlmostEqual(pmf(fixed, x) / float(binomial_pmf_exact(12, theta, x)), 1.0, places=11)
        # END for each count

        positives = OutcomeDistribution.from_pool(Kind.NEGBIN_POSITIVES, 4, k, float(p))
        negatives = OutcomeDistribution.from_pool(Kind.NEGBIN_NEGATIVES, 4, k, float(p))
        for count in (0, 1, 5, 17, 60):
            self.assertAlmostEqual(pmf(positives, count) / float(negbin_pmf_exact(4, theta, count)), 1.0, places=11)
            self.assertAlmostEqual(pmf(negatives, count) / float(negbin_pmf_exact(4, 1 - theta, count)), 1.0,
                                   places=11)
        # END for each count

    def test_support(self):
        dist = OutcomeDistribution.fixed_binomial(5, 0.3)
        self.assertEqual(dist.max_count(), 5)
        self.assertRaises(DomainError, pmf, dist, 6)
        self.assertRaises(DomainError, pmf, dist, -1)
        self.assertEqual(OutcomeDistribution.negbin_positives(2, 0.3).max_count(), None)
        self.assertRaises(DomainError, OutcomeDistribution.negbin_positives, 0, 0.3)
        self.assertRaises(DomainError, OutcomeDistribution.negbin_positives, 2, 1.5)

    def test_boundary_theta(self):
        # certain outcomes put all mass on a single count
        self.assertEqual(pmf(OutcomeDistribution.fixed_binomial(4, 0.0), 0), 1.0)
        self.assertEqual(pmf(OutcomeDistribution.fixed_binomial(4, 1.0), 4), 1.0)
        self.assertEqual(pmf(OutcomeDistribution.fixed_binomial(4, 1.0), 3), 0.0)
        self.assertEqual(pmf(OutcomeDistribution.negbin_positives(3, 1.0), 0), 1.0)

        for dist in (OutcomeDistribution.negbin_positives(3, 0.0), OutcomeDistribution.negbin_negatives(3, 1.0)):
            assert dist.is_degenerate()
            self.assertRaises(DegenerateDistributionError, truncated_support, dist)
            self.assertRaises(DegenerateDistributionError, truncation_bound, dist, 1e-6)
        # END for each degenerate distribution

    def test_tiny_prevalence_keeps_precision(self):
        dist = OutcomeDistribution.from_pool(Kind.NEGBIN_NEGATIVES, 2, 2, 1e-12)
        # theta is 2e-12, which 1 - (1 - p)**2 would lose to cancellation
        self.assertAlmostEqual(dist.theta / 2e-12, 1.0, places=9)
        self.assertAlmostEqual(dist.mean() / 4e-12, 1.0, places=9)

    def test_normalization(self):
        for dist in (OutcomeDistribution.from_pool(Kind.FIXED_BINOMIAL, 100, 7, 0.05),
                     OutcomeDistribution.from_pool(Kind.NEGBIN_POSITIVES, 6, 2, 0.02),
                     OutcomeDistribution.from_pool(Kind.NEGBIN_NEGATIVES, 9, 10, 0.1)):
            counts, probs, tail = truncated_support(dist, 1e-9)
            self.assertEqual(counts[0], 0)
            assert np.all(np.diff(counts) == 1)
            self.assertAlmostEqual(float(np.sum(probs)) + tail, 1.0, delta=1e-12)
            assert tail <= 1e-9
        # END for each distribution

    def test_truncation_bound(self):
        dist = OutcomeDistribution.from_pool(Kind.NEGBIN_POSITIVES, 3, 4, 0.05)
        for epsilon in (1e-3, 1e-6, 1e-10):
            bound = truncation_bound(dist, epsilon)
            # the bound is the smallest count with a small enough tail
            assert tail_mass(dist, bound) <= epsilon
            assert tail_mass(dist, bound - 1) > epsilon
        # END for each epsilon
        assert truncation_bound(dist, 1e-10) > truncation_bound(dist, 1e-3)

        self.assertEqual(truncation_bound(dist, 1.0), 0)
        # the fixed binomial always reports its full support
        fixed = OutcomeDistribution.fixed_binomial(25, 0.2)
        self.assertEqual(truncation_bound(fixed, 1.0), 25)
        self.assertEqual(truncation_bound(fixed, 1e-6), 25)
        self.assertEqual(tail_mass(fixed, 25), 0.0)

        self.assertRaises(DomainError, truncation_bound, dist, 0.0)
        self.assertRaises(DomainError, truncation_bound, dist, 1e-20)

    def test_support_cap(self):
        # mean of about 1e12 negatives before the first positive
        dist = OutcomeDistribution.from_pool(Kind.NEGBIN_POSITIVES, 1, 2, 5e-13)
        self.assertRaises(TruncationError, truncated_support, dist)
        dist = OutcomeDistribution.from_pool(Kind.NEGBIN_POSITIVES, 1, 2, 0.001)
        self.assertRaises(TruncationError, truncated_support, dist, 1e-6, 100)
        # a cap error is a degenerate distribution to callers which skip those
        assert issubclass(TruncationError, DegenerateDistributionError)

    @settings(max_examples=50, deadline=None)
    @given(st.sampled_from(list(Kind)), st.integers(min_value=1, max_value=30), st.integers(min_value=2, max_value=20),
           st.floats(min_value=0.01, max_value=0.5))
    def test_mass_is_accounted_for(self, kind, size, k, p):
        dist = OutcomeDistribution.from_pool(kind, size, k, p)
        counts, probs, tail = truncated_support(dist, 1e-6)
        assert np.all(probs >= 0.0)
        assert 0.0 <= tail <= 1e-6
        assert abs(float(np.sum(probs)) + tail - 1.0) <= 1e-10
