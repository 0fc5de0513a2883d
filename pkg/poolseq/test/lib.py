"""Provide base classes and exact oracles for the test system"""
from fractions import Fraction
from math import comb
from unittest import TestCase

__all__ = ['TestBase', 'binomial_pmf_exact', 'negbin_pmf_exact']


#{ Utilities

def binomial_pmf_exact(n, theta, x):
    """:return: Fraction P(X = x) for X ~ Bin(n, theta), theta being a Fraction"""
    return comb(n, x) * theta ** x * (1 - theta) ** (n - x)


def negbin_pmf_exact(c, stop, count):
    """:return: Fraction probability to see count other outcomes before the c-th stopping
        outcome, which has probability stop"""
    return comb(count + c - 1, count) * stop ** c * (1 - stop) ** count


def pool_theta(p, k):
    """:return: Fraction 1 - (1 - p)**k for a Fraction p"""
    return 1 - (1 - Fraction(p)) ** k

#} END utilities


class TestBase(TestCase):

    """Foundation used by all tests"""

    #{ Configuration
    #: agreement in table units required for published reference values
    k_table_tolerance = 0.002
    #: replicates of Monte Carlo comparisons against exact sums
    k_replicates = 10 ** 6
    #: standard errors a Monte Carlo estimate may deviate
    k_se_factor = 3.0
    #} END configuration

    #{ Interface

    def assert_within_se(self, value, expected, se, factor=None):
        factor = self.k_se_factor if factor is None else factor
        assert se is not None and se > 0.0, "need a positive standard error, got %r" % (se,)
        assert abs(value - expected) <= factor * se, \
            "%r deviates from %r by more than %g standard errors of %r" % (value, expected, factor, se)

    #} END interface
