"""Module with the outcome distributions of pooled testing plans, evaluated in log-space

The three sampling plans induce a binomial distribution (fixed number of pools) and two
negative binomial distributions (test until the c-th positive or the c-th negative pool).
All probability mass functions are computed from log-gamma values, which keeps them
finite for the large counts that appear at extreme success probabilities."""
import enum
import logging
import math

import numpy as np
from scipy.special import gammaln

from .exc import DomainError, DegenerateDistributionError, TruncationError
from .util import csum, check_positive_int, check_count, check_probability

__all__ = ["Kind", "OutcomeDistribution", "pmf", "truncation_bound", "truncated_support", "tail_mass"]

log = logging.getLogger(__name__)

#{ Configuration

#: largest count a negative binomial support may be scanned to
MAX_SUPPORT = 10 ** 7

#: smallest tail mass the forward accumulation can resolve reliably
MIN_EPSILON = 1e-14

#} END configuration


class Kind(enum.Enum):

    """The outcome distribution families of the three sampling plans"""
    FIXED_BINOMIAL = 'fixed-binomial'       # positives among n pools
    NEGBIN_POSITIVES = 'negbin-positives'   # negatives until the c-th positive
    NEGBIN_NEGATIVES = 'negbin-negatives'   # positives until the c-th negative


#{ Utilities

def _xlog(count, log_value):
    """:return: count * log_value with 0 * -inf evaluating to 0"""
    with np.errstate(invalid='ignore'):
        res = np.multiply(count, log_value)
    return np.where(np.asarray(count) == 0, 0.0, res)


def _log_pair(theta):
    """:return: (log(theta), log(1 - theta)), using -inf at the boundaries"""
    log_theta = math.log(theta) if theta > 0.0 else -math.inf
    log_comp = math.log1p(-theta) if theta < 1.0 else -math.inf
    return log_theta, log_comp

#} END utilities


class OutcomeDistribution(object):

    """Distribution of the sufficient statistic of one sampling plan

    ``size`` is n for the fixed binomial kind and c for both negative binomial kinds,
    ``theta`` the probability of a positive pooled test.
    The logarithms of theta and 1 - theta are kept separately, as 1 - theta = q**k is
    computed far more accurately as exp(k * log1p(-p)) than by subtraction."""
    __slots__ = (
        'kind',         # one of Kind
        'size',         # n or c
        'theta',        # success probability of one pooled test
        '_log_theta',   # log(theta)
        '_log_comp',    # log(1 - theta)
    )

    def __init__(self, kind, size, theta, log_theta=None, log_comp=None):
        if not isinstance(kind, Kind):
            raise DomainError("Unknown distribution kind: %r" % (kind,))
        self.kind = kind
        self.size = check_positive_int(size, "n" if kind is Kind.FIXED_BINOMIAL else "c")
        self.theta = check_probability(theta, 'theta')
        if log_theta is None or log_comp is None:
            log_theta, log_comp = _log_pair(self.theta)
        # END derive logarithms
        self._log_theta = log_theta
        self._log_comp = log_comp

    def __repr__(self):
        return "OutcomeDistribution(%s, %i, theta=%r)" % (self.kind.value, self.size, self.theta)

    #{ Constructors

    @classmethod
    def fixed_binomial(cls, n, theta):
        return cls(Kind.FIXED_BINOMIAL, n, theta)

    @classmethod
    def negbin_positives(cls, c, theta):
        return cls(Kind.NEGBIN_POSITIVES, c, theta)

    @classmethod
    def negbin_negatives(cls, c, theta):
        return cls(Kind.NEGBIN_NEGATIVES, c, theta)

    @classmethod
    def from_pool(cls, kind, size, k, p):
        """:return: distribution for pools of k units with unit prevalence p, theta = 1 - (1 - p)**k"""
        p = check_probability(p)
        k = check_positive_int(k, 'k')
        if p == 1.0:
            log_comp = -math.inf
        else:
            log_comp = k * math.log1p(-p)
        # END handle certain positives
        theta = -math.expm1(log_comp)
        log_theta = math.log(theta) if theta > 0.0 else -math.inf
        return cls(kind, size, theta, log_theta, log_comp)

    #} END constructors

    #{ Interface

    def is_degenerate(self):
        """:return: True if theta is 0 or 1 in the sense that one of the outcomes is impossible"""
        return self._log_theta == -math.inf or self._log_comp == -math.inf

    def max_count(self):
        """:return: largest count of the support, or None if the support is unbounded"""
        if self.kind is Kind.FIXED_BINOMIAL:
            return self.size
        return None

    def mean(self):
        """:return: expected count, math.inf if the stopping event never happens"""
        if self.kind is Kind.FIXED_BINOMIAL:
            return self.size * self.theta
        stop, cont = self._stop_continue()
        if stop == -math.inf:
            return math.inf
        return self.size * math.exp(cont - stop)

    def logpmf_array(self, counts):
        """:return: array of log probabilities for the given array of counts.
            Counts outside of the support of the fixed binomial get -inf"""
        counts = np.asarray(counts, dtype=float)
        size = float(self.size)
        if self.kind is Kind.FIXED_BINOMIAL:
            inside = counts <= size
            rest = np.where(inside, size - counts, 0.0)
            res = (gammaln(size + 1.0) - gammaln(counts + 1.0) - gammaln(rest + 1.0)
                   + _xlog(counts, self._log_theta) + _xlog(rest, self._log_comp))
            return np.where(inside, res, -np.inf)
        # END fixed binomial

        stop, cont = self._stop_continue()
        return (gammaln(size + counts) - gammaln(counts + 1.0) - gammaln(size)
                + _xlog(size, stop) + _xlog(counts, cont))

    def pmf_array(self, counts):
        """:return: array of probabilities for the given array of counts"""
        return np.exp(self.logpmf_array(counts))

    #} END interface

    def _stop_continue(self):
        """:return: (log probability of the stopping outcome, log probability of the counted outcome)"""
        if self.kind is Kind.NEGBIN_POSITIVES:
            return self._log_theta, self._log_comp
        return self._log_comp, self._log_theta


#{ Interface

def pmf(dist, count):
    """:return: P(count) under the given distribution

    :raise DomainError: if count lies outside of the support of a fixed binomial"""
    count = check_count(count)
    if dist.kind is Kind.FIXED_BINOMIAL and count > dist.size:
        raise DomainError("count %i exceeds the number of pools n=%i" % (count, dist.size))
    # END handle support
    return float(dist.pmf_array(np.array([count]))[0])


def truncated_support(dist, epsilon=1e-6, max_count=None):
    """Scan the support forward from zero until the remaining tail is at most epsilon

    :param max_count: largest count we may scan to, defaults to MAX_SUPPORT
    :return: tuple(counts, probabilities, tail_mass) where counts runs from 0 to the
        truncation bound, and tail_mass is the probability of all larger counts
    :raise DegenerateDistributionError: for negative binomial kinds with theta in {0, 1}
    :raise TruncationError: if the bound would exceed max_count"""
    if not 0.0 < epsilon <= 1.0:
        raise DomainError("epsilon must lie in (0, 1], got %r" % (epsilon,))
    if epsilon < MIN_EPSILON:
        raise DomainError("epsilon %r is below the resolvable tail mass %r" % (epsilon, MIN_EPSILON))
    # END handle epsilon

    if dist.kind is Kind.FIXED_BINOMIAL:
        counts = np.arange(dist.size + 1)
        return counts, dist.pmf_array(counts), 0.0
    # END finite support

    if dist.is_degenerate():
        raise DegenerateDistributionError("%r has theta in {0, 1}, its tail cannot be truncated" % dist)
    if epsilon >= 1.0:
        counts = np.arange(1)
        probs = dist.pmf_array(counts)
        return counts, probs, max(0.0, 1.0 - csum(probs))
    # END handle trivial epsilon

    max_count = MAX_SUPPORT if max_count is None else max_count
    mean = dist.mean()
    if mean > max_count:
        raise TruncationError("%r has mean %g beyond the support cap %i" % (dist, mean, max_count))
    # END guard astronomic tails

    chunks = []
    total = 0.0
    start = 0
    chunk = 64 + int(2 * mean)
    while start <= max_count:
        counts = np.arange(start, min(start + chunk, max_count + 1))
        probs = dist.pmf_array(counts)
        cum = total + np.cumsum(probs)
        hit = np.flatnonzero(1.0 - cum <= epsilon)
        if hit.size:
            chunks.append(probs[:hit[0] + 1])
            probs = np.concatenate(chunks)
            bound = start + int(hit[0])
            log.debug("truncation bound of %r at epsilon=%g is %i", dist, epsilon, bound)
            return np.arange(bound + 1), probs, max(0.0, 1.0 - csum(probs))
        # END found bound
        chunks.append(probs)
        total = csum([total, csum(probs)])
        start += counts.size
        chunk *= 2
    # END while scanning
    raise TruncationError("%r needs more than %i counts to reach a tail of %g" % (dist, max_count, epsilon))


def truncation_bound(dist, epsilon=1e-6, max_count=None):
    """:return: smallest count nu such that P(count > nu) <= epsilon. A fixed binomial returns n,
        as its support is finite already
    :raise DegenerateDistributionError: for negative binomial kinds with theta in {0, 1}"""
    if dist.kind is Kind.FIXED_BINOMIAL:
        if not 0.0 < epsilon <= 1.0:
            raise DomainError("epsilon must lie in (0, 1], got %r" % (epsilon,))
        return dist.size
    # END finite support
    counts, _, _ = truncated_support(dist, epsilon, max_count)
    return int(counts[-1])


def tail_mass(dist, bound):
    """:return: probability of a count larger than bound"""
    bound = check_count(bound, 'bound')
    if dist.kind is Kind.FIXED_BINOMIAL and bound >= dist.size:
        return 0.0
    return max(0.0, 1.0 - csum(dist.pmf_array(np.arange(bound + 1))))

#} END interface
