"""Module computing the exact bias and mean squared error of an estimator under a design

Both quantities are plain sums over the support of the observed count, weighted with its
probability mass. Sequential designs have an unbounded support, which is cut where the
remaining tail mass drops below epsilon; the captured sums are not renormalized."""
import logging

from .dist import truncated_support
from .design import expected_tests
from .estim import estimate_array
from .util import Record, csum, check_probability

__all__ = ["EvalResult", "evaluate", "evaluate_values"]

log = logging.getLogger(__name__)

#{ Configuration

#: default tail mass left out of the sums of sequential designs
DEFAULT_EPSILON = 1e-6

#} END configuration


class EvalResult(Record):

    """Exact performance of one estimator on one design at one prevalence"""
    __slots__ = (
        'bias',             # E[p_hat - p]
        'rel_bias_pct',     # 100 * bias / p
        'mse',              # E[(p_hat - p)**2]
        'mse_x1e4',         # 10000 * mse
        'expected_n',       # expected amount of pooled tests of the design
        'truncation_bound',  # largest count included in the sums
        'tail_mass',        # probability of all counts beyond the bound
        'clamp_count',      # estimates clipped to [0, 1] on the summed support
    )


#{ Interface

def evaluate_values(values, probs, p):
    """:return: tuple(bias, mse) of the estimates values with probabilities probs at prevalence p,
        accumulated with compensated sums"""
    errors = values - p
    weighted = errors * probs
    return csum(weighted), csum(errors * weighted)


def evaluate(est, design, p, epsilon=DEFAULT_EPSILON, max_count=None):
    """:return: EvalResult of the estimator on the design at prevalence p

    :param epsilon: largest tail mass left out for sequential designs
    :param max_count: largest count the support may be scanned to, see dist.truncated_support
    :raise DomainError: if p is not inside (0, 1)
    :raise DegenerateEstimatorError: propagated from the estimator"""
    p = check_probability(p, open_interval=True)
    counts, probs, tail = truncated_support(design.distribution(p), epsilon, max_count)
    values, clamp_count = estimate_array(est, design, counts)
    bias, mse = evaluate_values(values, probs, p)
    log.debug("evaluated %s on %r at p=%g over %i counts, tail=%g", est.label(), design, p, counts.size, tail)
    return EvalResult(bias=bias,
                      rel_bias_pct=100.0 * bias / p,
                      mse=mse,
                      mse_x1e4=1e4 * mse,
                      expected_n=expected_tests(design, p),
                      truncation_bound=int(counts[-1]),
                      tail_mass=tail,
                      clamp_count=clamp_count)

#} END interface
