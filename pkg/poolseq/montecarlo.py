"""Module with the stochastic cross-check of the exact evaluation

Units are drawn individually as Bernoulli(p) variables and pooled k at a time; a pool tests
positive if any of its units is positive. Pools are tested one after another until the
stopping rule of the design holds, and the estimator is applied to the observed count.

Replicates are simulated in blocks of ``SimConfig.batch_size``. Block b draws from its own
counter-based Philox stream keyed by (seed, b), so a summary only depends on the seed, the
amount of replicates and the block size - never on the order blocks are computed in."""
import logging
import math
import numbers

import numpy as np

from .design import Model
from .estim import estimate_array
from .exc import DomainError, StepLimitError
from .util import Record, check_positive_int, check_probability

__all__ = ["SimConfig", "SimSummary", "make_stream", "simulate_block", "simulate_once", "simulate_estimator"]

log = logging.getLogger(__name__)


class SimConfig(object):

    """Settings of a Monte Carlo run"""
    __slots__ = (
        'replicates',   # amount of simulated sampling plans
        'seed',         # 64 bit master seed
        'max_steps',    # most pooled tests a single replicate may use
        'batch_size',   # replicates simulated together from one stream
    )

    #{ Configuration
    default_max_steps = 10 ** 7
    default_batch_size = 10000
    #: largest share of capped replicates a summary is accepted with
    cap_hit_tolerance = 1e-4
    #} END configuration

    def __init__(self, replicates, seed, max_steps=None, batch_size=None):
        self.replicates = check_positive_int(replicates, 'replicates')
        if isinstance(seed, bool) or not isinstance(seed, numbers.Integral) or not 0 <= seed < 2 ** 64:
            raise DomainError("seed must be an unsigned 64 bit integer, got %r" % (seed,))
        self.seed = int(seed)
        self.max_steps = check_positive_int(self.default_max_steps if max_steps is None else max_steps,
                                            'max_steps')
        self.batch_size = check_positive_int(self.default_batch_size if batch_size is None else batch_size,
                                             'batch_size')

    def __repr__(self):
        return "SimConfig(replicates=%i, seed=%i, max_steps=%i, batch_size=%i)" % (
            self.replicates, self.seed, self.max_steps, self.batch_size)

    def num_blocks(self):
        return -(-self.replicates // self.batch_size)


class SimSummary(Record):

    """Empirical moments of the estimation error over all replicates that stopped in time"""
    __slots__ = (
        'emp_bias',
        'emp_mse',
        'se_bias',      # None for less than two replicates
        'se_mse',       # None for less than two replicates
        'cap_hits',     # replicates which hit max_steps and were left out
        'replicates',
        'used',         # replicates entering the moments
        'flagged',      # True if cap_hits exceed SimConfig.cap_hit_tolerance
    )


#{ Interface

def make_stream(seed, block=0):
    """:return: numpy Generator on the Philox stream of the given block of a master seed"""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(block,))))


def simulate_block(design, p, size, rng, max_steps=SimConfig.default_max_steps):
    """Simulate ``size`` independent runs of the design's sampling plan

    Each pooled test draws k unit-level Bernoulli(p) variables and is positive if any of them is.

    :return: tuple(counts, capped) - int array of observed statistics (x, y or z) and a bool
        array marking runs which did not stop within max_steps pooled tests"""
    p = check_probability(p)
    k = design.k
    counts = np.zeros(size, dtype=np.int64)

    if design.model is Model.A:
        steps = min(design.size, max_steps)
        for _ in range(steps):
            counts += (rng.random((size, k)) < p).any(axis=1)
        # END for each pool
        return counts, np.full(size, design.size > max_steps)
    # END fixed plan

    stop_on_positive = design.model is Model.B
    if p == (0.0 if stop_on_positive else 1.0):
        # the stopping outcome never occurs, every run would exhaust max_steps
        log.debug("%r cannot stop at p=%r, marking %i runs as capped", design, p, size)
        return counts, np.ones(size, dtype=bool)
    # END handle plans that never stop

    stops = np.zeros(size, dtype=np.int64)
    active = np.arange(size)
    steps = 0
    while active.size and steps < max_steps:
        positive = (rng.random((active.size, k)) < p).any(axis=1)
        stop = positive if stop_on_positive else ~positive
        counts[active] += ~stop
        stops[active] += stop
        active = active[stops[active] < design.size]
        steps += 1
    # END while plans are running
    return counts, stops < design.size


def simulate_once(design, p, rng_stream, max_steps=SimConfig.default_max_steps):
    """:return: the observed statistic of a single run of the design's sampling plan
    :raise StepLimitError: if the plan did not stop within max_steps pooled tests"""
    counts, capped = simulate_block(design, p, 1, rng_stream, max_steps)
    if capped[0]:
        raise StepLimitError("%r did not stop within %i pooled tests at p=%r" % (design, max_steps, p))
    return int(counts[0])


def simulate_estimator(est, design, p, cfg):
    """Estimate bias and MSE of the estimator empirically

    :return: SimSummary; replicates hitting cfg.max_steps are counted in cap_hits and left out
    :raise DegenerateEstimatorError: propagated from the estimator"""
    p = check_probability(p)
    errors = []
    cap_hits = 0
    for block in range(cfg.num_blocks()):
        size = min(cfg.batch_size, cfg.replicates - block * cfg.batch_size)
        counts, capped = simulate_block(design, p, size, make_stream(cfg.seed, block), cfg.max_steps)
        cap_hits += int(np.count_nonzero(capped))
        values, _ = estimate_array(est, design, counts[~capped])
        errors.append(values - p)
    # END for each block

    errors = np.concatenate(errors)
    used = errors.size
    flagged = cap_hits > 0 and cap_hits >= cfg.cap_hit_tolerance * cfg.replicates
    if flagged:
        log.warning("%i of %i replicates of %r hit the limit of %i pooled tests", cap_hits, cfg.replicates,
                    design, cfg.max_steps)
    # END handle cap hits

    emp_bias = emp_mse = se_bias = se_mse = None
    if used:
        squares = errors * errors
        emp_bias = float(np.sum(errors) / used)
        emp_mse = float(np.sum(squares) / used)
        if used > 1:
            se_bias = float(np.std(errors, ddof=1) / math.sqrt(used))
            se_mse = float(np.std(squares, ddof=1) / math.sqrt(used))
        # END handle standard errors
    # END handle moments
    return SimSummary(emp_bias=emp_bias, emp_mse=emp_mse, se_bias=se_bias, se_mse=se_mse, cap_hits=cap_hits,
                      replicates=cfg.replicates, used=used, flagged=flagged)

#} END interface
