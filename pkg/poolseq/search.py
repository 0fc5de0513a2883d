"""Module with the design comparison procedure

For a fixed prevalence p and expected test budget, every pool size of a grid gets its
budgeted design, the estimator is evaluated exactly on it, and the design with the smallest
mean squared error wins. Shrinkage estimators are tuned for each candidate design first, by
minimizing their MSE at the prior upper bound p0 on a refining parameter grid."""
import functools
import logging

import numpy as np

from .design import Budget, Design, Model, designs_for_budget
from .dist import truncated_support
from .estim import Estimator, Family
from .evaluate import DEFAULT_EPSILON, evaluate
from .exc import (
    DegenerateDistributionError,
    DegenerateEstimatorError,
    DomainError,
    InvalidCombinationError,
    NoFeasibleDesignError,
    PoolSeqError,
)
from .util import Record, check_positive_int, check_probability

__all__ = ["SearchOutcome", "PTParams", "best_k", "optimize_pt", "compare"]

log = logging.getLogger(__name__)

#{ Configuration

#: inclusive pool size grid of the comparison
DEFAULT_K_RANGE = (2, 50)

#: upper end of the beta axis of the shrinkage parameter box
DEFAULT_BETA_MAX = 50.0

#: refinement stages and grid points per axis and stage of optimize_pt
DEFAULT_STAGES = 3
DEFAULT_POINTS = 51

#: largest support a shrinkage estimator is tuned on
TUNE_MAX_COUNT = 10 ** 6

#} END configuration


class SearchOutcome(Record):

    """The MSE minimizing pool size of one estimator for a prevalence and a budget"""
    __slots__ = (
        'estimator',        # label of the estimator
        'k_star',           # winning pool size
        'c_star',           # its c, or n under model (a)
        'result',           # EvalResult of the winning design
        'pt_params',        # PTParams the winning design was tuned with, or None
        'feasible_k_count',  # amount of pool sizes that were evaluated
        'skipped_k',        # list of (k, reason) of pool sizes that were not
    )


class PTParams(Record):

    """Constants of a shrinkage estimator minimizing its MSE at p0"""
    __slots__ = (
        'family',
        'model',
        'k',
        'c',
        'alpha',            # None for the beta family
        'beta',             # None for the alpha family
        'achieved_mse',     # exact MSE at p0 with these constants
        'p0',
    )


#{ Utilities

def _shrinkage_family(family):
    aliases = {'alpha': Family.PT_ALPHA, 'beta': Family.PT_BETA, 'c': Family.PT_C}
    if isinstance(family, str) and family.lower() in aliases:
        return aliases[family.lower()]
    family = Family.parse(family)
    if not family.is_shrinkage():
        raise DomainError("%s is no shrinkage estimator family" % family.value)
    return family


def _mse_grid(family, model, k, c, counts, probs, p0, alphas, betas):
    """:return: matrix of the MSE at p0 for each (alpha, beta) pair of the given axes"""
    if family is Family.PT_ALPHA:
        bases = (c / (counts + c))[None, :]
    else:
        bases = (c + 1.0) / (counts[None, :] + c + betas[:, None])
    # END handle family

    if model is Model.C:
        # 1 - p_hat = alpha**(1/k) * bases**(1/k), so the MSE is quadratic in alpha**(1/k)
        roots = bases ** (1.0 / k)
        q0 = 1.0 - p0
        s0 = probs.sum()
        s1 = roots.dot(probs)
        s2 = (roots * roots).dot(probs)
        a = alphas ** (1.0 / k)
        return q0 * q0 * s0 - 2.0 * q0 * np.outer(a, s1) + np.outer(a * a, s2)
    # END closed form

    res = np.empty((alphas.size, bases.shape[0]))
    for row, alpha in enumerate(alphas):
        errors = 1.0 - np.power(1.0 - alpha * bases, 1.0 / k) - p0
        res[row] = (errors * errors).dot(probs)
    # END for each alpha
    return res


def _pick(mse, alphas, betas):
    """:return: (alpha index, beta index) of the smallest entry, ties going to smaller beta, then larger alpha"""
    best = mse.min()
    rows, cols = np.nonzero(mse == best)
    order = np.lexsort((-alphas[rows], betas[cols]))
    return rows[order[0]], cols[order[0]]


@functools.lru_cache(maxsize=4096)
def _optimize(family, model, k, c, p0, beta_max, stages, points, epsilon, max_count):
    design = Design(model, k, c)
    counts, probs, _ = truncated_support(design.distribution(p0), epsilon, max_count)
    counts = counts.astype(float)

    alpha_lo, alpha_hi = 0.0, 1.0
    beta_lo, beta_hi = 1.0, beta_max
    incumbent = None
    for stage in range(stages):
        alphas = np.linspace(alpha_lo, alpha_hi, points) if family.uses_alpha() else np.ones(1)
        betas = np.linspace(beta_lo, beta_hi, points) if family.uses_beta() else np.ones(1)
        mse = _mse_grid(family, model, k, c, counts, probs, p0, alphas, betas)
        row, col = _pick(mse, alphas, betas)
        if incumbent is None or mse[row, col] < incumbent[0]:
            incumbent = (mse[row, col], alphas[row], betas[col])
        # END keep best so far
        log.debug("optimize_pt %s(%s) k=%i c=%i p0=%g stage %i: alpha=%r beta=%r mse=%g",
                  family.value, model.value, k, c, p0, stage, incumbent[1], incumbent[2], incumbent[0])

        alpha_step = (alpha_hi - alpha_lo) / (points - 1)
        beta_step = (beta_hi - beta_lo) / (points - 1)
        alpha_lo, alpha_hi = max(0.0, incumbent[1] - alpha_step), min(1.0, incumbent[1] + alpha_step)
        beta_lo, beta_hi = max(1.0, incumbent[2] - beta_step), min(beta_max, incumbent[2] + beta_step)
    # END for each stage

    alpha = float(incumbent[1]) if family.uses_alpha() else None
    beta = float(incumbent[2]) if family.uses_beta() else None
    est = Estimator(family, model, alpha, beta, p0)
    achieved = evaluate(est, design, p0, epsilon, max_count).mse
    return PTParams(family=family, model=model, k=k, c=c, alpha=alpha, beta=beta, achieved_mse=achieved, p0=p0)

#} END utilities


#{ Interface

def optimize_pt(family, model, k, c, p0, beta_max=DEFAULT_BETA_MAX, stages=DEFAULT_STAGES,
                points=DEFAULT_POINTS, epsilon=DEFAULT_EPSILON, max_count=TUNE_MAX_COUNT):
    """Find the shrinkage constants minimizing the exact MSE at p = p0

    The box alpha in [0, 1], beta in [1, beta_max] is scanned with ``points`` values per axis;
    each further stage zooms into the neighbouring grid cells of the best point so far.

    :param family: 'alpha', 'beta', 'c' or one of the shrinkage Family members
    :param model: Model.B or Model.C
    :return: PTParams
    :raise TruncationError: if the outcome distribution at p0 is too long tailed to be summed"""
    family = _shrinkage_family(family)
    model = Model.parse(model)
    if model is Model.A:
        raise InvalidCombinationError("Shrinkage estimators are only defined under models (b) and (c)")
    k = check_positive_int(k, 'k', minimum=2)
    c = check_positive_int(c, 'c')
    p0 = check_probability(p0, 'p0', open_interval=True)
    if not beta_max >= 1.0:
        raise DomainError("beta_max must be >= 1, got %r" % (beta_max,))
    stages = check_positive_int(stages, 'stages')
    points = check_positive_int(points, 'points', minimum=2)
    # the cached record is shared, callers get their own
    return _optimize(family, model, k, c, p0, float(beta_max), stages, points, epsilon, max_count).copy()


def best_k(est, model, p, budget, k_range=DEFAULT_K_RANGE, epsilon=DEFAULT_EPSILON, max_count=None,
           beta_max=DEFAULT_BETA_MAX):
    """Search the pool size with the smallest exact MSE

    Every k of the inclusive range gets the budgeted design of design_for_budget(). Pool sizes
    without a feasible design, or where the estimator degenerates, are reported in skipped_k.
    Untuned shrinkage estimators are tuned at their p0 for every candidate design.

    :return: SearchOutcome; among equal MSE values the smallest k wins
    :raise NoFeasibleDesignError: if no pool size of the range could be evaluated"""
    model = Model.parse(model)
    if est.model is not model:
        raise InvalidCombinationError("Estimator %s cannot be searched under model (%s)" % (est.label(), model.value))
    p = check_probability(p, open_interval=True)
    budget = Budget(budget)
    first, last = k_range
    if first < 2 or last < first:
        raise DomainError("The pool size range must satisfy 2 <= first <= last, got %r" % (k_range,))
    # END check range

    best = None
    feasible = 0
    skipped = []
    for k, design, reason in designs_for_budget(model, p, budget, (first, last)):
        if design is None:
            skipped.append((k, reason))
            continue
        # END handle infeasible
        params = None
        try:
            rule = est
            if est.needs_tuning():
                params = optimize_pt(est.family, model, k, design.size, est.p0, beta_max=beta_max, epsilon=epsilon)
                rule = est.tuned(params.alpha, params.beta)
            # END tune shrinkage estimator
            result = evaluate(rule, design, p, epsilon, max_count)
        except (DegenerateEstimatorError, DegenerateDistributionError) as err:
            log.debug("skipping k=%i for %s: %s", k, est.label(), err)
            skipped.append((k, str(err)))
            continue
        # END handle degenerate cases
        feasible += 1
        if best is None or result.mse < best[2].mse:
            best = (k, design, result, params)
        # END keep minimum
    # END for each pool size

    if best is None:
        raise NoFeasibleDesignError("No pool size in %r yields a usable design for %s at p=%r and E(N)=%g"
                                    % (k_range, est.label(), p, budget.target_en))
    k, design, result, params = best
    return SearchOutcome(estimator=est.label(), k_star=k, c_star=design.size, result=result, pt_params=params,
                         feasible_k_count=feasible, skipped_k=skipped)


def compare(rows, p, budget, **kwargs):
    """Run best_k for every estimator row at one prevalence

    :param rows: iterable of Estimator
    :param kwargs: passed on to best_k
    :return: list of tuple(estimator, SearchOutcome or the PoolSeqError explaining its absence),
        in row order"""
    res = []
    for est in rows:
        try:
            res.append((est, best_k(est, est.model, p, budget, **kwargs)))
        except PoolSeqError as err:
            log.debug("%s has no outcome at p=%r: %s", est.label(), p, err)
            res.append((est, err))
        # END handle failures
    # END for each row
    return res

#} END interface
