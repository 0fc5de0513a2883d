"""Module with the point estimators of the prevalence p for all three sampling plans

Every estimator is a pure map from the observed count (x, y or z) of a design to an estimate
in [0, 1]. Evaluation happens on whole arrays of counts, which is what the exact bias and
MSE sums need; the scalar :func:`estimate` is a thin wrapper around it."""
import enum
import logging

import numpy as np

from .design import Model
from .exc import (
    DomainError,
    DegenerateEstimatorError,
    InvalidCombinationError,
    SingularityError,
)
from .util import Record, check_count, check_positive_int, check_probability

__all__ = ["Family", "Estimator", "GartComponents", "burrows_offset", "estimate", "estimate_array",
           "gart_components", "gart_bias", "gart_zero_value"]

log = logging.getLogger(__name__)

#{ Configuration

#: counts beyond which the Degroot product is accumulated as a sum of logarithms
DEGROOT_LOG_THRESHOLD = 10 ** 4

#} END configuration


class Family(enum.Enum):

    """Estimator families"""
    MLE = 'mle'
    BURROWS = 'burrows'
    PT_ALPHA = 'pt-alpha'
    PT_BETA = 'pt-beta'
    PT_C = 'pt-c'
    GART = 'gart'
    DEGROOT = 'degroot'

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        name = str(value).lower().replace('_', '-')
        try:
            return cls(name)
        except ValueError:
            raise DomainError("Unknown estimator %r, expected one of %s"
                              % (value, ', '.join(f.value for f in cls)))
        # END handle unknown name

    def is_shrinkage(self):
        """:return: True for the Pritchard-Tebbs shrinkage families"""
        return self in (Family.PT_ALPHA, Family.PT_BETA, Family.PT_C)

    def uses_alpha(self):
        return self in (Family.PT_ALPHA, Family.PT_C)

    def uses_beta(self):
        return self in (Family.PT_BETA, Family.PT_C)


#: models each family is defined for
_valid_models = {
    Family.MLE: (Model.A, Model.B, Model.C),
    Family.BURROWS: (Model.A, Model.B, Model.C),
    Family.PT_ALPHA: (Model.B, Model.C),
    Family.PT_BETA: (Model.B, Model.C),
    Family.PT_C: (Model.B, Model.C),
    Family.GART: (Model.B, Model.C),
    Family.DEGROOT: (Model.C,),
}


class Estimator(object):

    """Specification of one estimation rule

    Shrinkage families carry their constants alpha and beta. If these are not given, but an
    upper bound ``p0`` is, the estimator is *untuned*: :func:`poolseq.search.optimize_pt`
    finds the constants for a concrete design, and :meth:`tuned` binds them."""
    __slots__ = (
        'family',   # one of Family
        'model',    # one of Model
        'alpha',    # shrinkage factor in [0, 1], or None
        'beta',     # offset >= 1, or None
        'p0',       # prior upper bound the constants are tuned at, or None
    )

    def __init__(self, family, model, alpha=None, beta=None, p0=None):
        self.family = Family.parse(family)
        self.model = Model.parse(model)
        if self.model not in _valid_models[self.family]:
            raise InvalidCombinationError("The %s estimator is not defined under model (%s)"
                                          % (self.family.value, self.model.value))
        # END check combination

        if alpha is not None:
            if not self.family.uses_alpha():
                raise DomainError("The %s estimator takes no alpha" % self.family.value)
            if not 0.0 <= alpha <= 1.0:
                raise DomainError("alpha must lie in [0, 1], got %r" % (alpha,))
            alpha = float(alpha)
        # END check alpha
        if beta is not None:
            if not self.family.uses_beta():
                raise DomainError("The %s estimator takes no beta" % self.family.value)
            if not beta >= 1.0:
                raise DomainError("beta must be >= 1, got %r" % (beta,))
            beta = float(beta)
        # END check beta
        if p0 is not None:
            if not self.family.is_shrinkage():
                raise DomainError("Only shrinkage estimators are tuned at an upper bound p0")
            p0 = check_probability(p0, 'p0', open_interval=True)
        # END check p0

        self.alpha = alpha
        self.beta = beta
        self.p0 = p0
        if self.family.is_shrinkage() and self.needs_tuning() and p0 is None:
            raise DomainError("The %s estimator needs its constants or an upper bound p0" % self.family.value)
        # END check completeness

    def __repr__(self):
        params = ''.join(", %s=%r" % (name, getattr(self, name))
                         for name in ('alpha', 'beta', 'p0') if getattr(self, name) is not None)
        return "Estimator(%s, %s%s)" % (self.family.value, self.model.value, params)

    def _key(self):
        return (self.family, self.model, self.alpha, self.beta, self.p0)

    def __eq__(self, rhs):
        if not isinstance(rhs, Estimator):
            return NotImplemented
        return self._key() == rhs._key()

    def __ne__(self, rhs):
        res = self.__eq__(rhs)
        return res if res is NotImplemented else not res

    def __hash__(self):
        return hash(self._key())

    #{ Interface

    def needs_tuning(self):
        """:return: True if this is a shrinkage estimator whose constants are not bound yet"""
        if not self.family.is_shrinkage():
            return False
        return ((self.family.uses_alpha() and self.alpha is None)
                or (self.family.uses_beta() and self.beta is None))

    def tuned(self, alpha=None, beta=None):
        """:return: copy of this estimator with the given constants, keeping p0"""
        return type(self)(self.family, self.model,
                          alpha if self.family.uses_alpha() else None,
                          beta if self.family.uses_beta() else None,
                          self.p0)

    def label(self):
        """:return: short name like 'mle(a)' or 'pt-c(b)@0.01'"""
        res = "%s(%s)" % (self.family.value, self.model.value)
        if self.p0 is not None:
            res += "@%g" % self.p0
        return res

    #} END interface


class GartComponents(Record):

    """Fisher information of the sample, its derivative, and the expected third derivative
    of the log-likelihood, all with respect to p"""
    __slots__ = ('info', 'info_deriv', 'third_deriv_expect')


#{ Utilities

def burrows_offset(k):
    """:return: (k - 1) / (2k), the offset that removes the O(1/E[N]) bias term"""
    return (k - 1.0) / (2.0 * k)


def _root(base, k):
    """:return: 1 - base**(1/k)"""
    return 1.0 - np.power(base, 1.0 / k)


def _gart_terms(model, p, k, c):
    """:return: tuple(info, info_deriv, third_deriv_expect) for scalar or array p in (0, 1)"""
    p = np.asarray(p, dtype=float)
    q = 1.0 - p
    log_qk = k * np.log1p(-p)
    qk = np.exp(log_qk)
    theta = -np.expm1(log_qk)
    if model is Model.B:
        info = c * k * k * q ** (k - 2) / theta ** 2
        info_deriv = -c * k * k * ((k - 2) * q ** (k - 3) + (k + 2) * q ** (2 * k - 3)) / theta ** 3
        third = (c * k / q ** 3) * ((k * (k + 1) * qk * theta + 2.0 * (k * qk + qk - 1.0) ** 2) / theta ** 3
                                    - 2.0 / theta)
    elif model is Model.C:
        info = c * k * k / (q ** 2 * theta)
        info_deriv = c * k * k * (2.0 - (2.0 + k) * qk) / (q ** 3 * theta ** 2)
        third = (k * c / q ** 3) * (2.0 * k * k * qk ** 2 / theta ** 2 + 3.0 * k * (k - 1) * qk / theta
                                    + k * (k - 3))
    else:
        raise InvalidCombinationError("The Gart correction is only defined under models (b) and (c)")
    # END handle model
    return info, info_deriv, third


def _gart_check(model, p, k, c):
    model = Model.parse(model)
    k = check_positive_int(k, 'k', minimum=2)
    c = check_positive_int(c, 'c')
    p = check_probability(p)
    if p in (0.0, 1.0):
        raise SingularityError("The Gart components are singular at p=%r" % p)
    return model, p, k, c


def _bias_from_terms(info, info_deriv, third):
    return -(2.0 * info_deriv + third) / (2.0 * info * info)


def _degroot_q(counts, c, k):
    """:return: array of prod_{j=1}^{z} (j + c - 1 - 1/k) / (j + c - 1) for each count z"""
    top = int(counts.max()) if counts.size else 0
    j = np.arange(1, top + 1, dtype=float)
    if top > DEGROOT_LOG_THRESHOLD:
        running = np.exp(np.concatenate(([0.0], np.cumsum(np.log1p(-(1.0 / k) / (j + c - 1.0))))))
    else:
        running = np.concatenate(([1.0], np.cumprod((j + c - 1.0 - 1.0 / k) / (j + c - 1.0))))
    # END handle long products
    return running[counts.astype(np.intp)]


def _mle(counts, design, est):
    k, size = design.k, float(design.size)
    if design.model is Model.A:
        return _root(1.0 - counts / size, k)
    if design.model is Model.B:
        return _root(counts / (counts + size), k)
    return _root(size / (counts + size), k)


def _burrows(counts, design, est):
    k, size = design.k, float(design.size)
    nu = burrows_offset(k)
    if design.model is Model.A:
        return _root(1.0 - counts / (size + nu), k)
    if design.model is Model.B:
        if design.size == 1:
            raise DegenerateEstimatorError("The Burrows estimator under model (b) is identically zero for c=1")
        return _root((counts + nu) / (counts + size + nu - 1.0), k)
    return _root((size + nu - 1.0) / (counts + size + nu - 1.0), k)


def _shrinkage(counts, design, est):
    k, c = design.k, float(design.size)
    if est.family is Family.PT_ALPHA:
        ratio = est.alpha * c / (counts + c)
    elif est.family is Family.PT_BETA:
        ratio = (c + 1.0) / (counts + c + est.beta)
    else:
        ratio = est.alpha * (c + 1.0) / (counts + c + est.beta)
    # END handle family
    if design.model is Model.B:
        return _root(1.0 - ratio, k)
    return _root(ratio, k)


def _gart(counts, design, est):
    k, c = design.k, design.size
    res = _mle(counts, design, est)
    inner = counts > 0
    if inner.any():
        mle = res[inner]
        res[inner] = mle - _bias_from_terms(*_gart_terms(design.model, mle, k, c))
    # END correct the interior
    res[~inner] = gart_zero_value(design.model, k, c)
    return res


def _degroot(counts, design, est):
    return 1.0 - _degroot_q(counts, design.size, design.k)


_rules = {
    Family.MLE: _mle,
    Family.BURROWS: _burrows,
    Family.PT_ALPHA: _shrinkage,
    Family.PT_BETA: _shrinkage,
    Family.PT_C: _shrinkage,
    Family.GART: _gart,
    Family.DEGROOT: _degroot,
}

#} END utilities


#{ Interface

def estimate_array(est, design, counts):
    """Apply the estimator to many observed counts of a design at once

    :param counts: sequence or array of non-negative integer counts
    :return: tuple(estimates, clamp_count) - estimates is a float array clipped to [0, 1],
        clamp_count the number of values which had to be clipped
    :raise InvalidCombinationError: if estimator and design use different models
    :raise DegenerateEstimatorError: for the Burrows estimator under model (b) with c = 1"""
    if est.model is not design.model:
        raise InvalidCombinationError("Estimator %s cannot be applied to %r" % (est.label(), design))
    if est.needs_tuning():
        raise DomainError("Estimator %s has no constants yet, tune it for the design first" % est.label())
    # END check combination

    raw = np.asarray(counts)
    if raw.size and (raw.min() < 0 or not np.all(np.equal(np.mod(raw, 1), 0))):
        raise DomainError("counts must be non-negative integers")
    counts = raw.astype(float)
    if design.model is Model.A and counts.size and counts.max() > design.size:
        raise DomainError("count %i exceeds the number of pools n=%i" % (counts.max(), design.size))
    # END check support

    with np.errstate(divide='ignore', invalid='ignore'):
        values = np.array(_rules[est.family](counts, design, est), dtype=float)
    # END ignore boundary warnings
    outside = ~((values >= 0.0) & (values <= 1.0))
    clamp_count = int(np.count_nonzero(outside))
    if clamp_count:
        log.debug("%s on %r clamped %i of %i estimates to [0, 1]", est.label(), design, clamp_count, values.size)
        values = np.clip(np.nan_to_num(values, nan=0.0), 0.0, 1.0)
    # END handle clamping
    return values, clamp_count


def estimate(est, design, count):
    """:return: the estimate of p for one observed count of the design"""
    count = check_count(count)
    values, _ = estimate_array(est, design, [count])
    return float(values[0])


def gart_components(model, p, k, c):
    """:return: GartComponents of model (b) or (c) at p
    :raise SingularityError: if p is 0 or 1"""
    model, p, k, c = _gart_check(model, p, k, c)
    info, info_deriv, third = _gart_terms(model, p, k, c)
    return GartComponents(info=float(info), info_deriv=float(info_deriv), third_deriv_expect=float(third))


def gart_bias(model, p, k, c):
    """:return: the leading term B(p) = -(2 dI/dp + E[l''']) / (2 I(p)**2) of the MLE bias"""
    comps = gart_components(model, p, k, c)
    return _bias_from_terms(comps.info, comps.info_deriv, comps.third_deriv_expect)


def gart_zero_value(model, k, c):
    """:return: value of the Gart estimator for a zero count, where the plug-in correction is undefined.
        Model (b) uses 1 - ((k - 1) / (2kc + k - 1))**(1/k), model (c) uses 0"""
    model = Model.parse(model)
    k = check_positive_int(k, 'k', minimum=2)
    c = check_positive_int(c, 'c')
    if model is Model.B:
        return 1.0 - ((k - 1.0) / (2.0 * k * c + k - 1.0)) ** (1.0 / k)
    if model is Model.C:
        return 0.0
    raise InvalidCombinationError("The Gart correction is only defined under models (b) and (c)")

#} END interface
