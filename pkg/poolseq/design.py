"""Module with the sampling plan definitions, their expected amount of pooled tests and
the budgeted choice of c"""
import enum
import logging
import math
import numbers

from .dist import Kind, OutcomeDistribution
from .exc import DomainError, InfeasibleDesignError, InfiniteExpectationError
from .util import check_positive_int, check_probability

__all__ = ["Model", "Design", "Budget", "success_prob", "expected_tests", "select_c",
           "design_for_budget", "designs_for_budget"]

log = logging.getLogger(__name__)


class Model(enum.Enum):

    """The three sampling plans"""
    A = 'a'     # fixed amount n of pools, observe positives x
    B = 'b'     # test until the c-th positive pool, observe negatives y
    C = 'c'     # test until the c-th negative pool, observe positives z

    @classmethod
    def parse(cls, value):
        """:return: Model from a Model instance or one of 'a', 'b', 'c' (any case)"""
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise DomainError("Unknown model %r, expected one of a, b, c" % (value,))
        # END handle unknown model

    def kind(self):
        """:return: the outcome distribution kind induced by this plan"""
        return _kinds[self]


_kinds = {
    Model.A: Kind.FIXED_BINOMIAL,
    Model.B: Kind.NEGBIN_POSITIVES,
    Model.C: Kind.NEGBIN_NEGATIVES,
}


class Design(object):

    """A sampling plan instance: a model with pools of k units and its size parameter,
    which is n for model (a) and c for models (b) and (c)"""
    __slots__ = (
        'model',    # one of Model
        'k',        # pool size, at least 2
        'size',     # n or c
    )

    def __init__(self, model, k, size):
        self.model = Model.parse(model)
        self.k = check_positive_int(k, 'k', minimum=2)
        self.size = check_positive_int(size, 'n' if self.model is Model.A else 'c')

    def __repr__(self):
        return "Design(%s, k=%i, %s=%i)" % (self.model.value, self.k, self.size_name(), self.size)

    def __eq__(self, rhs):
        if not isinstance(rhs, Design):
            return NotImplemented
        return (self.model, self.k, self.size) == (rhs.model, rhs.k, rhs.size)

    def __ne__(self, rhs):
        res = self.__eq__(rhs)
        return res if res is NotImplemented else not res

    def __hash__(self):
        return hash((self.model, self.k, self.size))

    #{ Constructors

    @classmethod
    def fixed(cls, n, k):
        return cls(Model.A, k, n)

    @classmethod
    def inverse_positive(cls, c, k):
        return cls(Model.B, k, c)

    @classmethod
    def inverse_negative(cls, c, k):
        return cls(Model.C, k, c)

    #} END constructors

    #{ Interface

    def size_name(self):
        """:return: 'n' for the fixed plan, 'c' otherwise"""
        return 'n' if self.model is Model.A else 'c'

    def with_size(self, size):
        """:return: a copy of this design with another n or c"""
        return type(self)(self.model, self.k, size)

    def distribution(self, p):
        """:return: OutcomeDistribution of the observed statistic at unit prevalence p"""
        return OutcomeDistribution.from_pool(self.model.kind(), self.size, self.k, p)

    #} END interface


class Budget(object):

    """An upper bound on the expected amount of pooled tests"""
    __slots__ = ('target_en',)

    def __init__(self, target_en):
        if isinstance(target_en, Budget):
            target_en = target_en.target_en
        if not isinstance(target_en, numbers.Real) or not math.isfinite(target_en) or target_en < 1:
            raise DomainError("The expected test budget must be a finite number >= 1, got %r" % (target_en,))
        self.target_en = float(target_en)

    def __repr__(self):
        return "Budget(%g)" % self.target_en


#{ Utilities

def _log_q_k(k, p):
    """:return: log((1 - p)**k)"""
    if p == 1.0:
        return -math.inf
    return k * math.log1p(-p)


def _stop_prob(model, k, p):
    """:return: probability of the pooled outcome that ends a sequential plan"""
    if model is Model.B:
        return -math.expm1(_log_q_k(k, p))
    return math.exp(_log_q_k(k, p))


def _expected_tests(model, k, size, p):
    if model is Model.A:
        return float(size)
    stop = _stop_prob(model, k, p)
    if stop == 0.0:
        raise InfiniteExpectationError("Model (%s) with k=%i never stops at p=%r" % (model.value, k, p))
    return size / stop

#} END utilities


#{ Interface

def success_prob(design, p):
    """:return: probability 1 - (1 - p)**k that a pool of the design tests positive"""
    p = check_probability(p)
    return -math.expm1(_log_q_k(design.k, p))


def expected_tests(design, p):
    """:return: expected amount of pooled tests, n for model (a), c / (1 - q**k) for model (b)
        and c / q**k for model (c)
    :raise InfiniteExpectationError: for p = 0 under model (b) and p = 1 under model (c)"""
    p = check_probability(p)
    return _expected_tests(design.model, design.k, design.size, p)


def select_c(model, k, p, budget):
    """:return: the largest c >= 1 whose expected amount of pooled tests does not exceed the budget
    :param model: Model.B or Model.C
    :raise InfeasibleDesignError: if already c = 1 exceeds the budget"""
    model = Model.parse(model)
    if model is Model.A:
        raise DomainError("c is only defined for the sequential models (b) and (c)")
    k = check_positive_int(k, 'k', minimum=2)
    p = check_probability(p, open_interval=True)
    target = Budget(budget).target_en

    c = int(math.floor(target * _stop_prob(model, k, p)))
    # the closed form may be off by one where target * stop is within rounding of an integer
    while _expected_tests(model, k, c + 1, p) <= target:
        c += 1
    while c >= 1 and _expected_tests(model, k, c, p) > target:
        c -= 1
    # END fix rounding

    if c < 1:
        raise InfeasibleDesignError("Model (%s) with k=%i at p=%r needs E(N)=%g > %g already for c=1"
                                    % (model.value, k, p, _expected_tests(model, k, 1, p), target))
    return c


def design_for_budget(model, k, p, budget):
    """:return: Design with pool size k that exhausts the budget as far as possible:
        n = floor(E(N)) for model (a), select_c(...) otherwise
    :raise InfeasibleDesignError: if no design with pool size k fits the budget"""
    model = Model.parse(model)
    if model is Model.A:
        return Design(model, k, int(math.floor(Budget(budget).target_en)))
    return Design(model, k, select_c(model, k, p, budget))


def designs_for_budget(model, p, budget, k_range=(2, 50)):
    """Generate the budgeted designs of a pool size grid, in ascending order of k

    :param k_range: inclusive (first, last) pool sizes
    :return: iterator of tuple(k, design, reason) - design is None and reason names the cause
        if pool size k cannot satisfy the budget"""
    first, last = k_range
    for k in range(first, last + 1):
        try:
            yield k, design_for_budget(model, k, p, budget), None
        except InfeasibleDesignError as err:
            log.debug("skipping k=%i: %s", k, err)
            yield k, None, str(err)
        # END handle infeasible pool size
    # END for each pool size

#} END interface
