"""Module with system exceptions"""

__all__ = ["PoolSeqError", "DomainError", "DegenerateDistributionError", "TruncationError",
           "InfiniteExpectationError", "SingularityError", "InvalidCombinationError",
           "InfeasibleDesignError", "NoFeasibleDesignError", "DegenerateEstimatorError",
           "OutputError", "StepLimitError"]


class PoolSeqError(Exception):

    """Base class for all exceptions thrown by poolseq

    Every subclass names a machine-readable ``code`` and the ``exit_status``
    the command line uses when the error reaches it."""
    code = 'ERROR'
    exit_status = 1


class DomainError(PoolSeqError, ValueError):

    """Thrown if an argument lies outside the domain of an operation, like a count outside
    the support of a distribution or a pool size below 2"""
    code = 'INVALID_INPUT'
    exit_status = 2


class DegenerateDistributionError(PoolSeqError):

    """Thrown if a negative binomial outcome distribution has theta in {0, 1}"""
    code = 'DEGENERATE_DISTRIBUTION'
    exit_status = 2


class TruncationError(DegenerateDistributionError):

    """Thrown if the tail of a distribution cannot be cut within the configured support cap"""
    code = 'TRUNCATION_LIMIT'


class InfiniteExpectationError(PoolSeqError):

    """Thrown if the expected number of pooled tests of a design is infinite"""
    code = 'INFINITE_EXPECTATION'
    exit_status = 2


class SingularityError(PoolSeqError):

    """Thrown if the Gart bias components are requested at p in {0, 1}"""
    code = 'SINGULARITY'
    exit_status = 2


class InvalidCombinationError(PoolSeqError, ValueError):

    """Thrown if an estimator family is paired with a model it is not defined for"""
    code = 'INVALID_COMBINATION'
    exit_status = 2


class InfeasibleDesignError(PoolSeqError):

    """Thrown if not even the smallest design fits into the expected test budget"""
    code = 'INFEASIBLE_DESIGN'
    exit_status = 3


class NoFeasibleDesignError(InfeasibleDesignError):

    """Thrown if no pool size of a search grid yields a usable design"""
    code = 'NO_FEASIBLE_DESIGN'


class DegenerateEstimatorError(PoolSeqError):

    """Thrown if an estimator is constant on the whole support, e.g. Burrows under model (b) with c = 1"""
    code = 'DEGENERATE_ESTIMATOR'
    exit_status = 4


class OutputError(PoolSeqError):

    """Thrown if results could not be written"""
    code = 'IO_ERROR'
    exit_status = 5


class StepLimitError(PoolSeqError):

    """Thrown if a simulated sampling plan did not stop within the allowed amount of pooled tests"""
    code = 'STEP_LIMIT'
    exit_status = 2
