"""Module assembling the relative bias and MSE comparison tables

A table holds one row per (estimator, p) cell: the estimator's best pool size for the
expected test budget, found by :func:`poolseq.search.best_k`, along with its exact
performance there."""
import enum
import logging

import pandas as pd

from .design import Budget, Model
from .estim import Estimator, Family
from .evaluate import DEFAULT_EPSILON
from .exc import DomainError, OutputError, PoolSeqError
from .search import DEFAULT_K_RANGE, best_k
from .util import check_probability

__all__ = ["TableId", "TableSpec", "COLUMNS", "default_rows", "build_table", "write_table"]

log = logging.getLogger(__name__)

#{ Configuration

#: prevalences the tables are computed for
DEFAULT_P_GRID = (0.01, 0.05, 0.1, 0.2, 0.3, 0.5)

#: upper bounds p0 the shrinkage rows are tuned at
PT_BOUNDS = (0.01, 0.1, 0.5)

#: upper end of the beta axis the shrinkage rows are tuned on
TABLE_BETA_MAX = 200.0

#: csv columns, in order
COLUMNS = ('estimator', 'model', 'p', 'target_en', 'k_star', 'c_star', 'actual_en', 'bias', 'rel_bias_pct',
           'mse', 'mse_x1e4', 'truncation_bound', 'tail_mass', 'clamp_count')

_INT_COLUMNS = ('k_star', 'c_star', 'truncation_bound', 'clamp_count')

#: printf style format of all floating point cells
FLOAT_FORMAT = '%.6g'

#} END configuration


class TableId(enum.Enum):

    """The four comparison tables, named by metric and expected test budget"""
    RB25 = 'rb25'
    RB100 = 'rb100'
    MSE25 = 'mse25'
    MSE100 = 'mse100'

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise DomainError("Unknown table %r, expected one of %s" % (value, ', '.join(t.value for t in cls)))
        # END handle unknown table

    def target_en(self):
        return 25.0 if self.value.endswith('25') else 100.0

    def is_mse(self):
        return self.value.startswith('mse')


def default_rows(table_id):
    """:return: list of Estimator rows of the given table, in print order

    The relative bias tables list the MLE, Burrows, shrinkage and Gart rows; the MSE tables add
    the Degroot estimator, whose bias is zero."""
    table_id = TableId.parse(table_id)
    rows = [Estimator(Family.MLE, model) for model in Model]
    rows.extend(Estimator(Family.BURROWS, model) for model in Model)
    for model in (Model.B, Model.C):
        rows.extend(Estimator(Family.PT_C, model, p0=p0) for p0 in PT_BOUNDS)
    # END for each sequential model
    rows.extend(Estimator(Family.GART, model) for model in (Model.B, Model.C))
    if table_id.is_mse():
        rows.append(Estimator(Family.DEGROOT, Model.C))
    return rows


class TableSpec(object):

    """Everything needed to compute one table"""
    __slots__ = (
        'table_id',
        'p_grid',
        'target_en',
        'estimator_rows',
        'epsilon',
        'k_range',
        'beta_max',
    )

    def __init__(self, table_id, p_grid=DEFAULT_P_GRID, target_en=None, estimator_rows=None,
                 epsilon=DEFAULT_EPSILON, k_range=DEFAULT_K_RANGE, beta_max=TABLE_BETA_MAX):
        self.table_id = TableId.parse(table_id)
        self.p_grid = tuple(check_probability(p, open_interval=True) for p in p_grid)
        self.target_en = Budget(self.table_id.target_en() if target_en is None else target_en).target_en
        self.estimator_rows = list(default_rows(self.table_id) if estimator_rows is None else estimator_rows)
        self.epsilon = epsilon
        self.k_range = tuple(k_range)
        if not beta_max >= 1.0:
            raise DomainError("beta_max must be >= 1, got %r" % (beta_max,))
        self.beta_max = float(beta_max)

    def __repr__(self):
        return "TableSpec(%s, p_grid=%r, target_en=%g, rows=%i, epsilon=%g, k_range=%r, beta_max=%g)" % (
            self.table_id.value, self.p_grid, self.target_en, len(self.estimator_rows), self.epsilon,
            self.k_range, self.beta_max)


#{ Interface

def build_table(spec):
    """Compute all cells of a table

    Cells without any usable pool size keep their estimator, model, p and budget, all other
    columns are left empty.

    :return: pandas.DataFrame with the columns of COLUMNS, one row per (estimator, p) in row-major order"""
    records = []
    for est in spec.estimator_rows:
        for p in spec.p_grid:
            record = dict.fromkeys(COLUMNS)
            record.update(estimator=est.label(), model=est.model.value, p=p, target_en=spec.target_en)
            try:
                outcome = best_k(est, est.model, p, spec.target_en, k_range=spec.k_range, epsilon=spec.epsilon,
                                 beta_max=spec.beta_max)
            except PoolSeqError as err:
                log.warning("%s at p=%g has no value in table %s: %s", est.label(), p, spec.table_id.value, err)
                records.append(record)
                continue
            # END handle empty cell
            res = outcome.result
            record.update(k_star=outcome.k_star, c_star=outcome.c_star, actual_en=res.expected_n, bias=res.bias,
                          rel_bias_pct=res.rel_bias_pct, mse=res.mse, mse_x1e4=res.mse_x1e4,
                          truncation_bound=res.truncation_bound, tail_mass=res.tail_mass,
                          clamp_count=res.clamp_count)
            log.debug("%s p=%g: k=%i %s", est.label(), p, outcome.k_star, res)
            records.append(record)
        # END for each prevalence
    # END for each row

    df = pd.DataFrame.from_records(records, columns=list(COLUMNS))
    for name in COLUMNS[2:]:
        df[name] = df[name].astype('Int64' if name in _INT_COLUMNS else float)
    # END for each numeric column
    return df


def write_table(df, path):
    """Write a table as csv with 6 significant digits and '\\n' line endings

    :raise OutputError: if the file could not be written"""
    try:
        df.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator='\n', na_rep='')
    except OSError as err:
        raise OutputError("Could not write table to %s: %s" % (path, err))
    # END handle io errors

#} END interface
