"""Command line interface

Single records are printed to stdout as json, tables are written as csv files. Failures are
reported on stderr as ``{"error": CODE, "message": ...}`` and the process exits with the
``exit_status`` of the error: 2 for invalid input, 3 for infeasible designs, 4 for
degenerate estimators and 5 for io errors."""
import argparse
import json
import logging
import os
import sys

from . import __version__
from .design import Design, Model, expected_tests
from .estim import Estimator, estimate
from .evaluate import DEFAULT_EPSILON, evaluate
from .exc import DomainError, InfiniteExpectationError, OutputError, PoolSeqError
from .montecarlo import SimConfig, simulate_estimator
from .search import DEFAULT_BETA_MAX, DEFAULT_K_RANGE, best_k, compare, optimize_pt
from .tables import DEFAULT_P_GRID, TABLE_BETA_MAX, TableId, TableSpec, build_table, default_rows, write_table
from .util import to_jsonable

__all__ = ["main", "make_parser"]

log = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):

    """Reports usage errors like any other invalid input"""

    def error(self, message):
        raise DomainError("%s: %s" % (self.prog, message))


#{ Utilities

def _emit(obj, stream=None):
    stream = sys.stdout if stream is None else stream
    stream.write(json.dumps(to_jsonable(obj), indent=2) + '\n')


def _design(args):
    """:return: Design from the --model, --k and --n or --c flags"""
    model = Model.parse(args.model)
    size = args.n if model is Model.A else args.c
    if size is None:
        raise DomainError("Model (%s) needs --%s" % (model.value, 'n' if model is Model.A else 'c'))
    return Design(model, args.k, size)


def _estimator(args, design=None):
    """:return: Estimator from the flags, tuned for the design if it is an untuned shrinkage estimator"""
    est = Estimator(args.estimator, args.model, getattr(args, 'alpha', None), getattr(args, 'beta', None),
                    getattr(args, 'p0', None))
    if design is not None and est.needs_tuning():
        params = optimize_pt(est.family, design.model, design.k, design.size, est.p0)
        est = est.tuned(params.alpha, params.beta)
    # END tune for design
    return est


def _add_design_args(parser):
    parser.add_argument('--model', required=True, choices=[m.value for m in Model])
    parser.add_argument('--k', required=True, type=int, help="pool size")
    parser.add_argument('--n', type=int, help="amount of pools of model (a)")
    parser.add_argument('--c', type=int, help="stopping count of models (b) and (c)")


def _add_estimator_args(parser):
    parser.add_argument('--estimator', required=True,
                        help="mle, burrows, pt-alpha, pt-beta, pt-c, gart or degroot")
    parser.add_argument('--alpha', type=float, help="shrinkage factor of pt-alpha and pt-c")
    parser.add_argument('--beta', type=float, help="offset of pt-beta and pt-c")
    parser.add_argument('--p0', type=float, help="upper bound on p to tune shrinkage estimators at")


def _k_range(args):
    return (args.kmin, args.kmax)

#} END utilities


#{ Commands

def cmd_estimate(args):
    design = _design(args)
    est = _estimator(args, design)
    value = estimate(est, design, args.count)
    try:
        expected_n = expected_tests(design, value)
    except InfiniteExpectationError:
        expected_n = None
    # END handle endless plans
    _emit(dict(estimator=est.label(), alpha=est.alpha, beta=est.beta, model=design.model, k=design.k,
               size=design.size, count=args.count, estimate=value, expected_n=expected_n))


def cmd_evaluate(args):
    design = _design(args)
    est = _estimator(args, design)
    res = evaluate(est, design, args.p, args.epsilon)
    _emit(dict(estimator=est.label(), alpha=est.alpha, beta=est.beta, model=design.model, k=design.k,
               size=design.size, p=args.p, result=res))


def cmd_table(args):
    tables = list(TableId) if args.table == 'all' else [TableId.parse(args.table)]
    p_grid = args.p or DEFAULT_P_GRID
    if args.table == 'all':
        try:
            os.makedirs(args.out, exist_ok=True)
        except OSError as err:
            raise OutputError("Could not create directory %s: %s" % (args.out, err))
        # END handle io errors
    # END prepare directory

    for table_id in tables:
        spec = TableSpec(table_id, p_grid=p_grid, epsilon=args.epsilon, k_range=_k_range(args),
                         beta_max=args.beta_max)
        path = os.path.join(args.out, table_id.value + '.csv') if args.table == 'all' else args.out
        log.info("computing %r into %s", spec, path)
        write_table(build_table(spec), path)
    # END for each table


def cmd_search(args):
    est = _estimator(args)
    _emit(best_k(est, est.model, args.p, args.en, k_range=_k_range(args), epsilon=args.epsilon,
                 beta_max=args.beta_max))


def cmd_ptopt(args):
    _emit(optimize_pt(args.family, args.model, args.k, args.c, args.p0, beta_max=args.beta_max,
                      epsilon=args.epsilon))


def cmd_compare(args):
    res = []
    for est, outcome in compare(default_rows(args.table), args.p, args.en, k_range=_k_range(args),
                                epsilon=args.epsilon, beta_max=args.beta_max):
        if isinstance(outcome, PoolSeqError):
            res.append(dict(estimator=est.label(), error=dict(code=outcome.code, message=str(outcome))))
        else:
            res.append(dict(estimator=est.label(), outcome=outcome))
        # END handle failed rows
    # END for each row
    _emit(res)


def cmd_simulate(args):
    design = _design(args)
    est = _estimator(args, design)
    cfg = SimConfig(args.reps, args.seed, args.max_steps, args.batch_size)
    _emit(simulate_estimator(est, design, args.p, cfg))

#} END commands


def make_parser():
    """:return: the ArgumentParser of all subcommands"""
    parser = _Parser(prog='poolseq', description="Compare prevalence estimators for pooled sequential testing")
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    parser.add_argument('-v', '--verbose', action='count', default=0, help="log more, may be repeated")
    sub = parser.add_subparsers(dest='command', metavar='COMMAND', parser_class=_Parser)
    sub.required = True

    def add_command(name, func, help_text):
        cmd = sub.add_parser(name, help=help_text, description=help_text)
        cmd.set_defaults(func=func)
        return cmd

    def add_search_args(cmd):
        cmd.add_argument('--p', required=True, type=float, help="true prevalence")
        cmd.add_argument('--en', required=True, type=float, help="expected test budget E(N)")
        cmd.add_argument('--kmin', type=int, default=DEFAULT_K_RANGE[0])
        cmd.add_argument('--kmax', type=int, default=DEFAULT_K_RANGE[1])

    def add_epsilon(cmd):
        cmd.add_argument('--epsilon', type=float, default=DEFAULT_EPSILON, help="tail mass left out of the sums")

    cmd = add_command('estimate', cmd_estimate, "Estimate p from one observed count")
    _add_design_args(cmd)
    _add_estimator_args(cmd)
    cmd.add_argument('--count', required=True, type=int, help="observed x, y or z")

    cmd = add_command('evaluate', cmd_evaluate, "Exact bias and MSE of an estimator on a design")
    _add_design_args(cmd)
    _add_estimator_args(cmd)
    cmd.add_argument('--p', required=True, type=float)
    add_epsilon(cmd)

    cmd = add_command('table', cmd_table, "Write a comparison table as csv")
    cmd.add_argument('--table', required=True, choices=[t.value for t in TableId] + ['all'])
    cmd.add_argument('--out', required=True, help="csv file, or a directory for --table all")
    cmd.add_argument('--p', action='append', type=float, help="prevalence to compute, may be repeated")
    cmd.add_argument('--kmin', type=int, default=DEFAULT_K_RANGE[0])
    cmd.add_argument('--kmax', type=int, default=DEFAULT_K_RANGE[1])
    cmd.add_argument('--beta-max', type=float, default=TABLE_BETA_MAX, help="beta cap of the shrinkage rows")
    add_epsilon(cmd)

    cmd = add_command('search', cmd_search, "Find the pool size with the smallest MSE")
    _add_estimator_args(cmd)
    cmd.add_argument('--model', required=True, choices=[m.value for m in Model])
    cmd.add_argument('--beta-max', type=float, default=DEFAULT_BETA_MAX)
    add_search_args(cmd)
    add_epsilon(cmd)

    cmd = add_command('ptopt', cmd_ptopt, "Tune a shrinkage estimator at an upper bound p0")
    cmd.add_argument('--family', required=True, choices=['alpha', 'beta', 'c'])
    cmd.add_argument('--model', required=True, choices=[Model.B.value, Model.C.value])
    cmd.add_argument('--k', required=True, type=int)
    cmd.add_argument('--c', required=True, type=int)
    cmd.add_argument('--p0', required=True, type=float)
    cmd.add_argument('--beta-max', type=float, default=DEFAULT_BETA_MAX)
    add_epsilon(cmd)

    cmd = add_command('compare', cmd_compare, "Search all rows of a table at one prevalence")
    cmd.add_argument('--table', default=TableId.MSE25.value, choices=[t.value for t in TableId],
                     help="table whose rows are compared")
    cmd.add_argument('--beta-max', type=float, default=TABLE_BETA_MAX, help="beta cap of the shrinkage rows")
    add_search_args(cmd)
    add_epsilon(cmd)

    cmd = add_command('simulate', cmd_simulate, "Monte Carlo bias and MSE of an estimator on a design")
    _add_design_args(cmd)
    _add_estimator_args(cmd)
    cmd.add_argument('--p', required=True, type=float)
    cmd.add_argument('--reps', required=True, type=int, help="amount of replicates")
    cmd.add_argument('--seed', required=True, type=int)
    cmd.add_argument('--max-steps', type=int, default=SimConfig.default_max_steps)
    cmd.add_argument('--batch-size', type=int, default=SimConfig.default_batch_size)

    return parser


def main(argv=None):
    """Run the command line

    :return: process exit status"""
    try:
        args = make_parser().parse_args(argv)
        logging.basicConfig(level=max(logging.DEBUG, logging.WARNING - 10 * args.verbose), stream=sys.stderr,
                            format="%(levelname)s %(name)s: %(message)s")
        args.func(args)
    except PoolSeqError as err:
        _emit(dict(error=err.code, message=str(err)), sys.stderr)
        return err.exit_status
    except OSError as err:
        _emit(dict(error=OutputError.code, message=str(err)), sys.stderr)
        return OutputError.exit_status
    # END handle errors
    return 0
