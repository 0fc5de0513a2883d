import numpy as np

from .lib import TestBase

from poolseq.design import Design, Model, design_for_budget
from poolseq.estim import Estimator, Family
from poolseq.evaluate import evaluate
from poolseq.exc import DomainError, InfeasibleDesignError, InvalidCombinationError, NoFeasibleDesignError
from poolseq.search import best_k, compare, optimize_pt


class TestSearch(TestBase):

    def test_singleton_range(self):
        res = best_k(Estimator('mle', 'a'), Model.A, 0.1, 25, k_range=(2, 2))
        self.assertEqual(res.k_star, 2)
        self.assertEqual(res.c_star, 25)
        self.assertEqual(res.feasible_k_count, 1)
        self.assertEqual(res.skipped_k, [])
        self.assertEqual(res.estimator, 'mle(a)')
        assert res.pt_params is None

    def test_true_argmin(self):
        for est, p, target in ((Estimator('mle', 'a'), 0.1, 25), (Estimator('burrows', 'c'), 0.2, 25),
                               (Estimator('degroot', 'c'), 0.05, 100)):
            res = best_k(est, est.model, p, target, k_range=(2, 20))
            self.assertEqual(res, best_k(est, est.model, p, target, k_range=(2, 20)))
            for k in range(2, 21):
                try:
                    design = design_for_budget(est.model, k, p, target)
                except InfeasibleDesignError:
                    continue
                # END skip infeasible
                mse = evaluate(est, design, p).mse
                assert mse >= res.result.mse
                if k < res.k_star:
                    # ties go to the smaller pool size
                    assert mse > res.result.mse
            # END for each pool size
        # END for each case

    def test_skipped_pool_sizes(self):
        res = best_k(Estimator('burrows', 'b'), Model.B, 0.1, 5, k_range=(2, 6))
        self.assertEqual([k for k, _ in res.skipped_k], [2, 3, 4])
        self.assertEqual(res.feasible_k_count, 2)
        assert res.k_star in (5, 6)
        for _, reason in res.skipped_k:
            assert reason
        # END for each skipped size

        self.assertRaises(NoFeasibleDesignError, best_k, Estimator('mle', 'c'), Model.C, 0.5, 2, (10, 12))
        self.assertRaises(InvalidCombinationError, best_k, Estimator('mle', 'c'), Model.B, 0.5, 25)
        self.assertRaises(DomainError, best_k, Estimator('mle', 'c'), Model.C, 0.5, 25, (1, 5))
        self.assertRaises(DomainError, best_k, Estimator('mle', 'c'), Model.C, 0.5, 25, (5, 4))

    def test_optimize_pt(self):
        design = Design.inverse_positive(5, 2)
        mle_mse = evaluate(Estimator('mle', 'b'), design, 0.1).mse
        for family in ('alpha', 'beta', 'c'):
            params = optimize_pt(family, 'b', 2, 5, 0.1)
            self.assertEqual(params, optimize_pt(family, Model.B, 2, 5, 0.1))
            self.assertEqual((params.k, params.c, params.p0), (2, 5, 0.1))
            if params.alpha is not None:
                assert 0.0 <= params.alpha <= 1.0
            if params.beta is not None:
                assert 1.0 <= params.beta <= 50.0
            # END check box
            self.assertEqual(params.alpha is None, family == 'beta')
            self.assertEqual(params.beta is None, family == 'alpha')
        # END for each family

        # alpha = 1 is the MLE, which shrinking can only improve on
        params = optimize_pt(Family.PT_ALPHA, Model.B, 2, 5, 0.1)
        assert params.achieved_mse <= mle_mse * (1.0 + 1e-9)

        self.assertRaises(InvalidCombinationError, optimize_pt, 'c', 'a', 2, 5, 0.1)
        self.assertRaises(DomainError, optimize_pt, 'mle', 'b', 2, 5, 0.1)
        self.assertRaises(DomainError, optimize_pt, 'c', 'b', 2, 5, 0.0)
        self.assertRaises(DomainError, optimize_pt, 'c', 'b', 2, 5, 0.1, beta_max=0.5)

    def test_tuned_params_are_not_shared(self):
        first = optimize_pt('c', 'c', 3, 4, 0.2)
        alpha, beta = first.alpha, first.beta
        first.alpha = first.beta = -1.0
        second = optimize_pt('c', 'c', 3, 4, 0.2)
        assert second is not first
        self.assertEqual((second.alpha, second.beta), (alpha, beta))

        res = best_k(Estimator('pt-c', 'c', p0=0.2), Model.C, 0.2, 25, k_range=(2, 3))
        res.pt_params.beta = -1.0
        again = best_k(Estimator('pt-c', 'c', p0=0.2), Model.C, 0.2, 25, k_range=(2, 3))
        assert again.pt_params.beta >= 1.0

    def test_refinement_matches_dense_scan(self):
        for family, model, k, c, p0 in (('beta', Model.B, 2, 5, 0.1), ('alpha', Model.C, 3, 4, 0.2),
                                        ('c', Model.C, 3, 4, 0.2)):
            refined = optimize_pt(family, model, k, c, p0)
            dense = optimize_pt(family, model, k, c, p0, stages=1, points=501)
            assert refined.achieved_mse <= dense.achieved_mse + 1e-6
        # END for each case

    def test_shrinkage_rows_are_tuned_per_design(self):
        est = Estimator('pt-c', 'b', p0=0.1)
        res = best_k(est, Model.B, 0.1, 25, k_range=(2, 4))
        params = res.pt_params
        self.assertEqual((params.k, params.c), (res.k_star, res.c_star))
        self.assertEqual(params.p0, 0.1)
        tuned = est.tuned(params.alpha, params.beta)
        design = Design(Model.B, res.k_star, res.c_star)
        self.assertEqual(evaluate(tuned, design, 0.1), res.result)

    def test_compare(self):
        rows = [Estimator('mle', 'b'), Estimator('burrows', 'b'), Estimator('degroot', 'c')]
        res = compare(rows, 0.5, 1.5, k_range=(2, 3))
        self.assertEqual([est for est, _ in res], rows)
        self.assertEqual(res[0][1].estimator, 'mle(b)')
        self.assertEqual(res[0][1].c_star, 1)
        assert np.isfinite(res[0][1].result.mse)
        # c is 1 for every pool size under model (b), where Burrows is constant
        assert isinstance(res[1][1], NoFeasibleDesignError)
        self.assertEqual(len(res[1][1].args), 1)
        # not even c = 1 fits the budget under model (c)
        assert isinstance(res[2][1], NoFeasibleDesignError)
