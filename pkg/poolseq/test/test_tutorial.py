from .lib import TestBase


class TestTutorial(TestBase):

    def test_example(self):
        # Designs
        ##########
        import poolseq
        # test pools of 4 units until the 10th negative pool, observe the positive pools
        design = poolseq.Design.inverse_negative(10, 4)

        # the expected amount of pooled tests depends on the prevalence
        assert poolseq.expected_tests(design, 0.05) > 10

        # for a budget of expected tests, the largest c which fits is chosen
        c = poolseq.select_c(poolseq.Model.C, 4, 0.05, 25)
        assert poolseq.expected_tests(design.with_size(c), 0.05) <= 25

        # Estimators
        #############
        # estimators are bound to the model of the design they apply to
        mle = poolseq.Estimator('mle', 'c')
        degroot = poolseq.Estimator('degroot', 'c')
        assert poolseq.estimate(mle, design, 0) == 0.0
        assert 0.0 < poolseq.estimate(mle, design, 3) < 1.0
        assert poolseq.estimate(degroot, design, 3) != poolseq.estimate(mle, design, 3)

        # shrinkage estimators are tuned for a design at an upper bound p0 of the prevalence
        shrunk = poolseq.Estimator('pt-alpha', 'c', p0=0.1)
        params = poolseq.optimize_pt(shrunk.family, 'c', design.k, design.size, shrunk.p0)
        shrunk = shrunk.tuned(params.alpha, params.beta)

        # Evaluation
        #############
        # bias and MSE are exact sums over the support, up to a tail mass of epsilon
        res = poolseq.evaluate(degroot, design, 0.05)
        assert abs(res.bias) < 1e-5
        assert res.tail_mass <= 1e-6
        assert poolseq.evaluate(shrunk, design, 0.1).mse <= poolseq.evaluate(mle, design, 0.1).mse * (1 + 1e-9)

        # Searching pool sizes
        #######################
        outcome = poolseq.best_k(mle, poolseq.Model.C, 0.05, 25, k_range=(2, 10))
        assert 2 <= outcome.k_star <= 10
        assert outcome.feasible_k_count + len(outcome.skipped_k) == 9

        # Monte Carlo
        ##############
        # an independent check which simulates every unit of every pool
        cfg = poolseq.SimConfig(replicates=20000, seed=42)
        summary = poolseq.simulate_estimator(degroot, design, 0.05, cfg)
        assert abs(summary.emp_bias) <= 4 * summary.se_bias
