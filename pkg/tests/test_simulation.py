"""DGPs, population oracles, and the Monte Carlo driver."""

import numpy as np
import pytest
from scipy.integrate import quad

from almostdom.coefficients import Direction, DominanceFamily
from almostdom.empirical import SamplingScheme
from almostdom.errors import DegenerateCurvesError, DomainError, InvalidConfigError
from almostdom.inference import InferenceConfig
from almostdom.rng import child_rng
from almostdom.simulation import (
    DiscreteLaw,
    DoublePareto,
    MonteCarloStudy,
    monte_carlo,
    population_coefficient,
    run_replicates,
    sample_dgp,
)

MP = SamplingScheme.MATCHED


def sdc_laws(beta):
    first = DiscreteLaw([(0.25, 1 / beta), (1.0, 1 - 1 / beta)])
    second = DiscreteLaw([(0.5, 2 / 3), (0.75, 1 / 3)])
    return first, second


class TestDoublePareto:
    @pytest.mark.parametrize("alpha,beta", [(3.0, 1.5), (2.1, 2.0), (6.0, 0.8)])
    def test_cdf_matches_density_quadrature(self, alpha, beta):
        dp = DoublePareto(alpha, beta) if alpha > 2 else None
        if dp is None:
            with pytest.warns(UserWarning):
                dp = DoublePareto(alpha, beta)
        for x in (0.2, 0.7, 1.0, 1.8, 6.3):
            integral, _ = quad(
                dp.density,
                0.0,
                x,
                points=[min(1.0, x)],
                limit=200,
                epsabs=1e-13,
                epsrel=1e-13,
            )
            assert dp.cdf(x) == pytest.approx(integral, abs=1e-10)

    def test_density_integrates_to_one(self):
        dp = DoublePareto(3.0, 1.5)
        body, _ = quad(dp.density, 0.0, 1.0, limit=200)
        tail, _ = quad(dp.density, 1.0, np.inf, limit=200)
        assert body + tail == pytest.approx(1.0, abs=1e-10)

    def test_quantile_at_junction(self):
        dp = DoublePareto(3.0, 1.5)
        assert dp.quantile(3.0 / 4.5) == pytest.approx(1.0)
        assert dp.quantile(2.0 / 3.0) == pytest.approx(1.0)

    def test_quantile_roundtrip(self):
        dp = DoublePareto(2.1, 2.0)
        rng = child_rng(60, 0)
        for p in rng.random(100):
            if not 0 < p < 1:
                continue
            assert dp.cdf(dp.quantile(p)) == pytest.approx(p, abs=1e-10)

    def test_quantile_strictly_increasing(self):
        dp = DoublePareto(3.0, 1.5)
        p = np.sort(child_rng(61, 0).random(500))
        p = p[(p > 0) & (p < 1)]
        q = dp.quantile(p)
        assert np.all(np.diff(q) > 0)

    def test_quantile_domain(self):
        dp = DoublePareto(3.0, 1.5)
        for p in (0.0, 1.0, -0.1, 1.1):
            with pytest.raises(DomainError):
                dp.quantile(p)

    def test_mean_matches_quantile_integral(self):
        dp = DoublePareto(3.0, 1.5)
        p = (np.arange(1_000_000) + 0.5) / 1_000_000
        assert dp.mean() == pytest.approx(dp.quantile(p).mean(), rel=1e-4)

    def test_cum_quantile_consistency(self):
        dp = DoublePareto(2.1, 3.0)
        assert dp.cum_quantile(1.0) == pytest.approx(dp.mean(), rel=1e-12)
        # closed form vs fine rectangle sums of the quantile
        for p_top in (0.3, 2 / 3, 0.95):
            grid = (np.arange(200_000) + 0.5) / 200_000 * p_top
            riemann = dp.quantile(grid).mean() * p_top
            assert dp.cum_quantile(p_top) == pytest.approx(riemann, rel=1e-4)

    def test_heavy_tail_warns(self):
        with pytest.warns(UserWarning):
            DoublePareto(1.9, 2.0)

    def test_invalid_parameters(self):
        with pytest.raises(ValueError):
            DoublePareto(-1.0, 2.0)


class TestDiscreteLaw:
    def test_probabilities_validated(self):
        with pytest.raises(ValueError):
            DiscreteLaw([(1.0, 0.4), (2.0, 0.5)])
        with pytest.raises(ValueError):
            DiscreteLaw([(1.0, -0.5), (2.0, 1.5)])

    def test_cdf_and_quantile(self):
        law = DiscreteLaw([(0.25, 0.5), (1.0, 0.5)])
        assert law.cdf(0.1) == 0.0
        assert law.cdf(0.25) == 0.5
        assert law.cdf(1.0) == 1.0
        assert law.quantile(0.3) == 0.25
        assert law.quantile(0.5) == 0.25
        assert law.quantile(0.51) == 1.0
        assert law.mean() == pytest.approx(0.625)

    def test_single_atom_sampling(self):
        law = DiscreteLaw([(5.0, 1.0)])
        sample = sample_dgp(law, 3, child_rng(62, 0))
        np.testing.assert_array_equal(sample.values, [5.0, 5.0, 5.0])


class TestSampleDgp:
    def test_seeded_repeat_identical(self):
        dp = DoublePareto(3.0, 1.5)
        a = sample_dgp(dp, 50, child_rng(63, 0)).values
        b = sample_dgp(dp, 50, child_rng(63, 0)).values
        np.testing.assert_array_equal(a, b)

    def test_kolmogorov_distance(self):
        dp = DoublePareto(3.0, 1.5)
        n = 1_000_000
        values = np.sort(sample_dgp(dp, n, child_rng(64, 0)).values)
        cdf_at_points = dp.cdf(values)
        grid = np.arange(1, n + 1) / n
        distance = max(
            np.max(np.abs(cdf_at_points - grid)),
            np.max(np.abs(cdf_at_points - (grid - 1 / n))),
        )
        assert distance < 0.002

    def test_size_validation(self):
        with pytest.raises(ValueError):
            sample_dgp(DoublePareto(3.0, 1.5), 0, child_rng(65, 0))


class TestPopulationCoefficient:
    def test_exact_sdc_fractions(self):
        # hand-derived piecewise values of the step-CDF area ratio
        targets = {8: 3 / 37, 6: 1 / 9, 4: 3 / 17, 2: 3 / 7}
        for beta, target in targets.items():
            first, second = sdc_laws(beta)
            value = population_coefficient(first, second, DominanceFamily.sd(1))
            assert value == pytest.approx(target, abs=1e-12)

    def test_complement_identity(self):
        dp1, dp2 = DoublePareto(3.0, 1.5), DoublePareto(2.1, 3.0)
        for fam in (
            DominanceFamily.lorenz(1),
            DominanceFamily.lorenz(2, Direction.DOWN),
            DominanceFamily.inverse_sd(3),
        ):
            c12 = population_coefficient(dp1, dp2, fam, resolution=20_000)
            c21 = population_coefficient(dp2, dp1, fam, resolution=20_000)
            assert abs(c12 + c21 - 1.0) < 1e-6

    def test_sd_needs_bounded_support(self):
        dp = DoublePareto(3.0, 1.5)
        with pytest.raises(InvalidConfigError):
            population_coefficient(dp, dp, DominanceFamily.sd(1))

    def test_identical_laws_degenerate(self):
        law, _ = sdc_laws(2)
        with pytest.raises(DegenerateCurvesError):
            population_coefficient(law, law, DominanceFamily.sd(1))

    def test_sd_higher_degree_grid_path(self):
        first, second = sdc_laws(2)
        value = population_coefficient(first, second, DominanceFamily.sd(2))
        assert 0.0 <= value <= 1.0


class TestEstimatorConsistency:
    def test_large_sample_tracks_population_value(self):
        # one seeded 100k draw of the heavy-tailed pair lands close to the
        # population coefficient 0.04703
        from almostdom.calculus import GridSpec
        from almostdom.coefficients import coefficient
        from almostdom.empirical import EmpiricalDistribution

        dp1, dp2 = DoublePareto(3.0, 1.5), DoublePareto(2.1, 2.0)
        rng = child_rng(1, 0)
        d1 = EmpiricalDistribution(dp1.sample(100_000, rng))
        d2 = EmpiricalDistribution(dp2.sample(100_000, rng))
        c_hat = coefficient(DominanceFamily.lorenz(1), d1, d2, GridSpec(1000)).c_hat
        assert abs(c_hat - 0.04703) < 0.01


class TestMonteCarlo:
    def study(self, n_reps, seed=77, n=60, boot=40):
        first, second = sdc_laws(4)
        cfg = InferenceConfig(t_n=0.001, seed=seed, n_boot=boot)
        return MonteCarloStudy(
            dgp1=first,
            dgp2=second,
            family=DominanceFamily.sd(1),
            scheme=MP,
            sizes=(n, n),
            cfg=cfg,
            n_reps=n_reps,
            true_c=population_coefficient(first, second, DominanceFamily.sd(1)),
            grid_points=200,
        )

    def test_single_rep_report(self):
        study = self.study(1)
        report = monte_carlo(study)
        estimates, covered = run_replicates(study)
        assert report.mean == estimates[0]
        assert report.se == 0.0
        assert report.cr in (0.0, 1.0)
        assert report.cr == float(covered[0])

    def test_prefix_stability(self):
        short = self.study(5)
        long = self.study(10)
        est_short, cov_short = run_replicates(short)
        est_long, cov_long = run_replicates(long)
        np.testing.assert_array_equal(est_short, est_long[:5])
        np.testing.assert_array_equal(cov_short, cov_long[:5])

    def test_parallel_matches_serial(self):
        study = self.study(6)
        est_serial, cov_serial = run_replicates(study, n_jobs=1)
        est_par, cov_par = run_replicates(study, n_jobs=2)
        np.testing.assert_array_equal(est_serial, est_par)
        np.testing.assert_array_equal(cov_serial, cov_par)

    def test_error_decomposition(self):
        report = monte_carlo(self.study(12))
        assert report.rmse**2 == pytest.approx(
            report.bias**2 + report.se**2, abs=1e-9
        )

    def test_matched_needs_equal_sizes(self):
        first, second = sdc_laws(2)
        cfg = InferenceConfig(t_n=0.1, seed=0)
        with pytest.raises(InvalidConfigError):
            MonteCarloStudy(
                dgp1=first,
                dgp2=second,
                family=DominanceFamily.sd(1),
                scheme=MP,
                sizes=(10, 20),
                cfg=cfg,
                n_reps=2,
                true_c=0.4,
            )
