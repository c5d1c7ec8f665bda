"""Does the 95% interval actually cover 95% of the time?

A small coverage study on a discrete stochastic-dominance comparison
whose true coefficient is known exactly (3/37). Each replicate draws a
fresh dataset, builds the interval, and records whether it covers the
truth. Scaled down to desk size; push reps and boot up toward 1000 for
study-grade numbers.
"""

import time

from almostdom import (
    DiscreteLaw,
    DominanceFamily,
    InferenceConfig,
    MonteCarloStudy,
    SamplingScheme,
    monte_carlo,
    population_coefficient,
)

first = DiscreteLaw([(0.25, 1 / 8), (1.0, 7 / 8)])
second = DiscreteLaw([(0.5, 2 / 3), (0.75, 1 / 3)])
family = DominanceFamily.sd(1)
truth = population_coefficient(first, second, family)
print(f"true coefficient: {truth:.6f} (= 3/37)")

study = MonteCarloStudy(
    dgp1=first,
    dgp2=second,
    family=family,
    scheme=SamplingScheme.MATCHED,
    sizes=(100, 100),
    cfg=InferenceConfig(t_n=0.001, seed=7, n_boot=200),
    n_reps=200,
    true_c=truth,
)

start = time.perf_counter()
report = monte_carlo(study)
elapsed = time.perf_counter() - start

print(f"\n{study.n_reps} replicates at n = {study.sizes[0]} ({elapsed:.0f}s)")
print(f"  Mean  {report.mean:.4f}")
print(f"  Bias  {report.bias:+.4f}")
print(f"  SE    {report.se:.4f}")
print(f"  RMSE  {report.rmse:.4f}")
print(f"  CR    {report.cr:.3f} (nominal 0.95)")
