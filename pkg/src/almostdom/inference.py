"""Contact sets, the directional derivative, and the bootstrap interval.

The area-ratio map is not linear at difference curves that touch zero, so
the usual bootstrap of the coefficient itself is inconsistent. Instead,
bootstrap fluctuations of the difference curve are pushed through an
estimate of the map's directional derivative:

1. classify every grid node by the studentized curve
   ``sqrt(effective_n) * diff / max(std, xi0)`` against the threshold
   ``t_n`` (above, below, or within: the estimated contact set);
2. resample the data, rebuild the difference curve, and evaluate the
   derivative at ``sqrt(effective_n) * (resampled - original)``;
3. read confidence bounds off the quantiles of those derivative draws:
   ``[c_hat - q_hi / sqrt(effective_n), c_hat - q_lo / sqrt(effective_n)]``.

The studentization curve and the contact sets come from the original
sample and are held fixed across replicates. Replicate b draws from the
stream keyed (seed, b), so runs are reproducible and order-independent.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .calculus import GridFunction, GridSpec, negative_area, positive_area
from .coefficients import (
    CoefficientEstimate,
    DominanceFamily,
    coefficient,
    difference_curve,
)
from .covariance import std_curve_for
from .empirical import (
    EmpiricalDistribution,
    PairedSample,
    Sample,
    SamplingScheme,
)
from .errors import (
    DegenerateCurvesError,
    GridMismatchError,
    InvalidConfigError,
    NonFiniteDrawError,
    SchemeMismatchError,
    ZeroMeanError,
)
from .rng import child_rng, child_seed

__all__ = [
    "InferenceConfig",
    "ContactSets",
    "BootstrapResult",
    "TuningTable",
    "contact_sets",
    "derivative",
    "bootstrap_ci",
    "tuning_table",
    "select_tuning",
]


@dataclass(frozen=True)
class InferenceConfig:
    """Settings for contact-set estimation and the bootstrap.

    ``t_n`` is the studentized threshold separating "clearly signed" nodes
    from the estimated contact set; it must grow with the sample (slower
    than sqrt(effective_n)) for the asymptotics, and is a finite-sample
    tuning choice here (see :func:`select_tuning`). ``xi0`` bounds the
    studentization away from zero. With ``skip_degenerate`` a replicate
    that cannot be evaluated (e.g. a resample with zero mean) is dropped
    and counted in ``n_boot_effective``; otherwise it raises
    :class:`~almostdom.errors.NonFiniteDrawError`.
    """

    t_n: float
    seed: int
    xi0: float = 0.001
    n_boot: int = 1000
    alpha: float = 0.05
    clamp_to_unit: bool = True
    skip_degenerate: bool = False

    def __post_init__(self):
        if not self.t_n > 0:
            raise InvalidConfigError(f"t_n must be positive, got {self.t_n}")
        if not self.xi0 > 0:
            raise InvalidConfigError(f"xi0 must be positive, got {self.xi0}")
        if self.n_boot < 1:
            raise InvalidConfigError(f"n_boot must be >= 1, got {self.n_boot}")
        if not 0.0 < self.alpha < 0.5:
            raise InvalidConfigError(f"alpha must lie in (0, 0.5), got {self.alpha}")
        if not 0 <= int(self.seed) < 2**64:
            raise InvalidConfigError("seed must fit in 64 unsigned bits")


@dataclass(frozen=True, eq=False)
class ContactSets:
    """Node classification: clearly positive, clearly negative, or near zero.

    The three masks partition the grid; ``t_n`` and ``xi0`` record the
    threshold and trim that produced them.
    """

    plus: np.ndarray
    minus: np.ndarray
    zero: np.ndarray
    t_n: float | None = None
    xi0: float | None = None

    def __post_init__(self):
        if not (self.plus.shape == self.minus.shape == self.zero.shape):
            raise ValueError("contact-set masks must share one shape")
        overlap = (
            self.plus.astype(int) + self.minus.astype(int) + self.zero.astype(int)
        )
        if not np.all(overlap == 1):
            raise ValueError("contact-set masks must partition the grid")

    @property
    def n_points(self) -> int:
        return self.plus.size


@dataclass(frozen=True, eq=False)
class BootstrapResult:
    """Coefficient estimate with bootstrap quantiles and confidence interval.

    ``boundary`` flags estimates sitting exactly at 0 or 1, where the
    interval theory does not apply; the clamped interval is still
    returned.
    """

    estimate: CoefficientEstimate
    draws: np.ndarray
    q_lo: float
    q_hi: float
    ci: tuple[float, float]
    n_boot_effective: int
    seed: int
    boundary: bool


def contact_sets(
    diff: GridFunction,
    std: GridFunction,
    effective_n: float,
    cfg: InferenceConfig,
) -> ContactSets:
    """Classify grid nodes by the studentized difference curve."""
    if diff.spec != std.spec:
        raise GridMismatchError("difference and studentization curves differ in grid")
    if not effective_n > 0:
        raise InvalidConfigError(f"effective_n must be positive, got {effective_n}")
    scaled = np.sqrt(effective_n) * diff.values / np.maximum(std.values, cfg.xi0)
    plus = scaled > cfg.t_n
    minus = scaled < -cfg.t_n
    zero = ~(plus | minus)
    return ContactSets(plus=plus, minus=minus, zero=zero, t_n=cfg.t_n, xi0=cfg.xi0)


def _derivative_rows(
    h_rows: np.ndarray, sets: ContactSets, diff: GridFunction
) -> np.ndarray:
    """Directional derivative of the area ratio for each row of ``h_rows``."""
    pos = positive_area(diff)
    neg = negative_area(diff)
    total = pos + neg
    if total == 0.0:
        raise DegenerateCurvesError("cannot differentiate at a vanishing curve")
    step = diff.spec.step
    zero_part = h_rows[:, sets.zero]
    d_pos = (
        h_rows[:, sets.plus].sum(axis=1) + np.maximum(zero_part, 0.0).sum(axis=1)
    ) * step
    d_neg = (
        -h_rows[:, sets.minus].sum(axis=1) + np.maximum(-zero_part, 0.0).sum(axis=1)
    ) * step
    return (d_pos * neg - pos * d_neg) / total**2


def derivative(h: GridFunction, sets: ContactSets, diff: GridFunction) -> float:
    """Estimated directional derivative of the area-ratio map at ``diff``.

    Clearly positive nodes contribute ``h`` linearly, clearly negative
    nodes ``-h``, and contact-set nodes the one-sided parts ``max(+-h, 0)``;
    the two pieces combine through the quotient rule of the ratio.
    Positively homogeneous in ``h`` of degree one.
    """
    if h.spec != diff.spec:
        raise GridMismatchError("direction and difference curves differ in grid")
    if sets.n_points != diff.spec.n_points:
        raise GridMismatchError("contact sets sized for a different grid")
    return float(_derivative_rows(h.values[None, :], sets, diff)[0])


def _inf_quantile(values: np.ndarray, beta: float) -> float:
    """Smallest value whose empirical CDF reaches ``beta`` (the
    ceil(beta * B)-th order statistic)."""
    ordered = np.sort(values)
    k = int(np.ceil(beta * ordered.size))
    k = min(max(k, 1), ordered.size)
    return float(ordered[k - 1])


def _unpack(data, scheme: SamplingScheme):
    """Build the two empirical distributions (and pairs, when matched)."""
    if scheme is SamplingScheme.MATCHED:
        if not isinstance(data, PairedSample):
            raise SchemeMismatchError("matched scheme needs a PairedSample")
        return (
            EmpiricalDistribution(data.x1),
            EmpiricalDistribution(data.x2),
            data,
        )
    if isinstance(data, PairedSample):
        raise SchemeMismatchError("independent scheme takes two separate samples")
    try:
        first, second = data
    except (TypeError, ValueError) as exc:
        raise SchemeMismatchError(
            "independent scheme needs a (sample, sample) pair"
        ) from exc
    values1 = first.values if isinstance(first, Sample) else first
    values2 = second.values if isinstance(second, Sample) else second
    return EmpiricalDistribution(values1), EmpiricalDistribution(values2), None


@dataclass(frozen=True, eq=False)
class _Prepared:
    """Read-only state shared by all bootstrap replicates."""

    family: DominanceFamily
    scheme: SamplingScheme
    spec: GridSpec
    d1: EmpiricalDistribution
    d2: EmpiricalDistribution
    pairs: PairedSample | None
    diff: GridFunction
    root_n: float
    seed: int
    skip_degenerate: bool


def _one_direction(prep: _Prepared, index: int) -> np.ndarray | None:
    """Scaled fluctuation curve of replicate ``index`` (None if degenerate)."""
    rng = child_rng(prep.seed, index)
    if prep.scheme is SamplingScheme.MATCHED:
        n = prep.pairs.n
        idx = rng.integers(0, n, n)
        r1, r2 = prep.pairs.x1[idx], prep.pairs.x2[idx]
    else:
        n1, n2 = prep.d1.n, prep.d2.n
        r1 = prep.d1.sorted_values[rng.integers(0, n1, n1)]
        r2 = prep.d2.sorted_values[rng.integers(0, n2, n2)]
    try:
        star = difference_curve(
            prep.family,
            EmpiricalDistribution(r1),
            EmpiricalDistribution(r2),
            prep.spec,
        )
    except ZeroMeanError as exc:
        if prep.skip_degenerate:
            return None
        raise NonFiniteDrawError(
            f"bootstrap replicate {index} produced a degenerate resample: {exc}",
            replicate=index,
        ) from exc
    return prep.root_n * (star.values - prep.diff.values)


def _direction_chunk(args):
    prep, indices = args
    return [(index, _one_direction(prep, index)) for index in indices]


def _direction_matrix(
    prep: _Prepared, n_boot: int, n_jobs: int
) -> tuple[np.ndarray, np.ndarray]:
    rows = np.zeros((n_boot, prep.spec.n_points))
    ok = np.ones(n_boot, dtype=bool)

    def store(index: int, values: np.ndarray | None) -> None:
        if values is None:
            ok[index] = False
        elif not np.all(np.isfinite(values)):
            if prep.skip_degenerate:
                ok[index] = False
            else:
                raise NonFiniteDrawError(
                    f"bootstrap replicate {index} produced non-finite values",
                    replicate=index,
                )
        else:
            rows[index] = values

    if n_jobs <= 1:
        for index in range(n_boot):
            store(index, _one_direction(prep, index))
    else:
        chunks = [
            (prep, list(range(start, n_boot, n_jobs)))
            for start in range(min(n_jobs, n_boot))
        ]
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            for part in pool.map(_direction_chunk, chunks):
                for index, values in part:
                    store(index, values)
    return rows, ok


def bootstrap_ci(
    data,
    family: DominanceFamily,
    scheme: SamplingScheme,
    spec: GridSpec,
    cfg: InferenceConfig,
    n_jobs: int = 1,
) -> BootstrapResult:
    """Coefficient estimate with a bootstrap confidence interval.

    ``data`` is a ``(Sample, Sample)`` pair under the independent scheme
    or a :class:`PairedSample` under matched pairs (pairs are resampled
    jointly). Identical inputs and seed give bit-identical results for
    any ``n_jobs``.

    The interval is two-sided at level ``1 - alpha``. For a one-sided
    level-``1 - alpha`` bound, run with ``2 * alpha`` and keep the
    relevant endpoint: the upper bound is
    ``c_hat - q(alpha) / sqrt(effective_n)``, the lower bound is
    ``c_hat - q(1 - alpha) / sqrt(effective_n)``.
    """
    d1, d2, pairs = _unpack(data, scheme)
    est = coefficient(family, d1, d2, spec)
    std = std_curve_for(family, d1, d2, pairs, scheme, spec)
    sets = contact_sets(est.difference, std, est.effective_n, cfg)
    prep = _Prepared(
        family=family,
        scheme=scheme,
        spec=spec,
        d1=d1,
        d2=d2,
        pairs=pairs,
        diff=est.difference,
        root_n=float(np.sqrt(est.effective_n)),
        seed=cfg.seed,
        skip_degenerate=cfg.skip_degenerate,
    )
    rows, ok = _direction_matrix(prep, cfg.n_boot, n_jobs)
    all_draws = _derivative_rows(rows, sets, est.difference)
    draws = all_draws[ok]
    if draws.size == 0:
        raise NonFiniteDrawError("every bootstrap replicate was degenerate")
    q_lo = _inf_quantile(draws, cfg.alpha / 2.0)
    q_hi = _inf_quantile(draws, 1.0 - cfg.alpha / 2.0)
    root = prep.root_n
    lo = est.c_hat - q_hi / root
    hi = est.c_hat - q_lo / root
    if cfg.clamp_to_unit:
        lo = min(max(lo, 0.0), 1.0)
        hi = min(max(hi, 0.0), 1.0)
    return BootstrapResult(
        estimate=est,
        draws=draws,
        q_lo=q_lo,
        q_hi=q_hi,
        ci=(lo, hi),
        n_boot_effective=int(draws.size),
        seed=cfg.seed,
        boundary=est.c_hat in (0.0, 1.0),
    )


@dataclass(frozen=True)
class TuningTable:
    """Coverage of the calibration truth for each candidate threshold."""

    candidates: tuple[float, ...]
    coverage: tuple[float, ...]
    pseudo_true: float


def _resample_dataset(prep_d1, prep_d2, pairs, scheme, rng):
    if scheme is SamplingScheme.MATCHED:
        idx = rng.integers(0, pairs.n, pairs.n)
        return PairedSample(pairs.x1[idx], pairs.x2[idx])
    r1 = prep_d1.sorted_values[rng.integers(0, prep_d1.n, prep_d1.n)]
    r2 = prep_d2.sorted_values[rng.integers(0, prep_d2.n, prep_d2.n)]
    return Sample(r1), Sample(r2)


def _calibration_rep(args):
    (
        (d1, d2, pairs),
        family,
        scheme,
        spec,
        cfg,
        candidates,
        n_cal_boot,
        pseudo_true,
        rep,
    ) = args
    rng = child_rng(cfg.seed, rep, 0)
    sim = _resample_dataset(d1, d2, pairs, scheme, rng)
    rep_cfg = replace(
        cfg, seed=child_seed(cfg.seed, rep, 1), n_boot=n_cal_boot
    )
    sd1, sd2, spairs = _unpack(sim, scheme)
    est = coefficient(family, sd1, sd2, spec)
    std = std_curve_for(family, sd1, sd2, spairs, scheme, spec)
    prep = _Prepared(
        family=family,
        scheme=scheme,
        spec=spec,
        d1=sd1,
        d2=sd2,
        pairs=spairs,
        diff=est.difference,
        root_n=float(np.sqrt(est.effective_n)),
        seed=rep_cfg.seed,
        skip_degenerate=rep_cfg.skip_degenerate,
    )
    rows, ok = _direction_matrix(prep, n_cal_boot, 1)
    covered = np.zeros(len(candidates), dtype=bool)
    root = prep.root_n
    for j, t_n in enumerate(candidates):
        sets = contact_sets(est.difference, std, est.effective_n, replace(rep_cfg, t_n=t_n))
        draws = _derivative_rows(rows, sets, est.difference)[ok]
        lo = est.c_hat - _inf_quantile(draws, 1.0 - cfg.alpha / 2.0) / root
        hi = est.c_hat - _inf_quantile(draws, cfg.alpha / 2.0) / root
        if cfg.clamp_to_unit:
            lo = min(max(lo, 0.0), 1.0)
            hi = min(max(hi, 0.0), 1.0)
        covered[j] = lo <= pseudo_true <= hi
    return rep, covered


def tuning_table(
    data,
    family: DominanceFamily,
    scheme: SamplingScheme,
    spec: GridSpec,
    cfg: InferenceConfig,
    candidates,
    n_cal_reps: int,
    n_cal_boot: int,
    n_jobs: int = 1,
) -> TuningTable:
    """Calibrate candidate thresholds against the observed data.

    The observed samples act as the data-generating process: the
    coefficient they imply is the calibration truth, each calibration
    replicate resamples datasets of the original sizes from them, and
    every candidate threshold is scored by how often its interval covers
    that truth. Candidates share the simulated datasets and bootstrap
    resamples (neither depends on the threshold), so their coverages
    differ only through the contact sets.
    """
    candidates = tuple(sorted(float(t) for t in candidates))
    if not candidates:
        raise InvalidConfigError("need at least one candidate threshold")
    if n_cal_reps < 1:
        raise InvalidConfigError(f"n_cal_reps must be >= 1, got {n_cal_reps}")
    if n_cal_boot < 1:
        raise InvalidConfigError(f"n_cal_boot must be >= 1, got {n_cal_boot}")
    d1, d2, pairs = _unpack(data, scheme)
    pseudo_true = coefficient(family, d1, d2, spec).c_hat
    tasks = [
        ((d1, d2, pairs), family, scheme, spec, cfg, candidates, n_cal_boot, pseudo_true, rep)
        for rep in range(n_cal_reps)
    ]
    covered = np.zeros((n_cal_reps, len(candidates)), dtype=bool)
    if n_jobs <= 1:
        for task in tasks:
            rep, row = _calibration_rep(task)
            covered[rep] = row
    else:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            for rep, row in pool.map(_calibration_rep, tasks, chunksize=max(1, n_cal_reps // (4 * n_jobs))):
                covered[rep] = row
    return TuningTable(
        candidates=candidates,
        coverage=tuple(float(c) for c in covered.mean(axis=0)),
        pseudo_true=pseudo_true,
    )


def select_tuning(
    data,
    family: DominanceFamily,
    scheme: SamplingScheme,
    spec: GridSpec,
    cfg: InferenceConfig,
    candidates,
    n_cal_reps: int,
    n_cal_boot: int,
    n_jobs: int = 1,
) -> float:
    """Pick the candidate threshold whose calibrated coverage is closest to
    the nominal level; ties break toward the smallest candidate."""
    table = tuning_table(
        data, family, scheme, spec, cfg, candidates, n_cal_reps, n_cal_boot, n_jobs
    )
    target = 1.0 - cfg.alpha
    errors = np.abs(np.asarray(table.coverage) - target)
    return table.candidates[int(np.argmin(errors))]
