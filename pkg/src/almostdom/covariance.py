"""Plug-in covariance kernels and studentization curves.

Each dominance family has a limiting Gaussian fluctuation process for its
estimated base curve; the kernels here estimate that process's covariance
on the working grid, and :func:`std_curve` pushes a kernel through the
family's iterated-integration operator (along both axes) to obtain the
pointwise standard deviation used to studentize contact sets.

For the rank-based families the kernel is a sample covariance of
per-observation transforms:

* Lorenz: ``(lorenz(p) * x - min(quantile(p), x)) / mean``
* inverse SD: ``min(quantile(p), x)``

Matched pairs combine the two samples' transforms per pair (the second
sample's transform weighted by +sqrt(share1), the first's by
-sqrt(share2), where share_j is sample j's size share) and take one
sample covariance, which equals the four-term mixture of within- and
cross-sample covariances.
The stochastic-dominance kernel is assembled directly from the empirical
(joint) CDFs.

Kernels are dense n-by-n matrices, built once per dataset outside the
bootstrap loop. When no integration is needed (operator degree 1) the
diagonal is all that enters downstream, and :func:`std_curve_for` computes
it without materializing the matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .calculus import GridFunction, GridSpec, iterated_cumsum
from .coefficients import Direction, DominanceFamily, Family
from .empirical import EmpiricalDistribution, PairedSample, SamplingScheme
from .errors import FamilyMismatchError, InvalidConfigError, SchemeMismatchError

__all__ = [
    "CovKernel",
    "lorenz_kernel",
    "isd_kernel",
    "sd_kernel",
    "std_curve",
    "std_curve_for",
]

# keep per-chunk transform matrices around 32 MB
_CHUNK_BUDGET = 4_000_000


@dataclass(frozen=True, eq=False)
class CovKernel:
    """Estimated covariance kernel of a family's fluctuation process."""

    spec: GridSpec
    matrix: np.ndarray
    family_kind: Family
    scheme: SamplingScheme

    def __post_init__(self):
        n = self.spec.n_points
        matrix = np.asarray(self.matrix, dtype=float)
        if matrix.shape != (n, n):
            raise ValueError(f"kernel must be {n}x{n}, got {matrix.shape}")
        # enforce exact symmetry and a nonnegative diagonal; the inputs are
        # symmetric up to BLAS rounding and the diagonal feeds a square root
        matrix = 0.5 * (matrix + matrix.T)
        diag = np.diag_indices(n)
        matrix[diag] = np.maximum(matrix[diag], 0.0)
        matrix.flags.writeable = False
        object.__setattr__(self, "matrix", matrix)


def _check_scheme(scheme: SamplingScheme, pairs, d1, d2) -> None:
    if scheme is SamplingScheme.MATCHED:
        if pairs is None:
            raise SchemeMismatchError("matched-pairs kernels need the paired sample")
        if pairs.n != d1.n or pairs.n != d2.n:
            raise SchemeMismatchError(
                "paired sample size differs from the marginal distributions"
            )
    elif pairs is not None:
        raise SchemeMismatchError("independent scheme does not take a paired sample")
    if d1.n < 2 or d2.n < 2:
        raise InvalidConfigError("covariance estimation needs at least 2 observations")


def _lorenz_rows(
    dist: EmpiricalDistribution, values: np.ndarray, nodes: np.ndarray
) -> np.ndarray:
    lor = dist.lorenz(nodes)
    quant = dist.quantile(nodes)
    return (lor[:, None] * values[None, :] - np.minimum(quant[:, None], values[None, :])) / dist.mean


def _min_rows(
    dist: EmpiricalDistribution, values: np.ndarray, nodes: np.ndarray
) -> np.ndarray:
    quant = dist.quantile(nodes)
    return np.minimum(quant[:, None], values[None, :])


def _sample_cov(make_block, n_obs: int, n_points: int) -> np.ndarray:
    """Sample covariance of an n_points-row transform, observation-chunked.

    ``make_block(lo, hi)`` returns transform columns for observations
    [lo, hi). Two passes (means, then centered cross products) keep the
    peak footprint bounded for large samples without losing the exact
    Gram structure.
    """
    chunk = max(1, _CHUNK_BUDGET // n_points)
    mean = np.zeros(n_points)
    for lo in range(0, n_obs, chunk):
        mean += make_block(lo, min(lo + chunk, n_obs)).sum(axis=1)
    mean /= n_obs
    matrix = np.zeros((n_points, n_points))
    for lo in range(0, n_obs, chunk):
        centered = make_block(lo, min(lo + chunk, n_obs)) - mean[:, None]
        matrix += centered @ centered.T
    return matrix / (n_obs - 1)


def _transform_kernel(transform, d1, d2, pairs, scheme, spec) -> np.ndarray:
    nodes = spec.nodes()
    share1 = d1.n / (d1.n + d2.n)
    if scheme is SamplingScheme.MATCHED:
        w2, w1 = np.sqrt(share1), np.sqrt(1.0 - share1)

        def combined(lo, hi):
            return w2 * transform(d2, pairs.x2[lo:hi], nodes) - w1 * transform(
                d1, pairs.x1[lo:hi], nodes
            )

        return _sample_cov(combined, pairs.n, spec.n_points)

    k1 = _sample_cov(
        lambda lo, hi: transform(d1, d1.sorted_values[lo:hi], nodes),
        d1.n,
        spec.n_points,
    )
    k2 = _sample_cov(
        lambda lo, hi: transform(d2, d2.sorted_values[lo:hi], nodes),
        d2.n,
        spec.n_points,
    )
    return (1.0 - share1) * k1 + share1 * k2


def lorenz_kernel(
    d1: EmpiricalDistribution,
    d2: EmpiricalDistribution,
    pairs: PairedSample | None,
    scheme: SamplingScheme,
    spec: GridSpec,
) -> CovKernel:
    """Covariance kernel of the Lorenz-difference fluctuation process."""
    _check_scheme(scheme, pairs, d1, d2)
    matrix = _transform_kernel(_lorenz_rows, d1, d2, pairs, scheme, spec)
    return CovKernel(spec, matrix, Family.LORENZ, scheme)


def isd_kernel(
    d1: EmpiricalDistribution,
    d2: EmpiricalDistribution,
    pairs: PairedSample | None,
    scheme: SamplingScheme,
    spec: GridSpec,
) -> CovKernel:
    """Covariance kernel of the integrated-quantile-difference process."""
    _check_scheme(scheme, pairs, d1, d2)
    matrix = _transform_kernel(_min_rows, d1, d2, pairs, scheme, spec)
    return CovKernel(spec, matrix, Family.INVERSE_SD, scheme)


def _joint_cdf_grid(pairs: PairedSample, nodes: np.ndarray) -> np.ndarray:
    """Joint empirical CDF of the pairs at every (node, node) combination."""
    n_points = nodes.size
    i1 = np.searchsorted(nodes, pairs.x1, side="left")
    i2 = np.searchsorted(nodes, pairs.x2, side="left")
    counts = np.zeros((n_points + 1, n_points + 1))
    np.add.at(counts, (i1, i2), 1.0)
    return counts[:n_points, :n_points].cumsum(axis=0).cumsum(axis=1) / pairs.n


def sd_kernel(
    d1: EmpiricalDistribution,
    d2: EmpiricalDistribution,
    pairs: PairedSample | None,
    scheme: SamplingScheme,
    spec: GridSpec,
) -> CovKernel:
    """Covariance kernel of the CDF-difference process on the bounded domain."""
    _check_scheme(scheme, pairs, d1, d2)
    nodes = spec.nodes()
    f1 = d1.cdf(nodes)
    f2 = d2.cdf(nodes)
    share1 = d1.n / (d1.n + d2.n)
    matrix = (1.0 - share1) * (np.minimum.outer(f1, f1) - np.outer(f1, f1))
    matrix += share1 * (np.minimum.outer(f2, f2) - np.outer(f2, f2))
    if scheme is SamplingScheme.MATCHED:
        cross = _joint_cdf_grid(pairs, nodes) - np.outer(f1, f2)
        matrix -= np.sqrt(share1 * (1.0 - share1)) * (cross + cross.T)
    return CovKernel(spec, matrix, Family.SD, scheme)


def _integration_passes(family: DominanceFamily) -> int:
    return family.operator_degree - 1


def std_curve(kernel: CovKernel, family: DominanceFamily) -> GridFunction:
    """Pointwise standard deviation of the degree-raised fluctuation process.

    Applies the family's iterated integration to the kernel along both
    axes and returns the square root of the diagonal. At operator degree
    1 this is just the square root of the kernel diagonal.
    """
    if kernel.family_kind is not family.kind:
        raise FamilyMismatchError(
            f"kernel estimates the {kernel.family_kind.value} process, "
            f"family is {family.kind.value}"
        )
    passes = _integration_passes(family)
    matrix = kernel.matrix
    if passes:
        downward = family.direction is Direction.DOWN
        step = kernel.spec.step
        matrix = iterated_cumsum(matrix, step, passes, downward, axis=0)
        matrix = iterated_cumsum(matrix, step, passes, downward, axis=1)
    return GridFunction(kernel.spec, np.sqrt(np.maximum(np.diagonal(matrix), 0.0)))


def _row_variance(transform, dist, values, nodes) -> np.ndarray:
    """Variance of the transform at each node, in grid-row chunks."""
    out = np.empty(nodes.size)
    chunk = max(1, _CHUNK_BUDGET // max(values.size, 1))
    for start in range(0, nodes.size, chunk):
        rows = transform(dist, values, nodes[start : start + chunk])
        out[start : start + chunk] = rows.var(axis=1, ddof=1)
    return out


def _combined_row_variance(transform, d1, d2, pairs, nodes, share1) -> np.ndarray:
    out = np.empty(nodes.size)
    chunk = max(1, _CHUNK_BUDGET // max(pairs.n, 1))
    w2, w1 = np.sqrt(share1), np.sqrt(1.0 - share1)
    for start in range(0, nodes.size, chunk):
        block = nodes[start : start + chunk]
        rows = w2 * transform(d2, pairs.x2, block) - w1 * transform(d1, pairs.x1, block)
        out[start : start + chunk] = rows.var(axis=1, ddof=1)
    return out


def _diag_variance(family, d1, d2, pairs, scheme, spec) -> np.ndarray:
    nodes = spec.nodes()
    share1 = d1.n / (d1.n + d2.n)
    if family.kind is Family.SD:
        f1 = d1.cdf(nodes)
        f2 = d2.cdf(nodes)
        var = (1.0 - share1) * f1 * (1.0 - f1) + share1 * f2 * (1.0 - f2)
        if scheme is SamplingScheme.MATCHED:
            both_below = np.sort(np.maximum(pairs.x1, pairs.x2))
            joint_diag = np.searchsorted(both_below, nodes, side="right") / pairs.n
            var -= 2.0 * np.sqrt(share1 * (1.0 - share1)) * (joint_diag - f1 * f2)
        return var
    transform = _lorenz_rows if family.kind is Family.LORENZ else _min_rows
    if scheme is SamplingScheme.MATCHED:
        return _combined_row_variance(transform, d1, d2, pairs, nodes, share1)
    v1 = _row_variance(transform, d1, d1.sorted_values, nodes)
    v2 = _row_variance(transform, d2, d2.sorted_values, nodes)
    return (1.0 - share1) * v1 + share1 * v2


def std_curve_for(
    family: DominanceFamily,
    d1: EmpiricalDistribution,
    d2: EmpiricalDistribution,
    pairs: PairedSample | None,
    scheme: SamplingScheme,
    spec: GridSpec,
) -> GridFunction:
    """Studentization curve for a family, on the family's natural kernel.

    Dispatches to the matching kernel builder; when the family applies no
    integration (operator degree 1) only the kernel diagonal is computed,
    which keeps large samples cheap. Both paths agree to rounding.
    """
    if _integration_passes(family) == 0:
        _check_scheme(scheme, pairs, d1, d2)
        var = _diag_variance(family, d1, d2, pairs, scheme, spec)
        return GridFunction(spec, np.sqrt(np.maximum(var, 0.0)))
    builder = {
        Family.LORENZ: lorenz_kernel,
        Family.INVERSE_SD: isd_kernel,
        Family.SD: sd_kernel,
    }[family.kind]
    return std_curve(builder(d1, d2, pairs, scheme, spec), family)
