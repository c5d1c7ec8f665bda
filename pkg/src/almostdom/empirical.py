"""Exact empirical distribution objects.

The empirical CDF, quantile function, integrated quantile, and Lorenz
curve are all evaluated exactly from order statistics; no grid enters
here. Grid discretization happens only downstream, in the iterated
integration operators.

Distributional smoothness (a continuously differentiable population CDF
with a finite 2+eps moment) is assumed by the asymptotic theory but is
not a checkable property of a finite sample; it is documented here rather
than enforced at runtime.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError, EmptySampleError, ZeroMeanError

__all__ = [
    "Sample",
    "PairedSample",
    "SamplingScheme",
    "EmpiricalDistribution",
    "build_empirical",
]


class SamplingScheme(Enum):
    """How the two samples were drawn: mutually independent, or as iid pairs."""

    INDEPENDENT = "independent"
    MATCHED = "matched"


def _as_clean_array(values, what: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"{what} must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise EmptySampleError(f"{what} contains no observations")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{what} contains non-finite values")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class Sample:
    """One sample of outcome values.

    Values may be any finite reals; the Lorenz and inverse-dominance
    families additionally expect nonnegative outcomes with a positive
    mean, which is enforced where those curves are built.
    """

    values: np.ndarray
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "values", _as_clean_array(self.values, "sample"))

    @property
    def n(self) -> int:
        return self.values.size


@dataclass(frozen=True, eq=False)
class PairedSample:
    """Jointly observed (x1, x2) pairs; both coordinates have length ``n``."""

    x1: np.ndarray
    x2: np.ndarray

    def __post_init__(self):
        x1 = _as_clean_array(self.x1, "first coordinate")
        x2 = _as_clean_array(self.x2, "second coordinate")
        if x1.size != x2.size:
            raise ValueError(
                f"paired coordinates must have equal length, got {x1.size} and {x2.size}"
            )
        object.__setattr__(self, "x1", x1)
        object.__setattr__(self, "x2", x2)

    @classmethod
    def from_pairs(cls, pairs) -> "PairedSample":
        arr = np.asarray(pairs, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError(f"expected an (n, 2) array of pairs, got shape {arr.shape}")
        return cls(arr[:, 0], arr[:, 1])

    @property
    def n(self) -> int:
        return self.x1.size

    def joint_ecdf(self, x: float, x2: float) -> float:
        """Fraction of pairs with first coordinate <= x and second <= x2."""
        return float(np.mean((self.x1 <= x) & (self.x2 <= x2)))


class EmpiricalDistribution:
    """Sorted sample with exact quantile, integrated-quantile, and Lorenz evaluation.

    Immutable after construction and safe for concurrent reads.

    Attributes
    ----------
    sorted_values : ndarray
        Order statistics, ascending. Ties are kept as-is.
    mean : float
        Arithmetic mean of the sample.
    n : int
        Sample size.
    """

    def __init__(self, values):
        arr = np.asarray(values, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise EmptySampleError("empirical distribution needs a nonempty 1-D sample")
        if not np.all(np.isfinite(arr)):
            raise ValueError("sample contains non-finite values")
        sorted_values = np.sort(arr)
        sorted_values.flags.writeable = False
        self.sorted_values = sorted_values
        self.n = int(sorted_values.size)
        # prefix[k] = sum of the k smallest observations
        prefix = np.concatenate(([0.0], np.cumsum(sorted_values)))
        prefix.flags.writeable = False
        self._prefix = prefix
        self.mean = float(prefix[-1] / self.n)
        # cdf levels k/n for k = 1..n; shared by quantile lookups
        levels = np.arange(1, self.n + 1) / self.n
        levels.flags.writeable = False
        self._levels = levels

    def __repr__(self) -> str:  # pragma: no cover
        return f"EmpiricalDistribution(n={self.n}, mean={self.mean:.6g})"

    def _check_probability(self, p: np.ndarray) -> None:
        if np.any(p < 0.0) or np.any(p > 1.0):
            raise DomainError("probabilities must lie in [0, 1]")

    def cdf(self, x):
        """Fraction of observations <= x."""
        x = np.asarray(x, dtype=float)
        out = np.searchsorted(self.sorted_values, x, side="right") / self.n
        return out if out.ndim else float(out)

    def quantile(self, p):
        """Left-continuous inverse of the empirical CDF.

        Returns the ceil(n*p)-th order statistic for p > 0 and the sample
        minimum at p = 0 (the infimum over the whole line, which keeps the
        value finite for samples with negative support).
        """
        p = np.asarray(p, dtype=float)
        self._check_probability(p)
        idx = np.searchsorted(self._levels, p, side="left")
        idx = np.minimum(idx, self.n - 1)
        out = self.sorted_values[idx]
        return out if out.ndim else float(out)

    def cum_quantile(self, p):
        """Exact integral of the step quantile from 0 to p.

        With k = floor(n*p) this is ``(sum of the k smallest values +
        (n*p - k) * next value) / n``, a piecewise-linear function of p
        whose value at 1 is the sample mean.
        """
        p = np.asarray(p, dtype=float)
        self._check_probability(p)
        t = self.n * p
        k = np.minimum(np.floor(t).astype(np.int64), self.n)
        frac = np.maximum(t - k, 0.0)
        partial = np.where(k < self.n, self.sorted_values[np.minimum(k, self.n - 1)], 0.0)
        out = (self._prefix[k] + frac * partial) / self.n
        return out if out.ndim else float(out)

    def lorenz(self, p):
        """Share of the total held by the poorest fraction p of the sample.

        Exact piecewise-linear evaluation; lorenz(0) = 0 and lorenz(1) = 1.
        Requires a strictly positive mean.
        """
        if self.mean <= 0.0:
            raise ZeroMeanError(
                f"Lorenz curve needs a positive mean, got {self.mean:.6g}"
            )
        out = self.cum_quantile(p)
        return out / self.mean


def build_empirical(sample) -> EmpiricalDistribution:
    """Build the empirical distribution of a :class:`Sample` (or raw array).

    The input is copied and left unmodified.
    """
    values = sample.values if isinstance(sample, Sample) else sample
    return EmpiricalDistribution(values)
