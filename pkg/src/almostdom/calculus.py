"""Uniform-grid functions, iterated integration, and signed-area maps.

Every curve in the package is tabulated at the midpoints of a uniform
grid: ``p_k = lo + (k - 1/2) * step`` for ``k = 1..n_points``. The
midpoint layout keeps the endpoints out of the node set, which matters
because heavy-tailed quantile functions diverge at 1, and it makes the
plain rectangle rule second-order accurate for smooth integrands.

Integrals are rectangle sums over the node set. Cumulative (prefix or
suffix) sums include the current node, so a single pass of
:func:`integrate_up` carries an O(step) bias that is shared by every
curve entering a ratio and cancels to first order there.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateCurvesError, GridMismatchError

__all__ = [
    "GridSpec",
    "GridFunction",
    "integrate_up",
    "integrate_down",
    "positive_area",
    "negative_area",
    "area_ratio",
    "iterated_cumsum",
]


@dataclass(frozen=True)
class GridSpec:
    """A uniform midpoint grid with ``n_points`` nodes on ``domain``."""

    n_points: int = 1000
    domain: tuple[float, float] = (0.0, 1.0)

    def __post_init__(self):
        if self.n_points < 2:
            raise ValueError(f"n_points must be >= 2, got {self.n_points}")
        lo, hi = self.domain
        if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
            raise ValueError(f"domain must be a finite interval, got {self.domain}")
        object.__setattr__(self, "domain", (float(lo), float(hi)))

    @property
    def step(self) -> float:
        lo, hi = self.domain
        return (hi - lo) / self.n_points

    def nodes(self) -> np.ndarray:
        """Midpoint nodes, ascending."""
        lo, _ = self.domain
        return lo + (np.arange(self.n_points) + 0.5) * self.step


@dataclass(frozen=True, eq=False)
class GridFunction:
    """A real-valued function tabulated on a :class:`GridSpec`.

    Immutable value data: combining two grid functions requires identical
    specs (:class:`~almostdom.errors.GridMismatchError` otherwise).
    """

    spec: GridSpec
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.spec.n_points,):
            raise ValueError(
                f"values must have shape ({self.spec.n_points},), got {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("grid function values must be finite")
        values = values.copy()
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    def _require_same_grid(self, other: "GridFunction") -> None:
        if self.spec != other.spec:
            raise GridMismatchError(
                f"grids differ: {self.spec} vs {other.spec}"
            )

    def __add__(self, other: "GridFunction") -> "GridFunction":
        self._require_same_grid(other)
        return GridFunction(self.spec, self.values + other.values)

    def __sub__(self, other: "GridFunction") -> "GridFunction":
        self._require_same_grid(other)
        return GridFunction(self.spec, self.values - other.values)

    def __neg__(self) -> "GridFunction":
        return GridFunction(self.spec, -self.values)

    def __mul__(self, scalar: float) -> "GridFunction":
        return GridFunction(self.spec, self.values * float(scalar))

    __rmul__ = __mul__


def iterated_cumsum(
    values: np.ndarray, step: float, passes: int, downward: bool = False, axis: int = -1
) -> np.ndarray:
    """Apply ``passes`` cumulative-integral sweeps along ``axis``.

    Each sweep replaces the array by its inclusive prefix (or suffix, when
    ``downward``) sum scaled by ``step``. Shared by grid functions and by
    covariance matrices, which are integrated along both axes.
    """
    out = np.asarray(values, dtype=float)
    for _ in range(passes):
        if downward:
            out = np.flip(np.cumsum(np.flip(out, axis=axis), axis=axis), axis=axis)
        else:
            out = np.cumsum(out, axis=axis)
        out = out * step
    return out


def integrate_up(f: GridFunction, m: int) -> GridFunction:
    """Iterated integral from the lower endpoint, of operator degree ``m``.

    Degree 1 is the identity; degree ``m >= 2`` applies ``m - 1``
    cumulative-integral passes, so degree 2 of ``f == 1`` on [0, 1] is
    approximately ``p`` and degree 3 of ``f(p) == p`` is approximately
    ``p**3 / 6``.
    """
    if m < 1:
        raise ValueError(f"operator degree must be >= 1, got {m}")
    if m == 1:
        return f
    return GridFunction(f.spec, iterated_cumsum(f.values, f.spec.step, m - 1))


def integrate_down(f: GridFunction, m: int) -> GridFunction:
    """Iterated integral toward the upper endpoint; mirror of :func:`integrate_up`."""
    if m < 1:
        raise ValueError(f"operator degree must be >= 1, got {m}")
    if m == 1:
        return f
    return GridFunction(
        f.spec, iterated_cumsum(f.values, f.spec.step, m - 1, downward=True)
    )


def positive_area(f: GridFunction) -> float:
    """Rectangle-rule integral of ``max(f, 0)`` over the domain."""
    return float(np.maximum(f.values, 0.0).sum() * f.spec.step)


def negative_area(f: GridFunction) -> float:
    """Rectangle-rule integral of ``max(-f, 0)`` over the domain."""
    return float(np.maximum(-f.values, 0.0).sum() * f.spec.step)


def area_ratio(f: GridFunction) -> float:
    """Share of the total unsigned area that lies above zero.

    This is the almost-dominance coefficient of a difference curve: 0
    means the curve is nowhere positive (clean dominance), 1 means it is
    nowhere negative (clean reverse dominance). Raises
    :class:`~almostdom.errors.DegenerateCurvesError` when the curve is
    identically zero on the grid, i.e. the two underlying distributions
    are indistinguishable at this resolution.
    """
    pos = positive_area(f)
    neg = negative_area(f)
    total = pos + neg
    if total == 0.0:
        raise DegenerateCurvesError(
            "difference curve is identically zero on the grid; "
            "coefficient undefined, distributions indistinguishable"
        )
    return pos / total
