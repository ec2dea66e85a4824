"""Uniform grids and the sampled containers built on them."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GridError, ValidationError

__all__ = ["UniformGrid", "Signal", "Spectrum", "SampleSet", "grid_from_points"]


@dataclass(frozen=True)
class UniformGrid:
    """Points ``start + j*step`` for ``j = 0 .. count-1``."""

    start: float
    step: float
    count: int

    def __post_init__(self):
        if not (math.isfinite(self.start) and math.isfinite(self.step)):
            raise GridError("grid start/step must be finite")
        if not self.step > 0:
            raise GridError(f"grid step must be positive, got {self.step!r}")
        if int(self.count) != self.count or self.count < 1:
            raise GridError(f"grid count must be a positive integer, got {self.count!r}")
        object.__setattr__(self, "count", int(self.count))

    @classmethod
    def from_range(cls, start: float, stop: float, count: int) -> "UniformGrid":
        """Grid with ``count`` points from ``start`` to ``stop`` inclusive."""
        if count < 2:
            raise GridError("from_range needs at least two points")
        return cls(float(start), (float(stop) - float(start)) / (count - 1), int(count))

    @classmethod
    def from_step(cls, start: float, stop: float, step: float) -> "UniformGrid":
        """Grid from ``start`` with spacing ``step`` covering ``stop`` (rounded)."""
        n = int(round((stop - start) / step)) + 1
        return cls(float(start), float(step), n)

    @property
    def points(self) -> np.ndarray:
        return self.start + self.step * np.arange(self.count)

    @property
    def stop(self) -> float:
        """Last grid point."""
        return self.start + self.step * (self.count - 1)

    @property
    def center(self) -> float:
        return self.start + 0.5 * self.step * (self.count - 1)

    def index_of(self, x: float, tol: float = 1e-9) -> int:
        """Index ``j`` with ``start + j*step == x`` (within ``tol`` steps)."""
        r = (x - self.start) / self.step
        j = round(r)
        if abs(r - j) > tol:
            raise GridError(f"{x!r} is not on the grid")
        return int(j)

    def as_dict(self) -> dict:
        return {"start": self.start, "step": self.step, "count": self.count}


def grid_from_points(x, rtol: float = 1e-9) -> UniformGrid:
    """Recover a :class:`UniformGrid` from explicit, uniformly spaced points.

    Raises:
        GridError: If the points are not uniformly spaced.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size < 1:
        raise GridError("need a non-empty 1-d array of points")
    if x.size == 1:
        return UniformGrid(float(x[0]), 1.0, 1)
    step = (x[-1] - x[0]) / (x.size - 1)
    if not step > 0:
        raise GridError("points must be strictly increasing")
    dev = np.max(np.abs(np.diff(x) - step))
    if dev > rtol * max(1.0, abs(step)) + 64 * np.finfo(float).eps * np.max(np.abs(x)):
        raise GridError(f"points are not uniformly spaced (deviation {dev:.3g})")
    return UniformGrid(float(x[0]), float(step), int(x.size))


class _Sampled:
    """Shared behaviour of :class:`Signal` and :class:`Spectrum`."""

    __slots__ = ("grid", "values")
    axis_name = "x"

    def __init__(self, grid: UniformGrid, values):
        v = np.asarray(values, dtype=complex)
        if v.ndim != 1 or v.size != grid.count:
            raise GridError(
                f"{type(self).__name__}: {v.size} values for a grid of {grid.count}")
        if not np.all(np.isfinite(v)):
            raise ValidationError(f"{type(self).__name__} values must be finite")
        self.grid = grid
        self.values = v

    @property
    def points(self) -> np.ndarray:
        return self.grid.points

    def __len__(self):
        return self.grid.count

    def norm(self, p: float = 2) -> float:
        """Rectangle-rule ``L^p`` norm (``p`` in ``{1, 2, inf}``)."""
        if p == np.inf:
            return float(np.max(np.abs(self.values))) if self.values.size else 0.0
        if p == 1:
            return float(np.sum(np.abs(self.values)) * self.grid.step)
        if p == 2:
            return float(math.sqrt(np.sum(np.abs(self.values) ** 2) * self.grid.step))
        raise ValueError("p must be 1, 2 or inf")

    def inner(self, other: "_Sampled") -> complex:
        """Rectangle-rule inner product ``<self, other>`` on a common grid."""
        if other.grid != self.grid:
            raise GridError("inner product needs identical grids")
        return complex(np.vdot(other.values, self.values) * self.grid.step)

    def with_values(self, values):
        return type(self)(self.grid, values)

    def __add__(self, other):
        if other.grid != self.grid:
            raise GridError("grids differ")
        return type(self)(self.grid, self.values + other.values)

    def __sub__(self, other):
        if other.grid != self.grid:
            raise GridError("grids differ")
        return type(self)(self.grid, self.values - other.values)

    def __mul__(self, scalar):
        return type(self)(self.grid, self.values * scalar)

    __rmul__ = __mul__

    def __repr__(self):
        g = self.grid
        return (f"{type(self).__name__}(start={g.start:.6g}, step={g.step:.6g}, "
                f"count={g.count})")


class Signal(_Sampled):
    """Complex samples ``f(t_j)`` on a uniform time grid."""

    __slots__ = ()
    axis_name = "t"

    @classmethod
    def from_function(cls, func, grid: UniformGrid) -> "Signal":
        return cls(grid, func(grid.points))

    @classmethod
    def zeros(cls, grid: UniformGrid) -> "Signal":
        return cls(grid, np.zeros(grid.count, dtype=complex))


class Spectrum(_Sampled):
    """Complex samples ``F(omega_j)`` on a uniform frequency grid."""

    __slots__ = ()
    axis_name = "omega"


class SampleSet:
    """Sampling points ``x_j`` (strictly increasing) with complex values."""

    __slots__ = ("points", "values")

    def __init__(self, points, values):
        x = np.asarray(points, dtype=float).reshape(-1)
        v = np.asarray(values, dtype=complex).reshape(-1)
        if x.size != v.size:
            raise ValidationError("points and values differ in length")
        if x.size and not np.all(np.isfinite(x)):
            raise ValidationError("sampling points must be finite")
        if x.size and not np.all(np.isfinite(v)):
            raise ValidationError("sample values must be finite")
        if x.size > 1 and not np.all(np.diff(x) > 0):
            raise ValidationError("sampling points must be strictly increasing")
        self.points = x
        self.values = v

    def __len__(self):
        return self.points.size

    def integer_indices(self, tol: float = 1e-9) -> np.ndarray:
        """Integer labels of the points, requiring consecutive integers."""
        n = np.round(self.points)
        if self.points.size and np.max(np.abs(self.points - n)) > tol:
            raise ValidationError("sampling points are not integers")
        n = n.astype(int)
        if n.size > 1 and not np.all(np.diff(n) == 1):
            raise ValidationError("integer samples must be consecutive")
        return n

    def __repr__(self):
        return f"SampleSet(n={self.points.size})"
