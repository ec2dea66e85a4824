"""Operator algebra built on A-translations.

All translations are *grid aligned*: a shift must be an integer multiple of
the signal step, so operator identities hold to rounding error without any
interpolation.  Translating a :class:`~saft.grids.Signal` moves its grid;
:func:`embed` places signals on a common grid (zero padding) for comparison.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy import signal as ssignal
from scipy.interpolate import CubicSpline

from .core import ParamSet, chirp, eta, rho
from .errors import AlignmentError, ConvergenceWarning, GridError, ValidationError
from .generators import translate_phase
from .grids import Signal, UniformGrid
from .transform import isaft, matched_frequency_grid, saft_fast, saft_points

__all__ = [
    "DiscreteMeasure",
    "MultiplierSymbol",
    "a_translate",
    "chirp_mod",
    "a_convolve",
    "a_convolve_measure",
    "multiplier_apply",
    "wendel_commutation_defect",
    "poisson_check",
    "PoissonResult",
    "embed",
    "union_grid",
    "relative_defect",
]

ALIGN_TOL = 1e-9


# ---------------------------------------------------------------------------
# Grid plumbing
# ---------------------------------------------------------------------------
def _offset(grid: UniformGrid, x: float) -> int:
    """Number of steps ``x`` represents on ``grid`` (alignment enforced)."""
    r = x / grid.step
    j = round(r)
    if abs(r - j) > ALIGN_TOL:
        raise AlignmentError(
            f"shift {x!r} is not a multiple of the grid step {grid.step!r}")
    return int(j)


def union_grid(*grids: UniformGrid) -> UniformGrid:
    """Smallest grid containing several mutually aligned grids."""
    ref = grids[0]
    lo = hi = 0
    for g in grids:
        if abs(g.step - ref.step) > 1e-12 * ref.step:
            raise GridError("grids have different steps")
        j0 = _offset(ref, g.start - ref.start)
        lo = min(lo, j0)
        hi = max(hi, j0 + g.count - 1)
    return UniformGrid(ref.start + lo * ref.step, ref.step, hi - lo + 1)


def embed(f: Signal, grid: UniformGrid) -> Signal:
    """Place ``f`` on an aligned grid, zero-filling and cropping as needed."""
    if abs(f.grid.step - grid.step) > 1e-12 * grid.step:
        raise GridError("grids have different steps")
    j0 = _offset(grid, f.grid.start - grid.start)
    out = np.zeros(grid.count, dtype=complex)
    a, b = max(0, j0), min(grid.count, j0 + f.grid.count)
    if a < b:
        out[a:b] = f.values[a - j0:b - j0]
    return Signal(grid, out)


def relative_defect(f: Signal, g: Signal, ref: Signal | None = None) -> float:
    """``||f - g||_2 / ||ref||_2`` on the union grid (0 when ``ref`` is zero)."""
    u = union_grid(f.grid, g.grid)
    diff = embed(f, u).values - embed(g, u).values
    num = math.sqrt(float(np.sum(np.abs(diff) ** 2)) * u.step)
    den = (ref if ref is not None else f).norm(2)
    if den == 0.0:
        return num
    return num / den


# ---------------------------------------------------------------------------
# Elementary operators
# ---------------------------------------------------------------------------
def a_translate(A: ParamSet, x: float, f: Signal) -> Signal:
    """A-translation ``T_x^A f(t) = exp(-i (a/b) x (t - x)) f(t - x)``.

    The output lives on the input grid shifted by ``x``.

    Raises:
        AlignmentError: If ``x`` is not an integer multiple of the step.
    """
    j = _offset(f.grid, x)
    grid = UniformGrid(f.grid.start + j * f.grid.step, f.grid.step, f.grid.count)
    return Signal(grid, f.values * translate_phase(A, x, grid.points))


def chirp_mod(s: float, f: Signal) -> Signal:
    """Chirp modulation ``C_s f(t) = exp(i s t^2 / 2) f(t)``."""
    return Signal(f.grid, chirp(s, f.points) * f.values)


def a_convolve(A: ParamSet, f: Signal, g: Signal) -> Signal:
    """A-convolution ``g *_A f`` of two sampled signals.

    ``(g *_A f)(t) = conj(rho_A(t)) / sqrt(2 pi |b|) * ((rho_A g) * (rho_A f))(t)``
    with a rectangle-rule classical convolution.  The result lives on the
    full-support grid starting at ``f.start + g.start``.

    Raises:
        GridError: If the steps differ.
    """
    dt = f.grid.step
    if abs(g.grid.step - dt) > 1e-12 * dt:
        raise GridError("a_convolve needs a common grid step")
    rf = rho(A, f.points) * f.values
    rg = rho(A, g.points) * g.values
    conv = ssignal.convolve(rg, rf, mode="full", method="auto") * dt
    grid = UniformGrid(f.grid.start + g.grid.start, dt, f.grid.count + g.grid.count - 1)
    t = grid.points
    return Signal(grid, np.conj(rho(A, t)) * conv / math.sqrt(2.0 * math.pi * abs(A.b)))


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finitely supported complex measure ``sum_j w_j delta_{x_j}``."""

    locations: tuple
    weights: tuple

    def __init__(self, locations: Iterable[float], weights: Iterable[complex]):
        loc = tuple(float(x) for x in locations)
        w = tuple(complex(v) for v in weights)
        if len(loc) != len(w):
            raise ValidationError("locations and weights differ in length")
        if not all(math.isfinite(x) for x in loc) or not all(
                math.isfinite(v.real) and math.isfinite(v.imag) for v in w):
            raise ValidationError("measure atoms must be finite")
        object.__setattr__(self, "locations", loc)
        object.__setattr__(self, "weights", w)

    @property
    def total_variation(self) -> float:
        return float(sum(abs(v) for v in self.weights))

    def __len__(self):
        return len(self.locations)


def a_convolve_measure(A: ParamSet, mu: DiscreteMeasure, f: Signal) -> Signal:
    """``mu *_A f = (2 pi |b|)^(-1/2) sum_j w_j T_{x_j}^A f``.

    The output grid covers every translate.  An empty measure returns zeros
    on the grid of ``f``.
    """
    if len(mu) == 0:
        return Signal.zeros(f.grid)
    parts = [a_translate(A, x, f) for x in mu.locations]
    grid = union_grid(f.grid, *(p.grid for p in parts))
    acc = np.zeros(grid.count, dtype=complex)
    for w, p in zip(mu.weights, parts):
        acc += w * embed(p, grid).values
    return Signal(grid, acc / math.sqrt(2.0 * math.pi * abs(A.b)))


# ---------------------------------------------------------------------------
# Multipliers and commutation
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class MultiplierSymbol:
    """A bounded SAFT-domain symbol ``phi(omega)``.

    Attributes:
        func: Vectorized callable ``omega -> complex``.
        bound: Declared sup bound; checked on every evaluation.
    """

    func: Callable
    bound: float

    def __call__(self, omega):
        v = np.asarray(self.func(np.asarray(omega, dtype=float)), dtype=complex)
        v = np.broadcast_to(v, np.shape(omega))
        if v.size and np.max(np.abs(v)) > self.bound * (1 + 1e-12):
            raise ValidationError(
                f"multiplier exceeds its declared bound {self.bound:g}")
        return v

    @classmethod
    def translation(cls, A: ParamSet, s: float) -> "MultiplierSymbol":
        """Symbol ``rho_A(s) exp(-i s omega / b)`` of ``T_s^A``."""
        r = rho(A, s)
        return cls(lambda w: r * np.exp(-1j * s * w / A.b), 1.0)

    @classmethod
    def convolution(cls, A: ParamSet, g: Signal) -> "MultiplierSymbol":
        """Symbol ``conj(eta_A) F_A g`` of ``f -> g *_A f``."""
        bound = g.norm(1) / math.sqrt(2.0 * math.pi * abs(A.b))
        return cls(lambda w: np.conj(eta(A, w)) * saft_points(A, g, np.ravel(w)).reshape(np.shape(w)),
                   bound)


def multiplier_apply(A: ParamSet, phi: MultiplierSymbol, f: Signal,
                     omega_grid: UniformGrid | None = None) -> Signal:
    """Apply the multiplier ``F_A^{-1} (phi F_A f)`` on the grid of ``f``.

    With the default matched frequency grid the forward/inverse pair is an
    exact discrete inverse, so ``phi = 1`` reproduces ``f`` to rounding.
    """
    if omega_grid is None:
        omega_grid = matched_frequency_grid(A, f.grid)
    F = saft_fast(A, f, omega_grid)
    return isaft(A, F.with_values(F.values * phi(F.points)), f.grid)


def wendel_commutation_defect(A: ParamSet, op: Callable[[Signal], Signal],
                              shifts: Sequence[float], probes: Sequence[Signal]) -> float:
    """Largest relative commutator ``||op(T_s f) - T_s(op f)|| / ||f||``.

    A bounded multiplier commutes with every A-translation; operators that
    are not multipliers generally do not.
    """
    worst = 0.0
    for f in probes:
        nf = f.norm(2)
        if nf == 0.0:
            continue
        opf = op(f)
        for s in shifts:
            lhs = op(a_translate(A, s, f))
            rhs = a_translate(A, s, opf)
            u = union_grid(lhs.grid, rhs.grid)
            d = embed(lhs, u).values - embed(rhs, u).values
            worst = max(worst, math.sqrt(float(np.sum(np.abs(d) ** 2)) * u.step) / nf)
    return worst


# ---------------------------------------------------------------------------
# Poisson summation
# ---------------------------------------------------------------------------
@dataclass
class PoissonResult:
    """Both sides of the A-Poisson summation identity at the points ``t``."""

    t: np.ndarray
    lhs: np.ndarray
    rhs: np.ndarray
    K: int
    N: int

    @property
    def defect(self) -> float:
        return float(np.max(np.abs(self.lhs - self.rhs))) if self.t.size else 0.0

    def __iter__(self):  # allows ``lhs, rhs, defect = poisson_check(...)``
        return iter((self.lhs, self.rhs, self.defect))


_POISSON_TAIL = 1e-10


def poisson_check(A: ParamSet, f, T, K: int | None = None, N: int | None = None, *,
                  window: tuple[float, float] = (-40.0, 40.0), dt: float = 0.01,
                  max_terms: int = 100000) -> PoissonResult:
    """Evaluate both sides of the A-Poisson summation formula.

    ``lhs(t) = sqrt(2 pi |b|) sum_{|k|<=K} T^A_{-2kb pi} f(t) exp(-2i a b k^2 pi^2)``

    ``rhs(t) = sum_{|n|<=N} conj(eta_A)(n+p) F_A f(n+p) exp(-(i/2b)(a t^2 - 2 n t))``

    Args:
        A: Parameter set.
        f: A :class:`Signal` (interpolated off-grid with a cubic spline and
            zero outside its window) or a vectorized callable (sampled on
            ``window`` with step ``dt`` for the transform side).
        T: Evaluation points.
        K, N: Truncation orders; when ``None`` they are chosen as the first
            index whose term magnitude falls below 1e-10.
        window, dt: Sampling of a callable ``f``.
        max_terms: Safety cap for the automatic truncation search.

    Returns:
        PoissonResult: ``lhs``, ``rhs``, ``defect`` plus the orders used.

    Warns:
        ConvergenceWarning: If the boundary term of either truncated sum
            exceeds 1e-10 in magnitude.
    """
    T = np.atleast_1d(np.asarray(T, dtype=float))
    if isinstance(f, Signal):
        sig = f
        spl = CubicSpline(f.points, f.values, extrapolate=False)

        def fx(x):
            v = spl(x)
            return np.where(np.isnan(v), 0.0, v)
    else:
        grid = UniformGrid.from_step(window[0], window[1], dt)
        sig = Signal(grid, np.asarray(f(grid.points), dtype=complex))

        def fx(x):
            return np.asarray(f(x), dtype=complex)

    c = math.sqrt(2.0 * math.pi * abs(A.b))
    period = 2.0 * A.b * math.pi

    def lhs_term(k):
        x = -k * period
        return (c * translate_phase(A, x, T) * fx(T - x)
                * np.exp(-2j * A.a * A.b * k * k * math.pi ** 2))

    def rhs_term(n):
        n = np.asarray(n, dtype=float)
        w = n + A.p
        coef = np.conj(eta(A, w)) * saft_points(A, sig, w)
        return coef[:, None] * np.exp(-0.5j / A.b * (A.a * T[None, :] ** 2
                                                     - 2.0 * n[:, None] * T[None, :]))

    # -- left side --------------------------------------------------------
    if K is None:
        K = 0
        while K < max_terms:
            if max(np.max(np.abs(lhs_term(K))), np.max(np.abs(lhs_term(-K)))) < _POISSON_TAIL \
                    and K > 0:
                break
            K += 1
    lhs = np.zeros(T.size, dtype=complex)
    for k in range(-K, K + 1):
        lhs += lhs_term(k)
    lhs_edge = max(np.max(np.abs(lhs_term(K))), np.max(np.abs(lhs_term(-K))))

    # -- right side -------------------------------------------------------
    if N is None:
        block = 64
        N = 0
        n0 = 0
        while n0 < max_terms:
            ns = np.arange(n0, n0 + block)
            mags = np.maximum(np.abs(saft_points(A, sig, ns + A.p)),
                              np.abs(saft_points(A, sig, -ns + A.p)))
            big = np.nonzero(mags >= _POISSON_TAIL)[0]
            if big.size:
                N = int(ns[big[-1]]) + 1
            if big.size == 0 or big[-1] < block - 8:
                break
            n0 += block
    ns = np.arange(-N, N + 1)
    rhs = rhs_term(ns).sum(axis=0)
    rhs_edge = float(np.max(np.abs(rhs_term(np.array([-N, N])))))

    if lhs_edge > _POISSON_TAIL or rhs_edge > _POISSON_TAIL:
        warnings.warn(
            f"Poisson truncation not converged (K={K}: {lhs_edge:.2e}, "
            f"N={N}: {rhs_edge:.2e})", ConvergenceWarning, stacklevel=2)
    return PoissonResult(T, lhs, rhs, int(K), int(N))
