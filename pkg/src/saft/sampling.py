"""Sampling and reconstruction in ``V_A(phi)``.

* :func:`reconstruction_filter` / :func:`interpolating_kernel` build the
  filter ``S`` with ``F_A S = F_A phi / phi_A^dagger``, so that
  ``f = sum_n f(n) T_n^A S`` for every ``f`` in the space.
* :func:`shannon_saft` is the chirped-sinc special case.
* :func:`dual_generator` builds the dual ``psi~`` with
  ``F_A psi~ = conj(phi_A^dagger) F_A phi / w_phi`` and measures its
  normalization against the sample-recovery identity.
* :func:`stability_bounds` and :func:`local_reconstruct` work with the
  finite-section sampling matrix ``U[j, k] = T_k^A phi(x_j)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .core import ParamSet, rho
from .errors import (AlignmentError, ConditionError, CountConditionError,
                     NotReconstructibleError, RankError, ValidationError)
from .generators import Generator, exact_sinc, translate_phase
from .grids import SampleSet, Signal, Spectrum, UniformGrid
from .siv import (PeriodicSymbol, classification_grid, classify_system,
                  phi_dagger, weight_function)
from .transform import generator_saft

__all__ = [
    "reconstruction_filter",
    "interpolating_kernel",
    "reconstruct_uniform",
    "shannon_saft",
    "DualGenerator",
    "dual_generator",
    "sampling_matrix",
    "stability_bounds",
    "SamplingReport",
    "local_reconstruct",
    "count_condition",
    "synthesize",
]

PINV_CUTOFF = 1e-12


def synthesize(A: ParamSet, gen: Generator, coeffs: dict, t) -> np.ndarray:
    """Evaluate ``sum_k c_k T_k^A phi(t)`` for a coefficient mapping."""
    t = np.asarray(t, dtype=float)
    out = np.zeros(t.shape, dtype=complex)
    for k, c in coeffs.items():
        out = out + c * gen.translate(A, k, t)
    return out


# ---------------------------------------------------------------------------
# Reconstruction filter (uniform integer samples)
# ---------------------------------------------------------------------------
def _check_dagger(A, gen, grid_pts, N):
    dag = phi_dagger(A, gen, grid_pts, N)
    F = np.abs(generator_saft(A, gen, grid_pts))
    fmax = float(np.max(F)) if F.size else 0.0
    bad = (np.abs(dag) < 1e-10) & (F > 1e-12 * max(fmax, 1e-300))
    if fmax == 0.0 or np.any(bad):
        raise NotReconstructibleError(
            "phi_A^dagger vanishes where the generator spectrum does not")
    return dag


def reconstruction_filter(A: ParamSet, gen: Generator, omega_grid: UniformGrid,
                          N: int | None = None, resolution: int = 1024) -> Spectrum:
    """Spectrum of the reconstruction filter ``S`` on ``omega_grid``.

    ``F_A S(omega) = F_A phi(omega) / phi_A^dagger(omega)``.  The symbol is
    checked on a full period before division.

    Raises:
        NotReconstructibleError: If ``|phi_A^dagger| < 1e-10`` somewhere the
            spectrum of ``phi`` is not negligible (or ``phi`` is zero).
    """
    _check_dagger(A, gen, classification_grid(A, resolution).points, N)
    w = omega_grid.points
    dag = phi_dagger(A, gen, w, N)
    F = generator_saft(A, gen, w)
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = np.where(np.abs(dag) > 0, F / dag, 0.0)
    return Spectrum(omega_grid, vals)


def interpolating_kernel(A: ParamSet, gen: Generator, L: int = 256,
                         N: int | None = None) -> tuple[PeriodicSymbol, Callable]:
    """Time-domain reconstruction filter ``S = sum_n c_n T_n^A phi``.

    ``1/phi_A^dagger`` is a ``2|b|pi``-periodic symbol; its coefficients
    ``c_n`` (see :class:`~saft.siv.PeriodicSymbol`) turn the spectral
    division into a finite combination of A-translates.

    Returns:
        tuple: ``(symbol, S)`` where ``S(t)`` evaluates the kernel.
    """
    _check_dagger(A, gen, classification_grid(A, 1024).points, N)
    sym = PeriodicSymbol.from_function(A, lambda w: 1.0 / phi_dagger(A, gen, w, N), L)

    def S(t):
        return sym.synthesize(gen, t)

    return sym, S


def reconstruct_uniform(A: ParamSet, S, samples: SampleSet, T: UniformGrid) -> Signal:
    """``f(t) = sum_n f(n) T_n^A S(t)`` over the provided integer samples.

    Args:
        A: Parameter set.
        S: Reconstruction filter, either a :class:`Signal` (zero outside its
            window; its grid must be aligned with ``T`` and its step must
            divide 1) or a vectorized callable.
        samples: Samples at consecutive integers.
        T: Output grid.

    Raises:
        AlignmentError: If a tabulated ``S`` is not aligned with ``T``.
    """
    ns = samples.integer_indices()
    t = T.points
    out = np.zeros(T.count, dtype=complex)
    if isinstance(S, Signal):
        g = S.grid
        if abs(g.step - T.step) > 1e-12 * T.step:
            raise AlignmentError("filter and output grids have different steps")
        r = (T.start - g.start) / g.step
        if abs(r - round(r)) > 1e-9 or abs(1.0 / g.step - round(1.0 / g.step)) > 1e-9:
            raise AlignmentError("filter grid is not aligned with the output grid")
        off, per = int(round(r)), int(round(1.0 / g.step))
        base = off + np.arange(T.count)
        for n, v in zip(ns, samples.values):
            if v == 0:
                continue
            idx = base - n * per
            ok = (idx >= 0) & (idx < g.count)
            vals = np.zeros(T.count, dtype=complex)
            vals[ok] = S.values[idx[ok]]
            out += v * translate_phase(A, n, t) * vals
    else:
        for n, v in zip(ns, samples.values):
            if v == 0:
                continue
            out += v * translate_phase(A, n, t) * np.asarray(S(t - n), dtype=complex)
    return Signal(T, out)


def shannon_saft(A: ParamSet, samples: SampleSet, t):
    """Chirped Shannon series ``sum_k f(k) exp(i a/(2b) (k^2 - t^2)) sinc(t - k)``."""
    ks = samples.integer_indices().astype(float)
    t = np.asarray(t, dtype=float)
    tt = t.reshape(-1)
    out = np.zeros(tt.size, dtype=complex)
    al = 0.5 * A.a / A.b
    for k, v in zip(ks, samples.values):
        if v == 0:
            continue
        out += v * np.exp(1j * al * (k * k - tt * tt)) * exact_sinc(tt - k)
    out = out.reshape(t.shape)
    return out if out.ndim else complex(out)


# ---------------------------------------------------------------------------
# Dual generator
# ---------------------------------------------------------------------------
@dataclass
class DualGenerator:
    """Dual generator spectrum with its measured normalization.

    Attributes:
        spectrum: ``F_A psi~`` on the requested grid.
        normalization: Measured ``kappa`` with ``<f, T_k^A psi~> = kappa f(k)``.
        predicted: Closed-form expectation ``2 pi |b|`` for the same constant.
        dagger_bounds: ``(min, max)`` of ``|phi_A^dagger|`` on ``E_phi``.
    """

    spectrum: Spectrum
    normalization: float
    predicted: float
    dagger_bounds: tuple
    pairing_grid: UniformGrid = field(repr=False, default=None)

    def recover(self, A: ParamSet, gen: Generator, Ff, k: int) -> complex:
        """``<f, T_k^A psi~> / kappa`` from ``F_A f`` sampled on the pairing grid."""
        return _pair(A, gen, Ff, k, self.pairing_grid) / self.normalization


def _dual_values(A, gen, w, dag_N=None):
    wf = np.asarray(weight_function(A, gen, w), dtype=float)
    dag = phi_dagger(A, gen, w, dag_N)
    F = generator_saft(A, gen, w)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(wf > 0, np.conj(dag) * F / np.where(wf > 0, wf, 1.0), 0.0), wf


def _pair(A, gen, Ff, k, grid):
    """``<f, T_k^A psi~>`` by Parseval on ``grid``."""
    w = grid.points
    Fd, _ = _dual_values(A, gen, w)
    mult = rho(A, k) * np.exp(-1j * k * w / A.b)
    return complex(np.sum(Ff * np.conj(mult * Fd)) * grid.step)


def _default_pairing_grid(A: ParamSet, gen: Generator) -> UniformGrid:
    if gen.compact_spectrum:
        # midpoint rule over one period is exact for the trigonometric
        # integrand once the spectrum is an indicator
        return classification_grid(A, 4096)
    hw = 200.0 * A.half_width
    return UniformGrid.from_range(A.p - hw, A.p + hw, 400 * 256 + 1)


def dual_generator(A: ParamSet, gen: Generator, omega_grid: UniformGrid,
                   tol: float = 1e-8, resolution: int = 1024,
                   pairing_grid: UniformGrid | None = None) -> DualGenerator:
    """Dual generator ``F_A psi~ = conj(phi_A^dagger) F_A phi / w_phi`` on ``E_phi``.

    The two-sided condition ``m chi_E <= |phi_A^dagger| <= M chi_E`` is
    checked on a grid over one period.  The normalization ``kappa`` of the
    sample-recovery pairing is measured by Parseval against ``phi`` itself
    (``<phi, T_n^A psi~> = kappa phi(n)`` at the largest integer sample).

    Raises:
        ConditionError: If the system is degenerate or the bound fails.
    """
    cls = classify_system(A, gen, resolution, tol=tol)
    if cls.verdict == "degenerate":
        raise ConditionError("degenerate generator: no dual exists")
    dag = np.abs(phi_dagger(A, gen, cls.grid.points))
    on, off = dag[cls.mask], dag[~cls.mask]
    if on.size == 0 or np.min(on) < tol or (off.size and np.max(off) > tol):
        raise ConditionError("|phi_A^dagger| violates the two-sided bound on E_phi")
    w = omega_grid.points
    Fd, wf = _dual_values(A, gen, w)
    wmax = cls.w_max
    Fd = np.where(wf > tol * wmax, Fd, 0.0)
    # normalization: pair phi with T_n psi~ at its strongest integer sample
    if gen.support is not None:
        lo, hi = gen.integer_range()
        ns = np.arange(lo, hi + 1)
    else:
        ns = np.arange(-2, 3)
    vals = gen.integer_samples(A, ns)
    n0 = int(ns[int(np.argmax(np.abs(vals)))])
    pg = pairing_grid or _default_pairing_grid(A, gen)
    kappa = _pair(A, gen, generator_saft(A, gen, pg.points), n0, pg) / complex(vals[ns == n0][0])
    return DualGenerator(Spectrum(omega_grid, Fd), float(kappa.real),
                         2.0 * math.pi * abs(A.b),
                         (float(np.min(on)), float(np.max(on))), pg)


# ---------------------------------------------------------------------------
# Finite-section sampling matrices
# ---------------------------------------------------------------------------
def sampling_matrix(A: ParamSet, gen: Generator, X, ks) -> np.ndarray:
    """``U[j, k] = T_k^A phi(x_j)``."""
    X = np.asarray(X, dtype=float)
    ks = np.asarray(ks, dtype=float)
    return gen.translate(A, ks[None, :], X[:, None])


def stability_bounds(A: ParamSet, gen: Generator, X, index_range) -> tuple[float, float]:
    """Squared extreme singular values of the finite section ``U``.

    When ``U`` has fewer rows than columns the lower bound is 0 (the
    section has a nontrivial kernel).  An empty ``X`` yields ``(0, 0)``.
    """
    X = np.asarray(X, dtype=float).reshape(-1)
    lo, hi = (int(v) for v in index_range)
    ks = np.arange(lo, hi + 1)
    if X.size == 0 or ks.size == 0:
        return 0.0, 0.0
    s = np.linalg.svd(sampling_matrix(A, gen, X, ks), compute_uv=False)
    smax = float(s[0]) ** 2
    smin = 0.0 if X.size < ks.size else float(s[-1]) ** 2
    return smin, smax


def count_condition(M: int, interval) -> int:
    """Minimum number of samples ``2M + b' - a' - 1`` for a local window."""
    a_, b_ = interval
    return int(math.ceil(2 * M + (b_ - a_) - 1))


@dataclass
class SamplingReport:
    """Result of a local reconstruction.

    Attributes:
        coefficients: ``c_k`` for ``k`` in ``indices``.
        indices: The unknown translate indices ``[a'-M+1, b'+M-1]``.
        residual_max, residual_l2: Residuals of ``U c - y`` at the samples.
        singular_values: Singular values of ``U`` (nonincreasing).
        rank: Numerical rank at the relative cutoff.
        active_columns: Columns of ``U`` that are not identically zero.
        error_max, error_l2: Errors on the dense grid when a truth is given.
        count_condition_met: Whether ``#X >= 2M + b' - a' - 1`` held.
        config: Resolved configuration.
    """

    coefficients: np.ndarray
    indices: np.ndarray
    residual_max: float
    residual_l2: float
    singular_values: np.ndarray
    rank: int
    active_columns: int
    count_condition_met: bool
    config: dict
    error_max: float | None = None
    error_l2: float | None = None
    dense_grid: UniformGrid | None = None
    reconstruction: np.ndarray | None = field(default=None, repr=False)
    truth: np.ndarray | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        d = {
            "coefficients": [[int(k), float(c.real), float(c.imag)]
                             for k, c in zip(self.indices, self.coefficients)],
            "residual_max": self.residual_max,
            "residual_l2": self.residual_l2,
            "singular_values": [float(s) for s in self.singular_values],
            "rank": self.rank,
            "active_columns": self.active_columns,
            "count_condition_met": self.count_condition_met,
            "config": self.config,
        }
        if self.error_max is not None:
            d["error_max"] = self.error_max
            d["error_l2"] = self.error_l2
        return d


def local_reconstruct(A: ParamSet, gen: Generator, X: SampleSet, interval,
                      M: int, *, enforce_count: bool = True, rank_slack: int = 0,
                      cutoff: float = PINV_CUTOFF, truth=None,
                      dense_step: float = 0.01) -> SamplingReport:
    """Local reconstruction on ``[a', b']`` by the SVD pseudoinverse.

    Unknowns are the coefficients of ``T_k^A phi`` for integer ``k`` in
    ``[a' - M + 1, b' + M - 1]``; singular values below ``cutoff * s_max``
    are discarded.  The minimum-norm solution is returned.

    Args:
        A: Parameter set.
        gen: Generator (evaluated pointwise).
        X: Samples; the points must lie in ``[a', b']``.
        interval: ``(a', b')``.
        M: Window extension.
        enforce_count: Raise when ``#X < 2M + b' - a' - 1``; when False the
            violation is recorded in the report instead.
        rank_slack: Allowed rank deficit relative to the active columns.
        cutoff: Relative singular-value cutoff.
        truth: Optional ground truth, a callable ``t -> f(t)`` or a mapping of
            coefficients ``{k: c_k}``; enables dense-grid errors.
        dense_step: Step of the dense error grid over ``[a', b']``.

    Raises:
        CountConditionError: If the count condition fails and is enforced.
        ValidationError: If a sample lies outside the interval.
        RankError: If the rank falls short of ``active - rank_slack``.
    """
    a_, b_ = float(interval[0]), float(interval[1])
    if not b_ > a_:
        raise ValidationError("interval must satisfy a' < b'")
    if M < 1:
        raise ValidationError("M must be a positive integer")
    x = X.points
    if x.size and (x[0] < a_ - 1e-12 or x[-1] > b_ + 1e-12):
        raise ValidationError("sample points must lie inside the interval")
    need = count_condition(M, (a_, b_))
    met = x.size >= need
    if enforce_count and not met:
        raise CountConditionError(
            f"#X = {x.size} violates 2M + b' - a' - 1 <= #X "
            f"(2*{M} + {b_:g} - ({a_:g}) - 1 = {need})")
    ks = np.arange(int(math.ceil(a_)) - M + 1, int(math.floor(b_)) + M - 1 + 1)
    U = sampling_matrix(A, gen, x, ks)
    col = np.linalg.norm(U, axis=0)
    active = int(np.count_nonzero(col > 1e-14 * max(float(col.max(initial=0.0)), 1e-300)))
    if x.size == 0 or not np.any(X.values):
        c = np.zeros(ks.size, dtype=complex)
        s = (np.linalg.svd(U, compute_uv=False) if x.size else np.zeros(0))
        rank = int(np.count_nonzero(s > cutoff * s[0])) if s.size and s[0] > 0 else 0
    else:
        Uu, s, Vh = np.linalg.svd(U, full_matrices=False)
        keep = s > cutoff * s[0]
        rank = int(np.count_nonzero(keep))
        c = Vh[keep].conj().T @ ((Uu[:, keep].conj().T @ X.values) / s[keep])
    if x.size and rank < active - rank_slack:
        raise RankError(f"numerical rank {rank} < {active} active columns "
                        f"(slack {rank_slack})")
    res = U @ c - X.values if x.size else np.zeros(0)
    cfg = {
        "params": A.as_dict(),
        "c_derived": A.c_derived,
        "generator": gen.name,
        "interval": [a_, b_],
        "M": int(M),
        "N_unknowns": int(ks.size),
        "num_samples": int(x.size),
        "count_required": need,
        "cutoff": cutoff,
        "rank_slack": rank_slack,
    }
    rep = SamplingReport(c, ks, float(np.max(np.abs(res))) if res.size else 0.0,
                         float(np.linalg.norm(res)), s, rank, active, bool(met), cfg)
    grid = UniformGrid.from_step(a_, b_, dense_step)
    t = grid.points
    coeffs = {int(k): v for k, v in zip(ks, c) if v != 0}
    rec = synthesize(A, gen, coeffs, t)
    rep.dense_grid, rep.reconstruction = grid, rec
    if truth is not None:
        tv = synthesize(A, gen, truth, t) if isinstance(truth, dict) else np.asarray(truth(t))
        err = np.abs(rec - tv)
        rep.truth = tv
        rep.error_max = float(np.max(err))
        rep.error_l2 = float(math.sqrt(np.sum(err ** 2) * grid.step))
    return rep
