"""The A-Zak transform and its isometry diagnostic.

.. math::

    Z_A f(t, \\omega) = \\frac{\\overline{\\eta_A}(\\omega)}{\\sqrt{2\\pi|b|}}
        \\sum_k f(t-k)\\, e^{\\frac{i}{2b}(a k^2 - 2akt + 2k\\omega - 2pk)}

The same field can be written as a lattice sum of A-translates,
``sum_k T_k^A f(t) exp(-(i/2b)(a k^2 - 2 k omega + 2 p k))``; both forms are
implemented so they can be compared.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .core import ParamSet, eta
from .errors import AlignmentError, TruncationWarning, ValidationError
from .generators import translate_phase
from .grids import Signal, UniformGrid

__all__ = ["ZakField", "zak", "zak_points", "zak_isometry_defect",
           "zak_default_grids"]

_TRUNC_TOL = 1e-12


@dataclass
class ZakField:
    """Zak transform samples; ``values[i, j]`` is at ``(t_i, omega_j)``."""

    t_grid: UniformGrid
    omega_grid: UniformGrid
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (self.t_grid.count, self.omega_grid.count):
            raise ValidationError("ZakField values do not match the grids")

    def norm2(self) -> float:
        """Rectangle-rule squared ``L^2`` norm over the grid cells."""
        return float(np.sum(np.abs(self.values) ** 2)
                     * self.t_grid.step * self.omega_grid.step)


def zak_default_grids(A: ParamSet, resolution: int):
    """``resolution`` points on ``[0, 1)`` and on ``I = [-|b| pi, |b| pi)``."""
    tg = UniformGrid(0.0, 1.0 / resolution, resolution)
    hw = A.half_width
    wg = UniformGrid(-hw, 2.0 * hw / resolution, resolution)
    return tg, wg


def _shifted_samples(f: Signal, t: np.ndarray, k: np.ndarray) -> np.ndarray:
    """``f(t_i - k_m)`` for grid-aligned arguments (zero outside the window)."""
    arg = t[:, None] - k[None, :]
    r = (arg - f.grid.start) / f.grid.step
    idx = np.round(r)
    if np.max(np.abs(r - idx)) > 1e-6:
        raise AlignmentError("t - k must fall on the signal grid")
    idx = idx.astype(np.int64)
    inside = (idx >= 0) & (idx < f.grid.count)
    out = np.zeros(arg.shape, dtype=complex)
    out[inside] = f.values[idx[inside]]
    return out


def zak_points(A: ParamSet, f: Signal, t, omega, K: int, form: str = "simplified",
               warn: bool = True) -> np.ndarray:
    """Zak transform on the tensor grid ``t x omega`` (arrays, not grids).

    Args:
        A: Parameter set.
        f: Signal; ``t - k`` must land on its grid.
        t, omega: 1-d arrays of evaluation coordinates.
        K: Lattice truncation, ``|k| <= K``.
        form: ``"simplified"`` (closed phase) or ``"translate"`` (lattice of
            A-translates with a separate modulation factor).
        warn: Emit :class:`TruncationWarning` for non-negligible edge terms.

    Returns:
        ndarray: Shape ``(len(t), len(omega))``.
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    omega = np.atleast_1d(np.asarray(omega, dtype=float))
    k = np.arange(-int(K), int(K) + 1, dtype=float)
    fs = _shifted_samples(f, t, k)                      # (nt, nk)
    if warn and K >= 0:
        edge = max(np.max(np.abs(fs[:, 0])), np.max(np.abs(fs[:, -1])))
        if edge > _TRUNC_TOL:
            warnings.warn(f"Zak truncation K={K}: boundary term {edge:.2e}",
                          TruncationWarning, stacklevel=2)
    if form == "simplified":
        ph_t = np.exp(0.5j / A.b * (A.a * k[None, :] ** 2
                                    - 2.0 * A.a * k[None, :] * t[:, None]
                                    - 2.0 * A.p * k[None, :]))
        terms = fs * ph_t
        ph_w = np.exp(1j * np.outer(k, omega) / A.b)       # (nk, nw)
    elif form == "translate":
        terms = translate_phase(A, k[None, :], t[:, None]) * fs
        ph_w = np.exp(-0.5j / A.b * (A.a * k[:, None] ** 2
                                     - 2.0 * k[:, None] * omega[None, :]
                                     + 2.0 * A.p * k[:, None]))
    else:
        raise ValueError(f"unknown form {form!r}")
    vals = terms @ ph_w
    return vals * (np.conj(eta(A, omega))[None, :] / math.sqrt(2.0 * math.pi * abs(A.b)))


def zak(A: ParamSet, f: Signal, t_grid: UniformGrid, omega_grid: UniformGrid,
        K: int, form: str = "simplified") -> ZakField:
    """A-Zak transform of ``f`` on a rectangular grid.

    Raises:
        AlignmentError: If ``t - k`` misses the grid of ``f``.

    Warns:
        TruncationWarning: If the ``|k| = K`` terms exceed 1e-12.
    """
    vals = zak_points(A, f, t_grid.points, omega_grid.points, K, form=form)
    return ZakField(t_grid, omega_grid, vals)


def _support_K(f: Signal) -> int:
    return int(math.ceil(max(abs(f.grid.start), abs(f.grid.stop)))) + 1


def zak_isometry_defect(A: ParamSet, f: Signal, resolution: int = 512,
                        K: int | None = None) -> float:
    """Relative defect ``| ||Z_A f||^2 - ||f||^2 | / ||f||^2``.

    Both norms use the rectangle rule: ``||f||`` on the grid of ``f`` and
    ``||Z_A f||`` on ``resolution x resolution`` cells of ``[0,1) x I``.
    A zero signal returns 0.
    """
    nf2 = f.norm(2) ** 2
    if nf2 == 0.0:
        return 0.0
    if K is None:
        K = _support_K(f)
    if resolution < 2 * K + 1:
        raise ValidationError("resolution must exceed 2K+1 to resolve the lattice sum")
    tg, wg = zak_default_grids(A, resolution)
    field = zak(A, f, tg, wg, K)
    return abs(field.norm2() - nf2) / nf2
