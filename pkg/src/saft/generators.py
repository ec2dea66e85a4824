"""Generators of A-shift-invariant spaces.

A :class:`Generator` is a small descriptor.  Analytic kinds are evaluated in
closed form; tabulated generators are interpolated with a cubic spline and
treated as zero outside their tabulation window.

Supported kinds:

``chirped_sinc``
    ``psi(t) = exp(-i a t^2 / (2b)) sinc(t)``; depends on the parameter set.
``bspline2``
    The hat ``chi_[0,1] * chi_[0,1]`` supported on ``[0, 2]``, or its centred
    version ``chi_[-1/2,1/2] * chi_[-1/2,1/2]`` on ``[-1, 1]``.
``tabulated``
    Complex samples on a uniform grid with optional decay metadata.
``zero``
    The zero function (useful as a degenerate probe).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from .core import ParamSet
from .errors import UnsupportedGenerator, ValidationError
from .grids import Signal

__all__ = ["Generator", "GENERATOR_KINDS", "exact_sinc", "translate_phase",
           "make_generator"]

GENERATOR_KINDS = ("chirped_sinc", "bspline2", "tabulated", "zero")


def exact_sinc(x):
    """Normalized sinc ``sin(pi x)/(pi x)``, exactly 0/1 at the integers.

    The argument is reduced to the nearest integer first, so values close to
    the integers keep full relative accuracy.
    """
    x = np.asarray(x, dtype=float)
    n = np.round(x)
    r = x - n
    sign = np.where(np.mod(n, 2) == 0, 1.0, -1.0)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = sign * np.sin(math.pi * r) / (math.pi * x)
    out = np.where(r == 0.0, np.where(x == 0.0, 1.0, 0.0), out)
    return out if out.ndim else float(out)


def translate_phase(A: ParamSet, x, t):
    """Phase factor ``exp(-i (a/b) x (t - x))`` of the A-translation."""
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    return np.exp(-1j * (A.a / A.b) * x * (t - x))


@dataclass(frozen=True)
class Generator:
    """Descriptor of a generator ``phi``.

    Attributes:
        kind: One of :data:`GENERATOR_KINDS`.
        centered: For ``bspline2``: hat on ``[-1, 1]`` instead of ``[0, 2]``.
        samples: Tabulation for ``tabulated`` generators.
        decay: Optional class-A decay metadata ``(M1, M2, eps)``: caller
            declared constants with ``|phi(x)|, |phi'(x)| <= M (1+|x|)^(-1-eps)``.
        support: Optional support interval ``(lo, hi)``.
    """

    kind: str
    centered: bool = False
    samples: Signal | None = field(default=None, compare=False)
    decay: tuple | None = None
    support: tuple | None = None

    def __post_init__(self):
        if self.kind not in GENERATOR_KINDS:
            raise UnsupportedGenerator(
                f"unknown generator {self.kind!r}; choose from {GENERATOR_KINDS}")
        if self.kind == "tabulated" and self.samples is None:
            raise ValidationError("tabulated generator requires samples")
        if self.decay is not None:
            if len(self.decay) != 3 or not all(float(v) > 0 for v in self.decay):
                raise ValidationError("decay metadata must be three positive numbers")
        if self.support is None:
            object.__setattr__(self, "support", self._default_support())

    # ------------------------------------------------------------------
    def _default_support(self):
        if self.kind == "bspline2":
            return (-1.0, 1.0) if self.centered else (0.0, 2.0)
        if self.kind == "tabulated":
            return (self.samples.grid.start, self.samples.grid.stop)
        if self.kind == "zero":
            return (0.0, 0.0)
        return None  # chirped sinc: not compactly supported

    @property
    def name(self) -> str:
        if self.kind == "bspline2" and self.centered:
            return "bspline2c"
        return self.kind

    @property
    def compact(self) -> bool:
        return self.support is not None

    @property
    def compact_spectrum(self) -> bool:
        return self.kind in ("chirped_sinc", "zero")

    @property
    def offset(self) -> float:
        """Left end of the hat (``-1`` centred, ``0`` otherwise)."""
        return -1.0 if self.centered else 0.0

    def pieces(self):
        """Linear pieces ``(lo, hi, c0, c1)`` with ``phi = c0 + c1 t`` on [lo, hi]."""
        if self.kind != "bspline2":
            raise UnsupportedGenerator("only bspline2 is piecewise linear")
        o = self.offset
        # rising edge  t - o on [o, o+1];  falling edge  (o + 2) - t on [o+1, o+2]
        return ((o, o + 1.0, -o, 1.0), (o + 1.0, o + 2.0, o + 2.0, -1.0))

    def norm2(self, A: ParamSet | None = None) -> float:
        """Squared ``L^2`` norm (exact for the analytic kinds)."""
        if self.kind == "chirped_sinc":
            return 1.0
        if self.kind == "bspline2":
            return 2.0 / 3.0
        if self.kind == "zero":
            return 0.0
        return self.samples.norm(2) ** 2

    # ------------------------------------------------------------------
    def evaluate(self, t, A: ParamSet | None = None):
        """Pointwise values ``phi(t)`` (``A`` required for the chirped sinc)."""
        t = np.asarray(t, dtype=float)
        if self.kind == "chirped_sinc":
            if A is None:
                raise ValidationError("the chirped sinc depends on the parameter set")
            out = np.exp(-0.5j * (A.a / A.b) * t * t) * exact_sinc(t)
        elif self.kind == "bspline2":
            out = np.maximum(0.0, 1.0 - np.abs(t - (self.offset + 1.0))).astype(complex)
        elif self.kind == "zero":
            out = np.zeros(t.shape, dtype=complex)
        else:
            out = self._interp(t)
        return out

    def _interp(self, t):
        s = self.samples
        spl = getattr(self, "_spline", None)
        if spl is None:
            spl = CubicSpline(s.points, s.values, bc_type="natural", extrapolate=False)
            object.__setattr__(self, "_spline", spl)
        out = spl(t)
        return np.where(np.isnan(out), 0.0, out).astype(complex)

    def translate(self, A: ParamSet, k, t):
        """Values of the A-translate ``T_k^A phi(t) = e^{-i(a/b)k(t-k)} phi(t-k)``.

        ``k`` and ``t`` broadcast against each other.
        """
        k = np.asarray(k, dtype=float)
        t = np.asarray(t, dtype=float)
        if self.kind == "chirped_sinc":
            # combined phase exp(-i a/(2b) (t^2 - k^2)) avoids two large phases
            return np.exp(-0.5j * (A.a / A.b) * (t * t - k * k)) * exact_sinc(t - k)
        return translate_phase(A, k, t) * self.evaluate(t - k, A)

    def integer_samples(self, A: ParamSet, n):
        """``phi(n)`` at integers ``n`` (exact for the analytic kinds)."""
        n = np.asarray(n)
        if self.kind == "chirped_sinc":
            return np.where(n == 0, 1.0 + 0j, 0.0 + 0j)
        if self.kind == "bspline2":
            return np.where(n == int(self.offset) + 1, 1.0 + 0j, 0.0 + 0j)
        return self.evaluate(n.astype(float), A)

    def integer_range(self, pad: int = 0):
        """Integers where ``phi`` may be nonzero, for compact generators."""
        if self.support is None:
            raise ValidationError("generator is not compactly supported")
        lo, hi = self.support
        return int(math.floor(lo)) - pad, int(math.ceil(hi)) + pad


def make_generator(name: str, **kw) -> Generator:
    """Generator from a CLI-style name (``bspline2c`` selects the centred hat)."""
    if name == "bspline2c":
        return Generator("bspline2", centered=True, **kw)
    return Generator(name, **kw)
