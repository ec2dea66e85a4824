"""Parameter sets and the auxiliary chirp kernels of the SAFT.

The special affine Fourier transform is indexed by six real parameters
``A = (a, b, c, d, p, q)`` constrained by ``ad - bc = 1`` and ``b != 0``.
The kernel factors into two unimodular chirps:

.. math::

    \\eta_A(\\omega) = e^{\\frac{i}{2b}(d\\omega^2 + 2(bq - dp)\\omega)}, \\qquad
    \\rho_A(t) = e^{\\frac{i}{2b}(a t^2 + 2 p t)}.

Complex scalars are represented by Python/numpy ``complex`` values
(Cartesian storage).  Phases are always evaluated from their exponent, never
accumulated as products, so long chains of operations do not drift.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Mapping

import numpy as np

from .errors import DeterminantError, ValidationError, ZeroBError

__all__ = [
    "DET_TOL",
    "B_TOL",
    "ParamSet",
    "validate_params",
    "params_from_mapping",
    "eta",
    "rho",
    "chirp",
    "preset",
    "PRESET_NAMES",
]

DET_TOL = 1e-12
B_TOL = 1e-12

PRESET_NAMES = ("fourier", "inverse_fourier", "frft", "fresnel", "hyperbolic")


@dataclass(frozen=True)
class ParamSet:
    """Validated SAFT parameter set.

    Construct through :func:`validate_params` (or :func:`preset`); the
    dataclass itself re-checks the invariants on creation.

    Attributes:
        a, b, c, d: Entries of the unimodular matrix ``[[a, b], [c, d]]``.
        p, q: Offset (affine) parameters.
        c_derived: True when ``c`` was not supplied and was filled in as
            ``(ad - 1) / b``.
    """

    a: float
    b: float
    c: float
    d: float
    p: float = 0.0
    q: float = 0.0
    c_derived: bool = field(default=False, compare=False)

    def __post_init__(self):
        vals = (self.a, self.b, self.c, self.d, self.p, self.q)
        if not all(math.isfinite(float(v)) for v in vals):
            raise ValidationError(f"parameters must be finite, got {vals}")
        if abs(self.b) <= B_TOL:
            raise ZeroBError(f"|b| must exceed {B_TOL:g}, got b={self.b!r}")
        det = self.a * self.d - self.b * self.c
        if abs(det - 1.0) > DET_TOL:
            raise DeterminantError(
                f"ad - bc must equal 1 within {DET_TOL:g}, got {det!r}")

    # -- convenience -------------------------------------------------------
    @property
    def half_width(self) -> float:
        """Half width ``|b| pi`` of the fundamental interval ``I``."""
        return abs(self.b) * math.pi

    @property
    def period(self) -> float:
        """Length ``2 |b| pi`` of one period of the lattice symbols."""
        return 2.0 * abs(self.b) * math.pi

    @property
    def norm_const(self) -> float:
        """The recurring constant ``sqrt(2 pi |b|)``."""
        return math.sqrt(2.0 * math.pi * abs(self.b))

    def as_dict(self) -> dict:
        """Plain parameter dictionary (no flags)."""
        d = asdict(self)
        d.pop("c_derived")
        return d

    def eta(self, omega):
        return eta(self, omega)

    def rho(self, t):
        return rho(self, t)


def validate_params(a, b, c, d, p=0.0, q=0.0) -> ParamSet:
    """Validate six real parameters and return a :class:`ParamSet`.

    Args:
        a, b, c, d, p, q: Real scalars.

    Returns:
        ParamSet: The validated parameters.

    Raises:
        ZeroBError: If ``|b| <= 1e-12``.
        DeterminantError: If ``|ad - bc - 1| > 1e-12``.
        ValidationError: If any value is not finite.
    """
    return ParamSet(*(float(v) for v in (a, b, c, d, p, q)))


def params_from_mapping(obj: Mapping) -> ParamSet:
    """Build a ParamSet from a mapping, deriving a missing ``c``.

    A missing (or ``null``) ``c`` is filled as ``(ad - 1)/b``; the returned
    object then has ``c_derived=True`` so reports can flag it.
    """
    try:
        a = float(obj["a"])
        b = float(obj["b"])
        d = float(obj["d"])
    except KeyError as exc:
        raise ValidationError(f"missing parameter {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"non-numeric parameter: {exc}") from None
    p = float(obj.get("p", 0.0) or 0.0)
    q = float(obj.get("q", 0.0) or 0.0)
    c = obj.get("c")
    if c is None:
        if abs(b) <= B_TOL:
            raise ZeroBError(f"|b| must exceed {B_TOL:g}, got b={b!r}")
        return ParamSet(a, b, (a * d - 1.0) / b, d, p, q, c_derived=True)
    return validate_params(a, b, c, d, p, q)


def eta(A: ParamSet, omega):
    """Output chirp ``eta_A(omega)`` (vectorized over ``omega``)."""
    w = np.asarray(omega, dtype=float)
    phase = (A.d * w * w + 2.0 * (A.b * A.q - A.d * A.p) * w) / (2.0 * A.b)
    out = np.exp(1j * phase)
    return out if out.ndim else complex(out)


def rho(A: ParamSet, t):
    """Input chirp ``rho_A(t)`` (vectorized over ``t``)."""
    t = np.asarray(t, dtype=float)
    phase = (A.a * t * t + 2.0 * A.p * t) / (2.0 * A.b)
    out = np.exp(1j * phase)
    return out if out.ndim else complex(out)


def chirp(s: float, t):
    """Chirp ``exp(i s t^2 / 2)`` used by the modulation operator ``C_s``."""
    t = np.asarray(t, dtype=float)
    out = np.exp(0.5j * s * t * t)
    return out if out.ndim else complex(out)


def preset(name: str, param: float | None = None) -> ParamSet:
    """Named classical special cases.

    Args:
        name: One of ``fourier``, ``inverse_fourier``, ``frft``, ``fresnel``,
            ``hyperbolic``.
        param: Angle ``theta`` for ``frft``/``hyperbolic``, distance
            ``lambda`` for ``fresnel``.

    Returns:
        ParamSet: The corresponding parameter set.

    Raises:
        ZeroBError: If the induced ``b`` vanishes (``sin theta = 0``,
            ``lambda = 0``, hyperbolic ``theta = 0``).
        ValidationError: For unknown names or a missing parameter.
    """
    name = name.lower()
    if name == "fourier":
        return ParamSet(0.0, 1.0, -1.0, 0.0)
    if name == "inverse_fourier":
        return ParamSet(0.0, -1.0, 1.0, 0.0)
    if name not in PRESET_NAMES:
        raise ValidationError(f"unknown preset {name!r}; choose from {PRESET_NAMES}")
    if param is None:
        raise ValidationError(f"preset {name!r} requires a parameter")
    x = float(param)
    if name == "frft":
        theta = math.fmod(x, 2.0 * math.pi)
        if theta < 0:
            theta += 2.0 * math.pi
        s, co = math.sin(theta), math.cos(theta)
        if abs(s) <= B_TOL:
            raise ZeroBError(f"frft angle {x!r} gives sin(theta) = 0")
        # ad - bc = cos^2 + sin^2 can miss 1 by an ulp; renormalize.
        r = math.hypot(s, co)
        return ParamSet(co / r, s / r, -s / r, co / r)
    if name == "fresnel":
        if abs(x) <= B_TOL:
            raise ZeroBError("fresnel distance must be nonzero")
        return ParamSet(1.0, x, 0.0, 1.0)
    # hyperbolic
    sh, ch = math.sinh(x), math.cosh(x)
    if abs(sh) <= B_TOL:
        raise ZeroBError("hyperbolic angle must be nonzero")
    return ParamSet(ch, sh, sh, ch)
