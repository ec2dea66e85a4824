"""File formats: parameter JSON, signal/spectrum/sample CSV, JSON reports.

CSV files carry a one-line header and 17 significant digits per number, so
doubles round-trip exactly.  All writers are atomic: data go to a temporary
file in the destination directory which is then renamed over the target.
"""
from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from pathlib import Path

import numpy as np

from .core import ParamSet, params_from_mapping, preset
from .errors import ValidationError
from .grids import SampleSet, Signal, Spectrum, grid_from_points
from .operators import DiscreteMeasure
from .zak import ZakField

__all__ = [
    "atomic_write_text",
    "load_params",
    "dump_params",
    "read_signal",
    "write_signal",
    "read_spectrum",
    "write_spectrum",
    "read_samples",
    "write_samples",
    "read_measure",
    "write_measure",
    "write_zak",
    "write_json",
    "to_jsonable",
]

_FMT = "{:.17g}"


def atomic_write_text(path, text: str) -> None:
    """Write ``text`` to ``path`` via a temporary file and ``os.replace``."""
    path = Path(path)
    directory = path.parent if str(path.parent) else Path(".")
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=directory)
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------
def to_jsonable(obj):
    """Recursively convert numpy/complex values into JSON-compatible values.

    Complex numbers become ``{"re": ..., "im": ...}``; non-finite floats
    become strings (``"inf"``, ``"nan"``) so the output is strict JSON.
    """
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": to_jsonable(float(obj.real)), "im": to_jsonable(float(obj.imag))}
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else str(x)
    return obj


def write_json(path, obj) -> None:
    atomic_write_text(path, json.dumps(to_jsonable(obj), indent=2, allow_nan=False) + "\n")


def load_params(source) -> ParamSet:
    """Load a ParamSet from a JSON file or a ``preset:NAME[:VALUE]`` spec.

    A missing ``c`` is derived as ``(ad - 1)/b`` and flagged via
    ``ParamSet.c_derived``.
    """
    s = str(source)
    if s.startswith("preset:"):
        parts = s.split(":")
        return preset(parts[1], float(parts[2]) if len(parts) > 2 else None)
    with open(s) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{s}: invalid JSON ({exc})") from None
    if not isinstance(obj, dict):
        raise ValidationError(f"{s}: parameter file must hold a JSON object")
    return params_from_mapping(obj)


def dump_params(A: ParamSet) -> dict:
    d = A.as_dict()
    if A.c_derived:
        d["c_derived"] = True
    return d


# ---------------------------------------------------------------------------
# CSV
# ---------------------------------------------------------------------------
def _read_xyz(path, first: str):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise ValidationError(f"{path}: empty file") from None
        if header != [first, "re", "im"]:
            raise ValidationError(f"{path}: expected header '{first},re,im', got {header}")
        rows = []
        for i, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 3:
                raise ValidationError(f"{path}:{i}: expected 3 columns")
            try:
                rows.append([float(c) for c in row])
            except ValueError:
                raise ValidationError(f"{path}:{i}: non-numeric value") from None
    arr = np.asarray(rows, dtype=float).reshape(-1, 3)
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{path}: non-finite values")
    return arr[:, 0], arr[:, 1] + 1j * arr[:, 2]


def _format_rows(header: str, x, v) -> str:
    buf = io.StringIO()
    buf.write(header + "\n")
    for xi, vi in zip(np.asarray(x, dtype=float), np.asarray(v, dtype=complex)):
        buf.write(",".join(_FMT.format(z) for z in (xi, vi.real, vi.imag)) + "\n")
    return buf.getvalue()


def read_signal(path) -> Signal:
    """Read a ``t,re,im`` CSV on a uniform grid."""
    t, v = _read_xyz(path, "t")
    return Signal(grid_from_points(t), v)


def write_signal(path, f: Signal) -> None:
    atomic_write_text(path, _format_rows("t,re,im", f.points, f.values))


def read_spectrum(path) -> Spectrum:
    """Read an ``omega,re,im`` CSV on a uniform grid."""
    w, v = _read_xyz(path, "omega")
    return Spectrum(grid_from_points(w), v)


def write_spectrum(path, F: Spectrum) -> None:
    atomic_write_text(path, _format_rows("omega,re,im", F.points, F.values))


def read_samples(path) -> SampleSet:
    """Read an ``x,re,im`` CSV (points need not be uniform)."""
    x, v = _read_xyz(path, "x")
    return SampleSet(x, v)


def write_samples(path, s: SampleSet) -> None:
    atomic_write_text(path, _format_rows("x,re,im", s.points, s.values))


def write_zak(path, z: ZakField) -> None:
    """Write a ZakField as ``t,omega,re,im`` rows (t major)."""
    buf = io.StringIO()
    buf.write("t,omega,re,im\n")
    for t, row in zip(z.t_grid.points, z.values):
        for w, v in zip(z.omega_grid.points, row):
            buf.write(",".join(_FMT.format(x) for x in (t, w, v.real, v.imag)) + "\n")
    atomic_write_text(path, buf.getvalue())


def read_measure(path) -> DiscreteMeasure:
    """Read ``[{"x": loc, "re": w_re, "im": w_im}, ...]``."""
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(obj, list):
        raise ValidationError(f"{path}: a measure is a JSON list of atoms")
    try:
        return DiscreteMeasure([a["x"] for a in obj],
                               [complex(a.get("re", 0.0), a.get("im", 0.0)) for a in obj])
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"{path}: malformed atom ({exc})") from None


def write_measure(path, mu: DiscreteMeasure) -> None:
    atoms = [{"x": x, "re": w.real, "im": w.imag} for x, w in zip(mu.locations, mu.weights)]
    write_json(path, atoms)
