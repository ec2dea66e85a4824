"""Deterministic fixtures shipped with the package (and their generators).

The files under ``saft/data`` are produced by :func:`write_all`; the test
suite regenerates them and checks they still match.  Ground truth is always
synthesized as a coefficient combination first and sampled afterwards.

Run ``python -m saft.fixtures DIR`` to regenerate the files into ``DIR``.
"""
from __future__ import annotations

import json
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from .core import ParamSet, params_from_mapping, preset
from .generators import Generator
from .grids import SampleSet, Signal, UniformGrid
from .sampling import synthesize

__all__ = [
    "DEFAULT_SEED",
    "LOCAL_INTERVAL",
    "LOCAL_NUM_POINTS",
    "LOCAL_ROWS",
    "data_path",
    "a2b3_params",
    "gaussian_signal",
    "random_coefficients",
    "local_points",
    "local_setup",
    "chirped_sinc_fixture",
    "write_all",
]

DEFAULT_SEED = 7
LOCAL_INTERVAL = (-10.0, 10.0)
LOCAL_NUM_POINTS = 61
LOCAL_ROWS = (10, 50, 250, 400)
LOCAL_JITTER = 0.1


def data_path(name: str) -> Path:
    """Path of a bundled data file."""
    return Path(str(resources.files("saft") / "data" / name))


def a2b3_params() -> ParamSet:
    """``a=2, b=3, d=4, p=q=0`` with ``c`` derived from ``ad - bc = 1``."""
    return params_from_mapping({"a": 2.0, "b": 3.0, "d": 4.0, "p": 0.0, "q": 0.0})


def gaussian_signal(step: float = 0.05, half_width: float = 10.0) -> Signal:
    """``exp(-t^2/2)`` on ``[-half_width, half_width]``."""
    g = UniformGrid.from_step(-half_width, half_width, step)
    return Signal(g, np.exp(-0.5 * g.points ** 2))


def random_coefficients(rng: np.random.Generator, ks) -> dict:
    """Standard complex normal coefficients for the indices ``ks``."""
    z = rng.standard_normal((len(ks), 2))
    return {int(k): complex(a, b) for k, (a, b) in zip(ks, z)}


def local_points(seed: int = DEFAULT_SEED, n: int = LOCAL_NUM_POINTS,
                  interval=LOCAL_INTERVAL, jitter: float = LOCAL_JITTER) -> np.ndarray:
    """Jittered uniform sampling set inside ``interval`` (sorted, clipped)."""
    rng = np.random.default_rng([seed, 1])
    x = np.linspace(interval[0], interval[1], n)
    x = x + rng.uniform(-jitter, jitter, n)
    x = np.clip(x, interval[0], interval[1])
    return np.sort(x)


def local_setup(seed: int = DEFAULT_SEED):
    """Parameters, generator, coefficients and samples of the local benchmark.

    Returns:
        tuple: ``(A, gen, coeffs, samples)``.
    """
    A = a2b3_params()
    gen = Generator("bspline2", centered=True)
    rng = np.random.default_rng([seed, 0])
    lo, hi = LOCAL_INTERVAL
    coeffs = random_coefficients(rng, range(int(lo), int(hi) + 1))
    x = local_points(seed)
    samples = SampleSet(x, synthesize(A, gen, coeffs, x))
    return A, gen, coeffs, samples


def chirped_sinc_fixture(seed: int = DEFAULT_SEED):
    """Integer samples and dense truth of a chirped-sinc combination (a2b3).

    Returns:
        tuple: ``(A, coeffs, samples, truth)`` with samples at ``-12..12`` and
        the truth on ``[-10, 10]`` with step 0.05.
    """
    A = a2b3_params()
    gen = Generator("chirped_sinc")
    rng = np.random.default_rng([seed, 2])
    coeffs = random_coefficients(rng, range(-8, 9))
    ns = np.arange(-12, 13)
    samples = SampleSet(ns, synthesize(A, gen, coeffs, ns))
    g = UniformGrid.from_step(-10.0, 10.0, 0.05)
    truth = Signal(g, synthesize(A, gen, coeffs, g.points))
    return A, coeffs, samples, truth


def write_all(directory) -> None:
    """Write every bundled fixture into ``directory``."""
    from .io import write_json, write_samples, write_signal

    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    write_json(d / "fourier.json", preset("fourier").as_dict())
    write_json(d / "a2b3.json", {"a": 2.0, "b": 3.0, "d": 4.0, "p": 0.0, "q": 0.0})
    write_signal(d / "gauss.csv", gaussian_signal())
    _, coeffs, samples, truth = chirped_sinc_fixture()
    write_samples(d / "chirped_sinc_samples.csv", samples)
    write_signal(d / "chirped_sinc_truth.csv", truth)
    write_json(d / "chirped_sinc_coefficients.json",
               {"seed": DEFAULT_SEED, "generator": "chirped_sinc",
                "coefficients": [[k, c.real, c.imag] for k, c in coeffs.items()]})
    _, _, coeffs, samples = local_setup()
    write_json(d / "local_coefficients.json",
               {"seed": DEFAULT_SEED, "generator": "bspline2c",
                "interval": list(LOCAL_INTERVAL), "jitter": LOCAL_JITTER,
                "coefficients": [[k, c.real, c.imag] for k, c in coeffs.items()],
                "points": samples.points.tolist()})
    write_samples(d / "local_samples.csv", samples)


def load_coefficients(path) -> dict:
    """Read a ``{"coefficients": [[k, re, im], ...]}`` fixture."""
    with open(path) as fh:
        obj = json.load(fh)
    return {int(k): complex(re, im) for k, re, im in obj["coefficients"]}


if __name__ == "__main__":  # pragma: no cover
    write_all(sys.argv[1] if len(sys.argv) > 1 else data_path(""))
