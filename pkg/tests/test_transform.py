import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from saft.core import eta, preset, validate_params
from saft.errors import GridError, UnsupportedGenerator
from saft.generators import Generator, make_generator
from saft.grids import Signal, Spectrum, UniformGrid
from saft.transform import (bluestein, chirp_integral, covering_frequency_grid,
                            generator_saft, isaft, matched_frequency_grid, saft_fast,
                            saft_points, saft_quadrature)

from conftest import PARAM_SETS


def gaussian_saft(A, omega, s=1.0, t0=0.0):
    """Closed-form SAFT of exp(-(t-t0)^2/(2 s^2)) (complex Gaussian integral)."""
    omega = np.asarray(omega, dtype=float)
    alpha = 1 / (2 * s * s) - 1j * A.a / (2 * A.b)
    beta = t0 / (s * s) + 1j * (A.p - omega) / A.b
    gamma = -t0 * t0 / (2 * s * s)
    integral = np.sqrt(np.pi / alpha) * np.exp(beta * beta / (4 * alpha) + gamma)
    return eta(A, omega) * integral / math.sqrt(2 * math.pi * abs(A.b))


def _params(tup):
    return validate_params(*tup)


TGRID = UniformGrid.from_step(-12, 12, 0.02)


@pytest.mark.parametrize("tup", PARAM_SETS)
def test_gaussian_closed_form_quadrature(tup):
    A = _params(tup)
    f = Signal.from_function(lambda t: np.exp(-(t - 0.5) ** 2 / 2), TGRID)
    w = np.linspace(-4, 4, 41) * abs(A.b) + A.p
    got = saft_points(A, f, w)
    ref = gaussian_saft(A, w, t0=0.5)
    assert np.max(np.abs(got - ref)) < 1e-10


@pytest.mark.parametrize("tup", PARAM_SETS)
def test_fast_matches_closed_form(tup):
    A = _params(tup)
    f = Signal.from_function(lambda t: np.exp(-t ** 2 / 2), TGRID)
    F = saft_fast(A, f)
    ref = gaussian_saft(A, F.points)
    assert np.max(np.abs(F.values - ref)) < 1e-9


@pytest.mark.parametrize("tup", PARAM_SETS)
def test_fast_equals_quadrature_on_covering_grid(tup):
    A = _params(tup)
    tg = UniformGrid.from_step(-6, 6, 0.05)
    rng = np.random.default_rng(1)
    f = Signal(tg, rng.normal(size=tg.count) + 1j * rng.normal(size=tg.count))
    og = covering_frequency_grid(A, tg, oversample=1.3)
    F1 = saft_fast(A, f, og)
    F2 = saft_quadrature(A, f, og)
    assert np.max(np.abs(F1.values - F2.values)) / np.max(np.abs(F2.values)) < 1e-11


def test_fourier_special_case_matches_fft():
    A = preset("fourier")
    tg = UniformGrid(-8.0, 0.125, 128)
    rng = np.random.default_rng(2)
    x = rng.normal(size=128) + 1j * rng.normal(size=128)
    F = saft_fast(A, Signal(tg, x))
    # F(w) = 1/sqrt(2pi) sum x_j e^{-i w t_j} dt
    w = F.points
    ref = np.exp(-1j * np.outer(w, tg.points)) @ x * tg.step / math.sqrt(2 * math.pi)
    assert np.max(np.abs(F.values - ref)) < 1e-12


def test_bluestein_direct_sum():
    rng = np.random.default_rng(3)
    x = rng.normal(size=37) + 1j * rng.normal(size=37)
    theta = 0.731
    m = 53
    ref = np.exp(-1j * theta * np.outer(np.arange(m), np.arange(37))) @ x
    assert np.max(np.abs(bluestein(x, m, theta) - ref)) < 1e-11


@pytest.mark.parametrize("tup", PARAM_SETS)
def test_round_trip_matched_grid(tup):
    A = _params(tup)
    tg = UniformGrid(-10.0, 0.05, 400)
    rng = np.random.default_rng(4)
    f = Signal(tg, rng.normal(size=tg.count) + 1j * rng.normal(size=tg.count))
    F = saft_fast(A, f)
    back = isaft(A, F, tg)
    assert np.max(np.abs(back.values - f.values)) < 1e-10
    back_q = isaft(A, F, tg, method="quadrature")
    assert np.max(np.abs(back_q.values - f.values)) < 1e-10


@pytest.mark.parametrize("tup", PARAM_SETS)
def test_parseval_discrete(tup):
    A = _params(tup)
    f = Signal.from_function(lambda t: np.exp(-t ** 2 / 3) * np.cos(2 * t), TGRID)
    F = saft_fast(A, f)
    assert abs(F.norm() - f.norm()) / f.norm() < 1e-12


@settings(max_examples=25, deadline=None)
@given(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False),
       st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False))
def test_linearity(alpha, beta):
    A = _params(PARAM_SETS[1])
    tg = UniformGrid(-4.0, 0.1, 81)
    f = Signal.from_function(lambda t: np.exp(-t ** 2), tg)
    g = Signal.from_function(lambda t: t * np.exp(-t ** 2 / 2), tg)
    lhs = saft_fast(A, f * alpha + g * beta).values
    rhs = alpha * saft_fast(A, f).values + beta * saft_fast(A, g).values
    assert np.max(np.abs(lhs - rhs)) < 1e-12 * (1 + abs(alpha) + abs(beta))


def test_inverse_of_forward_is_identity_on_fourier_inverse_preset():
    """F_{A^{-1}} for Fourier is the inverse Fourier transform preset."""
    A = preset("fourier")
    Ainv = preset("inverse_fourier")
    tg = UniformGrid(-8.0, 0.0625, 256)
    f = Signal.from_function(lambda t: np.exp(-t ** 2 / 2) * (1 + t), tg)
    F = saft_fast(A, f)
    back = saft_quadrature(Ainv, Signal(F.grid, F.values), tg)
    assert np.max(np.abs(back.values - f.values)) < 1e-9


def test_grid_errors():
    A = preset("fourier")
    f = Signal(UniformGrid(0.0, 1.0, 1), [1.0])
    with pytest.raises(GridError):
        saft_fast(A, f)
    with pytest.raises(GridError):
        isaft(A, Spectrum(UniformGrid(0.0, 1.0, 1), [1.0]), UniformGrid(0.0, 1.0, 4))
    with pytest.raises(GridError):
        UniformGrid(0.0, 0.0, 3)


def test_matched_grid_properties(A23):
    tg = UniformGrid(-5.0, 0.1, 100)
    og = matched_frequency_grid(A23, tg)
    assert og.count == 100
    assert og.step == pytest.approx(2 * math.pi * 3 / 10.0)


# --- chirp integrals and generator spectra --------------------------------------------
def _quad_complex(fn, a, b):
    re = quad(lambda u: fn(u).real, a, b, limit=400, epsabs=1e-13, epsrel=1e-13)[0]
    im = quad(lambda u: fn(u).imag, a, b, limit=400, epsabs=1e-13, epsrel=1e-13)[0]
    return re + 1j * im


@pytest.mark.parametrize("alpha", [-2.0, -0.3, 0.0, 0.005, 0.3, 1.0 / 3.0, 4.0])
@pytest.mark.parametrize("beta", [-40.0, -3.0, 0.0, 1.7, 25.0])
def test_chirp_integral_vs_quad(alpha, beta):
    i0, i1 = chirp_integral(alpha, np.array([beta]), -0.5, 1.5)
    e = lambda u: cmath.exp(1j * (alpha * u * u + beta * u))
    r0 = _quad_complex(e, -0.5, 1.5)
    r1 = _quad_complex(lambda u: u * e(u), -0.5, 1.5)
    assert abs(i0[0] - r0) < 1e-11
    assert abs(i1[0] - r1) < 1e-11


@pytest.mark.parametrize("tup", PARAM_SETS)
@pytest.mark.parametrize("name", ["bspline2", "bspline2c"])
def test_bspline_saft_vs_quad(tup, name):
    A = _params(tup)
    gen = make_generator(name)
    o = gen.offset
    for w in (A.p - 7.3, A.p, A.p + 0.4, A.p + 30.0 * abs(A.b)):
        def integrand(t):
            phase = (A.a * t * t + 2 * A.p * t - 2 * w * t + A.d * w * w
                     + 2 * (A.b * A.q - A.d * A.p) * w) / (2 * A.b)
            return max(0.0, 1 - abs(t - o - 1)) * cmath.exp(1j * phase)
        ref = (_quad_complex(integrand, o, o + 1) + _quad_complex(integrand, o + 1, o + 2)) \
            / math.sqrt(2 * math.pi * abs(A.b))
        assert abs(generator_saft(A, gen, w) - ref) < 1e-10


def test_chirped_sinc_spectrum(A23):
    gen = Generator("chirped_sinc")
    hw = A23.half_width
    w = np.array([0.0, 0.5 * hw, -hw, hw, 1.01 * hw, -2 * hw])
    F = generator_saft(A23, gen, w)
    base = eta(A23, w) / math.sqrt(2 * math.pi * 3)
    assert np.allclose(F, base * np.array([1, 1, 0.5, 0.5, 0, 0]), atol=1e-15)


def test_chirped_sinc_spectrum_matches_numerical(A23):
    """Large-window rectangle rule of the chirped sinc approaches the indicator."""
    gen = Generator("chirped_sinc")
    tg = UniformGrid.from_step(-400, 400, 0.05)
    f = Signal(tg, gen.evaluate(tg.points, A23))
    w = np.array([-5.0, 0.0, 3.0, 7.0])
    got = saft_points(A23, f, w)
    ref = generator_saft(A23, gen, w)
    assert np.max(np.abs(got - ref)) < 5e-3


def test_zero_generator_and_unsupported(A23):
    assert np.all(generator_saft(A23, Generator("zero"), [0.0, 1.0]) == 0)

    class Fake:
        kind = "wavelet"
    with pytest.raises(UnsupportedGenerator):
        generator_saft(A23, Fake(), 0.0)
    with pytest.raises(UnsupportedGenerator):
        Generator("wavelet")
