import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from saft.core import eta, preset, rho, validate_params
from saft.errors import AlignmentError, ConvergenceWarning, GridError, ValidationError
from saft.grids import Signal, UniformGrid
from saft.operators import (DiscreteMeasure, MultiplierSymbol, a_convolve,
                            a_convolve_measure, a_translate, chirp_mod, embed,
                            multiplier_apply, poisson_check, relative_defect,
                            union_grid, wendel_commutation_defect)
from saft.transform import saft_points

from conftest import PARAM_SETS

DT = 0.05
GRID = UniformGrid(-6.0, DT, 241)


def wavepacket(rng, grid=GRID):
    c = rng.uniform(-1.5, 1.5)
    s = rng.uniform(0.6, 1.2)
    k = rng.uniform(-3, 3)
    return Signal.from_function(lambda t: np.exp(-(t - c) ** 2 / (2 * s * s) + 1j * k * t), grid)


def test_translate_definition_pointwise(A23, rng):
    f = wavepacket(rng)
    x = 17 * DT
    g = a_translate(A23, x, f)
    t = g.points
    ref = np.exp(-1j * (A23.a / A23.b) * x * (t - x)) * f.values  # f(t - x) = f.values
    assert np.max(np.abs(g.values - ref)) < 1e-15
    assert g.grid.start == pytest.approx(f.grid.start + x)


def test_translate_trivial_cases(rng):
    A = validate_params(0, 2, -0.5, 0)
    f = wavepacket(rng)
    assert np.array_equal(a_translate(A, 0.0, f).values, f.values)
    g = a_translate(A, 4 * DT, f)
    assert np.array_equal(g.values, f.values)


def test_alignment_error(A23, rng):
    with pytest.raises(AlignmentError):
        a_translate(A23, 0.3 * DT, wavepacket(rng))


@pytest.mark.parametrize("tup", PARAM_SETS)
def test_norm_preservation(tup, rng):
    A = validate_params(*tup)
    f = wavepacket(rng)
    g = a_translate(A, -23 * DT, f)
    for p in (1, 2, np.inf):
        assert g.norm(p) == pytest.approx(f.norm(p), rel=1e-14)


@pytest.mark.parametrize("tup", PARAM_SETS)
def test_composition_law(tup, rng):
    A = validate_params(*tup)
    f = wavepacket(rng)
    for _ in range(5):
        x, y = rng.integers(-40, 40, size=2) * DT
        lhs = a_translate(A, x, a_translate(A, y, f))
        rhs = a_translate(A, x + y, f) * np.exp(-1j * (A.a / A.b) * x * y)
        assert relative_defect(lhs, rhs) < 1e-12


def test_adjoint_identity(A23, rng):
    for _ in range(5):
        f, g = wavepacket(rng), wavepacket(rng)
        x = rng.integers(-30, 30) * DT
        u = union_grid(f.grid, a_translate(A23, x, f).grid, a_translate(A23, -x, g).grid)
        lhs = embed(a_translate(A23, x, f), u).inner(embed(g, u))
        right = a_translate(A23, -x, g) * np.exp(-1j * (A23.a / A23.b) * x * x)
        rhs = embed(f, u).inner(embed(right, u))
        assert abs(lhs - rhs) < 1e-12


def test_product_formula(A23):
    w = 1.3
    grid = UniformGrid(-5.0, DT, 201)
    chi = lambda t: np.conj(rho(A23, t)) * np.exp(1j * w * t / A23.b)
    c = Signal.from_function(chi, grid)
    x = 12 * DT
    lhs = a_translate(A23, x, c)
    rhs = np.conj(chi(x)) * chi(lhs.points)
    assert np.max(np.abs(lhs.values - rhs)) < 1e-12


def test_chirp_relations(A23, rng):
    f = wavepacket(rng)
    x = 9 * DT
    s = A23.a / A23.b
    lhs = chirp_mod(s, a_translate(A23, x, f))
    cf = chirp_mod(s, f)
    rhs_vals = np.exp(0.5j * s * x * x) * cf.values  # T_x is the plain shift on the grid
    assert np.max(np.abs(lhs.values - rhs_vals)) < 1e-12
    assert np.array_equal(chirp_mod(0.0, f).values, f.values)
    # rho_A T_x f = rho_A(x) T_x (rho_A f)
    tx = a_translate(A23, x, f)
    lhs2 = rho(A23, tx.points) * tx.values
    rhs2 = rho(A23, x) * rho(A23, f.points) * f.values
    assert np.max(np.abs(lhs2 - rhs2)) < 1e-12


@pytest.mark.parametrize("tup", PARAM_SETS)
def test_translation_spectrum(tup, rng):
    A = validate_params(*tup)
    f = wavepacket(rng)
    x = 31 * DT
    w = np.linspace(-8, 8, 33)
    lhs = saft_points(A, a_translate(A, x, f), w)
    rhs = rho(A, x) * np.exp(-1j * x * w / A.b) * saft_points(A, f, w)
    assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_convolution_classical_case_double_sum(rng):
    A = preset("fourier")
    f = Signal(UniformGrid(-1.0, 0.1, 15), rng.normal(size=15))
    g = Signal(UniformGrid(0.5, 0.1, 9), rng.normal(size=9))
    h = a_convolve(A, f, g)
    ref = np.zeros(h.grid.count, dtype=complex)
    for i in range(9):
        for j in range(15):
            ref[i + j] += g.values[i] * f.values[j]
    ref *= 0.1 / math.sqrt(2 * math.pi)
    assert np.max(np.abs(h.values - ref)) < 1e-12
    assert h.grid.start == pytest.approx(-0.5)


@pytest.mark.parametrize("tup", PARAM_SETS)
def test_convolution_theorem(tup, rng):
    A = validate_params(*tup)
    f = wavepacket(rng, UniformGrid(-6.0, 0.02, 601))
    g = wavepacket(rng, UniformGrid(-5.0, 0.02, 501))
    h = a_convolve(A, f, g)
    w = np.linspace(-5, 5, 21) + A.p
    lhs = saft_points(A, h, w)
    rhs = np.conj(eta(A, w)) * saft_points(A, g, w) * saft_points(A, f, w)
    assert np.max(np.abs(lhs - rhs)) < 1e-10


def test_convolution_commutative_and_zero(A23, rng):
    f, g = wavepacket(rng), wavepacket(rng, UniformGrid(-3.0, DT, 100))
    assert relative_defect(a_convolve(A23, f, g), a_convolve(A23, g, f)) < 1e-12
    z = a_convolve(A23, Signal.zeros(GRID), g)
    assert np.all(z.values == 0)
    with pytest.raises(GridError):
        a_convolve(A23, f, Signal.zeros(UniformGrid(0.0, 0.1, 4)))


def test_measure_convolution(A23, rng):
    f = wavepacket(rng)
    c = math.sqrt(2 * math.pi * 3)
    one = a_convolve_measure(A23, DiscreteMeasure([0.0], [1.0]), f)
    assert relative_defect(one, f * (1 / c)) == 0
    s = 10 * DT
    at_s = a_convolve_measure(A23, DiscreteMeasure([s], [1.0]), f)
    assert relative_defect(at_s, a_translate(A23, s, f) * (1 / c)) == 0
    mu = DiscreteMeasure([s, -3 * DT], [2 - 1j, 0.5j])
    two = a_convolve_measure(A23, mu, f)
    u = two.grid
    ref = (embed(a_translate(A23, s, f), u).values * (2 - 1j)
           + embed(a_translate(A23, -3 * DT, f), u).values * 0.5j) / c
    assert np.max(np.abs(two.values - ref)) < 1e-15
    assert mu.total_variation == pytest.approx(math.sqrt(5) + 0.5)
    empty = a_convolve_measure(A23, DiscreteMeasure([], []), f)
    assert np.all(empty.values == 0)
    with pytest.raises(ValidationError):
        DiscreteMeasure([0.0, 1.0], [1.0])


def test_measure_matches_function_convolution(A23, rng):
    """A measure with rectangle-rule weights reproduces a_convolve."""
    f = wavepacket(rng)
    g = wavepacket(rng, UniformGrid(-1.0, DT, 41))
    mu = DiscreteMeasure(g.points, g.values * DT)
    assert relative_defect(a_convolve_measure(A23, mu, f), a_convolve(A23, f, g)) < 1e-12


def test_multiplier_identity_and_translation(A23, rng):
    f = wavepacket(rng)
    one = MultiplierSymbol(lambda w: np.ones_like(w), 1.0)
    assert relative_defect(multiplier_apply(A23, one, f), f) < 1e-12
    s = 8 * DT
    grid = UniformGrid(-10.0, DT, 401)
    f = embed(f, grid)
    tr = multiplier_apply(A23, MultiplierSymbol.translation(A23, s), f)
    assert relative_defect(tr, a_translate(A23, s, f), ref=f) < 1e-6


def test_multiplier_convolution(A23, rng):
    grid = UniformGrid(-12.0, DT, 481)
    f = embed(wavepacket(rng), grid)
    g = wavepacket(rng, UniformGrid(-2.0, DT, 81))
    out = multiplier_apply(A23, MultiplierSymbol.convolution(A23, g), f)
    assert relative_defect(out, a_convolve(A23, f, g), ref=f) < 1e-6


def test_multiplier_bound_enforced():
    phi = MultiplierSymbol(lambda w: 2 * np.ones_like(w), 1.0)
    with pytest.raises(ValidationError):
        phi(np.array([0.0, 1.0]))


def test_wendel(A23, rng):
    grid = UniformGrid(-12.0, DT, 481)
    probes = [embed(wavepacket(rng), grid) for _ in range(2)]
    shifts = [5 * DT, -11 * DT]
    phi = MultiplierSymbol(lambda w: np.exp(-w ** 2 / 50) * (1 + 0.5j * np.sin(w)),
                           1.5)

    def mult(f):
        return multiplier_apply(A23, phi, embed(f, grid))
    assert wendel_commutation_defect(A23, mult, shifts, probes) < 1e-6
    assert wendel_commutation_defect(A23, lambda f: f, shifts, probes) == 0.0

    def times_t(f):
        return f.with_values(f.points * f.values)
    unit = [p * (1 / p.norm()) for p in probes]
    assert wendel_commutation_defect(A23, times_t, [20 * DT], unit) > 0.1


def _gauss(t):
    return np.exp(-t ** 2 / 2)


@pytest.mark.parametrize("tup", [PARAM_SETS[1], PARAM_SETS[2]])
def test_poisson_two_sided(tup):
    A = validate_params(*tup)
    with warnings.catch_warnings():
        warnings.simplefilter("error", ConvergenceWarning)
        res = poisson_check(A, _gauss, np.linspace(-2, 2, 9))
    assert res.defect < 1e-6


def test_poisson_fourier_classical():
    """Classical Poisson: sqrt(2pi) sum_k f(t + 2 pi k) = sum_n fhat(n) e^{int}."""
    A = preset("fourier")
    t = np.linspace(-3, 3, 7)
    res = poisson_check(A, _gauss, t)
    direct = math.sqrt(2 * math.pi) * sum(_gauss(t + 2 * math.pi * k) for k in range(-5, 6))
    fourier_side = sum(np.exp(-n * n / 2) * np.exp(1j * n * t) for n in range(-40, 41))
    assert np.max(np.abs(res.lhs - direct)) < 1e-8
    assert np.max(np.abs(res.rhs - fourier_side)) < 1e-8
    assert res.defect < 1e-8


def test_poisson_zero_and_warning(A23):
    res = poisson_check(A23, lambda t: np.zeros_like(t), [0.0, 1.0])
    assert res.defect == 0
    lhs, rhs, d = res
    assert np.all(lhs == 0) and np.all(rhs == 0)
    with pytest.warns(ConvergenceWarning):
        poisson_check(A23, _gauss, [0.0], K=0, N=1)


def test_poisson_signal_input(A23):
    grid = UniformGrid.from_step(-40, 40, 0.01)
    f = Signal.from_function(_gauss, grid)
    res = poisson_check(A23, f, [-0.5, 0.0, 0.75])
    assert res.defect < 1e-6


@settings(max_examples=20, deadline=None)
@given(st.integers(-30, 30), st.integers(-30, 30))
def test_composition_property(j, k):
    A = validate_params(*PARAM_SETS[3])
    f = Signal.from_function(lambda t: np.exp(-t * t) * (1 + 1j * t), GRID)
    x, y = j * DT, k * DT
    lhs = a_translate(A, x, a_translate(A, y, f))
    rhs = a_translate(A, x + y, f) * np.exp(-1j * (A.a / A.b) * x * y)
    assert relative_defect(lhs, rhs) < 1e-12
