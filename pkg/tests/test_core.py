import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from saft.core import (ParamSet, eta, params_from_mapping, preset, rho, validate_params)
from saft.errors import DeterminantError, ValidationError, ZeroBError

finite = st.floats(-50, 50, allow_nan=False)


def test_fourier_params_valid():
    A = validate_params(0, 1, -1, 0, 0, 0)
    assert (A.a, A.b, A.c, A.d) == (0, 1, -1, 0)


def test_a2b3_valid_with_forced_c():
    A = validate_params(2, 3, 7 / 3, 4, 0, 0)
    assert abs(A.a * A.d - A.b * A.c - 1) < 1e-12


def test_determinant_error():
    with pytest.raises(DeterminantError):
        validate_params(1, 1, 1, 1, 0, 0)


def test_zero_b_error():
    with pytest.raises(ZeroBError):
        validate_params(1, 0, 0, 1, 0, 0)
    with pytest.raises(ZeroBError):
        validate_params(1, 1e-13, 0, 1, 0, 0)


def test_non_finite_rejected():
    with pytest.raises(ValidationError):
        validate_params(float("nan"), 1, -1, 0)


def test_determinant_tolerance_boundary():
    validate_params(2, 3, 7 / 3 + 1e-14, 4)
    with pytest.raises(DeterminantError):
        validate_params(2, 3, 7 / 3 + 1e-11, 4)


def test_missing_c_is_derived_and_flagged():
    A = params_from_mapping({"a": 2, "b": 3, "d": 4, "p": 0, "q": 0})
    assert A.c_derived
    assert A.c == pytest.approx(7 / 3, abs=1e-15)
    B = params_from_mapping({"a": 2, "b": 3, "c": 7 / 3, "d": 4})
    assert not B.c_derived


def test_eta_examples(A23, fourier):
    assert eta(A23, 0.0) == 1
    for w in (-3.0, 0.5, 11.0):
        assert eta(fourier, w) == 1
    # d*w^2/(2b) = 4/6 at w = 1
    assert abs(eta(A23, 1.0) - cmath.exp(2j / 3)) < 1e-15


def test_rho_examples(A23):
    assert rho(A23, 0.0) == 1
    A0 = validate_params(0, 2, -0.5, 0)
    assert rho(A0, 3.7) == 1
    assert abs(rho(A23, 1.0) - cmath.exp(1j / 3)) < 1e-15


def test_eta_general_formula():
    A = validate_params(1, 2, 0, 1, 0.5, -0.3)
    w = 1.7
    ref = cmath.exp(1j / (2 * A.b) * (A.d * w * w + 2 * (A.b * A.q - A.d * A.p) * w))
    assert abs(eta(A, w) - ref) < 1e-15


@settings(max_examples=60, deadline=None)
@given(finite, st.floats(0.1, 5), finite)
def test_unit_modulus(a, b, x):
    d = 0.7
    A = validate_params(a, b, (a * d - 1) / b, d, 0.3, -0.2)
    assert abs(abs(eta(A, x)) - 1) < 1e-14
    assert abs(abs(rho(A, x)) - 1) < 1e-14


@settings(max_examples=40, deadline=None)
@given(st.floats(-5, 5), st.floats(-30, 30))
def test_rho_even_when_p_zero(a, t):
    A = validate_params(a, 2.0, (a * 1.5 - 1) / 2.0, 1.5)
    assert abs(rho(A, -t) - rho(A, t)) < 1e-14


def test_vectorized_matches_scalar(A23):
    w = np.linspace(-5, 5, 11)
    v = eta(A23, w)
    assert all(abs(v[i] - eta(A23, float(w[i]))) == 0 for i in range(w.size))


def test_presets():
    assert preset("fourier").as_dict() == dict(a=0, b=1, c=-1, d=0, p=0, q=0)
    th = 0.9
    F = preset("frft", th)
    assert F.a == pytest.approx(math.cos(th)) and F.b == pytest.approx(math.sin(th))
    assert F.c == pytest.approx(-math.sin(th)) and F.d == pytest.approx(math.cos(th))
    assert preset("fresnel", 2.5).as_dict() == dict(a=1, b=2.5, c=0, d=1, p=0, q=0)
    H = preset("hyperbolic", 0.4)
    assert H.a * H.d - H.b * H.c == pytest.approx(1, abs=1e-12)
    inv = preset("inverse_fourier")
    assert inv.b == -1


@settings(max_examples=60, deadline=None)
@given(st.floats(-20, 20).filter(lambda t: abs(math.sin(t)) > 1e-6))
def test_frft_preset_always_valid(theta):
    A = preset("frft", theta)
    assert abs(A.a * A.d - A.b * A.c - 1) < 1e-12
    assert abs(A.b) > 1e-12


def test_preset_zero_b():
    with pytest.raises(ZeroBError):
        preset("frft", 0.0)
    with pytest.raises(ZeroBError):
        preset("frft", 2 * math.pi)
    with pytest.raises(ZeroBError):
        preset("fresnel", 0.0)
    with pytest.raises(ValidationError):
        preset("nonsense")


def test_paramset_frozen():
    A = preset("fourier")
    with pytest.raises(Exception):
        A.a = 3.0
    assert isinstance(A, ParamSet)
