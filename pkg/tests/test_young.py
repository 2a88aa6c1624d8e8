import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fracorlicz.young import (
    Affine,
    MonotoneMap,
    PowerLog,
    SpaceParams,
    Tabulated,
    YoungFunction,
    conjugate,
    density,
    dominates,
    equivalent,
    generalized_inverse,
    linf,
    matuszewska_index_zero,
    power,
    powerlog,
    spliced,
    tabulate,
)

exponents = st.floats(1.1, 4.0)


def test_space_params_validation():
    assert SpaceParams(3, 1.5).int_part == 1
    assert SpaceParams(3, 1.5).frac_part == pytest.approx(0.5)
    assert SpaceParams(2, 0.5).ratio == 4
    for n, s in [(0, 0.5), (1, 1.0), (1, -0.5), (1.5, 0.5)]:
        with pytest.raises(ValueError):
            SpaceParams(n, s)


def test_power_values_and_density():
    A = power(2.0)
    t = np.array([0.0, 0.5, 1.0, 3.0])
    np.testing.assert_allclose(A(t), t ** 2)
    np.testing.assert_allclose(density(A, t[1:]), 2 * t[1:])


def test_tiny_values_survive_in_log_space():
    A = power(2.0)
    assert A._log_eval(np.array([-1e12]))[0] == pytest.approx(-2e12)


def test_linf_has_threshold():
    A = linf(2.0)
    assert A(1.5) == 0.0
    assert A(2.5) == math.inf


@given(p0=exponents, p=exponents, a=st.floats(-1.0, 2.0))
@settings(max_examples=25, deadline=None)
def test_spliced_is_continuous_and_convex(p0, p, a):
    A = spliced(p0, 0.0, p, a)
    assert A.check_convexity(300) == []
    t = np.array([1 - 1e-9, 1 + 1e-9])
    v = A(t)
    assert v[1] == pytest.approx(v[0], rel=1e-6)


def test_bridge_inserted_when_growth_drops():
    A = spliced(3.0, 0.0, 1.5, 0.0)
    assert any(isinstance(piece, Affine) for _, piece in A.pieces)
    assert A.check_convexity(2000) == []
    # the bridge is the tangent line of t^3 at 1
    assert A(1.5) == pytest.approx(1 + 3 * 0.5)


def test_json_round_trip_is_exact():
    for A in [spliced(1.5, -1, 2, 0), spliced(3, 0, 1.5, 0), tabulate(power(2.0)), conjugate(spliced(1.5, 0, 3, 0))]:
        B = YoungFunction.from_dict(A.to_dict())
        t = np.logspace(-3, 3, 13)
        np.testing.assert_array_equal(A(t), B(t))


def test_from_dict_rejects_unknown_form():
    with pytest.raises(ValueError):
        YoungFunction.from_dict({"pieces": [{"from": 0, "form": "spline"}]})


def test_tabulated_validation():
    with pytest.raises(ValueError):
        Tabulated.from_arrays([0.0, 0.0], [1.0, 2.0])
    with pytest.raises(ValueError):
        Tabulated.from_arrays([0.0, 1.0], [2.0, 1.0])


def test_powerlog_rejects_sublinear():
    with pytest.raises(ValueError):
        PowerLog(1.0, 0.5)


def test_conjugate_of_power_closed_form():
    # (t^p)~ = (p-1) p^{-q} t^q
    A = power(3.0)
    t = np.logspace(-2, 2, 9)
    q = 1.5
    np.testing.assert_allclose(conjugate(A)(t), 2 * 3 ** -q * t ** q, rtol=1e-12)


def test_conjugate_of_linear_is_indicator():
    Ct = conjugate(power(1.0, k=2.0))
    assert Ct(1.9) == 0.0 and Ct(2.1) == math.inf


@given(p=exponents, a=st.floats(-0.5, 1.5))
@settings(max_examples=15, deadline=None)
def test_young_inequality_with_equality_at_density(p, a):
    A = spliced(p, 0.0, p, a)
    C = conjugate(A)
    t = np.logspace(-2, 2, 9)
    y = density(A, t)
    np.testing.assert_allclose(t * y, A(t) + C(y), rtol=1e-8)
    s = np.logspace(-2, 2, 9)[::-1]
    assert np.all(t * s <= A(t) + C(s) * (1 + 1e-12))


def test_generalized_inverse_of_power():
    f = MonotoneMap(evaluator=lambda t: t ** 3)
    y = np.array([0.0, 1e-6, 1.0, 8.0])
    with np.errstate(over="ignore"):
        x = generalized_inverse(f, y)
    np.testing.assert_allclose(x, np.cbrt(y), rtol=1e-10, atol=1e-300)


def test_generalized_inverse_is_left_continuous_on_flats():
    f = MonotoneMap.from_knots(np.log([1.0, 2.0, 3.0]), np.log([1.0, 1.0, 5.0]))
    assert generalized_inverse(f, 1.0) <= 1.0 + 1e-9


@pytest.mark.parametrize("A, want", [
    (power(1.5), 1.5),
    (powerlog(2.0, 3.0), 2.0),
    (spliced(1.5, 0, 3, 0), 1.5),
    (spliced(1, -0.5, 2, 2), 1.0),
])
def test_index_at_zero(A, want):
    assert matuszewska_index_zero(A) == pytest.approx(want, abs=2e-3)


def test_domination_and_equivalence():
    A, B = power(2.0), power(2.0, k=5.0)
    assert equivalent(A, B)
    assert dominates(B, A).holds
    # a log factor is not equivalence near zero, however shallow the range
    assert not equivalent(powerlog(2.0, 0.3), power(2.0))


def test_tabulate_matches_source():
    A = spliced(1.5, 1.0, 3.0, -0.5)
    T = tabulate(A)
    t = np.logspace(-100, 100, 21)
    np.testing.assert_allclose(np.log(T(t[10:11])), np.log(A(t[10:11])), rtol=1e-9)
    np.testing.assert_allclose(T._log_eval(np.log(t)), A._log_eval(np.log(t)), rtol=1e-6)
