import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fracorlicz.functions import SampledFunction, luxemburg_norm
from fracorlicz.gallery import DEFAULT_PARAMS as P
from fracorlicz.hardy import (
    HardyKernel,
    StepFunction,
    hardy_image,
    hardy_operator,
    kernel_conjugate_norm,
    linf_target,
    reduction_constant_estimate,
    spike_trials,
)
from fracorlicz.young import power, spliced


def test_kernel_exponent():
    assert HardyKernel(P).exponent == -0.5


def test_step_validation():
    with pytest.raises(ValueError):
        StepFunction([0.0, 1.0, 1.0], [1.0, 2.0])
    with pytest.raises(ValueError):
        StepFunction([-1.0, 1.0], [1.0])


def test_step_addition():
    f = StepFunction.indicator(1.0) + StepFunction.indicator(2.0, 3.0)
    np.testing.assert_allclose(f(np.array([0.5, 1.5, 2.5])), [4.0, 3.0, 0.0])


def test_coerce_halfline_samples():
    u = SampledFunction(np.array([0.5, 1.5]), np.array([2.0, 1.0]), "halfline")
    f = StepFunction.coerce(u)
    np.testing.assert_allclose(f.edges, [0.0, 1.0, 2.0])
    with pytest.raises(ValueError):
        StepFunction.coerce(SampledFunction([0.0, 1.0], [1.0, 1.0]))


@given(st.lists(st.floats(0, 5), min_size=1, max_size=10), st.lists(st.floats(0.01, 2), min_size=10, max_size=10))
@settings(max_examples=30, deadline=None)
def test_image_is_nonincreasing_and_linear(vals, widths):
    edges = np.concatenate([[0.0], np.cumsum(widths[: len(vals)])])
    f = StepFunction(edges, vals)
    r = np.linspace(0, edges[-1] * 1.1, 40)
    h = hardy_operator(f, P, r)
    assert np.all(np.diff(h) <= 1e-12)
    np.testing.assert_allclose(hardy_operator(f.scaled(3.0), P, r), 3 * h, rtol=1e-12, atol=1e-14)
    img = hardy_image(f, P)
    assert np.all(np.diff(img.values) <= 0)


def test_kernel_norm_cross_check():
    kn = kernel_conjugate_norm(spliced(1.5, 0.0, 3.0, 0.0), P)
    assert math.isfinite(kn.value)
    assert kn.value == pytest.approx(kn.cross_check, rel=1e-3)


def test_kernel_norm_infinite_for_pure_power():
    assert kernel_conjugate_norm(power(1.5), P).value == math.inf


def test_spikes_have_unit_norm():
    A = spliced(1.5, 0.0, 3.0, 0.0)
    for f in spike_trials(A, [1.0, 10.0, 1e4]):
        assert luxemburg_norm(A, f.as_rearranged()) == pytest.approx(1.0, rel=1e-6)


def test_estimate_respects_holder_bound():
    A = spliced(1.5, 0.0, 3.0, 0.0)
    trials = [StepFunction.indicator(r) for r in np.logspace(-3, 3, 7)] + spike_trials(A, np.logspace(0, 6, 7))
    est = reduction_constant_estimate(A, P, linf_target(), trials)
    assert est["trials_used"] == len(trials)
    assert 0 < est["estimate"] <= 2 * kernel_conjugate_norm(A, P).value


def test_estimate_rejects_negative_trials():
    with pytest.raises(ValueError):
        reduction_constant_estimate(power(1.5), P, linf_target(), [StepFunction([0.0, 1.0], [-1.0])])
