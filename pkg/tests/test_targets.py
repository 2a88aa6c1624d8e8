import math

import numpy as np
import pytest

from fracorlicz.gallery import DEFAULT_PARAMS as P
from fracorlicz.regime import RegimeTag
from fracorlicz.targets import (
    PreconditionError,
    TargetTables,
    build_targets,
    hat_density_inverse,
    orlicz_lorentz_target,
    orlicz_target,
    sobolev_companion_H,
    truncate_to_EA,
    weight_phi,
)
from fracorlicz.young import SpaceParams, power, spliced


def test_companion_of_power():
    # t^{3/2}, n = 1, s = 1/2:  H(t) = sqrt(2) t^{1/4}
    H = sobolev_companion_H(power(1.5), P)
    t = np.logspace(-6, 6, 13)
    np.testing.assert_allclose(H(t), math.sqrt(2) * t ** 0.25, rtol=1e-6)


def test_companion_is_increasing():
    H = sobolev_companion_H(spliced(1.5, 1.0, 3.0, 0.0), P)
    t = np.logspace(-8, 8, 200)
    assert np.all(np.diff(H(t)) > 0)


def test_supercritical_target_has_threshold():
    A = spliced(1.5, 0.0, 3.0, 0.0)
    tab = TargetTables(A, P)
    assert math.isfinite(tab.sup_H)
    A_ns = orlicz_target(A, P, tab)
    assert A_ns.inf_threshold == pytest.approx(tab.sup_H)
    assert A_ns(tab.sup_H * 1.01) == math.inf


def test_subcritical_target_is_finite_valued():
    assert orlicz_target(power(1.5), P).inf_threshold is None


def test_inadmissible_is_refused():
    with pytest.raises(PreconditionError):
        orlicz_target(power(2.0), P)
    with pytest.raises(PreconditionError):
        orlicz_lorentz_target(spliced(2.0, 1.0, 3.0, 0.0), P)


def test_integer_order_is_refused():
    with pytest.raises((PreconditionError, ValueError)):
        TargetTables(power(1.5), SpaceParams(3, 1.0))


def test_hat_density_inverse_is_increasing():
    t = np.logspace(-4, 4, 30)
    x = hat_density_inverse(spliced(1.5, 0.0, 3.0, 0.0), P, t)
    assert np.all(np.diff(x) > 0)


def test_hat_of_power_below_ratio_is_equivalent():
    A = power(1.5)
    A_hat = orlicz_lorentz_target(A, P)
    t = np.logspace(-6, -2, 9)
    q = A_hat(t) / A(t)
    assert q.max() / q.min() < 1.05


def test_truncation_and_weight():
    A_hat = orlicz_lorentz_target(power(1.5), P)
    E, phi = truncate_to_EA(A_hat, P)
    assert E(0.5) == A_hat(0.5) and E(1.5) == math.inf
    np.testing.assert_allclose(phi(np.array([0.0, 0.5, 4.0])), [1.0, 1.0, 0.5])
    assert weight_phi(SpaceParams(2, 0.5))(16.0) == pytest.approx(0.5)


def test_bundle():
    b = build_targets(spliced(1.5, 0.0, 3.0, 0.0), P)
    assert b.regime is RegimeTag.SUPERCRITICAL
    assert b.A_hat is not None and b.E_A.inf_threshold == 1.0
    assert b.A_ns.inf_threshold is not None
