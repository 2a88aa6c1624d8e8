"""End-to-end checks at the tolerances the toolkit promises.  One test group
per acceptance criterion; the terminal summary prints one line for each."""

import filecmp
import json
import math
import subprocess

import numpy as np
import pytest

from fracorlicz.experiments import (
    counterexample_high_smoothness,
    fit_double_log_slope,
    fit_zero_exponents,
    run_mollifier_convergence,
    verify_boundedness,
)
from fracorlicz.gallery import DEFAULT_PARAMS, bump, regime_grid, young_gallery
from fracorlicz.hardy import StepFunction, hardy_operator, kernel_conjugate_norm
from fracorlicz.regime import RegimeTag, check_indisp, check_tail, classify_growth
from fracorlicz.seminorm import PairTable
from fracorlicz.targets import PreconditionError, orlicz_lorentz_target, orlicz_target
from fracorlicz.young import SpaceParams, conjugate, equivalent, matuszewska_index_zero, power, spliced

P = DEFAULT_PARAMS
GALLERY = young_gallery(P)
ADMISSIBLE = [e for e in GALLERY if e.regime is not RegimeTag.INADMISSIBLE]
SUPERCRITICAL = [e for e in GALLERY if e.regime is RegimeTag.SUPERCRITICAL]


# 1 ---------------------------------------------------------------------------


@pytest.mark.criterion(1)
def test_regime_table_has_no_disagreements():
    grid = regime_grid(P)
    assert len(grid) == 60
    assert {e.regime for e in grid} == set(RegimeTag)
    wrong = []
    for e in grid:
        zero, tail = check_indisp(e.A, P), check_tail(e.A, P)
        assert zero.method == "closed_form" and tail.method == "closed_form"
        if classify_growth(e.A, P).tag is not e.regime:
            wrong.append(e.exponents)
    assert wrong == []


@pytest.mark.criterion(1)
def test_regime_boundary_is_strict():
    # p0 = n/s with alpha0 = n/s - 1 exactly sits on the inadmissible side
    A = spliced(2.0, 1.0, 3.0, 0.0)
    assert classify_growth(A, P).tag is RegimeTag.INADMISSIBLE
    A = spliced(2.0, 1.05, 3.0, 0.0)
    assert classify_growth(A, P).tag is RegimeTag.SUPERCRITICAL


# 2 ---------------------------------------------------------------------------


@pytest.mark.criterion(2)
def test_orlicz_target_of_power_is_sixth_power():
    A_ns = orlicz_target(power(1.5), P)
    t = np.logspace(-4, -1, 61)
    np.testing.assert_allclose(A_ns(t), t ** 6 / 8, rtol=0.01)


# 3 ---------------------------------------------------------------------------


@pytest.mark.criterion(3)
def test_exponential_branch_double_log_slope():
    p0 = alpha0 = P.ratio
    A_ns = orlicz_target(spliced(p0, alpha0, 3.0, 0.0), P)
    expected = -P.n / (P.s * (alpha0 + 1) - P.n)
    assert expected == -2.0
    assert fit_double_log_slope(A_ns) == pytest.approx(expected, rel=0.05)


# 4 ---------------------------------------------------------------------------


@pytest.mark.criterion(4)
@pytest.mark.parametrize("entry", ADMISSIBLE, ids=lambda e: e.name)
def test_hat_asymptotics(entry):
    p0, a0 = entry.exponents[:2]
    A_hat = orlicz_lorentz_target(entry.A, P)
    slope, log_exp = fit_zero_exponents(A_hat)
    if p0 < P.ratio:
        want = (p0, a0)
    else:
        want = (P.ratio, a0 - P.ratio)
    assert slope == pytest.approx(want[0], rel=0.05)
    assert log_exp == pytest.approx(want[1], rel=0.05, abs=0.05)


@pytest.mark.criterion(4)
@pytest.mark.parametrize("entry", ADMISSIBLE, ids=lambda e: e.name)
def test_hat_equivalence_iff_index_below_ratio(entry):
    A_hat = orlicz_lorentz_target(entry.A, P)
    below = matuszewska_index_zero(entry.A) < P.ratio - 0.01
    assert equivalent(A_hat, entry.A, "zero") == below


@pytest.mark.criterion(4)
def test_hat_refuses_inadmissible():
    for e in GALLERY:
        if e.regime is RegimeTag.INADMISSIBLE:
            with pytest.raises(PreconditionError):
                orlicz_lorentz_target(e.A, P)


# 5 ---------------------------------------------------------------------------


@pytest.mark.criterion(5)
@pytest.mark.parametrize("entry", GALLERY, ids=lambda e: e.name)
def test_biconjugate_round_trip(entry):
    t = np.logspace(-3, 3, 41)
    back = conjugate(conjugate(entry.A))
    np.testing.assert_allclose(back(t), entry.A(t), rtol=1e-6)


@pytest.mark.criterion(5)
@pytest.mark.parametrize("entry", GALLERY[::3], ids=lambda e: e.name)
def test_young_inequality(entry):
    rng = np.random.default_rng(20240)
    s = 10 ** rng.uniform(-4, 4, 10_000)
    r = 10 ** rng.uniform(-4, 4, 10_000)
    lhs = s * r
    rhs = entry.A(s) + conjugate(entry.A)(r)
    assert np.sum(lhs > rhs + 1e-9 * lhs) == 0


# 6 ---------------------------------------------------------------------------


def _hand_hardy(edges, values, beta, r):
    """Direct sum of the antiderivatives, one step at a time."""
    total = 0.0
    for a, b, v in zip(edges[:-1], edges[1:], values):
        lo = max(a, r)
        if lo < b:
            total += v * (b ** beta - lo ** beta) / beta
    return total


@pytest.mark.criterion(6)
@pytest.mark.parametrize("p", [SpaceParams(1, 0.5), SpaceParams(2, 0.5), SpaceParams(3, 1.5)])
def test_hardy_matches_hand_antiderivatives(p):
    rng = np.random.default_rng(7)
    edges = np.concatenate([[0.0], np.cumsum(rng.uniform(0.05, 2.0, 12))])
    values = rng.uniform(0, 3, 12)
    f = StepFunction(edges, values)
    r = np.concatenate([[0.0], rng.uniform(0, edges[-1] * 1.2, 50), edges])
    got = hardy_operator(f, p, r)
    want = np.array([_hand_hardy(edges, values, p.s / p.n, x) for x in r])
    np.testing.assert_allclose(got, want, rtol=1e-10, atol=1e-12)


@pytest.mark.criterion(6)
def test_hardy_indicator_examples():
    f = StepFunction.indicator(1.0)
    assert hardy_operator(f, P, 0.25) == pytest.approx(1.0, abs=1e-12)
    assert hardy_operator(f, P, 0.0) == pytest.approx(P.n / P.s, abs=1e-12)
    assert hardy_operator(f, P, 1.0) == 0.0


@pytest.mark.criterion(6)
@pytest.mark.parametrize("entry", GALLERY, ids=lambda e: e.name)
def test_kernel_norm_finiteness_matches_integral(entry):
    full_line = check_indisp(entry.A, P).converges and check_tail(entry.A, P).converges
    assert math.isfinite(kernel_conjugate_norm(entry.A, P).value) == full_line


# 7 ---------------------------------------------------------------------------


@pytest.mark.criterion(7)
@pytest.mark.parametrize("name", ["tent", "smooth"])
@pytest.mark.parametrize("entry", [GALLERY[0], GALLERY[4], GALLERY[5]], ids=lambda e: e.name)
def test_modular_dilation_law(name, entry):
    # J(u(./N), lam) = N^n J(u, lam N^s), with the same grid spacing throughout
    res = 801
    base = PairTable(bump(name, 1, resolution=res), P.s)
    for N in (2, 4, 8):
        tab = PairTable(bump(name, N, resolution=(res - 1) * N + 1), P.s)
        for lam in (0.5, 1.0, 3.0):
            lhs = tab.modular(entry.A, lam)
            rhs = N ** P.n * base.modular(entry.A, lam * N ** P.s)
            assert lhs == pytest.approx(rhs, rel=0.03)


# 8 ---------------------------------------------------------------------------


@pytest.mark.criterion(8)
def test_counterexample_growth():
    rep = counterexample_high_smoothness({"n": 1, "s": 1.5})
    _, rows = rep.tables["scaling"]
    for j, J, ratio, norm, norm_ratio in rows:
        assert ratio == pytest.approx(1.0, rel=1e-3)
        if j >= 4:
            assert norm / j ** 0.5 >= 0.5
    assert [r[0] for r in rows] == [1, 2, 4, 8, 16, 32]
    assert rep.passed


# 9 ---------------------------------------------------------------------------


@pytest.mark.criterion(9)
def test_boundedness_ratio_invariant_under_dilation():
    rep = verify_boundedness({"n": 1, "s": 0.5})
    names = {row[0] for row in rep.tables["ratios"][1]}
    assert names == {e.name for e in SUPERCRITICAL}
    for a in rep.assertions:
        lo, hi = a.expected
        assert (lo, hi) == (0.95, 1.05)
        assert lo <= a.measured <= hi, a.name
    assert math.isfinite(rep.fitted["c"]) and rep.fitted["c"] > 0


# 10 --------------------------------------------------------------------------


@pytest.mark.criterion(10)
def test_mollifier_ladder_for_tent():
    rep = run_mollifier_convergence({"bumps": ["tent"]})
    trend = rep.fitted["pow1.5:tent"]["trend"]
    assert all(b < a for a, b in zip(trend, trend[1:]))
    assert trend[-1] < 1e-2
    assert rep.passed


# 11 --------------------------------------------------------------------------

_FAST_ALL = {
    "example-targets": {"gallery": ["pow1.5", "critical_log2", "pow3"]},
    "boundedness": {"gallery": ["pow1.5_to_3"], "bumps": ["tent"], "dilations": [1, 2]},
    "counterexample": {"n": 1, "s": 1.5, "js": [1, 2, 4]},
    "embedding-norms": {"gallery": ["pow1.5"], "bumps": ["tent"], "dilations": [1, 2],
                        "amplitudes": [1.0]},
    "mollifier": {"eps_ladder": [0.3, 0.03, 0.003]},
}


@pytest.mark.criterion(11)
def test_reports_are_byte_identical(tmp_path, pkg_env):
    env, py = pkg_env
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(_FAST_ALL))
    outs = []
    for run in ("a", "b"):
        out = tmp_path / run
        proc = subprocess.run([py, "-m", "fracorlicz.cli", "verify", "--experiment", "all",
                               "--config", str(cfg), "--out", str(out), "--seed", "12345"],
                              env=env, capture_output=True, text=True)
        assert proc.returncode == 0, proc.stdout + proc.stderr
        outs.append(out)
    a, b = outs
    names = sorted(p.name for p in a.iterdir())
    assert names == sorted(p.name for p in b.iterdir())
    assert len([n for n in names if n.endswith(".json")]) == 5
    match, mismatch, errors = filecmp.cmpfiles(a, b, names, shallow=False)
    assert mismatch == [] and errors == []


@pytest.mark.criterion(11)
def test_monte_carlo_is_seeded():
    from fracorlicz.functions import SampledFunction
    from fracorlicz.seminorm import ModularConfig, gagliardo_modular

    r = np.linspace(0, 1.5, 301)
    u = SampledFunction(r, np.clip(1 - r, 0, None), "radial", 2)
    cfg = ModularConfig(samples=1 << 17, seed=99)
    one = gagliardo_modular(u, 0.5, power(2.0), config=cfg)
    two = gagliardo_modular(u, 0.5, power(2.0), config=cfg)
    assert one.value == two.value and one.stderr == two.stderr
