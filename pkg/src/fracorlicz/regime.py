"""Convergence of improper integrals and the growth regime of a Young function.

The three conditions that matter are all of the form ``int (t/A(t))^{s/(n-s)}``
near zero or near infinity.  Power-log pieces are decided by their exponents
directly; anything else goes through :func:`classify_endpoint_integral`.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from . import _logquad
from .young import PowerLog, SpaceParams, YoungFunction

__all__ = [
    "ClassificationError",
    "ConvergenceReport",
    "Regime",
    "RegimeTag",
    "classify_endpoint_integral",
    "check_indisp",
    "check_tail",
    "classify_growth",
]

MARGIN = 0.05
CUTOFF_ZERO = 1e-12
CUTOFF_INF = 1e12
_EXACT = 1e-9
BORDER_LO, BORDER_HI = 1e2, 1e4


class ClassificationError(ValueError):
    """Raised when an integrand is not eventually monotone near the endpoint."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class RegimeTag(str, enum.Enum):
    INADMISSIBLE = "inadmissible"
    SUBCRITICAL = "subcritical"
    SUPERCRITICAL = "supercritical"


@dataclass(frozen=True)
class ConvergenceReport:
    converges: bool
    value: float
    method: str
    exponent: float = math.nan
    borderline: bool = False

    def to_dict(self):
        return {"converges": self.converges, "value": self.value, "method": self.method,
                "exponent": self.exponent, "borderline": self.borderline}


@dataclass(frozen=True)
class Regime:
    tag: RegimeTag
    indisp_value: float
    tail_value: float
    local_exponent_zero: float
    local_exponent_inf: float

    @property
    def admissible(self):
        return self.tag is not RegimeTag.INADMISSIBLE

    def to_dict(self):
        return {
            "tag": self.tag.value,
            "diagnostics": {
                "indisp_value": self.indisp_value,
                "tail_value": self.tail_value,
                "local_exponent_zero": self.local_exponent_zero,
                "local_exponent_inf": self.local_exponent_inf,
            },
        }


# ---------------------------------------------------------------------------
# generic engine


def _as_log(g, log_g):
    if log_g is not None:
        return log_g

    def lg(u):
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            return np.log(np.asarray(g(np.exp(u)), dtype=float))

    return lg


def _quad_log(log_g, a, b):
    def f(v):
        return float(np.exp(log_g(np.array([v]))[0] + v))

    with warnings.catch_warnings():
        # piecewise-smooth tables trip quadpack's roundoff detector long
        # after the requested accuracy is reached
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, _ = integrate.quad(f, a, b, limit=500, epsabs=0.0, epsrel=1e-10)
    return val


def _log_level(log_g, endpoint, v):
    """``log`` of the integrand after substituting ``|log t| = v``."""
    v = np.asarray(v, dtype=float)
    if endpoint == "zero":
        return log_g(-v) - v
    return log_g(v) + v


def _borderline(log_g, endpoint, margin):
    """Exponent rule one logarithm deeper, for integrands near ``1/t``.

    With ``v = |log t|`` the integral becomes ``int^inf G(v) dv``; the slope of
    ``log G`` against ``log v`` over ``v`` in [1e2, 1e4] decides it.  Returns
    ``(converges, flagged, exponent)``; a slope inside the margin of -1 again
    is reported as divergent and flagged.
    """
    w = np.linspace(math.log(BORDER_LO), math.log(BORDER_HI), 33)
    G = _log_level(log_g, endpoint, np.exp(w))
    if not np.all(np.isfinite(G)):
        return False, True, math.nan
    e2 = float(np.polyfit(w, G, 1)[0])
    if e2 < -1 - margin:
        return True, False, e2
    return False, e2 <= -1 + margin, e2


def classify_endpoint_integral(g=None, endpoint="zero", log_g=None, margin=MARGIN,
                               cutoff=None):
    """Decide whether ``int g`` converges at 0 (over (0,1]) or at infinity (over [1,inf)).

    Pass either ``g`` acting on ``t`` or ``log_g`` acting on ``u = log t``.
    """
    if endpoint not in ("zero", "infinity"):
        raise ValueError("endpoint must be 'zero' or 'infinity'")
    lg = _as_log(g, log_g)
    if cutoff is None:
        cutoff = CUTOFF_ZERO if endpoint == "zero" else CUTOFF_INF
    lc = math.log(cutoff)
    span = 4 * math.log(10)
    window = np.linspace(lc, lc + span, 17) if endpoint == "zero" else np.linspace(lc - span, lc, 17)
    vals = lg(window)
    if np.all(vals == -np.inf):
        value = _quad_log(lg, lc, 0.0) if endpoint == "zero" else _quad_log(lg, 0.0, lc)
        return ConvergenceReport(True, value, "exponent_rule", -np.inf)
    if not np.all(np.isfinite(vals)):
        if endpoint == "zero" and np.any(vals == np.inf):
            return ConvergenceReport(False, math.inf, "exponent_rule", math.inf)
        raise ClassificationError("integrand is not finite and positive near the endpoint",
                                  {"window": window.tolist(), "log_g": vals.tolist()})
    steps = np.diff(vals)
    tol = 1e-9 * (1 + np.abs(vals[:-1]))
    if not (np.all(steps <= tol) or np.all(steps >= -tol)):
        raise ClassificationError("integrand is not monotone near the endpoint",
                                  {"window": window.tolist(), "log_g": vals.tolist()})
    e = float(np.polyfit(window, vals, 1)[0])
    if endpoint == "zero":
        diverges, converges = e < -1 - margin, e > -1 + margin
    else:
        diverges, converges = e > -1 + margin, e < -1 - margin
    if diverges:
        return ConvergenceReport(False, math.inf, "exponent_rule", e)
    if not converges:
        ok, flag, e2 = _borderline(lg, endpoint, margin)
        if not ok:
            return ConvergenceReport(False, math.inf, "adaptive_tail", e, borderline=flag)
        return ConvergenceReport(True, _finite(_value_log_tail(lg, endpoint, e2)), "adaptive_tail", e)
    return ConvergenceReport(True, _finite(_converged_value(lg, endpoint, cutoff, e, margin)), "exponent_rule", e)


def _finite(value):
    # a nan here comes from negative or undefined values away from the endpoint
    if not math.isfinite(value):
        raise ClassificationError("integrand is not finite and non-negative on the whole range",
                                  {"value": repr(value)})
    return value


def _converged_value(lg, endpoint, cutoff, e, margin):
    w = np.linspace(math.log(BORDER_LO), math.log(BORDER_HI), 33)
    G = _log_level(lg, endpoint, np.exp(w))
    if np.all(np.isfinite(G) | (G == -np.inf)):
        fin = np.isfinite(G)
        e2 = float(np.polyfit(w[fin], G[fin], 1)[0]) if fin.sum() > 2 else -np.inf
        if e2 < -1 - margin:
            return _value_log_tail(lg, endpoint, e2)
    return _value_with_tail(lg, endpoint, cutoff, e)


def _value_log_tail(lg, endpoint, e2):
    """Quadrature out to ``|log t| = BORDER_HI`` plus the power tail in ``|log t|``."""
    edges = [0.0, 1.0]
    while edges[-1] < BORDER_HI:
        edges.append(min(2 * edges[-1], BORDER_HI))
    sign = -1.0 if endpoint == "zero" else 1.0
    near = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        lo, hi = sorted((sign * a, sign * b))
        near += _quad_log(lg, lo, hi)
    G = float(_log_level(lg, endpoint, BORDER_HI))
    tail = math.exp(G) * BORDER_HI / (-e2 - 1) if e2 < -1 and np.isfinite(G) else 0.0
    return near + tail


def _value_with_tail(lg, endpoint, cutoff, e):
    """Quadrature up to the cutoff plus a Richardson estimate of the rest."""
    lc = math.log(cutoff)
    l10 = math.log(10)
    if endpoint == "zero":
        near, far = _quad_log(lg, lc, 0.0), _quad_log(lg, lc + l10, 0.0)
        factor = 10 ** (e + 1) - 1
    else:
        near, far = _quad_log(lg, 0.0, lc), _quad_log(lg, 0.0, lc - l10)
        factor = 10 ** (-(e + 1)) - 1
    tail = (near - far) / factor if abs(factor) > 1e-12 else 0.0
    return near + max(tail, 0.0)


# ---------------------------------------------------------------------------
# Young-function specialisations


def _sigma(p: SpaceParams):
    return p.s / (p.n - p.s)


def _integrand(A: YoungFunction, p: SpaceParams):
    sig = _sigma(p)

    def log_g(u):
        out = A.log_ratio(u, sig, sig)
        return np.where(np.isnan(out), -np.inf, out)

    return log_g


def _power_log_exponents(piece: PowerLog, sig, endpoint):
    """Exponent and log-exponent of (t/A)^sig for a power-log piece."""
    e = sig * (1 - piece.p)
    anchored = (piece.log == "zero") == (endpoint == "zero")
    beta = -sig * piece.alpha if anchored else 0.0
    return e, beta


def _rule(e, beta, endpoint):
    if endpoint == "zero":
        if abs(e + 1) <= _EXACT:
            return beta < -1 - _EXACT
        return e > -1
    if abs(e + 1) <= _EXACT:
        return beta < -1 - _EXACT
    return e < -1


def _grid_value(A, p, endpoint):
    u_max = None if A.inf_threshold is None else math.log(A.inf_threshold)
    u = np.union1d(_logquad.log_grid(u_max=u_max), [0.0])
    if u_max is not None:
        u = u[u <= u_max]
    f = A.log_ratio(u, 1 + _sigma(p), _sigma(p))
    i0 = int(np.searchsorted(u, 0.0))
    if endpoint == "zero":
        return float(np.exp(_logquad.cumulative_from_zero(u[:i0 + 1], f[:i0 + 1])[-1]))
    if i0 >= u.size - 1:
        return 0.0
    return float(np.exp(_logquad.cumulative_to_infinity(u[i0:], f[i0:], tail=u_max is None)[0]))


def _classify_young(A, p, endpoint):
    if endpoint == "infinity" and A.inf_threshold is not None:
        return ConvergenceReport(True, _grid_value(A, p, endpoint), "closed_form", -np.inf)
    piece = A.pieces[0][1] if endpoint == "zero" else A.pieces[-1][1]
    if isinstance(piece, PowerLog):
        if piece.k == 0:
            if endpoint == "zero":
                return ConvergenceReport(False, math.inf, "closed_form", math.inf)
            raise ValueError("zero piece at infinity without a threshold")
        e, beta = _power_log_exponents(piece, _sigma(p), endpoint)
        if _rule(e, beta, endpoint):
            return ConvergenceReport(True, _grid_value(A, p, endpoint), "closed_form", e)
        return ConvergenceReport(False, math.inf, "closed_form", e)
    return classify_endpoint_integral(endpoint=endpoint, log_g=_integrand(A, p))


def check_indisp(A: YoungFunction, p: SpaceParams) -> ConvergenceReport:
    """Convergence of int_0 (t/A(t))^{s/(n-s)} dt."""
    if not p.admissible_order:
        raise ValueError("the integral condition needs s < n")
    return _classify_young(A, p, "zero")


def check_tail(A: YoungFunction, p: SpaceParams) -> ConvergenceReport:
    """Convergence of int^inf (t/A(t))^{s/(n-s)} dt."""
    if not p.admissible_order:
        raise ValueError("the integral condition needs s < n")
    return _classify_young(A, p, "infinity")


def classify_growth(A: YoungFunction, p: SpaceParams) -> Regime:
    if not p.admissible_order:
        return Regime(RegimeTag.INADMISSIBLE, math.nan, math.nan, math.nan, math.nan)
    zero = check_indisp(A, p)
    tail = check_tail(A, p)
    if not zero.converges:
        tag = RegimeTag.INADMISSIBLE
    elif tail.converges:
        tag = RegimeTag.SUPERCRITICAL
    else:
        tag = RegimeTag.SUBCRITICAL
    return Regime(tag, zero.value, tail.value, zero.exponent, tail.exponent)


def example_rule(p: SpaceParams, p0, alpha0, p_inf, alpha_inf) -> RegimeTag:
    """Admissibility and regime of a spliced power-log function, read off its exponents."""
    r = p.ratio
    if not p.admissible_order:
        return RegimeTag.INADMISSIBLE
    indisp = (1 <= p0 < r) or (p0 == r and alpha0 > r - 1)
    if not indisp:
        return RegimeTag.INADMISSIBLE
    superc = (p_inf == r and alpha_inf > r - 1) or p_inf > r
    return RegimeTag.SUPERCRITICAL if superc else RegimeTag.SUBCRITICAL
