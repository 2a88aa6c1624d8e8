"""Cumulative integrals of positive integrands on (0, inf), done in log space.

Integrands are passed as ``f(u) = log(g(e^u) * e^u)``, the log of the
integrand with respect to ``u = log t``.  Between grid nodes ``f`` is taken to
be linear in ``u``, which makes every segment exact for pure powers.  The grid
is dense around ``u = 0`` and geometric in ``|u|`` far out, so a single grid
reaches ``t = exp(-1e15)`` and still resolves ``[1e-12, 1e12]``.
"""

import numpy as np

SPAN = 1e15
POINTS = 20001


def log_grid(span=SPAN, points=POINTS, u_max=None):
    """Nodes ``u`` with ``sign(v) * expm1(|v|)`` for ``v`` uniform."""
    vmax = np.log1p(span)
    v = np.linspace(-vmax, vmax, points)
    u = np.sign(v) * np.expm1(np.abs(v))
    if u_max is not None and u_max < u[-1]:
        u = u[u < u_max]
        u = np.append(u, u_max)
    return u


def _log_exprel(d):
    """log((exp(d) - 1) / d), stable for all finite d."""
    d = np.asarray(d, dtype=float)
    out = np.empty_like(d)
    small = np.abs(d) < 1e-8
    pos = (d > 0) & ~small
    neg = (d < 0) & ~small
    out[small] = 0.5 * d[small]
    out[pos] = d[pos] + np.log(-np.expm1(-d[pos])) - np.log(d[pos])
    out[neg] = np.log(-np.expm1(d[neg])) - np.log(-d[neg])
    return out


def segment_logs(u, f):
    """Log of the integral of ``exp(f)`` over each grid segment."""
    du = np.diff(u)
    f0, f1 = f[:-1], f[1:]
    out = np.full(du.shape, -np.inf)
    both = np.isfinite(f0) & np.isfinite(f1)
    out[both] = np.log(du[both]) + f0[both] + _log_exprel(f1[both] - f0[both])
    # a segment touching a zero (or infinite) value falls back to trapezoid
    rest = ~both
    if rest.any():
        with np.errstate(invalid="ignore"):
            out[rest] = np.log(du[rest] / 2) + np.logaddexp(f0[rest], f1[rest])
    return out


def _tail(u_end, u_next, f_end, f_next):
    """Log of the integral from the far grid node out to +-infinity.

    The integrand is extrapolated as a power of ``|u|``, i.e. linearly in
    ``w = log|u|``; this covers both exponential decay in ``u`` (power laws in
    ``t``) and the slowly varying logarithmic cases.
    """
    if not np.isfinite(f_end):
        return f_end
    w_end, w_next = np.log(abs(u_end)), np.log(abs(u_next))
    g_end, g_next = f_end + w_end, f_next + w_next
    slope = (g_end - g_next) / (w_end - w_next)
    if not np.isfinite(slope) or slope >= 0:
        return np.inf
    return g_end - np.log(-slope)


def _partner(u, end):
    # a node about one e-fold closer in, so rounding in f at huge |u| does not
    # swamp the slope estimate
    au = np.abs(u)
    far = au[end]
    if far <= 1.0:
        return 1 if end == 0 else u.size - 2
    cand = np.nonzero((au <= far / np.e) & (np.sign(u) == np.sign(u[end])))[0]
    if cand.size == 0:
        return 1 if end == 0 else u.size - 2
    return int(cand[0]) if end == 0 else int(cand[-1])


def lower_tail(u, f):
    j = _partner(u, 0)
    return _tail(u[0], u[j], f[0], f[j])


def upper_tail(u, f):
    j = _partner(u, u.size - 1)
    return _tail(u[-1], u[j], f[-1], f[j])


def cumulative_from_zero(u, f, tail=True):
    """log of int_{-inf}^{u_i} exp(f) du at every node."""
    seg = segment_logs(u, f)
    start = lower_tail(u, f) if tail else -np.inf
    return np.logaddexp.accumulate(np.concatenate([[start], seg]))


def cumulative_to_infinity(u, f, tail=True):
    """log of int_{u_i}^{+inf} exp(f) du at every node."""
    seg = segment_logs(u, f)
    start = upper_tail(u, f) if tail else -np.inf
    rev = np.logaddexp.accumulate(np.concatenate([[start], seg[::-1]]))
    return rev[::-1]


def total(u, f, lower=True, upper=True):
    """log of the integral over the whole line."""
    seg = segment_logs(u, f)
    parts = [seg]
    if lower:
        parts.append([lower_tail(u, f)])
    if upper:
        parts.append([upper_tail(u, f)])
    return np.logaddexp.reduce(np.concatenate(parts))
