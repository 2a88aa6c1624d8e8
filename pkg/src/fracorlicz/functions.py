"""Sampled functions, decreasing rearrangements and the norms built on them.

A :class:`SampledFunction` is a piecewise-constant function: node ``i`` stands
for a cell of Lebesgue measure ``weights[i]``.  Its rearrangement is therefore
an exact step function, and every norm below is a functional of those steps.
ess-sup is the largest sampled value; it does not see peaks between nodes.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from . import _logquad
from .young import YoungFunction

__all__ = [
    "DomainError",
    "SampledFunction",
    "RearrangedFunction",
    "decreasing_rearrangement",
    "modular",
    "luxemburg_norm",
    "orlicz_lorentz_norm",
    "intersection_norm",
    "l1_plus_linf_norm",
    "sup_norm",
    "read_csv",
    "write_csv",
]

KINDS = ("grid1d", "halfline", "radial")
LAMBDA_LO, LAMBDA_HI, BISECT_ITERS = 1e-12, 1e12, 80


class DomainError(ValueError):
    pass


def ball_volume(n):
    return math.exp(0.5 * n * math.log(math.pi) - gammaln(0.5 * n + 1))


def _cell_edges(x, lower=-math.inf):
    mid = 0.5 * (x[1:] + x[:-1])
    first = max(lower, x[0] - 0.5 * (x[1] - x[0]))
    last = x[-1] + 0.5 * (x[-1] - x[-2])
    return np.concatenate([[first], mid, [last]])


@dataclass(frozen=True)
class SampledFunction:
    """Values on a strictly increasing grid.

    ``kind`` is ``grid1d`` (nodes on the real line), ``halfline`` (nodes on
    (0, inf)) or ``radial`` (a profile ``u(|x|)`` on R^n).  Outside the grid
    the function equals ``tail_value``.
    """

    grid: np.ndarray
    values: np.ndarray
    kind: str = "grid1d"
    n: int = 1
    tail_value: float = 0.0
    weights: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        x = np.asarray(self.grid, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if x.ndim != 1 or x.shape != v.shape or x.size < 2:
            raise ValueError("grid and values must be matching 1-D arrays of length >= 2")
        if np.any(np.diff(x) <= 0):
            raise ValueError("grid must be strictly increasing")
        if not np.all(np.isfinite(v)):
            raise ValueError("values must be finite")
        if self.kind == "grid1d" and self.n != 1:
            raise ValueError("grid1d functions live on the line (n = 1)")
        if self.kind != "grid1d" and x[0] < 0:
            raise ValueError("half-line and radial grids must be non-negative")
        object.__setattr__(self, "grid", x)
        object.__setattr__(self, "values", v)
        if self.kind == "grid1d":
            w = np.diff(_cell_edges(x))
        elif self.kind == "halfline":
            w = np.diff(_cell_edges(x, 0.0))
        else:
            e = _cell_edges(x, 0.0)
            w = ball_volume(self.n) * np.diff(e ** self.n)
        object.__setattr__(self, "weights", w)

    @classmethod
    def on_grid(cls, f, grid, kind="grid1d", n=1):
        grid = np.asarray(grid, dtype=float)
        return cls(grid, np.asarray(f(grid), dtype=float), kind, n)

    def scaled(self, c):
        return SampledFunction(self.grid, c * self.values, self.kind, self.n, c * self.tail_value)

    def translated(self, shift):
        if self.kind != "grid1d":
            raise ValueError("only line functions can be translated")
        return SampledFunction(self.grid + shift, self.values, self.kind, self.n, self.tail_value)

    @property
    def ess_sup(self):
        return float(max(np.max(np.abs(self.values)), abs(self.tail_value)))

    def distribution(self, t):
        """Measure of ``{|u| > t}`` for each level ``t``."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        a = np.abs(self.values)
        out = np.array([self.weights[a > ti].sum() for ti in t])
        out[t < abs(self.tail_value)] = np.inf
        return out


@dataclass(frozen=True)
class RearrangedFunction:
    """Right-continuous step function: ``values[i]`` on ``[edges[i], edges[i+1])``."""

    edges: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.edges, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if e.size != v.size + 1 or e[0] != 0:
            raise ValueError("need edges starting at 0, one more than values")
        if np.any(np.diff(e) < 0) or np.any(np.diff(v) > 0):
            raise ValueError("edges must increase and values must not increase")
        object.__setattr__(self, "edges", e)
        object.__setattr__(self, "values", v)

    @property
    def weights(self):
        return np.diff(self.edges)

    @property
    def ess_sup(self):
        return float(self.values[0]) if self.values.size else 0.0

    @property
    def support(self):
        return float(self.edges[-1])

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        idx = np.searchsorted(self.edges, r, side="right") - 1
        vals = np.concatenate([self.values, [0.0]])
        idx = np.where(r < 0, 0, np.minimum(idx, self.values.size))
        return vals[idx]

    def distribution(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        return np.array([self.weights[self.values > ti].sum() for ti in t])


def decreasing_rearrangement(u: SampledFunction) -> RearrangedFunction:
    if isinstance(u, RearrangedFunction):
        return u
    if u.tail_value != 0:
        raise DomainError("the function does not decay: a positive level set has infinite measure")
    a = np.abs(u.values)
    keep = a > 0
    a, w = a[keep], u.weights[keep]
    order = np.argsort(-a, kind="stable")
    a, w = a[order], w[order]
    return RearrangedFunction(np.concatenate([[0.0], np.cumsum(w)]), a)


# ---------------------------------------------------------------------------
# modulars


def _log_sum(A: YoungFunction, log_vals, log_w):
    return np.logaddexp.reduce(A._log_eval(log_vals) + log_w) if log_vals.size else -np.inf


def modular(A: YoungFunction, f, lam=1.0):
    """``int A(|f| / lam)`` over the cells of ``f``."""
    vals = np.abs(f.values)
    keep = vals > 0
    if not keep.any():
        return 0.0
    with np.errstate(divide="ignore"):
        return float(np.exp(_log_sum(A, np.log(vals[keep]) - math.log(lam), np.log(f.weights[keep]))))


def _bisect(log_mod):
    """Smallest ``lam`` in the bracket with ``log_mod(log lam) <= 0``."""
    lo, hi = math.log(LAMBDA_LO), math.log(LAMBDA_HI)
    if log_mod(hi) > 0:
        return math.inf
    if log_mod(lo) <= 0:
        return LAMBDA_LO
    for _ in range(BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        if log_mod(mid) <= 0:
            hi = mid
        else:
            lo = mid
    return math.exp(hi)


def luxemburg_norm(A: YoungFunction, f) -> float:
    """``inf{lam > 0 : int A(|f|/lam) <= 1}``."""
    vals = np.abs(f.values)
    keep = vals > 0
    tail = abs(getattr(f, "tail_value", 0.0))
    if not keep.any() and tail == 0:
        return 0.0
    lv = np.log(vals[keep])
    lw = np.log(f.weights[keep])

    def log_mod(ll):
        # a non-zero tail lives on a set of infinite measure
        if tail and A._log_eval(np.array([math.log(tail) - ll]))[0] > -np.inf:
            return math.inf
        return _log_sum(A, lv - ll, lw)

    return _bisect(log_mod)


# -- weighted steps on (0, inf) --------------------------------------------

_GX, _GW = np.polynomial.legendre.leggauss(8)


def _log_nodes(a, b, values):
    """Gauss nodes in ``log r`` over ``[a_i, b_i]``; returns (log r, log weight, value)."""
    la, lb = np.log(a), np.log(b)
    chunks = np.clip(np.ceil(lb - la), 1, 64).astype(int)
    idx = np.repeat(np.arange(a.size), chunks)
    j = np.concatenate([np.arange(c) for c in chunks])
    h = (lb - la)[idx] / chunks[idx]
    lo = la[idx] + j * h
    x = lo[:, None] + 0.5 * h[:, None] * (_GX[None, :] + 1)
    lw = np.log(0.5 * h[:, None] * _GW[None, :]) + x
    return x.ravel(), lw.ravel(), np.repeat(values[idx], _GX.size)


@lru_cache(maxsize=64)
def _log_psi_table(E: YoungFunction, q: float):
    """log of ``int_y^inf E(z) z^{-q-1} dz`` on the shared log grid."""
    u_max = None if E.inf_threshold is None else math.log(E.inf_threshold)
    u = _logquad.log_grid(u_max=u_max)
    f = E._log_eval(u) - q * u
    tail = u_max is None
    lp = _logquad.cumulative_to_infinity(u, f, tail=tail)
    return u, lp


def _log_psi(E, q, ly):
    u, lp = _log_psi_table(E, q)
    out = np.interp(ly, u, lp)
    out = np.where(ly > u[-1], np.inf if E.inf_threshold is not None else lp[-1], out)
    return out


def _ol_log_modular(E, q, rf: RearrangedFunction):
    """Returns a function of ``log lam`` giving the log modular of ``r^{-1/q} u*(r)``."""
    e, v = rf.edges, rf.values
    lv0, r1 = math.log(v[0]), e[1]
    if v.size > 1:
        lr, lw, vals = _log_nodes(e[1:-1], e[2:], v[1:])
        base = np.log(vals) - lr / q
    else:
        lw = base = np.zeros(0)

    def log_mod(ll):
        # first step in closed form: q (v/lam)^q Psi(v r1^{-1/q} / lam)
        ly = lv0 - math.log(r1) / q - ll
        first = math.log(q) + q * (lv0 - ll) + float(_log_psi(E, q, np.array([ly]))[0])
        if not base.size:
            return first
        return np.logaddexp(first, np.logaddexp.reduce(E._log_eval(base - ll) + lw))

    return log_mod


def orlicz_lorentz_norm(E: YoungFunction, q: float, u) -> float:
    """``|| r^{-1/q} u*(r) ||`` in the Orlicz space of ``E`` on (0, inf)."""
    if q <= 1:
        raise ValueError("q must exceed 1")
    rf = decreasing_rearrangement(u)
    if rf.values.size == 0:
        return 0.0
    return _bisect(_ol_log_modular(E, q, rf))


def _phi_log_modular(E, s_over_n, rf: RearrangedFunction):
    e, v = rf.edges, rf.values
    # split the steps at r = 1, where the weight starts to decay
    a, b = e[:-1], e[1:]
    flat_len = np.clip(np.minimum(b, 1.0) - a, 0, None)
    fl = flat_len > 0
    flat_lv, flat_lw = np.log(v[fl]), np.log(flat_len[fl])
    dec = b > 1.0
    a2 = np.maximum(a[dec], 1.0)
    lr, lw, vals = _log_nodes(a2, b[dec], v[dec])
    base = np.log(vals) - s_over_n * lr
    # the weighted function is largest at the left end of each decaying step
    left = np.log(v[dec]) - s_over_n * np.log(a2)

    def log_mod(ll):
        if E.inf_threshold is not None:
            lt = math.log(E.inf_threshold)
            if (flat_lv.size and flat_lv.max() - ll > lt) or (left.size and left.max() - ll > lt):
                return math.inf
        parts = [E._log_eval(flat_lv - ll) + flat_lw, E._log_eval(base - ll) + lw]
        return np.logaddexp.reduce(np.concatenate(parts))

    return log_mod


def weighted_norm(E: YoungFunction, s_over_n: float, u) -> float:
    """``|| u*(r) min{1, r^{-s/n}} ||`` in the Orlicz space of ``E`` on (0, inf)."""
    rf = decreasing_rearrangement(u)
    if rf.values.size == 0:
        return 0.0
    return _bisect(_phi_log_modular(E, s_over_n, rf))


def sup_norm(u) -> float:
    return u.ess_sup


def intersection_norm(A_hat: YoungFunction, p, u, E_A: YoungFunction | None = None):
    """Both equivalent norms of the intersection of L^inf with the Orlicz-Lorentz space."""
    rf = decreasing_rearrangement(u)
    if rf.values.size == 0:
        return {"sum_form": 0.0, "weighted_form": 0.0}
    if E_A is None:
        E_A = YoungFunction(A_hat.pieces, inf_threshold=1.0)
    q = p.n / p.s
    return {
        "sum_form": rf.ess_sup + orlicz_lorentz_norm(A_hat, q, rf),
        "weighted_form": weighted_norm(E_A, p.s / p.n, rf),
    }


def l1_plus_linf_norm(u) -> float:
    """``int_0^1 u*(r) dr``."""
    rf = decreasing_rearrangement(u)
    lens = np.clip(np.minimum(rf.edges[1:], 1.0) - rf.edges[:-1], 0, None)
    return float(np.dot(lens, rf.values))


# ---------------------------------------------------------------------------
# CSV


def write_csv(u: SampledFunction, path=None):
    buf = io.StringIO()
    buf.write(f"# kind={u.kind} n={u.n}\n")
    np.savetxt(buf, np.column_stack([u.grid, u.values]), delimiter=",", header="grid,value",
               comments="", fmt="%.17g")
    text = buf.getvalue()
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text


def read_csv(path) -> SampledFunction:
    with open(path) as fh:
        head = fh.readline()
    if not head.startswith("#"):
        raise ValueError("missing '# kind=... n=...' header line")
    meta = dict(tok.split("=", 1) for tok in head[1:].split())
    data = np.loadtxt(path, delimiter=",", skiprows=2, ndmin=2)
    return SampledFunction(data[:, 0], data[:, 1], meta.get("kind", "grid1d"), int(meta.get("n", 1)))
