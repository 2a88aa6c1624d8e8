"""The one-dimensional Hardy-type operator ``f -> int_r^inf f(rho) rho^{-1+s/n} drho``
and estimates of its norm between Orlicz-type spaces on (0, inf)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import _logquad
from .functions import (
    RearrangedFunction,
    SampledFunction,
    _bisect,
    _cell_edges,
    intersection_norm,
    luxemburg_norm,
)
from .regime import classify_endpoint_integral
from .young import MonotoneMap, SpaceParams, YoungFunction, conjugate, generalized_inverse, tabulate

__all__ = [
    "HardyKernel",
    "StepFunction",
    "KernelNorm",
    "hardy_operator",
    "kernel_conjugate_norm",
    "reduction_constant_estimate",
    "spike_trials",
    "linf_target",
    "orlicz_target_norm",
    "intersection_target",
]


@dataclass(frozen=True)
class HardyKernel:
    p: SpaceParams

    @property
    def exponent(self):
        return -1.0 + self.p.s / self.p.n


@dataclass(frozen=True)
class StepFunction:
    """``values[i]`` on ``[edges[i], edges[i+1])``, zero beyond the last edge."""

    edges: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.edges, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if e.size != v.size + 1 or e[0] < 0 or np.any(np.diff(e) <= 0):
            raise ValueError("need increasing non-negative edges, one more than values")
        object.__setattr__(self, "edges", e)
        object.__setattr__(self, "values", v)

    @classmethod
    def coerce(cls, f):
        if isinstance(f, StepFunction):
            return f
        if isinstance(f, RearrangedFunction):
            keep = np.diff(f.edges) > 0
            e = np.concatenate([[0.0], f.edges[1:][keep]])
            return cls(e, f.values[keep])
        if isinstance(f, SampledFunction):
            if f.kind != "halfline":
                raise ValueError("the Hardy operator acts on functions of (0, inf)")
            return cls(_cell_edges(f.grid, 0.0), f.values)
        raise TypeError("expected a step, rearranged or half-line function")

    @classmethod
    def indicator(cls, length, height=1.0):
        return cls(np.array([0.0, length]), np.array([height]))

    def __add__(self, other):
        e = np.union1d(self.edges, other.edges)
        mid = 0.5 * (e[1:] + e[:-1])
        return StepFunction(e, self(mid) + other(mid))

    def scaled(self, c):
        return StepFunction(self.edges, c * self.values)

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        idx = np.searchsorted(self.edges, r, side="right") - 1
        vals = np.concatenate([self.values, [0.0]])
        inside = (idx >= 0) & (idx < self.values.size)
        return np.where(inside, vals[np.clip(idx, 0, self.values.size)], 0.0)

    def as_rearranged(self):
        """Lebesgue cells of this function, usable by the Orlicz norms."""
        w = np.diff(self.edges)
        a = np.abs(self.values)
        order = np.argsort(-a, kind="stable")
        keep = a[order] > 0
        return RearrangedFunction(np.concatenate([[0.0], np.cumsum(w[order][keep])]), a[order][keep])


def hardy_operator(f, p: SpaceParams, r):
    """``int_r^inf f(rho) rho^{-1+s/n} drho``, exact on steps; vectorised in ``r``."""
    f = StepFunction.coerce(f)
    beta = p.s / p.n
    e, v = f.edges, f.values
    cell = v * (e[1:] ** beta - e[:-1] ** beta) / beta
    tail = np.concatenate([np.cumsum(cell[::-1])[::-1], [0.0]])
    rr = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(rr < 0):
        raise ValueError("r must be non-negative")
    idx = np.searchsorted(e, rr, side="right") - 1
    out = np.zeros(rr.shape)
    inside = (idx >= 0) & (idx < v.size)
    i = idx[inside]
    out[inside] = tail[i + 1] + v[i] * (e[i + 1] ** beta - rr[inside] ** beta) / beta
    out[idx < 0] = tail[0]
    return out if np.ndim(r) else float(out[0])


def hardy_image(f, p: SpaceParams, per_step=64) -> RearrangedFunction:
    """The (non-increasing) image of ``f``, as a step function on a refined grid."""
    f = StepFunction.coerce(f)
    e = f.edges
    pts = [np.zeros(1)]
    for a, b in zip(e[:-1], e[1:]):
        lo = a if a > 0 else b * 1e-12
        pts.append(np.geomspace(lo, b, per_step + 1)[1:])
    knots = np.unique(np.concatenate(pts))
    mid = np.sqrt(np.maximum(knots[:-1], 1e-300) * knots[1:])
    mid[0] = 0.0
    vals = hardy_operator(f, p, mid)
    vals = np.minimum.accumulate(vals)
    return RearrangedFunction(knots, vals)


# ---------------------------------------------------------------------------
# the conjugate-kernel norm


@dataclass(frozen=True)
class KernelNorm:
    value: float
    integral: float
    cross_check: float
    zero_report: object
    inf_report: object


def kernel_conjugate_norm(A: YoungFunction, p: SpaceParams) -> KernelNorm:
    """Luxemburg norm of ``r^{-1+s/n}`` in the Orlicz space of the conjugate of ``A`` on (0, inf).

    With ``g = n/(n-s)`` a change of variables gives ``(g I)^{1/g}`` with
    ``I = int_0^inf A~(y) y^{-1-g} dy``; ``I`` is classified at both ends by the
    generic engine, and the norm is cross-checked by bisection on the modular.
    """
    At = tabulate(conjugate(A))
    g = p.n / (p.n - p.s)

    def log_g(u):
        return At._log_eval(np.asarray(u, dtype=float)) - (1 + g) * np.asarray(u, dtype=float)

    zero = classify_endpoint_integral(endpoint="zero", log_g=log_g)
    inf = classify_endpoint_integral(endpoint="infinity", log_g=log_g)
    if not (zero.converges and inf.converges):
        return KernelNorm(math.inf, math.inf, math.inf, zero, inf)
    integral = zero.value + inf.value
    value = (g * integral) ** (1 / g)
    return KernelNorm(value, integral, _kernel_norm_bisect(At, p), zero, inf)


def _kernel_norm_bisect(At: YoungFunction, p: SpaceParams):
    b = p.s / p.n - 1.0
    u = _logquad.log_grid(span=1e4, points=4001)

    def log_mod(ll):
        f = At._log_eval(b * u - ll) + u
        return float(_logquad.total(u, f))

    return _bisect(log_mod)


# ---------------------------------------------------------------------------
# norms of the image and the reduction constant


def linf_target() -> Callable:
    def norm(img: RearrangedFunction):
        return img.ess_sup

    norm.name = "linf"
    return norm


def orlicz_target_norm(B: YoungFunction) -> Callable:
    def norm(img: RearrangedFunction):
        return luxemburg_norm(B, img)

    norm.name = "orlicz"
    return norm


def intersection_target(A_hat: YoungFunction, p: SpaceParams, form="sum_form") -> Callable:
    def norm(img: RearrangedFunction):
        return intersection_norm(A_hat, p, img)[form]

    norm.name = "intersection"
    return norm


def reduction_constant_estimate(A: YoungFunction, p: SpaceParams, target_norm: Callable,
                                trials: Sequence) -> dict:
    """Largest ``target_norm(H f) / ||f||_A`` over the trials (a lower bound for the best constant)."""
    best, used, ratios = 0.0, 0, []
    for f in trials:
        f = StepFunction.coerce(f)
        if np.any(f.values < 0):
            raise ValueError("trials must be non-negative")
        den = luxemburg_norm(A, f.as_rearranged()) if np.any(f.values > 0) else 0.0
        if not den > 0 or not math.isfinite(den):
            continue
        ratio = target_norm(hardy_image(f, p)) / den
        ratios.append(ratio)
        best = max(best, ratio)
        used += 1
    return {"estimate": best, "trials_used": used, "ratios": ratios}


def spike_trials(A: YoungFunction, ks) -> list:
    """``A^{-1}(k)`` times the indicator of (0, 1/k): each has Luxemburg norm 1."""
    inv = MonotoneMap(evaluator=lambda t: A(t))
    heights = generalized_inverse(inv, np.asarray(ks, dtype=float))
    return [StepFunction.indicator(1.0 / k, float(h)) for k, h in zip(ks, np.atleast_1d(heights))]
