"""Gagliardo-type modulars and fractional Orlicz seminorms of sampled functions.

For a line function the double integral is assembled from four parts:

* all grid pairs, binned once by the size of their difference quotient
  (:func:`fracorlicz.kernels.pair_moments`), so that any ``A`` and ``lambda``
  costs one pass over the bins;
* the strip ``|x - y| < h/2`` and a correction for the first few offsets,
  both integrated exactly for the local linear model ``u(y) - u(x) = u'(x)(y - x)``
  via ``Phi(V) = int_0^V A(v) dv / v``;
* pairs with one point off the grid, where the function is zero.

Radial profiles in higher dimension go through the Monte Carlo estimator.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _logquad, kernels
from .functions import SampledFunction, _bisect, ball_volume
from .young import SpaceParams, YoungFunction

__all__ = [
    "ModularConfig",
    "ModularResult",
    "MollifierFamily",
    "PairTable",
    "gagliardo_modular",
    "fractional_seminorm",
    "difference_quotient_modular",
    "mollify",
]

DEFAULT_SEED = 0x5EED


@dataclass(frozen=True)
class ModularConfig:
    resolution: int = 2001
    split: float = 4.0
    bins: int = 8000
    bin_width: float = 0.01
    samples: int = 1_000_000
    seed: int = DEFAULT_SEED
    block: int = 1 << 16
    jobs: int = 1
    h_min: float = 1e-9
    h_max: float = 1e6

    def __post_init__(self):
        if self.resolution < 16:
            raise ValueError("resolution must be at least 16")
        if not self.split > 0:
            raise ValueError("split radius must be positive")

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        flat = {}
        flat.update(d.pop("quadrature", {}))
        flat.update(d.pop("montecarlo", {}))
        flat.update(d)
        return cls(**flat)


@dataclass(frozen=True)
class ModularResult:
    value: float
    stderr: float
    method: str


def _check_sigma(sigma):
    if not 0 < sigma < 1:
        raise ValueError("sigma must lie in (0, 1)")


@lru_cache(maxsize=64)
def _log_phi_table(A: YoungFunction):
    u_max = None if A.inf_threshold is None else math.log(A.inf_threshold)
    u = _logquad.log_grid(u_max=u_max)
    lp = _logquad.cumulative_from_zero(u, A._log_eval(u))
    return u, lp


def _phi(A: YoungFunction, V):
    """``int_0^V A(v) dv / v``, vectorised; +inf past a threshold of A."""
    u, lp = _log_phi_table(A)
    V = np.asarray(V, dtype=float)
    out = np.zeros(V.shape)
    pos = V > 0
    lv = np.log(V[pos])
    val = np.exp(np.interp(lv, u, lp))
    if A.inf_threshold is not None:
        val[lv > u[-1]] = np.inf
    out[pos] = val
    return out


def _as_line(u: SampledFunction, resolution):
    """Node values on a uniform grid of the line, with the spacing."""
    x, v = u.grid, u.values
    if u.kind == "radial":
        if u.n != 1:
            raise ValueError("radial profiles with n >= 2 need the Monte Carlo estimator")
        x = np.concatenate([-x[::-1], x[1:] if x[0] == 0 else x])
        v = np.concatenate([v[::-1], v[1:] if u.grid[0] == 0 else v])
    steps = np.diff(x)
    if np.ptp(steps) > 1e-9 * steps.mean() or x.size < resolution // 4:
        xx = np.linspace(x[0], x[-1], max(resolution, x.size))
        v = np.interp(xx, x, v)
        x = xx
    return x, v, float(x[1] - x[0])


class PairTable:
    """Everything about ``(u, sigma)`` that does not depend on ``A`` or ``lambda``."""

    def __init__(self, u: SampledFunction, sigma: float, config: ModularConfig | None = None):
        _check_sigma(sigma)
        if u.tail_value != 0:
            raise ValueError("the modular is only finite for functions decaying to 0")
        cfg = config or ModularConfig()
        self.sigma = sigma
        self.x, self.v, self.h = _as_line(u, cfg.resolution)
        v, h = self.v, self.h
        top = np.max(np.abs(v))
        self.trivial = top == 0 or np.ptp(v) == 0 and v[0] == 0
        span = cfg.bins * cfg.bin_width
        self.log_hi = math.log(2 * top + 1e-300) - sigma * math.log(h) + 1.0
        self.log_lo = self.log_hi - span
        w, m = kernels.pair_moments(v, h, sigma, self.log_lo, 1.0 / cfg.bin_width, cfg.bins)
        nz = w > 0
        self.bin_w = w[nz]
        self.bin_lq = m[nz] / w[nz]
        padded = np.concatenate([[0.0], v, [0.0]])
        self.slope = np.abs(np.gradient(padded, h))[1:-1]
        self.k0 = int(cfg.split)
        # distances from each node to the two ends of the sampled cells
        left = self.x - (self.x[0] - 0.5 * h)
        right = (self.x[-1] + 0.5 * h) - self.x
        self.tail_d = (left, right)

    def modular(self, A: YoungFunction, lam: float = 1.0) -> float:
        if self.trivial:
            return 0.0
        s, h = self.sigma, self.h
        with np.errstate(over="ignore"):
            pairs = np.logaddexp.reduce(np.log(self.bin_w) + A._log_eval(self.bin_lq - math.log(lam)))
        total = math.exp(pairs) if pairs > -np.inf else 0.0
        c = self.slope / lam
        total += h * 2.0 * np.sum(_phi(A, c * (0.5 * h) ** (1 - s))) / (1 - s)
        for k in range(1, self.k0 + 1):
            exact = (_phi(A, c * ((k + 0.5) * h) ** (1 - s)) - _phi(A, c * ((k - 0.5) * h) ** (1 - s))) / (1 - s)
            if not np.all(np.isfinite(exact)):
                return math.inf
            with np.errstate(divide="ignore"):
                mid = np.exp(A._log_eval(np.log(c * (k * h) ** (1 - s)))) / k
            total += 2.0 * h * np.sum(exact - mid)
        av = np.abs(self.v) / lam
        for d in self.tail_d:
            total += 2.0 * h * np.sum(_phi(A, av * d ** (-s))) / s
        return float(total)


# ---------------------------------------------------------------------------
# Monte Carlo


def _mc_block(seed_seq, size, u_eval, radius, n, sigma, A, lam, lh_lo, lh_hi):
    rng = np.random.default_rng(seed_seq)
    if n == 1:
        x = rng.uniform(-radius[0], radius[1], size)
        sign = rng.choice([-1.0, 1.0], size)
        rho = np.exp(rng.uniform(lh_lo, lh_hi, size))
        y = x + sign * rho
        ux, uy = u_eval(x), u_eval(y)
        outside = (y < -radius[0]) | (y > radius[1])
        measure = radius[0] + radius[1]
        sphere = 2.0
    else:
        g = rng.standard_normal((size, n))
        x = g / np.linalg.norm(g, axis=1)[:, None] * radius[1] * rng.uniform(0, 1, size)[:, None] ** (1 / n)
        d = rng.standard_normal((size, n))
        d /= np.linalg.norm(d, axis=1)[:, None]
        rho = np.exp(rng.uniform(lh_lo, lh_hi, size))
        y = x + d * rho[:, None]
        rx, ry = np.linalg.norm(x, axis=1), np.linalg.norm(y, axis=1)
        ux, uy = u_eval(rx), u_eval(ry)
        outside = ry > radius[1]
        measure = ball_volume(n) * radius[1] ** n
        sphere = n * ball_volume(n)
    diff = np.abs(ux - uy) / lam
    with np.errstate(divide="ignore"):
        la = A._log_eval(np.log(diff) - sigma * np.log(rho))
    val = np.exp(la) * measure * sphere * (lh_hi - lh_lo) * np.where(outside, 2.0, 1.0)
    return val.sum(), (val * val).sum()


def _monte_carlo(u: SampledFunction, sigma, A, lam, cfg: ModularConfig):
    x, v = u.grid, u.values
    if u.kind == "grid1d":
        n, radius = 1, (-x[0], x[-1])
        if x[0] > 0 or x[-1] < 0:
            raise ValueError("Monte Carlo on the line needs a grid around the origin")
    elif u.kind == "halfline":
        n, radius = 1, (0.0, x[-1])
    else:
        n, radius = u.n, (x[-1], x[-1])

    def u_eval(t):
        return np.interp(t, x, v, left=v[0] if u.kind == "radial" else 0.0, right=0.0)

    blocks = max(1, -(-cfg.samples // cfg.block))
    seeds = np.random.SeedSequence(cfg.seed).spawn(blocks)
    sizes = [min(cfg.block, cfg.samples - i * cfg.block) for i in range(blocks)]
    args = [(sd, sz, u_eval, radius, n, sigma, A, lam, math.log(cfg.h_min), math.log(cfg.h_max))
            for sd, sz in zip(seeds, sizes)]
    if cfg.jobs > 1:
        with ThreadPoolExecutor(cfg.jobs) as ex:
            parts = list(ex.map(lambda a: _mc_block(*a), args))
    else:
        parts = [_mc_block(*a) for a in args]
    s1 = sum(p[0] for p in parts)
    s2 = sum(p[1] for p in parts)
    N = cfg.samples
    mean = s1 / N
    var = max(s2 / N - mean * mean, 0.0)
    return ModularResult(float(mean), float(math.sqrt(var / N)), "montecarlo")


# ---------------------------------------------------------------------------
# public operations


def gagliardo_modular(u: SampledFunction, sigma: float, A: YoungFunction, lam: float = 1.0,
                      config: ModularConfig | None = None, method: str = "auto",
                      table: PairTable | None = None) -> ModularResult:
    """``iint A(|u(x) - u(y)| / (lam |x - y|^sigma)) dx dy / |x - y|^n``."""
    _check_sigma(sigma)
    cfg = config or ModularConfig()
    if method == "auto":
        method = "montecarlo" if (u.kind == "radial" and u.n > 1) else "quadrature"
    if method == "montecarlo":
        return _monte_carlo(u, sigma, A, lam, cfg)
    if method != "quadrature":
        raise ValueError("method must be 'auto', 'quadrature' or 'montecarlo'")
    tab = table or PairTable(u, sigma, cfg)
    return ModularResult(tab.modular(A, lam), 0.0, "quadrature")


def _gradient(u: SampledFunction):
    if u.kind != "grid1d":
        raise ValueError("first-order seminorms need a line function")
    padded = np.concatenate([[u.tail_value], u.values, [u.tail_value]])
    x = np.concatenate([[2 * u.grid[0] - u.grid[1]], u.grid, [2 * u.grid[-1] - u.grid[-2]]])
    g = np.gradient(padded, x)[1:-1]
    return SampledFunction(u.grid, g, "grid1d", 1)


def fractional_seminorm(u: SampledFunction, p: SpaceParams, A: YoungFunction,
                        config: ModularConfig | None = None) -> float:
    """``inf{lam > 0 : J(grad^[s] u / lam) <= 1}`` for ``[s]`` in {0, 1}."""
    order = p.int_part
    if order > 1:
        raise ValueError("only orders with integer part 0 or 1 are supported")
    w = _gradient(u) if order == 1 else u
    if np.all(w.values == 0):
        return 0.0
    sigma = p.frac_part
    if w.kind == "radial" and w.n > 1:
        cfg = config or ModularConfig()
        return _bisect(lambda ll: math.log(max(_monte_carlo(w, sigma, A, math.exp(ll), cfg).value, 1e-300)))
    tab = PairTable(w, sigma, config)

    def log_mod(ll):
        m = tab.modular(A, math.exp(ll))
        return math.log(m) if m > 0 else -math.inf

    return _bisect(log_mod)


def difference_quotient_modular(u: SampledFunction, sigma: float, A: YoungFunction, c: float,
                                config: ModularConfig | None = None) -> float:
    """``int_0^inf int A(c |u(x + h) - u(x)| / h^sigma) dx dh / h`` on the line, by shifts."""
    _check_sigma(sigma)
    cfg = config or ModularConfig()
    if u.kind == "radial" and u.n > 1:
        raise ValueError("difference quotients are implemented on the line")
    _, v, h = _as_line(u, cfg.resolution)
    if np.all(v == 0):
        return 0.0
    n = v.size
    padded = np.concatenate([np.zeros(n), v, np.zeros(n)])
    total = 0.0
    for k in range(1, n + 1):
        du = np.abs(padded[k:] - padded[:-k])
        du = du[du > 0]
        vals = np.exp(A._log_eval(np.log(c * du) - sigma * math.log(k * h)))
        total += h / k * vals.sum()
    # beyond the last shift the function and its translate are disjoint
    D = (n + 0.5) * h
    av = c * np.abs(v)
    total += 2.0 * h * np.sum(_phi(A, av * D ** (-sigma))) / sigma
    # strip h < h0/2 and the first offsets under the local linear model
    slope = c * np.abs(np.gradient(np.concatenate([[0.0], v, [0.0]]), h))[1:-1]
    total += h * np.sum(_phi(A, slope * (0.5 * h) ** (1 - sigma))) / (1 - sigma)
    for k in range(1, int(cfg.split) + 1):
        exact = (_phi(A, slope * ((k + 0.5) * h) ** (1 - sigma))
                 - _phi(A, slope * ((k - 0.5) * h) ** (1 - sigma))) / (1 - sigma)
        with np.errstate(divide="ignore"):
            mid = np.exp(A._log_eval(np.log(slope * (k * h) ** (1 - sigma)))) / k
        total += h * np.sum(exact - mid)
    return float(total)


@dataclass(frozen=True)
class MollifierFamily:
    """The bump ``exp(-1/(1 - x^2))`` on (-1, 1), normalised to unit mass."""

    epsilon: float

    @staticmethod
    @lru_cache(maxsize=1)
    def mass():
        from scipy.integrate import quad

        val, _ = quad(lambda t: math.exp(-1.0 / (1.0 - t * t)), -1, 1, epsabs=1e-14, epsrel=1e-13)
        return val

    def profile(self, x):
        x = np.asarray(x, dtype=float) / self.epsilon
        out = np.zeros(x.shape)
        inside = np.abs(x) < 1
        out[inside] = np.exp(-1.0 / (1.0 - x[inside] ** 2))
        return out / (self.mass() * self.epsilon)


def mollify(u: SampledFunction, eps: float) -> SampledFunction:
    """Convolution with the scaled bump on the (uniform) grid of ``u``.

    The discrete kernel is renormalised to sum one, so constants are kept
    exactly; the grid is padded so the support may spread by ``eps``.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    if u.kind != "grid1d":
        raise ValueError("mollification is implemented for line functions")
    x, v = u.grid, u.values
    h = float(x[1] - x[0])
    if np.ptp(np.diff(x)) > 1e-9 * h:
        raise ValueError("mollification needs a uniform grid")
    m = int(math.ceil(eps / h))
    offsets = np.arange(-m, m + 1) * h
    ker = MollifierFamily(eps).profile(offsets)
    if ker.sum() == 0:
        return u
    ker /= ker.sum()
    pad = np.full(m, u.tail_value)
    vv = np.concatenate([pad, v, pad])
    xx = np.concatenate([x[0] - h * np.arange(m, 0, -1), x, x[-1] + h * np.arange(1, m + 1)])
    out = np.convolve(np.concatenate([pad, vv, pad]), ker, mode="same")[m:-m] if m else vv * ker[0]
    return SampledFunction(xx, out, "grid1d", 1, u.tail_value)
