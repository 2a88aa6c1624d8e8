"""Young functions and their calculus.

A Young function is stored as a list of breakpoint-delimited pieces, each
either a power-log law ``k t^p L(t)^alpha`` or a table of knots interpolated
linearly in log-log coordinates, plus an optional threshold beyond which the
function is ``+inf``.  All heavy lifting is done on ``log A`` so that values
like ``exp(-1e12)`` stay representable.

The logarithmic factor is shifted to stay positive on the whole half-line:
``L(t) = log(e + 1/t)`` for pieces anchored near zero and ``log(e + t)`` for
pieces anchored near infinity.  Both are equivalent to ``log(1/t)`` resp.
``log t`` in their regime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np
from scipy.special import expit

__all__ = [
    "PowerLog",
    "Tabulated",
    "Legendre",
    "Affine",
    "YoungFunction",
    "SpaceParams",
    "MonotoneMap",
    "Domination",
    "power",
    "powerlog",
    "spliced",
    "linf",
    "generalized_inverse",
    "conjugate",
    "matuszewska_index_zero",
    "dominates",
    "dominance_profile",
    "equivalent",
    "eval_young",
    "density",
    "tabulate",
]

# bisection range for log t when inverting densities
_U_BISECT = 1e6
_BISECT_ITERS = 120


@dataclass(frozen=True)
class SpaceParams:
    """Ambient dimension ``n`` and non-integer smoothness ``s``."""

    n: int
    s: float

    def __post_init__(self):
        if self.n < 1 or int(self.n) != self.n:
            raise ValueError(f"dimension must be a positive integer, got {self.n}")
        if not self.s > 0:
            raise ValueError(f"smoothness must be positive, got {self.s}")
        if float(self.s).is_integer():
            raise ValueError(f"smoothness must not be an integer, got {self.s}")

    @property
    def int_part(self) -> int:
        return int(math.floor(self.s))

    @property
    def frac_part(self) -> float:
        return self.s - self.int_part

    @property
    def ratio(self) -> float:
        """n / s."""
        return self.n / self.s

    @property
    def admissible_order(self) -> bool:
        return self.s < self.n


# ---------------------------------------------------------------------------
# pieces


def _log_L(u, direction):
    # log of the shifted logarithm; L >= 1 everywhere
    if direction == "zero":
        return np.log(np.logaddexp(1.0, -u))
    return np.log(np.logaddexp(1.0, u))


def _t_dL(u, direction):
    # t * L'(t)
    if direction == "zero":
        return -expit(-(1.0 + u))
    return expit(u - 1.0)


@dataclass(frozen=True)
class PowerLog:
    """``k t^p L(t)^alpha``; ``k = 0`` encodes the zero function."""

    k: float
    p: float
    alpha: float = 0.0
    log: str = "zero"

    def __post_init__(self):
        if self.log not in ("zero", "inf"):
            raise ValueError("log direction must be 'zero' or 'inf'")
        if self.k < 0:
            raise ValueError("coefficient must be non-negative")
        if self.k > 0 and self.p < 1:
            raise ValueError("exponent must be >= 1")

    def scaled(self, factor):
        return PowerLog(self.k * factor, self.p, self.alpha, self.log)

    def log_value(self, u):
        u = np.asarray(u, dtype=float)
        if self.k == 0:
            return np.full(u.shape, -np.inf)
        out = math.log(self.k) + self.p * u
        if self.alpha:
            with np.errstate(invalid="ignore"):
                out = out + self.alpha * _log_L(u, self.log)
            # the power wins at both ends
            out = np.where(np.isinf(u), u, out)
        return out

    def log_ratio(self, u, a, b):
        """``a u - b log A`` with the linear parts combined before rounding."""
        u = np.asarray(u, dtype=float)
        if self.k == 0:
            return np.full(u.shape, -np.inf if b < 0 else np.inf)
        out = (a - b * self.p) * u - b * math.log(self.k)
        if self.alpha:
            out = out - b * self.alpha * _log_L(u, self.log)
        return out

    def local_index(self, u):
        """t a(t) / A(t)."""
        u = np.asarray(u, dtype=float)
        if not self.alpha:
            return np.full(u.shape, float(self.p))
        L = np.exp(_log_L(u, self.log))
        return self.p + self.alpha * _t_dL(u, self.log) / L

    def log_density(self, u):
        u = np.asarray(u, dtype=float)
        if self.k == 0:
            return np.full(u.shape, -np.inf)
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.log_value(u) - u + np.log(self.local_index(u))

    def to_dict(self):
        return {"form": "powerlog", "k": self.k, "p": self.p,
                "alpha": self.alpha, "log": self.log}


@dataclass(frozen=True)
class Tabulated:
    """Knots ``(log t, log A)`` joined by power laws.

    A leading run of ``-inf`` values marks an interval where ``A = 0``; the
    segment leaving it is linear in ``t``.
    """

    log_t: tuple
    log_A: tuple

    def __post_init__(self):
        lt = np.asarray(self.log_t, dtype=float)
        la = np.asarray(self.log_A, dtype=float)
        if lt.ndim != 1 or lt.shape != la.shape or lt.size < 2:
            raise ValueError("need matching 1-D knot arrays with >= 2 knots")
        if np.any(np.diff(lt) <= 0):
            raise ValueError("knot abscissae must be strictly increasing")
        if np.any(np.diff(la[np.isfinite(la)]) < 0):
            raise ValueError("tabulated values must be non-decreasing")
        object.__setattr__(self, "_lt", lt)
        object.__setattr__(self, "_la", la)

    @classmethod
    def from_arrays(cls, log_t, log_A):
        return cls(tuple(np.asarray(log_t, float)), tuple(np.asarray(log_A, float)))

    def scaled(self, factor):
        return Tabulated.from_arrays(self._lt, self._la + math.log(factor))

    def _segments(self, u):
        lt, la = self._lt, self._la
        i = np.clip(np.searchsorted(lt, u, side="left") - 1, 0, lt.size - 2)
        return i, lt[i], lt[i + 1], la[i], la[i + 1]

    def log_value(self, u):
        u = np.asarray(u, dtype=float)
        i, t0, t1, a0, a1 = self._segments(u)
        out = np.full(u.shape, -np.inf)
        fin = np.isfinite(a0) & np.isfinite(a1)
        with np.errstate(invalid="ignore"):
            q = (a1 - a0) / (t1 - t0)
        out[fin] = a0[fin] + q[fin] * (u[fin] - t0[fin])
        lin = ~np.isfinite(a0) & np.isfinite(a1)
        if lin.any():
            # A = A1 (t - t0) / (t1 - t0) on a segment leaving zero
            with np.errstate(invalid="ignore", divide="ignore"):
                frac = -np.expm1(t0[lin] - u[lin]) / -np.expm1(t0[lin] - t1[lin])
                val = a1[lin] + (u[lin] - t1[lin]) + np.log(np.clip(frac, 0, None))
            out[lin] = np.where(u[lin] <= t0[lin], -np.inf, val)
        return out

    def log_density(self, u):
        u = np.asarray(u, dtype=float)
        i, t0, t1, a0, a1 = self._segments(u)
        with np.errstate(divide="ignore", invalid="ignore"):
            q = (a1 - a0) / (t1 - t0)
            out = np.log(q) + self.log_value(u) - u
            lin = ~np.isfinite(a0) & np.isfinite(a1)
            # slope of the linear segment: A1 / (t1 - t0)
            out[lin] = a1[lin] - t1[lin] - np.log(-np.expm1(t0[lin] - t1[lin]))
            out[lin & (u <= t0)] = -np.inf
        return out

    def local_index(self, u):
        return np.exp(self.log_density(u) + np.asarray(u) - self.log_value(u))

    def to_dict(self):
        enc = [None if not np.isfinite(v) else float(v) for v in self._la]
        return {"form": "tabulated", "log_t": [float(v) for v in self._lt], "log_A": enc}


@dataclass(frozen=True)
class Affine:
    """``c0 + c1 t``; only meaningful where positive (a tangent bridge between pieces)."""

    c0: float
    c1: float

    def __post_init__(self):
        if not self.c1 > 0:
            raise ValueError("affine pieces need a positive slope")

    def scaled(self, factor):
        return Affine(self.c0 * factor, self.c1 * factor)

    def log_value(self, u):
        u = np.asarray(u, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            out = math.log(self.c1) + u + np.log1p(self.c0 / self.c1 * np.exp(-u))
        return np.where(np.isnan(out), -np.inf, out)

    def log_density(self, u):
        return np.full(np.shape(u), math.log(self.c1))

    def local_index(self, u):
        return np.exp(self.log_density(u) + np.asarray(u) - self.log_value(u))

    def to_dict(self):
        return {"form": "affine", "c0": self.c0, "c1": self.c1}


@dataclass(frozen=True)
class Legendre:
    """Young conjugate of ``primal`` evaluated on demand.

    For ``y > 0`` the maximiser ``tau = a^{-1}(y)`` is located by bisection on
    the primal density, and ``A~(y) = y tau - A(tau)`` is formed in log space as
    ``A(tau) * expm1(log(y tau / A(tau)))``.
    """

    primal: "YoungFunction"

    def scaled(self, factor):
        raise ValueError("conjugate pieces cannot be rescaled")

    def _argmax(self, u):
        """log tau with tau = a^{-1}(e^u); -inf for tau = 0, +inf if none."""
        u = np.asarray(u, dtype=float)
        A = self.primal
        lo = np.full(u.shape, -_U_BISECT)
        top = _U_BISECT
        if A.inf_threshold is not None:
            top = min(top, math.log(A.inf_threshold))
        hi = np.full(u.shape, top)
        at_zero = A._log_density(lo) >= u
        at_top = A._log_density(hi) < u
        for _ in range(_BISECT_ITERS):
            mid = 0.5 * (lo + hi)
            ok = A._log_density(mid) >= u
            hi = np.where(ok, mid, hi)
            lo = np.where(ok, lo, mid)
        out = hi.copy()
        out[at_zero] = -np.inf
        if A.inf_threshold is None:
            out[at_top] = np.inf
        else:
            out[at_top] = top
        return out

    def log_density(self, u):
        return self._argmax(u)

    def log_value(self, u):
        u = np.asarray(u, dtype=float)
        v = self._argmax(u)
        out = np.full(u.shape, -np.inf)
        out[v == np.inf] = np.inf
        mid = np.isfinite(v)
        if mid.any():
            la = self.primal._log_eval(v[mid])
            with np.errstate(invalid="ignore"):
                r = u[mid] + v[mid] - la
                val = la + np.log(np.expm1(r))
            zero = ~np.isfinite(la)
            val[zero] = u[mid][zero] + v[mid][zero]
            out[mid] = val
        return out

    def local_index(self, u):
        return np.exp(self.log_density(u) + np.asarray(u) - self.log_value(u))

    def to_dict(self):
        return {"form": "conjugate", "of": self.primal.to_dict()}


Piece = PowerLog | Tabulated | Affine | Legendre


# ---------------------------------------------------------------------------
# Young functions


@dataclass(frozen=True)
class YoungFunction:
    """Piecewise Young function; build with :meth:`from_pieces`."""

    pieces: tuple
    inf_threshold: float | None = None
    _starts: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.pieces or self.pieces[0][0] != 0:
            raise ValueError("first piece must start at 0")
        starts = np.array([s for s, _ in self.pieces], dtype=float)
        if np.any(np.diff(starts) <= 0):
            raise ValueError("piece breakpoints must be strictly increasing")
        if self.inf_threshold is not None and not self.inf_threshold > 0:
            raise ValueError("infinity threshold must be positive")
        with np.errstate(divide="ignore"):
            object.__setattr__(self, "_starts", np.log(starts))

    @classmethod
    def from_pieces(cls, pieces, inf_threshold=None):
        """Join pieces, rescaling each right piece so that A is continuous."""
        fixed = [(0.0, pieces[0][1])]
        for start, piece in pieces[1:]:
            left = cls(tuple(fixed))
            lv = float(left._log_eval(np.array([math.log(start)]))[0])
            if not isinstance(piece, Legendre):
                rv = float(piece.log_value(np.array([math.log(start)]))[0])
                if np.isfinite(lv) and np.isfinite(rv) and abs(lv - rv) > 1e-12 * (1 + abs(lv)):
                    piece = piece.scaled(math.exp(lv - rv))
            fixed.append((float(start), piece))
        return cls(tuple(fixed), inf_threshold)

    # -- evaluation in log coordinates (internal, vectorised, no checks) --

    def _piece_index(self, u):
        return np.clip(np.searchsorted(self._starts, u, side="left") - 1, 0, len(self.pieces) - 1)

    def _dispatch(self, u, method):
        u = np.asarray(u, dtype=float)
        out = np.empty(u.shape)
        idx = self._piece_index(u)
        for j, (_, piece) in enumerate(self.pieces):
            sel = idx == j
            if sel.any():
                out[sel] = getattr(piece, method)(u[sel])
        return out

    def _log_eval(self, u):
        u = np.asarray(u, dtype=float)
        out = self._dispatch(u, "log_value")
        if self.inf_threshold is not None:
            out[u > math.log(self.inf_threshold)] = np.inf
        return out

    def _log_density(self, u):
        u = np.asarray(u, dtype=float)
        out = self._dispatch(u, "log_density")
        if self.inf_threshold is not None:
            out[u > math.log(self.inf_threshold)] = np.inf
        return out

    def local_index(self, u):
        """t a(t) / A(t) at ``t = e^u``."""
        return self._dispatch(u, "local_index")

    def log_ratio(self, u, a, b):
        """``log(t^a / A(t)^b)`` at ``t = e^u`` for ``b > 0``, free of cancellation on power pieces."""
        u = np.asarray(u, dtype=float)
        out = np.empty(u.shape)
        idx = self._piece_index(u)
        for j, (_, piece) in enumerate(self.pieces):
            sel = idx == j
            if not sel.any():
                continue
            if isinstance(piece, PowerLog):
                out[sel] = piece.log_ratio(u[sel], a, b)
            else:
                with np.errstate(invalid="ignore"):
                    out[sel] = a * u[sel] - b * piece.log_value(u[sel])
        if self.inf_threshold is not None:
            out[u > math.log(self.inf_threshold)] = -np.inf
        return out

    def log_eval(self, u):
        """log A(e^u); accepts scalars or arrays."""
        return _scalarize(self._log_eval(np.atleast_1d(u)), u)

    # -- public API in natural coordinates --

    def __call__(self, t):
        return eval_young(self, t)

    def density(self, t):
        return density(self, t)

    @property
    def is_finite(self):
        return self.inf_threshold is None

    def check_convexity(self, samples=100, lo=-12.0, hi=12.0, rtol=1e-9):
        """Sampled midpoint-convexity check; returns the offending triples."""
        if self.inf_threshold is not None:
            hi = min(hi, math.log10(self.inf_threshold))
        rng = np.random.default_rng(12345)
        a = 10 ** rng.uniform(lo, hi, samples)
        b = 10 ** rng.uniform(lo, hi, samples)
        # half of the pairs are close together, to catch local kinks
        near = np.arange(samples) % 2 == 0
        b[near] = a[near] * (1 + 10 ** rng.uniform(-4, -1, near.sum()))
        if self.inf_threshold is not None:
            b = np.minimum(b, self.inf_threshold)
        m = 0.5 * (a + b)
        fa, fb, fm = self(a), self(b), self(m)
        bad = fm > 0.5 * (fa + fb) * (1 + rtol) + 1e-300
        return [(float(x), float(y)) for x, y in zip(a[bad], b[bad])]

    def to_dict(self):
        pieces = []
        for start, piece in self.pieces:
            d = {"from": start}
            d.update(piece.to_dict())
            pieces.append(d)
        return {"pieces": pieces, "inf_threshold": self.inf_threshold}

    @classmethod
    def from_dict(cls, doc):
        pieces = []
        for d in doc["pieces"]:
            form = d.get("form", "powerlog")
            if form == "powerlog":
                piece = PowerLog(float(d.get("k", 1.0)), float(d["p"]), float(d.get("alpha", 0.0)), d.get("log", "zero"))
            elif form == "tabulated":
                la = [-np.inf if v is None else float(v) for v in d["log_A"]]
                piece = Tabulated.from_arrays(d["log_t"], la)
            elif form == "affine":
                piece = Affine(float(d["c0"]), float(d["c1"]))
            elif form == "conjugate":
                piece = Legendre(cls.from_dict(d["of"]))
            else:
                raise ValueError(f"unknown piece form {form!r}")
            pieces.append((float(d["from"]), piece))
        thr = doc.get("inf_threshold")
        return cls.from_pieces(pieces, None if thr is None else float(thr))


def _scalarize(arr, like):
    if np.ndim(like) == 0:
        return float(arr[0])
    return arr


def eval_young(A: YoungFunction, t):
    """A(t), with ``+inf`` beyond the threshold."""
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(tt < 0) or np.any(np.isnan(tt)):
        raise ValueError("Young functions are defined on [0, inf)")
    out = np.zeros(tt.shape)
    pos = tt > 0
    with np.errstate(over="ignore"):
        out[pos] = np.exp(A._log_eval(np.log(tt[pos])))
    return _scalarize(out, t)


def density(A: YoungFunction, t):
    """Left-continuous density a with A(t) = int_0^t a."""
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(tt <= 0):
        raise ValueError("density is evaluated at t > 0")
    if A.inf_threshold is not None and np.any(tt > A.inf_threshold):
        raise ValueError("t lies beyond the infinity threshold")
    with np.errstate(over="ignore"):
        out = np.exp(A._log_density(np.log(tt)))
    return _scalarize(out, t)


def power(p, k=1.0):
    return YoungFunction(((0.0, PowerLog(k, p)),))


def powerlog(p, alpha=0.0, log="zero", k=1.0):
    return YoungFunction(((0.0, PowerLog(k, p, alpha, log)),))


def spliced(p0, alpha0, p, alpha, at=1.0):
    """``t^p0 log(1/t)^alpha0`` near zero joined at ``at`` to ``t^p log(t)^alpha``.

    When the right piece would grow more slowly than the left one at the
    junction, the two are joined by the tangent line, which keeps the result
    convex and changes nothing up to equivalence.
    """
    left = PowerLog(1.0, p0, alpha0, "zero")
    right = PowerLog(1.0, p, alpha, "inf")
    ua = math.log(at)
    i0 = float(left.local_index(np.array([ua]))[0])
    if float(right.local_index(np.array([ua]))[0]) >= i0:
        return YoungFunction.from_pieces([(0.0, left), (at, right)])
    if p <= 1:
        raise ValueError("cannot bridge to a piece of linear growth")
    A1 = math.exp(float(left.log_value(np.array([ua]))[0]))
    a1 = A1 * i0 / at
    line = Affine(A1 - a1 * at, a1)
    # the tangent point T solves  index_right(T) = a1 T / line(T)
    def gap(v):
        T = math.exp(v)
        return float(right.local_index(np.array([v]))[0]) - a1 * T / (line.c0 + a1 * T)

    lo, hi = ua, ua + 1.0
    while gap(hi) < 0:
        lo, hi = hi, hi + 2 * (hi - ua)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if gap(mid) < 0:
            lo = mid
        else:
            hi = mid
    T = math.exp(hi)
    return YoungFunction.from_pieces([(0.0, left), (at, line), (T, right)])


def tabulate(A: YoungFunction, u=None) -> YoungFunction:
    """Log-log table of ``A`` on a grid of ``log t`` (vectorised, evaluated once)."""
    if u is None:
        # dense where values are representable, geometric out to |log t| = 1e4
        far = np.geomspace(700.0, 1e4, 201)[1:]
        u = np.concatenate([-far[::-1], np.linspace(-700.0, 700.0, 14001), far])
    la = A._log_eval(u)
    thr = A.inf_threshold
    if np.any(la == np.inf):
        cut = int(np.argmax(la == np.inf))
        thr = float(np.exp(min(u[cut - 1], 700.0))) if thr is None else thr
        u, la = u[:cut], la[:cut]
    return YoungFunction(((0.0, Tabulated.from_arrays(u, la)),), inf_threshold=thr)


def linf(threshold=1.0):
    """Zero on [0, threshold] and +inf beyond: the Young function of L^inf."""
    return YoungFunction(((0.0, PowerLog(0.0, 1.0)),), inf_threshold=threshold)


# ---------------------------------------------------------------------------
# monotone maps and generalized inverses


@dataclass(frozen=True)
class MonotoneMap:
    """A non-decreasing map on [0, inf).

    Either an evaluator, or log-log knots (``log t`` increasing, ``log f``
    non-decreasing) that are interpolated linearly; tabulated maps are
    treated as constant beyond their last knot.
    """

    evaluator: Callable | None = None
    log_t: np.ndarray | None = None
    log_f: np.ndarray | None = None

    def __post_init__(self):
        if self.evaluator is None and self.log_t is None:
            raise ValueError("need an evaluator or knots")

    @classmethod
    def from_knots(cls, log_t, log_f):
        return cls(None, np.asarray(log_t, float), np.asarray(log_f, float))

    @property
    def sup(self):
        if self.log_f is not None:
            return float(np.exp(self.log_f[-1]))
        return float(self.evaluator(np.array([1e300]))[0])

    def __call__(self, t):
        tt = np.atleast_1d(np.asarray(t, dtype=float))
        if self.log_t is None:
            return _scalarize(np.asarray(self.evaluator(tt), dtype=float), t)
        out = np.zeros(tt.shape)
        pos = tt > 0
        u = np.log(tt[pos])
        lt, lf = self.log_t, self.log_f
        q0 = (lf[1] - lf[0]) / (lt[1] - lt[0])
        val = np.interp(u, lt, lf)
        below = u < lt[0]
        val[below] = lf[0] + q0 * (u[below] - lt[0])
        out[pos] = np.exp(val)
        return _scalarize(out, t)


def generalized_inverse(f: MonotoneMap, y, t_max=1e300):
    """inf{t >= 0 : f(t) >= y}, with inf(empty) = +inf."""
    yy = np.atleast_1d(np.asarray(y, dtype=float))
    if f.log_t is not None:
        out = _knot_inverse(f, yy)
    else:
        out = _bisect_inverse(f, yy, t_max)
    return _scalarize(out, y)


def _knot_inverse(f, yy):
    lt, lf = f.log_t, f.log_f
    out = np.full(yy.shape, np.inf)
    out[yy <= 0] = 0.0
    pos = yy > 0
    ly = np.log(yy[pos])
    j = np.searchsorted(lf, ly, side="left")
    res = np.full(ly.shape, np.inf)
    first = j == 0
    q0 = (lf[1] - lf[0]) / (lt[1] - lt[0])
    res[first] = np.exp(lt[0] + (ly[first] - lf[0]) / q0) if q0 > 0 else np.exp(lt[0])
    mid = (j > 0) & (j < lf.size)
    jm = j[mid]
    f0, f1 = lf[jm - 1], lf[jm]
    t0, t1 = lt[jm - 1], lt[jm]
    with np.errstate(invalid="ignore", divide="ignore"):
        w = np.where(f1 > f0, (ly[mid] - f0) / (f1 - f0), 1.0)
    res[mid] = np.exp(t0 + w * (t1 - t0))
    out[pos] = res
    return out


def _bisect_inverse(f, yy, t_max):
    out = np.full(yy.shape, np.inf)
    f0 = np.asarray(f.evaluator(np.zeros(1)), dtype=float)[0]
    at_zero = yy <= f0
    out[at_zero] = 0.0
    rest = ~at_zero
    if not rest.any():
        return out
    y = yy[rest]
    reachable = np.asarray(f.evaluator(np.full(y.shape, t_max)), dtype=float) >= y
    lo = np.full(y.shape, -745.0)
    hi = np.full(y.shape, math.log(t_max))
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        ok = np.asarray(f.evaluator(np.exp(mid)), dtype=float) >= y
        hi = np.where(ok, mid, hi)
        lo = np.where(ok, lo, mid)
    out[rest] = np.where(reachable, np.exp(hi), np.inf)
    return out


# ---------------------------------------------------------------------------
# conjugation


def _single_power(A):
    if len(A.pieces) != 1:
        return None
    piece = A.pieces[0][1]
    if isinstance(piece, PowerLog) and piece.alpha == 0:
        return piece
    return None


def conjugate(A: YoungFunction) -> YoungFunction:
    """Young conjugate ``sup_tau (tau t - A(tau))``.

    Pure powers are conjugated in closed form; everything else gets a
    :class:`Legendre` piece that inverts the density on demand.
    """
    piece = _single_power(A)
    if piece is not None:
        if piece.k == 0:
            if A.inf_threshold is None:
                raise ValueError("the zero function is not a Young function")
            return power(1.0, k=A.inf_threshold)
        if A.inf_threshold is None:
            k, p = piece.k, piece.p
            if p == 1:
                return linf(k)
            q = p / (p - 1)
            c = (p - 1) * k ** (-1 / (p - 1)) * p ** (-q)
            return power(q, k=c)
    return YoungFunction(((0.0, Legendre(A)),), inf_threshold=_density_sup(A))


def _density_sup(A):
    """sup of the density, or None if unbounded (or A has a threshold)."""
    if A.inf_threshold is not None:
        return None
    last = A.pieces[-1][1]
    if isinstance(last, PowerLog) and last.p == 1 and last.alpha == 0:
        return last.k if last.k > 0 else None
    if isinstance(last, Tabulated):
        la = last._la
        lt = last._lt
        q = (la[-1] - la[-2]) / (lt[-1] - lt[-2])
        if abs(q - 1) < 1e-12:
            return float(np.exp(last.log_density(np.array([lt[-1] + 1.0]))[0]))
    return None


# ---------------------------------------------------------------------------
# index and domination


def matuszewska_index_zero(A: YoungFunction, log_t_range=(-1e6, -1e3), n_t=400, lambdas=None):
    """Least-squares estimate of the Matuszewska-Orlicz index at zero.

    The inner ``limsup`` is replaced by the maximum of ``A(lam t) / A(t)``
    over ``log t`` in ``log_t_range`` (far enough out that slowly varying
    factors have settled); the outer limit by the slope of ``log ratio``
    against ``log lam``.  Exact for regularly varying ``A``.
    """
    if lambdas is None:
        lambdas = 2.0 ** np.arange(1, 11)
    lo, hi = log_t_range
    u = -np.geomspace(-lo, -hi, n_t)
    base = A._log_eval(u)
    if not np.all(np.isfinite(base)):
        raise ValueError("index formula needs A > 0 near zero")
    lam = np.asarray(lambdas, dtype=float)
    logs = np.array([np.max(A._log_eval(u + math.log(l)) - base) for l in lam])
    slope, _ = np.polyfit(np.log(lam), logs, 1)
    return float(slope)


class Domination(NamedTuple):
    holds: bool
    constant: float


_RANGES = {
    "zero": [(-10.0, -2.0)],
    "infinity": [(2.0, 10.0)],
    "global": [(-10.0, -2.0), (-2.0, 2.0), (2.0, 10.0)],
}


def _dominating_exponent(A, B, u):
    lb = B._log_eval(u)
    for e in range(-20, 21):
        la = A._log_eval(u + e * math.log(2))
        with np.errstate(invalid="ignore"):
            ok = (lb <= la + 1e-12 * np.abs(la)) | (lb == -np.inf)
        if np.all(ok):
            return e
    return None


def dominates(A: YoungFunction, B: YoungFunction, region="global", t_range=None, samples=200):
    """Smallest dyadic ``c`` in [2^-20, 2^20] with ``B(t) <= A(c t)`` on the range.

    ``region`` is one of ``zero``, ``infinity``, ``global``; ``t_range`` (a pair
    of log10 bounds) overrides it.
    """
    spans = [t_range] if t_range is not None else _RANGES[region]
    u = np.concatenate([np.linspace(a, b, samples) * math.log(10) for a, b in spans])
    e = _dominating_exponent(A, B, u)
    return Domination(False, math.nan) if e is None else Domination(True, 2.0 ** e)


def dominance_profile(A: YoungFunction, B: YoungFunction, depths=None, top=-2.0, samples=200):
    """Dominating exponents ``log2 c`` on ``log t`` in ``[-10^k, top ln 10]``, one per depth ``k``.

    ``None`` marks a depth where no ``c`` in [2^-20, 2^20] works.  Near-zero
    domination in the sense of Young functions means the exponents stay bounded.
    """
    if depths is None:
        depths = range(2, 13)
    out = []
    for k in depths:
        u = -np.geomspace(10.0 ** k, -top * math.log(10), samples)
        out.append(_dominating_exponent(A, B, u))
    return out


def equivalent(A: YoungFunction, B: YoungFunction, region="zero", t_range=None, drift=2):
    """Two-sided domination.  Near zero (with no explicit range) the dominating
    constants must also stay within ``2^drift`` of each other all the way to
    ``t = exp(-1e12)``, which separates genuine equivalence from a slowly
    diverging log factor."""
    if region == "zero" and t_range is None:
        for X, Y in ((A, B), (B, A)):
            prof = dominance_profile(X, Y)
            if any(e is None for e in prof) or max(prof) - min(prof) > drift:
                return False
        return True
    return dominates(A, B, region, t_range).holds and dominates(B, A, region, t_range).holds
