"""Optimal targets built from a Young function: the Orlicz target and the
rearrangement-invariant building block, plus the truncation and weight that
turn the latter into a norm.

Every construction is tabulated once on the shared log grid of
:mod:`fracorlicz._logquad`; the resulting Young functions are log-log tables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np

from . import _logquad
from .regime import check_indisp, check_tail, classify_growth, RegimeTag
from .young import (
    MonotoneMap,
    SpaceParams,
    Tabulated,
    YoungFunction,
)

__all__ = [
    "PreconditionError",
    "TargetBundle",
    "TargetTables",
    "sobolev_companion_H",
    "orlicz_target",
    "hat_density_inverse",
    "orlicz_lorentz_target",
    "truncate_to_EA",
    "weight_phi",
    "build_targets",
]


class PreconditionError(ValueError):
    pass


def _strict(log_x, *cols):
    """Keep the knots where ``log_x`` strictly increases (and is finite)."""
    keep = np.isfinite(log_x)
    lx = log_x[keep]
    cols = [c[keep] for c in cols]
    run = np.maximum.accumulate(lx)
    first = np.concatenate([[True], lx[1:] > run[:-1]])
    return (lx[first],) + tuple(c[first] for c in cols)


class TargetTables:
    """Shared log-grid tables for one ``(A, n, s)``."""

    def __init__(self, A: YoungFunction, p: SpaceParams, grid=None):
        if not p.admissible_order:
            raise PreconditionError("need 0 < s < n with s not an integer")
        self.A, self.p = A, p
        self.sigma = p.s / (p.n - p.s)
        u_max = None if A.inf_threshold is None else math.log(A.inf_threshold)
        self.u = _logquad.log_grid(u_max=u_max) if grid is None else np.asarray(grid, float)

    @cached_property
    def indisp(self):
        rep = check_indisp(self.A, self.p)
        if not rep.converges:
            raise PreconditionError("the integral of (t/A)^{s/(n-s)} diverges at 0")
        return rep

    # -- H --------------------------------------------------------------

    @cached_property
    def log_H(self):
        self.indisp
        sig = self.sigma
        f = self.A.log_ratio(self.u, 1 + sig, sig)
        c = _logquad.cumulative_from_zero(self.u, f)
        return (1 - self.p.s / self.p.n) * c

    @cached_property
    def sup_H(self):
        if not check_tail(self.A, self.p).converges:
            return math.inf
        reg = classify_growth(self.A, self.p)
        return float((reg.indisp_value + reg.tail_value) ** (1 - self.p.s / self.p.n))

    # -- the building block of the rearrangement-invariant target ---------

    @cached_property
    def _log_li(self):
        with np.errstate(divide="ignore"):
            return np.log(self.A.local_index(self.u))

    @cached_property
    def log_a(self):
        return self.A._log_density(self.u)

    @cached_property
    def _g_inner(self):
        # log of a^{-sigma} t, the integrand of G in u
        sig = self.sigma
        return self.A.log_ratio(self.u, 1 + sig, sig) - sig * self._log_li

    @cached_property
    def log_G(self):
        self.indisp
        return _logquad.cumulative_from_zero(self.u, self._g_inner)

    @cached_property
    def log_K(self):
        n, s = self.p.n, self.p.s
        r = n / (n - s)
        f = self.A.log_ratio(self.u, 1 + r, r) - r * self._log_li - (n / s) * self.log_G
        return _logquad.cumulative_to_infinity(self.u, f)

    @cached_property
    def log_hat_cumulative(self):
        """log of the integral of ``hat a`` up to ``hat a^{-1}(a(tau_i))``."""
        sig = self.sigma
        n, s = self.p.n, self.p.s
        f = math.log(sig) + self._g_inner - (sig + 1) * self.log_K - (n / s) * self.log_G
        return _logquad.cumulative_from_zero(self.u, f)


# ---------------------------------------------------------------------------
# operations


def sobolev_companion_H(A: YoungFunction, p: SpaceParams, tables=None) -> MonotoneMap:
    tab = tables or TargetTables(A, p)
    ok = np.isfinite(tab.log_H)
    return MonotoneMap.from_knots(tab.u[ok], tab.log_H[ok])


def orlicz_target(A: YoungFunction, p: SpaceParams, tables=None) -> YoungFunction:
    """``A(H^{-1}(t))``, infinite beyond ``sup H`` when that is finite."""
    tab = tables or TargetTables(A, p)
    lh, u = _strict(tab.log_H, tab.u)
    la = tab.A._log_eval(u)
    fin = np.isfinite(la) | (la == -np.inf)
    lh, la = lh[fin], la[fin]
    sup = tab.sup_H
    thr = sup if math.isfinite(sup) else None
    if thr is not None:
        keep = lh < math.log(thr)
        lh, la = lh[keep], la[keep]
    return YoungFunction(((0.0, Tabulated.from_arrays(lh, la)),), inf_threshold=thr)


def _hat_knots(tab: TargetTables):
    """Knots ``(log x, log hat a(x), log hat A(x))``."""
    if tab.A.inf_threshold is not None:
        raise PreconditionError("the building block needs a finite-valued A")
    tab.indisp
    lx = -tab.sigma * tab.log_K
    lx, la, lA = _strict(lx, tab.log_a, tab.log_hat_cumulative)
    ok = np.isfinite(la) & np.isfinite(lA)
    return lx[ok], la[ok], lA[ok]


def hat_density_inverse(A: YoungFunction, p: SpaceParams, t, tables=None):
    """``hat a^{-1}(t)``; vectorised in ``t``."""
    tab = tables or TargetTables(A, p)
    lx, la, _ = _hat_knots(tab)
    # hat a^{-1} = inverse of the increasing map x -> hat a(x)
    la_s, lx_s = _strict(la, lx)
    inv = MonotoneMap.from_knots(la_s, lx_s)
    return inv(t)


def orlicz_lorentz_target(A: YoungFunction, p: SpaceParams, tables=None) -> YoungFunction:
    tab = tables or TargetTables(A, p)
    lx, _, lA = _hat_knots(tab)
    return YoungFunction(((0.0, Tabulated.from_arrays(lx, lA)),))


def weight_phi(p: SpaceParams) -> Callable:
    e = p.s / p.n

    def phi(r):
        r = np.asarray(r, dtype=float)
        with np.errstate(divide="ignore"):
            out = np.minimum(1.0, np.where(r > 0, r, 0.0) ** -e)
        return out if out.ndim else float(out)

    return phi


def truncate_to_EA(A_hat: YoungFunction, p: SpaceParams):
    """Equal to ``A_hat`` on [0, 1] and infinite beyond; returns ``(E_A, phi)``."""
    return YoungFunction(A_hat.pieces, inf_threshold=1.0), weight_phi(p)


@dataclass(frozen=True)
class TargetBundle:
    H: MonotoneMap
    A_ns: YoungFunction
    A_hat: YoungFunction | None
    E_A: YoungFunction | None
    phi: Callable
    regime: RegimeTag


def build_targets(A: YoungFunction, p: SpaceParams, with_hat=True) -> TargetBundle:
    tab = TargetTables(A, p)
    H = sobolev_companion_H(A, p, tab)
    A_ns = orlicz_target(A, p, tab)
    A_hat = E_A = None
    if with_hat and A.inf_threshold is None:
        A_hat = orlicz_lorentz_target(A, p, tab)
        E_A, _ = truncate_to_EA(A_hat, p)
    return TargetBundle(H, A_ns, A_hat, E_A, weight_phi(p), classify_growth(A, p).tag)
