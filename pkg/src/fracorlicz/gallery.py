"""Fixed test material: power-log Young functions with known regimes, the
exponent grid used for the regime table, and compactly supported bumps."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .functions import SampledFunction
from .regime import RegimeTag, example_rule
from .young import SpaceParams, YoungFunction, spliced

__all__ = [
    "GalleryEntry",
    "young_gallery",
    "regime_grid",
    "BUMPS",
    "bump",
    "xi",
    "DEFAULT_PARAMS",
]

DEFAULT_PARAMS = SpaceParams(1, 0.5)


@dataclass(frozen=True)
class GalleryEntry:
    name: str
    exponents: tuple  # (p0, alpha0, p_inf, alpha_inf)
    A: YoungFunction
    regime: RegimeTag


_GALLERY = [
    ("pow1.5", (1.5, 0, 1.5, 0)),
    ("log-1_to_pow2", (1.5, -1, 2, 0)),
    ("pow1.2_to_1.5", (1.2, 0, 1.5, 0)),
    ("pow1.8_to_2log1", (1.8, 0, 2, 1)),
    ("pow1.5_to_3", (1.5, 0, 3, 0)),
    ("critical_log2", (2, 2, 2, 2)),
    ("log1_to_pow3", (1.5, 1, 3, 0)),
    ("linear_to_3", (1, 0, 3, 0)),
    ("linlog_to_2log2", (1, -0.5, 2, 2)),
    ("pow3", (3, 0, 3, 0)),
    ("critical_log1", (2, 1, 4, 0)),
    ("pow2log0.5", (2, 0.5, 2, 0.5)),
]

# near zero: (p0, alpha0); near infinity: (p, alpha)
_GRID_ZERO = [(1, -0.5), (1.5, -1), (2, 2), (2, 1), (2, 0.5), (3, 0)]
_GRID_INF = [(1.5, 0), (1.5, 2), (2, 0), (2, 0.5), (2, 1), (2, 1.5), (2, 3), (2.5, -1), (3, 0), (4, 2)]


def young_gallery(p: SpaceParams = DEFAULT_PARAMS):
    return [GalleryEntry(name, ex, spliced(*ex), example_rule(p, *ex)) for name, ex in _GALLERY]


def regime_grid(p: SpaceParams = DEFAULT_PARAMS):
    """All 60 combinations of the near-zero and near-infinity exponent pairs."""
    return [GalleryEntry(f"g{i:02d}", z + w, spliced(*z, *w), example_rule(p, *z, *w))
            for i, (z, w) in enumerate((z, w) for z in _GRID_ZERO for w in _GRID_INF)]


# ---------------------------------------------------------------------------
# bumps


def _tent(x):
    return np.clip(1 - np.abs(x), 0, None)


def _smooth(x):
    out = np.zeros_like(x)
    m = np.abs(x) < 1
    out[m] = np.exp(-1 / (1 - x[m] ** 2))
    return out


def _gauss(x):
    return np.where(np.abs(x) <= 6, np.exp(-x ** 2 / 2), 0.0)


def _indicator(x):
    return (np.abs(x) < 1).astype(float)


def _psi(t):
    out = np.zeros_like(t)
    m = t > 0
    out[m] = np.exp(-1 / t[m])
    return out


def xi(x):
    """Smooth, equal to 1 on [-1, 1] and 0 outside (-2, 2)."""
    a = np.abs(np.asarray(x, dtype=float))
    return _psi(2 - a) / (_psi(2 - a) + _psi(a - 1))


# profile and half-width of the sampling window
BUMPS = {
    "tent": (_tent, 1.5),
    "smooth": (_smooth, 1.5),
    "gaussian": (_gauss, 7.0),
    "indicator": (_indicator, 2.0),
    "xi": (xi, 3.0),
}


def bump(name, N=1.0, amplitude=1.0, resolution=2001) -> SampledFunction:
    """``amplitude * u(x / N)`` on a uniform grid scaled with ``N``.

    The indicator uses cell-centred nodes so the jumps fall on cell edges.
    """
    f, half = BUMPS[name]
    if name == "indicator":
        m = resolution // 2
        h = half / m
        x = (np.arange(-m, m) + 0.5) * h
    else:
        x = np.linspace(-half, half, resolution)
    return SampledFunction(N * x, amplitude * f(x))
