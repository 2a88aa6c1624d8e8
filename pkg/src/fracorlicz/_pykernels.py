"""Pure-numpy versions of the compiled kernels."""

import numpy as np


def pair_moments(values, h, sigma, log_lo, inv_width, nbins):
    """Bin all ordered pairs of a uniform grid by ``log(|u_i - u_j| / |x_i - x_j|^sigma)``.

    Returns ``(weight, first)``: per bin, the total of ``h^2 / |x_i - x_j|`` and
    the same weights times the log ratio.  Pairs with equal values are skipped.
    """
    v = np.ascontiguousarray(values, dtype=float)
    n = v.size
    weight = np.zeros(nbins)
    first = np.zeros(nbins)
    for k in range(1, n):
        du = np.abs(v[k:] - v[:-k])
        du = du[du > 0]
        if du.size == 0:
            continue
        d = k * h
        lq = np.log(du) - sigma * np.log(d)
        b = np.clip(((lq - log_lo) * inv_width).astype(np.int64), 0, nbins - 1)
        w = 2.0 * h * h / d
        weight += w * np.bincount(b, minlength=nbins)
        first += w * np.bincount(b, weights=lq, minlength=nbins)
    return weight, first
