"""Lebesgue, weak-type, and Lorentz norms of zonal grid functions.

All norms are taken against the grid's quadrature measure, so the exact
discrete identities hold: an indicator of node set E has
weak-L^q norm mu(E)^{1/q} and L^{p,1} norm mu(E)^{1/p} with mu the grid
measure of E.
"""

import numpy as np


def lp_norm(f, p):
    """L^p norm against the grid measure; p may be inf."""
    if p < 1:
        raise ValueError(f"exponent must be >= 1, got {p}")
    absval = np.abs(f.values)
    if np.isinf(p):
        return float(absval.max())
    return float(np.sum(f.grid.weights * absval ** p) ** (1.0 / p))


def weak_lq(f, q):
    """Weak-L^q norm sup_t t mu(|f| > t)^{1/q}.

    mu is a right-continuous step function of t, so the sup is attained just
    below an achieved node value v, where mu(|f| > t) = mu(|f| >= v); only the
    achieved values need to be scanned.
    """
    if q < 1:
        raise ValueError(f"exponent must be >= 1, got {q}")
    absval = np.abs(f.values)
    order = np.argsort(absval)[::-1]
    v = absval[order]
    cumw = np.cumsum(f.grid.weights[order])
    # last index of each run of equal values gives mu(|f| >= v)
    last = np.nonzero(np.diff(v, append=-1.0))[0]
    best = np.max(v[last] * cumw[last] ** (1.0 / q))
    return float(best)


def lorentz_p1(f, p):
    """Lorentz L^{p,1} norm via the layer-cake integral int mu(|f|>t)^{1/p} dt.

    Piecewise exact: mu(|f|>t) is constant between consecutive achieved values.
    """
    if p < 1:
        raise ValueError(f"exponent must be >= 1, got {p}")
    absval = np.abs(f.values)
    order = np.argsort(absval)[::-1]
    v = absval[order]
    cumw = np.cumsum(f.grid.weights[order])
    last = np.nonzero(np.diff(v, append=-1.0))[0]
    levels = v[last]                    # descending distinct values
    mass = cumw[last]                   # mu(|f| >= level)
    below = np.append(levels[1:], 0.0)  # next level down
    # on (below_i, level_i], mu(|f| > t) = mass of strictly larger values... the
    # strict superlevel measure on that open interval is mass up to and
    # including level_i
    return float(np.sum((levels - below) * mass ** (1.0 / p)))
