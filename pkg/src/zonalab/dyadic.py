"""Dyadic decomposition of projector kernels and piece-norm scaling.

The degree-k kernel Z_k is cut into angular annuli theta ~ 2^j / lambda_k.
The cutting profile is the half-open dyadic indicator 1_{(1/2, 1]}: its
dilates tile (0, inf) exactly, so the pieces reconstruct the kernel to the
bit and each piece j >= 1 is supported exactly on
(2^{j-1}/lambda_k, 2^j/lambda_k].  (A smooth profile supported inside one
dyadic block cannot sum to 1 over dilates; the indicator is the profile that
satisfies the support and partition requirements simultaneously.)  The flat
piece j = 0 keeps everything at theta <= 1/lambda_k.

Piece operators integrate the azimuthal average only over the annulus, so the
indicator never enters a quadrature panel interior.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError
from .exponents import stein_point
from .operators import norm_lower, operator_from_profile
from .specfun import eigenvalue, zonal_table


def dyadic_bump(t):
    """Dyadic cutting profile: indicator of (1/2, 1].  Sums to one over
    dilates t -> 2^-j t for every t > 0."""
    t = np.asarray(t, dtype=np.float64)
    return ((t > 0.5) & (t <= 1.0)).astype(np.float64)


def piece_count(n, k):
    """Top dyadic index J = ceil(log2(pi lambda_k)) + 1; pieces run 0..J."""
    lam = eigenvalue(n, k)
    return math.ceil(math.log2(math.pi * lam)) + 1


@dataclass(frozen=True, eq=False)
class DyadicPiece:
    """One annular piece T_j of a projector kernel."""

    base: int                 # degree k of the parent kernel
    j: int
    support: tuple            # (lo, hi]; the piece vanishes outside
    values: np.ndarray        # node values on the grid it was built for
    grid: object
    clipped: bool             # annulus truncated by theta = pi

    def profile(self, gamma, cos_gamma):
        lo, hi = self.support
        tab = zonal_table(self.grid.sphere.n, self.base, cos_gamma)
        return tab[self.base] * ((gamma > lo) & (gamma <= hi))

    def operator(self, nodes=64):
        lam = eigenvalue(self.grid.sphere.n, self.base)
        return operator_from_profile(
            self.grid, self.profile, support=self.support, nodes=nodes,
            natural_degree=self.base, scale=lam,
            label=f"piece k={self.base} j={self.j}")


def dyadic_decompose(sphere, k, grid):
    """All pieces j = 0..J of the degree-k projector kernel on the grid."""
    if k > grid.kexact:
        raise ValueError(
            f"degree {k} exceeds grid exactness {grid.kexact}")
    lam = eigenvalue(sphere.n, k)
    J = piece_count(sphere.n, k)
    zvals = zonal_table(sphere.n, k, grid.cosines)[k]
    pieces = []
    for j in range(J + 1):
        if j == 0:
            lo, hi = 0.0, 1.0 / lam
        else:
            lo, hi = 2.0 ** (j - 1) / lam, 2.0 ** j / lam
        mask = (grid.nodes > lo) & (grid.nodes <= hi)
        pieces.append(DyadicPiece(
            base=k, j=j, support=(lo, hi), values=zvals * mask,
            grid=grid, clipped=hi > np.pi))
    return pieces


def fit_pieces(pieces):
    """Pieces over which the norm scaling in j is fitted.

    The fit is restricted to the middle dyadic range.  An annulus enters the
    fit only when it is wide enough to contain a full half oscillation of the
    kernel, lam * width = 2^(j-1) >= pi; narrower annuli near the pole sit in
    a pre-asymptotic regime and would bias the slope.  Clipped annuli at the
    far pole are dropped along with the final usable piece.
    """
    min_j = math.ceil(math.log2(math.pi)) + 1
    usable = [p for p in pieces
              if p.j >= min_j and p.support[0] < np.pi and not p.clipped]
    if len(usable) < 2:
        raise NumericalError("not enough dyadic pieces to fit a slope")
    return usable


@dataclass
class PieceNormFit:
    js: np.ndarray
    norms_growth: np.ndarray   # at the size endpoint Q
    norms_decay: np.ndarray    # at the oscillation endpoint P
    slope_growth: float
    slope_decay: float
    intercept_growth: float    # log2 of the fitted prefactor
    intercept_decay: float
    residual_growth: float
    residual_decay: float


def _fit_line(js, lognorms):
    coeff, res = np.polyfit(js, lognorms, 1, full=True)[:2]
    rms = math.sqrt(res[0] / len(js)) if len(res) else 0.0
    return coeff[0], coeff[1], rms


def piece_norm_slopes(sphere, k, sigma, grid, restarts=8, seed=1, nodes=64):
    """Measure ||T_j|| at the two segment anchors and fit log2-slopes in j.

    Needs at least four pieces so that a middle range remains after the
    pre-asymptotic annuli near the pole and the clipped ones at the far
    pole are dropped; in practice this means k of order 16 or larger.
    """
    pieces = dyadic_decompose(sphere, k, grid)
    if len(pieces) < 4:
        raise ValueError(f"degree {k} yields fewer than four dyadic pieces")
    fitted = fit_pieces(pieces)
    p_pt, q_pt = stein_point(sphere.n, sigma)
    js, nq, npp = [], [], []
    for piece in fitted:
        op = piece.operator(nodes=nodes)
        lower_q = norm_lower(op, q_pt.r, q_pt.s, restarts=restarts, seed=seed)
        lower_p = norm_lower(op, p_pt.r, p_pt.s, restarts=restarts, seed=seed)
        js.append(piece.j)
        nq.append(lower_q.value)
        npp.append(lower_p.value)
    js = np.asarray(js, dtype=np.float64)
    nq = np.asarray(nq)
    npp = np.asarray(npp)
    if np.any(nq <= 0) or np.any(npp <= 0):
        raise NumericalError("vanishing piece norm; cannot fit slopes")
    sg, ig, rg = _fit_line(js, np.log2(nq))
    sd, idc, rd = _fit_line(js, np.log2(npp))
    return PieceNormFit(js, nq, npp, sg, sd, ig, idc, rg, rd), pieces


# ---------------------------------------------------------------------------
# kernel envelope constants

@dataclass
class EnvelopeConstants:
    c_flat: float       # sup |Z_k| / k^{n-1} near the pole
    c_osc: float        # sup |Z_k| theta^{(n-1)/2} / lambda^{(n-1)/2} mid-range
    c_antipodal: float  # same with pi - theta near the far pole


def envelope_check(sphere, k, samples=4096):
    """Empirical constants of the pointwise kernel envelope at degree k."""
    if k < 1:
        raise ValueError("envelope constants need degree k >= 1")
    n = sphere.n
    lam = eigenvalue(n, k)
    half = (n - 1) / 2

    def zk(theta):
        return zonal_table(n, k, np.cos(theta))[k]

    th_flat = np.linspace(1e-9, 1.0 / lam, samples // 4)
    c_flat = np.abs(zk(th_flat)).max() / k ** (n - 1)
    th_osc = np.linspace(1.0 / lam, 0.75 * np.pi, samples)
    c_osc = np.abs(zk(th_osc) * th_osc ** half).max() / lam ** half
    th_anti = np.linspace(0.25 * np.pi, np.pi - 1.0 / lam, samples)
    c_anti = np.abs(zk(th_anti) * (np.pi - th_anti) ** half).max() / lam ** half
    return EnvelopeConstants(float(c_flat), float(c_osc), float(c_anti))
