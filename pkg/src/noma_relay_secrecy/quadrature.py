"""Gauss-Legendre evaluation of the two security-probability integrals.

Both kernels integrate over (0, a) where the integrand may have a screened
singularity at the right endpoint: the factor exp(-h/(1-qx)) (resp.
exp(-r/(1-vy))) drives the integrand to zero there whenever h > 0 (r > 0).
By construction the constants satisfy q*a = 1 exactly, so the 1/(1-qx) pole
sits on the boundary, strictly outside the open node set; only a pole in the
interior (q*a > 1) is an error. Node values are combined in log space with
sign tracking so the huge-but-cancelling endpoint factors never produce
0 * inf.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

_POLE_TOL = 1e-9
_TAIL_LOG = 60.0


def _effective_upper(a: float, f: float, degree: float) -> float:
    """Shrink the domain when exp(-f*x) extinguishes the integrand early.

    With a strong eavesdropper rate the decay constant f can exceed 1/a by
    orders of magnitude, concentrating all mass in a sliver near zero that
    fixed nodes on (0, a) cannot resolve. Cutting at x with f*x = 60 plus a
    few e-folds per polynomial degree discards a tail bounded by the upper
    incomplete gamma, below 1e-20 of the kept mass, while leaving any domain
    the nodes already resolve untouched.
    """
    if f <= 0.0:
        return a
    cut = (_TAIL_LOG + 8.0 * degree) / f
    return a if cut >= a else cut


class QuadratureSpec:
    """Cached Gauss-Legendre abscissae and weights on [-1, 1]."""

    __slots__ = ("n", "nodes", "weights")

    def __init__(self, n: int = 300):
        if int(n) != n or n < 1:
            raise ValueError(f"node count must be a positive integer, got {n!r}")
        self.n = int(n)
        nodes, weights = np.polynomial.legendre.leggauss(self.n)
        self.nodes = nodes
        self.weights = weights

    def map_to(self, a: float) -> tuple[np.ndarray, np.ndarray]:
        """Nodes and weights for integration over (0, a)."""
        half = 0.5 * a
        return half * (self.nodes + 1.0), half * self.weights


@lru_cache(maxsize=8)
def quadrature(n: int = 300) -> QuadratureSpec:
    """Shared immutable QuadratureSpec per node count."""
    return QuadratureSpec(n)


def _signed_log_pow(base: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    """k*log|base| and sign(base)^k elementwise; k = 0 contributes nothing."""
    if k == 0:
        return np.zeros_like(base), np.ones_like(base)
    with np.errstate(divide="ignore"):
        logmag = k * np.log(np.abs(base))
    sign = np.where(base < 0.0, (-1.0) ** k, 1.0)
    sign = np.where(base == 0.0, 0.0, sign)
    return logmag, sign


def g_kernel(a, b, c, r, q, f, h, k, j, quad: QuadratureSpec) -> float:
    """integral_0^a x^{b-1} e^{-f x - h/(1-q x)} (1+c x)^k (1+r/(1-q x))^j dx.

    b >= 1; k, j nonnegative integers. Requires a > 0 and no pole interior
    to the domain: q*a <= 1 (equality is the constructed case and is fine,
    the nodes stay strictly inside).
    """
    if not a > 0:
        raise ValueError(f"upper limit a must be positive, got {a!r}")
    if q * a > 1.0 + _POLE_TOL:
        raise ValueError(f"pole inside domain: q*a = {q * a!r} > 1")
    x, w = quad.map_to(_effective_upper(a, f, b + k + j))
    one_minus_qx = 1.0 - q * x
    log_val = (b - 1.0) * np.log(x) - f * x - h / one_minus_qx
    sign = np.ones_like(x)
    lm, sg = _signed_log_pow(1.0 + c * x, int(k))
    log_val += lm
    sign *= sg
    lm, sg = _signed_log_pow(1.0 + r / one_minus_qx, int(j))
    log_val += lm
    sign *= sg
    with np.errstate(over="ignore"):
        vals = sign * np.exp(log_val)
    return float(np.dot(w, vals))


def h_kernel(
    a,
    b,
    c,
    f,
    r,
    u,
    v,
    ell,
    theta1,
    k,
    varsigma,
    C,
    D,
    rho4,
    lambda_e,
    quad: QuadratureSpec,
) -> float:
    """One jamming-scheme integral over (0, a), a = 1/v:

    integral (ell + theta1*y)^b (1 + u/(1-v y))^c
             (rho4*lambda_e*y^{k+1} + D*y^k - C*k*y^{k-1}) / (rho4*y + C)^{varsigma+1}
             e^{-f y - r/(1-v y)} dy

    b, c, k nonnegative integers. The y^{k-1} piece carries the factor k and
    is skipped at k = 0 where it vanishes identically.
    """
    if not v > 0:
        raise ValueError(f"v must be positive, got {v!r}")
    if not a > 0:
        raise ValueError(f"upper limit a must be positive, got {a!r}")
    if v * a > 1.0 + _POLE_TOL:
        raise ValueError(f"pole inside domain: v*a = {v * a!r} > 1")
    y, w = quad.map_to(_effective_upper(a, f, b + c + k + 1))
    one_minus_vy = 1.0 - v * y
    log_val = -f * y - r / one_minus_vy
    sign = np.ones_like(y)
    lm, sg = _signed_log_pow(ell + theta1 * y, int(b))
    log_val += lm
    sign *= sg
    lm, sg = _signed_log_pow(1.0 + u / one_minus_vy, int(c))
    log_val += lm
    sign *= sg
    numer = rho4 * lambda_e * y ** (k + 1) + D * y**k
    if k > 0:
        numer = numer - C * k * y ** (k - 1)
    rational = numer / (rho4 * y + C) ** (varsigma + 1)
    with np.errstate(over="ignore"):
        vals = sign * np.exp(log_val) * rational
    return float(np.dot(w, vals))
