"""Exact density evaluators for |GOE_n| singular values and decimations.

Everything is parametrized by the order n = 2m + mu (n <= 8; see
normalization_c).  The evaluators cover:

* the joint density of all singular values, in descending (t, s)
  coordinates and in ascending (x, y) coordinates;
* the conditional density of the odd-location values given the evens;
* the marginal of the even-location values (the anti-GUE density) and
  the determinantal marginal of the odd-location values;
* the sign-vector sum D and its closed product form, whose ratio
  identifies the combinatorial constant 2^n;
* quadrature checks of the two interlaced integrate-out identities.

Normalizations are *computed*, not transcribed: the ordered-simplex
integral collapses, by the bilinear determinant identity, to a Hankel
determinant of one-dimensional Gaussian moments which are themselves
evaluated by adaptive quadrature.  Tests cross-check against direct
simplex quadrature at small n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate, special

from .dense import ParityFrame, SortedSpectrum
from .interlace import XYCoords

_HALF_PI = np.sqrt(np.pi / 2.0)


def _vals(obj):
    return np.asarray(obj.values if isinstance(obj, SortedSpectrum) else obj, dtype=float)


def _delta(args):
    """Vandermonde product of the listed arguments, prod_{j<k}(a_k - a_j)."""
    a = np.asarray(args, dtype=float)
    if a.size < 2:
        return 1.0
    return float(np.prod([a[k] - a[j] for j in range(a.size) for k in range(j + 1, a.size)]))


def _log_delta_desc_squares(z):
    """log prod_{j<k}(z_j^2 - z_k^2) for strictly descending positive z."""
    if z.size < 2:
        return 0.0
    terms = [z[j] ** 2 - z[k] ** 2 for j in range(z.size) for k in range(j + 1, z.size)]
    terms = np.asarray(terms)
    if np.any(terms <= 0):
        return -np.inf
    return float(np.sum(np.log(terms)))


def g_factor(a, z):
    """The weighted Vandermonde factor prod z_k^a e^{-z_k^2/2} times the
    Vandermonde of ascending squares; z descending, result nonnegative."""
    z = np.asarray(z, dtype=float)
    if z.size == 0:
        return 1.0
    log = _log_g_factor(a, z)
    return 0.0 if log == -np.inf else float(np.exp(log))


def _log_g_factor(a, z):
    if z.size == 0:
        return 0.0
    if np.any(z < 0) or (a > 0 and np.any(z == 0)):
        return -np.inf
    powers = a * np.sum(np.log(z)) if a else 0.0
    return powers - 0.5 * np.sum(z**2) + _log_delta_desc_squares(z)


@lru_cache(maxsize=None)
def normalization_c(n):
    """Normalization constant of the Gaussian-weight |Vandermonde| density
    of order n, accurate to about 1e-10 relative.

    The ordered-simplex integral of the even-location marginal reduces to
    (1/2^n n! delta_mu) times a Hankel determinant of the moments
    integral_0^inf s^{2k+2mu} e^{-s^2} ds, each computed by adaptive
    quadrature.  Restricted to 1 <= n <= 8 as a cost guard.
    """
    if not 1 <= n <= 8:
        raise ValueError("normalization is supported for orders 1..8 only")
    frame = ParityFrame.from_order(n)
    m, mu = frame.m, frame.mu
    moments = np.empty(max(2 * m - 1, 0))
    for k in range(moments.size):
        moments[k], _ = integrate.quad(
            lambda s, p=2 * k + 2 * mu: s**p * np.exp(-(s**2)),
            0.0, np.inf, epsabs=1e-13, epsrel=1e-13,
        )
    hankel = np.array([[moments[i + j] for j in range(m)] for i in range(m)])
    j_det = float(np.linalg.det(hankel)) if m else 1.0
    delta_mu = _HALF_PI**mu
    return 1.0 / (2.0**n * math.factorial(n) * delta_mu * j_det)


@dataclass(frozen=True)
class DensityContext:
    """Per-order constants shared by all density evaluators."""

    frame: ParityFrame
    c_n: float
    a_n: float
    delta_mu: float

    @classmethod
    def for_order(cls, n):
        frame = ParityFrame.from_order(n)
        c_n = normalization_c(n)
        delta_mu = _HALF_PI**frame.mu
        a_n = c_n * delta_mu * 2.0**n * math.factorial(n) / math.factorial(frame.m)
        return cls(frame=frame, c_n=c_n, a_n=a_n, delta_mu=delta_mu)

    def __post_init__(self):
        if self.c_n <= 0 or self.a_n <= 0:
            raise ValueError("normalization constants must be positive")


@dataclass(frozen=True)
class EKappaVector:
    """The column (x^kappa, x^{kappa+2}, ..., x^{kappa+2n-2})' e^{-x^2/2},
    with the kappa = -1 first entry replaced by -sqrt(pi/2) erf(x/sqrt 2)."""

    kappa: int
    length: int
    x: float

    def __post_init__(self):
        if self.kappa not in (-1, 0, 1):
            raise ValueError("kappa must be -1, 0, or 1")
        if self.length < 0:
            raise ValueError("length must be nonnegative")

    @property
    def values(self):
        powers = self.kappa + 2 * np.arange(self.length)
        weight = np.exp(-0.5 * self.x**2)
        with np.errstate(divide="ignore"):
            out = np.asarray(self.x, dtype=float) ** powers * weight
        if self.kappa == -1 and self.length:
            out[0] = -_HALF_PI * special.erf(self.x / np.sqrt(2.0))
        return out


def _interlaces(t, s):
    """Weak interlacing t_1 >= s_1 >= t_2 >= ... (>= 0), lengths mhat/m."""
    merged = np.empty(t.size + s.size)
    merged[0::2] = t
    merged[1::2] = s
    return bool(merged.size) and merged[-1] >= 0 and not np.any(np.diff(merged) > 0)


def log_joint_density_ts(t, s, ctx):
    """Log of the joint density in descending decimated coordinates."""
    t = _vals(t)
    s = _vals(s)
    frame = ctx.frame
    if t.size != frame.mhat or s.size != frame.m:
        raise ValueError("coordinate lengths must match the context order")
    if not _interlaces(t, s):
        return -np.inf
    mu = frame.mu
    log = math.log(ctx.c_n) + frame.n * math.log(2.0) + math.lgamma(frame.n + 1)
    log += _log_g_factor(mu, s) + _log_g_factor(1 - mu, t)
    return float(log)


def joint_density_ts(t, s, ctx):
    """Joint density of the odd/even split (t, s); zero off the
    interlacing support."""
    log = log_joint_density_ts(t, s, ctx)
    return 0.0 if log == -np.inf else float(np.exp(log))


def joint_density_xy(xy, ctx):
    """Joint density in ascending interlaced coordinates: constants times
    (prod e^{-x^2/2} Delta(x^2)) (prod y e^{-y^2/2} Delta(y^2))."""
    x = np.asarray(xy.x if isinstance(xy, XYCoords) else xy[0], dtype=float)
    y = np.asarray(xy.y if isinstance(xy, XYCoords) else xy[1], dtype=float)
    frame = ctx.frame
    if x.size != frame.mhat or y.size != frame.m:
        raise ValueError("coordinate lengths must match the context order")
    merged = np.empty(x.size + y.size)
    merged[0::2] = x
    merged[1::2] = y
    if merged[0] < 0 or np.any(np.diff(merged) < 0):
        return 0.0
    value = ctx.c_n * math.factorial(frame.n) * 2.0**frame.n
    value *= np.exp(-0.5 * np.sum(x**2)) * _delta(x**2)
    value *= np.prod(y) * np.exp(-0.5 * np.sum(y**2)) * _delta(y**2)
    return float(value)


def conditional_t_given_s(t, s, ctx):
    """Density of the odd-location values given the evens: a ratio of
    weighted Vandermonde factors scaled by 1/delta_mu."""
    t = _vals(t)
    s = _vals(s)
    frame = ctx.frame
    if t.size != frame.mhat or s.size != frame.m:
        raise ValueError("coordinate lengths must match the context order")
    if not _interlaces(t, s):
        return 0.0
    mu = frame.mu
    log = -math.log(ctx.delta_mu) + _log_g_factor(1 - mu, t) - _log_g_factor(mu, s)
    return 0.0 if log == -np.inf else float(np.exp(log))


def log_even_marginal(s, ctx):
    """Log marginal density of the even-location values (the squared
    weighted Vandermonde form)."""
    s = _vals(s)
    frame = ctx.frame
    if s.size != frame.m:
        raise ValueError("expected m even-location values")
    if np.any(np.diff(s) > 0) or (s.size and s[-1] < 0):
        return -np.inf
    log = math.log(ctx.delta_mu * ctx.c_n) + frame.n * math.log(2.0)
    log += math.lgamma(frame.n + 1) + 2.0 * _log_g_factor(frame.mu, s)
    return float(log)


def even_marginal(s, ctx):
    log = log_even_marginal(s, ctx)
    return 0.0 if log == -np.inf else float(np.exp(log))


def _bordered_det(t, frame, last_row):
    """Determinant of the mhat x mhat matrix with columns at ascending
    arguments (t_mhat, ..., t_1): moment rows of index 1-mu over the
    first mhat-1 entries, then the given closing row."""
    mhat, mu = frame.mhat, frame.mu
    cols = t[::-1]
    mat = np.empty((mhat, mhat))
    for j, x in enumerate(cols):
        mat[: mhat - 1, j] = EKappaVector(1 - mu, mhat - 1, float(x)).values
        mat[mhat - 1, j] = last_row(float(x))
    return float(np.linalg.det(mat))


def _closing_row_tail(frame):
    """gamma closing row: continues the moment powers, t^{1-mu+2mhat-2}e^{-t^2/2}."""
    p = (1 - frame.mu) + 2 * frame.mhat - 2

    def row(x):
        return x**p * math.exp(-0.5 * x * x)

    return row


def _closing_row_flat(frame):
    """delta closing row: 1 for odd orders, sqrt(pi/2) erf(t/sqrt 2) for even."""
    if frame.mu:
        return lambda x: 1.0
    return lambda x: _HALF_PI * float(special.erf(x / math.sqrt(2.0)))


def odd_marginal(t, ctx):
    """Marginal density of the odd-location values: the product of two
    bordered determinants differing only in their closing rows."""
    t = _vals(t)
    frame = ctx.frame
    if t.size != frame.mhat:
        raise ValueError("expected mhat odd-location values")
    if np.any(np.diff(t) > 0) or t[-1] < 0:
        return 0.0
    det_tail = _bordered_det(t, frame, _closing_row_tail(frame))
    det_flat = _bordered_det(t, frame, _closing_row_flat(frame))
    value = ctx.c_n * math.factorial(frame.n) * 2.0**frame.n * det_tail * det_flat
    return float(value)


def log_odd_marginal(t, ctx):
    value = odd_marginal(t, ctx)
    return -np.inf if value <= 0 else float(np.log(value))


def signed_sum_D(sigma):
    """The sign-vector sum over all 2^n choices: sum of theta(eps) times
    the Vandermonde at (eps_1 sigma_1, ..., eps_n sigma_n), where theta
    is the product of the even-position signs; sigma ascending."""
    sigma = np.asarray(sigma, dtype=float)
    n = sigma.size
    if n > 16:
        raise ValueError("sign-vector sum is exponential; order capped at 16")
    total = 0.0
    for mask in range(1 << n):
        eps = 1.0 - 2.0 * ((mask >> np.arange(n)) & 1)
        theta = np.prod(eps[1::2])
        total += theta * _delta(eps * sigma)
    return float(total)


def factored_D(sigma):
    """Closed form of the sign-vector sum: 2^n Delta(x^2) prod(y) Delta(y^2)
    in ascending interlaced coordinates."""
    sigma = np.asarray(sigma, dtype=float)
    x = sigma[0::2]
    y = sigma[1::2]
    return float(2.0**sigma.size * _delta(x**2) * np.prod(y) * _delta(y**2))


def integrate_out_check(mode, values, ctx):
    """Quadrature residual of the two interlaced integrate-out identities.

    mode "odd_to_even": integrate the odd-side weighted Vandermonde factor
    over its interlacing box around the given evens s; the closed form is
    delta_mu times the even-side factor at s.

    mode "even_to_odd": integrate the even-side factor over the box nested
    inside the given odds t; the closed form is the bordered determinant
    with the flat/erf closing row.

    Returns |numeric - closed|.
    """
    frame = ctx.frame
    m, mhat, mu = frame.m, frame.mhat, frame.mu
    v = _vals(values)
    opts = {"epsabs": 1e-11, "epsrel": 1e-11}
    if mode == "odd_to_even":
        if v.size != m:
            raise ValueError("expected m even-location values")
        shat = np.concatenate([v, [0.0]]) if mu else v
        ranges = [(shat[j], np.inf if j == 0 else shat[j - 1]) for j in range(mhat)]

        def integrand(*t):
            return g_factor(1 - mu, np.asarray(t))

        numeric, _ = integrate.nquad(integrand, ranges, opts=opts)
        closed = ctx.delta_mu * g_factor(mu, v)
    elif mode == "even_to_odd":
        if v.size != mhat:
            raise ValueError("expected mhat odd-location values")
        that = v if mu else np.concatenate([v, [0.0]])
        ranges = [(that[j + 1], that[j]) for j in range(m)]

        def integrand(*s):
            return g_factor(mu, np.asarray(s))

        numeric, _ = integrate.nquad(integrand, ranges, opts=opts) if m else (1.0, 0.0)
        closed = _bordered_det(v, frame, _closing_row_flat(frame))
    else:
        raise ValueError(f"unknown mode: {mode!r}")
    return float(abs(numeric - closed))
