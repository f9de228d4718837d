"""Determinant factorizations and the log-determinant CLT experiment.

With M = sqrt(2) G for a Gaussian symmetric (beta = 1) or Hermitian
(beta = 2) matrix G of order n = 2m + mu, the magnitude of det M is a
product of independent chi variables:

    beta = 1:  |det M| = eta1 * xi_3^2 * xi_5^2 * ... * xi_{2mhat-1}^2,
               eta1 = xi_1 sqrt(xi_1^2 + 2 xi_n^2)  (mu = 0),
               eta1 = sqrt(2) xi_1                  (mu = 1);

    beta = 2:  |det M| = eta2 * prod xi_k xitilde_k  (odd k, 3..2mhat-1),
               eta2 = xi_1 xi_{n+1}  (mu = 0),   eta2 = xi_1  (mu = 1),

with xi_k, xitilde_k independent chi_k draws.  All products are
accumulated in log space (linear |det| overflows past n ~ 150).  The
module also provides the Mellin transform of eta1 at even order via a
Gauss hypergeometric series at argument 1/2, the normalized CLT
statistic (log|det M| - log(n!)/2 + log(n)/4) / sqrt(log(n)/beta), its
leading-factor/chi-sum decomposition Y + Z, and exact digamma/trigamma
moments of the chi logs for calibrating tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

_LOG2 = math.log(2.0)


@dataclass(frozen=True)
class DetSample:
    """One determinant magnitude |det M|, kept with its log."""

    absdet: float
    logdet: float
    n: int
    beta: int
    method: str

    def __post_init__(self):
        if self.beta not in (1, 2):
            raise ValueError("beta must be 1 or 2")
        if self.method not in ("dense", "factored"):
            raise ValueError("method must be 'dense' or 'factored'")
        if not math.isfinite(self.logdet):
            raise ValueError("logdet must be finite")
        if not self.absdet > 0:
            raise ValueError("absdet must be positive")
        if math.isfinite(self.absdet) and abs(math.log(self.absdet) - self.logdet) > 1e-9:
            raise ValueError("logdet must equal log(absdet)")


@dataclass(frozen=True)
class CltStat:
    """The normalized log-determinant statistic."""

    value: float

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError("statistic must be finite")


def _chunks(size, limit):
    done = 0
    while done < size:
        yield done, min(done + limit, size)
        done = min(done + limit, size)


def _odd_degrees(mhat):
    """The chi degrees 3, 5, ..., 2*mhat - 1 of the square factors."""
    return np.arange(3.0, 2 * mhat, 2.0)


def _chunk_limit(ncols):
    return max(1, int(5_000_000 / max(ncols, 1)))


def goe_logdet_batch(stream, n, size):
    """(size,) log|det M| for beta = 1, sampled from the chi factorization."""
    mu = n % 2
    mhat = (n + 1) // 2
    degrees = _odd_degrees(mhat)
    out = np.empty(size)
    for lo, hi in _chunks(size, _chunk_limit(degrees.size + 2)):
        c = hi - lo
        xi1sq = stream.rng.chisquare(1.0, size=c)
        if mu:
            eta = 0.5 * _LOG2 + 0.5 * np.log(xi1sq)
        else:
            xinsq = stream.rng.chisquare(float(n), size=c)
            eta = 0.5 * np.log(xi1sq) + 0.5 * np.log(xi1sq + 2.0 * xinsq)
        if degrees.size:
            logs = np.log(stream.rng.chisquare(degrees, size=(c, degrees.size)))
            eta += np.sum(logs, axis=1)
        out[lo:hi] = eta
    return out


def gue_logdet_batch(stream, n, size):
    """(size,) log|det M| for beta = 2, sampled from the chi factorization."""
    mu = n % 2
    mhat = (n + 1) // 2
    degrees = _odd_degrees(mhat)
    out = np.empty(size)
    for lo, hi in _chunks(size, _chunk_limit(2 * degrees.size + 2)):
        c = hi - lo
        eta = 0.5 * np.log(stream.rng.chisquare(1.0, size=c))
        if not mu:
            eta += 0.5 * np.log(stream.rng.chisquare(float(n + 1), size=c))
        if degrees.size:
            logs = np.log(stream.rng.chisquare(degrees, size=(c, degrees.size)))
            logs += np.log(stream.rng.chisquare(degrees, size=(c, degrees.size)))
            eta += 0.5 * np.sum(logs, axis=1)
        out[lo:hi] = eta
    return out


def sample_absdet_goe_factored(stream, n):
    """One |det M| draw (beta = 1) from the independent-chi product."""
    if n < 1:
        raise ValueError("order must be >= 1")
    logdet = float(goe_logdet_batch(stream, n, 1)[0])
    return DetSample(absdet=math.exp(logdet), logdet=logdet, n=n, beta=1,
                     method="factored")


def sample_absdet_gue_factored(stream, n):
    """One |det M| draw (beta = 2) from the independent-chi product."""
    if n < 1:
        raise ValueError("order must be >= 1")
    logdet = float(gue_logdet_batch(stream, n, 1)[0])
    return DetSample(absdet=math.exp(logdet), logdet=logdet, n=n, beta=2,
                     method="factored")


def goe_logdet_dense_batch(stream, n, size):
    """Dense oracle: log|det(sqrt(2) G)| over symmetric Gaussian samples."""
    out = np.empty(size)
    for lo, hi in _chunks(size, _chunk_limit(n * n)):
        c = hi - lo
        x = stream.rng.standard_normal((c, n, n))
        g = (x + np.swapaxes(x, 1, 2)) / 2.0
        _, logabs = np.linalg.slogdet(np.sqrt(2.0) * g)
        out[lo:hi] = logabs
    return out


def gue_logdet_dense_batch(stream, n, size):
    """Dense oracle: log|det(sqrt(2) G)| over Hermitian Gaussian samples."""
    out = np.empty(size)
    for lo, hi in _chunks(size, _chunk_limit(2 * n * n)):
        c = hi - lo
        x = stream.rng.standard_normal((c, n, n)) + 1j * stream.rng.standard_normal((c, n, n))
        x *= np.sqrt(0.5)
        g = (x + np.conj(np.swapaxes(x, 1, 2))) / 2.0
        _, logabs = np.linalg.slogdet(np.sqrt(2.0) * g)
        out[lo:hi] = logabs
    return out


def signed_logdet_goe_odd_batch(stream, n, size):
    """(sign, log|det M|) pairs for odd n: the chi_1 leading factor is
    replaced by a standard normal, making the sign a fair coin independent
    of the magnitude."""
    if n % 2 == 0:
        raise ValueError("signed determinant sampling requires odd order")
    mhat = (n + 1) // 2
    degrees = _odd_degrees(mhat)
    sign = np.empty(size)
    logabs = np.empty(size)
    for lo, hi in _chunks(size, _chunk_limit(degrees.size + 1)):
        c = hi - lo
        g = stream.rng.standard_normal(c)
        sign[lo:hi] = np.where(g < 0, -1.0, 1.0)
        acc = 0.5 * _LOG2 + np.log(np.abs(g))
        if degrees.size:
            acc += np.sum(np.log(stream.rng.chisquare(degrees, size=(c, degrees.size))), axis=1)
        logabs[lo:hi] = acc
    return sign, logabs


def hyp2f1_half(a, b, c):
    """Gauss hypergeometric series at argument 1/2, truncated when the
    next term falls below 1e-16 of the partial sum."""
    total = term = 1.0
    k = 0
    while True:
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * 0.5
        total += term
        k += 1
        if term == 0.0 or abs(term) < 1e-16 * abs(total):
            return total
        if k > 10_000:
            raise RuntimeError("hypergeometric series failed to converge")


def mellin_eta_even(s, m):
    """Mellin transform E[eta1^(s-1)] of the beta = 1 leading factor at
    even order n = 2m:

        2^{3(s-1)/2} Gamma(s/2) Gamma(s+m-1/2)
        / (Gamma(1/2) Gamma(s/2+m)) * 2F1(s/2, (1-s)/2; s/2+m; 1/2).
    """
    if s <= 0:
        raise ValueError("transform parameter must be positive")
    if m < 1:
        raise ValueError("m must be >= 1")
    logpre = 1.5 * (s - 1.0) * _LOG2
    logpre += special.gammaln(s / 2.0) + special.gammaln(s + m - 0.5)
    logpre -= special.gammaln(0.5) + special.gammaln(s / 2.0 + m)
    return float(np.exp(logpre) * hyp2f1_half(s / 2.0, (1.0 - s) / 2.0, s / 2.0 + m))


def clt_statistic(logdet, n, beta):
    """Normalize log|det M|: subtract log(n!)/2 - log(n)/4, divide by
    sqrt(log(n)/beta)."""
    if n < 2:
        raise ValueError("order must be >= 2")
    if beta not in (1, 2):
        raise ValueError("beta must be 1 or 2")
    center = 0.5 * math.lgamma(n + 1.0) - 0.25 * math.log(n)
    scale = math.sqrt(math.log(n) / beta)
    return CltStat(value=float((logdet - center) / scale))


def clt_statistic_batch(logdet, n, beta):
    """Vectorized clt_statistic over an array of log determinants."""
    if n < 2:
        raise ValueError("order must be >= 2")
    center = 0.5 * math.lgamma(n + 1.0) - 0.25 * math.log(n)
    scale = math.sqrt(math.log(n) / beta)
    return (np.asarray(logdet, dtype=float) - center) / scale


def clt_yz_batch(stream, n, beta, size):
    """Arrays (y, z): y the log leading factor, z the chi-log sum; their
    sum is distributed as the factored log|det M|."""
    mu = n % 2
    mhat = (n + 1) // 2
    degrees = _odd_degrees(mhat)
    y = np.empty(size)
    z = np.empty(size)
    width = (2 if beta == 2 else 1) * degrees.size + 2
    for lo, hi in _chunks(size, _chunk_limit(width)):
        c = hi - lo
        xi1sq = stream.rng.chisquare(1.0, size=c)
        if beta == 1:
            if mu:
                y[lo:hi] = 0.5 * _LOG2 + 0.5 * np.log(xi1sq)
            else:
                xinsq = stream.rng.chisquare(float(n), size=c)
                y[lo:hi] = 0.5 * np.log(xi1sq) + 0.5 * np.log(xi1sq + 2.0 * xinsq)
            if degrees.size:
                z[lo:hi] = np.sum(np.log(stream.rng.chisquare(degrees, size=(c, degrees.size))), axis=1)
            else:
                z[lo:hi] = 0.0
        else:
            acc = 0.5 * np.log(xi1sq)
            if not mu:
                acc += 0.5 * np.log(stream.rng.chisquare(float(n + 1), size=c))
            y[lo:hi] = acc
            if degrees.size:
                logs = np.log(stream.rng.chisquare(degrees, size=(c, degrees.size)))
                logs += np.log(stream.rng.chisquare(degrees, size=(c, degrees.size)))
                z[lo:hi] = 0.5 * np.sum(logs, axis=1)
            else:
                z[lo:hi] = 0.0
    return y, z


def clt_decomposition(stream, n, beta):
    """One (Y, Z) draw; Y + Z is a factored log|det M| sample."""
    if n < 2:
        raise ValueError("order must be >= 2")
    y, z = clt_yz_batch(stream, n, beta, 1)
    return float(y[0]), float(z[0])


# ---------------------------------------------------------------------------
# exact chi-log moments, for calibrating the CLT tests


def log_chi_mean(k):
    """E[log chi_k] = (psi(k/2) + log 2) / 2."""
    return 0.5 * (special.digamma(k / 2.0) + _LOG2)


def log_chi_var(k):
    """Var[log chi_k] = psi'(k/2) / 4."""
    return 0.25 * special.polygamma(1, k / 2.0)


def chi_mean(k):
    """E[chi_k] = sqrt(2) Gamma((k+1)/2) / Gamma(k/2)."""
    return math.sqrt(2.0) * np.exp(special.gammaln((k + 1.0) / 2.0) - special.gammaln(k / 2.0))


def z_moments_exact(n, beta):
    """Exact (mean, variance) of the chi-log sum Z for order n."""
    mhat = (n + 1) // 2
    degrees = _odd_degrees(mhat)
    if degrees.size == 0:
        return 0.0, 0.0
    mean = float(np.sum(2.0 * log_chi_mean(degrees)))
    var1 = float(np.sum(4.0 * log_chi_var(degrees)))
    return (mean, var1) if beta == 1 else (mean, 0.5 * var1)
