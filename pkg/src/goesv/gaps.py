"""Monte Carlo gap probabilities and the finite-order identity checks.

E(k; J) denotes the probability that an interval J contains exactly k
points of a spectrum.  For |GOE_n| with n = 2m + mu the even-location
decimation turns counting in a symmetric interval into counting in a
half-open one:

    E_goe(2k+mu-1; (-s,s)) + E_goe(2k+mu; (-s,s))
        = E_ague(k; (0,s)) = E_lue(k; (0,s^2))  at parameter a = mu - 1/2,

with E(-1; J) = 0 by convention (the two left-hand events partition the
even-count event, sample by sample).  This module estimates each side by
Monte Carlo, checks the counting identity deterministically, compares a
complex-Gaussian singular-value spectrum against the union of two
independent decimations, and tests the integer-parameter duality between
Laguerre spectra of shifted order via zero-padded rectangular Gaussians.

It also houses the small statistics kernel (ECDF, Kolmogorov-Smirnov,
moment helpers) the rest of the package and its tests lean on.

Estimators shard their sample budget over fixed-size blocks with one
substream per block, so an estimate is a pure function of (seed, N) no
matter how blocks are grouped across workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .dense import (
    ParityFrame,
    ague_batch,
    goe_abs_batch,
    goe_eigenvalues_batch,
    gue_abs_batch,
    lue_batch,
)
from .streams import RandStream

# samples per substream block; estimates depend only on (seed, N)
BLOCK = 10_000

_KINDS = ("goe_eig", "goe_abs", "ague", "gue_abs", "lue", "even_dec", "odd_dec")


# ---------------------------------------------------------------------------
# statistics kernel


@dataclass(frozen=True)
class TwoSampleReport:
    """Kolmogorov-Smirnov comparison of two samples (or sample vs CDF)."""

    ks_distance: float
    p_value: float
    sample_sizes: tuple

    def __post_init__(self):
        if not 0.0 <= self.ks_distance <= 1.0:
            raise ValueError("KS distance must lie in [0, 1]")


def ecdf(a):
    """Right-continuous empirical CDF of the sample, as a callable."""
    srt = np.sort(np.asarray(a, dtype=float))
    if srt.size == 0:
        raise ValueError("empty sample")

    def f(x):
        out = np.searchsorted(srt, np.asarray(x, dtype=float), side="right") / srt.size
        return out if out.shape else float(out)

    return f


def ks_two_sample(a, b):
    """Sup distance between two empirical CDFs, with the asymptotic
    Kolmogorov p-value at the effective size sqrt(na*nb/(na+nb))."""
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    if a.size == 0 or b.size == 0:
        raise ValueError("empty sample")
    grid = np.concatenate([a, b])
    fa = np.searchsorted(a, grid, side="right") / a.size
    fb = np.searchsorted(b, grid, side="right") / b.size
    dist = float(np.max(np.abs(fa - fb)))
    eff = math.sqrt(a.size * b.size / (a.size + b.size))
    return TwoSampleReport(
        ks_distance=dist,
        p_value=float(special.kolmogorov(eff * dist)),
        sample_sizes=(int(a.size), int(b.size)),
    )


def ks_one_sample(a, cdf):
    """Sup distance between the sample ECDF and an analytic CDF."""
    a = np.sort(np.asarray(a, dtype=float))
    if a.size == 0:
        raise ValueError("empty sample")
    f = np.asarray(cdf(a), dtype=float)
    steps = np.arange(1, a.size + 1) / a.size
    dist = float(max(np.max(steps - f), np.max(f - (steps - 1.0 / a.size))))
    dist = min(max(dist, 0.0), 1.0)
    return TwoSampleReport(
        ks_distance=dist,
        p_value=float(special.kolmogorov(math.sqrt(a.size) * dist)),
        sample_sizes=(int(a.size),),
    )


def sample_skewness(a):
    """Standardized third central moment of the sample."""
    a = np.asarray(a, dtype=float)
    if a.size < 2:
        raise ValueError("need at least two samples")
    dev = a - a.mean()
    m2 = np.mean(dev**2)
    return float(np.mean(dev**3) / m2**1.5)


def skewness_stderr(nsamples):
    """Asymptotic standard error sqrt(6/N) of the sample skewness under
    a symmetric parent."""
    return math.sqrt(6.0 / nsamples)


# ---------------------------------------------------------------------------
# gap estimators


@dataclass(frozen=True)
class EnsembleSpec:
    """Which spectrum to sample: ensemble kind, order, Laguerre parameter.

    kind is one of "goe_eig" (signed eigenvalues), "goe_abs", "ague",
    "gue_abs", "lue" (needs a), "even_dec" / "odd_dec" (the even- or
    odd-location entries of a decreasingly sorted |GOE| spectrum).
    """

    kind: str
    order: int
    a: float = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown ensemble kind {self.kind!r}")
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if self.kind == "lue" and self.a is None:
            raise ValueError("Laguerre sampling requires the parameter a")

    def batch(self, stream, size):
        """(size, width) spectra, rows sorted decreasing."""
        if self.kind == "goe_eig":
            return goe_eigenvalues_batch(stream, self.order, size)
        if self.kind == "goe_abs":
            return goe_abs_batch(stream, self.order, size)
        if self.kind == "ague":
            return ague_batch(stream, self.order, size)
        if self.kind == "gue_abs":
            return gue_abs_batch(stream, self.order, size)
        if self.kind == "lue":
            return lue_batch(stream, self.order, self.a, size)
        cols = slice(1, None, 2) if self.kind == "even_dec" else slice(0, None, 2)
        return goe_abs_batch(stream, self.order, size)[:, cols]


@dataclass(frozen=True)
class GapEstimate:
    """Estimated probability that an interval holds exactly k points.

    k may be a tuple of counts, in which case the event is the union
    (used for the paired-count side of the symmetric-interval identity).
    """

    k: object
    interval: tuple
    p_hat: float
    stderr: float
    n_samples: int
    seed: int

    def __post_init__(self):
        if not 0.0 <= self.p_hat <= 1.0:
            raise ValueError("estimated probability must lie in [0, 1]")
        if self.stderr < 0.0:
            raise ValueError("standard error must be nonnegative")


def count_in_interval(spec, lo, hi):
    """Number of spectrum points strictly inside (lo, hi)."""
    if not lo < hi:
        raise ValueError("interval must satisfy lo < hi")
    v = np.asarray(getattr(spec, "values", spec), dtype=float)
    return int(np.sum((v > lo) & (v < hi)))


def _block_sizes(n_samples):
    sizes = [BLOCK] * (n_samples // BLOCK)
    if n_samples % BLOCK:
        sizes.append(n_samples % BLOCK)
    return sizes


def _mc_count_prob(spec, targets, lo, hi, n_samples, root):
    """Fraction of samples whose count in (lo, hi) lies in `targets`."""
    targets = np.asarray(targets, dtype=int)
    hits = 0
    for b, size in enumerate(_block_sizes(n_samples)):
        mat = spec.batch(root.substream(b), size)
        counts = np.sum((mat > lo) & (mat < hi), axis=1)
        hits += int(np.sum(np.isin(counts, targets)))
    p_hat = hits / n_samples
    return p_hat, math.sqrt(p_hat * (1.0 - p_hat) / n_samples)


def estimate_gap(spec, k, interval, n_samples, seed):
    """Monte Carlo estimate of E(k; interval) for the given ensemble."""
    lo, hi = interval
    if not lo < hi:
        raise ValueError("interval must satisfy lo < hi")
    if n_samples < 1:
        raise ValueError("need at least one sample")
    targets = (int(k),) if np.ndim(k) == 0 else tuple(int(t) for t in k)
    p_hat, err = _mc_count_prob(spec, targets, lo, hi, n_samples, RandStream(seed))
    return GapEstimate(
        k=targets[0] if np.ndim(k) == 0 else targets,
        interval=(float(lo), float(hi)),
        p_hat=p_hat,
        stderr=err,
        n_samples=int(n_samples),
        seed=int(seed),
    )


# ---------------------------------------------------------------------------
# identity checks


def _combined(e1, e2):
    return math.sqrt(e1.stderr**2 + e2.stderr**2)


@dataclass(frozen=True)
class GapIdentityReport:
    """Three estimates of one gap probability and their pairwise gaps."""

    n: int
    k: int
    s: float
    lhs: GapEstimate
    rhs_ague: GapEstimate
    rhs_lue: GapEstimate

    def pairwise(self):
        """(label, difference, combined stderr) for each pair of routes."""
        pairs = [
            ("paired_counts_vs_skew", self.lhs, self.rhs_ague),
            ("paired_counts_vs_laguerre", self.lhs, self.rhs_lue),
            ("skew_vs_laguerre", self.rhs_ague, self.rhs_lue),
        ]
        return [(name, a.p_hat - b.p_hat, _combined(a, b)) for name, a, b in pairs]

    def max_deviation(self):
        """Largest |difference| / stderr over the pairs (0/0 counts as 0)."""
        worst = 0.0
        for _, diff, err in self.pairwise():
            if err == 0.0:
                if abs(diff) > 0.0:
                    return math.inf
            else:
                worst = max(worst, abs(diff) / err)
        return worst


def verify_gap_identity(n, k, s, n_samples, seed):
    """Estimate both sides of the symmetric-interval counting identity.

    The left side counts signed eigenvalues in (-s, s) hitting either of
    the paired counts 2k+mu-1, 2k+mu (negative counts dropped); the right
    sides count k points in (0, s) for the collapsed skew spectrum and k
    points in (0, s^2) for the Laguerre spectrum at a = mu - 1/2.
    """
    if n < 1:
        raise ValueError("order must be >= 1")
    if not s > 0:
        raise ValueError("interval endpoint must be positive")
    frame = ParityFrame.from_order(n)
    targets = tuple(t for t in (2 * k + frame.mu - 1, 2 * k + frame.mu) if t >= 0)

    p, err = _mc_count_prob(
        EnsembleSpec("goe_eig", n), targets, -s, s, n_samples, RandStream(seed, 0)
    )
    lhs = GapEstimate(targets, (-float(s), float(s)), p, err, n_samples, seed)

    p, err = _mc_count_prob(
        EnsembleSpec("ague", n), (k,), 0.0, s, n_samples, RandStream(seed, 1)
    )
    rhs_ague = GapEstimate(k, (0.0, float(s)), p, err, n_samples, seed)

    if frame.m == 0:
        rhs_lue = GapEstimate(k, (0.0, float(s) ** 2), float(k == 0), 0.0, n_samples, seed)
    else:
        p, err = _mc_count_prob(
            EnsembleSpec("lue", frame.m, a=frame.mu - 0.5),
            (k,),
            0.0,
            s**2,
            n_samples,
            RandStream(seed, 2),
        )
        rhs_lue = GapEstimate(k, (0.0, float(s) ** 2), p, err, n_samples, seed)

    return GapIdentityReport(n=n, k=k, s=float(s), lhs=lhs, rhs_ague=rhs_ague, rhs_lue=rhs_lue)


def counting_lemma_holds(values, order, s):
    """Deterministic check on one |GOE| spectrum: the even-location count
    in (0, s) being k forces the total count to be 2k+mu-1 or 2k+mu."""
    v = np.asarray(getattr(values, "values", values), dtype=float)
    if v.size != order:
        raise ValueError("need the full spectrum of the stated order")
    mu = order % 2
    k = int(np.sum((v[1::2] > 0) & (v[1::2] < s)))
    total = int(np.sum((v > 0) & (v < s)))
    return total in (2 * k + mu - 1, 2 * k + mu)


def check_counting_lemma(n, s, n_samples, seed):
    """Fraction of |GOE_n| samples on which the counting identity holds
    (the lemma says: all of them)."""
    root = RandStream(seed)
    hits = 0
    for b, size in enumerate(_block_sizes(n_samples)):
        mat = goe_abs_batch(root.substream(b), n, size)
        mu = n % 2
        k = np.sum((mat[:, 1::2] > 0) & (mat[:, 1::2] < s), axis=1)
        total = np.sum((mat > 0) & (mat < s), axis=1)
        ok = (total == 2 * k + mu - 1) | (total == 2 * k + mu)
        hits += int(np.sum(ok))
    return hits / n_samples


def verify_superposition(n, n_samples, seed):
    """Location-by-location KS between the Hermitian singular-value
    spectrum of order n and the merged even decimations of two
    independent symmetric samples of orders n and n+1."""
    if n < 1:
        raise ValueError("order must be >= 1")
    left = gue_abs_batch(RandStream(seed, 0), n, n_samples)
    low = goe_abs_batch(RandStream(seed, 1), n, n_samples)[:, 1::2]
    high = goe_abs_batch(RandStream(seed, 2), n + 1, n_samples)[:, 1::2]
    union = np.sort(np.concatenate([low, high], axis=1), axis=1)[:, ::-1]
    if union.shape[1] != n:
        raise AssertionError("merged decimations must supply n locations")
    return [ks_two_sample(left[:, j], union[:, j]) for j in range(n)]


@dataclass(frozen=True)
class DualityReport:
    """Two Monte Carlo estimates of one Laguerre gap probability."""

    m: int
    alpha: int
    k: int
    t: float
    lhs: GapEstimate
    rhs: GapEstimate

    def difference(self):
        return self.lhs.p_hat - self.rhs.p_hat

    def combined_stderr(self):
        return _combined(self.lhs, self.rhs)


def _wishart_eigs_batch(stream, p, m, size):
    """(size, p) eigenvalues of X X^H for complex Gaussian X of shape
    (p, m) with unit-variance entries; includes the p - m exact zeros."""
    x = np.sqrt(0.5) * (
        stream.rng.standard_normal((size, p, m))
        + 1j * stream.rng.standard_normal((size, p, m))
    )
    w = np.matmul(x, np.conj(np.swapaxes(x, 1, 2)))
    return np.linalg.eigvalsh(w)


def verify_wishart_duality(m, alpha, k, t, n_samples, seed):
    """Integer-parameter duality: counting k + alpha eigenvalues of the
    zero-padded (m+alpha)-dimensional Wishart spectrum below t agrees
    with counting k Laguerre eigenvalues at parameter a = alpha in (0, t).
    """
    if alpha < 1 or int(alpha) != alpha:
        raise ValueError("alpha must be a positive integer")
    if not t > 0:
        raise ValueError("threshold must be positive")
    p = m + int(alpha)
    root = RandStream(seed, 0)
    hits = 0
    for b, size in enumerate(_block_sizes(n_samples)):
        w = _wishart_eigs_batch(root.substream(b), p, m, size)
        hits += int(np.sum(np.sum(w < t, axis=1) == k + alpha))
    p_hat = hits / n_samples
    lhs = GapEstimate(
        k=k + int(alpha),
        interval=(0.0, float(t)),
        p_hat=p_hat,
        stderr=math.sqrt(p_hat * (1.0 - p_hat) / n_samples),
        n_samples=n_samples,
        seed=seed,
    )
    ppf, err = _mc_count_prob(
        EnsembleSpec("lue", m, a=float(alpha)), (k,), 0.0, t, n_samples, RandStream(seed, 1)
    )
    rhs = GapEstimate(k, (0.0, float(t)), ppf, err, n_samples, seed)
    return DualityReport(m=m, alpha=int(alpha), k=k, t=float(t), lhs=lhs, rhs=rhs)


def wishart_padding_residual(m, alpha, seed):
    """Dense oracle for the zero-padding fact: the eigenvalues of X X^H
    are those of X^H X together with alpha exact zeros.  Returns the
    largest absolute mismatch on one sample."""
    p = m + int(alpha)
    rng = RandStream(seed).rng
    x = np.sqrt(0.5) * (rng.standard_normal((p, m)) + 1j * rng.standard_normal((p, m)))
    big = np.linalg.eigvalsh(x @ np.conj(x.T))
    small = np.linalg.eigvalsh(np.conj(x.T) @ x)
    padded = np.sort(np.concatenate([small, np.zeros(p - m)]))
    return float(np.max(np.abs(big - padded)))
