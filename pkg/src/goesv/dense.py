"""Dense reference ensembles: GOE, GUE, skew-symmetric Gaussian, LUE.

These are the ground-truth samplers every sparse model is tested against.
Conventions: GOE is G = (X+X')/2 with X an iid standard normal matrix, so
diagonal entries are N(0,1) and off-diagonal N(0,1/2).  GUE is (X+X*)/2
with complex X whose real and imaginary parts are N(0,1/2) each, the
beta=2 weight convention.  The skew part A = (X-X')/2 has nonzero singular
values of multiplicity two; taking each exactly once (dropping the surplus
zero at odd order) gives the anti-GUE spectrum, written aGUE_n.

Scalar operations return SortedSpectrum; the *_batch functions return a
(size, count) array with rows sorted decreasing, chunked internally so a
10^6-sample run stays within a few tens of MB.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .streams import RandStream

_CHUNK = 100_000

# relative tolerance for collapsing the multiplicity-2 singular values of a
# skew-symmetric sample (double precision splits the pair at O(ulp))
PAIR_TOL = 1e-8


@dataclass(frozen=True)
class ParityFrame:
    """Order bookkeeping n = 2m + mu, with mhat = m + mu."""

    n: int
    m: int
    mhat: int
    mu: int

    @classmethod
    def from_order(cls, n):
        n = int(n)
        if n < 1:
            raise ValueError("order must be >= 1")
        m, mu = divmod(n, 2)
        return cls(n=n, m=m, mhat=m + mu, mu=mu)

    def __post_init__(self):
        if self.n != 2 * self.m + self.mu or self.mhat != self.m + self.mu:
            raise ValueError("inconsistent parity frame")
        if self.mu not in (0, 1):
            raise ValueError("mu must be 0 or 1")


@dataclass(frozen=True)
class SortedSpectrum:
    """Decreasingly sorted spectrum plus the matrix order it came from.

    values : 1-d array, sorted decreasing; nonnegative unless signed.
    order  : order n of the originating matrix (may exceed len(values),
             e.g. the aGUE spectrum of a skew matrix of odd order).
    ensemble : short tag such as "goe_abs", "ague", "gue_abs", "lue", "eig".
    signed : True for plain eigenvalue spectra that may be negative.
    """

    values: np.ndarray
    order: int
    ensemble: str = "spectrum"
    signed: bool = False

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", v)
        if v.ndim != 1:
            raise ValueError("spectrum must be one-dimensional")
        if v.size > 1 and np.any(np.diff(v) > 0):
            raise ValueError("spectrum must be sorted decreasing")
        if not self.signed and v.size and v[-1] < 0:
            raise ValueError("singular-value spectrum must be nonnegative")

    def __len__(self):
        return self.values.size


def sample_goe(stream, n):
    """One GOE matrix of order n: symmetric, diag N(0,1), off-diag N(0,1/2)."""
    if n < 1:
        raise ValueError("order must be >= 1")
    x = stream.rng.standard_normal((n, n))
    return (x + x.T) / 2.0


def sample_skew(stream, n):
    """One skew-symmetric Gaussian matrix A = (X-X')/2, off-diag N(0,1/2)."""
    if n < 1:
        raise ValueError("order must be >= 1")
    x = stream.rng.standard_normal((n, n))
    return (x - x.T) / 2.0


def sample_gue(stream, n):
    """One GUE matrix (beta=2 weights): (X+X*)/2, complex standard X."""
    if n < 1:
        raise ValueError("order must be >= 1")
    scale = np.sqrt(0.5)
    x = scale * (
        stream.rng.standard_normal((n, n)) + 1j * stream.rng.standard_normal((n, n))
    )
    return (x + x.conj().T) / 2.0


def symmetric_eigenvalues(mat):
    """All eigenvalues of a symmetric (or Hermitian) matrix, decreasing."""
    mat = np.asarray(mat)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("matrix must be square")
    if not np.allclose(mat, mat.conj().T, rtol=0.0, atol=1e-12):
        raise ValueError("matrix is not symmetric")
    w = np.linalg.eigvalsh(mat)
    return SortedSpectrum(w[::-1].copy(), mat.shape[0], "eig", signed=True)


def singular_values(mat):
    """Singular values of an arbitrary rectangular matrix, decreasing."""
    mat = np.asarray(mat)
    if mat.ndim != 2 or mat.size == 0:
        raise ValueError("matrix must be two-dimensional and nonempty")
    s = np.linalg.svd(mat, compute_uv=False)
    return SortedSpectrum(s, min(mat.shape), "sv")


def goe_singular_values(stream, n):
    """|GOE_n|: magnitudes of the eigenvalues of one GOE sample, decreasing."""
    w = np.linalg.eigvalsh(sample_goe(stream, n))
    s = np.sort(np.abs(w))[::-1]
    return SortedSpectrum(s, n, "goe_abs")


def collapse_pairs(s, order):
    """Collapse the multiplicity-2 singular values of a skew sample.

    s is the full decreasing singular-value vector of a skew-symmetric
    matrix of the given order.  The trailing zero (odd order) is dropped
    and each adjacent pair is averaged.  Asserts the pair split and the
    surplus value stay below PAIR_TOL * largest.
    """
    s = np.asarray(s, dtype=float)
    frame = ParityFrame.from_order(order)
    if s.size != order:
        raise ValueError("expected the full spectrum of the skew matrix")
    tol = PAIR_TOL * (s[0] if s.size else 0.0)
    if frame.mu:
        if s[-1] > tol:
            raise ValueError("surplus singular value of odd-order skew matrix not zero")
        s = s[:-1]
    pairs = s.reshape(frame.m, 2)
    if frame.m and np.max(pairs[:, 0] - pairs[:, 1]) > tol:
        raise ValueError("singular values of skew matrix do not pair up")
    return pairs.mean(axis=1)


def ague_singular_values(stream, n):
    """aGUE_n: the m distinct positive singular values of one skew sample."""
    if n < 2:
        raise ValueError("order must be >= 2")
    a = sample_skew(stream, n)
    s = np.linalg.svd(a, compute_uv=False)
    return SortedSpectrum(collapse_pairs(s, n), n, "ague")


def gue_singular_values(stream, n):
    """|GUE_n|: eigenvalue magnitudes of one GUE sample, decreasing."""
    w = np.linalg.eigvalsh(sample_gue(stream, n))
    s = np.sort(np.abs(w))[::-1]
    return SortedSpectrum(s, n, "gue_abs")


def _laguerre_bidiagonal(rng, m, a, size):
    """Stacked dense bidiagonal factors of the beta=2 Laguerre model.

    Returns (size, m, m) arrays B with diagonal chi_{2(a+m)}, ...,
    chi_{2(a+1)} and subdiagonal chi_{2(m-1)}, ..., chi_2; the eigenvalues
    of B B'/2 follow the density prop. to prod lambda^a e^{-lambda} times
    the squared Vandermonde.
    """
    diag_df = 2.0 * (a + np.arange(m, 0, -1))
    b = np.zeros((size, m, m))
    idx = np.arange(m)
    b[:, idx, idx] = np.sqrt(rng.chisquare(diag_df, size=(size, m)))
    if m > 1:
        off_df = 2.0 * np.arange(m - 1, 0, -1)
        b[:, idx[1:], idx[:-1]] = np.sqrt(rng.chisquare(off_df, size=(size, m - 1)))
    return b


def lue_eigenvalues(stream, m, a):
    """One LUE_m sample with parameter a > -1, eigenvalues decreasing.

    Joint density prop. to prod_k lambda_k^a e^{-lambda_k} * Delta(lambda)^2,
    sampled through the bidiagonal chi model (valid for real a > -1, which
    covers the half-integer parameters a = mu - 1/2).
    """
    if m < 1:
        raise ValueError("order must be >= 1")
    if not a > -1:
        raise ValueError("parameter must exceed -1")
    b = _laguerre_bidiagonal(stream.rng, m, float(a), 1)[0]
    lam = np.linalg.svd(b, compute_uv=False) ** 2 / 2.0
    return SortedSpectrum(lam, m, "lue")


# ---------------------------------------------------------------------------
# batch kernels


def _chunks(size, chunk=_CHUNK):
    done = 0
    while done < size:
        step = min(chunk, size - done)
        yield done, done + step
        done += step


def goe_eigenvalues_batch(stream, n, size):
    """(size, n) signed GOE eigenvalues, rows sorted decreasing."""
    out = np.empty((size, n))
    for lo, hi in _chunks(size):
        x = stream.rng.standard_normal((hi - lo, n, n))
        g = (x + np.swapaxes(x, 1, 2)) / 2.0
        out[lo:hi] = np.linalg.eigvalsh(g)[:, ::-1]
    return out


def goe_abs_batch(stream, n, size):
    """(size, n) rows of |GOE_n|: eigenvalue magnitudes sorted decreasing."""
    w = goe_eigenvalues_batch(stream, n, size)
    return np.sort(np.abs(w), axis=1)[:, ::-1]


def ague_batch(stream, n, size):
    """(size, m) rows of aGUE_n (collapsed skew singular values)."""
    frame = ParityFrame.from_order(n)
    out = np.empty((size, frame.m))
    for lo, hi in _chunks(size):
        x = stream.rng.standard_normal((hi - lo, n, n))
        a = (x - np.swapaxes(x, 1, 2)) / 2.0
        s = np.linalg.svd(a, compute_uv=False)
        tol = PAIR_TOL * s[:, 0]
        if frame.mu:
            if np.any(s[:, -1] > tol):
                raise ValueError("surplus singular value not zero")
            s = s[:, :-1]
        pairs = s.reshape(hi - lo, frame.m, 2)
        if frame.m and np.max(pairs[:, :, 0] - pairs[:, :, 1] - tol[:, None]) > 0:
            raise ValueError("singular values of skew matrix do not pair up")
        out[lo:hi] = pairs.mean(axis=2)
    return out


def gue_abs_batch(stream, n, size):
    """(size, n) rows of |GUE_n| under the beta=2 weight convention."""
    out = np.empty((size, n))
    scale = np.sqrt(0.5)
    for lo, hi in _chunks(size):
        x = scale * (
            stream.rng.standard_normal((hi - lo, n, n))
            + 1j * stream.rng.standard_normal((hi - lo, n, n))
        )
        g = (x + np.conj(np.swapaxes(x, 1, 2))) / 2.0
        w = np.linalg.eigvalsh(g)
        out[lo:hi] = np.sort(np.abs(w), axis=1)[:, ::-1]
    return out


def lue_batch(stream, m, a, size):
    """(size, m) rows of LUE_m eigenvalues with parameter a, decreasing."""
    if m < 1:
        raise ValueError("order must be >= 1")
    if not a > -1:
        raise ValueError("parameter must exceed -1")
    out = np.empty((size, m))
    for lo, hi in _chunks(size):
        b = _laguerre_bidiagonal(stream.rng, m, float(a), hi - lo)
        out[lo:hi] = np.linalg.svd(b, compute_uv=False) ** 2 / 2.0
    return out
