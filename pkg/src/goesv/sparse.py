"""Sparse matrix models for |GOE_n| and its even/odd decimations.

Five constructions, all proved equivalent in law to the dense reference:

* bordered skew matrix  H = (b  A), n x (n+1), with b either tau_n e_1
  (tau_n ~ chi_n) or a standard normal vector -- singular values ~ |GOE_n|;
* symmetric tridiagonal T with zero diagonal and off-diagonal entries
  tau_{n-1}, ..., tau_1 over sqrt(2) -- singular values ~ the skew part's;
* rectangular bidiagonal pair (B_odd, B_even) whose singular values split
  |GOE_n| into the odd- and even-location subsequences;
* square bidiagonal pair (R_odd, R_even) doing the same with one fewer
  dimension, the basis of the determinant factorization;
* the decimation operator itself.

Entry layouts follow the printed models verbatim; tau_k and xi_k are
independent chi_k draws, and the coupled pairs share a single draw, so
joint statements (interlacing sample-by-sample, shared factors) are
testable, not only the marginal laws.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dense import PAIR_TOL, ParityFrame, SortedSpectrum
from .streams import RandStream

_SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class BidiagMatrix:
    """A bidiagonal matrix stored as its two nonzero diagonals.

    diag holds the (i,i) entries; offdiag the (i,i+1) entries when
    lower=False (upper bidiagonal) or the (i+1,i) entries when lower=True.
    """

    diag: np.ndarray
    offdiag: np.ndarray
    rows: int
    cols: int
    lower: bool = False

    def __post_init__(self):
        d = np.asarray(self.diag, dtype=float)
        e = np.asarray(self.offdiag, dtype=float)
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "offdiag", e)
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix must be nonempty")
        if d.size != min(self.rows, self.cols):
            raise ValueError("diagonal length does not match shape")
        if self.lower:
            expected = min(self.rows - 1, self.cols)
        else:
            expected = min(self.rows, self.cols - 1)
        if e.size != expected:
            raise ValueError("off-diagonal length does not match shape")
        if not (np.all(np.isfinite(d)) and np.all(np.isfinite(e))):
            raise ValueError("entries must be finite")

    @property
    def superdiag(self):
        if self.lower:
            raise ValueError("matrix is lower bidiagonal")
        return self.offdiag

    def toarray(self):
        a = np.zeros((self.rows, self.cols))
        k = self.diag.size
        a[np.arange(k), np.arange(k)] = self.diag
        j = self.offdiag.size
        if j:
            if self.lower:
                a[np.arange(1, j + 1), np.arange(j)] = self.offdiag
            else:
                a[np.arange(j), np.arange(1, j + 1)] = self.offdiag
        return a


@dataclass(frozen=True)
class DecimatedPair:
    """Odd- and even-location singular values t, s of one spectrum.

    t has length mhat, s length m; they interlace,
    t_1 >= s_1 >= t_2 >= ... >= t_mhat (>= s_mhat = 0 formally when mu=1).
    """

    t: SortedSpectrum
    s: SortedSpectrum
    frame: ParityFrame

    def __post_init__(self):
        t, s = self.t.values, self.s.values
        if t.size != self.frame.mhat or s.size != self.frame.m:
            raise ValueError("decimation lengths do not match the parity frame")
        if np.any(t[: s.size] < s) or np.any(s[: t.size - 1] < t[1:]):
            raise ValueError("decimated values do not interlace")


@dataclass(frozen=True)
class BorderedModel:
    """The bordered matrix H = (border  skew), border as first column."""

    border: np.ndarray
    skew: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.border, dtype=float)
        a = np.asarray(self.skew, dtype=float)
        object.__setattr__(self, "border", b)
        object.__setattr__(self, "skew", a)
        n = b.size
        if a.shape != (n, n):
            raise ValueError("skew block must be square of the border's length")
        if np.any(a != -a.T):
            raise ValueError("skew block must be skew-symmetric")

    def matrix(self):
        return np.concatenate([self.border[:, None], self.skew], axis=1)


def decimate(spec):
    """Split a sorted nonnegative spectrum by location parity.

    Position 1 (largest), 3, 5, ... go to t; positions 2, 4, ... to s.
    The input must be the full spectrum: len(values) == order.
    """
    v = spec.values
    if spec.signed or (v.size and v[-1] < 0):
        raise ValueError("decimation expects a nonnegative spectrum")
    if v.size != spec.order:
        raise ValueError("decimation expects the full spectrum of its order")
    frame = ParityFrame.from_order(v.size)
    t = SortedSpectrum(v[0::2].copy(), spec.order, "odd_dec")
    s = SortedSpectrum(v[1::2].copy(), spec.order, "even_dec")
    return DecimatedPair(t=t, s=s, frame=frame)


def sample_bordered_H(stream, n, border_kind="chi_n_e1"):
    """One bordered model H = (b  A) with skew Gaussian A of order n.

    border_kind "chi_n_e1" takes b = tau_n e_1 with tau_n ~ chi_n;
    "gaussian" takes b iid standard normal.  Either way the singular
    values of H are jointly distributed as |GOE_n|.
    """
    if n < 1:
        raise ValueError("order must be >= 1")
    x = stream.rng.standard_normal((n, n))
    skew = (x - x.T) / 2.0
    if border_kind == "chi_n_e1":
        border = np.zeros(n)
        border[0] = np.sqrt(stream.rng.chisquare(n))
    elif border_kind == "gaussian":
        border = stream.rng.standard_normal(n)
    else:
        raise ValueError(f"unknown border kind: {border_kind!r}")
    return BorderedModel(border=border, skew=skew)


def sample_tridiagonal_T(stream, n):
    """Symmetric tridiagonal matrix with zero diagonal, off-diagonal
    entries tau_{n-1}, ..., tau_1 over sqrt(2) from top to bottom; its
    singular values match those of the skew Gaussian matrix of order n."""
    if n < 2:
        raise ValueError("order must be >= 2")
    off = np.sqrt(stream.rng.chisquare(np.arange(n - 1, 0, -1))) / _SQRT2
    t = np.zeros((n, n))
    idx = np.arange(n - 1)
    t[idx, idx + 1] = off
    t[idx + 1, idx] = off
    return t


def _b_pair_from_tau(tau, n):
    """Assemble (B_odd, B_even) from tau[k-1] playing the chi_k role."""
    frame = ParityFrame.from_order(n)
    m, mu = frame.m, frame.mu
    tau = np.asarray(tau, dtype=float)
    if mu == 0:
        even = BidiagMatrix(
            diag=tau[np.arange(2 * m - 1, 0, -2) - 1] / _SQRT2,
            offdiag=tau[np.arange(2 * m - 2, 0, -2) - 1] / _SQRT2,
            rows=m, cols=m, lower=True,
        )
        odd_diag = np.concatenate([[tau[n - 1]], even.offdiag])
        odd = BidiagMatrix(
            diag=odd_diag, offdiag=even.diag, rows=m, cols=m + 1, lower=False,
        )
    else:
        even = BidiagMatrix(
            diag=tau[np.arange(2 * m, 0, -2) - 1] / _SQRT2,
            offdiag=tau[np.arange(2 * m - 1, 0, -2) - 1] / _SQRT2,
            rows=m + 1, cols=m, lower=True,
        )
        odd = BidiagMatrix(
            diag=np.concatenate([[tau[n - 1]], even.offdiag]),
            offdiag=even.diag, rows=m + 1, cols=m + 1, lower=False,
        )
    return odd, even


def build_B_pair(stream, n):
    """Coupled rectangular bidiagonal pair (B_odd, B_even), one tau draw.

    B_even is (m+mu) x m lower bidiagonal with entries tau_k/sqrt(2); B_odd
    is the same matrix bordered by a first column tau_n e_1 (unscaled).
    Their singular values are jointly the odd/even decimation of one
    |GOE_n| sample.
    """
    if n < 2:
        raise ValueError("order must be >= 2")
    tau = np.sqrt(stream.rng.chisquare(np.arange(1.0, n + 1)))
    return _b_pair_from_tau(tau, n)


def _r_pair_from_xi(xi, n):
    """Assemble (R_odd, R_even) from xi[k-1] playing the chi_k role."""
    frame = ParityFrame.from_order(n)
    m, mu = frame.m, frame.mu
    xi = np.asarray(xi, dtype=float)
    if mu == 0:
        even_diag = np.concatenate([[xi[0]], xi[np.arange(2 * m - 1, 2, -2) - 1]])
        superdiag = xi[np.arange(2 * m - 2, 0, -2) - 1]
        even = BidiagMatrix(
            diag=even_diag / _SQRT2, offdiag=superdiag / _SQRT2,
            rows=m, cols=m, lower=False,
        )
        odd_diag = even_diag.copy()
        odd_diag[0] = np.sqrt(xi[0] ** 2 + 2.0 * xi[2 * m - 1] ** 2)
        odd = BidiagMatrix(
            diag=odd_diag / _SQRT2, offdiag=superdiag / _SQRT2,
            rows=m, cols=m, lower=False,
        )
    else:
        even_diag = xi[np.arange(2 * m + 1, 2, -2) - 1]
        superdiag = xi[np.arange(2 * m - 2, 0, -2) - 1]
        even = BidiagMatrix(
            diag=even_diag / _SQRT2, offdiag=superdiag / _SQRT2,
            rows=m, cols=m, lower=False,
        )
        odd = BidiagMatrix(
            diag=np.concatenate([[xi[0]], even_diag / _SQRT2]),
            offdiag=np.concatenate([[xi[2 * m - 1]] if m else [], superdiag / _SQRT2]),
            rows=m + 1, cols=m + 1, lower=False,
        )
    return odd, even


def build_R_pair(stream, n):
    """Coupled square bidiagonal pair (R_odd, R_even), one xi draw.

    For even n = 2m both are m x m upper bidiagonal with diagonal
    xi_1, xi_{2m-1}, ..., xi_3 and superdiagonal xi_{2m-2}, ..., xi_2, all
    over sqrt(2); R_odd replaces the top-left entry by
    sqrt(xi_1^2 + 2 xi_{2m}^2)/sqrt(2).  For odd n = 2m+1, R_even is m x m
    with diagonal xi_{2m+1}, xi_{2m-1}, ..., xi_3, and R_odd is (m+1) x (m+1)
    with unscaled first row (xi_1, xi_{2m}) on top of the same block.
    Singular values are jointly the odd/even decimation of one |GOE_n|.
    """
    if n < 2:
        raise ValueError("order must be >= 2")
    xi = np.sqrt(stream.rng.chisquare(np.arange(1.0, n + 1)))
    return _r_pair_from_xi(xi, n)


def bidiag_singular_values(b):
    """Singular values of a BidiagMatrix, decreasing."""
    s = np.linalg.svd(b.toarray(), compute_uv=False)
    return SortedSpectrum(s, min(b.rows, b.cols), "sv")


# ---------------------------------------------------------------------------
# batch kernels


def _chunks(size, chunk=100_000):
    done = 0
    while done < size:
        yield done, min(done + chunk, size)
        done = min(done + chunk, size)


def _chi_matrix(rng, degrees, size):
    """(size, len(degrees)) independent chi draws, column k of degrees[k]."""
    return np.sqrt(rng.chisquare(np.asarray(degrees, dtype=float), size=(size, len(degrees))))


def h_sv_batch(stream, n, size, border_kind="chi_n_e1"):
    """(size, n) singular values of the bordered model, rows decreasing."""
    out = np.empty((size, n))
    for lo, hi in _chunks(size):
        c = hi - lo
        x = stream.rng.standard_normal((c, n, n))
        h = np.empty((c, n, n + 1))
        h[:, :, 1:] = (x - np.swapaxes(x, 1, 2)) / 2.0
        if border_kind == "chi_n_e1":
            h[:, :, 0] = 0.0
            h[:, 0, 0] = np.sqrt(stream.rng.chisquare(float(n), size=c))
        elif border_kind == "gaussian":
            h[:, :, 0] = stream.rng.standard_normal((c, n))
        else:
            raise ValueError(f"unknown border kind: {border_kind!r}")
        out[lo:hi] = np.linalg.svd(h, compute_uv=False)
    return out


def t_sv_batch(stream, n, size, collapse=True):
    """Singular values of the tridiagonal model; collapsed to the m distinct
    values by default (matching the anti-GUE spectrum)."""
    frame = ParityFrame.from_order(n)
    cols = frame.m if collapse else n
    out = np.empty((size, cols))
    idx = np.arange(n - 1)
    for lo, hi in _chunks(size):
        c = hi - lo
        off = _chi_matrix(stream.rng, np.arange(n - 1, 0, -1), c) / _SQRT2
        t = np.zeros((c, n, n))
        t[:, idx, idx + 1] = off
        t[:, idx + 1, idx] = off
        s = np.linalg.svd(t, compute_uv=False)
        if collapse:
            tol = PAIR_TOL * s[:, 0]
            if frame.mu:
                if np.any(s[:, -1] > tol):
                    raise ValueError("surplus singular value not zero")
                s = s[:, :-1]
            pairs = s.reshape(c, frame.m, 2)
            if frame.m and np.max(pairs[:, :, 0] - pairs[:, :, 1] - tol[:, None]) > 0:
                raise ValueError("tridiagonal singular values do not pair up")
            s = pairs.mean(axis=2)
        out[lo:hi] = s
    return out


def _stack_bidiag(diag, offdiag, rows, cols, lower):
    """Stack (c, rows, cols) dense matrices from per-sample diagonals."""
    c = diag.shape[0]
    a = np.zeros((c, rows, cols))
    k = diag.shape[1]
    a[:, np.arange(k), np.arange(k)] = diag
    j = offdiag.shape[1]
    if j:
        if lower:
            a[:, np.arange(1, j + 1), np.arange(j)] = offdiag
        else:
            a[:, np.arange(j), np.arange(1, j + 1)] = offdiag
    return a


def b_pair_sv_batch(stream, n, size):
    """Singular values of the coupled B pair: (odd (size, mhat), even (size, m))."""
    frame = ParityFrame.from_order(n)
    m, mu = frame.m, frame.mu
    odd_sv = np.empty((size, frame.mhat))
    even_sv = np.empty((size, m))
    for lo, hi in _chunks(size):
        c = hi - lo
        tau = _chi_matrix(stream.rng, np.arange(1, n + 1), c)
        if mu == 0:
            ediag = tau[:, np.arange(2 * m - 1, 0, -2) - 1] / _SQRT2
            eoff = tau[:, np.arange(2 * m - 2, 0, -2) - 1] / _SQRT2
            even = _stack_bidiag(ediag, eoff, m, m, lower=True)
            odiag = np.concatenate([tau[:, n - 1 : n], eoff], axis=1)
            odd = _stack_bidiag(odiag, ediag, m, m + 1, lower=False)
        else:
            ediag = tau[:, np.arange(2 * m, 0, -2) - 1] / _SQRT2
            eoff = tau[:, np.arange(2 * m - 1, 0, -2) - 1] / _SQRT2
            even = _stack_bidiag(ediag, eoff, m + 1, m, lower=True)
            odiag = np.concatenate([tau[:, n - 1 : n], eoff], axis=1)
            odd = _stack_bidiag(odiag, ediag, m + 1, m + 1, lower=False)
        odd_sv[lo:hi] = np.linalg.svd(odd, compute_uv=False)
        even_sv[lo:hi] = np.linalg.svd(even, compute_uv=False)
    return odd_sv, even_sv


def r_pair_sv_batch(stream, n, size):
    """Singular values of the coupled R pair: (odd (size, mhat), even (size, m))."""
    frame = ParityFrame.from_order(n)
    m, mu = frame.m, frame.mu
    odd_sv = np.empty((size, frame.mhat))
    even_sv = np.empty((size, m))
    for lo, hi in _chunks(size):
        c = hi - lo
        xi = _chi_matrix(stream.rng, np.arange(1, n + 1), c)
        superdiag = xi[:, np.arange(2 * m - 2, 0, -2) - 1] / _SQRT2
        if mu == 0:
            ediag = np.concatenate(
                [xi[:, 0:1], xi[:, np.arange(2 * m - 1, 2, -2) - 1]], axis=1
            ) / _SQRT2
            even = _stack_bidiag(ediag, superdiag, m, m, lower=False)
            odiag = ediag.copy()
            odiag[:, 0] = np.sqrt(xi[:, 0] ** 2 + 2.0 * xi[:, 2 * m - 1] ** 2) / _SQRT2
            odd = _stack_bidiag(odiag, superdiag, m, m, lower=False)
        else:
            ediag = xi[:, np.arange(2 * m + 1, 2, -2) - 1] / _SQRT2
            even = _stack_bidiag(ediag, superdiag, m, m, lower=False)
            odiag = np.concatenate([xi[:, 0:1], ediag], axis=1)
            ooff = np.concatenate([xi[:, 2 * m - 1 : 2 * m], superdiag], axis=1)
            odd = _stack_bidiag(odiag, ooff, m + 1, m + 1, lower=False)
        odd_sv[lo:hi] = np.linalg.svd(odd, compute_uv=False)
        even_sv[lo:hi] = np.linalg.svd(even, compute_uv=False)
    return odd_sv, even_sv
