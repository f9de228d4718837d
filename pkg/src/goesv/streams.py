"""Deterministic, splittable random streams and the chi-type scalar draws.

Every sampler in this package consumes a RandStream.  A stream is keyed by
(seed, stream_id): equal keys replay the identical sequence, distinct keys
give statistically independent generators.  Monte Carlo drivers that shard
work across workers hand each shard its own stream_id (or a spawned
substream), so results are a pure function of the seed and the shard plan.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special


class RandStream:
    """Stateful random stream keyed by (seed, stream_id).

    Parameters
    ----------
    seed : int
        Nonnegative base seed, shared by all streams of one experiment.
    stream_id : int
        Nonnegative shard index.  Streams with distinct ids are independent.

    Notes
    -----
    Internally a PCG64 generator keyed through a seed sequence with
    spawn_key (stream_id, ...), the hash-based splitting scheme, so
    independence across ids holds by construction rather than by jumping
    a shared state.  The stream is single-owner: never share one instance
    across concurrent workers, spawn substreams instead.
    """

    def __init__(self, seed, stream_id=0, _subkey=()):
        seed = int(seed)
        stream_id = int(stream_id)
        if seed < 0:
            raise ValueError("seed must be nonnegative")
        if stream_id < 0:
            raise ValueError("stream_id must be nonnegative")
        self.seed = seed
        self.stream_id = stream_id
        self._key = (stream_id,) + tuple(int(k) for k in _subkey)
        self.rng = np.random.default_rng(
            np.random.SeedSequence(seed, spawn_key=self._key)
        )

    def substream(self, index):
        """Independent child stream, deterministic in (seed, stream_id, index)."""
        if index < 0:
            raise ValueError("substream index must be nonnegative")
        return RandStream(self.seed, self.stream_id, _subkey=self._key[1:] + (index,))

    def __repr__(self):
        return f"RandStream(seed={self.seed}, key={self._key})"


@dataclass(frozen=True)
class ChiDraws:
    """A vector of independent chi-distributed values and their degrees.

    values[k] is distributed as chi with degrees[k] degrees of freedom.
    """

    values: np.ndarray
    degrees: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        object.__setattr__(self, "degrees", np.asarray(self.degrees, dtype=float))
        if self.values.shape != self.degrees.shape:
            raise ValueError("values and degrees must have equal length")

    def __len__(self):
        return self.values.size


def sample_normal(stream, size=None):
    """Standard normal draw(s); advances the stream."""
    return stream.rng.standard_normal() if size is None else stream.rng.standard_normal(size)


def sample_chi(stream, k, size=None):
    """chi_k draw(s): the square root of a chi-squared variable with k dof.

    k may be any positive real, which covers the half-integer degrees the
    Laguerre sampler needs; the underlying gamma sampler is valid for all
    shapes >= 1/2 and below.
    """
    if not k > 0:
        raise ValueError("degrees of freedom must be positive")
    return np.sqrt(stream.rng.chisquare(k, size=size))


def sample_chi_sequence(stream, degrees):
    """Mutually independent chi draws, one per entry of degrees, in order."""
    deg = np.asarray(degrees, dtype=float)
    if deg.size == 0:
        return ChiDraws(np.empty(0), np.empty(0))
    if not np.all(deg > 0):
        raise ValueError("all degrees must be positive")
    return ChiDraws(np.sqrt(stream.rng.chisquare(deg)), deg)


def chi_cdf(x, k):
    """Analytic chi_k CDF via the regularized lower incomplete gamma."""
    if not k > 0:
        raise ValueError("degrees of freedom must be positive")
    x = np.asarray(x, dtype=float)
    out = special.gammainc(k / 2.0, np.square(np.clip(x, 0.0, None)) / 2.0)
    return out if out.shape else float(out)


def chi_pdf(x, k):
    """chi_k density, zero for x <= 0."""
    if not k > 0:
        raise ValueError("degrees of freedom must be positive")
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        logpdf = (
            (1.0 - k / 2.0) * np.log(2.0)
            - special.gammaln(k / 2.0)
            + (k - 1.0) * np.log(x)
            - x * x / 2.0
        )
    out = np.where(x > 0, np.exp(logpdf), 0.0)
    return out if out.shape else float(out)
