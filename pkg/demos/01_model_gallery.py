"""
Five samplers, one spectrum law
===============================

The package provides several ways to draw the sorted singular values of
a Gaussian symmetric matrix: the dense route (diagonalize), a bordered
sparse model, two bidiagonal pairs whose merged spectra reproduce the
full law, and a skew-symmetric route for the even-location half.  This
script draws from each and lines up the empirical quantiles.
"""

import numpy as np

from goesv.dense import ague_batch, goe_abs_batch
from goesv.gaps import ks_two_sample
from goesv.sparse import b_pair_sv_batch, h_sv_batch, r_pair_sv_batch
from goesv.streams import RandStream

n = 5
reps = 30_000

# dense reference: eigenvalues of (X + X') / 2, absolute values sorted
# decreasing
ref = goe_abs_batch(RandStream(1, 0), n, reps)

# bordered sparse model: same width, entirely different construction
bordered = h_sv_batch(RandStream(1, 1), n, reps)

# the two bidiagonal pairs: each draws (odd, even) halves whose union
# has the dense law
b_odd, b_even = b_pair_sv_batch(RandStream(1, 2), n, reps)
lower = np.sort(np.concatenate([b_odd, b_even], axis=1), axis=1)[:, ::-1]
r_odd, r_even = r_pair_sv_batch(RandStream(1, 3), n, reps)
upper = np.sort(np.concatenate([r_odd, r_even], axis=1), axis=1)[:, ::-1]

print("median singular value per location, %d samples each" % reps)
print("loc   dense  bordered  lower-pair  upper-pair")
for j in range(n):
    print(
        "%3d  %6.3f   %6.3f      %6.3f      %6.3f"
        % (
            j + 1,
            np.median(ref[:, j]),
            np.median(bordered[:, j]),
            np.median(lower[:, j]),
            np.median(upper[:, j]),
        )
    )

# per-location two-sample KS: all pairs should sit comfortably above
# the p > 1e-3 bar
print("\nKS p-values vs the dense reference")
for name, other in (("bordered", bordered), ("lower", lower), ("upper", upper)):
    ps = [ks_two_sample(ref[:, j], other[:, j]).p_value for j in range(n)]
    print("  %-9s min p = %.3f" % (name, min(ps)))

# the even-location half on its own: it is the collapsed positive
# spectrum of the skew part (X - X') / 2
dec = ref[:, 1::2]
skew = ague_batch(RandStream(1, 4), n, reps)
ps = [ks_two_sample(dec[:, j], skew[:, j]).p_value for j in range(dec.shape[1])]
print("  even decimation vs skew spectrum: min p = %.3f" % min(ps))
