"""
Decimation as a change of variables
===================================

Split a sorted spectrum into odd locations t and even locations s.  The
package's transform replaces t by a coupling vector r = phi_inverse(t, s)
and back, with an explicit Jacobian.  On Gaussian symmetric input the
couplings come out as independent chi variables: that is the change of
variables doing the work.
"""

import numpy as np

from goesv import interlace
from goesv.dense import goe_abs_batch
from goesv.gaps import ks_one_sample
from goesv.streams import RandStream, chi_cdf

# one spectrum, pulled apart and put back together --------------------

rng = RandStream(2).rng
x = rng.standard_normal((7, 7))
g = (x + x.T) / 2.0
sv = np.sort(np.abs(np.linalg.eigvalsh(g)))[::-1]
t, s = sv[0::2], sv[1::2]
print("odd locations  t =", np.round(t, 4))
print("even locations s =", np.round(s, 4))

r = interlace.phi_inverse(t, s)
print("couplings      r =", np.round(r.r, 4))

back = interlace.phi_forward(r, s)
print("round-trip max relative error: %.2e" % np.max(np.abs(back.values - t) / t))

# conservation: the transform trades sum of squares exactly
lhs = np.sum(t**2)
rhs = np.sum(r.r**2) + np.sum(s**2)
print("sum-of-squares conservation:   %.2e" % (abs(lhs - rhs) / lhs))

# the analytic Jacobian against a finite-difference probe
analytic = interlace.jacobian_det(t, s, r)
fd = interlace.jacobian_det_fd(t, s)
print("jacobian analytic vs FD:       %.2e" % (abs(analytic - fd) / analytic))

# the law of the couplings -------------------------------------------

# pull r back from many dense samples: the first m components are
# chi_2, the last is chi_1 when the order is odd
n, reps = 5, 50_000
spec = goe_abs_batch(RandStream(3), n, reps)
rr = interlace.phi_inverse_batch(spec[:, 0::2], spec[:, 1::2], n % 2)
print("\ncoupling laws from %d order-%d spectra" % (reps, n))
for j, k in ((0, 2), (1, 2), (2, 1)):
    rep = ks_one_sample(rr[:, j], lambda v, k=k: chi_cdf(v, k))
    print("  r_%d vs chi_%d: KS p = %.3f" % (j + 1, k, rep.p_value))
