"""Sparse models: bordered, tridiagonal, and the coupled bidiagonal pairs.

The entry layouts of the bidiagonal pairs are pinned against hand-frozen
matrices at small orders (the dominant hazard is an off-by-one in a chi
degree), then against per-entry sample means at larger orders, and finally
against the dense reference sampler in distribution.
"""

import numpy as np
import pytest

from goesv.dense import (
    SortedSpectrum,
    ague_batch,
    goe_abs_batch,
    sample_goe,
    symmetric_eigenvalues,
)
from goesv.determinant import chi_mean
from goesv.gaps import ks_one_sample, ks_two_sample
from goesv.sparse import (
    BidiagMatrix,
    BorderedModel,
    _b_pair_from_tau,
    _r_pair_from_xi,
    b_pair_sv_batch,
    bidiag_singular_values,
    build_B_pair,
    build_R_pair,
    decimate,
    h_sv_batch,
    r_pair_sv_batch,
    sample_bordered_H,
    sample_tridiagonal_T,
    t_sv_batch,
)
from goesv.streams import RandStream, chi_cdf

S2 = np.sqrt(2.0)


# ---------------------------------------------------------------------------
# containers


def test_bidiag_geometry_and_toarray():
    upper = BidiagMatrix(diag=[1.0, 2.0], offdiag=[5.0, 6.0], rows=2, cols=3)
    assert np.array_equal(upper.toarray(), [[1.0, 5.0, 0.0], [0.0, 2.0, 6.0]])
    assert np.array_equal(upper.superdiag, [5.0, 6.0])
    lower = BidiagMatrix(diag=[1.0, 2.0], offdiag=[7.0, 8.0], rows=3, cols=2, lower=True)
    assert np.array_equal(lower.toarray(), [[1.0, 0.0], [7.0, 2.0], [0.0, 8.0]])
    square = BidiagMatrix(diag=[1.0, 2.0], offdiag=[3.0], rows=2, cols=2)
    assert np.array_equal(square.toarray(), [[1.0, 3.0], [0.0, 2.0]])
    with pytest.raises(ValueError):
        BidiagMatrix(diag=[1.0], offdiag=[], rows=2, cols=2)
    with pytest.raises(ValueError):
        BidiagMatrix(diag=[1.0, 2.0], offdiag=[3.0, 4.0], rows=2, cols=2)
    with pytest.raises(ValueError):
        BidiagMatrix(diag=[np.inf], offdiag=[], rows=1, cols=1)
    with pytest.raises(ValueError):
        lower.superdiag


def test_decimate_pinned_examples():
    pair = decimate(SortedSpectrum([5.0, 4.0, 3.0, 2.0, 1.0], 5, "x"))
    assert np.array_equal(pair.t.values, [5.0, 3.0, 1.0])
    assert np.array_equal(pair.s.values, [4.0, 2.0])
    assert pair.frame.mu == 1
    pair = decimate(SortedSpectrum([2.0, 1.0], 2, "x"))
    assert np.array_equal(pair.t.values, [2.0])
    assert np.array_equal(pair.s.values, [1.0])
    with pytest.raises(ValueError):
        decimate(SortedSpectrum([1.0, -1.0], 2, "x", signed=True))
    with pytest.raises(ValueError):
        decimate(SortedSpectrum([2.0, 1.0], 3, "x"))


# ---------------------------------------------------------------------------
# bordered model


def test_bordered_model_validation_and_kinds():
    stream = RandStream(0)
    h = sample_bordered_H(stream, 4)
    assert h.border.size == 4
    assert np.all(h.border[1:] == 0.0) and h.border[0] > 0.0
    assert np.array_equal(h.skew, -h.skew.T)
    assert h.matrix().shape == (4, 5)
    g = sample_bordered_H(stream, 4, border_kind="gaussian")
    assert np.any(g.border[1:] != 0.0)
    with pytest.raises(ValueError):
        sample_bordered_H(stream, 3, border_kind="uniform")
    with pytest.raises(ValueError):
        BorderedModel(border=np.ones(2), skew=np.ones((2, 2)))


def test_bordered_order_one_is_chi_1():
    sv = h_sv_batch(RandStream(1), 1, 20_000).ravel()
    assert ks_one_sample(sv, lambda v: chi_cdf(v, 1)).p_value > 1e-3


def test_bordered_matches_dense_goe_magnitudes():
    for n, seed in ((3, 2), (4, 3), (6, 4)):
        ref = goe_abs_batch(RandStream(seed, 0), n, 20_000)
        h = h_sv_batch(RandStream(seed, 1), n, 20_000)
        for j in range(n):
            assert ks_two_sample(ref[:, j], h[:, j]).p_value > 1e-3, (n, j)


def test_bordered_border_kinds_agree():
    chi = h_sv_batch(RandStream(5, 0), 4, 20_000)
    gau = h_sv_batch(RandStream(5, 1), 4, 20_000, border_kind="gaussian")
    for j in range(4):
        assert ks_two_sample(chi[:, j], gau[:, j]).p_value > 1e-3


# ---------------------------------------------------------------------------
# tridiagonal model


def test_tridiagonal_structure_and_degrees():
    t = sample_tridiagonal_T(RandStream(6), 5)
    assert np.all(np.diag(t) == 0.0)
    assert np.array_equal(t, t.T)
    stream = RandStream(6, 1)
    off = np.array([np.diag(sample_tridiagonal_T(stream, 5), 1)
                    for _ in range(20_000)])
    # off-diagonal j carries chi_{n-1-j}/sqrt(2), top to bottom
    for j, deg in enumerate((4, 3, 2, 1)):
        se = off[:, j].std(ddof=1) / np.sqrt(off.shape[0])
        assert abs(off[:, j].mean() - chi_mean(deg) / S2) < 5.0 * se, (j, deg)
    with pytest.raises(ValueError):
        sample_tridiagonal_T(RandStream(0), 1)


def test_tridiagonal_order_two_law():
    sv = t_sv_batch(RandStream(7), 2, 20_000).ravel()
    assert ks_one_sample(sv, lambda v: chi_cdf(v * S2, 1)).p_value > 1e-3


def test_tridiagonal_matches_collapsed_skew():
    tri = t_sv_batch(RandStream(8, 0), 5, 20_000)
    skew = ague_batch(RandStream(8, 1), 5, 20_000)
    assert tri.shape == skew.shape
    for j in range(tri.shape[1]):
        assert ks_two_sample(tri[:, j], skew[:, j]).p_value > 1e-3


def test_tridiagonal_uncollapsed_keeps_full_spectrum():
    full = t_sv_batch(RandStream(9), 4, 100, collapse=False)
    assert full.shape == (100, 4)


# ---------------------------------------------------------------------------
# rectangular bidiagonal pair: hand-frozen layouts


def test_b_pair_frozen_layouts():
    # tau_k = k so every entry names its own chi degree.
    odd, even = _b_pair_from_tau(np.arange(1.0, 3.0), 2)
    assert np.allclose(even.toarray(), [[1 / S2]])
    assert np.allclose(odd.toarray(), [[2.0, 1 / S2]])

    odd, even = _b_pair_from_tau(np.arange(1.0, 4.0), 3)
    assert np.allclose(even.toarray(), [[2 / S2], [1 / S2]])
    assert np.allclose(odd.toarray(), [[3.0, 2 / S2], [0.0, 1 / S2]])

    odd, even = _b_pair_from_tau(np.arange(1.0, 5.0), 4)
    assert np.allclose(even.toarray(), [[3 / S2, 0.0], [2 / S2, 1 / S2]])
    assert np.allclose(odd.toarray(), [[4.0, 3 / S2, 0.0], [0.0, 2 / S2, 1 / S2]])

    odd, even = _b_pair_from_tau(np.arange(1.0, 6.0), 5)
    assert np.allclose(even.toarray(), [[4 / S2, 0.0], [3 / S2, 2 / S2], [0.0, 1 / S2]])
    assert np.allclose(
        odd.toarray(),
        [[5.0, 4 / S2, 0.0], [0.0, 3 / S2, 2 / S2], [0.0, 0.0, 1 / S2]],
    )


def test_b_pair_shapes_all_orders():
    for n in range(2, 10):
        m, mu = n // 2, n % 2
        odd, even = build_B_pair(RandStream(10, n), n)
        assert (even.rows, even.cols) == (m + mu, m)
        assert (odd.rows, odd.cols) == (m + mu, m + 1)
        assert even.lower and not odd.lower


def test_b_pair_entry_degrees_statistically():
    # Accumulate per-entry means at n = 6 and 7 and match them against the
    # exact chi means of the pinned degrees.
    for n, seed in ((6, 11), (7, 12)):
        m, mu = n // 2, n % 2
        reps = 20_000
        stream = RandStream(seed)
        acc_ed = np.zeros(m)
        acc_eo = np.zeros(m - 1 + mu)
        acc_od = np.zeros(m + mu)
        acc_oo = np.zeros(m)
        for _ in range(reps):
            odd, even = build_B_pair(stream, n)
            acc_ed += even.diag
            acc_eo += even.offdiag
            acc_od += odd.diag
            acc_oo += odd.offdiag
        se = 1.0 / np.sqrt(reps)  # chi variance is below 1 for every degree
        even_diag_deg = np.arange(n - 1, 0, -2)
        even_off_deg = np.arange(n - 2, 0, -2)
        assert np.all(np.abs(acc_ed / reps - chi_mean(even_diag_deg) / S2) < 5 * se)
        assert np.all(np.abs(acc_eo / reps - chi_mean(even_off_deg) / S2) < 5 * se)
        odd_diag_expect = np.concatenate([[chi_mean(n)], chi_mean(even_off_deg) / S2])
        assert np.all(np.abs(acc_od / reps - odd_diag_expect) < 5 * se)
        assert np.all(np.abs(acc_oo / reps - chi_mean(even_diag_deg) / S2) < 5 * se)


def test_b_pair_union_matches_dense_goe():
    n = 5
    odd, even = b_pair_sv_batch(RandStream(13, 0), n, 20_000)
    union = np.sort(np.concatenate([odd, even], axis=1), axis=1)[:, ::-1]
    ref = goe_abs_batch(RandStream(13, 1), n, 20_000)
    assert union.shape == ref.shape
    for j in range(n):
        assert ks_two_sample(union[:, j], ref[:, j]).p_value > 1e-3


def test_b_even_matches_even_decimation():
    n = 5
    stream = RandStream(14)
    evens = np.array([
        np.sort(bidiag_singular_values(build_B_pair(stream, n)[1]).values)[::-1]
        for _ in range(4_000)
    ])
    dec = goe_abs_batch(RandStream(15), n, 4_000)[:, 1::2]
    for j in range(n // 2):
        assert ks_two_sample(evens[:, j], dec[:, j]).p_value > 1e-3


# ---------------------------------------------------------------------------
# square bidiagonal pair


def test_r_pair_frozen_layouts():
    odd, even = _r_pair_from_xi(np.arange(1.0, 3.0), 2)
    assert np.allclose(even.toarray(), [[1 / S2]])
    assert np.allclose(odd.toarray(), [[3.0 / S2]])  # sqrt(1 + 2*4) = 3

    odd, even = _r_pair_from_xi(np.arange(1.0, 4.0), 3)
    assert np.allclose(even.toarray(), [[3 / S2]])
    assert np.allclose(odd.toarray(), [[1.0, 2.0], [0.0, 3 / S2]])

    odd, even = _r_pair_from_xi(np.arange(1.0, 5.0), 4)
    assert np.allclose(even.toarray(), [[1 / S2, 2 / S2], [0.0, 3 / S2]])
    assert np.allclose(
        odd.toarray(), [[np.sqrt(33.0) / S2, 2 / S2], [0.0, 3 / S2]]
    )

    odd, even = _r_pair_from_xi(np.arange(1.0, 6.0), 5)
    assert np.allclose(even.toarray(), [[5 / S2, 2 / S2], [0.0, 3 / S2]])
    assert np.allclose(
        odd.toarray(),
        [[1.0, 4.0, 0.0], [0.0, 5 / S2, 2 / S2], [0.0, 0.0, 3 / S2]],
    )


def test_r_even_ignores_the_coupling_degree():
    # mu=0: the even matrix never reads xi_{2m}; mu=1: neither xi_1 nor xi_{2m}.
    base = np.arange(1.0, 5.0)
    bumped = base.copy()
    bumped[3] = 99.0
    assert np.array_equal(
        _r_pair_from_xi(base, 4)[1].toarray(), _r_pair_from_xi(bumped, 4)[1].toarray()
    )
    base = np.arange(1.0, 6.0)
    bumped = base.copy()
    bumped[0] = 99.0
    bumped[3] = 77.0
    assert np.array_equal(
        _r_pair_from_xi(base, 5)[1].toarray(), _r_pair_from_xi(bumped, 5)[1].toarray()
    )


def test_r_pair_shapes_all_orders():
    for n in range(2, 10):
        m, mu = n // 2, n % 2
        odd, even = build_R_pair(RandStream(16, n), n)
        assert (even.rows, even.cols) == (m, m)
        assert (odd.rows, odd.cols) == (m + mu, m + mu)
    with pytest.raises(ValueError):
        build_R_pair(RandStream(0), 1)


def test_r_pair_order_two_product_is_goe_determinant():
    # sv(R_odd) * sv(R_even) = xi_1 sqrt(xi_1^2 + 2 xi_2^2) / 2 = |det G_2|.
    stream = RandStream(17)
    prods = np.empty(20_000)
    for i in range(prods.size):
        odd, even = build_R_pair(stream, 2)
        prods[i] = odd.diag[0] * even.diag[0]
    gstream = RandStream(18)
    dets = np.abs([np.linalg.det(sample_goe(gstream, 2)) for _ in range(20_000)])
    assert ks_two_sample(prods, np.asarray(dets)).p_value > 1e-3


def test_r_pair_union_matches_dense_goe():
    n = 4
    odd, even = r_pair_sv_batch(RandStream(19, 0), n, 20_000)
    union = np.sort(np.concatenate([odd, even], axis=1), axis=1)[:, ::-1]
    ref = goe_abs_batch(RandStream(19, 1), n, 20_000)
    for j in range(n):
        assert ks_two_sample(union[:, j], ref[:, j]).p_value > 1e-3


def test_r_pair_interlaces_per_sample():
    stream = RandStream(20)
    for n in (4, 5, 8, 9):
        for _ in range(200):
            odd, even = build_R_pair(stream, n)
            t = bidiag_singular_values(odd).values
            s = bidiag_singular_values(even).values
            merged = np.empty(t.size + s.size)
            merged[0::2] = t
            merged[1::2] = s
            assert np.all(np.diff(merged) <= 1e-12)


def test_r_pair_entry_degrees_statistically():
    # Per-entry means at n = 6 and 7, skipping the composite/unscaled
    # coupling entries which are pinned by the frozen layouts above.
    for n, seed in ((6, 21), (7, 22)):
        m, mu = n // 2, n % 2
        reps = 20_000
        stream = RandStream(seed)
        acc_ed = np.zeros(m)
        acc_eo = np.zeros(m - 1)
        acc_od = np.zeros(m + mu)
        acc_oo = np.zeros(m - 1 + mu)
        for _ in range(reps):
            odd, even = build_R_pair(stream, n)
            acc_ed += even.diag
            acc_eo += even.offdiag
            acc_od += odd.diag
            acc_oo += odd.offdiag
        se = 1.0 / np.sqrt(reps)
        if mu == 0:
            even_diag_deg = np.array([1] + list(range(n - 1, 2, -2)))
        else:
            even_diag_deg = np.arange(n, 2, -2)
        even_off_deg = np.arange(n - 2 - mu, 0, -2)
        assert np.all(np.abs(acc_ed / reps - chi_mean(even_diag_deg) / S2) < 5 * se)
        assert np.all(np.abs(acc_eo / reps - chi_mean(even_off_deg) / S2) < 5 * se)
        if mu == 0:
            # odd diag shares the even layout except the composite corner
            assert np.all(
                np.abs(acc_od[1:] / reps - chi_mean(even_diag_deg[1:]) / S2) < 5 * se
            )
            assert np.all(np.abs(acc_oo / reps - chi_mean(even_off_deg) / S2) < 5 * se)
        else:
            odd_diag_deg = np.concatenate([[1], even_diag_deg])
            scale = np.concatenate([[1.0], np.full(m, S2)])
            assert np.all(
                np.abs(acc_od / reps - chi_mean(odd_diag_deg) / scale) < 5 * se
            )
            odd_off_deg = np.concatenate([[n - 1], even_off_deg])
            oscale = np.concatenate([[1.0], np.full(m - 1, S2)])
            assert np.all(
                np.abs(acc_oo / reps - chi_mean(odd_off_deg) / oscale) < 5 * se
            )


# ---------------------------------------------------------------------------
# bidiagonal singular values


def test_bidiag_singular_values_pinned():
    one = BidiagMatrix(diag=[3.0], offdiag=[], rows=1, cols=1)
    assert np.allclose(bidiag_singular_values(one).values, [3.0])
    two = BidiagMatrix(diag=[1.0, 1.0], offdiag=[0.0], rows=2, cols=2)
    assert np.allclose(bidiag_singular_values(two).values, [1.0, 1.0])


def test_bidiag_singular_values_match_dense():
    rng = RandStream(23).rng
    b = BidiagMatrix(
        diag=rng.uniform(0.5, 2.0, 5), offdiag=rng.uniform(0.5, 2.0, 4),
        rows=5, cols=5,
    )
    dense = np.linalg.svd(b.toarray(), compute_uv=False)
    mine = bidiag_singular_values(b).values
    assert np.allclose(mine, dense, rtol=1e-10)


# ---------------------------------------------------------------------------
# batch kernels agree with the scalar builders


def test_batch_pair_kernels_match_scalar():
    n = 5
    stream = RandStream(24)
    scalar = np.array([
        np.sort(np.concatenate([
            bidiag_singular_values(p[0]).values, bidiag_singular_values(p[1]).values
        ]))[::-1]
        for p in (build_R_pair(stream, n) for _ in range(4_000))
    ])
    odd, even = r_pair_sv_batch(RandStream(25), n, 4_000)
    batch = np.sort(np.concatenate([odd, even], axis=1), axis=1)[:, ::-1]
    for j in range(n):
        assert ks_two_sample(scalar[:, j], batch[:, j]).p_value > 1e-3

    stream = RandStream(26)
    scalar = np.array([
        np.sort(np.concatenate([
            bidiag_singular_values(p[0]).values, bidiag_singular_values(p[1]).values
        ]))[::-1]
        for p in (build_B_pair(stream, n) for _ in range(4_000))
    ])
    odd, even = b_pair_sv_batch(RandStream(27), n, 4_000)
    batch = np.sort(np.concatenate([odd, even], axis=1), axis=1)[:, ::-1]
    for j in range(n):
        assert ks_two_sample(scalar[:, j], batch[:, j]).p_value > 1e-3
