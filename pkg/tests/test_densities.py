"""Exact density evaluators: closed-form pins, quadrature masses, and the
sign-sum factorization."""

import math

import numpy as np
import pytest
from scipy import integrate, special

from goesv.dense import ParityFrame, SortedSpectrum, goe_abs_batch
from goesv.densities import (
    DensityContext,
    EKappaVector,
    conditional_t_given_s,
    even_marginal,
    factored_D,
    g_factor,
    integrate_out_check,
    joint_density_ts,
    joint_density_xy,
    log_even_marginal,
    log_joint_density_ts,
    log_odd_marginal,
    normalization_c,
    odd_marginal,
    signed_sum_D,
)
from goesv.interlace import XYCoords
from goesv.streams import RandStream

CTX = {n: DensityContext.for_order(n) for n in (1, 2, 3, 4, 5, 6)}


# ---------------------------------------------------------------------------
# normalization constants


def test_normalization_closed_forms():
    # Hand-reduced smallest cases: 1/sqrt(2 pi), 1/(4 sqrt(pi)), sqrt(2)/(12 pi).
    assert normalization_c(1) == pytest.approx(1.0 / math.sqrt(2.0 * math.pi), rel=1e-10)
    assert normalization_c(2) == pytest.approx(1.0 / (4.0 * math.sqrt(math.pi)), rel=1e-10)
    assert normalization_c(3) == pytest.approx(math.sqrt(2.0) / (12.0 * math.pi), rel=1e-10)


def test_normalization_bounds():
    with pytest.raises(ValueError):
        normalization_c(0)
    with pytest.raises(ValueError):
        normalization_c(9)


def test_context_constants_consistent():
    for n, ctx in CTX.items():
        frame = ParityFrame.from_order(n)
        assert ctx.frame == frame
        assert ctx.delta_mu == pytest.approx((math.pi / 2.0) ** (frame.mu / 2.0))
        expect = ctx.c_n * ctx.delta_mu * 2.0**n * math.factorial(n) / math.factorial(frame.m)
        assert ctx.a_n == pytest.approx(expect, rel=1e-12)


def test_a_n_normalizes_collapsed_skew_density():
    # a_n prod s^{2 mu} e^{-s^2} Delta(s^2)^2 integrates to 1 over the
    # unordered positive orthant; checked for m = 1 and m = 2.
    for n in (2, 3):
        ctx = CTX[n]
        mu = ctx.frame.mu
        total, _ = integrate.quad(lambda s: ctx.a_n * s ** (2 * mu) * np.exp(-s * s), 0, np.inf)
        assert total == pytest.approx(1.0, abs=1e-8)
    for n in (4, 5):
        ctx = CTX[n]
        mu = ctx.frame.mu

        def dens(s1, s2, mu=mu, a=ctx.a_n):
            return (
                a * (s1 * s2) ** (2 * mu)
                * np.exp(-s1 * s1 - s2 * s2) * (s1 * s1 - s2 * s2) ** 2
            )

        total, _ = integrate.dblquad(dens, 0, np.inf, 0, np.inf, epsabs=1e-10)
        assert total == pytest.approx(1.0, abs=1e-6)


# ---------------------------------------------------------------------------
# joint densities


def test_joint_ts_order_two_ratio():
    # q(t, s) for n = 2 is proportional to t e^{-(t^2+s^2)/2}, so the
    # ratio at t = 2 vs t = 3 (s = 1 fixed) is (2/3) e^{5/2}.
    ctx = CTX[2]
    num = joint_density_ts([2.0], [1.0], ctx)
    den = joint_density_ts([3.0], [1.0], ctx)
    assert num / den == pytest.approx((2.0 / 3.0) * math.exp(2.5), rel=1e-12)


def test_joint_ts_order_two_closed_form():
    ctx = CTX[2]
    for t, s in ((2.0, 1.0), (3.5, 0.2), (1.1, 1.0)):
        expect = 8.0 * ctx.c_n * t * math.exp(-(t * t + s * s) / 2.0)
        assert joint_density_ts([t], [s], ctx) == pytest.approx(expect, rel=1e-12)


def test_joint_ts_support():
    ctx = CTX[2]
    assert joint_density_ts([1.0], [2.0], ctx) == 0.0
    ctx3 = CTX[3]
    assert joint_density_ts([3.0, 1.0], [2.0], ctx3) > 0.0
    assert joint_density_ts([3.0, 2.5], [2.0], ctx3) == 0.0
    assert joint_density_ts([3.0, -0.5], [2.0], ctx3) == 0.0


def test_joint_ts_mass_order_two():
    ctx = CTX[2]
    total, _ = integrate.dblquad(
        lambda t, s: joint_density_ts([t], [s], ctx),
        0, np.inf, lambda s: s, lambda s: np.inf, epsabs=1e-9,
    )
    assert total == pytest.approx(1.0, abs=1e-6)


def test_joint_ts_mass_order_three():
    ctx = CTX[3]
    total, _ = integrate.nquad(
        lambda t2, t1, s1: joint_density_ts([t1, t2], [s1], ctx),
        [lambda t1, s1: [0.0, s1], lambda s1: [s1, np.inf], [0.0, np.inf]],
        opts={"epsabs": 1e-9, "epsrel": 1e-9},
    )
    assert total == pytest.approx(1.0, abs=1e-6)


def test_joint_xy_matches_ts_on_samples():
    # The two coordinate systems label the same ordered density.
    stream = RandStream(0)
    for n in (2, 3, 4, 5):
        ctx = CTX[n]
        rows = goe_abs_batch(stream, n, 25)
        for row in rows:
            asc = row[::-1]
            xy = XYCoords(x=asc[0::2].copy(), y=asc[1::2].copy())
            via_xy = joint_density_xy(xy, ctx)
            via_ts = joint_density_ts(row[0::2], row[1::2], ctx)
            assert via_xy == pytest.approx(via_ts, rel=1e-12)


def test_joint_xy_order_one_half_normal():
    ctx = CTX[1]
    val = joint_density_xy(XYCoords(x=[0.0], y=[]), ctx)
    assert val == pytest.approx(math.sqrt(2.0 / math.pi), rel=1e-10)
    # and the whole n=1 density is the half-normal
    for x in (0.5, 1.0, 2.5):
        expect = math.sqrt(2.0 / math.pi) * math.exp(-x * x / 2.0)
        assert joint_density_xy(XYCoords(x=[x], y=[]), ctx) == pytest.approx(expect, rel=1e-10)


def test_joint_xy_support():
    ctx = CTX[2]
    assert joint_density_xy(([2.0], [1.0]), ctx) == 0.0


# ---------------------------------------------------------------------------
# marginals and conditionals


def test_even_marginal_order_two_closed_form():
    ctx = CTX[2]
    for s in (0.0, 0.3, 1.0, 2.2):
        expect = (2.0 / math.sqrt(math.pi)) * math.exp(-s * s)
        assert even_marginal([s], ctx) == pytest.approx(expect, rel=1e-10)
    assert even_marginal([0.0], ctx) == pytest.approx(1.12838, rel=1e-4)


def test_even_marginal_mass_order_three():
    ctx = CTX[3]
    total, _ = integrate.quad(lambda s: even_marginal([s], ctx), 0, np.inf)
    assert total == pytest.approx(1.0, abs=1e-6)


def test_even_marginal_from_joint_quadrature():
    # Integrating t out of the joint over the interlacing box reproduces
    # the even marginal pointwise.
    ctx = CTX[3]
    for s1 in (0.4, 1.0, 1.7):
        val, _ = integrate.dblquad(
            lambda t2, t1: joint_density_ts([t1, t2], [s1], ctx),
            s1, np.inf, 0.0, lambda t1: min(s1, t1),
        )
        assert val == pytest.approx(even_marginal([s1], ctx), rel=1e-6)


def test_odd_marginal_order_one_half_normal():
    ctx = CTX[1]
    for t in (0.2, 1.0, 2.0):
        expect = math.sqrt(2.0 / math.pi) * math.exp(-t * t / 2.0)
        assert odd_marginal([t], ctx) == pytest.approx(expect, rel=1e-10)


def test_odd_marginal_order_two_closed_form():
    # n = 2: the two determinant factors reduce to t e^{-t^2/2} and
    # sqrt(pi/2) erf(t/sqrt 2), with prefactor c_2 * 2! * 2^2.
    ctx = CTX[2]
    for t in (0.3, 1.0, 2.4):
        expect = (
            8.0 * ctx.c_n * math.sqrt(math.pi / 2.0)
            * t * math.exp(-t * t / 2.0) * special.erf(t / math.sqrt(2.0))
        )
        assert odd_marginal([t], ctx) == pytest.approx(expect, rel=1e-10)


def test_odd_marginal_masses():
    total, _ = integrate.quad(lambda t: odd_marginal([t], CTX[2]), 0, np.inf)
    assert total == pytest.approx(1.0, abs=1e-6)
    ctx = CTX[3]
    total, _ = integrate.dblquad(
        lambda t2, t1: odd_marginal([t1, t2], ctx), 0, np.inf, 0.0, lambda t1: t1,
    )
    assert total == pytest.approx(1.0, abs=1e-6)


def test_odd_marginal_from_joint_quadrature():
    ctx = CTX[3]
    for t1, t2 in ((2.0, 0.7), (1.5, 1.0), (3.0, 0.2)):
        val, _ = integrate.quad(
            lambda s: joint_density_ts([t1, t2], [s], ctx), t2, t1,
        )
        assert val == pytest.approx(odd_marginal([t1, t2], ctx), rel=1e-6)


def test_conditional_is_joint_over_even_marginal():
    stream = RandStream(1)
    for n in (2, 3, 4, 5):
        ctx = CTX[n]
        rows = goe_abs_batch(stream, n, 25)
        for row in rows:
            t, s = row[0::2], row[1::2]
            expect = joint_density_ts(t, s, ctx) / even_marginal(s, ctx)
            assert conditional_t_given_s(t, s, ctx) == pytest.approx(expect, rel=1e-10)


def test_conditional_order_two_shape():
    # n = 2, s fixed: the conditional is t e^{-t^2/2} / (delta_0-normalized
    # tail), so the t-dependence is exactly t e^{-t^2/2} on t > s.
    ctx = CTX[2]
    num = conditional_t_given_s([2.0], [1.0], ctx)
    den = conditional_t_given_s([3.0], [1.0], ctx)
    assert num / den == pytest.approx((2.0 / 3.0) * math.exp(2.5), rel=1e-12)
    assert conditional_t_given_s([0.5], [1.0], ctx) == 0.0


def test_conditional_mass_order_three():
    ctx = CTX[3]
    s1 = 1.0
    total, _ = integrate.dblquad(
        lambda t2, t1: conditional_t_given_s([t1, t2], [s1], ctx),
        s1, np.inf, 0.0, lambda t1: min(s1, t1),
    )
    assert total == pytest.approx(1.0, abs=1e-6)


# ---------------------------------------------------------------------------
# sign-vector sum


def test_signed_sum_matches_factored_form():
    rng = RandStream(2).rng
    for n in range(1, 7):
        for _ in range(10):
            sigma = np.sort(rng.uniform(0.1, 3.0, n))
            direct = signed_sum_D(sigma)
            closed = factored_D(sigma)
            assert direct == pytest.approx(closed, rel=1e-10)


def test_signed_sum_count_is_power_of_two():
    rng = RandStream(3).rng
    for n in range(2, 7):
        sigma = np.sort(rng.uniform(0.1, 3.0, n))
        x, y = sigma[0::2], sigma[1::2]
        base = (
            np.prod([x[k] ** 2 - x[j] ** 2 for j in range(x.size) for k in range(j + 1, x.size)])
            * np.prod(y)
            * np.prod([y[k] ** 2 - y[j] ** 2 for j in range(y.size) for k in range(j + 1, y.size)])
        )
        assert signed_sum_D(sigma) / base == pytest.approx(2.0**n, rel=1e-10)


def test_signed_sum_guard():
    with pytest.raises(ValueError):
        signed_sum_D(np.linspace(0.1, 1.0, 17))


# ---------------------------------------------------------------------------
# moment-row vectors


def test_e_kappa_vector_values():
    v = EKappaVector(1, 3, 2.0).values
    w = math.exp(-2.0)
    assert np.allclose(v, [2.0 * w, 8.0 * w, 32.0 * w])
    v = EKappaVector(0, 2, 1.5).values
    w = math.exp(-1.125)
    assert np.allclose(v, [w, 2.25 * w])


def test_e_kappa_erf_replacement():
    v = EKappaVector(-1, 3, 1.3).values
    expect = -math.sqrt(math.pi / 2.0) * special.erf(1.3 / math.sqrt(2.0))
    assert v[0] == pytest.approx(expect, rel=1e-12)
    w = math.exp(-0.5 * 1.3**2)
    assert v[1] == pytest.approx(1.3 * w, rel=1e-12)
    with pytest.raises(ValueError):
        EKappaVector(2, 3, 1.0)


# ---------------------------------------------------------------------------
# integrate-out identities


def test_integrate_out_analytic_case():
    # mu=0, m=1, s=(1): both sides equal e^{-1/2} analytically.
    ctx = CTX[2]
    res = integrate_out_check("odd_to_even", [1.0], ctx)
    assert res <= 1e-10


def test_integrate_out_odd_order_case():
    res = integrate_out_check("odd_to_even", [1.0], CTX[3])
    assert res <= 1e-8


def test_integrate_out_even_to_odd_cases():
    assert integrate_out_check("even_to_odd", [2.0], CTX[1]) <= 1e-8
    assert integrate_out_check("even_to_odd", [2.0, 0.8], CTX[3]) <= 1e-8


def test_integrate_out_random_configurations():
    stream = RandStream(4)
    count = 0
    for n in (2, 3, 4, 5):
        ctx = CTX[n]
        rows = goe_abs_batch(stream, n, 2)
        for row in rows:
            assert integrate_out_check("odd_to_even", row[1::2], ctx) <= 1e-8
            assert integrate_out_check("even_to_odd", row[0::2], ctx) <= 1e-8
            count += 2
    assert count == 16


def test_integrate_out_unknown_mode():
    with pytest.raises(ValueError):
        integrate_out_check("sideways", [1.0], CTX[2])


# ---------------------------------------------------------------------------
# log forms


def test_log_forms_match_linear_forms():
    stream = RandStream(5)
    for n in (2, 3, 5):
        ctx = CTX[n]
        row = goe_abs_batch(stream, n, 1)[0]
        t, s = row[0::2], row[1::2]
        assert log_joint_density_ts(t, s, ctx) == pytest.approx(
            math.log(joint_density_ts(t, s, ctx)), rel=1e-12
        )
        assert log_even_marginal(s, ctx) == pytest.approx(
            math.log(even_marginal(s, ctx)), rel=1e-12
        )
        val = odd_marginal(t, ctx)
        if val > 0:
            assert log_odd_marginal(t, ctx) == pytest.approx(math.log(val), rel=1e-12)


def test_log_even_marginal_survives_underflow_scale():
    # A spread-out configuration at n = 6 where the linear density is tiny
    # but the log form stays finite.
    ctx = CTX[6]
    s = [9.0, 6.0, 3.0]
    assert np.isfinite(log_even_marginal(s, ctx))
    assert even_marginal(s, ctx) >= 0.0


def test_g_factor_support():
    assert g_factor(1, np.array([2.0, 1.0])) > 0.0
    assert g_factor(1, np.array([2.0, 0.0])) == 0.0
    assert g_factor(0, np.array([], dtype=float)) == 1.0
