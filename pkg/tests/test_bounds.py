import math

import mpmath as mp
import pytest

from extremezeros import JacobiParams, LaguerreParams, all_zeros, bound_set
from extremezeros.bounds import AIRY_CONSTANT, jacobi_bound_set, laguerre_bound_set

THIRD = mp.mpf(1) / 3


def mp_laguerre(k, alpha):
    k, a = mp.mpf(k), mp.mpf(alpha)
    V = mp.sqrt(k + a + 1) - mp.sqrt(k)
    U = mp.sqrt(k + a + 1) + mp.sqrt(k)
    return V, U, U * U - V * V


def mp_jacobi(k, alpha, beta):
    al, be = mp.mpf(alpha), mp.mpf(beta)
    s, q, r = al + be + 1, al - be, 2 * k + al + be + 1
    p = r * r + 2 * s + 1
    R = mp.sqrt((r * r - q * q + 2 * s + 1) * (r * r - s * s))
    A, B = -(R + q * (s + 1)) / p, (R - q * (s + 1)) / p
    ta = (1 - A * A) ** (2 * THIRD) * (2 * R) ** -THIRD
    tb = (1 - B * B) ** (2 * THIRD) * (2 * R) ** -THIRD
    return A, B, ta, tb, q, s, p


def test_laguerre_k1_outer_values():
    with mp.workdps(30):
        V, U, w = mp_laguerre(1, 0)
        lower = V**2 + 3 * V ** (4 * THIRD) * w**-THIRD
        upper = U**2 - 3 * U ** (4 * THIRD) * w**-THIRD + 2
    bs = laguerre_bound_set(LaguerreParams(1, 0.0))
    lo = bs.one("x1", "lower", "outer")
    hi = bs.one("xk", "upper", "outer")
    assert lo.value == pytest.approx(float(lower), rel=1e-14)
    assert hi.value == pytest.approx(float(upper), rel=1e-14)
    # the single zero is 1
    assert lo.satisfied_by(1.0) and hi.satisfied_by(1.0)
    assert lo.value == pytest.approx(0.691444, abs=1e-6)
    assert hi.value == pytest.approx(2.375490, abs=1e-6)


@pytest.mark.parametrize("k,alpha", [(200, 199.0), (1000, 5000.0), (400, 2e4), (30, 0.0), (100, 1e4)])
def test_laguerre_inner_values(k, alpha):
    bs = laguerre_bound_set(LaguerreParams(k, alpha))
    with mp.workdps(30):
        V, U, w = mp_laguerre(k, alpha)
        delta = mp.mpf(1) / k + 1 / (mp.mpf(alpha) + 1)
        x1_up = V**2 + 9 * V ** (4 * THIRD) / (w**THIRD * (2 - 27 * delta ** (2 * THIRD)))
        if alpha <= 2 * (3 + 2 * math.sqrt(3)) * k - 1:
            xk_lo = U**2 - 9 * U ** (4 * THIRD) / (2 * w**THIRD)
            src = "inner"
        else:
            xk_lo = U**2 - 9 * U ** (4 * THIRD) / (w**THIRD * (2 - 3 * mp.mpf(k) ** (-2 * THIRD)))
            src = "inner-large-alpha"
    b = bs.one("x1", "upper", "inner")
    assert b.applicable == (delta < mp.mpf(1) / 50)
    if b.applicable:
        assert b.value == pytest.approx(float(x1_up), rel=1e-13)
    b = bs.one("xk", "lower", src)
    assert b is not None and b.applicable
    assert b.value == pytest.approx(float(xk_lo), rel=1e-13)


def test_laguerre_k200_alpha199_inner_holds():
    fam = LaguerreParams(200, 199.0)
    b = bound_set(fam).one("x1", "upper", "inner")
    assert b.applicable
    assert b.satisfied_by(all_zeros(fam).x1)


def test_laguerre_k20_gates():
    bs = laguerre_bound_set(LaguerreParams(20, 0.0))
    assert not bs.one("x1", "upper", "inner").applicable
    assert "1/50" in bs.one("x1", "upper", "inner").condition_note
    xk = bs.one("xk", "lower", "inner", "inner-large-alpha")
    assert not xk.applicable and "k >= 30" in xk.condition_note


def test_laguerre_large_alpha_switch():
    k = 40
    cut = 2 * (3 + 2 * math.sqrt(3)) * k - 1
    assert laguerre_bound_set(LaguerreParams(k, cut)).one("xk", "lower", "inner") is not None
    assert laguerre_bound_set(LaguerreParams(k, cut * (1 + 1e-12))).one("xk", "lower", "inner-large-alpha") is not None


def test_laguerre_classical_and_trace():
    bs = laguerre_bound_set(LaguerreParams(4, 1.5))
    assert bs.one("x1", "upper", "classical").value == pytest.approx(2.5 * 4.5 / 10.5, rel=1e-15)
    assert bs.one("x1", "upper", "trace-mean").value == 5.5
    # at k = 1 both are attained, so they are not asserted
    bs1 = laguerre_bound_set(LaguerreParams(1, 1.5))
    assert not bs1.one("x1", "upper", "classical").applicable


def test_airy_constant_value():
    # Szego's Airy function has its first zero at 3^{1/3} |a_1|, a_1 the first zero of Ai
    i11 = mp.cbrt(3) * -mp.airyaizero(1)
    exact = float(mp.cbrt(6) ** -1 * i11)
    # the printed constant is the exact value truncated to five decimals
    assert 0.0 <= exact - AIRY_CONSTANT < 1e-5
    b = laguerre_bound_set(LaguerreParams(1000, 0.0)).one("xk", "upper", "airy-comparison")
    assert b.role == "info" and not b.asserted


def test_jacobi_k1_outer_values():
    with mp.workdps(30):
        A, B, ta, tb, q, s, p = mp_jacobi(1, 0, 0)
    bs = jacobi_bound_set(JacobiParams(1, 0.0, 0.0))
    lo = bs.one("x1", "lower", "outer")
    hi = bs.one("xk", "upper", "outer")
    assert lo.value == pytest.approx(float(A + 3 * ta), rel=1e-14)
    assert hi.value == pytest.approx(float(B - 3 * tb), rel=1e-14)
    assert lo.value == pytest.approx(-0.281540, abs=1e-6)
    assert lo.satisfied_by(0.0) and hi.satisfied_by(0.0)


def test_jacobi_k5_legendre_sandwich():
    with mp.workdps(30):
        A, B, ta, tb, q, s, p = mp_jacobi(5, 0, 0)
    bs = jacobi_bound_set(JacobiParams(5, 0.0, 0.0))
    lo = bs.one("x1", "lower", "outer")
    hi = bs.one("x1", "upper", "inner")
    assert lo.value == pytest.approx(float(A + 3 * ta), rel=1e-14)
    assert hi.value == pytest.approx(float(A + 9 * ta), rel=1e-14)
    x1 = -0.9061798459386640
    assert lo.value < x1 < hi.value
    assert lo.value == pytest.approx(-0.935086, abs=1e-6)
    assert hi.value == pytest.approx(-0.837782, abs=1e-6)


@pytest.mark.parametrize("k,alpha,beta", [(5, 0.0, 0.0), (56, 25.0, -0.5), (233, 1000.0, 1.0), (7, 3.0, 3.0)])
def test_jacobi_values_against_mp(k, alpha, beta):
    with mp.workdps(40):
        A, B, ta, tb, q, s, p = mp_jacobi(k, alpha, beta)
        xk_up = B - 3 * tb + 4 * q * (s + 1) / p**1.5
    bs = jacobi_bound_set(JacobiParams(k, alpha, beta))
    assert bs.one("xk", "upper", "outer").value == pytest.approx(float(xk_up), rel=1e-13, abs=1e-15)
    assert bs.one("x1", "upper", "inner").value == pytest.approx(float(A + 9 * ta), rel=1e-13)
    inner_xk = bs.one("xk", "lower", "inner", "inner-empirical")
    assert inner_xk.value == pytest.approx(float(B - 9 * tb), rel=1e-12, abs=1e-15)


def test_jacobi_gates():
    assert not jacobi_bound_set(JacobiParams(3, 0.0, 0.0)).one("x1", "upper", "inner").applicable
    bs = jacobi_bound_set(JacobiParams(30, 1.0, 0.0))
    soft = bs.one("xk", "lower", "inner-empirical")
    assert soft.role == "soft" and not soft.asserted
    assert jacobi_bound_set(JacobiParams(56, 1.0, 0.0)).one("xk", "lower", "inner").asserted
    assert not jacobi_bound_set(JacobiParams(19, 1.0, 0.0)).one("xk", "lower", "inner").applicable


def test_jacobi_classical_bracket():
    k, a, b = 6, 2.0, 0.5
    bs = jacobi_bound_set(JacobiParams(k, a, b))
    den = 2 * k + a + b
    assert bs.one("x1", "upper", "classical").value == pytest.approx(-(2 * k + a - b - 2) / den, rel=1e-15)
    assert bs.one("xk", "lower", "classical").value == pytest.approx((2 * k + b - a - 2) / den, rel=1e-15)


@pytest.mark.parametrize("alpha", [0.0, 1.0, 25.0])
def test_symmetric_mirror(alpha):
    bs = jacobi_bound_set(JacobiParams(60, alpha, alpha))
    assert bs.one("xk", "upper", "outer").value == -bs.one("x1", "lower", "outer").value
    assert bs.one("xk", "lower", "inner").value == -bs.one("x1", "upper", "inner").value


@pytest.mark.parametrize("k,alpha,beta", [(5, 0.0, 0.0), (80, 7.5, -0.3), (233, 1000.0, 25.0)])
def test_sandwich_width_analytic(k, alpha, beta):
    d = JacobiParams(k, alpha, beta).derived
    bs = jacobi_bound_set(d)
    width = bs.one("x1", "upper", "inner").value - bs.one("x1", "lower", "outer").value
    expect = 6 * d.one_minus_A2 ** (2 / 3) * (2 * d.R) ** (-1 / 3)
    assert width == pytest.approx(expect, rel=1e-13)


@pytest.mark.parametrize("k,alpha,beta", [(1, -0.5, 1.0), (5, 0.0, 5.0), (60, 1.0, 25.0), (233, -0.99, 0.0)])
def test_reflection_consistency(k, alpha, beta):
    refl = bound_set(JacobiParams(k, beta, alpha, reflected=True))
    direct = jacobi_bound_set(JacobiParams(k, beta, alpha))
    for b in direct:
        mirrored = [c for c in refl if c.source == b.source and c.target != b.target and c.kind != b.kind]
        assert len(mirrored) == 1
        assert mirrored[0].value == pytest.approx(-b.value, rel=1e-14, abs=1e-300)


def test_laguerre_outer_upper_monotone_in_k():
    for alpha in (-0.5, 0.0, 10.0, 1e4):
        vals = [laguerre_bound_set(LaguerreParams(k, alpha)).one("xk", "upper", "outer").value for k in range(1, 300, 7)]
        assert all(a < b for a, b in zip(vals, vals[1:]))


def test_consistency_no_crossing():
    for fam in (LaguerreParams(100, 3.0), JacobiParams(100, 3.0, 1.0), LaguerreParams(1, 0.0)):
        assert bound_set(fam).consistency_violations() == []


def test_guarded_denominator_is_nan_not_error():
    # delta = 1 + 1/(alpha+1) is far past the applicability limit
    b = laguerre_bound_set(LaguerreParams(1, 0.0)).one("x1", "upper", "inner")
    assert not b.applicable and math.isnan(b.value)
