import math

import numpy as np
import pytest
from scipy.special import roots_genlaguerre, roots_jacobi

from extremezeros import JacobiParams, LaguerreParams, OracleError, all_zeros, evaluate_poly, jacobi_matrix
from extremezeros.zeros import Tridiagonal, enclosure, newton_step

from .conftest import mp_zeros


def test_laguerre_k2_matrix():
    T = jacobi_matrix(LaguerreParams(2, 0.0))
    assert list(T.diag) == [1.0, 3.0]
    assert list(T.offdiag) == [1.0]
    ev = np.linalg.eigvalsh(T.to_dense())
    assert ev == pytest.approx([2 - math.sqrt(2), 2 + math.sqrt(2)], rel=1e-15)


@pytest.mark.parametrize("alpha", [-0.9, 0.0, 3.7, 100.0])
def test_laguerre_degree_one(alpha):
    T = jacobi_matrix(LaguerreParams(1, alpha))
    assert list(T.diag) == [alpha + 1.0]
    assert all_zeros(LaguerreParams(1, alpha)).zeros[0] == pytest.approx(alpha + 1.0, rel=1e-14)


def test_known_small_cases():
    z = all_zeros(LaguerreParams(2, 0.0)).zeros
    assert z == pytest.approx([2 - math.sqrt(2), 2 + math.sqrt(2)], rel=1e-14)
    z = all_zeros(JacobiParams(2, 0.0, 0.0)).zeros
    assert z == pytest.approx([-1 / math.sqrt(3), 1 / math.sqrt(3)], rel=1e-14)
    z = all_zeros(JacobiParams(5, 0.0, 0.0)).zeros
    assert z[0] == pytest.approx(-0.906179845938664, abs=1e-15)
    assert z[2] == 0.0 or abs(z[2]) < 1e-16


def test_evaluate_poly_small():
    v, d = evaluate_poly(LaguerreParams(1, 0.0), 1.0)
    assert v.to_float() == 0.0 and abs(d.to_float()) == 1.0
    v, _ = evaluate_poly(LaguerreParams(2, 0.0), 0.0)
    assert v.to_float() == 2.0
    v, _ = evaluate_poly(JacobiParams(2, 0.0, 0.0), 0.0)
    assert v.to_float() == pytest.approx(-1 / 3, rel=1e-15)


def test_evaluate_poly_no_overflow():
    # the monic value at x = 0 is (-1)^k k! binom(k+alpha, k)-ish and overflows a double
    v, d = evaluate_poly(LaguerreParams(400, 0.0), 0.0)
    assert math.isfinite(v.mantissa) and v.exponent > 1024
    assert abs(math.log2(abs(v.mantissa)) + v.exponent - math.lgamma(401) / math.log(2)) < 1e-9


@pytest.mark.parametrize("k,alpha", [(3, -0.99), (17, 0.0), (64, 5.0), (150, 1000.0), (233, -0.5)])
def test_laguerre_against_scipy_and_mp(k, alpha):
    fam = LaguerreParams(k, alpha)
    zs = all_zeros(fam)
    ref = mp_zeros(fam, zs.zeros)
    assert np.max(np.abs(zs.zeros - ref) / ref) < 1e-12
    sp = roots_genlaguerre(k, alpha)[0]
    assert np.max(np.abs(zs.zeros - sp) / sp) < 1e-9


@pytest.mark.parametrize(
    "k,alpha,beta", [(3, 0.0, -0.99), (20, 1.0, 1.0), (55, 25.0, -0.5), (144, 1000.0, 5.0), (233, -0.9, -0.99)]
)
def test_jacobi_against_scipy_and_mp(k, alpha, beta):
    fam = JacobiParams(k, alpha, beta)
    zs = all_zeros(fam)
    ref = mp_zeros(fam, zs.zeros)
    scale = np.maximum(np.abs(ref), 1e-3)
    assert np.max(np.abs(zs.zeros - ref) / scale) < 1e-12
    sp = roots_jacobi(k, alpha, beta)[0]
    assert np.max(np.abs(zs.zeros - sp)) < 1e-9


def test_reflected_jacobi_zeros_are_mirrored():
    direct = all_zeros(JacobiParams(9, 5.0, 0.5)).zeros
    refl = all_zeros(JacobiParams(9, 5.0, 0.5, reflected=True)).zeros
    assert refl == pytest.approx(-direct[::-1], abs=1e-15)
    assert refl == pytest.approx(roots_jacobi(9, 0.5, 5.0)[0], abs=1e-13)


@pytest.mark.parametrize("fam", [LaguerreParams(600, 0.0), LaguerreParams(1000, -0.9), JacobiParams(800, 3.0, -0.5)])
def test_large_degree_compensated(fam):
    zs = all_zeros(fam)
    ref = mp_zeros(fam, zs.zeros[[0, 1, -2, -1]], dps=40)
    got = zs.zeros[[0, 1, -2, -1]]
    scale = np.maximum(np.abs(ref), 1e-3)
    assert np.max(np.abs(got - ref) / scale) < 1e-12


@pytest.mark.parametrize("fam", [LaguerreParams(40, 2.0), LaguerreParams(300, 1e4), JacobiParams(70, 5.0, -0.5)])
def test_trace_sum(fam):
    zs = all_zeros(fam)
    tr = jacobi_matrix(fam).trace
    assert math.fsum(zs.zeros) == pytest.approx(tr, rel=1e-11, abs=1e-11)
    if isinstance(fam, LaguerreParams):
        assert tr == pytest.approx(fam.k * (fam.k + fam.alpha), rel=1e-15)


def test_jacobi_zero_sum_closed_form():
    k, a, b = 12, 3.0, 0.5
    zs = all_zeros(JacobiParams(k, a, b))
    assert math.fsum(zs.zeros) == pytest.approx(k * (b - a) / (2 * k + a + b), rel=1e-12)


@pytest.mark.parametrize("fam", [LaguerreParams(30, 0.5), JacobiParams(30, 2.0, -0.5)])
def test_interlacing(fam):
    hi = all_zeros(fam).zeros
    lo = all_zeros(fam.with_degree(fam.k - 1)).zeros
    assert np.all(hi[:-1] < lo) and np.all(lo < hi[1:])


@pytest.mark.parametrize("fam", [LaguerreParams(50, 0.0), JacobiParams(50, 1.0, -0.9), LaguerreParams(5, 1e4)])
def test_sign_change_at_each_zero(fam):
    zs = all_zeros(fam)
    eps = 10 * zs.accuracy
    scale = np.maximum(np.abs(zs.zeros), 1e-3) if isinstance(fam, JacobiParams) else zs.zeros
    left, _ = evaluate_poly(fam, zs.zeros - eps * scale)
    right, _ = evaluate_poly(fam, zs.zeros + eps * scale)
    assert np.all(np.sign(left.mantissa) != np.sign(right.mantissa))


@pytest.mark.parametrize("fam", [LaguerreParams(89, -0.99), JacobiParams(89, 1000.0, -0.99), JacobiParams(2, 1e4, 0.0)])
def test_inside_enclosure(fam):
    zs = all_zeros(fam)
    lo, hi = enclosure(fam)
    assert lo < zs.x1 and zs.xk < hi


def test_zeroset_fields():
    zs = all_zeros(LaguerreParams(10, 1.0))
    assert zs.k == 10 and zs.x1 == zs.zeros[0] and zs.xk == zs.zeros[-1]
    assert zs.min_gap == pytest.approx(np.min(np.diff(zs.zeros)))
    assert np.finfo(float).eps <= zs.accuracy <= 1e-12
    assert all_zeros(LaguerreParams(1, 1.0)).min_gap == math.inf


def test_target_floor():
    with pytest.raises(ValueError):
        all_zeros(LaguerreParams(3, 0.0), target_rel_err=1e-15)


def test_newton_step_small_at_zero():
    fam = LaguerreParams(20, 1.0)
    zs = all_zeros(fam)
    assert np.all(np.abs(newton_step(fam, zs.zeros)) <= 4e-15 * zs.zeros)


def test_sturm_count():
    T = Tridiagonal(np.array([1.0, 3.0]), np.array([1.0]))
    assert list(T.sturm_count([0.0, 1.0, 3.0, 4.0])) == [0, 1, 1, 2]


def test_oracle_error_carries_index():
    err = OracleError(3, "stalled")
    assert err.index == 3 and "zero #3" in str(err)
