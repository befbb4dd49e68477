"""Independent zero oracle for Laguerre and Jacobi polynomials.

Zeros are the eigenvalues of the symmetric tridiagonal Jacobi matrix built
from the monic three-term recurrence

    p_{n+1}(x) = (x - a_n) p_n(x) - b_n p_{n-1}(x),    p_0 = 1, p_{-1} = 0.

They are bracketed by Sturm-count bisection inside the spectrum enclosure
and then polished by Newton steps on the recurrence itself.  Recurrence
values are carried as (mantissa, exponent) pairs so Newton ratios stay
finite for degrees in the thousands and parameters up to 1e6.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .params import JacobiParams, LaguerreParams, PolynomialFamily

__all__ = [
    "OracleError",
    "Tridiagonal",
    "ZeroSet",
    "Scaled",
    "recurrence_coefficients",
    "jacobi_matrix",
    "enclosure",
    "evaluate_poly",
    "all_zeros",
]

_EPS = np.finfo(float).eps
_RESCALE_EXP = 256
_COMPENSATE_ABOVE = 500
_BISECT_CAP = 400
_NEWTON_CAP = 30


class OracleError(RuntimeError):
    """The eigen/Newton oracle did not converge for zero ``index`` (0-based)."""

    def __init__(self, index: int, message: str):
        self.index = index
        super().__init__(f"zero #{index}: {message}")


class Scaled(NamedTuple):
    """A real number ``mantissa * 2**exponent`` (elementwise for arrays)."""

    mantissa: np.ndarray | float
    exponent: np.ndarray | int

    def to_float(self):
        with np.errstate(over="ignore"):
            return np.ldexp(self.mantissa, self.exponent)


def _orientation(family: PolynomialFamily) -> tuple[float, float]:
    """Exponents of the polynomial whose zeros are reported (caller's orientation)."""
    return family.original_alpha, family.original_beta


def recurrence_coefficients(family: PolynomialFamily) -> tuple[np.ndarray, np.ndarray]:
    """Monic recurrence coefficients ``a_0..a_{k-1}`` and ``b_0..b_{k-1}`` (``b_0 = 0``)."""
    k = family.k
    n = np.arange(k, dtype=float)
    b = np.zeros(k)
    if isinstance(family, LaguerreParams):
        alpha = family.alpha
        a = (2.0 * n + 1.0) + alpha
        b[1:] = n[1:] * (n[1:] + alpha)
        return a, b

    alpha, beta = _orientation(family)
    ab = alpha + beta
    a = np.empty(k)
    # n = 0: the general formula is 0/0 when alpha + beta = 0
    a[0] = (beta - alpha) / (ab + 2.0)
    if k > 1:
        m = n[1:]
        a[1:] = (beta * beta - alpha * alpha) / ((2.0 * m + ab) * (2.0 * m + ab + 2.0))
        # n = 1: the factor (1 + alpha + beta) cancels, which matters at alpha + beta = -1
        b[1] = 4.0 * (alpha + 1.0) * (beta + 1.0) / ((ab + 2.0) ** 2 * (ab + 3.0))
        if k > 2:
            m = n[2:]
            t = 2.0 * m + ab
            b[2:] = 4.0 * m * (m + alpha) * (m + beta) * (m + ab) / (t * t * (t + 1.0) * (t - 1.0))
    return a, b


@dataclass(frozen=True)
class Tridiagonal:
    """Symmetric tridiagonal matrix with diagonal ``diag`` and positive ``offdiag``."""

    diag: np.ndarray
    offdiag: np.ndarray

    @property
    def size(self) -> int:
        return len(self.diag)

    @property
    def trace(self) -> float:
        return math.fsum(self.diag)

    def to_dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)

    def gershgorin(self) -> tuple[float, float]:
        radius = np.zeros(self.size)
        radius[:-1] += self.offdiag
        radius[1:] += self.offdiag
        return float(np.min(self.diag - radius)), float(np.max(self.diag + radius))

    def sturm_count(self, x) -> np.ndarray:
        """Number of eigenvalues strictly below each shift in ``x``.

        Uses the pivots of the LDL^T factorization of ``T - x I``; tiny pivots
        are replaced by ``-pivmin`` as in LAPACK's bisection routines.
        """
        x = np.asarray(x, dtype=float)
        d = self.diag
        e2 = self.offdiag**2
        pivmin = np.finfo(float).tiny * max(1.0, float(np.max(e2)) if len(e2) else 1.0)
        q = d[0] - x
        q = np.where(np.abs(q) < pivmin, -pivmin, q)
        count = (q < 0).astype(np.int64)
        for i in range(1, len(d)):
            q = (d[i] - x) - e2[i - 1] / q
            q = np.where(np.abs(q) < pivmin, -pivmin, q)
            count += q < 0
        return count


def jacobi_matrix(family: PolynomialFamily) -> Tridiagonal:
    """Jacobi matrix whose eigenvalues are the zeros of the family's degree-k polynomial.

    Laguerre: ``diag_n = 2n + alpha + 1``, ``offdiag_n = sqrt(n (n + alpha))``.
    Jacobi matrices are built in the caller's original (possibly reflected)
    orientation.
    """
    a, b = recurrence_coefficients(family)
    return Tridiagonal(diag=a, offdiag=np.sqrt(b[1:]))


def enclosure(family: PolynomialFamily) -> tuple[float, float]:
    """Open interval containing every zero: ``(V^2, U^2)`` or ``(A, B)``."""
    d = family.derived
    if isinstance(family, LaguerreParams):
        return d.Vsq, d.Usq
    if family.reflected:
        return -d.B, -d.A
    return d.A, d.B


def _frexp_exponent(m):
    return np.frexp(m)[1]


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


_SPLITTER = 134217729.0  # 2**27 + 1


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, al * bl - (((p - ah * bh) - al * bh) - ah * bl)


def _coefficient_tails(family: PolynomialFamily, a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Rounding errors of ``a_n`` and ``b_n`` where recoverable exactly (Laguerre only)."""
    if not isinstance(family, LaguerreParams):
        return np.zeros_like(a), np.zeros_like(a)
    n = np.arange(len(a), dtype=float)
    alpha = np.full_like(n, family.alpha)
    _, a_tail = _two_sum(2.0 * n + 1.0, alpha)
    # b_n = n (n + alpha) with n + alpha = h + l exactly
    h, l = _two_sum(n, alpha)
    _, bl = _two_prod(n, h)
    b_tail = bl + n * l
    b_tail[0] = 0.0
    return a_tail, b_tail


def _run_recurrence(a, b, x, compensated, tails=None):
    """Monic value and derivative at ``x`` with a shared per-element binary exponent.

    In compensated mode ``tails`` holds the low-order parts of ``a`` and ``b``
    (``a + a_tail`` is the exact coefficient).
    """
    k = len(a)
    a_tail, b_tail = tails if tails is not None else (np.zeros_like(a), np.zeros_like(b))
    one = np.ones_like(x)
    p_prev, p = one, None
    dp_prev, dp = np.zeros_like(x), one.copy()
    c_prev = np.zeros_like(x)
    expo = np.zeros(x.shape, dtype=np.int64)
    if compensated:
        p, c = _two_sum(x, -a[0])
        c = c - a_tail[0]
    else:
        p, c = x - a[0], np.zeros_like(x)
    for n in range(1, k):
        if compensated:
            t, et = _two_sum(x, -a[n])
            et = et - a_tail[n]
            u, eu = _two_prod(t, p)
            v, ev = _two_prod(np.full_like(x, b[n]), p_prev)
            w, ew = _two_sum(u, -v)
            local = eu - ev + ew + et * p - b_tail[n] * p_prev
            c_next = t * c - b[n] * c_prev + local
            p_next = w
        else:
            t = x - a[n]
            p_next = t * p - b[n] * p_prev
            c_next = c
        dp_next = p + t * dp - b[n] * dp_prev
        p_prev, p = p, p_next
        dp_prev, dp = dp, dp_next
        c_prev, c = c, c_next

        big = np.maximum(np.maximum(np.abs(p), np.abs(p_prev)), np.maximum(np.abs(dp), np.abs(dp_prev)))
        shift = _frexp_exponent(big)
        shift = np.where((big > 0) & (np.abs(shift) > _RESCALE_EXP), shift, 0)
        if np.any(shift):
            p, p_prev = np.ldexp(p, -shift), np.ldexp(p_prev, -shift)
            dp, dp_prev = np.ldexp(dp, -shift), np.ldexp(dp_prev, -shift)
            c, c_prev = np.ldexp(c, -shift), np.ldexp(c_prev, -shift)
            expo += shift
    return p + c, dp, expo


def _normalize(m, e) -> Scaled:
    mant, ex = np.frexp(m)
    return Scaled(mant, np.where(m == 0, 0, e + ex))


def evaluate_poly(family: PolynomialFamily, x, compensated: bool | None = None) -> tuple[Scaled, Scaled]:
    """Evaluate the monic degree-k polynomial and its derivative at ``x``.

    Returns ``(value, derivative)`` as :class:`Scaled` pairs.  ``compensated``
    selects error-free-transformation arithmetic for the value; by default
    it is used for degrees above 500.  Scalar input gives scalar output.
    """
    scalar = np.ndim(x) == 0
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    a, b = recurrence_coefficients(family)
    if compensated is None:
        compensated = family.k > _COMPENSATE_ABOVE
    tails = _coefficient_tails(family, a) if compensated else None
    val, der, expo = _run_recurrence(a, b, xs, compensated, tails)
    value, deriv = _normalize(val, expo), _normalize(der, expo)
    if scalar:
        value = Scaled(float(value.mantissa[0]), int(value.exponent[0]))
        deriv = Scaled(float(deriv.mantissa[0]), int(deriv.exponent[0]))
    return value, deriv


def newton_step(family: PolynomialFamily, x, compensated: bool | None = None) -> np.ndarray:
    """``p(x) / p'(x)`` computed without forming either factor as a float."""
    value, deriv = evaluate_poly(family, np.atleast_1d(x), compensated)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = value.mantissa / deriv.mantissa
    return np.ldexp(ratio, value.exponent - deriv.exponent)


@dataclass(frozen=True)
class ZeroSet:
    """Sorted zeros ``x_1 < ... < x_k`` with accuracy diagnostics.

    ``accuracy`` is the largest final Newton correction relative to the
    zero's magnitude (never below machine epsilon); ``abs_accuracy`` is the
    same correction in absolute terms.
    """

    zeros: np.ndarray
    family: PolynomialFamily
    accuracy: float
    abs_accuracy: float
    min_gap: float
    newton_iterations: int = 0

    @property
    def k(self) -> int:
        return len(self.zeros)

    @property
    def x1(self) -> float:
        return float(self.zeros[0])

    @property
    def xk(self) -> float:
        return float(self.zeros[-1])


def _bisect_all(T: Tridiagonal, lo0: float, hi0: float) -> np.ndarray:
    k = T.size
    width = hi0 - lo0
    # Nudge the enclosure outward: it is strict for the exact zeros, while
    # the matrix eigenvalues carry rounding from the recurrence coefficients.
    lo0 -= 1e-12 * width + 4 * _EPS * abs(lo0)
    hi0 += 1e-12 * width + 4 * _EPS * abs(hi0)
    bracket = T.sturm_count(np.array([lo0, hi0]))
    if bracket[0] != 0 or bracket[1] != k:
        lo0, hi0 = T.gershgorin()
        pad = _EPS * max(abs(lo0), abs(hi0), 1.0)
        lo0, hi0 = lo0 - pad, hi0 + pad
    absfloor = 1e-3 * _EPS * max(abs(lo0), abs(hi0))
    lo = np.full(k, lo0)
    hi = np.full(k, hi0)
    idx = np.arange(k)
    active = np.ones(k, dtype=bool)
    for _ in range(_BISECT_CAP):
        if not active.any():
            break
        sel = np.nonzero(active)[0]
        mid = 0.5 * (lo[sel] + hi[sel])
        stuck = (mid == lo[sel]) | (mid == hi[sel])
        above = T.sturm_count(mid) > idx[sel]
        hi[sel] = np.where(above, mid, hi[sel])
        lo[sel] = np.where(above, lo[sel], mid)
        w = hi[sel] - lo[sel]
        done = stuck | (w <= 2 * _EPS * np.maximum(np.abs(lo[sel]), np.abs(hi[sel])) + absfloor)
        active[sel[done]] = False
    if active.any():
        bad = int(np.nonzero(active)[0][0])
        raise OracleError(bad, "bisection did not reach working precision")
    return 0.5 * (lo + hi)


def all_zeros(family: PolynomialFamily, target_rel_err: float = 1e-12) -> ZeroSet:
    """All ``k`` zeros via Sturm bisection on the Jacobi matrix plus Newton polish.

    Newton iterates until every correction is below ``target_rel_err`` times
    the zero's scale.  Raises :class:`OracleError` naming the first index
    that fails to settle within the iteration cap.
    """
    if target_rel_err < 1e-14:
        raise ValueError("target_rel_err must be >= 1e-14")
    T = jacobi_matrix(family)
    lo, hi = enclosure(family)
    x = _bisect_all(T, lo, hi)

    # absolute floor for zeros sitting at or near the origin (symmetric Jacobi)
    floor = 1e-3 * max(abs(lo), abs(hi)) if isinstance(family, JacobiParams) else 0.0
    scale = np.maximum(np.abs(x), floor)
    last = np.full(family.k, np.inf)
    converged = np.zeros(family.k, dtype=bool)
    iterations = 0
    for iterations in range(1, _NEWTON_CAP + 1):
        step = newton_step(family, x)
        step = np.where(np.isfinite(step), step, 0.0)
        x = x - np.where(converged, 0.0, step)
        last = np.where(converged, last, np.abs(step))
        converged |= np.abs(step) <= target_rel_err * scale
        if converged.all():
            break
    if not converged.all():
        bad = int(np.nonzero(~converged)[0][0])
        raise OracleError(bad, f"Newton polish stalled, last step {last[bad]:.3e}")

    x = np.sort(x)
    gaps = np.diff(x)
    if len(gaps) and not np.all(gaps > 0):
        bad = int(np.nonzero(gaps <= 0)[0][0])
        raise OracleError(bad, "polished zeros are not strictly increasing")
    scale = np.maximum(np.abs(x), floor if floor > 0 else np.abs(x))
    rel = float(np.max(last / np.where(scale > 0, scale, 1.0)))
    return ZeroSet(
        zeros=x,
        family=family,
        accuracy=max(rel, float(_EPS)),
        abs_accuracy=max(float(np.max(last)), float(_EPS * np.max(np.abs(x)))),
        min_gap=float(np.min(gaps)) if len(gaps) else math.inf,
        newton_iterations=iterations,
    )
