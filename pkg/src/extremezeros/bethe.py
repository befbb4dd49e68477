"""Bethe-ansatz machinery for polynomials solving ``f'' - 2a f' + b f = 0``.

At every zero ``x_i`` of such an ``f`` with simple real zeros,

    S_i = sum_{j != i} (x_i - x_j)^-2 = (Delta(x_i) - 2 a'(x_i)) / 3,

where ``Delta = b - a^2`` is the discriminant.  From the same identity the
margin

    D(i, x) = 1 + (x - x_i)^2 ((Delta(x_i) - 2 a'(x_i)) / 3 - Delta(x))

is positive for ``x < x_1`` with ``i = 1`` and for ``x > x_k`` with ``i = k``
(other pairings can be negative), and consecutive zeros satisfy the gap bound of
:func:`gap_upper_bound`.  Only the Laguerre and Jacobi instances are provided.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .params import JacobiParams, LaguerreParams, PolynomialFamily
from .zeros import ZeroSet, _orientation

__all__ = [
    "PoleError",
    "BetheReport",
    "discriminant",
    "a_prime",
    "bethe_rhs",
    "refined_rhs",
    "bethe_report",
    "residual_tolerance",
    "envelope_margin",
    "envelope_samples",
    "EnvelopeCheck",
    "envelope_check",
    "gap_upper_bound",
    "gap_bound_attained",
]


class PoleError(ValueError):
    """The ODE coefficients are singular at the requested point."""


def _as_array(x):
    scalar = np.ndim(x) == 0
    return scalar, np.atleast_1d(np.asarray(x, dtype=float))


def _jacobi_point(family: JacobiParams, x: np.ndarray) -> np.ndarray:
    # the reflected polynomial's coefficients are those of the stored one at -x
    return -x if family.reflected else x


def discriminant(family: PolynomialFamily, x):
    """``Delta(x)`` in factored form.

    Laguerre: ``(U^2 - x)(x - V^2) / (4 x^2)``;
    Jacobi: ``p (x - A)(B - x) / (4 (1 - x^2)^2)``.
    """
    scalar, xs = _as_array(x)
    d = family.derived
    if isinstance(family, LaguerreParams):
        if np.any(xs == 0.0):
            raise PoleError("Laguerre discriminant has a pole at x = 0")
        out = (d.Usq - xs) * (xs - d.Vsq) / (4.0 * xs * xs)
    else:
        xs = _jacobi_point(family, xs)
        if np.any(np.abs(xs) == 1.0):
            raise PoleError("Jacobi discriminant has poles at x = +-1")
        w = (1.0 - xs) * (1.0 + xs)
        out = d.p * (xs - d.A) * (d.B - xs) / (4.0 * w * w)
    return float(out[0]) if scalar else out


def a_prime(family: PolynomialFamily, x):
    """Derivative of the first-order ODE coefficient ``a``; positive on the zero enclosure."""
    scalar, xs = _as_array(x)
    if isinstance(family, LaguerreParams):
        if np.any(xs == 0.0):
            raise PoleError("Laguerre coefficient a has a pole at x = 0")
        out = (family.alpha + 1.0) / (2.0 * xs * xs)
    else:
        alpha, beta = family.alpha, family.beta
        ab2 = alpha + beta + 2.0
        if ab2 == 0.0:
            raise PoleError("alpha + beta + 2 = 0")
        xs = _jacobi_point(family, xs)
        if np.any(np.abs(xs) == 1.0):
            raise PoleError("Jacobi coefficient a has poles at x = +-1")
        w = (1.0 - xs) * (1.0 + xs)
        out = ((ab2 * xs + alpha - beta) ** 2 + 4.0 * (alpha + 1.0) * (beta + 1.0)) / (2.0 * ab2 * w * w)
    return float(out[0]) if scalar else out


def bethe_rhs(family: PolynomialFamily, x):
    """``(Delta(x) - 2 a'(x)) / 3``, the value the second negative moment must take at a zero."""
    return (discriminant(family, x) - 2.0 * a_prime(family, x)) / 3.0


def _second_moments(zeros: np.ndarray) -> np.ndarray:
    out = np.empty(len(zeros))
    for i, xi in enumerate(zeros):
        diffs = np.delete(zeros, i) - xi
        # nearest neighbours first; fsum makes the order matter only for readability
        terms = 1.0 / diffs[np.argsort(np.abs(diffs))] ** 2
        out[i] = math.fsum(terms)
    return out


def refined_rhs(family: PolynomialFamily, x0: float, dps: int = 40) -> float:
    """``(Delta - 2a') / 3`` at the zero nearest ``x0``, computed with ``dps`` digits.

    Near an endpoint of the domain the right-hand side varies so fast that
    rounding the zero to a double already moves it by more than the residual
    we want to resolve.  The zero is Newton-polished on the recurrence in
    extended precision and the right-hand side is evaluated there.
    """
    mpf = mpmath.mpf
    with mpmath.workdps(dps):
        k = family.k
        if isinstance(family, LaguerreParams):
            al = mpf(family.alpha)
            coef = [(2 * n + 1 + al, n * (n + al)) for n in range(k)]
        else:
            al, be = (mpf(v) for v in _orientation(family))
            ab = al + be
            coef = [((be - al) / (ab + 2), mpf(0))]
            for n in range(1, k):
                t = 2 * n + ab
                an = (be * be - al * al) / (t * (t + 2))
                if n == 1:
                    bn = 4 * (al + 1) * (be + 1) / ((ab + 2) ** 2 * (ab + 3))
                else:
                    bn = 4 * n * (n + al) * (n + be) * (n + ab) / (t * t * (t + 1) * (t - 1))
                coef.append((an, bn))
        x = mpf(x0)
        tiny = mpmath.eps * 16
        for _ in range(20):
            p0, p1, d0, d1 = mpf(1), x - coef[0][0], mpf(0), mpf(1)
            for an, bn in coef[1:]:
                p0, p1, d0, d1 = p1, (x - an) * p1 - bn * p0, d1, p1 + (x - an) * d1 - bn * d0
            step = p1 / d1
            x -= step
            if abs(step) <= tiny * max(abs(x), mpf(1)):
                break
        if isinstance(family, LaguerreParams):
            a = (x - al - 1) / (2 * x)
            b = k / x
            ap = (al + 1) / (2 * x * x)
        else:
            c = al + be + 2
            w = 1 - x * x
            a = (c * x + al - be) / (2 * w)
            b = k * (k + al + be + 1) / w
            ap = (c * x * x + 2 * (al - be) * x + c) / (2 * w * w)
        return float((b - a * a - 2 * ap) / 3)


# residuals above this (scaled) trigger the extended-precision re-evaluation
_REFINE_ABOVE = 1e-9


@dataclass(frozen=True)
class BetheReport:
    S: np.ndarray
    rhs: np.ndarray
    residuals: np.ndarray
    max_scaled_residual: float
    refined: tuple[int, ...] = ()


def bethe_report(zs: ZeroSet, refine_above: float | None = _REFINE_ABOVE) -> BetheReport:
    """Compare the second negative moments at the zeros with the ODE prediction.

    Indices whose double-precision residual exceeds ``refine_above`` get their
    right-hand side recomputed by :func:`refined_rhs`; they are listed in
    ``refined``.  Pass ``None`` to disable.
    """
    S = _second_moments(zs.zeros) if zs.k > 1 else np.zeros(1)
    rhs = np.atleast_1d(bethe_rhs(zs.family, zs.zeros)).astype(float)
    scaled = np.abs(S - rhs) / np.maximum(1.0, np.abs(rhs))
    refined = ()
    if refine_above is not None:
        refined = tuple(int(i) for i in np.flatnonzero(scaled > refine_above))
        for i in refined:
            rhs[i] = refined_rhs(zs.family, float(zs.zeros[i]))
    res = S - rhs
    scaled = np.abs(res) / np.maximum(1.0, np.abs(rhs))
    return BetheReport(S=S, rhs=rhs, residuals=res, max_scaled_residual=float(np.max(scaled)), refined=refined)


def residual_tolerance(zs: ZeroSet, floor: float = 1e-6, c: float = 10.0) -> float:
    """Admissible Bethe residual given the zero accuracy (``dS_i/dx_j = 2 (x_i - x_j)^-3``)."""
    if zs.k == 1:
        return floor
    return max(floor, c * zs.abs_accuracy / zs.min_gap**3)


def _in_domain(family: PolynomialFamily, x: float) -> bool:
    if isinstance(family, LaguerreParams):
        return x > 0.0
    return -1.0 < x < 1.0


def envelope_margin(zs: ZeroSet, i: int, x: float) -> float:
    """``D(i, x)`` for the zero ``zs.zeros[i]`` and a point ``x`` outside ``[x_1, x_k]``."""
    if zs.x1 <= x <= zs.xk:
        raise ValueError(f"x={x!r} lies inside [x1, xk] = [{zs.x1!r}, {zs.xk!r}]")
    if not _in_domain(zs.family, x):
        raise PoleError(f"x={x!r} is outside the domain of the discriminant")
    xi = float(zs.zeros[i])
    return 1.0 + (x - xi) ** 2 * (bethe_rhs(zs.family, xi) - discriminant(zs.family, x))


_ENVELOPE_STEPS = (0.01, 0.1, 0.5)


def envelope_samples(zs: ZeroSet) -> list[tuple[int, float]]:
    """Sample points ``(i, x)`` below ``x_1`` (paired with ``i = 0``) and above ``x_k`` (``i = k-1``).

    Each side is stepped by ``t`` in ``{0.01, 0.1, 0.5}`` times its room:
    the distance to the nearest pole (``0`` for Laguerre, ``-1``/``1`` for
    Jacobi), or for the unbounded Laguerre right side the zero span
    (``x_1`` when ``k = 1``).  Every sample is therefore inside the domain.
    """
    fam = zs.family
    if isinstance(fam, LaguerreParams):
        left = zs.x1
        right = zs.xk - zs.x1 if zs.k > 1 else zs.x1
    else:
        left, right = 1.0 + zs.x1, 1.0 - zs.xk
    pts = []
    for t in _ENVELOPE_STEPS:
        for i, x in ((0, zs.x1 - t * left), (zs.k - 1, zs.xk + t * right)):
            if _in_domain(fam, x) and not zs.x1 <= x <= zs.xk:
                pts.append((i, x))
    return pts


@dataclass(frozen=True)
class EnvelopeCheck:
    """Margins at the side-matched samples, plus the minimum over every zero index.

    Positivity is only guaranteed for the extreme zero on the same side as
    the sample point; ``all_index_min_margin`` is reported for information
    and is routinely negative.
    """

    min_margin: float
    samples: int
    violations: int
    all_index_min_margin: float


def envelope_check(zs: ZeroSet) -> EnvelopeCheck:
    pts = envelope_samples(zs)
    margins = [envelope_margin(zs, i, x) for i, x in pts]
    rhs = np.atleast_1d(bethe_rhs(zs.family, zs.zeros))
    every = [float(np.min(1.0 + (x - zs.zeros) ** 2 * (rhs - discriminant(zs.family, x)))) for _, x in pts]
    return EnvelopeCheck(
        min_margin=min(margins) if margins else math.nan,
        samples=len(margins),
        violations=sum(1 for m in margins if not m > 0.0),
        all_index_min_margin=min(every) if every else math.nan,
    )


def gap_upper_bound(zs: ZeroSet, i: int) -> float | None:
    """Upper bound on ``x_{i+1} - x_i`` (0-based ``i``), or None when inapplicable.

    With ``m`` the midpoint the bound is
    ``sqrt(18 / (3 Delta(m) - Delta(x_i) - Delta(x_{i+1}) + 2a'(x_i) + 2a'(x_{i+1})))``
    and applies only when that denominator is positive.
    """
    if not 0 <= i < zs.k - 1:
        raise IndexError(f"gap index {i} out of range for k={zs.k}")
    fam = zs.family
    lo, hi = float(zs.zeros[i]), float(zs.zeros[i + 1])
    mid = 0.5 * (lo + hi)
    den = (
        3.0 * discriminant(fam, mid)
        - discriminant(fam, lo)
        - discriminant(fam, hi)
        + 2.0 * a_prime(fam, lo)
        + 2.0 * a_prime(fam, hi)
    )
    if not den > 0.0:
        return None
    return math.sqrt(18.0 / den)


def gap_bound_attained(family: PolynomialFamily) -> bool:
    """True when :func:`gap_upper_bound` equals the gap exactly.

    The bound drops the non-negative term ``(f'/f - a)^2`` at the midpoint
    and the moments of the other zeros; both vanish only for ``k = 2`` with
    ``a(m) = 0``.  For Jacobi the midpoint is ``(beta-alpha)/(alpha+beta+4)``
    and ``a`` vanishes at ``(beta-alpha)/(alpha+beta+2)``, so this means
    ``alpha = beta``; it never happens for Laguerre.
    """
    if family.k != 2 or isinstance(family, LaguerreParams):
        return False
    return family.alpha == family.beta
