"""Normalized deviations of the extreme zeros from the enclosure endpoints.

For large degree the relative distance of ``x1`` from ``V^2`` (or ``A``) and
of ``xk`` from ``U^2`` (or ``B``) shrinks like an explicit power-law scale.
Each diagnostic divides the measured relative gap by that scale; the
resulting numbers should stay of order one.  No constants are asserted
here, the values are reported.

Jacobi ``xk`` behaviour depends on ``gamma`` defined by

    r^2 = q^2 + s^2 + gamma (s+1)^{2/3} (r^2 - s^2)^{1/3},

which splits parameter space into a positive, a mildly negative and a very
negative regime, with a separate absolute diagnostic when ``|gamma| <= 1``
(there ``B`` and ``xk`` are both close to the origin).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .params import JacobiDerived, JacobiParams, LaguerreDerived, LaguerreParams, PolynomialFamily
from .zeros import ZeroSet

__all__ = [
    "REGIMES",
    "GammaRegime",
    "NormalizedGap",
    "jacobi_gamma",
    "laguerre_normalized_gaps",
    "jacobi_normalized_gaps",
    "normalized_gaps",
]

REGIMES = ("gamma_pos", "gamma_very_neg", "gamma_mid_neg")

# below this |B| the ratio xk/B is meaningless and only |xk| is reported
_TINY_B = 1e-8


@dataclass(frozen=True)
class GammaRegime:
    gamma: float
    regime: str
    small_gamma: bool
    threshold: float
    reconstruction_residual: float


@dataclass(frozen=True)
class NormalizedGap:
    target: str
    raw_gap: float
    scale: float
    normalized: float
    equation_tag: str
    in_regime: bool = True


def _gap(target, raw, scale, tag, in_regime=True) -> NormalizedGap:
    return NormalizedGap(target, raw, scale, raw / scale, tag, in_regime)


def laguerre_normalized_gaps(zs: ZeroSet, d: LaguerreDerived) -> tuple[NormalizedGap, NormalizedGap]:
    """``(x1/V^2 - 1)`` and ``(1 - xk/U^2)`` divided by their scales.

    Scales are ``(alpha+1)^{-1/2} (1/(alpha+1) + 1/k)^{1/6}`` and
    ``k^{-1/6} (k+alpha)^{-1/2}``.  The ``x1`` statement is made for
    ``alpha > 50`` only; ``in_regime`` records that.
    """
    k, b = d.k, d.alpha + 1.0
    scale1 = b**-0.5 * (1.0 / b + 1.0 / k) ** (1.0 / 6.0)
    scalek = k ** (-1.0 / 6.0) * (k + d.alpha) ** -0.5
    g1 = _gap("x1", (zs.x1 - d.Vsq) / d.Vsq, scale1, "laguerre-x1", d.alpha > 50)
    gk = _gap("xk", (d.Usq - zs.xk) / d.Usq, scalek, "laguerre-xk")
    return g1, gk


def jacobi_gamma(d: JacobiDerived) -> GammaRegime:
    """Solve for ``gamma`` and classify the regime (``d`` in ``alpha >= beta`` orientation)."""
    if isinstance(d, JacobiParams):
        d = d.derived
    r2, s, q = d.r * d.r, d.s, d.q
    weight = (s + 1.0) ** (2.0 / 3.0) * d.r2_minus_s2 ** (1.0 / 3.0)
    gamma = (d.r2_minus_s2 - q * q) / weight
    threshold = 3.0 * (s + 1.0) ** (4.0 / 3.0) / (4.0 * d.r2_minus_s2 ** (1.0 / 3.0))
    if gamma > 0.0:
        regime = "gamma_pos"
    elif gamma < -threshold:
        regime = "gamma_very_neg"
    else:
        # gamma == 0 lands here; B vanishes and only the absolute diagnostic is used
        regime = "gamma_mid_neg"
    residual = abs(q * q + s * s + gamma * weight - r2) / r2
    return GammaRegime(gamma, regime, abs(gamma) <= 1.0, threshold, residual)


def jacobi_normalized_gaps(zs: ZeroSet, d: JacobiDerived, g: GammaRegime | None = None) -> list[NormalizedGap]:
    """Diagnostics for ``x1/A`` and ``xk/B`` (and ``|xk|`` when ``|gamma| <= 1``).

    ``zs`` may belong to a reflected family; its zeros are mapped to the
    ``alpha >= beta`` orientation of ``d`` first.
    """
    if g is None:
        g = jacobi_gamma(d)
    k, alpha, beta = d.k, d.alpha, d.beta
    x1, xk = zs.x1, zs.xk
    if getattr(zs.family, "reflected", False):
        x1, xk = -xk, -x1
    out = []

    raw1 = (x1 - d.A) / abs(d.A)
    if d.r2_minus_s2 >= d.q * d.q:
        scale = ((beta + 1.0) ** 2 / (k * (k + alpha) * (k + beta))) ** (2.0 / 3.0)
        out.append(_gap("x1", raw1, scale, "jacobi-x1-wide"))
    else:
        scale = (beta + 1.0) ** (4.0 / 3.0) / (k ** (2.0 / 3.0) * (k + beta) ** (5.0 / 6.0) * math.sqrt(k + alpha))
        out.append(_gap("x1", raw1, scale, "jacobi-x1-narrow"))

    gamma = g.gamma
    if abs(d.B) >= _TINY_B and gamma != 0.0:
        rawk = (d.B - xk) / abs(d.B)
        if g.regime == "gamma_pos":
            out.append(_gap("xk", rawk, 1.0 / gamma + gamma ** (-2.0 / 3.0) * k ** (-2.0 / 9.0), "jacobi-xk-gamma-pos"))
        elif g.regime == "gamma_very_neg":
            # the scale needs alpha > 0; the regime itself requires large alpha
            if alpha > 0.0:
                out.append(_gap("xk", rawk, (alpha * k) ** (-1.0 / 3.0), "jacobi-xk-gamma-very-neg"))
        else:
            ag = abs(gamma)
            out.append(_gap("xk", rawk, 1.0 / ag + ag**-0.5 * k ** (-1.0 / 3.0), "jacobi-xk-gamma-mid-neg"))
    if g.small_gamma:
        out.append(_gap("xk", abs(xk), k ** (-1.0 / 6.0) * (k + alpha) ** -0.5, "jacobi-xk-small-gamma"))
    return out


def normalized_gaps(zs: ZeroSet) -> list[NormalizedGap]:
    fam: PolynomialFamily = zs.family
    if isinstance(fam, LaguerreParams):
        return list(laguerre_normalized_gaps(zs, fam.derived))
    return jacobi_normalized_gaps(zs, fam.derived)
