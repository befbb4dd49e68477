"""Closed-form bounds on the least zero ``x1`` and largest zero ``xk``.

Every bound is returned as a :class:`Bound`, including conditional ones
whose hypotheses fail; those carry ``applicable=False`` and the failed
condition in ``condition_note`` so a sweep can tell "does not apply" apart
from "violated".

Source tags:

``outer``
    uniform bounds from outside, ``x1 > lower`` and ``xk < upper``.
``inner`` / ``inner-large-alpha``
    the opposite-direction bounds ``x1 < upper`` and ``xk > lower``.
``inner-empirical``
    the Jacobi ``xk`` inner bound in the range ``20 <= k < 56`` where it is
    only claimed from numerical evidence (soft check).
``classical``, ``trace-mean``, ``sign``
    the weaker classical brackets.
``enclosure``
    the root interval of the discriminant, ``(V^2, U^2)`` or ``(A, B)``.
``airy-comparison``
    the fixed-alpha Airy-type bound on the largest Laguerre zero,
    informational only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Literal

from .params import JacobiDerived, JacobiParams, LaguerreDerived, LaguerreParams, PolynomialFamily

__all__ = [
    "AIRY_CONSTANT",
    "Bound",
    "BoundSet",
    "laguerre_bound_set",
    "jacobi_bound_set",
    "bound_set",
]

# 6^{-1/3} times the first zero of the Airy function, as printed
AIRY_CONSTANT = 1.85575

Kind = Literal["lower", "upper"]
Target = Literal["x1", "xk"]
Role = Literal["hard", "soft", "info"]


def _fpow(x: float, e: float) -> float:
    if not x > 0.0:
        raise ValueError(f"fractional power of non-positive argument {x!r}")
    return math.exp(e * math.log(x))


@dataclass(frozen=True)
class Bound:
    value: float
    kind: Kind
    target: Target
    source: str
    applicable: bool = True
    condition_note: str = ""
    role: Role = "hard"

    def satisfied_by(self, x: float) -> bool:
        """Strict check with zero slack."""
        return x > self.value if self.kind == "lower" else x < self.value

    def margin(self, x: float) -> float:
        """Signed distance by which ``x`` clears the bound (positive is good)."""
        return x - self.value if self.kind == "lower" else self.value - x

    @property
    def asserted(self) -> bool:
        return self.applicable and self.role == "hard"

    def reflected(self) -> "Bound":
        return replace(
            self,
            value=-self.value,
            kind="upper" if self.kind == "lower" else "lower",
            target="xk" if self.target == "x1" else "x1",
        )


@dataclass(frozen=True)
class BoundSet:
    bounds: tuple[Bound, ...]
    family: PolynomialFamily = field(compare=False)

    def __iter__(self):
        return iter(self.bounds)

    def __len__(self):
        return len(self.bounds)

    def select(self, target: Target | None = None, kind: Kind | None = None, source: str | None = None):
        return [
            b
            for b in self.bounds
            if (target is None or b.target == target)
            and (kind is None or b.kind == kind)
            and (source is None or b.source == source)
        ]

    def one(self, target: Target, kind: Kind, *sources: str) -> Bound | None:
        """The single bound for ``target``/``kind`` whose source is one of ``sources``."""
        found = [b for b in self.select(target, kind) if b.source in sources]
        if len(found) > 1:
            raise LookupError(f"ambiguous bound lookup {target}/{kind}/{sources}")
        return found[0] if found else None

    def asserted(self):
        return [b for b in self.bounds if b.asserted]

    def consistency_violations(self) -> list[tuple[Bound, Bound]]:
        """Pairs (lower, upper) of asserted bounds on one target that cross."""
        bad = []
        for target in ("x1", "xk"):
            lows = [b for b in self.select(target, "lower") if b.asserted]
            highs = [b for b in self.select(target, "upper") if b.asserted]
            bad += [(lo, hi) for lo in lows for hi in highs if not lo.value < hi.value]
        return bad


def laguerre_bound_set(d: LaguerreDerived) -> BoundSet:
    """All bounds on the extreme zeros of ``L_k^(alpha)``."""
    if isinstance(d, LaguerreParams):
        d = d.derived
    k, alpha = d.k, d.alpha
    family = LaguerreParams(k, alpha)
    w13 = _fpow(d.width, 1.0 / 3.0)
    v43 = _fpow(d.V, 4.0 / 3.0)
    u43 = _fpow(d.U, 4.0 / 3.0)
    out = []

    out.append(Bound(d.Vsq + 3.0 * v43 / w13, "lower", "x1", "outer"))
    out.append(Bound(d.Usq - 3.0 * u43 / w13 + 2.0, "upper", "xk", "outer"))

    small_delta = d.delta < 1.0 / 50.0
    den = 2.0 - 27.0 * _fpow(d.delta, 2.0 / 3.0)
    out.append(
        Bound(
            # den > 0 whenever the bound applies; otherwise the value is meaningless
            d.Vsq + 9.0 * v43 / (w13 * den) if den > 0.0 else math.nan,
            "upper",
            "x1",
            "inner",
            applicable=small_delta,
            condition_note="" if small_delta else f"needs 1/k + 1/(alpha+1) < 1/50, have {d.delta:.6g}",
        )
    )

    alpha_cut = 2.0 * (3.0 + 2.0 * math.sqrt(3.0)) * k - 1.0
    big_k = k >= 30
    note = "" if big_k else f"needs k >= 30, have k={k}"
    if alpha <= alpha_cut:
        xk_inner = Bound(d.Usq - 9.0 * u43 / (2.0 * w13), "lower", "xk", "inner", big_k, note)
    else:
        denom = 2.0 - 3.0 * _fpow(k, -2.0 / 3.0)
        xk_inner = Bound(d.Usq - 9.0 * u43 / (w13 * denom), "lower", "xk", "inner-large-alpha", big_k, note)
    out.append(xk_inner)

    # Attained with equality at k = 1 (x1 = alpha + 1), so strict checks start at k = 2.
    multi = k >= 2
    eq_note = "" if multi else "k=1: attained with equality"
    out.append(
        Bound((alpha + 1.0) * (alpha + 3.0) / (2.0 * k + alpha + 1.0), "upper", "x1", "classical", multi, eq_note)
    )
    out.append(Bound(k + alpha, "upper", "x1", "trace-mean", multi, eq_note))

    nu = 4.0 * k + 2.0 * alpha + 2.0
    out.append(
        Bound(
            (math.sqrt(nu) - AIRY_CONSTANT * _fpow(nu, -1.0 / 6.0)) ** 2,
            "upper",
            "xk",
            "airy-comparison",
            condition_note="fixed-alpha classical result, reported only",
            role="info",
        )
    )

    out.append(Bound(d.Vsq, "lower", "x1", "enclosure"))
    out.append(Bound(d.Usq, "upper", "xk", "enclosure"))
    return BoundSet(tuple(out), family)


def jacobi_bound_set(d: JacobiDerived, reflected: bool = False) -> BoundSet:
    """All bounds on the extreme zeros of ``P_k^(alpha, beta)``.

    ``d`` must be in the ``alpha >= beta`` orientation.  With ``reflected``
    the bounds are mapped through ``x -> -x`` (targets and kinds swapped) so
    they refer to the polynomial with the exponents exchanged.  Passing a
    :class:`JacobiParams` picks up its ``reflected`` flag.
    """
    if isinstance(d, JacobiParams):
        reflected = d.reflected
        d = d.derived
    k, alpha, beta = d.k, d.alpha, d.beta
    family = JacobiParams(k, alpha, beta, reflected)
    A, B, R = d.A, d.B, d.R
    t_a = _fpow(d.one_minus_A2, 2.0 / 3.0) * _fpow(2.0 * R, -1.0 / 3.0)
    t_b = _fpow(d.one_minus_B2, 2.0 / 3.0) * _fpow(2.0 * R, -1.0 / 3.0)
    out = []

    out.append(Bound(A + 3.0 * t_a, "lower", "x1", "outer"))
    out.append(Bound(B - 3.0 * t_b + 4.0 * d.q * (d.s + 1.0) / d.p**1.5, "upper", "xk", "outer"))

    ok5 = k >= 5
    out.append(Bound(A + 9.0 * t_a, "upper", "x1", "inner", ok5, "" if ok5 else f"needs k >= 5, have k={k}"))

    xk_inner = B - 9.0 * t_b
    if k >= 56:
        out.append(Bound(xk_inner, "lower", "xk", "inner"))
    elif k >= 20:
        out.append(
            Bound(
                xk_inner,
                "lower",
                "xk",
                "inner-empirical",
                condition_note="proved for k >= 56; claimed numerically for k >= 20",
                role="soft",
            )
        )
    else:
        out.append(Bound(xk_inner, "lower", "xk", "inner", False, f"needs k >= 56 (20 empirically), have k={k}"))

    # At k = 1 the single zero (beta-alpha)/(alpha+beta+2) meets both classical values.
    multi = k >= 2
    eq_note = "" if multi else "k=1: attained with equality"
    den = 2.0 * k + alpha + beta
    out.append(Bound(-(2.0 * k + alpha - beta - 2.0) / den, "upper", "x1", "classical", multi, eq_note))
    out.append(Bound((2.0 * k + beta - alpha - 2.0) / den, "lower", "xk", "classical", multi, eq_note))

    sign_ok = multi or d.q > 0
    out.append(Bound(0.0, "upper", "x1", "sign", sign_ok, "" if sign_ok else "k=1, alpha=beta: zero at the origin"))

    out.append(Bound(A, "lower", "x1", "enclosure"))
    out.append(Bound(B, "upper", "xk", "enclosure"))

    if reflected:
        out = [b.reflected() for b in out]
    return BoundSet(tuple(out), family)


def bound_set(family: PolynomialFamily) -> BoundSet:
    if isinstance(family, LaguerreParams):
        return laguerre_bound_set(family.derived)
    return jacobi_bound_set(family.derived, family.reflected)
