"""Parameter records for the two polynomial families and their derived quantities.

Laguerre ``L_k^(alpha)`` is described by ``(k, alpha)``; Jacobi
``P_k^(alpha, beta)`` by ``(k, alpha, beta)``.  Every bound formula is
written in terms of a handful of derived quantities (``U, V`` for Laguerre,
``s, q, r, p, R, A, B`` for Jacobi) which are computed once per parameter
record and cached.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Union

__all__ = [
    "DomainError",
    "LaguerreParams",
    "JacobiParams",
    "LaguerreDerived",
    "JacobiDerived",
    "PolynomialFamily",
    "derive_laguerre",
    "derive_jacobi",
    "normalize_jacobi",
    "make_family",
]


class DomainError(ValueError):
    """A polynomial parameter lies outside its admissible domain.

    ``field`` names the offending parameter (``"k"``, ``"alpha"`` or ``"beta"``).
    """

    def __init__(self, field: str, value, reason: str):
        self.field = field
        self.value = value
        self.reason = reason
        super().__init__(f"{field}={value!r}: {reason}")


def _check_degree(k) -> int:
    if isinstance(k, bool) or int(k) != k:
        raise DomainError("k", k, "degree must be an integer")
    k = int(k)
    if k < 1:
        raise DomainError("k", k, "degree must be >= 1 (a constant has no zeros)")
    return k


def _check_weight_exponent(name: str, value) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= -1.0:
        raise DomainError(name, value, f"{name} out of domain, need {name} > -1")
    return value


@dataclass(frozen=True)
class LaguerreParams:
    """Degree ``k >= 1`` and ``alpha > -1`` of ``L_k^(alpha)``."""

    k: int
    alpha: float

    family = "laguerre"

    def __post_init__(self):
        object.__setattr__(self, "k", _check_degree(self.k))
        object.__setattr__(self, "alpha", _check_weight_exponent("alpha", self.alpha))

    @cached_property
    def derived(self) -> "LaguerreDerived":
        return derive_laguerre(self)

    def with_degree(self, k: int) -> "LaguerreParams":
        return LaguerreParams(k, self.alpha)


@dataclass(frozen=True)
class JacobiParams:
    """Degree and weight exponents of ``P_k^(alpha, beta)``, stored with ``alpha >= beta``.

    ``reflected`` is True when the caller's original exponents were swapped
    to reach this orientation.  The zeros of the original polynomial are
    the negatives of the zeros of the stored one (``x -> -x`` symmetry).
    Use :func:`normalize_jacobi` to build one from arbitrary exponents.
    """

    k: int
    alpha: float
    beta: float
    reflected: bool = False

    family = "jacobi"

    def __post_init__(self):
        object.__setattr__(self, "k", _check_degree(self.k))
        object.__setattr__(self, "alpha", _check_weight_exponent("alpha", self.alpha))
        object.__setattr__(self, "beta", _check_weight_exponent("beta", self.beta))
        if self.alpha < self.beta:
            raise DomainError(
                "beta", self.beta, "stored orientation requires alpha >= beta; use normalize_jacobi"
            )

    @cached_property
    def derived(self) -> "JacobiDerived":
        return derive_jacobi(self)

    @property
    def original_alpha(self) -> float:
        return self.beta if self.reflected else self.alpha

    @property
    def original_beta(self) -> float:
        return self.alpha if self.reflected else self.beta

    def with_degree(self, k: int) -> "JacobiParams":
        return JacobiParams(k, self.alpha, self.beta, self.reflected)


PolynomialFamily = Union[LaguerreParams, JacobiParams]


def normalize_jacobi(k: int, alpha: float, beta: float) -> tuple[JacobiParams, bool]:
    """Return Jacobi parameters in the ``alpha >= beta`` orientation.

    Ties keep the original order.  When the exponents are swapped the
    returned record has ``reflected=True`` and bounds computed for it must
    be mapped back through ``x1 -> -xk``, ``xk -> -x1``.

    >>> normalize_jacobi(3, 0.0, 2.0)
    (JacobiParams(k=3, alpha=2.0, beta=0.0, reflected=True), True)
    """
    alpha = _check_weight_exponent("alpha", alpha)
    beta = _check_weight_exponent("beta", beta)
    reflected = alpha < beta
    if reflected:
        alpha, beta = beta, alpha
    return JacobiParams(k, alpha, beta, reflected), reflected


def make_family(name: str, k: int, alpha: float, beta: float | None = None) -> PolynomialFamily:
    """Build a parameter record from a family name (``"laguerre"`` / ``"jacobi"``)."""
    name = name.lower()
    if name == "laguerre":
        return LaguerreParams(k, alpha)
    if name == "jacobi":
        if beta is None:
            raise DomainError("beta", beta, "Jacobi family needs beta")
        return normalize_jacobi(k, alpha, beta)[0]
    raise ValueError(f"unknown polynomial family {name!r}")


@dataclass(frozen=True)
class LaguerreDerived:
    k: int
    alpha: float
    V: float
    U: float
    Vsq: float
    Usq: float
    # U^2 - V^2 = 4 sqrt(k (k + alpha + 1)), formed without subtraction
    width: float
    delta: float


def derive_laguerre(params: LaguerreParams) -> LaguerreDerived:
    """Compute ``U = sqrt(k+alpha+1) + sqrt(k)`` and ``V = sqrt(k+alpha+1) - sqrt(k)``.

    ``V`` is formed as ``(alpha+1)/U`` so no digits are lost when ``k`` is
    much larger than ``alpha``.
    """
    if not isinstance(params, LaguerreParams):
        params = LaguerreParams(*params)
    k, alpha = params.k, params.alpha
    b = alpha + 1.0
    root_top = math.sqrt(k + b)
    root_k = math.sqrt(k)
    U = root_top + root_k
    V = b / U
    return LaguerreDerived(
        k=k,
        alpha=alpha,
        V=V,
        U=U,
        Vsq=V * V,
        Usq=U * U,
        width=4.0 * root_k * root_top,
        delta=1.0 / k + 1.0 / b,
    )


@dataclass(frozen=True)
class JacobiDerived:
    k: int
    alpha: float
    beta: float
    s: float
    q: float
    r: float
    p: float
    R: float
    A: float
    B: float
    # r^2 - s^2 = 4 k (k + s)
    r2_minus_s2: float
    # 1 - A^2 and 1 - B^2 from cancellation-free factorizations
    one_minus_A2: float
    one_minus_B2: float


def _clamped_factor(value: float, r: float, name: str) -> float:
    if value >= 0.0:
        return value
    if value < -1e-12 * r**4:
        raise DomainError("k", value, f"factor {name} of R^2 is negative")
    return 0.0


def derive_jacobi(params: JacobiParams) -> JacobiDerived:
    """Compute ``s, q, r, p, R, A, B`` for normalized Jacobi parameters.

    ``A`` and ``B`` are the roots of ``p x^2 + 2q(s+1) x + s^2 + q^2 - r^2``.
    ``B`` is evaluated as ``(r^2 - s^2 - q^2) / (R + q(s+1))``, which equals
    ``(R - q(s+1)) / p`` but avoids the cancellation near ``B = 0``.
    """
    if not isinstance(params, JacobiParams):
        params = normalize_jacobi(*params)[0]
    k, alpha, beta = params.k, params.alpha, params.beta
    s = alpha + beta + 1.0
    q = alpha - beta
    r = 2.0 * k + s
    p = r * r + 2.0 * s + 1.0
    r2_minus_s2 = 4.0 * k * (k + s)
    # r^2 - q^2 + 2s + 1 = (r - q)(r + q) + 2s + 1
    f1 = _clamped_factor((2.0 * k + 2.0 * beta + 1.0) * (2.0 * k + 2.0 * alpha + 1.0) + 2.0 * s + 1.0, r, "r^2-q^2+2s+1")
    f2 = _clamped_factor(r2_minus_s2, r, "r^2-s^2")
    R = math.sqrt(f1 * f2)
    qs1 = q * (s + 1.0)
    # p -+ q(s+1) as sums of positive terms
    p_minus = r2_minus_s2 + 2.0 * (s + 1.0) * (beta + 1.0)
    p_plus = r2_minus_s2 + 2.0 * (s + 1.0) * (alpha + 1.0)
    A = -(R + qs1) / p
    # exact mirror image when alpha == beta
    B = -A if q == 0.0 else (r2_minus_s2 - q * q) / (R + qs1)
    one_plus_A = 4.0 * (beta + 1.0) ** 2 / (p_minus + R)
    one_minus_A = (p_plus + R) / p
    one_minus_B = 4.0 * (alpha + 1.0) ** 2 / (p_plus + R)
    one_plus_B = (p_minus + R) / p
    return JacobiDerived(
        k=k,
        alpha=alpha,
        beta=beta,
        s=s,
        q=q,
        r=r,
        p=p,
        R=R,
        A=A,
        B=B,
        r2_minus_s2=r2_minus_s2,
        one_minus_A2=one_plus_A * one_minus_A,
        one_minus_B2=one_minus_B * one_plus_B,
    )
