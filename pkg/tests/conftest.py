"""Shared oracles and the acceptance-line reporter."""

from __future__ import annotations

import mpmath as mp
import numpy as np
import pytest

from extremezeros import JacobiParams, LaguerreParams

# (label, ok, detail) for every acceptance criterion that ran
ACCEPTANCE_LINES: list[tuple[str, bool, str]] = []


def report(label: str, ok: bool, detail: str = "") -> bool:
    line = f"[{'PASS' if ok else 'FAIL'}] {label}" + (f": {detail}" if detail else "")
    print(line)
    ACCEPTANCE_LINES.append((label, ok, detail))
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in ACCEPTANCE_LINES:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {label}" + (f": {detail}" if detail else ""))


def mp_coefficients(family, dps=50):
    """Monic recurrence coefficients computed in ``dps`` digits from the float parameters."""
    with mp.workdps(dps):
        k = family.k
        if isinstance(family, LaguerreParams):
            al = mp.mpf(family.alpha)
            return [2 * n + 1 + al for n in range(k)], [n * (n + al) for n in range(k)]
        al, be = mp.mpf(family.original_alpha), mp.mpf(family.original_beta)
        a, b = [], [mp.mpf(0)]
        for n in range(k):
            t = 2 * n + al + be
            a.append((be - al) / (al + be + 2) if n == 0 else (be * be - al * al) / (t * (t + 2)))
            if n == 1:
                b.append(4 * (al + 1) * (be + 1) / ((al + be + 2) ** 2 * (al + be + 3)))
            elif n > 1:
                b.append(4 * n * (n + al) * (n + be) * (n + al + be) / (t * t * (t + 1) * (t - 1)))
        return a, b[:k]


def mp_poly(a, b, x):
    p0, p1 = mp.mpf(1), x - a[0]
    for n in range(1, len(a)):
        p0, p1 = p1, (x - a[n]) * p1 - b[n] * p0
    return p1


def mp_zeros(family, guesses, dps=50):
    """Zeros polished in ``dps`` digits, started from ``guesses`` (must be close)."""
    a, b = mp_coefficients(family, dps)
    with mp.workdps(dps):
        return np.array(
            [
                float(mp.findroot(lambda x: mp_poly(a, b, x), mp.mpf(float(g)), tol=mp.mpf(10) ** (10 - dps), verify=False))
                for g in guesses
            ]
        )


@pytest.fixture
def lag2():
    return LaguerreParams(2, 0.0)


@pytest.fixture
def leg5():
    return JacobiParams(5, 0.0, 0.0)
