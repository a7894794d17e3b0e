"""Adaptive Simpson quadrature on logarithmically spaced panels."""

from __future__ import annotations

import math
from typing import Callable

from .errors import InvalidArgumentError, NumericalError


def _simpson(fa: float, fm: float, fb: float, h: float) -> float:
    return h / 6.0 * (fa + 4.0 * fm + fb)


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    abs_tol: float,
    max_intervals: int = 200_000,
) -> tuple[float, float]:
    """Integrate f over [a, b]; returns (value, error estimate).

    Intervals are split while |S(left) + S(right) - S(whole)| > 15 * tol,
    with the tolerance halved at each split; accepted pieces get the
    Richardson correction.
    """
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    stack = [(a, b, fa, fm, fb, _simpson(fa, fm, fb, b - a), abs_tol)]
    total = 0.0
    err = 0.0
    used = 1
    while stack:
        lo, hi, flo, fmid, fhi, whole, tol = stack.pop()
        mid = 0.5 * (lo + hi)
        fl, fr = f(0.5 * (lo + mid)), f(0.5 * (mid + hi))
        left = _simpson(flo, fl, fmid, mid - lo)
        right = _simpson(fmid, fr, fhi, hi - mid)
        delta = left + right - whole
        if abs(delta) <= 15.0 * tol or hi - lo < 1e-12 * max(1.0, abs(lo)):
            total += left + right + delta / 15.0
            err += abs(delta) / 15.0
            continue
        used += 1
        if used > max_intervals:
            rest = sum(s[5] for s in stack) + left + right
            raise NumericalError(
                f"no convergence within {max_intervals} subdivisions",
                estimate=total + rest,
                error=err + abs(delta),
            )
        stack.append((lo, mid, flo, fl, fmid, left, 0.5 * tol))
        stack.append((mid, hi, fmid, fr, fhi, right, 0.5 * tol))
    return total, err


def integrate_log_scale(
    g: Callable[[float], float],
    lower: float,
    upper: float,
    rel_tol: float = 1e-9,
    panels_per_e: int = 2,
    max_intervals: int = 200_000,
) -> float:
    """Integrate g(y) dy over [lower, upper] with 0 < lower, substituting y = e^u.

    Initial panels are uniform in u (log-spaced in y). A coarse pass fixes the
    absolute target ``rel_tol * |coarse value|`` which is shared between panels
    in proportion to their width.
    """
    if rel_tol <= 0:
        raise InvalidArgumentError("tolerance must be positive")
    if lower <= 0 or upper < lower:
        raise InvalidArgumentError(f"invalid bounds [{lower}, {upper}]")
    if upper == lower:
        return 0.0
    u0, u1 = math.log(lower), math.log(upper)

    def h(u: float) -> float:
        y = math.exp(u)
        return g(y) * y

    n = max(4, math.ceil((u1 - u0) * panels_per_e))
    edges = [u0 + (u1 - u0) * i / n for i in range(n + 1)]
    edges[-1] = u1
    coarse = sum(
        _simpson(h(x0), h(0.5 * (x0 + x1)), h(x1), x1 - x0) for x0, x1 in zip(edges, edges[1:])
    )
    target = rel_tol * abs(coarse) if coarse else rel_tol
    # guard against the coarse pass overestimating by a large factor
    target *= 0.5
    total = 0.0
    for x0, x1 in zip(edges, edges[1:]):
        value, _ = adaptive_simpson(h, x0, x1, target * (x1 - x0) / (u1 - u0), max_intervals)
        total += value
    return total
