"""Closed-form width bound formulas.

Widths here count the least number of degrees of freedom a continuous
low-dimensional substitute needs before it must merge points farther than
epsilon apart. For the unit ball of the p-norm measured in the q-distance
(p < q) the count brackets between ``ceil(eps^-r) - 1`` and
``ceil((2/eps)^r) - 1`` capped at the dimension, where 1/r = 1/p - 1/q.
The q = inf case is exact, and the q <= p regime collapses to the full
dimension for every eps < 1.

Ceilings are guarded: a power within 1e-9 of an integer snaps to it before
the ceiling is taken, because ceil(.)-1 jumps at integer points and float
noise there would flip a bound by one. Powers beyond 2^62 saturate to an
explicit ``None`` marker rather than overflowing; the n-capped bounds then
return n, which is the correct value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .core import Exponents, make_exponents

__all__ = [
    "guarded_count",
    "widim_upper",
    "widim_lower",
    "widim_upper_plateau",
    "widim_lower_plateau",
    "widim_exact_q_infinity",
    "widim_equal_case",
    "EqualCase",
    "WidimBoundReport",
    "bracket",
    "equal_case_report",
    "asymptotic_exponent_fit",
    "ball_inclusion_max_radius",
    "ball_inclusion_holds",
]

#: Integer-snap distance for the guarded ceiling.
CEILING_GUARD = 1e-9

#: Counts above this saturate to None instead of risking float overflow lies.
SATURATION_LIMIT = 2.0**62


def _validate_n(n: int) -> int:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise ValueError(f"dimension must be an integer, got {n!r}")
    n = int(n)
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    return n


def _validate_eps(eps: float) -> float:
    eps = float(eps)
    if not math.isfinite(eps) or eps <= 0.0:
        raise ValueError(f"scale must be a positive finite real, got {eps}")
    return eps


def guarded_count(value: float) -> Optional[int]:
    """ceil(value) - 1 with an integer snap, or None when value exceeds 2^62.

    Values within 1e-9 of an integer are treated as that integer before the
    ceiling. The result is clamped at zero. ``None`` is the saturation
    marker: the count is astronomically large but a min against any real
    dimension is still exact.
    """
    if value < 0.0:
        raise ValueError(f"count argument must be nonnegative, got {value}")
    if not math.isfinite(value) or value > SATURATION_LIMIT:
        return None
    nearest = round(value)
    count = nearest if abs(value - nearest) <= CEILING_GUARD else math.ceil(value)
    return max(count - 1, 0)


def widim_upper_plateau(eps: float, e: Exponents) -> Optional[int]:
    """The dimension-free upper count ceil((2/eps)^r) - 1; None if saturated."""
    eps = _validate_eps(eps)
    return guarded_count((2.0 / eps) ** e.r)


def widim_lower_plateau(eps: float, e: Exponents) -> Optional[int]:
    """The dimension-free lower count ceil(eps^-r) - 1; None if saturated."""
    eps = _validate_eps(eps)
    return guarded_count(eps ** (-e.r))


def widim_upper(n: int, eps: float, e: Exponents) -> int:
    """Upper width bound min(n, ceil((2/eps)^r) - 1)."""
    n = _validate_n(n)
    plateau = widim_upper_plateau(eps, e)
    return n if plateau is None else min(n, plateau)


def widim_lower(n: int, eps: float, e: Exponents) -> int:
    """Lower width bound min(n, ceil(eps^-r) - 1)."""
    n = _validate_n(n)
    plateau = widim_lower_plateau(eps, e)
    return n if plateau is None else min(n, plateau)


def widim_exact_q_infinity(n: int, eps: float, p: float) -> int:
    """Exact width min(n, ceil((2/eps)^p) - 1) for the sup-distance.

    Equals widim_upper(n, eps, make_exponents(p, inf)) for every input.
    """
    p = float(p)
    if not math.isfinite(p) or p < 1.0:
        raise ValueError(f"ball exponent must satisfy p >= 1, got {p}")
    return widim_upper(n, eps, make_exponents(p, math.inf))


def widim_equal_case(n: int, eps: float, p: float, q: float) -> Optional[int]:
    """Exact width n in the q <= p regime for eps < 1.

    Returns None (the out-of-covered-range marker) for eps >= 1, where no
    closed form is available. Raises if q > p; use the bracketing bounds
    there instead.
    """
    n = _validate_n(n)
    eps = _validate_eps(eps)
    p, q = float(p), float(q)
    if math.isnan(p) or math.isnan(q) or q < 1.0 or p < q:
        raise ValueError(f"equal-case formula needs 1 <= q <= p, got p={p}, q={q}")
    return n if eps < 1.0 else None


@dataclass(frozen=True)
class EqualCase:
    """Marker exponent pair for the q <= p regime (no derived rate exists)."""

    p: float
    q: float

    def __post_init__(self):
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "q", float(self.q))
        if math.isnan(self.p) or math.isnan(self.q) or self.q < 1.0 or self.p < self.q:
            raise ValueError(f"equal case needs 1 <= q <= p, got p={self.p}, q={self.q}")


@dataclass(frozen=True)
class WidimBoundReport:
    """One bound query: dimension, scale, exponents, and the bracket."""

    n: int
    epsilon: float
    exponents: Union[Exponents, EqualCase]
    lower: int
    upper: int
    exact: bool

    def __post_init__(self):
        if not 0 <= self.lower <= self.upper <= self.n:
            raise ValueError(
                f"invalid bracket: lower={self.lower}, upper={self.upper}, n={self.n}"
            )
        if self.exact and self.lower != self.upper:
            raise ValueError("an exact report must have lower == upper")


def bracket(n: int, eps: float, e: Exponents) -> WidimBoundReport:
    """Assemble lower and upper bounds into one report.

    For q = inf both sides are replaced by the exact formula and the report
    is flagged exact; otherwise exact means the two bounds coincide.
    """
    n = _validate_n(n)
    eps = _validate_eps(eps)
    if math.isinf(e.q):
        value = widim_exact_q_infinity(n, eps, e.p)
        return WidimBoundReport(n, eps, e, value, value, True)
    lower = widim_lower(n, eps, e)
    upper = widim_upper(n, eps, e)
    return WidimBoundReport(n, eps, e, lower, upper, lower == upper)


def equal_case_report(n: int, eps: float, p: float, q: float) -> WidimBoundReport:
    """Report for the q <= p regime; raises for eps >= 1 (out of range)."""
    value = widim_equal_case(n, eps, p, q)
    if value is None:
        raise ValueError(f"no closed form covers eps >= 1 in the equal case (eps={eps})")
    return WidimBoundReport(n, float(eps), EqualCase(p, q), value, value, True)


def asymptotic_exponent_fit(e: Exponents, eps_grid, use: str = "upper") -> float:
    """Least-squares slope of log(count) against |log eps|.

    Uses the dimension-free plateau counts of the chosen bound family. As
    the grid refines toward zero the slope converges to the rate r for both
    families. The grid must have at least 4 entries, strictly decreasing,
    all inside (0, 1).
    """
    grid = [float(v) for v in eps_grid]
    if len(grid) < 4:
        raise ValueError("need at least 4 grid points for a meaningful fit")
    if any(not 0.0 < v < 1.0 for v in grid):
        raise ValueError("grid values must lie strictly inside (0, 1)")
    if any(a <= b for a, b in zip(grid, grid[1:])):
        raise ValueError("grid must be strictly decreasing")
    plateau = widim_upper_plateau if use == "upper" else (
        widim_lower_plateau if use == "lower" else None
    )
    if plateau is None:
        raise ValueError(f"bound family must be 'upper' or 'lower', got {use!r}")
    counts = [plateau(v, e) for v in grid]
    if any(c is None for c in counts):
        raise ValueError("grid reaches the saturation regime; shrink it")
    if any(c < 1 for c in counts):
        raise ValueError("grid too coarse: zero counts have no logarithm")
    xs = np.array([abs(math.log(v)) for v in grid])
    ys = np.array([math.log(c) for c in counts])
    slope, _ = np.polyfit(xs, ys, 1)
    return float(slope)


def ball_inclusion_max_radius(m: int, e: Exponents) -> float:
    """Largest rho with the q-ball of radius rho inside the unit p-ball, m coords.

    The norm comparison ||x||_p <= m^(1/r) ||x||_q on m coordinates gives
    rho = m^(-1/r), attained by the constant-coordinate corner vector.
    """
    if not isinstance(m, (int, np.integer)) or isinstance(m, bool) or int(m) < 1:
        raise ValueError(f"coordinate count must be a positive integer, got {m!r}")
    return float(int(m) ** (-e.inverse_rate))


def ball_inclusion_holds(rho: float, m: int, e: Exponents, tol: float = 1e-12) -> bool:
    """Inclusion predicate rho * m^(1/r) <= 1 (+ tol)."""
    if not isinstance(m, (int, np.integer)) or isinstance(m, bool) or int(m) < 1:
        raise ValueError(f"coordinate count must be a positive integer, got {m!r}")
    return float(rho) * int(m) ** e.inverse_rate <= 1.0 + tol
