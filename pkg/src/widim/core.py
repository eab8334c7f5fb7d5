"""Numeric primitives shared by every other module.

Vectors are plain 1-D float64 numpy arrays validated by :func:`as_vector`.
Distances and norms branch explicitly on an infinite exponent instead of
approximating it with a large float, and every reduction runs in a fixed
order so results are reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "as_vector",
    "lq_distance",
    "lp_norm_power",
    "in_lp_ball",
    "Exponents",
    "make_exponents",
]

#: Default slack on the p-th power sum when testing ball membership.
#: Extremal vectors sit exactly on the boundary, so a strict `<= 1` would
#: reject them on rounding noise alone.
BALL_TOLERANCE = 1e-12


def as_vector(x) -> np.ndarray:
    """Validate and return ``x`` as a 1-D float64 array.

    Accepts any sequence of real numbers. Rejects empty input, higher
    dimensional arrays, and non-finite entries. The returned array may share
    memory with the input; callers treat vectors as immutable values.
    """
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got shape {arr.shape}")
    if arr.size < 1:
        raise ValueError("vector must have at least one coordinate")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector coordinates must be finite")
    return arr


def _validate_q(q: float) -> float:
    q = float(q)
    if math.isnan(q) or q < 1.0:
        raise ValueError(f"distance exponent must satisfy q >= 1 or q = inf, got {q}")
    return q


def lq_distance(x, y, q: float) -> float:
    """Distance (sum_k |x_k - y_k|^q)^(1/q), with q = inf meaning max_k |x_k - y_k|.

    Both arguments must have the same dimension. The same power-sum
    expression is used for every finite q, including q = 1 and q = 2, so the
    scalar value agrees bitwise with the row-wise batch reductions used by
    the certification drivers.
    """
    xv, yv = as_vector(x), as_vector(y)
    if xv.shape != yv.shape:
        raise ValueError(f"dimension mismatch: {xv.shape[0]} vs {yv.shape[0]}")
    q = _validate_q(q)
    diff = np.abs(xv - yv)
    if math.isinf(q):
        return float(np.max(diff))
    return float(np.sum(diff**q) ** (1.0 / q))


def lp_norm_power(x, p: float) -> float:
    """Return sum_k |x_k|^p, the quantity a ball-membership test compares to 1.

    For ``p = inf`` the power sum degenerates to ``max_k |x_k|`` and the same
    membership predicate applies.
    """
    xv = as_vector(x)
    p = float(p)
    if math.isnan(p) or p < 1.0:
        raise ValueError(f"ball exponent must satisfy p >= 1, got {p}")
    a = np.abs(xv)
    if math.isinf(p):
        return float(np.max(a))
    return float(np.sum(a**p))


def in_lp_ball(x, p: float, tol: float = BALL_TOLERANCE) -> bool:
    """Membership test for the unit ball: lp_norm_power(x, p) <= 1 + tol."""
    return lp_norm_power(x, p) <= 1.0 + tol


@dataclass(frozen=True)
class Exponents:
    """The triple (p, q, r) with 1/p - 1/q = 1/r.

    ``p`` is the ball exponent, ``q`` the distance exponent, and ``r`` the
    derived rate that drives every width bound. ``q = math.inf`` is the
    distinguished infinite value, in which case ``r = p`` exactly.
    """

    p: float
    q: float
    r: float

    def __post_init__(self):
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "q", float(self.q))
        object.__setattr__(self, "r", float(self.r))
        if not math.isfinite(self.p) or self.p < 1.0:
            raise ValueError(f"need 1 <= p < inf, got p={self.p}")
        if not self.q > self.p:
            raise ValueError(f"need q > p, got p={self.p}, q={self.q}")
        if math.isinf(self.q):
            if self.r != self.p:
                raise ValueError(f"q = inf requires r = p, got r={self.r}, p={self.p}")
        else:
            if not math.isfinite(self.r) or self.r <= 0.0:
                raise ValueError(f"invalid rate r={self.r}")
            gap = 1.0 / self.p - 1.0 / self.q
            if abs(gap - 1.0 / self.r) > 1e-12 * abs(1.0 / self.r):
                raise ValueError(
                    f"rate mismatch: 1/p - 1/q = {gap}, but 1/r = {1.0 / self.r}"
                )

    @property
    def inverse_rate(self) -> float:
        """1/r computed from p and q directly; 0 never occurs since q > p."""
        if math.isinf(self.q):
            return 1.0 / self.p
        return 1.0 / self.p - 1.0 / self.q


def make_exponents(p: float, q: float) -> Exponents:
    """Build the exponent triple from p and q, deriving r = pq/(q-p).

    ``q = math.inf`` gives r = p. Raises on p < 1 or p >= q.
    """
    p, q = float(p), float(q)
    if not math.isfinite(p) or p < 1.0:
        raise ValueError(f"need 1 <= p < inf, got p={p}")
    if not q > p:
        raise ValueError(f"need p < q, got p={p}, q={q}")
    r = p if math.isinf(q) else p * q / (q - p)
    return Exponents(p=p, q=q, r=r)
