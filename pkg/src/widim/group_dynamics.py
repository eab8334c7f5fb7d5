"""Desk-scale lattice dynamics: weighted metrics, tail sets, and the embedding check.

Points here are finitely supported elements of the unit p-ball over the
integer lattice Z^d. A summable positive weight induces a distance
``d(x, y) = sum_gamma w(gamma) |x_gamma - y_gamma|``, and translating both
points over a finite probe set Omega gives the dynamical distance
``d_Omega = max over translates``. Because the weight's tail is certified
by a closed form, every probe direction only sees a finite coordinate box
up to eps/4 of mass, and projecting to the union of those boxes followed by
the sparsifying threshold map embeds the ball at scale eps with a
coordinate count that does not grow with Omega. The ratio of that constant
to the size of growing boxes is the vanishing quantity the
:func:`mean_dimension_table` tabulates.

Randomized drivers follow the same determinism contract as the
certification module: per-pair derived streams, fixed block sizes, and
index-ordered reductions, so reports are byte-identical for any worker
count.
"""

from __future__ import annotations

import itertools
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from ._streams import DEFAULT_SEED, DOMAIN_PAIRS, StreamFactory
from .bounds import guarded_count
from .certify import BOUND_TOLERANCE, sample_lp_ball

__all__ = [
    "LatticeBox",
    "WeightedGroupMetric",
    "geometric_weight_metric",
    "FinitelySupportedPoint",
    "translate",
    "weighted_distance",
    "omega_distance",
    "tail_set",
    "widim_constant",
    "EmbeddingReport",
    "embedding_check",
    "MeanDimensionTable",
    "mean_dimension_table",
    "embedding_report_to_json",
    "embedding_report_from_json",
    "embedding_csv_header",
    "embedding_to_csv_row",
    "table_to_json",
    "table_csv_header",
    "table_to_csv_rows",
]

#: Pairs per evaluation block in embedding_check (fixed; see module docstring).
PAIR_BLOCK = 512

#: Cap on drawn support sizes, keeping sampled points genuinely sparse.
MAX_SUPPORT = 8
MAX_OUTSIDE_SUPPORT = 6


def _as_point(gamma, dim: int) -> tuple:
    pt = tuple(int(v) for v in np.atleast_1d(gamma))
    if len(pt) != dim:
        raise ValueError(f"lattice point {pt} does not match dimension {dim}")
    return pt


@dataclass(frozen=True)
class LatticeBox:
    """The cube of lattice points within sup-distance ``radius`` of ``center``."""

    center: tuple
    radius: int

    def __post_init__(self):
        center = tuple(int(v) for v in self.center)
        if len(center) < 1:
            raise ValueError("box center must have at least one coordinate")
        if int(self.radius) < 0:
            raise ValueError(f"box radius must be nonnegative, got {self.radius}")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "radius", int(self.radius))

    @property
    def dim(self) -> int:
        return len(self.center)

    def __len__(self) -> int:
        return (2 * self.radius + 1) ** self.dim

    def __contains__(self, gamma) -> bool:
        pt = _as_point(gamma, self.dim)
        return all(abs(a - b) <= self.radius for a, b in zip(pt, self.center))

    def __iter__(self):
        side = range(-self.radius, self.radius + 1)
        for offset in itertools.product(side, repeat=self.dim):
            yield tuple(c + o for c, o in zip(self.center, offset))


@dataclass(frozen=True, eq=False)
class WeightedGroupMetric:
    """A positive summable weight on Z^d with certified mass accounting.

    ``weight`` maps a lattice point to its mass. ``total_bound`` is a closed
    form upper bound (at most 1) on the full sum, and ``tail_bound(K)``
    certifies the mass outside the centered box of radius K. Both are exact
    for the built-in geometric family.
    """

    dim_d: int
    weight: Callable[[tuple], float]
    tail_bound: Callable[[int], float]
    total_bound: float
    description: str = "custom"

    def __post_init__(self):
        if int(self.dim_d) < 1:
            raise ValueError(f"lattice dimension must be positive, got {self.dim_d}")
        object.__setattr__(self, "dim_d", int(self.dim_d))
        total = float(self.total_bound)
        if not 0.0 < total <= 1.0:
            raise ValueError(f"total weight bound must lie in (0, 1], got {total}")
        object.__setattr__(self, "total_bound", total)


def geometric_weight_metric(
    dim_d: int = 1, base: float = 2.0, total: float = 0.75
) -> WeightedGroupMetric:
    """The default weight family: w(gamma) = scale * base^-|gamma|_1.

    ``scale`` is chosen in closed form so the full sum equals ``total``
    (for d = 1, base = 2, total = 3/4 this gives w(0) = 1/4). Per-axis
    geometric decay makes box partial sums a product of geometric series,
    so the tail bound is an exact closed form, not an estimate.
    """
    dim_d = int(dim_d)
    base, total = float(base), float(total)
    if dim_d < 1:
        raise ValueError(f"lattice dimension must be positive, got {dim_d}")
    if not base > 1.0:
        raise ValueError(f"decay base must exceed 1, got {base}")
    if not 0.0 < total <= 1.0:
        raise ValueError(f"total weight must lie in (0, 1], got {total}")
    axis_total = (base + 1.0) / (base - 1.0)  # sum over one axis of base^-|k|
    scale = total / axis_total**dim_d

    def weight(gamma) -> float:
        pt = _as_point(gamma, dim_d)
        return scale * base ** (-sum(abs(v) for v in pt))

    def tail_bound(radius: int) -> float:
        if radius < 0:
            raise ValueError("tail radius must be nonnegative")
        axis_partial = 1.0 + 2.0 * (1.0 - base ** (-radius)) / (base - 1.0)
        return total - scale * axis_partial**dim_d

    return WeightedGroupMetric(
        dim_d=dim_d,
        weight=weight,
        tail_bound=tail_bound,
        total_bound=total,
        description=f"geometric(d={dim_d}, base={base:g}, total={total:g})",
    )


@dataclass(frozen=True, eq=False)
class FinitelySupportedPoint:
    """A lattice point assignment with finite support inside the unit p-ball.

    Stored canonically: support sorted lexicographically, exact zeros
    dropped. Construction validates ball membership with 1e-12 slack.
    """

    support: tuple
    values: tuple
    p: float
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        p = float(self.p)
        if math.isnan(p) or p < 1.0:
            raise ValueError(f"ball exponent must satisfy p >= 1 or p = inf, got {p}")
        pts = [tuple(int(c) for c in pt) for pt in self.support]
        vals = [float(v) for v in self.values]
        if len(pts) != len(vals):
            raise ValueError("support and values must have equal length")
        if len(set(len(pt) for pt in pts)) > 1:
            raise ValueError("support points must share one dimension")
        if len(set(pts)) != len(pts):
            raise ValueError("support points must be distinct")
        if any(not math.isfinite(v) for v in vals):
            raise ValueError("values must be finite")
        kept = sorted((pt, v) for pt, v in zip(pts, vals) if v != 0.0)
        pts = tuple(pt for pt, _ in kept)
        vals = tuple(v for _, v in kept)
        if math.isinf(p):
            mass = max((abs(v) for v in vals), default=0.0)
        else:
            mass = sum(abs(v) ** p for v in vals)
        if mass > 1.0 + 1e-12:
            raise ValueError(f"point lies outside the unit ball: mass {mass}")
        object.__setattr__(self, "support", pts)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "_index", dict(zip(pts, vals)))

    @property
    def dim(self) -> Optional[int]:
        return len(self.support[0]) if self.support else None

    def value_at(self, gamma) -> float:
        return self._index.get(tuple(int(c) for c in np.atleast_1d(gamma)), 0.0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinitelySupportedPoint):
            return NotImplemented
        return (
            self.p == other.p
            and self.support == other.support
            and self.values == other.values
        )

    __hash__ = None


def translate(x: FinitelySupportedPoint, delta) -> FinitelySupportedPoint:
    """Shift the point: the new value at gamma is the old value at delta + gamma."""
    if not x.support:
        return x
    d = _as_point(delta, len(x.support[0]))
    moved = tuple(tuple(c - o for c, o in zip(pt, d)) for pt in x.support)
    return FinitelySupportedPoint(moved, x.values, x.p)


def weighted_distance(
    x: FinitelySupportedPoint, y: FinitelySupportedPoint, M: WeightedGroupMetric
) -> float:
    """Exact weighted coordinate-difference sum over the union of supports.

    Terms are accumulated in sorted support order, so equal inputs produce
    bit-equal sums.
    """
    if x.p != y.p:
        raise ValueError(f"points use different ball exponents: {x.p} vs {y.p}")
    total = 0.0
    for gamma in sorted(set(x.support) | set(y.support)):
        total += M.weight(gamma) * abs(x.value_at(gamma) - y.value_at(gamma))
    return total


def omega_distance(
    x: FinitelySupportedPoint,
    y: FinitelySupportedPoint,
    M: WeightedGroupMetric,
    omega,
) -> float:
    """max over delta in omega of the weighted distance between translates."""
    deltas = sorted(tuple(int(c) for c in np.atleast_1d(d)) for d in omega)
    if not deltas:
        raise ValueError("omega must be a nonempty set of lattice points")
    best = -math.inf
    for delta in deltas:
        dist = weighted_distance(translate(x, delta), translate(y, delta), M)
        if dist > best:
            best = dist
    return best


def tail_set(M: WeightedGroupMetric, delta, eps: float) -> LatticeBox:
    """Smallest certified box around delta whose complement weighs at most eps/4."""
    eps = float(eps)
    if not eps > 0.0:
        raise ValueError(f"scale must be positive, got {eps}")
    center = _as_point(delta, M.dim_d)
    target = eps / 4.0
    radius = 0
    while M.tail_bound(radius) > target:
        radius += 1
        if radius > 100_000:
            raise ValueError("weight tail decays too slowly for this scale")
    return LatticeBox(center=center, radius=radius)


def widim_constant(p: float, eps: float) -> Optional[int]:
    """The probe-set-independent width ceiling ceil((4/eps)^p) - 1.

    Uses the same guarded ceiling as the bound formulas; returns None in
    the saturation regime (astronomically small eps).
    """
    p = float(p)
    if math.isnan(p) or p < 1.0:
        raise ValueError(f"ball exponent must satisfy p >= 1, got {p}")
    eps = float(eps)
    if not eps > 0.0 or not math.isfinite(eps):
        raise ValueError(f"scale must be a positive finite real, got {eps}")
    return guarded_count((4.0 / eps) ** p)


# --------------------------------------------------------------------------
# Embedding check


@dataclass(frozen=True)
class EmbeddingReport:
    """Outcome of the projection-embedding soundness run.

    For every sampled pair whose projections to the union box agree within
    eps/2 in the sup norm, the dynamical distance must stay at or below eps
    (+ 1e-9). ``worst_margin`` is the largest d_Omega - eps among checked
    pairs (negative is healthy); ``witness`` carries the first violating
    pair, if any. ``elapsed`` is excluded from equality and nulled in
    serialized documents.
    """

    dim_d: int
    p: float
    eps: float
    omega: tuple
    omega_prime_size: int
    sample_count: int
    seed: int
    checked_count: int
    failure_count: int
    worst_margin: Optional[float]
    witness: Optional[dict]
    elapsed: float = field(compare=False)

    @property
    def passed(self) -> bool:
        return self.failure_count == 0


def _point_payload(x: FinitelySupportedPoint) -> dict:
    return {"support": [list(pt) for pt in x.support], "values": list(x.values)}


def _draw_point(gen, window_pts, p, max_support) -> FinitelySupportedPoint:
    k = int(gen.integers(1, max_support + 1))
    idx = gen.choice(len(window_pts), size=k, replace=False)
    vals = sample_lp_ball(k, p, gen)
    return FinitelySupportedPoint(
        tuple(window_pts[int(i)] for i in idx), tuple(vals), p
    )


def _pair(gen, kind, window_pts, outside_pts, prime_set, p, eps):
    """Draw one (x, y) pair. Kinds cycle: independent, tail-only, perturbed."""
    max_support = min(len(window_pts), MAX_SUPPORT)
    x = _draw_point(gen, window_pts, p, max_support)
    if kind == 0:
        return x, _draw_point(gen, window_pts, p, max_support)
    if kind == 1:
        # Same inside the union box, fresh mass outside: exercises the tail
        # branch of the distance estimate with an always-true hypothesis.
        inside = [(pt, v) for pt, v in zip(x.support, x.values) if pt in prime_set]
        if math.isinf(p):
            budget_scale = 1.0
        else:
            mass_in = sum(abs(v) ** p for _, v in inside)
            budget_scale = max(1.0 - mass_in, 0.0) ** (1.0 / p)
        pts = [pt for pt, _ in inside]
        vals = [v for _, v in inside]
        cap = min(len(outside_pts), MAX_OUTSIDE_SUPPORT)
        k2 = int(gen.integers(0, cap + 1)) if cap else 0
        if k2 > 0:
            idx = gen.choice(len(outside_pts), size=k2, replace=False)
            u = sample_lp_ball(k2, p, gen)
            pts.extend(outside_pts[int(i)] for i in idx)
            vals.extend(budget_scale * u)
        return x, FinitelySupportedPoint(tuple(pts), tuple(vals), p)
    # kind == 2: sup-norm perturbation well inside the hypothesis threshold.
    noise = gen.uniform(-eps / 8.0, eps / 8.0, size=len(x.values))
    vals = np.asarray(x.values) + noise
    if math.isinf(p):
        peak = float(np.max(np.abs(vals))) if vals.size else 0.0
        if peak > 1.0:
            vals /= peak
    else:
        mass = float(np.sum(np.abs(vals) ** p))
        if mass > 1.0:
            vals *= mass ** (-1.0 / p)
    return x, FinitelySupportedPoint(x.support, tuple(vals), p)


def embedding_check(
    M: WeightedGroupMetric,
    omega,
    p: float,
    eps: float,
    samples: int,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
) -> EmbeddingReport:
    """Sample point pairs and verify the projection-embedding inequality.

    Builds the union of per-probe tail boxes, draws pairs with support in a
    window twice the union's radius (so a controlled share of mass sits
    outside the projection), and whenever two points project within eps/2
    of each other in the sup norm asserts their dynamical distance is at
    most eps + 1e-9. Pair kinds cycle through independent draws, pairs
    differing only outside the union box, and small perturbations, so both
    halves of the estimate (projection term and tail term) are exercised.
    """
    eps = float(eps)
    if not eps > 0.0:
        raise ValueError(f"scale must be positive, got {eps}")
    if not isinstance(samples, (int, np.integer)) or int(samples) < 1:
        raise ValueError(f"samples must be a positive integer, got {samples!r}")
    samples = int(samples)
    seed = int(seed)
    t0 = time.perf_counter()

    deltas = tuple(sorted(_as_point(d, M.dim_d) for d in omega))
    if not deltas:
        raise ValueError("omega must be a nonempty set of lattice points")

    prime: set = set()
    for delta in deltas:
        prime |= set(tail_set(M, delta, eps))
    prime_pts = tuple(sorted(prime))
    window_radius = 2 * max(max(abs(c) for c in pt) for pt in prime_pts)
    window_pts = tuple(sorted(LatticeBox((0,) * M.dim_d, window_radius)))
    outside_pts = tuple(pt for pt in window_pts if pt not in prime)

    def eval_block(block):
        lo, hi = block
        factory = StreamFactory(seed, DOMAIN_PAIRS)
        checked = failures = 0
        worst = None  # (margin, index)
        witness = None
        for i in range(lo, hi):
            gen = factory.generator(i)
            x, y = _pair(gen, i % 3, window_pts, outside_pts, prime, p, eps)
            gap = max(
                (abs(x.value_at(pt) - y.value_at(pt)) for pt in prime_pts),
                default=0.0,
            )
            if gap <= eps / 2.0:
                checked += 1
                margin = omega_distance(x, y, M, deltas) - eps
                if worst is None or margin > worst[0]:
                    worst = (margin, i)
                if margin > BOUND_TOLERANCE:
                    failures += 1
                    if witness is None:
                        witness = {
                            "index": i,
                            "margin": margin,
                            "x": _point_payload(x),
                            "y": _point_payload(y),
                        }
        return checked, failures, worst, witness

    blocks = [(lo, min(lo + PAIR_BLOCK, samples)) for lo in range(0, samples, PAIR_BLOCK)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=int(workers)) as pool:
            results = list(pool.map(eval_block, blocks))
    else:
        results = [eval_block(b) for b in blocks]

    checked = failures = 0
    worst = None
    witness = None
    for blk_checked, blk_failures, blk_worst, blk_witness in results:
        checked += blk_checked
        failures += blk_failures
        if blk_worst is not None and (worst is None or blk_worst[0] > worst[0]):
            worst = blk_worst  # block scan order breaks ties toward low index
        if witness is None:
            witness = blk_witness

    return EmbeddingReport(
        dim_d=M.dim_d,
        p=float(p),
        eps=eps,
        omega=deltas,
        omega_prime_size=len(prime_pts),
        sample_count=samples,
        seed=seed,
        checked_count=checked,
        failure_count=failures,
        worst_margin=None if worst is None else worst[0],
        witness=witness,
        elapsed=time.perf_counter() - t0,
    )


def embedding_report_to_json(report: EmbeddingReport) -> str:
    doc = {
        "dim_d": report.dim_d,
        "p": "inf" if math.isinf(report.p) else report.p,
        "eps": report.eps,
        "omega": [list(pt) for pt in report.omega],
        "omega_prime_size": report.omega_prime_size,
        "sample_count": report.sample_count,
        "seed": report.seed,
        "checked_count": report.checked_count,
        "failure_count": report.failure_count,
        "worst_margin": report.worst_margin,
        "witness": report.witness,
        "elapsed": None,
    }
    return json.dumps(doc)


def embedding_report_from_json(text: str) -> EmbeddingReport:
    doc = json.loads(text)
    return EmbeddingReport(
        dim_d=int(doc["dim_d"]),
        p=math.inf if doc["p"] == "inf" else float(doc["p"]),
        eps=float(doc["eps"]),
        omega=tuple(tuple(int(c) for c in pt) for pt in doc["omega"]),
        omega_prime_size=int(doc["omega_prime_size"]),
        sample_count=int(doc["sample_count"]),
        seed=int(doc["seed"]),
        checked_count=int(doc["checked_count"]),
        failure_count=int(doc["failure_count"]),
        worst_margin=doc["worst_margin"],
        witness=doc["witness"],
        elapsed=math.nan,
    )


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def embedding_csv_header() -> str:
    return (
        "dim_d,p,eps,omega_size,omega_prime_size,sample_count,seed,"
        "checked_count,failure_count,worst_margin,elapsed"
    )


def embedding_to_csv_row(report: EmbeddingReport) -> str:
    p = "inf" if math.isinf(report.p) else _fmt(report.p)
    worst = "" if report.worst_margin is None else _fmt(report.worst_margin)
    return (
        f"{report.dim_d},{p},{_fmt(report.eps)},{len(report.omega)},"
        f"{report.omega_prime_size},{report.sample_count},{report.seed},"
        f"{report.checked_count},{report.failure_count},{worst},"
    )


# --------------------------------------------------------------------------
# Mean dimension table


@dataclass(frozen=True)
class MeanDimensionTable:
    """Rows (radius, box size, constant, ratio) for growing probe boxes.

    The width ceiling is a constant in the box size, so the ratio column
    decreases strictly to zero: the per-coordinate dimension count of the
    ball vanishes.
    """

    dim_d: int
    p: float
    eps: float
    constant: int
    rows: tuple  # of (radius, omega_size, ratio)


def mean_dimension_table(
    M: WeightedGroupMetric, p: float, eps: float, box_radii
) -> MeanDimensionTable:
    """Tabulate constant / |box| for probe boxes [-i, i]^d, i in box_radii."""
    radii = [int(r) for r in box_radii]
    if not radii:
        raise ValueError("need at least one box radius")
    if any(r < 0 for r in radii):
        raise ValueError("box radii must be nonnegative")
    if any(a >= b for a, b in zip(radii, radii[1:])):
        raise ValueError("box radii must be strictly increasing")
    constant = widim_constant(p, eps)
    if constant is None:
        raise ValueError("scale so small the width constant saturates; increase eps")
    rows = []
    for r in radii:
        size = (2 * r + 1) ** M.dim_d
        rows.append((r, size, constant / size))
    return MeanDimensionTable(
        dim_d=M.dim_d, p=float(p), eps=float(eps), constant=constant, rows=tuple(rows)
    )


def table_to_json(table: MeanDimensionTable) -> str:
    doc = {
        "dim_d": table.dim_d,
        "p": "inf" if math.isinf(table.p) else table.p,
        "eps": table.eps,
        "widim_constant": table.constant,
        "rows": [
            {"radius": r, "omega_size": size, "ratio": ratio}
            for r, size, ratio in table.rows
        ],
    }
    return json.dumps(doc)


def table_csv_header() -> str:
    return "radius,omega_size,widim_constant,ratio"


def table_to_csv_rows(table: MeanDimensionTable) -> list:
    return [
        f"{r},{size},{table.constant},{_fmt(ratio)}" for r, size, ratio in table.rows
    ]
