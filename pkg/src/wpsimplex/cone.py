"""Brute-force geometry of cone(Delta(1,q)): parallelepiped points, lattice
points by height, Hilbert bases on small instances, and an IDP oracle that is
independent of the number-theoretic test.

The cone over Delta(1,q) is spanned by the rays (1, e_1), ..., (1, e_n) and
(1, -q).  Every lattice point decomposes uniquely as one fundamental-
parallelepiped point plus a nonnegative integer combination of the rays; the
parallelepiped points are indexed by b in [0, N) as

    p(b) = (w(q,b); -floor(q_1 b / N), ..., -floor(q_n b / N)),

an injective map whose height multiset realizes the h* coefficients.

Membership of an integer point (h, y) is decided exactly: solving in the ray
basis gives lambda_0 = (h - sum y_i) / N and lambda_i = y_i + lambda_0 q_i,
and the point lies in the cone iff all of these are >= 0.  The test below
cross-multiplies by N so only integer arithmetic is involved.

Enumerations estimate their size first and raise BudgetExceededError past
the cap; they never silently truncate.  All results are plain values, and
candidate irreducibility checks are independent, so callers may fan them out
to workers and merge sorted.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .ehrhart import weight
from .errors import BudgetExceededError
from .weights import Weights, WeightVector, from_support_form, SupportForm

__all__ = [
    "ConePoint",
    "DEFAULT_MAX_POINTS",
    "DEFAULT_HEIGHT_BUDGET",
    "ray_generators",
    "in_cone",
    "fpp_point",
    "fundamental_points",
    "lattice_points_at_height",
    "hilbert_basis",
    "is_idp_oracle",
]

DEFAULT_MAX_POINTS = 10_000_000
DEFAULT_HEIGHT_BUDGET = 4


@dataclass(frozen=True, order=True)
class ConePoint:
    """Integer point of cone(Delta(1,q)): explicit height plus n coordinates."""

    height: int
    coords: tuple[int, ...]

    def __add__(self, other: "ConePoint") -> "ConePoint":
        return ConePoint(self.height + other.height,
                         tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "ConePoint") -> "ConePoint":
        return ConePoint(self.height - other.height,
                         tuple(a - b for a, b in zip(self.coords, other.coords)))


def _entries(q: Weights) -> WeightVector:
    return from_support_form(q) if isinstance(q, SupportForm) else q


def ray_generators(q: Weights) -> tuple[ConePoint, ...]:
    """(1, e_1), ..., (1, e_n), (1, -q)."""
    q = _entries(q)
    n = q.n
    rays = [ConePoint(1, tuple(1 if i == j else 0 for j in range(n))) for i in range(n)]
    rays.append(ConePoint(1, tuple(-e for e in q.entries)))
    return tuple(rays)


def in_cone(q: Weights, point: ConePoint) -> bool:
    """Exact membership test via the rational ray-basis solve, cross-multiplied."""
    q = _entries(q)
    volume = q.volume
    t = point.height - sum(point.coords)  # N * lambda_0
    if point.height < 0 or t < 0:
        return False
    for y, w in zip(point.coords, q.entries):
        if y * volume + t * w < 0:  # N * lambda_i
            return False
    return True


def fpp_point(q: Weights, b: int) -> ConePoint:
    """Fundamental-parallelepiped point p(b); injective over 0 <= b < N."""
    q = _entries(q)
    volume = q.volume
    if not 0 <= b < volume:
        raise ValueError(f"b = {b} out of range [0, {volume})")
    return ConePoint(weight(q, b), tuple(-(e * b // volume) for e in q.entries))


def fundamental_points(q: Weights) -> list[ConePoint]:
    """All N parallelepiped points p(0), ..., p(N-1)."""
    q = _entries(q)
    return [fpp_point(q, b) for b in range(q.volume)]


def _compositions(total: int, parts: int):
    """All nonnegative integer vectors of given length summing to total."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def lattice_points_at_height(
    q: Weights,
    t: int,
    *,
    height_budget: int = DEFAULT_HEIGHT_BUDGET,
    max_points: int = DEFAULT_MAX_POINTS,
) -> set[ConePoint]:
    """Exact set of cone lattice points at height t.

    Enumerated as p(b) + sum_k c_k * ray_k over all b and nonnegative c with
    w(q,b) + sum c_k = t; the decomposition is unique, so there are exactly
    sum_b C(t - w(b) + n, n) points.  Heights above ``height_budget`` and
    enumerations beyond ``max_points`` raise BudgetExceededError.
    """
    q = _entries(q)
    if t < 0:
        raise ValueError("height must be nonnegative")
    if t > height_budget:
        raise BudgetExceededError(
            f"height {t} exceeds budget {height_budget}", estimated=t, cap=height_budget
        )
    n = q.n
    fpp = fundamental_points(q)
    estimate = sum(comb(t - p.height + n, n) for p in fpp if p.height <= t)
    if estimate > max_points:
        raise BudgetExceededError(
            f"enumeration of {estimate} points exceeds cap {max_points}",
            estimated=estimate, cap=max_points,
        )
    rays = ray_generators(q)
    points: set[ConePoint] = set()
    for p in fpp:
        slack = t - p.height
        if slack < 0:
            continue
        for combo in _compositions(slack, n + 1):
            total = p
            for c, ray in zip(combo, rays):
                if c:
                    total = total + ConePoint(c * ray.height, tuple(c * x for x in ray.coords))
            points.add(total)
    return points


def _irreducible_high_points(q: WeightVector, max_points: int, stop_at_first: bool):
    """Parallelepiped points of height >= 2 that no cone point of smaller
    positive height divides off.

    A candidate z of height h is reducible iff z = u + v with both summands
    nonzero cone lattice points; then the lower summand has height <= h//2,
    so u only needs to range over heights 1 .. h//2.
    """
    fpp = fundamental_points(q)
    max_h = max(p.height for p in fpp)
    pools: dict[int, list[ConePoint]] = {}

    def pool(height: int) -> list[ConePoint]:
        if height not in pools:
            pts = lattice_points_at_height(
                q, height, height_budget=max_h, max_points=max_points
            )
            pools[height] = sorted(pts)
        return pools[height]

    irreducible = []
    for z in sorted(p for p in fpp if p.height >= 2):
        reducible = False
        for t in range(1, z.height // 2 + 1):
            if any(in_cone(q, z - u) for u in pool(t)):
                reducible = True
                break
        if not reducible:
            irreducible.append(z)
            if stop_at_first:
                return irreducible
    return irreducible


def hilbert_basis(q: Weights, *, max_points: int = DEFAULT_MAX_POINTS) -> list[ConePoint]:
    """Unique minimal generating set of cone(Delta(1,q)) cap Z^(n+1).

    Candidates are the ray generators plus all parallelepiped points of
    positive height; height-1 points are irreducible outright, and higher
    candidates survive iff no cone point of smaller positive height can be
    subtracted while staying in the cone.  Sorted by height, then
    lexicographically, so parallel verification merges deterministically.
    """
    q = _entries(q)
    basis = list(ray_generators(q))
    basis.extend(p for p in fundamental_points(q) if p.height == 1)
    basis.extend(_irreducible_high_points(q, max_points, stop_at_first=False))
    return sorted(basis)


def is_idp_oracle(q: Weights, *, max_points: int = DEFAULT_MAX_POINTS) -> bool:
    """True iff the Hilbert basis sits entirely at height 1."""
    q = _entries(q)
    return not _irreducible_high_points(q, max_points, stop_at_first=True)
