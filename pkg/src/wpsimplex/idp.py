"""Number-theoretic tests on Delta(1,q): reflexivity, the IDP necessary
condition, multiplicity bounds, and the full IDP characterization.

Reflexivity is the divisibility criterion: every weight divides
N(q) = 1 + sum(q).  For reflexive q, the simplex is IDP if and only if for
every j and every b in [1, q_j) whose facet height

    h_j(b) = b * (1 + sum_{i != j} q_i) / q_j - sum_{i != j} floor(b q_i / q_j)

is at least 2, some positive c < b satisfies

    h_j(c) = 1   and   floor(b q_i/q_j) - floor(c q_i/q_j) = floor((b-c) q_i/q_j)

for every i != j.  A necessary condition (far cheaper) is that
1 + sum_i (q_i mod q_j) = q_j for all j.

Duplicated weights produce identical constraints, so all loops below run
over distinct values only; a per-index formulation is equivalent (tested).
The per-j work items are independent, the verdict is their conjunction, and
the reported witness is the lexicographically least (j, b).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import NotReflexiveError
from .weights import Weights, support_parts

__all__ = [
    "IdpReport",
    "is_reflexive",
    "satisfies_necessary_condition",
    "multiplicity_bounds_ok",
    "height_count",
    "is_idp",
]


@dataclass(frozen=True)
class IdpReport:
    """Outcome of the reflexivity / necessary / IDP test chain.

    ``idp`` is None (undetermined) when q is not reflexive: the
    characterization above only applies to reflexive simplices and this
    package refuses to extrapolate.  ``witness`` is ``(q_j, b)`` for a full
    test failure, ``(q_j,)`` for a necessary-condition failure, else None.
    """

    reflexive: bool
    necessary: bool
    idp: Optional[bool]
    witness: Optional[tuple[int, ...]]


def is_reflexive(q: Weights) -> bool:
    """True iff every weight divides N(q) (equivalently lcm(support) | N)."""
    support, _, volume = support_parts(q)
    return all(volume % r == 0 for r in support)


def satisfies_necessary_condition(q: Weights) -> tuple[bool, Optional[int]]:
    """Check 1 + sum_i (q_i mod q_j) = q_j for every j.

    Returns ``(True, None)`` or ``(False, v)`` with v the least weight value
    at which the condition fails.  Holding for all j implies reflexivity.
    """
    support, mult, _ = support_parts(q)
    for v in support:
        total = 1 + sum(x * (r % v) for r, x in zip(support, mult))
        if total != v:
            return False, v
    return True, None


def multiplicity_bounds_ok(sf) -> bool:
    """Box bounds every reflexive IDP multiplicity vector must satisfy.

    x_i <= r_{i+1} / r_i for i < d (rational comparison), and for every
    j < d with r_j not dividing r_d, x_d <= r_j / (r_d mod r_j).  When some
    r_j fails to divide r_d, the box is finite, which is why only finitely
    many IDP reflexives live over such a support.
    """
    support, mult, _ = support_parts(sf)
    d = len(support)
    if d < 2:
        raise ValueError("multiplicity bounds need at least two distinct weights")
    for i in range(d - 1):
        if mult[i] * support[i] > support[i + 1]:
            return False
    r_top = support[-1]
    for j in range(d - 1):
        rem = r_top % support[j]
        if rem and mult[-1] * rem > support[j]:
            return False
    return True


def _check_reflexive(q: Weights) -> tuple[tuple[int, ...], tuple[int, ...], int]:
    support, mult, volume = support_parts(q)
    if any(volume % r for r in support):
        raise NotReflexiveError(f"weights {support} do not all divide N = {volume}")
    return support, mult, volume


def height_count(q: Weights, j: int, b: int) -> int:
    """Facet height h_j(b) of the b-indexed parallelepiped point (exact).

    ``j`` is a 0-based index into the expanded entries of q.  Requires
    reflexive q (the divisions are then exact; this is checked, not
    assumed).  b may be 0 (height 0) up to q_j - 1; q_j = 1 has an empty
    b-range and is refused.
    """
    support, mult, volume = _check_reflexive(q)
    entries_n = sum(mult)
    if not 0 <= j < entries_n:
        raise ValueError(f"index j = {j} out of range for n = {entries_n}")
    v = _value_at(support, mult, j)
    if v == 1:
        raise ValueError("q_j = 1 admits no b in [1, q_j - 1]")
    if not 0 <= b <= v - 1:
        raise ValueError(f"b = {b} out of range [0, {v - 1}]")
    return _height(support, mult, volume, v, b)


def _value_at(support, mult, j):
    for r, x in zip(support, mult):
        if j < x:
            return r
        j -= x
    raise AssertionError("unreachable")


def _height(support, mult, volume, v, b):
    # h_j(b) = b*N/v - sum over all i of floor(b*q_i/v); the i = j term
    # contributes exactly b, which cancels the -b in b*(N - v)/v.
    return b * (volume // v) - sum(x * (r * b // v) for r, x in zip(support, mult))


def is_idp(q: Weights) -> IdpReport:
    """Full IDP test; see the module docstring for the characterization.

    The c-search scans c = 1, 2, ..., b-1 in ascending order, testing the
    single-expression height condition first and the per-i floor identity
    only for surviving c.  Heights are computed once per (q_j, b) pair and
    cached for the whole call.
    """
    support, mult, volume = support_parts(q)
    reflexive = all(volume % r == 0 for r in support)
    nec_ok, nec_j = satisfies_necessary_condition(q)
    if not reflexive:
        return IdpReport(reflexive=False, necessary=nec_ok, idp=None,
                         witness=None if nec_ok else (nec_j,))
    pairs = list(zip(support, mult))
    for v in support:
        if v == 1:
            continue
        ratio = volume // v
        # floor tables: floors[u][b] = floor(b*u/v) for each distinct weight u
        floors = {u: [u * b // v for b in range(v)] for u in support}
        heights = [b * ratio - sum(x * floors[r][b] for r, x in pairs) for b in range(v)]
        ones = [c for c in range(1, v) if heights[c] == 1]
        others = [u for u in support if u != v]
        for b in range(1, v):
            if heights[b] < 2:
                continue
            found = False
            for c in ones:
                if c >= b:
                    break
                ok = True
                for u in others:
                    fu = floors[u]
                    if fu[b] - fu[c] != fu[b - c]:
                        ok = False
                        break
                if ok:
                    found = True
                    break
            if not found:
                return IdpReport(reflexive=True, necessary=nec_ok, idp=False,
                                 witness=(v, b))
    return IdpReport(reflexive=True, necessary=nec_ok, idp=True, witness=None)
