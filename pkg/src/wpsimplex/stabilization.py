"""Reflexive stabilization: prepend 1s to a weight vector until it is
reflexive, and keep prepending full lcm blocks to stay reflexive.

rs(q, m) = (1^(rsn(q) + (m-1) * lcm(q)), q), where rsn(q) is the minimum
number of 1s making the vector reflexive: since prepending k ones turns the
volume into N(q) + k, it is the single modular computation
rsn(q) = (-N(q)) mod lcm(q) (a loop re-derives this in the tests).  Entries
equal to 1 in the input simply fold into the leading block.

Two things happen for large m: the h* coefficients of rs(q, m) flatten to
1s and 2s while losing unimodality, and for every m >= 2 the result stops
being IDP.  The h* shape reports below avoid materializing the (possibly
astronomically long) stabilized vector: for a reflexive vector h* equals a
length-ell geometric series times the cyclic factor g, so its coefficient
at degree e is the number of a in [0, lcm) with u(a) <= e < u(a) + ell,
and the whole coefficient profile is an interval-overlap sweep over lcm
events.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .ehrhart import HStarPolynomial, h_star, is_unimodal
from .weights import Weights, WeightVector, support_parts

__all__ = [
    "StabilizationResult",
    "LargeMShapeReport",
    "LcmMinusOneRecord",
    "stabilization_number",
    "stabilize",
    "smallest_threshold_m",
    "stabilized_hstar_profile",
    "check_large_m_shape",
    "lcm_minus_one_case",
]


@dataclass(frozen=True)
class StabilizationResult:
    """Outcome of rs(q, m).

    ``base`` is the input with its 1s stripped (possibly empty when the
    input is all 1s), ``rsn`` the minimal 1-count prepended to the input,
    and ``stabilized`` the full reflexive vector
    (1^(ones_in_input + rsn + (m-1)*lcm), base).
    """

    base: tuple[int, ...]
    rsn: int
    m: int
    lcm: int
    stabilized: WeightVector

    @property
    def ones(self) -> int:
        """Number of leading 1s in the stabilized vector."""
        return sum(1 for e in self.stabilized.entries if e == 1)


def stabilization_number(q: Weights) -> int:
    """rsn(q) = (-N(q)) mod lcm(q); zero exactly when q is already reflexive."""
    support, _, volume = support_parts(q)
    return (-volume) % math.lcm(*support)


def stabilize(q: Weights, m: int = 1) -> StabilizationResult:
    """rs(q, m); always reflexive, since N grows by rsn plus lcm multiples."""
    if m < 1:
        raise ValueError("m must be >= 1")
    support, mult, volume = support_parts(q)
    lcm = math.lcm(*support)
    rsn = (-volume) % lcm
    base = []
    ones_in_q = 0
    for r, x in zip(support, mult):
        if r == 1:
            ones_in_q = x
        else:
            base.extend([r] * x)
    total_ones = ones_in_q + rsn + (m - 1) * lcm
    stabilized = WeightVector((1,) * total_ones + tuple(base))
    return StabilizationResult(base=tuple(base), rsn=rsn, m=m, lcm=lcm,
                               stabilized=stabilized)


def _ell_of(q: Weights, m: int) -> tuple[int, int]:
    """(lcm, ell) of rs(q, m) without building the vector."""
    support, _, volume = support_parts(q)
    lcm = math.lcm(*support)
    rsn = (-volume) % lcm
    return lcm, (volume + rsn) // lcm + (m - 1)


def smallest_threshold_m(q: Weights) -> int:
    """Least m with ell(m) - 1 > n * lcm, the sufficient bound for the
    flattened, non-unimodal h* shape (the shape may occur earlier)."""
    support, mult, _ = support_parts(q)
    if support[0] == 1:
        raise ValueError("threshold analysis expects all entries >= 2")
    lcm, ell1 = _ell_of(q, 1)
    return max(1, sum(mult) * lcm + 3 - ell1)


def stabilized_hstar_profile(q: Weights, m: int) -> list[tuple[int, int]]:
    """Run-length encoded h* coefficients of rs(q, m): [(value, length), ...].

    Covers degrees 0 .. deg(h*) with no trailing run of zeros; interior
    zero runs appear explicitly.  Entries equal to 1 in q contribute
    floor(a / lcm) = 0 to every exponent u(a), so only the >= 2 part of the
    support enters the sweep.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    support, mult, _ = support_parts(q)
    lcm, ell = _ell_of(q, m)
    events: dict[int, int] = {}
    for a in range(lcm):
        u = a * ell
        for r, x in zip(support, mult):
            if r > 1:
                u -= x * (a // (lcm // r))
        events[u] = events.get(u, 0) + 1
        events[u + ell] = events.get(u + ell, 0) - 1
    profile: list[tuple[int, int]] = []
    coverage = 0
    prev = 0
    for pos in sorted(events):
        if pos > prev:
            profile.append((coverage, pos - prev))
        coverage += events[pos]
        prev = pos
    # coverage returns to zero at the last event, so the profile is complete
    return profile


def _profile_coeffs(profile: list[tuple[int, int]]) -> list[int]:
    coeffs: list[int] = []
    for value, length in profile:
        coeffs.extend([value] * length)
    return coeffs


@dataclass(frozen=True)
class LargeMShapeReport:
    """Shape of h*(rs(q, m)): flattened-coefficient and unimodality flags,
    plus whether the sufficient threshold on ell(m) actually held.

    The two facts are reported separately on purpose: non-unimodality often
    appears well before the provable threshold.
    """

    coeffs_only_1_2: bool
    unimodal: bool
    threshold_met: bool
    ell: int
    lcm: int


def check_large_m_shape(q: Weights, m: int) -> LargeMShapeReport:
    """Inspect h*(rs(q, m)) for a 1-free base q via the interval sweep."""
    support, mult, _ = support_parts(q)
    if support[0] == 1:
        raise ValueError("shape report expects all entries >= 2 (strip 1s first)")
    lcm, ell = _ell_of(q, m)
    profile = stabilized_hstar_profile(q, m)
    only12 = all(value in (1, 2) for value, _ in profile)
    unimodal = is_unimodal([value for value, _ in profile])
    threshold_met = ell - 1 > sum(mult) * lcm
    return LargeMShapeReport(coeffs_only_1_2=only12, unimodal=unimodal,
                             threshold_met=threshold_met, ell=ell, lcm=lcm)


@dataclass(frozen=True)
class LcmMinusOneRecord:
    """Both h* polynomials in the N(q) = lcm(q) - 1 case, and whether they
    differ by exactly z^(n+1)."""

    base_hstar: HStarPolynomial
    stabilized_hstar: HStarPolynomial
    identity_holds: bool


def lcm_minus_one_case(q: Weights) -> Optional[LcmMinusOneRecord]:
    """When rsn(q) = 1 and ell(rs(q)) = 1, i.e. N(q) = lcm(q) - 1, the
    stabilization adds a single new weight at the top:
    h*(rs(q)) = h*(q) + z^(n+1).  Returns None when the case does not apply.
    """
    support, mult, volume = support_parts(q)
    lcm = math.lcm(*support)
    if volume != lcm - 1:
        return None
    n = sum(mult)
    base = h_star(q)
    stabilized = h_star(stabilize(q, 1).stabilized)
    expected = list(base.coeffs) + [0] * (n + 1 - len(base.coeffs)) + [1]
    holds = list(stabilized.coeffs) == expected
    return LcmMinusOneRecord(base_hstar=base, stabilized_hstar=stabilized,
                             identity_holds=holds)
