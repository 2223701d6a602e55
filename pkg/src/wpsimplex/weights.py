"""Weight vectors for the simplices Delta(1,q) = conv{e_1, ..., e_n, -sum q_i e_i}.

A weight vector q is a weakly increasing tuple of positive integers; its
normalized volume is N(q) = 1 + sum(q).  Grouping equal entries gives the
support form q = (r_1^{x_1}, ..., r_d^{x_d}) with r_1 < ... < r_d, which is
the representation most of the number theory in this package runs on.

Everything here is an immutable value and every operation is a pure
function, so objects can be shared freely between threads or processes.
Python integers are exact at any size, so no overflow is possible.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from itertools import groupby
from typing import Iterable, Union

from .errors import NotReflexiveError, ParseError

__all__ = [
    "WeightVector",
    "SupportForm",
    "ReflexiveContext",
    "parse_weights",
    "format_weights",
    "to_support_form",
    "from_support_form",
    "normalized_volume",
    "reflexive_context",
    "one_column_hnf",
    "support_parts",
]


@dataclass(frozen=True, order=True)
class WeightVector:
    """Weakly increasing vector of positive integer weights.

    The constructor canonicalizes: entries are sorted, so two vectors with
    the same multiset of weights compare equal.
    """

    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(self.entries)
        if not entries:
            raise ValueError("weight vector needs at least one entry")
        for e in entries:
            if not isinstance(e, int) or e < 1:
                raise ValueError(f"weights must be positive integers, got {e!r}")
        if any(a > b for a, b in zip(entries, entries[1:])):
            entries = tuple(sorted(entries))
        object.__setattr__(self, "entries", entries)

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def volume(self) -> int:
        """Normalized volume N(q) = 1 + sum of the weights."""
        return 1 + sum(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __str__(self):
        return format_weights(self)


@dataclass(frozen=True)
class SupportForm:
    """Distinct weights with multiplicities: q = (r_1^{x_1}, ..., r_d^{x_d})."""

    support: tuple[int, ...]
    multiplicity: tuple[int, ...]

    def __post_init__(self):
        support = tuple(self.support)
        multiplicity = tuple(self.multiplicity)
        if not support or len(support) != len(multiplicity):
            raise ValueError("support and multiplicity must be equal-length, nonempty")
        if any(r < 1 for r in support) or any(x < 1 for x in multiplicity):
            raise ValueError("support and multiplicity entries must be >= 1")
        if any(a >= b for a, b in zip(support, support[1:])):
            raise ValueError("support must be strictly increasing")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "multiplicity", multiplicity)

    @property
    def d(self) -> int:
        return len(self.support)

    @property
    def n(self) -> int:
        return sum(self.multiplicity)

    @property
    def volume(self) -> int:
        return 1 + sum(r * x for r, x in zip(self.support, self.multiplicity))

    def expand(self) -> WeightVector:
        entries = []
        for r, x in zip(self.support, self.multiplicity):
            entries.extend([r] * x)
        return WeightVector(tuple(entries))


#: Input type accepted by the arithmetic operations below.
Weights = Union[WeightVector, SupportForm]


_ENTRY_RE = re.compile(r"^(\d+)(?:\^(\d+))?$")


def parse_weights(text: str) -> WeightVector:
    """Parse ``entry(,entry)*`` where entry is ``INT`` or ``INT^INT``.

    Exponents expand to multiplicities, e.g. ``"1^7,3^4,5^5"``; the result
    is sorted into canonical (weakly increasing) order.
    """
    if not isinstance(text, str) or not text.strip():
        raise ParseError(f"empty weight vector: {text!r}")
    entries: list[int] = []
    for piece in text.split(","):
        m = _ENTRY_RE.match(piece.strip())
        if m is None:
            raise ParseError(f"bad weight entry {piece.strip()!r} in {text!r}")
        value = int(m.group(1))
        mult = int(m.group(2)) if m.group(2) is not None else 1
        if value < 1 or mult < 1:
            raise ParseError(f"weights and multiplicities must be >= 1: {piece.strip()!r}")
        entries.extend([value] * mult)
    return WeightVector(tuple(entries))


def format_weights(q: Weights) -> str:
    """Inverse of :func:`parse_weights`: ``(1,1,1,1,2,2,3) -> "1^4,2^2,3"``."""
    sf = to_support_form(q)
    parts = []
    for r, x in zip(sf.support, sf.multiplicity):
        parts.append(f"{r}^{x}" if x > 1 else f"{r}")
    return ",".join(parts)


def to_support_form(q: Weights) -> SupportForm:
    if isinstance(q, SupportForm):
        return q
    support = []
    multiplicity = []
    for value, run in groupby(q.entries):
        support.append(value)
        multiplicity.append(sum(1 for _ in run))
    return SupportForm(tuple(support), tuple(multiplicity))


def from_support_form(sf: SupportForm) -> WeightVector:
    return sf.expand()


def support_parts(q: Weights) -> tuple[tuple[int, ...], tuple[int, ...], int]:
    """Return ``(support, multiplicity, N)`` for either representation."""
    sf = to_support_form(q)
    return sf.support, sf.multiplicity, sf.volume


def normalized_volume(q: Weights) -> int:
    """N(q) = 1 + sum(q), the normalized volume of Delta(1,q)."""
    return q.volume


@dataclass(frozen=True)
class ReflexiveContext:
    """Derived arithmetic of a reflexive q: lcm of the support, ell, s.

    With L = lcm(r_1, ..., r_d):  N(q) = ell * L  and  s_i = L / r_i.
    For reflexive q one always has gcd(r) = 1 and lcm(s) = lcm(r).
    """

    lcm: int
    ell: int
    s: tuple[int, ...]


def reflexive_context(q: Weights) -> ReflexiveContext:
    """Compute (lcm, ell, s); raises NotReflexiveError when lcm does not divide N."""
    support, _, volume = support_parts(q)
    lcm = math.lcm(*support)
    if volume % lcm != 0:
        raise NotReflexiveError(
            f"lcm({format_weights(q)}) = {lcm} does not divide N = {volume}"
        )
    ell = volume // lcm
    s = tuple(lcm // r for r in support)
    return ReflexiveContext(lcm=lcm, ell=ell, s=s)


def one_column_hnf(q: Weights) -> list[list[int]]:
    """Hermite normal form of Delta(1,q) shifted by -e_1, as an n x n matrix.

    Columns 1..n-1 are identity columns; the last column is
    (N - q_2, ..., N - q_n, N).  Together with the origin (the dropped zero
    column) the columns span a simplex unimodularly equivalent to Delta(1,q).
    """
    if isinstance(q, SupportForm):
        q = q.expand()
    n = q.n
    if n < 2:
        raise ValueError("Hermite normal form is defined here for n >= 2")
    volume = q.volume
    rows = []
    for i in range(n):
        row = [1 if i == j else 0 for j in range(n - 1)]
        row.append(volume if i == n - 1 else volume - q.entries[i + 1])
        rows.append(row)
    return rows
