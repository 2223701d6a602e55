"""h*-polynomials of Delta(1,q) and their structural predicates.

The Ehrhart series numerator of Delta(1,q) has the closed form

    h*(Delta(1,q); z) = sum_{b=0}^{q_1+...+q_n} z^{w(q,b)},
    w(q,b) = b - sum_i floor(q_i * b / N),      N = 1 + sum_i q_i,

so the coefficient of z^k counts the b in [0, N) of weight k.  For
reflexive q the polynomial factors as a geometric series of length ell
times the cyclic factor

    g(z) = sum_{0 <= a < L} z^{u(a)},   u(a) = a*ell - sum_i x_i floor(a / s_i),

where L = lcm of the support and s_i = L / r_i.

All functions are pure; the b-loop of h_star may be sharded across workers
and merged by adding counters (the census module does exactly that).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .weights import ReflexiveContext, SupportForm, Weights, reflexive_context, support_parts, to_support_form

__all__ = [
    "HStarPolynomial",
    "weight",
    "h_star",
    "g_poly",
    "factorization_holds",
    "is_unimodal",
    "is_palindromic",
    "poly_mul",
    "geometric_series",
]


@dataclass(frozen=True)
class HStarPolynomial:
    """Dense nonnegative integer coefficients, index = degree, trailing zeros trimmed."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        if any(c < 0 for c in coeffs):
            raise ValueError("coefficients must be nonnegative")
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if not coeffs:
            raise ValueError("zero polynomial has no h* interpretation")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def total(self) -> int:
        """Sum of coefficients; equals N(q) for h*(Delta(1,q))."""
        return sum(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __str__(self):
        return " ".join(str(c) for c in self.coeffs)


CoeffsLike = Union[HStarPolynomial, Sequence[int]]


def _coeff_list(p: CoeffsLike) -> list[int]:
    if isinstance(p, HStarPolynomial):
        return list(p.coeffs)
    return list(p)


def weight(q: Weights, b: int) -> int:
    """w(q,b) = b - sum_i floor(q_i b / N) for 0 <= b <= sum(q) = N - 1.

    Equal weights are grouped, so the cost is O(d) per call.
    """
    support, mult, volume = support_parts(q)
    if not 0 <= b <= volume - 1:
        raise ValueError(f"b = {b} out of range [0, {volume - 1}]")
    return b - sum(x * (r * b // volume) for r, x in zip(support, mult))


def h_star(q: Weights) -> HStarPolynomial:
    """h*(Delta(1,q); z), computed by one pass over b in [0, N).

    No polynomial algebra is involved: a counter of length n+1 is bumped at
    index w(q,b) for every b.  The degree is always exactly n (b = N-1 has
    weight n) and the coefficients sum to N.
    """
    support, mult, volume = support_parts(q)
    counts = [0] * (sum(mult) + 1)
    pairs = list(zip(support, mult))
    for b in range(volume):
        w = b
        for r, x in pairs:
            w -= x * (r * b // volume)
        counts[w] += 1
    return HStarPolynomial(tuple(counts))


def g_poly(sf: SupportForm, ctx: ReflexiveContext) -> HStarPolynomial:
    """Cyclic factor g of a reflexive q: coefficient k counts a in [0, lcm) with u(a) = k."""
    sf = to_support_form(sf)
    counts: dict[int, int] = {}
    for a in range(ctx.lcm):
        u = a * ctx.ell
        for x, s in zip(sf.multiplicity, ctx.s):
            u -= x * (a // s)
        counts[u] = counts.get(u, 0) + 1
    coeffs = [0] * (max(counts) + 1)
    for u, c in counts.items():
        coeffs[u] = c
    return HStarPolynomial(tuple(coeffs))


def poly_mul(a: CoeffsLike, b: CoeffsLike) -> list[int]:
    """Schoolbook convolution; degrees here are at most n, no FFT needed."""
    a = _coeff_list(a)
    b = _coeff_list(b)
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def geometric_series(length: int) -> list[int]:
    """Coefficients of 1 + z + ... + z^(length-1)."""
    if length < 1:
        raise ValueError("length must be >= 1")
    return [1] * length


def factorization_holds(q: Weights) -> bool:
    """Check h*(q) == (1 + z + ... + z^(ell-1)) * g exactly.

    This identity is a theorem for every reflexive q, so a False here
    signals an implementation fault, not a property of q.  Raises
    NotReflexiveError on non-reflexive input.
    """
    sf = to_support_form(q)
    ctx = reflexive_context(sf)
    product = poly_mul(geometric_series(ctx.ell), g_poly(sf, ctx))
    return tuple(product) == h_star(q).coeffs


def is_unimodal(p: CoeffsLike) -> bool:
    """True iff the coefficients rise (weakly) to some peak and then fall (weakly)."""
    coeffs = _coeff_list(p)
    descending = False
    for prev, cur in zip(coeffs, coeffs[1:]):
        if cur < prev:
            descending = True
        elif cur > prev and descending:
            return False
    return True


def is_palindromic(p: CoeffsLike, n: int) -> bool:
    """True iff coeff[i] == coeff[n-i] for 0 <= i <= n.

    The symmetry is taken about the ambient dimension n of the simplex, not
    the trimmed degree: trailing zero coefficients matter.  For Delta(1,q)
    this symmetry holds exactly when q is reflexive.
    """
    coeffs = _coeff_list(p)
    if n < 0:
        raise ValueError("n must be >= 0")
    if len(coeffs) > n + 1 and any(c != 0 for c in coeffs[n + 1 :]):
        return False
    padded = coeffs[: n + 1] + [0] * (n + 1 - len(coeffs))
    return padded == padded[::-1]
