"""Constructive generators for the classified reflexive families.

The 1- and 2-supported IDP reflexive vectors, the eight 3-supported shapes
(of which (i)-(vii) are IDP and (viii) never is), the affine free sum, and
the two "boundary" families that are simultaneously almost-IDP and
almost-unimodal.  Generators substitute the closed forms literally and then
canonicalize; deriving the support back out of the necessary condition is
left to the tests.

For type (viii) the third multiplicity is a function of (k, s, x2) and is
never accepted from the caller: with A = s*k*x2 + s + k the consistency
requirement k = (1 + x3) mod r1 forces x3 = A - 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .errors import NotReflexiveError
from .idp import is_reflexive
from .weights import SupportForm, Weights, WeightVector, from_support_form, support_parts

__all__ = [
    "FamilyKind",
    "FamilySpec",
    "DivisibilityPattern",
    "generate",
    "one_supported",
    "two_supported",
    "three_supported",
    "three_supported_viii",
    "affine_free_sum",
    "divisibility_pattern",
    "boundary_family_1",
    "boundary_family_2",
    "THREE_SUPPORTED_IDP_KINDS",
]


class FamilyKind(str, Enum):
    ONE_SUPP = "one-supp"
    TWO_SUPP_1 = "two-supp-1"
    TWO_SUPP_2 = "two-supp-2"
    THREE_I = "three-i"
    THREE_II = "three-ii"
    THREE_III = "three-iii"
    THREE_IV = "three-iv"
    THREE_V = "three-v"
    THREE_VI = "three-vi"
    THREE_VII = "three-vii"
    THREE_VIII = "three-viii"
    FREE_SUM = "free-sum"
    BOUNDARY_1 = "boundary-1"
    BOUNDARY_2 = "boundary-2"


#: The 3-supported kinds whose members are always IDP.
THREE_SUPPORTED_IDP_KINDS = (
    FamilyKind.THREE_I,
    FamilyKind.THREE_II,
    FamilyKind.THREE_III,
    FamilyKind.THREE_IV,
    FamilyKind.THREE_V,
    FamilyKind.THREE_VI,
    FamilyKind.THREE_VII,
)

_THREE_LABELS = {
    FamilyKind.THREE_I: "i",
    FamilyKind.THREE_II: "ii",
    FamilyKind.THREE_III: "iii",
    FamilyKind.THREE_IV: "iv",
    FamilyKind.THREE_V: "v",
    FamilyKind.THREE_VI: "vi",
    FamilyKind.THREE_VII: "vii",
    FamilyKind.THREE_VIII: "viii",
}


@dataclass(frozen=True)
class FamilySpec:
    """Parameter record for :func:`generate`.

    ``x`` holds the multiplicities (1 to 3 of them depending on the kind),
    ``k``/``s`` the extra type-(viii) parameters, ``n`` the boundary-family
    index, and ``operands`` the two reflexive vectors of a free sum.
    """

    kind: FamilyKind
    x: tuple[int, ...] = field(default=())
    k: Optional[int] = None
    s: Optional[int] = None
    n: Optional[int] = None
    operands: Optional[tuple[WeightVector, WeightVector]] = None


def _positive(name, *values):
    for v in values:
        if v is None or v < 1:
            raise ValueError(f"{name} parameters must be positive integers, got {values}")


def one_supported(x1: int) -> WeightVector:
    """The only 1-supported IDP reflexive shape: q = (1^x1)."""
    _positive("one-supp", x1)
    return WeightVector((1,) * x1)


def two_supported(variant: int, x1: int, x2: int) -> WeightVector:
    """The two 2-supported IDP reflexive shapes.

    variant-1 has r1 | r2:        q = (1^x1, (1+x1)^x2)
    variant-2 has r1 not | r2:    q = ((1+x2)^x1, (1+(1+x2)x1)^x2)
    """
    _positive("two-supp", x1, x2)
    if variant == 1:
        sf = SupportForm((1, 1 + x1), (x1, x2))
    elif variant == 2:
        sf = SupportForm((1 + x2, 1 + (1 + x2) * x1), (x1, x2))
    else:
        raise ValueError(f"variant must be 1 or 2, got {variant}")
    return _checked(from_support_form(sf))


def three_supported(label: str, x1: int, x2: int, x3: int) -> WeightVector:
    """3-supported shapes (i)-(vii); all of these are IDP reflexive."""
    _positive("three-supp", x1, x2, x3)
    a, b, c = 1 + x1, 1 + x2, 1 + x3
    if label == "i":
        r = (1, a, a * b)
    elif label == "ii":
        r = (b, 1 + x1 * b, (1 + x1 * b) * b)
    elif label == "iii":
        r = (b * c, 1 + x1 * b * c, (1 + x1 * b * c) * b)
    elif label == "iv":
        r = (1, a * c, a * (1 + x2 * c))
    elif label == "v":
        m = 1 + c * x2
        r = (m, c * (1 + x1 * m), (1 + m * x1) * m)
    elif label == "vi":
        m = 1 + c * x2
        r = (c * m, c * (1 + x1 * c * m), (1 + c * m * x1) * m)
    elif label == "vii":
        r = (c, c * (1 + x1 * c), (1 + c * x1) * (1 + c * x2))
    else:
        raise ValueError(f"unknown 3-supported label {label!r} (viii has its own generator)")
    return _checked(from_support_form(SupportForm(r, (x1, x2, x3))))


def three_supported_viii(x1: int, x2: int, k: int, s: int) -> WeightVector:
    """The non-IDP 3-supported shape (viii).

    A = s*k*x2 + s + k.  Then r = (1+k*x2, A*(1+x1*(1+k*x2)),
    (1+x1*(1+k*x2))*(1+x2*A)) with multiplicities (x1, x2, A-1).  Every
    instance satisfies the IDP necessary condition yet fails IDP.
    """
    _positive("three-viii", x1, x2, k, s)
    r1 = 1 + k * x2
    a = s * k * x2 + s + k
    b = 1 + x1 * r1
    sf = SupportForm((r1, a * b, b * (1 + x2 * a)), (x1, x2, a - 1))
    return _checked(from_support_form(sf))


def affine_free_sum(p: Weights, w: Weights) -> WeightVector:
    """Free-sum weight vector: concatenate p with N(p)-scaled w.

    Both operands must be reflexive; the result is then reflexive as well,
    and its h* is the product of the operands' h* polynomials.
    """
    if not is_reflexive(p):
        raise NotReflexiveError(f"free sum operand {p} is not reflexive")
    if not is_reflexive(w):
        raise NotReflexiveError(f"free sum operand {w} is not reflexive")
    p_entries = tuple(from_support_form(p).entries) if isinstance(p, SupportForm) else p.entries
    w_entries = tuple(from_support_form(w).entries) if isinstance(w, SupportForm) else w.entries
    scale = 1 + sum(p_entries)
    return _checked(WeightVector(p_entries + tuple(scale * e for e in w_entries)))


@dataclass(frozen=True)
class DivisibilityPattern:
    """The triple (r1|r2, r1|r3, r2|r3) and which 3-supported kinds realize it."""

    divides: tuple[bool, bool, bool]
    kinds: tuple[str, ...]


_PATTERN_KINDS = {
    (True, True, True): ("i",),
    (False, True, True): ("ii",),
    (False, False, True): ("iii",),
    (True, True, False): ("iv",),
    (False, True, False): ("v", "viii"),
    (False, False, False): ("vi",),
    (True, False, False): ("vii",),
    # r1|r2 and r2|r3 force r1|r3, so (True, False, True) cannot occur.
    (True, False, True): (),
}


def divisibility_pattern(r) -> DivisibilityPattern:
    """Classify a strictly increasing support triple by its divisibilities.

    Shapes (v) and (viii) share the pattern (False, True, False); only (v)
    yields IDP simplices.
    """
    r = tuple(r)
    if len(r) != 3:
        raise ValueError(f"divisibility pattern needs exactly 3 support entries, got {len(r)}")
    if not (0 < r[0] < r[1] < r[2]):
        raise ValueError("support must be strictly increasing and positive")
    key = (r[1] % r[0] == 0, r[2] % r[0] == 0, r[2] % r[1] == 0)
    return DivisibilityPattern(key, _PATTERN_KINDS[key])


def boundary_family_1(n: int) -> WeightVector:
    """q(n) = (1^(2n-1), 3n, 10n, 15n): non-unimodal h* for n >= 2, and a
    Hilbert basis with exactly two height-2 elements."""
    _positive("boundary-1", n)
    return _checked(from_support_form(SupportForm((1, 3 * n, 10 * n, 15 * n),
                                                  (2 * n - 1, 1, 1, 1))))


def boundary_family_2(n: int) -> WeightVector:
    """q = (n, (2n-1)(n+1), (2n(n+1))^(2(n-1))) for n >= 2.

    Equals the type-(viii) instance at (x1, x2, k, s) = (1, 1, n-1, 1).  The
    palindromic h* pattern and single height-2 Hilbert basis element have
    been machine-checked for n <= 20; they are treated as checks here, not
    theorems.
    """
    if n < 2:
        raise ValueError("boundary family 2 needs n >= 2")
    sf = SupportForm((n, (2 * n - 1) * (n + 1), 2 * n * (n + 1)), (1, 1, 2 * (n - 1)))
    return _checked(from_support_form(sf))


def generate(spec: FamilySpec) -> WeightVector:
    """Dispatch a FamilySpec to its generator; output is always reflexive."""
    kind = spec.kind
    if kind is FamilyKind.ONE_SUPP:
        _require_x(spec, 1)
        return one_supported(spec.x[0])
    if kind in (FamilyKind.TWO_SUPP_1, FamilyKind.TWO_SUPP_2):
        _require_x(spec, 2)
        return two_supported(1 if kind is FamilyKind.TWO_SUPP_1 else 2, *spec.x)
    if kind is FamilyKind.THREE_VIII:
        _require_x(spec, 2)
        if spec.k is None or spec.s is None:
            raise ValueError("type (viii) needs k and s")
        return three_supported_viii(spec.x[0], spec.x[1], spec.k, spec.s)
    if kind in _THREE_LABELS:
        _require_x(spec, 3)
        return three_supported(_THREE_LABELS[kind], *spec.x)
    if kind is FamilyKind.FREE_SUM:
        if spec.operands is None:
            raise ValueError("free sum needs two operand vectors")
        return affine_free_sum(*spec.operands)
    if kind is FamilyKind.BOUNDARY_1:
        if spec.n is None:
            raise ValueError("boundary family 1 needs n")
        return boundary_family_1(spec.n)
    if kind is FamilyKind.BOUNDARY_2:
        if spec.n is None:
            raise ValueError("boundary family 2 needs n")
        return boundary_family_2(spec.n)
    raise ValueError(f"unknown family kind {kind!r}")


def _require_x(spec: FamilySpec, count: int):
    if len(spec.x) != count:
        raise ValueError(f"{spec.kind.value} needs exactly {count} multiplicities, got {spec.x}")


def _checked(q: WeightVector) -> WeightVector:
    # Every classified family generates reflexive vectors; a failure here
    # means the closed form was transcribed wrong.
    if not is_reflexive(q):
        raise AssertionError(f"generated vector {q} is unexpectedly non-reflexive")
    return q
