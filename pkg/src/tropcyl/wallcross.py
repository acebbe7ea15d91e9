"""Exact truncated Laurent series in two variables and the focus-focus
wall-crossing count engine.

The shear substitution x -> x(1+y), y -> y acts on monomials by
x^a y^b -> x^a y^b (1+y)^a, with the binomial series (truncated in y) for
negative a.  The count attached to the del Pezzo family L(l, m, n) is the
coefficient of x^l y^{m+n} in the image of x^l y^m, which is the binomial
coefficient C(l, n); an independent subset-enumeration oracle and an
orientation-reversed reading are provided for cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import InvalidQuery, NotInFamily, UnsupportedBase
from .extension import DEL_PEZZO_PAIR
from .spines import TropicalTree, direction_at, validate_spine


@dataclass(frozen=True)
class SparseLaurentSeries:
    """Laurent polynomial / truncated series over the rationals.

    `terms` maps integer exponent pairs (power of x, power of y) to nonzero
    coefficients, stored sorted.  `trunc` is the y-order beyond which terms
    have been dropped (None = exact).  Arithmetic propagates the tighter
    truncation of its operands.
    """

    terms: tuple[tuple[tuple[int, int], Fraction], ...] = ()
    trunc: int | None = None

    @classmethod
    def from_dict(cls, d, trunc: int | None = None) -> "SparseLaurentSeries":
        items = []
        for (i, j), c in sorted(d.items()):
            c = Fraction(c)
            if c == 0:
                continue
            if trunc is not None and j > trunc:
                continue
            items.append(((int(i), int(j)), c))
        return cls(tuple(items), trunc)

    @classmethod
    def monomial(cls, i: int, j: int, coeff=1,
                 trunc: int | None = None) -> "SparseLaurentSeries":
        return cls.from_dict({(i, j): Fraction(coeff)}, trunc)

    @classmethod
    def zero(cls) -> "SparseLaurentSeries":
        return cls((), None)

    def as_dict(self) -> dict[tuple[int, int], Fraction]:
        return dict(self.terms)

    def coefficient(self, i: int, j: int) -> Fraction:
        for (k, c) in self.terms:
            if k == (i, j):
                return c
        return Fraction(0)

    def __add__(self, other: "SparseLaurentSeries") -> "SparseLaurentSeries":
        return series_add(self, other)

    def __mul__(self, other: "SparseLaurentSeries") -> "SparseLaurentSeries":
        return series_mul(self, other)


def _combine_trunc(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def series_add(a: SparseLaurentSeries, b: SparseLaurentSeries) -> SparseLaurentSeries:
    """Exact coefficientwise sum; the tighter truncation wins."""
    acc = dict(a.terms)
    for k, c in b.terms:
        acc[k] = acc.get(k, Fraction(0)) + c
    return SparseLaurentSeries.from_dict(acc, _combine_trunc(a.trunc, b.trunc))


def series_mul(a: SparseLaurentSeries, b: SparseLaurentSeries) -> SparseLaurentSeries:
    """Exact product; terms beyond the combined truncation are dropped."""
    trunc = _combine_trunc(a.trunc, b.trunc)
    acc: dict[tuple[int, int], Fraction] = {}
    for (i1, j1), c1 in a.terms:
        for (i2, j2), c2 in b.terms:
            j = j1 + j2
            if trunc is not None and j > trunc:
                continue
            k = (i1 + i2, j)
            acc[k] = acc.get(k, Fraction(0)) + c1 * c2
    return SparseLaurentSeries.from_dict(acc, trunc)


def _binomial(n: int, k: int) -> int:
    """C(n, k) for integer n (possibly negative), k >= 0."""
    if k < 0:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= n - i
        den *= i + 1
    return num // den


def _apply_shear(s: SparseLaurentSeries, power_sign: int,
                 trunc: int | None) -> SparseLaurentSeries:
    """Substitute x -> x(1+y)^power_sign, y -> y, monomial by monomial."""
    eff = _combine_trunc(s.trunc, trunc)
    acc: dict[tuple[int, int], Fraction] = {}
    for (a, b), c in s.terms:
        e = power_sign * a
        if e >= 0:
            kmax = e
            if eff is not None:
                kmax = min(kmax, eff - b)
        else:
            if eff is None:
                raise InvalidQuery(
                    "negative substitution powers need a finite truncation")
            kmax = eff - b
        for k in range(0, kmax + 1):
            key = (a, b + k)
            acc[key] = acc.get(key, Fraction(0)) + c * _binomial(e, k)
    return SparseLaurentSeries.from_dict(acc, eff)


def focus_focus_apply(s: SparseLaurentSeries,
                      trunc: int | None = None) -> SparseLaurentSeries:
    """The focus-focus wall-crossing substitution x -> x(1+y), y -> y.

    Nonnegative x-powers expand exactly; negative x-powers use the
    geometric/binomial series in y up to the truncation order.
    """
    return _apply_shear(s, 1, trunc)


def focus_focus_inverse(s: SparseLaurentSeries,
                        trunc: int | None = None) -> SparseLaurentSeries:
    """The inverse substitution x -> x(1+y)^{-1}, y -> y."""
    return _apply_shear(s, -1, trunc)


@dataclass(frozen=True)
class CountQuery:
    """Parameters of the one-wall family: l >= 1 boundary winding, y-offset
    m, and bend n.  n outside [0, l] simply yields a zero count."""

    l: int
    m: int
    n: int


def _auto_trunc(l: int, m: int) -> int:
    # the image of x^l y^m has y-exponents in [m, m+l]
    return max(abs(m) + l, l) + 2


def _raw_count(l: int, m: int, n: int) -> int:
    mono = SparseLaurentSeries.monomial(l, m)
    image = focus_focus_apply(mono, _auto_trunc(l, m))
    c = image.coefficient(l, m + n)
    assert c.denominator == 1
    return int(c)


def count(q: CountQuery) -> int:
    """Cylinder count of the family: the coefficient of x^l y^{m+n} in the
    focus-focus image of x^l y^m.  Equals C(l, n) for 0 <= n <= l, else 0."""
    if q.l < 1:
        raise InvalidQuery(f"count needs l >= 1, got {q.l}")
    return _raw_count(q.l, q.m, q.n)


def binomial_oracle(l: int, n: int) -> int:
    """C(l, n) by explicit enumeration of size-n subsets of {1, ..., l}.

    Independent of the series engine; enumeration is capped at l <= 20.
    """
    if l < 0:
        raise InvalidQuery(f"oracle needs l >= 0, got {l}")
    if l > 20:
        raise InvalidQuery(f"oracle enumerates subsets only up to l = 20, got {l}")
    if n < 0 or n > l:
        return 0
    return sum(1 for _ in combinations(range(1, l + 1), n))


def symmetry_check(q: CountQuery) -> bool:
    """Orientation symmetry of the count at engine level.

    Compares the forward count with the reversed reading: the coefficient
    of x^{-l} y^{-m} in the inverse substitution applied to
    x^{-l} y^{-(m+n)}.  Both equal C(l, n).
    """
    if q.l < 1:
        raise InvalidQuery(f"symmetry check needs l >= 1, got {q.l}")
    forward = _raw_count(q.l, q.m, q.n)
    trunc = _auto_trunc(q.l, q.m) + abs(q.n)
    mono = SparseLaurentSeries.monomial(-q.l, -(q.m + q.n))
    image = focus_focus_inverse(mono, trunc)
    backward = image.coefficient(-q.l, -q.m)
    return forward == backward and backward.denominator == 1


def count_spine(base, spine: TropicalTree) -> int:
    """Count for a spine in the three-vertex one-wall normal form.

    Pattern-matches the spine against the family (central vertex on the
    positive wall-1 ray, stated integer directions into cones 0 and 1),
    recovers (l, m, n), and counts; the answer does not depend on the
    height of the central vertex.
    """
    if base.pair.self_intersections != DEL_PEZZO_PAIR:
        raise UnsupportedBase(
            f"counts are implemented for the base {DEL_PEZZO_PAIR}, got "
            f"{base.pair.self_intersections}")
    violations = validate_spine(base, spine)
    if violations:
        raise NotInFamily(
            "not a valid spine: " + "; ".join(v.message for v in violations))
    if len(spine.vertices) != 3:
        raise NotInFamily("normal form has exactly three vertices")
    centers = [v for v in spine.vertices if spine.valency(v.id) == 2]
    if len(centers) != 1:
        raise NotInFamily("normal form has exactly one 2-valent vertex")
    center = centers[0]
    pos = center.position
    if pos is None or pos.is_origin or not (pos.cone == 1 and pos.b == 0):
        raise NotInFamily("central vertex must sit on the positive wall-1 ray")
    by_cone = {}
    for e in spine.incident(center.id):
        if e.cone in by_cone:
            raise NotInFamily("the two arms must enter different cones")
        by_cone[e.cone] = direction_at(spine, e, center.id)
    if set(by_cone) != {0, 1}:
        raise NotInFamily("the two arms must enter cones 0 and 1")
    l, m = by_cone[0].u, by_cone[0].v
    q1, q2 = by_cone[1].u, by_cone[1].v
    if l < 1 or q2 != l:
        raise NotInFamily(
            f"arm directions ({l}, {m}) and ({q1}, {q2}) are not in the family")
    n = q1 + m + l
    return count(CountQuery(l, m, n))


def virtual_dim(g: int, dim_v: int, alpha_dot_k: int, n: int) -> int:
    """Expected dimension (1 - g)(dim_v - 3) - alpha_dot_k + n."""
    return (1 - g) * (dim_v - 3) - alpha_dot_k + n
