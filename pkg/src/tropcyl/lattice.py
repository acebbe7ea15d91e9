"""Exact lattice geometry of the tropical base of a Looijenga pair.

The base is a fan of `l` two-dimensional cones glued cyclically along rays
(walls), with an integral affine structure away from the origin.  Crossing
wall i transports tangent vectors by a determinant-1 integer matrix that
depends on the self-intersection number of the i-th boundary component.
All coordinates are exact: integers for tangent data, `Fraction` for
points.  No floats anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

from . import kernels
from .errors import (
    InvalidPair,
    OriginNotInChart,
    OutOfChart,
    WrongHomeCone,
    ZeroVector,
)

Frac = Fraction


@dataclass(frozen=True)
class LooijengaPair:
    """Cyclic sequence of boundary self-intersection numbers, length >= 3."""

    self_intersections: tuple[int, ...]

    def __post_init__(self):
        si = tuple(int(x) for x in self.self_intersections)
        if len(si) < 3:
            raise InvalidPair(f"need at least 3 boundary components, got {len(si)}")
        object.__setattr__(self, "self_intersections", si)

    def __len__(self) -> int:
        return len(self.self_intersections)

    def __getitem__(self, i: int) -> int:
        return self.self_intersections[i % len(self.self_intersections)]


@dataclass(frozen=True)
class BasePoint:
    """Point of the base in canonical cone coordinates.

    `cone is None` encodes the origin.  A point on wall i (the shared ray
    of cones i-1 and i) is always stored in cone i with coordinates (a, 0);
    this makes structural equality geometric equality.
    """

    cone: int | None
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    @property
    def is_origin(self) -> bool:
        return self.cone is None

    @property
    def on_wall(self) -> bool:
        return self.cone is not None and self.b == 0


ORIGIN = BasePoint(None)


@dataclass(frozen=True)
class TangentVector:
    """Integer tangent vector in the basis (e_i, e_{i+1}) of its home cone."""

    cone: int
    u: int
    v: int

    @property
    def is_zero(self) -> bool:
        return self.u == 0 and self.v == 0


@dataclass(frozen=True)
class IntMatrix2:
    """Row-major 2x2 integer matrix."""

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def identity(cls) -> "IntMatrix2":
        return cls(1, 0, 0, 1)

    def __matmul__(self, other: "IntMatrix2") -> "IntMatrix2":
        return IntMatrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def apply(self, u, v):
        return (self.a * u + self.b * v, self.c * u + self.d * v)

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def trace(self) -> int:
        return self.a + self.d

    def inverse(self) -> "IntMatrix2":
        det = self.det()
        if det == 1:
            return IntMatrix2(self.d, -self.b, -self.c, self.a)
        if det == -1:
            return IntMatrix2(-self.d, self.b, self.c, -self.a)
        raise ZeroVector(f"matrix with determinant {det} is not invertible over Z")

    @property
    def is_identity(self) -> bool:
        return (self.a, self.b, self.c, self.d) == (1, 0, 0, 1)

    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]


@dataclass(frozen=True)
class CurveClass:
    """Nonnegative integer combination of boundary divisor classes.

    Stored as sorted (divisor index, multiplicity) items with all
    multiplicities positive; an absent index means zero.
    """

    coeffs: tuple[tuple[int, int], ...] = ()

    @classmethod
    def zero(cls) -> "CurveClass":
        return cls(())

    @classmethod
    def of(cls, mapping) -> "CurveClass":
        items = []
        for k, v in sorted(dict(mapping).items()):
            if v < 0:
                raise ValueError("curve class multiplicities must be >= 0")
            if v:
                items.append((int(k), int(v)))
        return cls(tuple(items))

    def __add__(self, other: "CurveClass") -> "CurveClass":
        acc = dict(self.coeffs)
        for k, v in other.coeffs:
            acc[k] = acc.get(k, 0) + v
        return CurveClass.of(acc)

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs


@dataclass(frozen=True)
class TropicalBase:
    """The fan of cones attached to a pair, with its wall-crossing rules."""

    pair: LooijengaPair

    @property
    def l(self) -> int:
        return len(self.pair)

    # -- points ----------------------------------------------------------

    def point(self, cone: int, a, b) -> BasePoint:
        """Canonical point of cone `cone` with coordinates (a, b) >= 0."""
        a = Fraction(a)
        b = Fraction(b)
        if a < 0 or b < 0:
            raise ValueError(f"cone coordinates must be nonnegative, got ({a}, {b})")
        cone %= self.l
        if a == 0 and b == 0:
            return ORIGIN
        if b == 0:
            return BasePoint(cone, a, b)
        if a == 0:
            # lies on wall cone+1; store it there
            return BasePoint((cone + 1) % self.l, b, Fraction(0))
        return BasePoint(cone, a, b)

    def coords_in_cone(self, p: BasePoint, cone: int):
        """Coordinates of `p` in the closed cone `cone`, or None."""
        cone %= self.l
        if p.is_origin:
            return (Fraction(0), Fraction(0))
        if p.cone == cone:
            return (p.a, p.b)
        if p.b == 0 and (p.cone - 1) % self.l == cone:
            # wall point seen from the lower-indexed neighbour
            return (Fraction(0), p.a)
        return None

    # -- transports ------------------------------------------------------

    def forward_matrix(self, wall: int) -> IntMatrix2:
        """Transport matrix across wall i, from cone i-1 into cone i."""
        d = self.pair[wall]
        return IntMatrix2(-d, 1, -1, 0)

    def transport(self, vec: TangentVector, wall: int, forward: bool = True) -> TangentVector:
        """Re-express `vec` across wall `wall`.

        Forward moves from cone wall-1 into cone wall; backward is the
        inverse.  Raises WrongHomeCone if `vec` lives on the wrong side.
        """
        wall %= self.l
        m = self.forward_matrix(wall)
        if forward:
            if vec.cone != (wall - 1) % self.l:
                raise WrongHomeCone(
                    f"forward transport across wall {wall} needs home cone "
                    f"{(wall - 1) % self.l}, got {vec.cone}"
                )
            u, v = m.apply(vec.u, vec.v)
            return TangentVector(wall, u, v)
        if vec.cone != wall:
            raise WrongHomeCone(
                f"backward transport across wall {wall} needs home cone "
                f"{wall}, got {vec.cone}"
            )
        u, v = m.inverse().apply(vec.u, vec.v)
        return TangentVector((wall - 1) % self.l, u, v)


def build_base(pair: LooijengaPair) -> TropicalBase:
    """Tropical base of `pair`: l cones and l walls, cyclically indexed."""
    if not isinstance(pair, LooijengaPair):
        pair = LooijengaPair(tuple(pair))
    return TropicalBase(pair)


def wall_chart(base: TropicalBase, wall: int, p):
    """Affine chart at wall i, defined on cones i-1 and i.

    Sends e_{i-1}, e_i, e_{i+1} to (1,0), (0,1), (-1,-d_i) and extends
    linearly on each cone.  `p` may be a BasePoint (rational output) or a
    TangentVector with home cone i-1 or i (integer output).
    """
    wall %= base.l
    d = base.pair[wall]
    lower = (wall - 1) % base.l
    if isinstance(p, TangentVector):
        if p.cone == lower:
            return (p.u, p.v)
        if p.cone == wall:
            return (-p.v, p.u - p.v * d)
        raise OutOfChart(
            f"vector home cone {p.cone} is not adjacent to wall {wall}"
        )
    if p.is_origin:
        raise OriginNotInChart("the origin belongs to no wall chart")
    hi = base.coords_in_cone(p, wall)
    if hi is not None:
        a, b = hi
        return (-b, a - b * d)
    lo = base.coords_in_cone(p, lower)
    if lo is not None:
        return (lo[0], lo[1])
    raise OutOfChart(f"point {p} is not in the chart at wall {wall}")


def transport(base: TropicalBase, vec: TangentVector, wall: int, forward: bool = True) -> TangentVector:
    """Module-level alias of TropicalBase.transport."""
    return base.transport(vec, wall, forward)


def monodromy(base: TropicalBase) -> IntMatrix2:
    """Product of the l forward transports around the origin, from cone 0.

    The identity exactly when the fan closure exists; the pair is toric in
    that case.
    """
    a, b, c, d = kernels.monodromy_product(base.pair.self_intersections)
    return IntMatrix2(a, b, c, d)


def fan_closure(pair: LooijengaPair):
    """Ray vectors (1,0), (0,1), ... of the closed fan, or None.

    Runs the recurrence v_{i+1} = -v_{i-1} - d_i v_i and accepts exactly
    when the moving frame returns after one cycle, which is equivalent to
    trivial monodromy.  (Degenerate multi-winding closures are returned
    too; they never occur for geometrically realizable pairs.)
    """
    if not isinstance(pair, LooijengaPair):
        pair = LooijengaPair(tuple(pair))
    vs = kernels.fan_closure_vectors(pair.self_intersections)
    return None if vs is None else [tuple(v) for v in vs]


def winding_number(vectors) -> int:
    """How many times a cyclic ray sequence turns counterclockwise.

    Assumes consecutive rays are positively oriented (det = 1), as the fan
    closure recurrence guarantees; a genuine fan winds exactly once.
    """
    vs = list(vectors)
    n = len(vs)
    crossings = 0
    for i in range(n):
        ax, ay = vs[i]
        bx, by = vs[(i + 1) % n]
        # ccw arc (a, b] shorter than a half turn; count hits of dir (1,0)
        if by == 0 and bx > 0:
            crossings += 1
        elif ay < 0 and by > 0:
            crossings += 1
    return crossings


def intersection_matrix(pair: LooijengaPair):
    """Symmetric l x l matrix: d_i on the diagonal, 1 for cyclic neighbours."""
    if not isinstance(pair, LooijengaPair):
        pair = LooijengaPair(tuple(pair))
    l = len(pair)
    m = [[0] * l for _ in range(l)]
    for i in range(l):
        m[i][i] = pair[i]
        m[i][(i + 1) % l] = 1
        m[(i + 1) % l][i] = 1
    return m


def _int_det(rows) -> int:
    """Exact determinant of an integer matrix (fraction-free elimination)."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[-1][-1]


def is_positive(pair: LooijengaPair) -> bool:
    """Whether the intersection matrix is NOT negative semi-definite.

    Decided exactly: M is negative semi-definite iff every principal minor
    of -M is >= 0.
    """
    m = intersection_matrix(pair)
    l = len(m)
    neg = [[-x for x in row] for row in m]
    for size in range(1, l + 1):
        for subset in combinations(range(l), size):
            minor = [[neg[i][j] for j in subset] for i in subset]
            if _int_det(minor) < 0:
                return True
    return False


def _as_int_pair(v):
    if isinstance(v, TangentVector):
        return (v.u, v.v)
    u, w = v
    return (int(u), int(w))


def wedge_lattice_length(v, w) -> int:
    """|det(v, w)| for integer vectors in a common cone's coordinates.

    Invariant under determinant-1 transports, so the caller may transport
    both arguments to any shared cone first.
    """
    vu, vv = _as_int_pair(v)
    wu, wv = _as_int_pair(w)
    return abs(vu * wv - vv * wu)


def norm_sq(base: TropicalBase, vec: TangentVector) -> int:
    """Squared norm of `vec` in the ambient coordinate embedding.

    A vector (u, v) in cone i has ambient coordinates u and v on the two
    rays of its home cone, so the squared norm is u^2 + v^2.  The value
    depends on the home cone; comparisons of norms are comparisons of
    these squares.
    """
    if vec.is_zero:
        raise ZeroVector("the zero vector has no direction")
    return vec.u * vec.u + vec.v * vec.v


def primitive_part(u: int, v: int):
    """(primitive vector, multiplicity) with (u, v) = m * primitive."""
    if u == 0 and v == 0:
        raise ZeroVector("the zero vector has no primitive part")
    g = gcd(abs(u), abs(v))
    return (u // g, v // g), g


def lattice_length_of_point(a: Fraction, b: Fraction):
    """Length of the segment from the origin to (a, b) against the lattice.

    Returns (length, primitive direction): (a, b) = length * primitive.
    """
    a = Fraction(a)
    b = Fraction(b)
    if a == 0 and b == 0:
        raise ZeroVector("zero point has no direction")
    den = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
    ia = int(a * den)
    ib = int(b * den)
    g = gcd(abs(ia), abs(ib))
    return Fraction(g, den), (ia // g, ib // g)


def verify_toric_criterion(l: int, lo: int, hi: int):
    """Sweep all pairs of length l with entries in [lo, hi].

    Returns (pairs_checked, closures_found, mismatches) where a mismatch is
    a pair on which trivial monodromy and fan closure disagree.
    """
    return kernels.verify_toric_grid(l, lo, hi)
