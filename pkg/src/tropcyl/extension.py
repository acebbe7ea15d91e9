"""Spine extension: ray casting in the base, curve-class bookkeeping,
cylinder completion, and the explicit degree-7 del Pezzo trace family.

Extension shoots a ray out of each spine end, opposite to the boundary
edge.  A ray that stays inside a cone forever finishes that end with an
unbounded edge; a ray that reaches a wall adds a new bounded vertex there,
records a boundary-divisor multiple (the wedge of the crossing direction
with the wall ray), and continues on the other side.  Cylinder completion
then hangs a leg from every vertex whose direction sum is a positive
radial multiple down to the origin.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DegenerateRay,
    HitOrigin,
    InvalidQuery,
    NotExtendable,
    StructuralError,
    UnbalancedNonRadial,
    WrongHomeCone,
)
from .lattice import (
    ORIGIN,
    BasePoint,
    CurveClass,
    LooijengaPair,
    TangentVector,
    TropicalBase,
    build_base,
    lattice_length_of_point,
    primitive_part,
)
from .spines import (
    CylinderInB,
    CylinderInBTilde,
    Edge,
    TropicalTree,
    Vertex,
    check_structure,
    direction_at,
    direction_sum,
    make_edge,
    make_tree,
    validate_spine,
)

DEL_PEZZO_PAIR = (0, -1, 0, 0)


def del_pezzo_base() -> TropicalBase:
    """The four-cone base used by the explicit count family."""
    return build_base(LooijengaPair(DEL_PEZZO_PAIR))


# ---------------------------------------------------------------------------
# ray tracing


@dataclass(frozen=True)
class RayHit:
    """Outcome of tracing a ray inside the base.

    kind is "wall", "unbounded" or "origin".  `cone`, `direction` and
    `start` describe the traced ray in the cone it actually runs through
    (the start may have been carried across a wall first).
    """

    kind: str
    cone: int
    direction: tuple[int, int]
    start: tuple[Fraction, Fraction]
    wall: int | None = None
    point: BasePoint | None = None
    length: Fraction | None = None


def ray_trace(base: TropicalBase, start: BasePoint, dirvec: TangentVector) -> RayHit:
    """Follow the straight ray from `start` with direction `dirvec`.

    Returns the first wall hit strictly after the start (with the traversed
    parameter length), an unbounded verdict if the ray stays inside the
    open cone, or an origin verdict if it runs exactly into the origin.
    A wall start is first carried to the side the ray actually enters.
    """
    if start.is_origin:
        raise DegenerateRay("ray starts at the origin")
    if dirvec.is_zero:
        raise DegenerateRay("ray direction is zero")
    cone = dirvec.cone % base.l
    coords = base.coords_in_cone(start, cone)
    if coords is None:
        raise WrongHomeCone(
            f"start point is not in cone {cone} of the ray direction")
    a, b = coords
    u, v = dirvec.u, dirvec.v

    if b == 0 and v == 0:
        raise DegenerateRay(f"direction runs along wall {cone}")
    if a == 0 and u == 0:
        raise DegenerateRay(f"direction runs along wall {(cone + 1) % base.l}")

    if b == 0 and v < 0:
        # start on the cone's first wall, pointing across it
        vec = base.transport(TangentVector(cone, u, v), cone, forward=False)
        cone, u, v = vec.cone, vec.u, vec.v
        a, b = Fraction(0), a
    elif a == 0 and u < 0:
        # start on the cone's second wall, pointing across it
        vec = base.transport(TangentVector(cone, u, v), (cone + 1) % base.l,
                             forward=True)
        cone, u, v = vec.cone, vec.u, vec.v
        a, b = b, Fraction(0)

    ta = a / -u if u < 0 else None
    tb = b / -v if v < 0 else None
    if ta is None and tb is None:
        return RayHit("unbounded", cone, (u, v), (a, b))
    if ta is not None and tb is not None and ta == tb:
        return RayHit("origin", cone, (u, v), (a, b))
    if tb is None or (ta is not None and ta < tb):
        hit = base.point(cone, Fraction(0), b + ta * v)
        return RayHit("wall", cone, (u, v), (a, b),
                      wall=(cone + 1) % base.l, point=hit, length=ta)
    hit = base.point(cone, a + tb * u, Fraction(0))
    return RayHit("wall", cone, (u, v), (a, b),
                  wall=cone, point=hit, length=tb)


# ---------------------------------------------------------------------------
# extension


@dataclass(frozen=True)
class ExtensionResult:
    """Extended spine plus the total boundary class picked up on the way."""

    extended: TropicalTree
    curve_class: CurveClass
    steps: int


def _fresh_id(tree: TropicalTree, prefix: str) -> str:
    names = {v.id for v in tree.vertices}
    k = 1
    while f"{prefix}{k}" in names:
        k += 1
    return f"{prefix}{k}"


def extend_step(base: TropicalBase, tree: TropicalTree, end: str):
    """One extension move at the boundary vertex `end`.

    Casts the ray opposite to the boundary edge.  Returns
    (new tree, curve class increment, finished) where finished means the
    end was closed off with an unbounded edge.  The old boundary vertex
    becomes 2-valent and exactly balanced either way.
    """
    v = tree.vertex(end)
    if v.is_unbounded:
        raise StructuralError(f"cannot extend at unbounded vertex {end!r}")
    inc = tree.incident(end)
    if len(inc) != 1:
        raise StructuralError(f"vertex {end!r} is not a 1-valent end")
    w = direction_at(tree, inc[0], end)
    hit = ray_trace(base, v.position, TangentVector(w.cone, -w.u, -w.v))
    if hit.kind == "origin":
        raise HitOrigin(f"extension ray from {end!r} runs into the origin")

    fresh = _fresh_id(tree, "x")
    if hit.kind == "unbounded":
        new_vertex = Vertex(fresh, None)
        new_edge = Edge(end, fresh, hit.cone, hit.direction, None)
        increment = CurveClass.zero()
        finished = True
    else:
        new_vertex = Vertex(fresh, hit.point)
        new_edge = make_edge(end, fresh, hit.cone, hit.direction, hit.length)
        # multiple of the wall ray picked up by the transversal crossing
        if hit.wall == hit.cone:
            mu = abs(hit.direction[1])
        else:
            mu = abs(hit.direction[0])
        increment = CurveClass.of({hit.wall: mu})
        finished = False
    boundary = tuple(fresh if x == end else x for x in tree.boundary)
    new_tree = make_tree(list(tree.vertices) + [new_vertex],
                         list(tree.edges) + [new_edge], boundary)
    return new_tree, increment, finished


def extend(base: TropicalBase, spine: TropicalTree, max_steps: int = 10_000) -> ExtensionResult:
    """Iterate extension at both ends until both run off to infinity.

    Ends are served alternately; the two sides never interact, so the
    result does not depend on the order.  Raises NotExtendable when the
    step budget runs out (non-positive pairs can spiral forever).
    """
    violations = validate_spine(base, spine)
    if violations:
        raise StructuralError(
            "cannot extend an invalid spine: "
            + "; ".join(x.message for x in violations))
    current = spine
    total = CurveClass.zero()
    steps = 0
    finished = [False, False]
    side = 0
    while not all(finished):
        if not finished[side]:
            if steps >= max_steps:
                raise NotExtendable(steps)
            current, increment, fin = extend_step(base, current,
                                                  current.boundary[side])
            total = total + increment
            steps += 1
            finished[side] = fin
        side = 1 - side
    return ExtensionResult(current, total, steps)


# ---------------------------------------------------------------------------
# cylinders


def cylinder_in_b(base: TropicalBase, ext: TropicalTree) -> CylinderInB:
    """Complete an extended spine to a cylinder body in the base.

    Every bounded vertex with a nonzero direction sum gets a leg running
    down to the origin; the leg direction is the negated sum, and its
    parameter length divides the radial lattice length by the sum's
    divisibility, which balances the vertex exactly.
    """
    check_structure(base, ext, allow_unbounded=True, allow_origin=True)
    for b in ext.boundary:
        if not ext.vertex(b).is_unbounded:
            raise StructuralError(
                f"extended spine boundary {b!r} must run to infinity")
    vertices = list(ext.vertices)
    edges = list(ext.edges)
    legs = []
    names = {v.id for v in ext.vertices}
    counter = 1
    for v in ext.vertices:
        if v.is_unbounded or v.position.is_origin:
            continue
        sigma = direction_sum(base, ext, v.id)
        if sigma.is_zero:
            continue
        pa, pb = base.coords_in_cone(v.position, sigma.cone)
        cross = sigma.u * pb - sigma.v * pa
        dot = sigma.u * pa + sigma.v * pb
        if cross != 0 or dot <= 0:
            raise UnbalancedNonRadial(
                f"vertex {v.id!r} has direction sum ({sigma.u}, {sigma.v}) "
                f"that is not an outward radial vector")
        _, mult = primitive_part(sigma.u, sigma.v)
        alpha, _ = lattice_length_of_point(pa, pb)
        while f"o{counter}" in names:
            counter += 1
        oid = f"o{counter}"
        names.add(oid)
        vertices.append(Vertex(oid, ORIGIN))
        leg = make_edge(v.id, oid, sigma.cone, (-sigma.u, -sigma.v),
                        alpha / mult)
        edges.append(leg)
        legs.append((leg.tail, leg.head))
    tree = make_tree(vertices, edges, ext.boundary)
    return CylinderInB(tree, tuple(sorted(legs)))


def _path_order(tree: TropicalTree) -> list[str]:
    """Vertex ids from boundary[0] to boundary[1] along the path."""
    adjacency: dict[str, list[str]] = {v.id: [] for v in tree.vertices}
    for e in tree.edges:
        adjacency[e.tail].append(e.head)
        adjacency[e.head].append(e.tail)
    order = [tree.boundary[0]]
    prev = None
    while order[-1] != tree.boundary[1]:
        nxt = [x for x in adjacency[order[-1]] if x != prev]
        if len(nxt) != 1:
            raise StructuralError("tree is not a path between its boundary")
        prev = order[-1]
        order.append(nxt[0])
    return order


def _edge_between(tree: TropicalTree, a: str, b: str) -> Edge:
    for e in tree.edges:
        if {e.tail, e.head} == {a, b}:
            return e
    raise StructuralError(f"no edge between {a!r} and {b!r}")


def lift_to_tilde(base: TropicalBase, ext: TropicalTree) -> CylinderInBTilde:
    """Cylinder in the line-augmented base attached to an extended spine.

    The extra coordinate is the arclength along the end-to-end path (the
    first bounded vertex is the zero gauge), with slope +-1 on path edges
    by travel direction and slope 0 on the legs.
    """
    cyl = cylinder_in_b(base, ext)
    path = cyl.path_part()
    order = _path_order(path)
    heights: dict[str, Fraction] = {}
    slopes: dict[tuple[str, str], int] = {}

    coord = Fraction(0)
    heights[order[1]] = coord
    for i in range(len(order) - 1):
        x, y = order[i], order[i + 1]
        e = _edge_between(path, x, y)
        if e.is_ray:
            # travel toward infinity at either end of the path
            slopes[(e.tail, e.head)] = -1 if i == 0 else 1
            continue
        slopes[(e.tail, e.head)] = 1 if e.tail == x else -1
        coord = coord + e.length
        heights[y] = coord

    # origin endpoints inherit the height of their path vertex (slope 0)
    for (t, h) in cyl.legs:
        slopes[(t, h)] = 0
        if t in heights:
            heights[h] = heights[t]
        else:
            heights[t] = heights[h]

    return CylinderInBTilde(
        cyl,
        tuple(sorted(slopes.items())),
        tuple(sorted(heights.items())),
    )


# ---------------------------------------------------------------------------
# the explicit del Pezzo family and its trace


def _developed_point(base: TropicalBase, x: Fraction, y: Fraction) -> BasePoint:
    """Convert a point of the developed plane picture into cone coordinates.

    The four cones develop onto the wedges spanned by (1,0),(0,1);
    (0,1),(-1,1); (-1,1),(0,-1); (0,-1),(1,0).
    """
    if x >= 0 and y >= 0:
        return base.point(0, x, y)
    if x <= 0 and x + y >= 0:
        return base.point(1, x + y, -x)
    if x <= 0:
        return base.point(2, -x, -x - y)
    return base.point(3, -y, x)


_DEV_WEDGES = (
    ((1, 0), (0, 1)),
    ((0, 1), (-1, 1)),
    ((-1, 1), (0, -1)),
    ((0, -1), (1, 0)),
)


def _dev_to_cone(cone: int, x, y):
    """Linear coordinates of a developed point/vector in one cone."""
    if cone == 0:
        return (x, y)
    if cone == 1:
        return (x + y, -x)
    if cone == 2:
        return (-x, -x - y)
    return (-y, x)


@dataclass(frozen=True)
class TracePoint:
    """One sample of the family trace: parameter value and its image."""

    t: Fraction
    point: BasePoint


def tropical_trace(l: int, m: int, n: int, b, t) -> BasePoint:
    """Point of the explicit del Pezzo family trace at parameter `t`.

    In the developed picture the trace is (l*t, b + m*t - n*min(0, t));
    the result is converted to canonical cone coordinates.  This is a
    verification oracle hard-wired to the four-cone base.
    """
    if l < 1:
        raise InvalidQuery(f"family needs l >= 1, got {l}")
    b = Fraction(b)
    t = Fraction(t)
    base = del_pezzo_base()
    x = l * t
    y = b + m * t - n * min(Fraction(0), t)
    return _developed_point(base, x, y)


def trace_points(l: int, m: int, n: int, b, ts) -> list[TracePoint]:
    """Trace samples at each parameter value in `ts`."""
    return [TracePoint(Fraction(t), tropical_trace(l, m, n, b, t)) for t in ts]


def family_spine(l: int, m: int, n: int, b) -> TropicalTree:
    """The three-vertex spine with central vertex (0, b) on wall 1.

    Edge directions are (l, m) into cone 0 and, in cone-1 coordinates,
    (n - m - l, l) into cone 1; the short arms keep both endpoints
    strictly inside their cones.
    """
    if l < 1:
        raise InvalidQuery(f"family needs l >= 1, got {l}")
    b = Fraction(b)
    if b <= 0:
        raise ValueError(f"family needs b > 0, got {b}")
    base = del_pezzo_base()
    eps = b / (2 * (1 + max(abs(m), abs(n - m - l))))
    v0 = base.point(1, b, 0)
    v1 = base.point(1, b + eps * (n - m - l), eps * l)
    v2 = base.point(0, eps * l, b + eps * m)
    return make_tree(
        [Vertex("v0", v0), Vertex("v1", v1), Vertex("v2", v2)],
        [
            make_edge("v0", "v1", 1, (n - m - l, l), eps),
            make_edge("v0", "v2", 0, (l, m), eps),
        ],
        ("v1", "v2"),
    )


def trace_path_image(l: int, m: int, n: int, b):
    """Canonical image of the whole trace path, computed by exact clipping.

    Intersects the two developed rays of the trace with each cone wedge
    directly; independent of the extension engine, so the two can be
    compared piece by piece.
    """
    from .spines import CanonicalImage, _point_key

    if l < 1:
        raise InvalidQuery(f"family needs l >= 1, got {l}")
    b = Fraction(b)
    base = del_pezzo_base()
    origin = (Fraction(0), b)
    rays = (((l, m)), ((-l, n - m)))
    pieces = []
    for dx, dy in rays:
        for cone, (g1, g2) in enumerate(_DEV_WEDGES):
            lo = Fraction(0)
            hi = None  # None = unbounded
            empty = False
            for (gx, gy), sign in (((g1), 1), ((g2), -1)):
                # sign * det(g, P + s*d) >= 0, oriented so inside is >= 0
                aa = sign * (gx * (origin[1] + 0) - gy * (origin[0] + 0))
                bb = sign * (gx * dy - gy * dx)
                if bb == 0:
                    if aa < 0:
                        empty = True
                        break
                elif bb > 0:
                    bound = Fraction(-aa, bb)
                    if bound > lo:
                        lo = bound
                else:
                    bound = Fraction(-aa, bb)
                    if hi is None or bound < hi:
                        hi = bound
            if empty or (hi is not None and hi <= lo):
                continue
            px = origin[0] + lo * dx
            py = origin[1] + lo * dy
            start = base.point(cone, *_dev_to_cone(cone, px, py))
            if hi is None:
                du, dv = _dev_to_cone(cone, dx, dy)
                prim, _ = primitive_part(int(du), int(dv))
                pieces.append(("ray", cone, _point_key(start), prim))
            else:
                qx = origin[0] + hi * dx
                qy = origin[1] + hi * dy
                end = base.point(cone, *_dev_to_cone(cone, qx, qy))
                k1, k2 = _point_key(start), _point_key(end)
                if k2 < k1:
                    k1, k2 = k2, k1
                pieces.append(("seg", cone, k1, k2))
    return CanonicalImage(tuple(sorted(pieces)))
