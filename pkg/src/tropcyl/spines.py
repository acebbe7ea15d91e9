"""Trees mapped into the tropical base: spines, cylinders, and their checks.

A tree is a finite set of vertices (positioned, at the origin, or at
infinity) and edges.  Every edge lives inside a single closed cone and is
straight there; wall crossings happen only at vertices.  An edge stores an
integer direction vector as seen from its tail and a positive rational
parameter length, so that head = tail + length * direction; rays to
infinity have length None.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    MalformedCylinder,
    OriginVertex,
    StructuralError,
)
from .lattice import (
    BasePoint,
    TangentVector,
    TropicalBase,
    norm_sq,
    primitive_part,
)


@dataclass(frozen=True)
class Vertex:
    """Tree vertex; position is None for vertices at infinity."""

    id: str
    position: BasePoint | None

    @property
    def is_unbounded(self) -> bool:
        return self.position is None


@dataclass(frozen=True)
class Edge:
    """Straight edge inside cone `cone`, parametrized from `tail`.

    For bounded edges pos(head) = pos(tail) + length * direction; a length
    of None marks a ray whose head sits at infinity.
    """

    tail: str
    head: str
    cone: int
    direction: tuple[int, int]
    length: Fraction | None

    @property
    def is_ray(self) -> bool:
        return self.length is None


def make_edge(tail: str, head: str, cone: int, direction, length) -> Edge:
    """Edge with the canonical tail choice (lexicographically smaller id).

    Rays are always stored from their bounded endpoint and are not flipped.
    """
    u, v = int(direction[0]), int(direction[1])
    if length is not None:
        length = Fraction(length)
        if head < tail:
            tail, head = head, tail
            u, v = -u, -v
    return Edge(tail, head, int(cone), (u, v), length)


@dataclass(frozen=True)
class TropicalTree:
    """Tree with a marked ordered boundary pair.

    The same structure serves bounded spines (all vertices positioned,
    boundary = the two leaves), extended spines (boundary at infinity) and
    cylinder bodies (extra legs ending at the origin).
    """

    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    boundary: tuple[str, str]

    def vertex(self, vid: str) -> Vertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise StructuralError(f"no vertex {vid!r}")

    def position(self, vid: str) -> BasePoint | None:
        return self.vertex(vid).position

    def incident(self, vid: str) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if vid in (e.tail, e.head))

    def valency(self, vid: str) -> int:
        return len(self.incident(vid))


def make_tree(vertices, edges, boundary) -> TropicalTree:
    """Normalized tree: vertices sorted by id, edges by endpoint pair."""
    vs = tuple(sorted(vertices, key=lambda v: v.id))
    es = tuple(sorted(edges, key=lambda e: (e.tail, e.head)))
    return TropicalTree(vs, es, (boundary[0], boundary[1]))


@dataclass(frozen=True)
class CylinderInB:
    """Cylinder body in the base: an extended spine plus legs to the origin."""

    tree: TropicalTree
    legs: tuple[tuple[str, str], ...]

    def path_part(self) -> TropicalTree:
        """The tree with all legs (and their origin endpoints) removed."""
        leg_set = set(self.legs)
        edges = tuple(e for e in self.tree.edges if (e.tail, e.head) not in leg_set)
        drop = set()
        for key in self.legs:
            for vid in key:
                pos = self.tree.position(vid)
                if pos is not None and pos.is_origin:
                    drop.add(vid)
        vertices = tuple(v for v in self.tree.vertices if v.id not in drop)
        return make_tree(vertices, edges, self.tree.boundary)


@dataclass(frozen=True)
class CylinderInBTilde:
    """Cylinder in the line-augmented base.

    Adds an integer slope per edge (relative to the edge tail) and a
    rational height per vertex for the extra affine coordinate; slopes
    vanish exactly on the legs.
    """

    cylinder: CylinderInB
    slopes: tuple[tuple[tuple[str, str], int], ...]
    heights: tuple[tuple[str, Fraction], ...]

    def slope(self, key: tuple[str, str]) -> int:
        for k, s in self.slopes:
            if k == key:
                return s
        raise StructuralError(f"no slope for edge {key}")

    def height(self, vid: str) -> Fraction:
        for k, h in self.heights:
            if k == vid:
                return h
        raise StructuralError(f"no height for vertex {vid!r}")


# ---------------------------------------------------------------------------
# structural checks


def check_structure(base: TropicalBase, tree: TropicalTree,
                    allow_unbounded: bool = True,
                    allow_origin: bool = False) -> None:
    """Raise StructuralError unless `tree` is a consistent mapped tree."""
    ids = [v.id for v in tree.vertices]
    if len(set(ids)) != len(ids):
        raise StructuralError("duplicate vertex ids")
    byid = {v.id: v for v in tree.vertices}
    if len(tree.boundary) != 2 or tree.boundary[0] == tree.boundary[1]:
        raise StructuralError("boundary must be two distinct vertices")
    for b in tree.boundary:
        if b not in byid:
            raise StructuralError(f"boundary vertex {b!r} missing")

    for v in tree.vertices:
        if v.is_unbounded and not allow_unbounded:
            raise StructuralError(f"unbounded vertex {v.id!r} not allowed here")
        if v.position is not None and v.position.is_origin and not allow_origin:
            raise StructuralError(f"vertex {v.id!r} sits at the origin")

    seen = set()
    adjacency: dict[str, list[str]] = {v.id: [] for v in tree.vertices}
    for e in tree.edges:
        if e.tail == e.head:
            raise StructuralError("loop edge")
        if e.tail not in byid or e.head not in byid:
            raise StructuralError(f"edge ({e.tail!r}, {e.head!r}) references missing vertex")
        key = frozenset((e.tail, e.head))
        if key in seen:
            raise StructuralError(f"parallel edges between {e.tail!r} and {e.head!r}")
        seen.add(key)
        adjacency[e.tail].append(e.head)
        adjacency[e.head].append(e.tail)
        if e.direction == (0, 0):
            raise StructuralError(f"edge ({e.tail!r}, {e.head!r}) has zero direction")
        tail = byid[e.tail]
        head = byid[e.head]
        if tail.is_unbounded:
            raise StructuralError(f"edge tail {e.tail!r} is unbounded")
        tc = base.coords_in_cone(tail.position, e.cone)
        if tc is None:
            raise StructuralError(
                f"vertex {e.tail!r} lies outside cone {e.cone} of its edge")
        if e.is_ray:
            if not head.is_unbounded:
                raise StructuralError(
                    f"ray ({e.tail!r}, {e.head!r}) must end at infinity")
            if e.direction[0] < 0 or e.direction[1] < 0:
                raise StructuralError(
                    f"ray ({e.tail!r}, {e.head!r}) leaves cone {e.cone}")
        else:
            if head.is_unbounded:
                raise StructuralError(
                    f"bounded edge ({e.tail!r}, {e.head!r}) ends at infinity")
            if e.length <= 0:
                raise StructuralError(
                    f"edge ({e.tail!r}, {e.head!r}) has nonpositive length")
            hc = base.coords_in_cone(head.position, e.cone)
            if hc is None:
                raise StructuralError(
                    f"vertex {e.head!r} lies outside cone {e.cone} of its edge")
            du, dv = e.direction
            if (tc[0] + e.length * du, tc[1] + e.length * dv) != hc:
                raise StructuralError(
                    f"edge ({e.tail!r}, {e.head!r}) endpoints do not match "
                    f"its direction and length")

    for v in tree.vertices:
        if v.is_unbounded:
            inc = adjacency[v.id]
            if len(inc) != 1:
                raise StructuralError(f"unbounded vertex {v.id!r} must be 1-valent")

    if len(tree.edges) != len(tree.vertices) - 1:
        raise StructuralError("edge count does not match a tree")
    # connectivity
    if tree.vertices:
        stack = [tree.vertices[0].id]
        reached = set()
        while stack:
            x = stack.pop()
            if x in reached:
                continue
            reached.add(x)
            stack.extend(adjacency[x])
        if len(reached) != len(tree.vertices):
            raise StructuralError("graph is not connected")


# ---------------------------------------------------------------------------
# directions and balancing


def direction_at(tree: TropicalTree, edge: Edge, vid: str) -> TangentVector:
    """Integer direction of `edge` pointing away from vertex `vid`."""
    if vid == edge.tail:
        return TangentVector(edge.cone, edge.direction[0], edge.direction[1])
    if vid == edge.head:
        if edge.is_ray:
            raise StructuralError("rays have no direction at their infinite end")
        return TangentVector(edge.cone, -edge.direction[0], -edge.direction[1])
    raise StructuralError(f"vertex {vid!r} is not an endpoint of the edge")


def _to_canonical_cone(base: TropicalBase, pos: BasePoint, vec: TangentVector) -> TangentVector:
    """Transport `vec` into the canonical cone of `pos` (wall points live in
    the higher-indexed neighbour)."""
    target = pos.cone
    if vec.cone == target:
        return vec
    if pos.on_wall and (vec.cone + 1) % base.l == target:
        return base.transport(vec, target, forward=True)
    raise StructuralError(
        f"edge cone {vec.cone} is not adjacent to the vertex in cone {target}")


def direction_sum(base: TropicalBase, tree: TropicalTree, vid: str) -> TangentVector:
    """Sum of outgoing edge directions at `vid`, in its canonical cone."""
    pos = tree.position(vid)
    if pos is None:
        raise StructuralError(f"vertex {vid!r} is unbounded")
    if pos.is_origin:
        raise OriginVertex("direction sums are undefined at the origin")
    total_u = 0
    total_v = 0
    for e in tree.incident(vid):
        w = _to_canonical_cone(base, pos, direction_at(tree, e, vid))
        total_u += w.u
        total_v += w.v
    return TangentVector(pos.cone, total_u, total_v)


def is_balanced(base: TropicalBase, tree: TropicalTree, vid: str) -> bool:
    """Whether the outgoing directions at `vid` sum to zero exactly."""
    return direction_sum(base, tree, vid).is_zero


# ---------------------------------------------------------------------------
# spine validation


@dataclass(frozen=True)
class Violation:
    """One failed spine condition, tagged with a stable code."""

    code: str
    where: str
    message: str


def _is_radial(base: TropicalBase, pos: BasePoint, vec: TangentVector) -> bool:
    """Whether +-vec points along the ray from the origin through `pos`."""
    coords = base.coords_in_cone(pos, vec.cone)
    if coords is None:
        raise StructuralError("vector home cone does not contain the point")
    pa, pb = coords
    return vec.u * pb - vec.v * pa == 0


def _radial_sign(base: TropicalBase, pos: BasePoint, vec: TangentVector) -> int:
    """0 for zero, +1 if `vec` is a positive multiple of the position ray,
    -1 if a negative multiple, and raises if not radial at all."""
    if vec.is_zero:
        return 0
    if not _is_radial(base, pos, vec):
        raise ValueError("vector is not radial")
    pa, pb = base.coords_in_cone(pos, vec.cone)
    dot = vec.u * pa + vec.v * pb
    return 1 if dot > 0 else -1


def _spine_conditions(base: TropicalBase, tree: TropicalTree) -> list[Violation]:
    """Shared body of the spine validators (conditions on the mapped tree)."""
    out: list[Violation] = []
    for v in tree.vertices:
        if v.position is not None and v.position.is_origin:
            out.append(Violation("origin-image", v.id,
                                 f"vertex {v.id!r} maps to the origin"))
    leaves = {v.id for v in tree.vertices if tree.valency(v.id) == 1}
    if leaves != set(tree.boundary):
        out.append(Violation(
            "leaf-set", ",".join(sorted(leaves)),
            "the 1-valent vertices must be exactly the boundary pair"))
    for v in tree.vertices:
        if v.position is None or v.position.is_origin:
            continue
        for e in tree.incident(v.id):
            w = direction_at(tree, e, v.id)
            if _is_radial(base, v.position, w):
                out.append(Violation(
                    "radial-direction", v.id,
                    f"edge ({e.tail!r}, {e.head!r}) points along the origin "
                    f"ray at vertex {v.id!r}"))
    for v in tree.vertices:
        if v.position is None or v.position.is_origin:
            continue
        if tree.valency(v.id) != 2:
            continue
        sigma = direction_sum(base, tree, v.id)
        if sigma.is_zero:
            continue
        if not _is_radial(base, v.position, sigma) or \
                _radial_sign(base, v.position, sigma) <= 0:
            out.append(Violation(
                "defect-not-outward", v.id,
                f"2-valent vertex {v.id!r} has direction sum ({sigma.u}, "
                f"{sigma.v}) whose negative does not point to the origin"))
    return out


def validate_spine(base: TropicalBase, tree: TropicalTree) -> list[Violation]:
    """All violated spine conditions for a bounded spine (empty = valid)."""
    check_structure(base, tree, allow_unbounded=False, allow_origin=True)
    return _spine_conditions(base, tree)


def validate_extended_spine(base: TropicalBase, tree: TropicalTree) -> list[Violation]:
    """Spine conditions for a spine whose two ends run to infinity."""
    check_structure(base, tree, allow_unbounded=True, allow_origin=True)
    out = _spine_conditions(base, tree)
    unbounded = {v.id for v in tree.vertices if v.is_unbounded}
    if unbounded != set(tree.boundary):
        out.append(Violation(
            "unbounded-boundary", ",".join(sorted(unbounded)),
            "the unbounded vertices must be exactly the boundary pair"))
    return out


def validate_cylinder_b(base: TropicalBase, cyl: CylinderInB) -> list[Violation]:
    """Cylinder conditions: stray leaves at the origin, the rest balanced."""
    tree = cyl.tree
    check_structure(base, tree, allow_unbounded=True, allow_origin=True)
    out: list[Violation] = []
    for v in tree.vertices:
        if v.id in tree.boundary:
            continue
        if tree.valency(v.id) == 1:
            if v.position is None or not v.position.is_origin:
                out.append(Violation(
                    "leaf-off-origin", v.id,
                    f"non-boundary leaf {v.id!r} does not map to the origin"))
        else:
            if v.position is not None and v.position.is_origin:
                out.append(Violation(
                    "origin-branch", v.id,
                    f"origin vertex {v.id!r} must be 1-valent"))
            elif not is_balanced(base, tree, v.id):
                out.append(Violation(
                    "unbalanced", v.id, f"vertex {v.id!r} is not balanced"))
    return out


# ---------------------------------------------------------------------------
# cylinders in the line-augmented base


def a_value(base: TropicalBase, z: CylinderInBTilde | CylinderInB):
    """Largest squared norm of the two boundary ray directions."""
    tree = z.cylinder.tree if isinstance(z, CylinderInBTilde) else z.tree
    rays = []
    for b in tree.boundary:
        v = tree.vertex(b)
        if not v.is_unbounded:
            raise MalformedCylinder(f"boundary vertex {b!r} is not at infinity")
        inc = tree.incident(b)
        if len(inc) != 1 or not inc[0].is_ray:
            raise MalformedCylinder(f"boundary vertex {b!r} has no ray edge")
        rays.append(inc[0])
    return max(norm_sq(base, TangentVector(e.cone, *e.direction)) for e in rays)


def pi1_balanced(z: CylinderInBTilde, vid: str) -> bool:
    """Whether the line-coordinate slopes at `vid` sum to zero."""
    tree = z.cylinder.tree
    total = 0
    for e in tree.incident(vid):
        s = z.slope((e.tail, e.head))
        total += s if vid == e.tail else -s
    return total == 0


# ---------------------------------------------------------------------------
# canonical images


def _tree_of(z) -> TropicalTree:
    if isinstance(z, CylinderInBTilde):
        return z.cylinder.tree
    if isinstance(z, CylinderInB):
        return z.tree
    return z


def _point_key(p: BasePoint):
    if p.is_origin:
        return (-1, Fraction(0), Fraction(0))
    return (p.cone, p.a, p.b)


@dataclass(frozen=True)
class CanonicalImage:
    """Canonical encoding of the image point set of a mapped tree.

    Sorted tuple of pieces: ("seg", cone, point key, point key) with the
    endpoint keys ordered, or ("ray", cone, base point key, primitive
    direction).  Collinear balanced 2-valent vertices inside one cone are
    erased first, so subdivisions of the same image coincide.
    """

    pieces: tuple


def canonical_image(z) -> CanonicalImage:
    tree = _tree_of(z)
    positions = {v.id: v.position for v in tree.vertices}
    edges = list(tree.edges)

    # erase balanced collinear 2-valent vertices (same home cone)
    changed = True
    while changed:
        changed = False
        incidence: dict[str, list[Edge]] = {}
        for e in edges:
            incidence.setdefault(e.tail, []).append(e)
            incidence.setdefault(e.head, []).append(e)
        for vid, inc in incidence.items():
            if len(inc) != 2 or vid in tree.boundary:
                continue
            pos = positions[vid]
            if pos is None or pos.is_origin:
                continue
            e1, e2 = inc
            if e1.cone != e2.cone:
                continue
            w1 = direction_at(tree, e1, vid)
            w2 = direction_at(tree, e2, vid)
            if (w1.u + w2.u, w1.v + w2.v) != (0, 0):
                continue
            if e1.is_ray:  # at most one of the two can be a ray
                e1, e2 = e2, e1
            a = e1.head if e1.tail == vid else e1.tail
            b = e2.head if e2.tail == vid else e2.tail
            da = direction_at(tree, e1, a)  # direction of travel a -> vid -> b
            if e2.is_ray:
                merged = Edge(a, b, e1.cone, (da.u, da.v), None)
            else:
                merged = make_edge(a, b, e1.cone, (da.u, da.v),
                                   e1.length + e2.length)
            edges = [e for e in edges if e not in (e1, e2)]
            edges.append(merged)
            changed = True
            break

    pieces = []
    for e in edges:
        tail_pos = positions[e.tail]
        if e.is_ray:
            prim, _ = primitive_part(*e.direction)
            pieces.append(("ray", e.cone, _point_key(tail_pos), prim))
        else:
            k1 = _point_key(tail_pos)
            k2 = _point_key(positions[e.head])
            if k2 < k1:
                k1, k2 = k2, k1
            pieces.append(("seg", e.cone, k1, k2))
    return CanonicalImage(tuple(sorted(pieces)))


def images_equal(z1, z2) -> bool:
    """Whether two mapped trees have the same image point set."""
    return canonical_image(z1) == canonical_image(z2)


# ---------------------------------------------------------------------------
# tree surgery helpers (used by tests and the round-trip checks)


def subdivide_edge(base: TropicalBase, tree: TropicalTree, key: tuple[str, str],
                   t: Fraction, new_id: str | None = None) -> TropicalTree:
    """Split a bounded edge at parameter fraction t in (0, 1).

    The new vertex is balanced and collinear, so the image is unchanged.
    """
    t = Fraction(t)
    if not 0 < t < 1:
        raise ValueError("subdivision parameter must be strictly inside (0, 1)")
    target = None
    for e in tree.edges:
        if (e.tail, e.head) == key:
            target = e
            break
    if target is None or target.is_ray:
        raise StructuralError(f"no bounded edge {key}")
    if new_id is None:
        k = 0
        names = {v.id for v in tree.vertices}
        while f"s{k}" in names:
            k += 1
        new_id = f"s{k}"
    tc = base.coords_in_cone(tree.position(target.tail), target.cone)
    du, dv = target.direction
    mid = base.point(target.cone,
                     tc[0] + t * target.length * du,
                     tc[1] + t * target.length * dv)
    vertices = list(tree.vertices) + [Vertex(new_id, mid)]
    edges = [e for e in tree.edges if e is not target]
    edges.append(make_edge(target.tail, new_id, target.cone,
                           target.direction, t * target.length))
    edges.append(make_edge(new_id, target.head, target.cone,
                           target.direction, (1 - t) * target.length))
    return make_tree(vertices, edges, tree.boundary)


def relabel(tree: TropicalTree, mapping: dict[str, str]) -> TropicalTree:
    """Rename vertices; edge tails are re-normalized to the new order."""
    def m(x: str) -> str:
        return mapping.get(x, x)

    vertices = [Vertex(m(v.id), v.position) for v in tree.vertices]
    edges = []
    for e in tree.edges:
        if e.is_ray:
            edges.append(Edge(m(e.tail), m(e.head), e.cone, e.direction, None))
        else:
            edges.append(make_edge(m(e.tail), m(e.head), e.cone, e.direction,
                                   e.length))
    return make_tree(vertices, edges, (m(tree.boundary[0]), m(tree.boundary[1])))
