"""JSON input/output: pair files, spine files, and report fragments.

Rationals travel as strings "p/q" with q > 0 and gcd(p, q) = 1.  Vertices
at infinity are implicit: they appear only as heads of edges of length
"unbounded" and are omitted from the vertex list.
"""

from __future__ import annotations

from fractions import Fraction

from .lattice import LooijengaPair, TropicalBase
from .spines import CylinderInB, TropicalTree, Vertex, make_edge, make_tree


class SchemaError(ValueError):
    """Input JSON does not match the documented file schema."""


def frac_to_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_frac(s) -> Fraction:
    if isinstance(s, str):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad rational {s!r}") from exc
    if isinstance(s, int):
        return Fraction(s)
    raise SchemaError(f"expected a rational string, got {s!r}")


def pair_from_json(data) -> LooijengaPair:
    if not isinstance(data, dict) or "self_intersections" not in data:
        raise SchemaError('pair file needs a "self_intersections" list')
    seq = data["self_intersections"]
    if not isinstance(seq, list) or not all(isinstance(x, int) for x in seq):
        raise SchemaError('"self_intersections" must be a list of integers')
    return LooijengaPair(tuple(seq))


def pair_to_json(pair: LooijengaPair) -> dict:
    return {"self_intersections": list(pair.self_intersections)}


def spine_from_json(base: TropicalBase, data) -> TropicalTree:
    if not isinstance(data, dict):
        raise SchemaError("spine file must be a JSON object")
    for key in ("vertices", "edges", "boundary"):
        if key not in data:
            raise SchemaError(f'spine file needs a "{key}" entry')
    vertices = []
    ids = set()
    for item in data["vertices"]:
        if not isinstance(item, dict) or "id" not in item:
            raise SchemaError(f"bad vertex entry {item!r}")
        vid = item["id"]
        if not isinstance(vid, str):
            raise SchemaError("vertex ids must be strings")
        if vid in ids:
            raise SchemaError(f"duplicate vertex id {vid!r}")
        ids.add(vid)
        if item.get("origin"):
            vertices.append(Vertex(vid, base.point(0, 0, 0)))
            continue
        if "cone" not in item or "coords" not in item:
            raise SchemaError(f"vertex {vid!r} needs cone and coords")
        coords = item["coords"]
        if not isinstance(coords, list) or len(coords) != 2:
            raise SchemaError(f"vertex {vid!r} coords must be a pair")
        try:
            pos = base.point(int(item["cone"]),
                             parse_frac(coords[0]), parse_frac(coords[1]))
        except ValueError as exc:
            raise SchemaError(f"vertex {vid!r}: {exc}") from exc
        vertices.append(Vertex(vid, pos))

    edges = []
    for item in data["edges"]:
        if not isinstance(item, dict):
            raise SchemaError(f"bad edge entry {item!r}")
        for key in ("tail", "head", "cone", "direction", "length"):
            if key not in item:
                raise SchemaError(f'edge entry needs "{key}"')
        direction = item["direction"]
        if (not isinstance(direction, list) or len(direction) != 2
                or not all(isinstance(x, int) for x in direction)):
            raise SchemaError(f"edge direction must be an integer pair")
        tail, head = item["tail"], item["head"]
        if item["length"] == "unbounded":
            if head not in ids:
                vertices.append(Vertex(head, None))
                ids.add(head)
            edges.append(make_edge(tail, head, int(item["cone"]),
                                   tuple(direction), None))
        else:
            edges.append(make_edge(tail, head, int(item["cone"]),
                                   tuple(direction), parse_frac(item["length"])))

    boundary = data["boundary"]
    if not isinstance(boundary, list) or len(boundary) != 2:
        raise SchemaError('"boundary" must be a pair of vertex ids')
    return make_tree(vertices, edges, (boundary[0], boundary[1]))


def spine_to_json(tree: TropicalTree) -> dict:
    vertices = []
    for v in tree.vertices:
        if v.is_unbounded:
            continue
        if v.position.is_origin:
            vertices.append({"id": v.id, "origin": True})
        else:
            vertices.append({
                "id": v.id,
                "cone": v.position.cone,
                "coords": [frac_to_str(v.position.a), frac_to_str(v.position.b)],
            })
    edges = []
    for e in tree.edges:
        edges.append({
            "tail": e.tail,
            "head": e.head,
            "cone": e.cone,
            "direction": [e.direction[0], e.direction[1]],
            "length": "unbounded" if e.is_ray else frac_to_str(e.length),
        })
    return {"vertices": vertices, "edges": edges,
            "boundary": [tree.boundary[0], tree.boundary[1]]}


def cylinder_to_json(cyl: CylinderInB) -> dict:
    out = spine_to_json(cyl.tree)
    out["legs"] = [[t, h] for (t, h) in cyl.legs]
    return out


def curve_class_to_json(cc) -> dict:
    return {f"D_{i}": m for (i, m) in cc.coeffs}
