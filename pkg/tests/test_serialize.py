from fractions import Fraction

import pytest

import tropcyl as tc
from tropcyl.serialize import (
    SchemaError,
    cylinder_to_json,
    frac_to_str,
    pair_from_json,
    parse_frac,
    spine_from_json,
    spine_to_json,
)

F = Fraction


class TestRationals:
    def test_roundtrip(self):
        for x in (F(3, 2), F(-1, 7), F(5), F(0)):
            assert parse_frac(frac_to_str(x)) == x

    def test_lowest_terms(self):
        assert frac_to_str(F(6, 4)) == "3/2"
        assert frac_to_str(F(2, -4)) == "-1/2"

    def test_plain_integers_accepted(self):
        assert parse_frac("7") == 7
        assert parse_frac(3) == 3

    def test_garbage_rejected(self):
        with pytest.raises(SchemaError):
            parse_frac("1/0")
        with pytest.raises(SchemaError):
            parse_frac("x")
        with pytest.raises(SchemaError):
            parse_frac(1.5)


class TestPairFile:
    def test_parse(self):
        pair = pair_from_json({"self_intersections": [0, -1, 0, 0]})
        assert pair.self_intersections == (0, -1, 0, 0)

    def test_bad_shapes(self):
        with pytest.raises(SchemaError):
            pair_from_json({"pair": [1, 1, 1]})
        with pytest.raises(SchemaError):
            pair_from_json({"self_intersections": "nope"})
        with pytest.raises(SchemaError):
            pair_from_json({"self_intersections": [1, 1.5, 1]})


class TestSpineFile:
    def test_roundtrip_spine(self, del_pezzo):
        s = tc.family_spine(3, -1, 2, F(5, 4))
        back = spine_from_json(del_pezzo, spine_to_json(s))
        assert back == s

    def test_roundtrip_extended(self, del_pezzo):
        res = tc.extend(del_pezzo, tc.family_spine(2, -1, 1, 1))
        back = spine_from_json(del_pezzo, spine_to_json(res.extended))
        assert back == res.extended
        assert tc.validate_extended_spine(del_pezzo, back) == []

    def test_roundtrip_cylinder_body(self, del_pezzo):
        res = tc.extend(del_pezzo, tc.family_spine(2, 0, 2, 1))
        cyl = tc.cylinder_in_b(del_pezzo, res.extended)
        data = cylinder_to_json(cyl)
        assert data["legs"]
        back = spine_from_json(del_pezzo, data)
        assert back == cyl.tree

    def test_wall_points_canonicalized_on_parse(self, del_pezzo):
        data = {
            "vertices": [
                {"id": "a", "cone": 0, "coords": ["0/1", "2/1"]},
                {"id": "b", "cone": 1, "coords": ["2/1", "1/1"]},
            ],
            "edges": [
                {"tail": "a", "head": "b", "cone": 1,
                 "direction": [0, 1], "length": "1/1"},
            ],
            "boundary": ["a", "b"],
        }
        tree = spine_from_json(del_pezzo, data)
        assert tree.position("a") == del_pezzo.point(1, 2, 0)

    def test_missing_sections(self, del_pezzo):
        with pytest.raises(SchemaError):
            spine_from_json(del_pezzo, {"vertices": [], "edges": []})

    def test_bad_direction(self, del_pezzo):
        data = {
            "vertices": [{"id": "a", "cone": 0, "coords": ["1/1", "1/1"]}],
            "edges": [{"tail": "a", "head": "b", "cone": 0,
                       "direction": [0.5, 1], "length": "unbounded"}],
            "boundary": ["a", "b"],
        }
        with pytest.raises(SchemaError):
            spine_from_json(del_pezzo, data)
