import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gkmforge import ingest
from gkmforge.ingest import IngestError, from_document, to_document
from gkmforge.lattice import DualGroup, TorsionPoint

S1 = DualGroup(1)


def doc(kind, **body):
    return {"schema": ingest.SCHEMA, "kind": kind, **body}


def raises_at(d, pointer):
    with pytest.raises(IngestError) as exc:
        from_document(d)
    assert exc.value.pointer == pointer, str(exc.value)


def test_round_trip_every_bundled_example():
    for name, (kind, value, group) in ingest.example_models().items():
        d = to_document(kind, value, group)
        d2 = json.loads(ingest.dumps(d))
        k2, v2 = from_document(d2)
        assert k2 == kind
        assert to_document(k2, v2, group) == d, name


def test_error_pointers():
    raises_at({"kind": "graph"}, "/schema")
    raises_at(doc("graph"), "/")
    raises_at(doc("point", group={"free_rank": 1}, coords=["1/x"]), "/coords/0")
    raises_at(doc("graph", group={"free_rank": 1}, vertices=["N", "S"],
                  edges=[{"u": "N", "v": "S", "w": [0]}]), "/edges/0")
    raises_at(doc("cover", group={"free_rank": 1}, balls=[{"center": {"coords": ["0"]}, "radius": "1/2"}]),
              "/balls/0/radius")
    raises_at(doc("fan", dim=2, rays=[[1, 0]], max_cones=[[0, 3]]), "/max_cones/0/1")
    raises_at(doc("nonsense", group={"free_rank": 1}), "/kind")


def test_rationals_must_be_strings():
    with pytest.raises(IngestError):
        ingest.parse_rational(0.5, "/x")
    assert ingest.parse_rational("3/6", "/x") == Fraction(1, 2)
    assert ingest.parse_rational(2, "/x") == 2


def test_invalid_json_file(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(IngestError, match="invalid JSON"):
        ingest.load_document(p)
    with pytest.raises(IngestError, match="cannot read"):
        ingest.load_document(tmp_path / "missing.json")


def test_fans_give_bundled_graphs():
    assert ingest.graphs_isomorphic(ingest.fan_to_graph(ingest.fan_cp1()), ingest.cp1_graph())
    assert ingest.graphs_isomorphic(ingest.fan_to_graph(ingest.fan_cp2()), ingest.cp2_graph())
    assert ingest.graphs_isomorphic(ingest.fan_to_graph(ingest.fan_cp1xcp1()), ingest.cp1xcp1_graph())


def test_bad_fans():
    with pytest.raises(ingest.FanError):
        ingest.fan_to_graph(ingest.Fan(2, ((1, 0), (1, 2), (-1, -1)), ((0, 1), (1, 2), (2, 0))))
    with pytest.raises(ingest.FanError):
        ingest.fan_to_graph(ingest.Fan(2, ((1, 0), (0, 1), (-1, -1)), ((0, 1), (1, 2))))
    with pytest.raises(ingest.FanError):
        ingest.fan_to_graph(ingest.Fan(1, ((2,), (-1,)), ((0,), (1,))))


def test_save_and_load(tmp_path):
    p = tmp_path / "m.json"
    ingest.save(p, to_document("model", ingest.s1_zn_model(3), S1))
    M = ingest.load_model(p)
    assert len(M.centers) == len(ingest.s1_zn_samples(3))


@given(st.lists(st.fractions(0, 1, max_denominator=30).filter(lambda x: x < 1), min_size=1, max_size=5, unique=True))
def test_points_round_trip(xs):
    pts = [TorsionPoint.of(S1, x) for x in xs]
    assert from_document(json.loads(ingest.dumps(to_document("points", pts, S1))))[1] == pts
