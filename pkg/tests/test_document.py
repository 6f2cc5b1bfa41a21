import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gkmcalc.algebra import Cohomology
from gkmcalc.builtins import BUILTIN_GKM, BUILTIN_GRAPHS, builtin, make_fig3_complex
from gkmcalc.document import (class_from_dict, class_to_dict, complex_from_dict,
                              complex_to_dict, data_file, parse_document, serialize,
                              shipped_files, write_document)
from gkmcalc.errors import GraphError, SchemaError
from gkmcalc.gkm import GKMComplex
from gkmcalc.graphs import OrientedEdge


@pytest.mark.parametrize("name", sorted(BUILTIN_GKM) + sorted(BUILTIN_GRAPHS))
def test_round_trip_builtins(name, tmp_path):
    obj = builtin(name)
    path = tmp_path / f"{name}.json"
    write_document(obj, path)
    assert parse_document(path) == obj


@given(st.tuples(*[st.integers(1, 10)] * 4))
def test_round_trip_fig3_weights(c):
    gc = make_fig3_complex(*c)
    assert complex_from_dict(json.loads(serialize(gc))) == gc


def test_shipped_files():
    assert {"fig3.json", "fig3_8422.json", "triangle_edges_complex.json"} <= set(shipped_files())
    gc = parse_document(data_file("fig3_8422"))
    assert gc == make_fig3_complex(8, 4, 2, 2)
    assert gc.metadata["weights"] == [8, 4, 2, 2]


def _minimal():
    doc = complex_to_dict(builtin("wp-line"))
    return doc


def test_missing_reverse_is_derived():
    doc = _minimal()
    del doc["axial"]["v1->v0"]
    del doc["connection"]["v1->v0"]
    gc = complex_from_dict(doc)
    assert isinstance(gc, GKMComplex)
    back = OrientedEdge("v1", "v0")
    assert gc.alpha(back) == -gc.alpha(OrientedEdge("v0", "v1"))
    assert gc.metadata["derived"] == ["theta[v1->v0]", "v1->v0"]
    assert gc.metadata["reverse_sign"] == -1
    assert gc == builtin("wp-line")


def test_reverse_sign_plus_one():
    doc = _minimal()
    del doc["axial"]["v1->v0"]
    doc["reverse_sign"] = 1
    gc = complex_from_dict(doc)
    assert gc.alpha(OrientedEdge("v1", "v0")) == gc.alpha(OrientedEdge("v0", "v1"))


@pytest.mark.parametrize("mutate,location", [
    (lambda d: d["members"][0]["vertices"].append("ghost"), "/members/0/vertices/2"),
    (lambda d: d["members"][0]["edges"].append(["v0", "ghost"]), "/members/0/edges/1"),
    (lambda d: d["axial"].update({"v0->ghost": {"alpha": ["1"], "r": 1}}), "/axial/v0->ghost"),
    (lambda d: d["axial"]["v0->v1"].update(alpha=["1", "2"]), "/axial/v0->v1/alpha"),
    (lambda d: d["axial"]["v0->v1"].update(alpha=["x"]), "/axial/v0->v1/alpha/0"),
    (lambda d: d["axial"]["v0->v1"].update(r=0), "/axial/v0->v1/r"),
    (lambda d: d.pop("torus_rank"), "/"),
    (lambda d: d.update(extra=1), "/"),
    (lambda d: d["vertices"].append("lonely"), "/vertices"),
])
def test_schema_errors(mutate, location):
    doc = _minimal()
    mutate(doc)
    with pytest.raises(SchemaError) as exc:
        complex_from_dict(doc, "doc.json")
    assert exc.value.location == location
    assert str(exc.value).startswith("doc.json: ")


def test_json_syntax_error_has_line(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{\n  "vertices": [\n}', encoding="utf-8")
    with pytest.raises(SchemaError) as exc:
        parse_document(p)
    assert exc.value.location.startswith("line 3")


def test_semantic_errors_surface():
    doc = complex_to_dict(builtin("fig2"))
    doc["members"][0]["edges"].pop()
    with pytest.raises(GraphError):
        complex_from_dict(doc)


def test_class_files():
    th = Cohomology(2)
    x = class_from_dict({"values": {"v0": "y1", "v1": "y2 - 3*y1^2"}}, th, ["v0", "v1"])
    assert class_from_dict(class_to_dict(x), th, ["v0", "v1"]) == x
    with pytest.raises(SchemaError):
        class_from_dict({"values": {"v0": "y1"}}, th, ["v0", "v1"])
    with pytest.raises(SchemaError):
        class_from_dict({"values": {"v0": "y1", "v1": "w7"}}, th, ["v0", "v1"])
    with pytest.raises(SchemaError):
        class_from_dict({"values": {"v0": "1", "v1": "1", "v9": "1"}}, th, ["v0", "v1"])
