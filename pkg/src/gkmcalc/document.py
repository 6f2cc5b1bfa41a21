"""JSON documents for complexes and classes.

A document lists vertices and member graphs; GKM documents add ``torus_rank``,
an ``axial`` table keyed by ``"src->tgt"`` (exact rational strings plus the
weight ``r``) and a ``connection`` table mapping edge labels to edge labels.
Missing reverse orientations are filled in by the reversal rule
r_e alpha(e) = sign * r_ebar alpha(ebar) with the same weight; the derived
labels are listed under ``metadata["derived"]``.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

import jsonschema

from .algebra.rational import RationalVector
from .algebra.theory import Theory
from .cohomology import CohomologyClass
from .errors import SchemaError
from .gkm import GKMComplex, make_gkm_complex
from .graphs import OrientedEdge, SimplicialGraphComplex, build_graph, validate_complex

DATA = resources.files("gkmcalc") / "data"


@lru_cache(maxsize=1)
def schema() -> dict:
    return json.loads((DATA / "complex.schema.json").read_text(encoding="utf-8"))


def data_file(name: str) -> Path:
    """Path of a shipped data file (``.json`` may be omitted)."""
    for cand in (name, name + ".json"):
        p = DATA / cand
        if p.is_file():
            return Path(str(p))
    raise FileNotFoundError(name)


def shipped_files() -> list[str]:
    return sorted(p.name for p in DATA.iterdir()
                  if p.name.endswith(".json") and not p.name.endswith(".schema.json"))


def _load_json(path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise SchemaError(path, "-", f"not UTF-8: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(path, f"line {exc.lineno}, column {exc.colno}", exc.msg) from None


def _pointer(parts) -> str:
    return "/" + "/".join(str(p) for p in parts)


def check_schema(doc: Any, path="<document>"):
    v = jsonschema.Draft202012Validator(schema())
    errors = sorted(v.iter_errors(doc), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        err = errors[0]
        raise SchemaError(path, _pointer(err.absolute_path), err.message)


def _edge(path, where, label, vertices) -> OrientedEdge:
    e = OrientedEdge.parse(label)
    for v in (e.source, e.target):
        if v not in vertices:
            raise SchemaError(path, where, f"undeclared vertex {v!r} in {label!r}")
    return e


def complex_from_dict(doc: Mapping, path="<document>") -> SimplicialGraphComplex | GKMComplex:
    """Build the object described by a (parsed) document.

    Returns a :class:`GKMComplex` if the document carries axial data and a plain
    :class:`SimplicialGraphComplex` otherwise."""
    check_schema(doc, path)
    vertices = list(doc["vertices"])
    vset = set(vertices)
    members = []
    for i, m in enumerate(doc["members"]):
        for k, v in enumerate(m["vertices"]):
            if v not in vset:
                raise SchemaError(path, f"/members/{i}/vertices/{k}", f"undeclared vertex {v!r}")
        for k, pair in enumerate(m["edges"]):
            for v in pair:
                if v not in m["vertices"]:
                    raise SchemaError(path, f"/members/{i}/edges/{k}",
                                      f"endpoint {v!r} is not a vertex of member {m['name']!r}")
        members.append(build_graph(m["name"], m["vertices"], m["edges"]))
    c = validate_complex(members)
    missing = vset - set(c.vertices)
    if missing:
        raise SchemaError(path, "/vertices", f"vertices in no member: {sorted(missing)}")
    if "axial" not in doc:
        if "connection" in doc:
            raise SchemaError(path, "/connection", "a connection needs an axial table")
        return c

    rank = doc["torus_rank"]
    sign = doc.get("reverse_sign", -1)
    edges = c.edges
    alpha, r = {}, {}
    for label, entry in doc["axial"].items():
        where = f"/axial/{label}"
        e = _edge(path, where, label, vset)
        if e.undirected not in edges:
            raise SchemaError(path, where, f"{label} is not an edge of the complex")
        if len(entry["alpha"]) != rank:
            raise SchemaError(path, where + "/alpha",
                              f"{len(entry['alpha'])} components, torus rank is {rank}")
        try:
            alpha[e] = RationalVector.parse(entry["alpha"])
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(path, where + "/alpha", str(exc)) from None
        r[e] = entry["r"]
    derived = []
    for e in list(alpha):
        eb = e.reversed()
        if eb not in alpha:
            alpha[eb] = alpha[e].scaled(sign)
            r[eb] = r[e]
            derived.append(eb.label)

    theta: dict[OrientedEdge, dict[OrientedEdge, OrientedEdge]] = {}
    for label, mapping in doc.get("connection", {}).items():
        where = f"/connection/{label}"
        e = _edge(path, where, label, vset)
        if e.undirected not in edges:
            raise SchemaError(path, where, f"{label} is not an edge of the complex")
        theta[e] = {_edge(path, f"{where}/{k}", k, vset): _edge(path, f"{where}/{k}", v, vset)
                    for k, v in mapping.items()}
    for e in list(theta):
        eb = e.reversed()
        if eb not in theta:
            theta[eb] = {v: k for k, v in theta[e].items()}
            derived.append(f"theta[{eb.label}]")

    meta = dict(doc.get("metadata", {}))
    if derived:
        meta["derived"] = sorted(derived)
        meta["reverse_sign"] = sign
    return make_gkm_complex(c, rank, alpha, r, theta, meta)


def parse_document(path) -> SimplicialGraphComplex | GKMComplex:
    """Read and validate a complex document from ``path``."""
    return complex_from_dict(_load_json(path), str(path))


def complex_to_dict(obj: SimplicialGraphComplex | GKMComplex, name: str | None = None) -> dict:
    """Serialize a complex (both orientations of every edge are written)."""
    gc = obj if isinstance(obj, GKMComplex) else None
    c = gc.complex if gc else obj
    doc: dict[str, Any] = {}
    if name:
        doc["name"] = name
    if gc:
        doc["torus_rank"] = gc.torus_rank
    doc["vertices"] = list(c.vertices)
    doc["members"] = [{"name": m.name, "vertices": list(m.vertices),
                       "edges": [list(e) for e in sorted(m.edges)]} for m in c.members]
    if gc:
        edges = sorted(gc.oriented_edges())
        doc["axial"] = {e.label: {"alpha": gc.alpha(e).to_strings(), "r": gc.r(e)}
                        for e in edges if e in gc.axial.values}
        doc["connection"] = {e.label: {k.label: v.label for k, v in sorted(m.items())}
                             for e in edges if (m := gc.connection.theta(e))}
        meta = {k: v for k, v in gc.metadata.items() if k not in ("derived", "reverse_sign")}
        if meta:
            doc["metadata"] = meta
    return doc


def serialize(obj, name: str | None = None) -> str:
    return json.dumps(complex_to_dict(obj, name), indent=2) + "\n"


def write_document(obj, path, name: str | None = None):
    Path(path).write_text(serialize(obj, name), encoding="utf-8")


# class files: {"values": {"v0": "y1 - y2", ...}}

def class_from_dict(doc: Any, theory: Theory, vertices, path="<class>") -> CohomologyClass:
    if not isinstance(doc, Mapping) or not isinstance(doc.get("values"), Mapping):
        raise SchemaError(path, "/values", "expected an object mapping vertices to elements")
    values = doc["values"]
    unknown = set(values) - set(vertices)
    if unknown:
        raise SchemaError(path, "/values", f"undeclared vertices {sorted(unknown)}")
    out = {}
    for v in vertices:
        if v not in values:
            raise SchemaError(path, f"/values/{v}", "missing value")
        text = values[v]
        try:
            out[v] = theory.parse(str(text))
        except ValueError as exc:
            raise SchemaError(path, f"/values/{v}", str(exc)) from None
    return CohomologyClass(theory, out)


def parse_class(path, theory: Theory, vertices) -> CohomologyClass:
    return class_from_dict(_load_json(path), theory, vertices, str(path))


def class_to_dict(x: CohomologyClass) -> dict:
    return {"theory": x.theory.label, "values": {v: val.render() for v, val in x.items()}}
