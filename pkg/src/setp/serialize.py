"""Instance file format: versioned JSON documents ("setp/1").

Three kinds are supported: original, simplified and tsp, plus the vertex-map
sidecar written by `reduce`. Numbers round-trip losslessly (shortest-repr
JSON floats).
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .core import OriginalInstance, SimplifiedInstance
from .transforms import TspInstance, VertexMap

FORMAT = "setp/1"


class FormatError(ValueError):
    """Raised for documents that do not parse as a setp/1 instance."""


def to_document(obj) -> dict[str, Any]:
    if isinstance(obj, OriginalInstance):
        return {
            "format": FORMAT,
            "kind": "original",
            "vertices": list(obj.vertices),
            "edges": [list(e) for e in obj.edges],
            "dist": list(obj.dist),
            "depot": obj.depot,
            "required": list(obj.required),
            "prob": list(obj.prob),
        }
    if isinstance(obj, SimplifiedInstance):
        return {
            "format": FORMAT,
            "kind": "simplified",
            "D": obj.D.tolist(),
            "R": [list(e) for e in obj.R],
            "p": obj.p.tolist(),
        }
    if isinstance(obj, TspInstance):
        return {"format": FORMAT, "kind": "tsp", "C": obj.C.tolist()}
    raise TypeError("cannot serialize %r" % type(obj))


def from_document(doc: dict[str, Any]):
    if not isinstance(doc, dict) or doc.get("format") != FORMAT:
        raise FormatError("not a %s document" % FORMAT)
    kind = doc.get("kind")
    try:
        if kind == "original":
            return OriginalInstance(
                vertices=tuple(int(v) for v in doc["vertices"]),
                edges=tuple((int(u), int(v)) for u, v in doc["edges"]),
                dist=tuple(float(d) for d in doc["dist"]),
                depot=int(doc["depot"]),
                required=tuple(int(e) for e in doc["required"]),
                prob=tuple(float(q) for q in doc["prob"]),
            )
        if kind == "simplified":
            return SimplifiedInstance(
                D=np.asarray(doc["D"], dtype=float),
                R=tuple((int(u), int(v)) for u, v in doc["R"]),
                p=np.asarray(doc["p"], dtype=float),
            )
        if kind == "tsp":
            return TspInstance(np.asarray(doc["C"], dtype=float))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError("malformed %s document: %s" % (kind, exc)) from exc
    raise FormatError("unknown kind %r" % kind)


def dumps(obj) -> str:
    return json.dumps(to_document(obj), indent=1) + "\n"


def save(obj, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(obj))


def load(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError("invalid JSON: %s" % exc) from exc
    return from_document(doc)


def save_vertex_map(vmap: VertexMap, path) -> None:
    doc = {"format": FORMAT, "kind": "vertex_map", "map": {str(k): int(v) for k, v in vmap.items()}}
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def load_vertex_map(path) -> VertexMap:
    with open(path) as fh:
        doc = json.load(fh)
    if doc.get("format") != FORMAT or doc.get("kind") != "vertex_map":
        raise FormatError("not a %s vertex_map document" % FORMAT)
    return {int(k): int(v) for k, v in doc["map"].items()}
