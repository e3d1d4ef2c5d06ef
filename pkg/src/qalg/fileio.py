"""JSON algebra files and automorphism specifications.

An algebra file is either a quiver presentation::

    {"field": "Q",
     "quiver": {"vertices": ["1"], "arrows": [{"name": "x", "source": "1", "target": "1"}]},
     "relations": [{"terms": [{"coeff": "1", "path": ["x", "x"]}]}],
     "truncate_radical": 3}

or an explicit table (written by ``qalg construct``) with
``structure_constants`` as ``[i, j, k, "c"]`` entries meaning
``b_i b_j`` has coefficient c on ``b_k``, ``unit_idempotents``,
``basis_labels`` and an optional ``grading``.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path as FsPath
from typing import Optional

import jsonschema

from .algebra import (
    Algebra,
    AlgebraMorphism,
    Arrow,
    Presentation,
    Quiver,
    build_algebra,
    extend_from_generators,
    quiver_of,
)
from .errors import NotAutomorphism, QalgError, SchemaError
from .fields import field_from_string, format_scalar, parse_scalar
from .labels import Path, Vertex, label_from_json, label_to_json

_scalar = {"type": "string"}
_term = {
    "type": "object",
    "required": ["coeff", "path"],
    "properties": {"coeff": _scalar, "path": {"type": "array", "items": {"type": "string"}}},
    "additionalProperties": False,
}
SCHEMA = {
    "type": "object",
    "required": ["field"],
    "properties": {
        "field": {"type": "string"},
        "name": {"type": "string"},
        "quiver": {
            "type": "object",
            "required": ["vertices"],
            "properties": {
                "vertices": {"type": "array", "items": {"type": ["string", "integer"]}},
                "arrows": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["name", "source", "target"],
                        "properties": {
                            "name": {"type": "string"},
                            "source": {"type": ["string", "integer"]},
                            "target": {"type": ["string", "integer"]},
                        },
                        "additionalProperties": False,
                    },
                },
            },
            "additionalProperties": False,
        },
        "relations": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["terms"],
                "properties": {"terms": {"type": "array", "items": _term}},
                "additionalProperties": False,
            },
        },
        "truncate_radical": {"type": "integer", "minimum": 2},
        "grading": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "basis_labels": {"type": "array", "items": {"type": "object"}},
        "structure_constants": {
            "type": "array",
            "items": {
                "type": "array",
                "prefixItems": [{"type": "integer"}, {"type": "integer"}, {"type": "integer"}, _scalar],
                "minItems": 4,
                "maxItems": 4,
            },
        },
        "unit_idempotents": {"type": "array", "items": {"type": "integer", "minimum": 0}},
    },
    "additionalProperties": False,
}


def digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def load_json_bytes(data: bytes):
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise SchemaError(f"not valid JSON: {exc}") from None
    return doc


def validate(doc):
    try:
        jsonschema.validate(doc, SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "(top level)"
        raise SchemaError(f"{where}: {exc.message}") from None
    if "structure_constants" not in doc and "quiver" not in doc:
        raise SchemaError("file needs either a quiver or structure_constants")
    if "structure_constants" in doc and ("basis_labels" not in doc or "unit_idempotents" not in doc):
        raise SchemaError("structure_constants need basis_labels and unit_idempotents")


def algebra_from_doc(doc, name: str = "") -> Algebra:
    validate(doc)
    F = field_from_string(doc["field"])
    name = doc.get("name", name)
    if "structure_constants" in doc:
        try:
            labels = [label_from_json(x) for x in doc["basis_labels"]]
        except (ValueError, KeyError, TypeError) as exc:
            raise SchemaError(f"basis_labels: {exc}") from None
        n = len(labels)
        if len(set(labels)) != n:
            raise SchemaError("basis_labels are not unique")
        table = [[{} for _ in range(n)] for _ in range(n)]
        for i, j, k, c in doc["structure_constants"]:
            if not all(0 <= x < n for x in (i, j, k)):
                raise SchemaError(f"structure constant index out of range: {[i, j, k]}")
            s = parse_scalar(c, F)
            if s:
                table[i][j][k] = table[i][j].get(k, F.zero) + s
        for idx in doc["unit_idempotents"]:
            if idx >= n:
                raise SchemaError("unit idempotent index out of range")
        grading = doc.get("grading")
        if grading is not None and len(grading) != n:
            raise SchemaError("grading does not match the basis")
        return Algebra(F, labels, table, doc["unit_idempotents"], grading, name=name)
    q = doc["quiver"]
    quiver = Quiver(
        tuple(str(v) for v in q["vertices"]),
        tuple(Arrow(a["name"], str(a["source"]), str(a["target"])) for a in q.get("arrows", [])),
    )
    rels = []
    for rel in doc.get("relations", []):
        rels.append([(parse_scalar(t["coeff"], F), tuple(t["path"])) for t in rel["terms"]])
    A = build_algebra(Presentation(F, quiver, rels, doc.get("truncate_radical", 3)), name=name)
    if "grading" in doc:
        if len(doc["grading"]) != A.dim:
            raise SchemaError("grading override does not match the basis")
        A = Algebra(F, A.labels, A.table, A.unit_idempotents, doc["grading"], name=name)
    return A


def read_algebra(path: str):
    """(algebra, digest of the raw bytes)."""
    try:
        data = FsPath(path).read_bytes()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from None
    doc = load_json_bytes(data)
    return algebra_from_doc(doc, name=FsPath(path).stem), digest(data)


def algebra_to_doc(A: Algebra) -> dict:
    doc = {"field": str(A.field)}
    if A.name:
        doc["name"] = A.name
    doc["basis_labels"] = [label_to_json(lab) for lab in A.labels]
    doc["unit_idempotents"] = list(A.unit_idempotents)
    if A.is_graded:
        doc["grading"] = list(A.grading)
    doc["structure_constants"] = [
        [i, j, k, format_scalar(c)]
        for i, row in enumerate(A.table)
        for j, entry in enumerate(row)
        for k, c in sorted(entry.items())
        if c
    ]
    return doc


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------- automorphisms

def _terms(A, spec, what):
    F = A.field
    if isinstance(spec, dict):
        spec = [spec]
    if not isinstance(spec, list):
        raise SchemaError(f"image of {what} must be an object or a list of terms")
    v = A.zero_vec()
    for t in spec:
        if not isinstance(t, dict) or len(t) != 2 or "coeff" not in t:
            raise SchemaError(f"bad term in image of {what}: {t!r}")
        key = "arrow" if "arrow" in t else "basis" if "basis" in t else None
        if key is None:
            raise SchemaError(f"term in image of {what} needs 'arrow' or 'basis'")
        target = t[key]
        try:
            idx = A.index(Path((target,)) if key == "arrow" else target)
        except KeyError:
            raise SchemaError(f"unknown {key} {target!r} in image of {what}") from None
        v[idx] = v[idx] + parse_scalar(str(t["coeff"]), F)
    return v


def automorphism_from_spec(A: Algebra, spec) -> AlgebraMorphism:
    """Arrow-level map ``{"vertices": {...}, "arrows": {...}}`` completed
    multiplicatively, or ``{"matrix": rows}`` with column i the image of b_i."""
    if not isinstance(spec, dict):
        raise SchemaError("automorphism must be a JSON object")
    if "matrix" in spec:
        rows = spec["matrix"]
        if not isinstance(rows, list) or len(rows) != A.dim or any(
            not isinstance(r, list) or len(r) != A.dim for r in rows
        ):
            raise SchemaError(f"matrix must be {A.dim} x {A.dim}")
        m = [[parse_scalar(str(x), A.field) for x in r] for r in rows]
        f = AlgebraMorphism.from_matrix(A, A, m)
    else:
        unknown = set(spec) - {"vertices", "arrows"}
        if unknown:
            raise SchemaError(f"unknown automorphism keys {sorted(unknown)}")
        if not A.is_graded:
            raise SchemaError("arrow-level maps need a graded algebra")
        images = {}
        vmap = {str(k): str(v) for k, v in spec.get("vertices", {}).items()}
        for i in A.degree_indices(0):
            lab = A.labels[i]
            if not isinstance(lab, Vertex):
                raise SchemaError("arrow-level maps need vertex idempotents in degree 0")
            try:
                images[i] = A.basis_vec(A.index(Vertex(vmap.get(lab.vertex, lab.vertex))))
            except KeyError:
                raise SchemaError(f"unknown vertex {vmap[lab.vertex]!r}") from None
        amap = spec.get("arrows", {})
        arrows = {str(A.labels[i]): i for i in A.degree_indices(1)}
        for name in amap:
            if name not in arrows:
                raise SchemaError(f"unknown arrow {name!r}")
        for name, i in arrows.items():
            images[i] = _terms(A, amap[name], name) if name in amap else A.basis_vec(i)
        f = extend_from_generators(A, A, images)
    if not f.is_automorphism():
        raise NotAutomorphism("specified map is not an automorphism")
    return f


def load_spec(text: str):
    """A JSON object given inline or as a path to a file."""
    p = FsPath(text)
    if not text.lstrip().startswith("{") and p.exists():
        return load_json_bytes(p.read_bytes())
    return load_json_bytes(text.encode("utf-8"))
