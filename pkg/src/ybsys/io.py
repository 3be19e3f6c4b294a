"""JSON documents: matrices, algebras, quadruples, search configs and reports.

Every document has the four top-level fields ``schema_version``, ``kind``,
``ring`` and ``body``.  Scalars are stored as expression strings in the
declared ring, so files can be read against printed matrices by eye.
"""
from __future__ import annotations

import json
from pathlib import Path

from .algebras import FiniteAlgebra, OperatorQuadruple
from .errors import DocumentError, YBError
from .rings import Ring
from .tensor import ColouredOperator, RingMatrix

__all__ = [
    "SCHEMA_VERSION", "KINDS", "make_document", "read_document", "write_document",
    "dumps", "matrix_to_body", "matrix_from_body", "matrix_document", "algebra_document",
    "algebra_from_document", "quadruple_document", "quadruple_from_document",
    "operator_from_document", "report_document",
]

SCHEMA_VERSION = "1"
KINDS = ("matrix", "algebra", "quadruple", "search_config", "report")
_TOP = {"schema_version", "kind", "ring", "body"}


def _reject_unknown(data: dict, allowed: set, where: str):
    if not isinstance(data, dict):
        raise DocumentError(f"{where} must be an object")
    extra = set(data) - allowed
    if extra:
        raise DocumentError(f"unknown fields in {where}: {sorted(extra)}")


def _require(data: dict, keys, where: str):
    missing = [k for k in keys if k not in data]
    if missing:
        raise DocumentError(f"{where} is missing {missing}")


def make_document(kind: str, ring: Ring, body: dict) -> dict:
    if kind not in KINDS:
        raise DocumentError(f"unknown document kind {kind!r}")
    return {"schema_version": SCHEMA_VERSION, "kind": kind, "ring": ring.to_json(), "body": body}


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def write_document(path, doc: dict) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")


def parse_document(data) -> tuple:
    """Validate the envelope; returns ``(kind, ring, body)``."""
    _reject_unknown(data, _TOP, "document")
    _require(data, sorted(_TOP), "document")
    if data["schema_version"] != SCHEMA_VERSION:
        raise DocumentError(f"unsupported schema_version {data['schema_version']!r}")
    kind = data["kind"]
    if kind not in KINDS:
        raise DocumentError(f"unknown document kind {kind!r}")
    try:
        ring = Ring.from_json(data["ring"])
    except (ValueError, TypeError, YBError) as exc:
        raise DocumentError(f"bad ring descriptor: {exc}") from exc
    if not isinstance(data["body"], dict):
        raise DocumentError("body must be an object")
    return kind, ring, data["body"]


def read_document(path, expect: str | None = None) -> tuple:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON ({exc})") from exc
    kind, ring, body = parse_document(data)
    if expect and kind != expect:
        raise DocumentError(f"{path}: expected a {expect} document, got {kind}")
    return kind, ring, body


# -- matrices -----------------------------------------------------------------

_MATRIX_FIELDS = {"rows", "cols", "entries", "spectral", "name"}


def matrix_to_body(M, name: str | None = None) -> dict:
    spectral = None
    if isinstance(M, ColouredOperator):
        spectral, M = list(M.spectral), M.matrix
    body = {"rows": M.rows, "cols": M.cols, "entries": [str(e) for e in M.entries]}
    if spectral:
        body["spectral"] = spectral
    if name:
        body["name"] = name
    return body


def matrix_from_body(ring: Ring, body: dict, where: str = "matrix"):
    _reject_unknown(body, _MATRIX_FIELDS, where)
    _require(body, ("rows", "cols", "entries"), where)
    rows, cols, entries = body["rows"], body["cols"], body["entries"]
    if not (isinstance(rows, int) and isinstance(cols, int) and rows > 0 and cols > 0):
        raise DocumentError(f"{where}: rows and cols must be positive integers")
    if not isinstance(entries, list) or len(entries) != rows * cols:
        raise DocumentError(f"{where}: expected {rows * cols} entries")
    if not all(isinstance(e, str) for e in entries):
        raise DocumentError(f"{where}: entries must be expression strings")
    M = RingMatrix(ring, rows, cols, [ring(e) for e in entries])
    if "spectral" in body:
        spec = body["spectral"]
        if not (isinstance(spec, list) and len(spec) == 2):
            raise DocumentError(f"{where}: spectral must name two variables")
        return ColouredOperator(M, tuple(spec))
    return M


def matrix_document(M, name: str | None = None) -> dict:
    ring = M.ring if not isinstance(M, ColouredOperator) else M.matrix.ring
    return make_document("matrix", ring, matrix_to_body(M, name))


def operator_from_document(path):
    _, ring, body = read_document(path, "matrix")
    return matrix_from_body(ring, body)


# -- algebras -----------------------------------------------------------------

_ALGEBRA_FIELDS = {"dim", "unit_index", "structure_constants", "basis", "name"}


def algebra_document(alg: FiniteAlgebra) -> dict:
    consts = [[[str(c) for c in row] for row in plane] for plane in alg.constants]
    body = {"dim": alg.dim, "unit_index": alg.unit_index, "structure_constants": consts,
            "basis": list(alg.basis)}
    if alg.name:
        body["name"] = alg.name
    return make_document("algebra", alg.ring, body)


def algebra_from_body(ring: Ring, body: dict) -> FiniteAlgebra:
    _reject_unknown(body, _ALGEBRA_FIELDS, "algebra")
    _require(body, ("dim", "unit_index", "structure_constants"), "algebra")
    consts = body["structure_constants"]
    try:
        parsed = [[[ring(c) for c in row] for row in plane] for plane in consts]
    except TypeError as exc:
        raise DocumentError(f"algebra: structure constants must be strings ({exc})") from exc
    return FiniteAlgebra(body["dim"], parsed, body["unit_index"], ring,
                         tuple(body.get("basis", ())), body.get("name", ""))


def algebra_from_document(path) -> FiniteAlgebra:
    _, ring, body = read_document(path, "algebra")
    return algebra_from_body(ring, body)


# -- quadruples -----------------------------------------------------------------

_QUAD_FIELDS = {"operators", "provenance"}
_OPERATOR_KEYS = ({"A", "B", "C", "D"}, {"W", "X", "Z"})


def quadruple_document(quad: OperatorQuadruple) -> dict:
    ring = quad.A.ring
    ops = {name: matrix_to_body(M) for name, M in zip("ABCD", quad)}
    return make_document("quadruple", ring, {"operators": ops, "provenance": quad.provenance})


def quadruple_from_body(ring: Ring, body: dict) -> dict:
    """Operators by name; either A, B, C, D or W, X, Z."""
    _reject_unknown(body, _QUAD_FIELDS, "quadruple")
    _require(body, ("operators",), "quadruple")
    ops = body["operators"]
    if not isinstance(ops, dict) or set(ops) not in _OPERATOR_KEYS:
        raise DocumentError("quadruple operators must be exactly A, B, C, D or W, X, Z")
    return {name: matrix_from_body(ring, ops[name], f"operator {name}") for name in sorted(ops)}


def quadruple_from_document(path) -> tuple:
    """``(operators, provenance)`` from a quadruple file."""
    _, ring, body = read_document(path, "quadruple")
    return quadruple_from_body(ring, body), body.get("provenance", "user")


def report_document(ring: Ring, body: dict) -> dict:
    return make_document("report", ring, body)
