"""The on-disk document formats: JSON with bit-string vectors.

Vectors are written as strings of '0'/'1' where character i is the
coefficient of basis vector i, which keeps files diff-friendly and makes
the index order unambiguous.  Serialization is byte-deterministic:
identical objects render to identical text.
"""

from __future__ import annotations

import json
from typing import Any

from .diagrams import HeegaardDiagram
from .errors import DocumentError
from .forms import BitMatrix, BitVector, HValue, InnerSpace, QuadraticRefinement
from .solver import Transcript, TwistCertificate

_DIAGRAM_FIELDS = {"dimension", "intersection", "form", "a_curves", "b_curves", "metadata"}
_CERTIFICATE_FIELDS = {"epsilon", "twists", "transcript"}


def _expect(condition: bool, message: str):
    if not condition:
        raise DocumentError(message)


def _parse_bit_string(text: Any, length: int, where: str) -> BitVector:
    _expect(isinstance(text, str), f"{where}: expected a bit-string, got {type(text).__name__}")
    _expect(len(text) == length, f"{where}: expected {length} characters, got {len(text)}")
    _expect(not text.strip("01"), f"{where}: characters must be '0' or '1'")
    return BitVector.from_string(text)


def diagram_to_document(diagram: HeegaardDiagram) -> dict:
    d = diagram.dimension
    doc = {
        "dimension": d,
        "intersection": [str(diagram.space.pairing.row(i)) for i in range(d)],
        "form": [v.q for v in diagram.form.basis_values],
        "a_curves": [str(a) for a in diagram.a_curves],
        "b_curves": [str(b) for b in diagram.b_curves],
    }
    if diagram.metadata:
        doc["metadata"] = dict(diagram.metadata)
    return doc


def document_to_diagram(doc: Any) -> HeegaardDiagram:
    _expect(isinstance(doc, dict), "document: expected a JSON object")
    unknown = set(doc) - _DIAGRAM_FIELDS
    _expect(not unknown, f"document: unknown fields {sorted(unknown)}")
    for name in ("dimension", "intersection", "form", "a_curves", "b_curves"):
        _expect(name in doc, f"document: missing field '{name}'")
    d = doc["dimension"]
    _expect(isinstance(d, int) and not isinstance(d, bool) and d >= 1,
            "dimension: expected a positive integer")
    rows = doc["intersection"]
    _expect(isinstance(rows, list) and len(rows) == d,
            f"intersection: expected {d} rows")
    pairing = BitMatrix.from_rows(
        [_parse_bit_string(row, d, f"intersection[{i}]") for i, row in enumerate(rows)]
    )
    space = InnerSpace(d, pairing)
    qs = doc["form"]
    _expect(isinstance(qs, list) and len(qs) == d, f"form: expected {d} values")
    for i, q in enumerate(qs):
        _expect(isinstance(q, int) and not isinstance(q, bool) and q in (0, 1, 2, 3),
                f"form[{i}]: expected an integer in 0..3")
    form = QuadraticRefinement(space, tuple(HValue(q) for q in qs))
    curves = {}
    for name in ("a_curves", "b_curves"):
        entries = doc[name]
        _expect(isinstance(entries, list), f"{name}: expected a list")
        curves[name] = tuple(
            _parse_bit_string(entry, d, f"{name}[{i}]") for i, entry in enumerate(entries)
        )
    _expect(len(curves["a_curves"]) == len(curves["b_curves"]),
            "a_curves/b_curves: systems must have the same length")
    metadata = doc.get("metadata", {})
    _expect(isinstance(metadata, dict), "metadata: expected an object")
    return HeegaardDiagram(space, form, curves["a_curves"], curves["b_curves"], metadata)


def certificate_to_document(certificate: TwistCertificate) -> dict:
    return {
        "epsilon": str(certificate.epsilon),
        "twists": list(certificate.twist_indices),
        "transcript": {
            "b_curves": [v.q for v in certificate.transcript.b_values],
            "a_curves": [v.q for v in certificate.transcript.a_values],
        },
    }


def document_to_certificate(doc: Any) -> TwistCertificate:
    _expect(isinstance(doc, dict), "certificate: expected a JSON object")
    unknown = set(doc) - _CERTIFICATE_FIELDS
    _expect(not unknown, f"certificate: unknown fields {sorted(unknown)}")
    for name in _CERTIFICATE_FIELDS:
        _expect(name in doc, f"certificate: missing field '{name}'")
    raw = doc["epsilon"]
    _expect(isinstance(raw, str) and not raw.strip("01"),
            "epsilon: expected a bit-string")
    epsilon = BitVector.from_string(raw)
    twists = doc["twists"]
    _expect(isinstance(twists, list), "twists: expected a list of indices")
    _expect(tuple(twists) == epsilon.support(),
            "twists: must list exactly the 1-positions of epsilon, ascending")
    transcript = doc["transcript"]
    _expect(isinstance(transcript, dict) and set(transcript) == {"b_curves", "a_curves"},
            "transcript: expected an object with 'b_curves' and 'a_curves'")
    n = epsilon.length
    values = {}
    for name in ("b_curves", "a_curves"):
        entries = transcript[name]
        _expect(isinstance(entries, list) and len(entries) == n,
                f"transcript.{name}: expected {n} values")
        for i, q in enumerate(entries):
            _expect(isinstance(q, int) and not isinstance(q, bool) and q in (0, 1, 2, 3),
                    f"transcript.{name}[{i}]: expected an integer in 0..3")
        values[name] = tuple(HValue(q) for q in entries)
    return TwistCertificate(
        epsilon=epsilon,
        solution_family=(),
        transcript=Transcript(b_values=values["b_curves"], a_values=values["a_curves"]),
    )


def render_document(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def parse_text(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{what}: not valid JSON at line {exc.lineno}: {exc.msg}") from exc


def parse_diagram_text(text: str) -> HeegaardDiagram:
    return document_to_diagram(parse_text(text, "diagram document"))


def parse_certificate_text(text: str) -> TwistCertificate:
    return document_to_certificate(parse_text(text, "certificate document"))


def render_diagram(diagram: HeegaardDiagram) -> str:
    return render_document(diagram_to_document(diagram))


def render_certificate(certificate: TwistCertificate) -> str:
    return render_document(certificate_to_document(certificate))
