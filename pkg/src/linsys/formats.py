"""Canonical JSON encodings for instance, certificate and report files.

All files are UTF-8, LF-terminated, keys sorted, two-space indent.
Instance files list points sorted by label and lines as sorted label lists
in sorted order, so emitting a parsed canonical file reproduces it byte for
byte.

Instance file (format_version 1)::

    {"format_version": 1, "lines": [["a", "b"], ...], "metadata": {...}, "points": ["a", ...]}

Certificate file (format_version 1)::

    {"format_version": 1, "instance_digest": "sha256:...", "kind": "tau" | "nu2",
     "nodes_explored": int, "optimal": bool, "value": int,
     "witness": [point labels] | [[line labels], ...]}

NU2 witnesses name lines by their point labels, which identify a line
uniquely in a linear system with no duplicate lines.
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

from .core import LinearSystem, validate
from .errors import ValidationError
from .solvers import Certificate, Kind

FORMAT_VERSION = 1


class FormatError(ValidationError):
    """A file does not follow the documented schema."""


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_text(path: str | Path, text: str) -> None:
    Path(path).write_bytes(text.encode("utf-8"))


def instance_dict(ls: LinearSystem, metadata: dict | None = None) -> dict:
    pts, lines = ls.canonical_form()
    return {"format_version": FORMAT_VERSION, "points": pts, "lines": lines,
            "metadata": dict(metadata or {})}


def emit_instance(ls: LinearSystem, metadata: dict | None = None) -> str:
    return dumps(instance_dict(ls, metadata))


def parse_instance(text: str) -> tuple[LinearSystem, dict]:
    """Parse and validate an instance file; returns the system and its metadata."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise FormatError("instance file must hold a JSON object")
    if obj.get("format_version") != FORMAT_VERSION:
        raise FormatError(f"unsupported format_version {obj.get('format_version')!r}")
    points, lines = obj.get("points"), obj.get("lines")
    if not isinstance(points, list) or not all(isinstance(p, str) for p in points):
        raise FormatError("'points' must be a list of strings")
    if not isinstance(lines, list) or not all(
            isinstance(l, list) and all(isinstance(p, str) for p in l) for l in lines):
        raise FormatError("'lines' must be a list of lists of strings")
    metadata = obj.get("metadata", {})
    if not isinstance(metadata, dict):
        raise FormatError("'metadata' must be an object")
    return validate(points, lines), metadata


def read_instance(path: str | Path) -> tuple[LinearSystem, dict]:
    return parse_instance(Path(path).read_text(encoding="utf-8"))


def instance_digest(ls: LinearSystem) -> str:
    """SHA-256 of the compact canonical encoding of points and lines (no metadata)."""
    pts, lines = ls.canonical_form()
    blob = json.dumps({"lines": lines, "points": pts}, sort_keys=True,
                      separators=(",", ":"), ensure_ascii=False)
    return "sha256:" + hashlib.sha256(blob.encode("utf-8")).hexdigest()


def certificate_dict(ls: LinearSystem, cert: Certificate) -> dict:
    if cert.kind is Kind.TAU:
        witness = sorted(ls.points[x] for x in cert.witness)
    else:
        witness = sorted(ls.line_labels(j) for j in cert.witness)
    return {
        "format_version": FORMAT_VERSION,
        "instance_digest": instance_digest(ls),
        "kind": cert.kind.value,
        "value": cert.value,
        "witness": witness,
        "optimal": cert.optimal,
        "nodes_explored": cert.nodes_explored,
    }


def emit_certificate(ls: LinearSystem, cert: Certificate) -> str:
    return dumps(certificate_dict(ls, cert))


def parse_certificate(text: str, ls: LinearSystem) -> Certificate:
    """Rebuild a certificate against ``ls``; the digest must match."""
    try:
        obj = json.loads(text)
        kind = Kind(obj["kind"])
        digest = obj["instance_digest"]
        value = int(obj["value"])
        witness = obj["witness"]
        optimal = bool(obj["optimal"])
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad certificate file: {exc}") from None
    if digest != instance_digest(ls):
        raise FormatError("certificate digest does not match the instance")
    if kind is Kind.TAU:
        idx = tuple(sorted(ls.point_index(p) for p in witness))
    else:
        by_labels = {frozenset(ls.line_labels(j)): j for j in range(ls.num_lines)}
        try:
            idx = tuple(sorted(by_labels[frozenset(l)] for l in witness))
        except KeyError:
            raise FormatError("certificate names a line absent from the instance") from None
    return Certificate(kind, value, idx, optimal, int(obj.get("nodes_explored", 0)))


def emit_report(report) -> str:
    return dumps(report.to_dict())
