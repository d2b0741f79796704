"""JSON readers and writers for graphs, Hoffman graphs, certificates and constant tables."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

from .errors import SignedGraphError
from .graph import SignedGraph
from .hoffman import HoffmanSignedGraph
from .integrability import IntegrabilityCertificate
from .structure import KappaConfig


class InputError(ValueError):
    """Malformed input file; the message names the file, field and (for JSON syntax) line."""


def read_json(path: str | Path) -> tuple[Any, str]:
    """Parsed JSON and the sha256 of the raw bytes."""
    p = Path(path)
    try:
        raw = p.read_bytes()
    except OSError as exc:
        raise InputError(f"{p}: cannot read file: {exc.strerror}") from exc
    digest = hashlib.sha256(raw).hexdigest()
    try:
        return json.loads(raw.decode("utf-8")), digest
    except UnicodeDecodeError as exc:
        raise InputError(f"{p}: not UTF-8 text") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{p}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{where}: expected an integer, got {value!r}")
    return value


def graph_from_dict(data: Any, source: str = "<graph>") -> SignedGraph:
    if not isinstance(data, dict):
        raise InputError(f"{source}: top level must be an object")
    if "vertices" not in data:
        raise InputError(f"{source}: missing field 'vertices'")
    n = _int(data["vertices"], f"{source}: field 'vertices'")
    if n < 0:
        raise InputError(f"{source}: field 'vertices' must be non-negative")
    edges = data.get("edges", [])
    if not isinstance(edges, list):
        raise InputError(f"{source}: field 'edges' must be a list")
    parsed = []
    for k, e in enumerate(edges):
        where = f"{source}: edges[{k}]"
        if not isinstance(e, list) or len(e) != 3:
            raise InputError(f"{where}: expected [u, v, sign], got {e!r}")
        u, v = _int(e[0], where + "[0]"), _int(e[1], where + "[1]")
        if e[2] not in ("+", "-"):
            raise InputError(f"{where}[2]: sign must be '+' or '-', got {e[2]!r}")
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"{where}: vertex out of range 0..{n - 1}")
        parsed.append((u, v, e[2]))
    try:
        return SignedGraph(range(n), parsed)
    except SignedGraphError as exc:
        raise InputError(f"{source}: {exc}") from exc


def graph_to_dict(G: SignedGraph) -> dict:
    H = G.relabeled()
    return {"vertices": H.order, "edges": [[u, v, str(s)] for u, v, s in H.edges()]}


def hoffman_from_dict(data: Any, source: str = "<hoffman>") -> HoffmanSignedGraph:
    G = graph_from_dict(data, source)
    labels = data.get("labels")
    if not isinstance(labels, list) or len(labels) != G.order:
        raise InputError(f"{source}: field 'labels' must be a list of {G.order} entries 's' or 'f'")
    for k, t in enumerate(labels):
        if t not in ("s", "f"):
            raise InputError(f"{source}: labels[{k}] must be 's' or 'f', got {t!r}")
    try:
        return HoffmanSignedGraph(G, labels)
    except SignedGraphError as exc:
        raise InputError(f"{source}: {exc}") from exc


def hoffman_to_dict(h: HoffmanSignedGraph) -> dict:
    out = graph_to_dict(h.graph)
    out["labels"] = h.label_list()
    return out


def certificate_to_dict(cert: IntegrabilityCertificate) -> dict:
    return {"s": cert.s, "shift": cert.shift, "N": [list(r) for r in cert.N], "target": [list(r) for r in cert.target]}


def certificate_from_dict(data: Any, source: str = "<certificate>") -> IntegrabilityCertificate:
    if not isinstance(data, dict):
        raise InputError(f"{source}: top level must be an object")
    for key in ("s", "shift", "N", "target"):
        if key not in data:
            raise InputError(f"{source}: missing field {key!r}")
    s = _int(data["s"], f"{source}: field 's'")
    shift = _int(data["shift"], f"{source}: field 'shift'")

    def matrix(name):
        M = data[name]
        if not isinstance(M, list) or not all(isinstance(r, list) for r in M):
            raise InputError(f"{source}: field {name!r} must be a list of rows")
        if M and len({len(r) for r in M}) != 1:
            raise InputError(f"{source}: field {name!r} has rows of different lengths")
        return tuple(tuple(_int(x, f"{source}: {name}[{i}][{j}]") for j, x in enumerate(r)) for i, r in enumerate(M))

    return IntegrabilityCertificate(s, shift, matrix("N"), matrix("target"))


def kappa_from_dict(data: Any, source: str = "<kappa>") -> KappaConfig:
    if not isinstance(data, dict):
        raise InputError(f"{source}: top level must be an object")
    try:
        return KappaConfig.from_dict(data)
    except ValueError as exc:
        raise InputError(f"{source}: {exc}") from exc


def load_graph(path) -> tuple[SignedGraph, str]:
    data, digest = read_json(path)
    return graph_from_dict(data, str(path)), digest


def load_hoffman(path) -> tuple[HoffmanSignedGraph, str]:
    data, digest = read_json(path)
    return hoffman_from_dict(data, str(path)), digest


def load_certificate(path) -> tuple[IntegrabilityCertificate, str]:
    data, digest = read_json(path)
    return certificate_from_dict(data, str(path)), digest


def load_kappa(path) -> tuple[KappaConfig, str]:
    data, digest = read_json(path)
    return kappa_from_dict(data, str(path)), digest


def write_json(path, obj) -> None:
    Path(path).write_text(json.dumps(obj, indent=2) + "\n")
