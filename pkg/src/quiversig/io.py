"""JSON serialization with a canonical byte form.

Canonical form: two-space indent, object keys sorted, floats printed with 17
significant digits (enough to round-trip doubles exactly). Loading a
canonically saved file and saving it again reproduces the bytes.

Filter paths are serialized tail-first, in application order: the list
["a35", "a51"] is the path that applies a35 first, then a51. Classical
right-to-left notation writes the same path as "a51 a35".
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path as FsPath

import numpy as np

from .algebra import FilterElement
from .errors import ValidationError
from .quiver import Quiver
from .representation import QuiverSignal, Representation
from .tda import FilteredComplex

__all__ = [
    "canonical_json",
    "load_json",
    "save_json",
    "quiver_to_dict",
    "quiver_from_dict",
    "matrix_to_dict",
    "matrix_from_dict",
    "representation_to_dict",
    "representation_from_dict",
    "signal_to_dict",
    "signal_from_dict",
    "filter_to_dict",
    "filter_from_dict",
    "complex_to_dict",
    "complex_from_dict",
    "barcode_to_dict",
    "intertwiner_to_dict",
    "Workspace",
]


def _format_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValidationError(f"cannot serialize non-finite float {x!r}")
    s = format(float(x), ".17g")
    if not any(c in s for c in ".eE"):
        s += ".0"
    return s


def _emit(obj, indent: int, out: list[str]) -> None:
    pad = "  " * indent
    if obj is None:
        out.append("null")
    elif isinstance(obj, (bool, np.bool_)):
        out.append("true" if obj else "false")
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(_format_float(float(obj)))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        keys = sorted(obj)
        for i, key in enumerate(keys):
            if not isinstance(key, str):
                raise ValidationError(f"JSON object keys must be strings, got {key!r}")
            out.append(f"{pad}  {json.dumps(key)}: ")
            _emit(obj[key], indent + 1, out)
            out.append(",\n" if i + 1 < len(keys) else "\n")
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        if not len(obj):
            out.append("[]")
            return
        out.append("[\n")
        for i, item in enumerate(obj):
            out.append(pad + "  ")
            _emit(item, indent + 1, out)
            out.append(",\n" if i + 1 < len(obj) else "\n")
        out.append(pad + "]")
    elif isinstance(obj, np.ndarray):
        _emit(obj.tolist(), indent, out)
    else:
        raise ValidationError(f"cannot serialize value of type {type(obj).__name__}")


def canonical_json(obj) -> str:
    """Deterministic JSON text for ``obj`` (no trailing newline)."""
    out: list[str] = []
    _emit(obj, 0, out)
    return "".join(out)


def load_json(path) -> dict:
    path = FsPath(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read '{path}': {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(
            f"'{path}' is not valid JSON: {exc.msg} at line {exc.lineno}, column {exc.colno}"
        ) from exc
    if not isinstance(data, dict):
        raise ValidationError(f"'{path}' must contain a JSON object at the top level")
    return data


def save_json(path, obj) -> None:
    FsPath(path).write_text(canonical_json(obj) + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# per-type converters

def quiver_to_dict(quiver: Quiver) -> dict:
    return {
        "nodes": list(quiver.nodes),
        "arrows": [{"id": a.id, "tail": a.tail, "head": a.head} for a in quiver.arrows],
    }


def quiver_from_dict(data: dict) -> Quiver:
    try:
        nodes = data["nodes"]
        arrows = data["arrows"]
    except KeyError as missing:
        raise ValidationError(f"quiver JSON is missing key {missing}") from None
    specs = []
    for entry in arrows:
        try:
            specs.append((entry["id"], entry["tail"], entry["head"]))
        except (TypeError, KeyError):
            raise ValidationError(f"arrow entry {entry!r} needs keys id, tail, head") from None
    return Quiver(nodes, specs)


def matrix_to_dict(matrix: np.ndarray) -> dict:
    m = np.asarray(matrix, dtype=np.float64)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "data": [float(x) for x in m.reshape(-1)],
    }


def matrix_from_dict(data: dict, context: str = "matrix") -> np.ndarray:
    try:
        rows, cols, flat = int(data["rows"]), int(data["cols"]), data["data"]
    except (TypeError, KeyError):
        raise ValidationError(f"{context} needs keys rows, cols, data") from None
    if len(flat) != rows * cols:
        raise ValidationError(
            f"{context} has {len(flat)} entries, expected {rows}*{cols}={rows * cols}"
        )
    return np.array([float(x) for x in flat], dtype=np.float64).reshape((rows, cols))


def representation_to_dict(rep: Representation) -> dict:
    return {
        "dims": {n: d for n, d in rep.dims.items()},
        "maps": {aid: matrix_to_dict(m) for aid, m in rep.maps.items()},
    }


def representation_from_dict(data: dict, quiver: Quiver) -> Representation:
    try:
        dims = data["dims"]
        maps = data["maps"]
    except KeyError as missing:
        raise ValidationError(f"representation JSON is missing key {missing}") from None
    parsed = {aid: matrix_from_dict(entry, context=f"matrix for arrow '{aid}'")
              for aid, entry in maps.items()}
    return Representation(quiver, {str(k): int(v) for k, v in dims.items()}, parsed)


def signal_to_dict(signal: QuiverSignal) -> dict:
    return {"blocks": {n: [float(x) for x in v] for n, v in signal.blocks.items()}}


def signal_from_dict(data: dict, rep: Representation) -> QuiverSignal:
    try:
        blocks = data["blocks"]
    except KeyError as missing:
        raise ValidationError(f"signal JSON is missing key {missing}") from None
    return QuiverSignal(rep, {str(k): np.asarray(v, dtype=np.float64) for k, v in blocks.items()})


def filter_to_dict(element: FilterElement) -> dict:
    terms = []
    for path, coeff in element.sorted_terms():
        entry = {"coeff": float(coeff), "path": list(path.arrow_ids)}
        if path.is_trivial:
            entry["base"] = path.base
        terms.append(entry)
    return {"terms": terms}


def filter_from_dict(data: dict, quiver: Quiver) -> FilterElement:
    try:
        entries = data["terms"]
    except KeyError as missing:
        raise ValidationError(f"filter JSON is missing key {missing}") from None
    pairs = []
    for entry in entries:
        try:
            coeff = float(entry["coeff"])
            ids = entry["path"]
        except (TypeError, KeyError):
            raise ValidationError(f"filter term {entry!r} needs keys coeff, path") from None
        path = quiver.path(ids, base=entry.get("base"))
        pairs.append((path, coeff))
    return FilterElement(quiver, pairs)


def complex_to_dict(complex_: FilteredComplex) -> dict:
    return {
        "n": complex_.n,
        "simplices": [{"verts": list(s.verts), "level": s.level} for s in complex_.simplices],
    }


def complex_from_dict(data: dict) -> FilteredComplex:
    try:
        simplices = data["simplices"]
    except KeyError as missing:
        raise ValidationError(f"complex JSON is missing key {missing}") from None
    return FilteredComplex(simplices, n=data.get("n"))


def barcode_to_dict(barcode) -> dict:
    return {
        "n": barcode.n,
        "nodes": list(barcode.nodes),
        "bars": [
            {"start": a, "end": b, "multiplicity": m}
            for (a, b), m in barcode.bars()
        ],
    }


def intertwiner_to_dict(intertwiner) -> dict:
    return {"blocks": {n: matrix_to_dict(b) for n, b in intertwiner.blocks.items()}}


# ---------------------------------------------------------------------------
# workspace

@dataclass
class Workspace:
    """Cross-validated bundle of loaded artifacts plus the run seed."""

    quiver: Quiver | None = None
    rep: Representation | None = None
    signal: QuiverSignal | None = None
    filter: FilterElement | None = None
    complex: FilteredComplex | None = None
    seed: int | None = None

    @classmethod
    def load(cls, quiver_path=None, rep_path=None, signal_path=None,
             filter_path=None, complex_path=None, seed=None) -> "Workspace":
        ws = cls(seed=seed)
        if quiver_path is not None:
            ws.quiver = quiver_from_dict(load_json(quiver_path))
        if rep_path is not None:
            if ws.quiver is None:
                raise ValidationError("a representation file needs a quiver file")
            ws.rep = representation_from_dict(load_json(rep_path), ws.quiver)
        if signal_path is not None:
            if ws.rep is None:
                raise ValidationError("a signal file needs a representation file")
            ws.signal = signal_from_dict(load_json(signal_path), ws.rep)
        if filter_path is not None:
            if ws.quiver is None:
                raise ValidationError("a filter file needs a quiver file")
            ws.filter = filter_from_dict(load_json(filter_path), ws.quiver)
        if complex_path is not None:
            ws.complex = complex_from_dict(load_json(complex_path))
        return ws
