"""Fixture files: a JSON document holding an algebra, named elements, and
named operators.

Serialization writes every float with 17 significant digits, which is
enough for bit-exact round trips of IEEE doubles. Parsing reports the
line/column of JSON syntax errors and a dotted field path for semantic
ones (wrong length, unknown kind, bad types).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .algebra import (AlgebraDescriptor, Element, VOperator, direct_sum,
                      herm_complex, spin_factor, sym_real)
from .errors import ParseError

_SIMPLE = {"sym": sym_real, "herm": herm_complex, "spin": spin_factor}


@dataclass(frozen=True)
class Fixture:
    algebra: AlgebraDescriptor
    elements: dict[str, Element] = field(default_factory=dict)
    operators: dict[str, VOperator] = field(default_factory=dict)
    seed: int = 0


def parse_algebra_label(label: str) -> AlgebraDescriptor:
    """Parse "sym:3", "herm:2", "spin:4", or sums like "sym:2+sym:3"."""
    parts = []
    for piece in label.split("+"):
        piece = piece.strip()
        kind, _, size = piece.partition(":")
        if kind not in _SIMPLE or not size:
            raise ParseError(f"bad algebra label {piece!r}; "
                             f"expected kind:n with kind in {sorted(_SIMPLE)}")
        try:
            n = int(size)
        except ValueError:
            raise ParseError(f"bad size in algebra label {piece!r}") from None
        if n < 1:
            raise ParseError(f"algebra size must be positive in {piece!r}")
        parts.append(_SIMPLE[kind](n))
    if len(parts) == 1:
        return parts[0]
    return direct_sum(*parts)


def _algebra_to_obj(alg: AlgebraDescriptor) -> dict:
    if alg.kind == "sum":
        return {"kind": "sum", "summands": [_algebra_to_obj(s) for s in alg.summands]}
    return {"kind": alg.kind, "n": alg.n}


def _algebra_from_obj(obj, path: str) -> AlgebraDescriptor:
    if not isinstance(obj, dict):
        raise ParseError("algebra must be an object", path=path)
    kind = obj.get("kind")
    if kind == "sum":
        summands = obj.get("summands")
        if not isinstance(summands, list) or not summands:
            raise ParseError("sum algebra needs a nonempty summands list",
                             path=f"{path}.summands")
        parts = [_algebra_from_obj(s, f"{path}.summands[{i}]")
                 for i, s in enumerate(summands)]
        if any(p.kind == "sum" for p in parts):
            raise ParseError("summands must be simple algebras",
                             path=f"{path}.summands")
        return direct_sum(*parts)
    if kind not in _SIMPLE:
        raise ParseError(f"unknown algebra kind {kind!r}", path=f"{path}.kind")
    n = obj.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError("algebra size n must be a positive integer",
                         path=f"{path}.n")
    return _SIMPLE[kind](n)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def serialize_fixture(f: Fixture) -> str:
    """Canonical JSON text; floats carry 17 significant digits."""
    lines = ["{"]
    lines.append(f'  "algebra": {json.dumps(_algebra_to_obj(f.algebra), sort_keys=True)},')
    el_items = []
    for name in sorted(f.elements):
        coords = ", ".join(_fmt(c) for c in f.elements[name].coords)
        el_items.append(f'    "{name}": [{coords}]')
    lines.append('  "elements": {' + ("\n" + ",\n".join(el_items) + "\n  " if el_items else "") + "},")
    op_items = []
    for name in sorted(f.operators):
        rows = ",\n      ".join(
            "[" + ", ".join(_fmt(v) for v in row) + "]"
            for row in f.operators[name].matrix)
        op_items.append(f'    "{name}": [\n      {rows}\n    ]')
    lines.append('  "operators": {' + ("\n" + ",\n".join(op_items) + "\n  " if op_items else "") + "},")
    lines.append(f'  "seed": {int(f.seed)}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_fixture(text: str) -> Fixture:
    """Parse fixture JSON; raises ParseError with position or field path."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno, column=e.colno) from None
    if not isinstance(obj, dict):
        raise ParseError("fixture must be a JSON object", path="$")
    if "algebra" not in obj:
        raise ParseError("missing algebra", path="$.algebra")
    alg = _algebra_from_obj(obj["algebra"], "$.algebra")
    elements: dict[str, Element] = {}
    for name, coords in (obj.get("elements") or {}).items():
        path = f"$.elements.{name}"
        arr = _number_list(coords, path)
        if arr.shape != (alg.dim,):
            raise ParseError(
                f"element {name!r} has {arr.size} coordinates, "
                f"algebra {alg.label()} needs {alg.dim}", path=path)
        elements[name] = Element(alg, arr)
    operators: dict[str, VOperator] = {}
    for name, rows in (obj.get("operators") or {}).items():
        path = f"$.operators.{name}"
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise ParseError(f"operator {name!r} must be a list of rows", path=path)
        mat = np.array([_number_list(r, f"{path}[{i}]") for i, r in enumerate(rows)])
        if mat.shape != (alg.dim, alg.dim):
            raise ParseError(
                f"operator {name!r} has shape {mat.shape}, "
                f"algebra {alg.label()} needs {alg.dim}x{alg.dim}", path=path)
        operators[name] = VOperator(alg, mat)
    seed = obj.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
        raise ParseError("seed must be a non-negative integer", path="$.seed")
    return Fixture(alg, elements, operators, seed)


def _number_list(values, path: str) -> np.ndarray:
    if not isinstance(values, list):
        raise ParseError("expected a list of numbers", path=path)
    out = np.empty(len(values))
    for i, v in enumerate(values):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ParseError(f"entry {i} is not a number", path=f"{path}[{i}]")
        out[i] = float(v)
    return out
