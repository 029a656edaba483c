"""JSON encoding of scalars, balls, configurations and packings.

Output is deterministic: keys are sorted and floats carry 17 significant
digits.  Exact scalars are written as ``{"a": [p, q], "b": [p, q]}`` meaning
``p/q + (p/q) sqrt(3)``; a different radicand adds ``"r": n``.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Any

import numpy as np

from .descartes import DescartesConfiguration
from .geometry import Ball
from .graphs import Graph
from .scalar import Surd


def scalar_to_json(x) -> Any:
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return int(x)
        return {"a": [x.numerator, x.denominator], "b": [0, 1]}
    if isinstance(x, Surd):
        if x.is_integer():
            return int(x.a)
        out = {"a": [x.a.numerator, x.a.denominator], "b": [x.b.numerator, x.b.denominator]}
        if x.n != 3:
            out["r"] = x.n
        return out
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, np.integer):
        return int(x)
    raise TypeError(f"cannot encode scalar {x!r}")


def scalar_from_json(v) -> Any:
    if isinstance(v, bool):
        raise ValueError("booleans are not scalars")
    if isinstance(v, (int, float)):
        return v
    if isinstance(v, dict):
        a = Fraction(*v["a"])
        b = Fraction(*v.get("b", [0, 1]))
        if not b:
            return int(a) if a.denominator == 1 else a
        return Surd(a, b, int(v.get("r", 3)))
    raise ValueError(f"bad scalar {v!r}")


def ball_to_json(b: Ball) -> dict:
    if b.is_halfspace:
        return {"kind": "halfspace", "normal": [scalar_to_json(x) for x in b.normal],
                "offset": scalar_to_json(b.offset)}
    return {"kind": "finite", "curvature": scalar_to_json(b.curvature),
            "center": [scalar_to_json(x) for x in b.center]}


def ball_from_json(data: dict) -> Ball:
    kind = data.get("kind")
    if kind == "halfspace":
        return Ball.halfspace([scalar_from_json(x) for x in data["normal"]],
                              scalar_from_json(data["offset"]))
    if kind == "finite":
        return Ball.finite(scalar_from_json(data["curvature"]),
                           [scalar_from_json(x) for x in data["center"]])
    raise ValueError(f"unknown ball kind {kind!r}")


def configuration_to_json(config: DescartesConfiguration) -> dict:
    return {"d": config.d, "balls": [ball_to_json(b) for b in config.balls]}


def configuration_from_json(data: dict) -> DescartesConfiguration:
    return DescartesConfiguration(int(data["d"]), [ball_from_json(b) for b in data["balls"]])


def matrix_to_json(m) -> list:
    return [[scalar_to_json(x) for x in row] for row in np.asarray(m, dtype=object)]


def packing_to_json(p) -> dict:
    out = {"d": p.d, "tolerance": p.tolerance, "balls": [ball_to_json(b) for b in p.balls],
           "graph": p.graph.to_json()}
    if p.meta:
        out["meta"] = jsonable(p.meta)
    return out


def packing_from_json(data: dict, eps: float | None = None):
    """Rebuild and re-validate a packing; the stored graph is ignored in favour of the derived one."""
    from .builder import Packing

    balls = [ball_from_json(b) for b in data["balls"]]
    tol = eps if eps is not None else data.get("tolerance")
    return Packing.of(int(data["d"]), balls, tol, data.get("meta"))


def balls_from_json(data: dict) -> tuple[int, list[Ball]]:
    """Dimension and balls of a packing or configuration document, without validation."""
    balls = [ball_from_json(b) for b in data["balls"]]
    d = int(data.get("d", balls[0].dim if balls else 0))
    return d, balls


def graph_from_text(text: str) -> Graph:
    """Graph JSON, StackProgram JSON, or a plain edge list."""
    from .graphs import StackProgram, graph_of_stack_program

    stripped = text.strip()
    if stripped.startswith("{"):
        data = json.loads(stripped)
        if "stacks" in data:
            return graph_of_stack_program(StackProgram.from_json(data))
        return Graph.from_json(data)
    return Graph.from_edge_list(text)


def jsonable(obj) -> Any:
    """Convert nested values (scalars, tuples, numpy arrays) to JSON-ready ones."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    return scalar_to_json(obj)


def _encode(obj, out: list):
    if isinstance(obj, dict):
        out.append("{")
        for k, key in enumerate(sorted(obj)):
            if k:
                out.append(",")
            out.append(json.dumps(str(key)))
            out.append(":")
            _encode(obj[key], out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for k, v in enumerate(obj):
            if k:
                out.append(",")
            _encode(v, out)
        out.append("]")
    elif isinstance(obj, float):
        if not math.isfinite(obj):
            out.append("null")
        else:
            text = format(obj, ".17g")
            if all(ch not in text for ch in ".en"):
                text += ".0"
            out.append(text)
    else:
        out.append(json.dumps(obj))


def dumps(obj) -> str:
    """Deterministic JSON text for ``obj`` (after :func:`jsonable`)."""
    out: list[str] = []
    _encode(jsonable(obj), out)
    return "".join(out)
