"""JSON file formats, reports and DOT emission.

Algebra file::

    {"name": "C3", "signature": [{"op": "meet", "arity": 2}], "size": 3,
     "tables": {"meet": [[0, 0, 0], [0, 1, 1], [0, 1, 2]]}}

n-ary tables are nested row-major arrays, 0-ary tables a bare index.
Class file: ``{"name": "K2", "members": ["C2"]}`` or a bare list of algebra
names (the class is then named after the file stem).
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .algebra import FiniteAlgebra, Signature
from .closure import to_dot
from .congruence import Congruence, serialize
from .spectrum import is_reduced, nilradical


class SchemaError(ValueError):
    pass


def _shape_error(name, f, path, msg):
    where = "".join(f"[{i}]" for i in path)
    return SchemaError(f"algebra {name!r}: table {f!r}{where}: {msg}")


def _check_table(name, f, arity, size, value, path=()):
    if arity == 0:
        if isinstance(value, list):
            if len(value) != 1:
                raise _shape_error(name, f, path, "nullary table must be a single index")
            value = value[0]
        if not isinstance(value, int) or isinstance(value, bool):
            raise _shape_error(name, f, path, f"expected an element index, got {value!r}")
        if not 0 <= value < size:
            raise _shape_error(name, f, path, f"entry {value} out of range 0..{size - 1}")
        return
    if not isinstance(value, list) or len(value) != size:
        raise _shape_error(name, f, path, f"expected a list of {size} rows (arity mismatch?)")
    for i, row in enumerate(value):
        _check_table(name, f, arity - 1, size, row, path + (i,))


def algebra_from_json(data):
    if not isinstance(data, dict):
        raise SchemaError("algebra file must hold a JSON object")
    for key in ("signature", "size", "tables"):
        if key not in data:
            raise SchemaError(f"missing field {key!r}")
    name = data.get("name", "")
    try:
        sig = Signature(tuple((s["op"], s["arity"]) for s in data["signature"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"algebra {name!r}: malformed signature entry ({exc})") from None
    size = data["size"]
    if not isinstance(size, int) or size < 1:
        raise SchemaError(f"algebra {name!r}: size must be a positive integer")
    tables = data["tables"]
    for f, n in sig.symbols:
        if f not in tables:
            raise SchemaError(f"algebra {name!r}: missing table for {f!r}")
        _check_table(name, f, n, size, tables[f])
    extra = set(tables) - set(sig.names)
    if extra:
        raise SchemaError(f"algebra {name!r}: tables for undeclared symbols {sorted(extra)}")
    return FiniteAlgebra.from_nested(sig, size, tables, name)


def algebra_to_json(alg):
    return {
        "name": alg.name,
        "signature": [{"op": f, "arity": n} for f, n in alg.signature.symbols],
        "size": alg.size,
        "tables": alg.nested_tables(),
    }


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def content_hash(*algs):
    blob = json.dumps([algebra_to_json(a) | {"name": ""} for a in algs], sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def load_file(path):
    """Returns ``("algebra", FiniteAlgebra)`` or ``("class", (name, members))``."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
    if isinstance(data, list):
        return "class", (path.stem, [str(x) for x in data])
    if isinstance(data, dict) and "members" in data:
        if not isinstance(data["members"], list):
            raise SchemaError(f"{path}: 'members' must be a list of algebra names")
        return "class", (data.get("name", path.stem), [str(x) for x in data["members"]])
    alg = algebra_from_json(data)
    if not alg.name:
        alg = FiniteAlgebra(alg.signature, alg.size, alg.tables, path.stem)
    return "algebra", alg


def spectrum_report(s):
    pts = list(s.points)
    idx = {p: i for i, p in enumerate(pts)}
    closed = [sorted(idx[p] for p in c) for c in s.zariski.closed_sets()]
    top = [sorted(idx[p] for p in c) for c in s.topology.closed_sets()]
    return {
        "algebra": s.algebra.name,
        "class": [b.name for b in s.K],
        "points": [serialize(p) for p in pts],
        "zariski_closed": closed,
        "topologically_closed": top,
        "topological": s.zariski.is_topological,
        "nilradical": serialize(nilradical(s)),
        "reduced": is_reduced(s),
    }


def spectrum_dot(s):
    return to_dot(s.zariski, label=lambda p: str(p), name="zariski")


def spectrum_from_points(ctx, blocks_list):
    from .spectrum import _build

    return _build(ctx, [Congruence.from_blocks(b) for b in blocks_list])
