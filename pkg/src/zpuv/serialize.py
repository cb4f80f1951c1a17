"""JSON reading and writing for specs, messages and reports.

Polynomials are ascending coefficient arrays.  Each coefficient is either an
integer (a Z_p element) or a triple ``[a, b, c]`` meaning ``a + ub + vc``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .finite_field import FpPoly
from .local_ring import RElem, RPoly

SCHEMA_VERSION = "1.0"

_TOP_FIELDS = {"p", "alpha", "beta", "lambda", "kind", "f1", "f2", "f3", "f4", "g", "a", "b", "p1", "p2", "p3"}


class SpecParseError(ValueError):
    """Malformed input; ``where`` holds a line/column or a field path."""

    def __init__(self, message: str, where: str = ""):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


def load_json(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(exc.msg, f"{source}:{exc.lineno}:{exc.colno}") from None


def read_json_file(path: str | Path) -> Any:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SpecParseError(exc.strerror or str(exc), str(path)) from None
    return load_json(text, str(path))


def _int(val, where: str) -> int:
    if isinstance(val, bool) or not isinstance(val, int):
        raise SpecParseError(f"expected an integer, got {val!r}", where)
    return val


def parse_relem(val, p: int, where: str) -> RElem:
    if isinstance(val, list):
        if len(val) != 3:
            raise SpecParseError("ring element must be [a, b, c]", where)
        return RElem(*(_int(x, f"{where}[{i}]") for i, x in enumerate(val)), p)
    return RElem(_int(val, where), 0, 0, p)


def parse_poly(val, p: int, where: str) -> FpPoly | RPoly:
    """FpPoly when every coefficient is an integer, RPoly otherwise."""
    if not isinstance(val, list):
        raise SpecParseError("polynomial must be a coefficient array", where)
    if all(not isinstance(c, list) for c in val):
        return FpPoly([_int(c, f"{where}[{i}]") for i, c in enumerate(val)], p)
    return RPoly.from_coeffs([parse_relem(c, p, f"{where}[{i}]") for i, c in enumerate(val)], p)


def spec_from_obj(obj: Any, source: str = "<input>"):
    from .builder import SLOTS, CodeSpec, Kind

    if not isinstance(obj, dict):
        raise SpecParseError("spec must be a JSON object", source)
    unknown = sorted(set(obj) - _TOP_FIELDS - {"schema_version", "comment"})
    if unknown:
        raise SpecParseError(f"unknown field(s) {unknown}", source)
    for name in ("p", "alpha", "beta", "kind"):
        if name not in obj:
            raise SpecParseError(f"missing field {name!r}", source)
    p = _int(obj["p"], f"{source}:p")
    try:
        kind = Kind(obj["kind"])
    except ValueError:
        raise SpecParseError(f"unknown kind {obj['kind']!r}", f"{source}:kind") from None
    try:
        lam = parse_relem(obj.get("lambda", [1, 0, 0]), p, f"{source}:lambda")
        slots = {s: parse_poly(obj[s], p, f"{source}:{s}") for s in SLOTS if s in obj}
        return CodeSpec(kind, p, _int(obj["alpha"], f"{source}:alpha"), _int(obj["beta"], f"{source}:beta"),
                        lam, **slots)
    except SpecParseError:
        raise
    except ValueError as exc:
        raise SpecParseError(str(exc), source) from None


def load_spec(path: str | Path):
    return spec_from_obj(read_json_file(path), str(path))


def load_messages(path: str | Path, p: int) -> dict[str, RPoly]:
    obj = read_json_file(path)
    if not isinstance(obj, dict):
        raise SpecParseError("message file must be a JSON object", str(path))
    out = {}
    for key, val in obj.items():
        if key in ("schema_version", "comment"):
            continue
        out[key] = RPoly.lift(f) if isinstance(f := parse_poly(val, p, f"{path}:{key}"), FpPoly) else f
    return out


def poly_to_json(f: FpPoly | RPoly) -> list:
    if isinstance(f, FpPoly):
        return list(f.coeffs)
    if f.is_fp():
        return list(f.free.coeffs)
    return [list(c.as_tuple()) for c in f.coeffs]


def spec_to_json(spec) -> dict:
    out = {
        "p": spec.p,
        "alpha": spec.alpha,
        "beta": spec.beta,
        "lambda": list(spec.lam.as_tuple()),
        "kind": spec.kind.value,
    }
    for name, val in spec.slots().items():
        out[name] = poly_to_json(val)
    return out


def dumps(obj: dict) -> str:
    """Canonical JSON with a schema_version field, stable across runs."""
    return json.dumps({"schema_version": SCHEMA_VERSION, **obj}, indent=2, sort_keys=False) + "\n"
