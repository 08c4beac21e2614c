"""Plain-text matrix files and spectrum-spec JSON.

A matrix file is a ``"rows cols"`` header followed by one line per row of
whitespace-separated decimals. Values are written with 17 significant digits,
which round-trips every double exactly.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import InvalidSpec, ParseError
from .spectrum import ComplexBlock, RealBlock, SpectrumSpec

SCHEMA = "v1"


def render_matrix(A) -> str:
    a = np.asarray(A, dtype=float)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D array, got ndim={a.ndim}")
    lines = [f"{a.shape[0]} {a.shape[1]}"]
    lines += [" ".join(format(float(x), ".17g") for x in row) for row in a]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str, *, source: str = "<string>") -> np.ndarray:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows:
        raise ParseError(f"{source}: empty matrix file")
    header = rows[0]
    if len(header) != 2:
        raise ParseError(f"{source}: header must be 'rows cols', got {' '.join(header)!r}")
    try:
        r, c = (int(x) for x in header)
    except ValueError:
        raise ParseError(f"{source}: non-integer header {' '.join(header)!r}") from None
    if r < 0 or c < 0:
        raise ParseError(f"{source}: negative dimensions in header")
    body = rows[1:]
    if len(body) != r:
        raise ParseError(f"{source}: header declares {r} rows, found {len(body)}")
    out = np.empty((r, c))
    for i, row in enumerate(body):
        if len(row) != c:
            raise ParseError(f"{source}: row {i + 1} has {len(row)} entries, expected {c}")
        try:
            out[i] = [float(x) for x in row]
        except ValueError as exc:
            raise ParseError(f"{source}: row {i + 1}: {exc}") from None
    if not np.all(np.isfinite(out)):
        raise ParseError(f"{source}: non-finite entry")
    return out


def read_matrix(path) -> np.ndarray:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(f"{p}: {exc.strerror or exc}") from None
    return parse_matrix(text, source=str(p))


def write_matrix(path, A) -> None:
    Path(path).write_text(render_matrix(A))


def spec_to_dict(spec: SpectrumSpec) -> dict:
    blocks = []
    for blk in spec.blocks:
        if isinstance(blk, RealBlock):
            blocks.append({"kind": "real", "lambda": blk.lam, "ell": blk.ell})
        else:
            blocks.append({"kind": "complex", "a": blk.a, "b": blk.b, "ell": blk.ell})
    return {"schema": SCHEMA, "m": spec.m, "blocks": blocks}


def _number(entry: dict, key: str) -> float:
    try:
        value = entry[key]
    except KeyError:
        raise ParseError(f"block {entry!r} is missing {key!r}") from None
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ParseError(f"block field {key!r} must be a finite number, got {value!r}")
    return float(value)


def _ell(entry: dict) -> int:
    ell = entry.get("ell", 1)
    if isinstance(ell, bool) or not isinstance(ell, int):
        raise ParseError(f"block size 'ell' must be an integer, got {ell!r}")
    return ell


def spec_from_dict(data) -> SpectrumSpec:
    """Accepts ``{"blocks": [...]}`` or the split form ``real_blocks`` / ``complex_blocks``."""
    if not isinstance(data, dict):
        raise ParseError("spectrum spec must be a JSON object")
    schema = data.get("schema", SCHEMA)
    if schema != SCHEMA:
        raise ParseError(f"unsupported spectrum schema {schema!r}")
    if "blocks" in data:
        entries = data["blocks"]
    else:
        entries = [dict(e, kind="real") for e in data.get("real_blocks", [])]
        entries += [dict(e, kind="complex") for e in data.get("complex_blocks", [])]
    if not isinstance(entries, list):
        raise ParseError("'blocks' must be a list")
    blocks = []
    for e in entries:
        if not isinstance(e, dict):
            raise ParseError(f"block must be an object, got {e!r}")
        kind = e.get("kind")
        if kind == "real":
            blocks.append(RealBlock(_number(e, "lambda"), _ell(e)))
        elif kind == "complex":
            blocks.append(ComplexBlock(_number(e, "a"), _number(e, "b"), _ell(e)))
        else:
            raise ParseError(f"unknown block kind {kind!r}")
    spec = SpectrumSpec(tuple(blocks))
    if "m" in data and data["m"] != spec.m:
        raise InvalidSpec(f"declared m={data['m']} but blocks add up to {spec.m}")
    return spec


def read_spec(path) -> SpectrumSpec:
    p = Path(path)
    try:
        data = json.loads(p.read_text())
    except OSError as exc:
        raise ParseError(f"{p}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{p}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return spec_from_dict(data)


def dump_json(obj) -> str:
    """Canonical JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"
