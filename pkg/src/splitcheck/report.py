"""Canonical JSON emission.

Reports must be byte-identical across runs and thread counts, so the
serializer sorts keys, fixes separators, and refuses floats.  Exact rational
values are kept lossless: a Fraction with denominator 1 becomes a plain JSON
integer, anything else the string "p/q".
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path


def jsonable(value):
    """Recursively convert to types json.dumps handles deterministically."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return int(value)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        raise TypeError(f"refusing to serialize float {value!r}; reports must be exact")
    if isinstance(value, dict):
        out = {}
        for key, item in value.items():
            if not isinstance(key, str):
                raise TypeError(f"report keys must be strings, got {key!r}")
            out[key] = jsonable(item)
        return out
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    raise TypeError(f"cannot serialize {type(value).__name__} canonically")


def canonical_bytes(value) -> bytes:
    text = json.dumps(jsonable(value), sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return text.encode("utf-8") + b"\n"


def fraction_from_json(raw, where: str) -> Fraction:
    """Accept an int or a "p/q" string; mirror of the emission rule."""
    if isinstance(raw, bool):
        raise ValueError(f"{where}: expected a rational, got a boolean")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, str):
        try:
            return Fraction(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"{where}: not a rational: {raw!r}") from exc
    raise ValueError(f"{where}: expected an integer or 'p/q' string, got {type(raw).__name__}")


def input_digest(doc: dict) -> str:
    return hashlib.sha256(canonical_bytes(doc)).hexdigest()


def emit_report(report: dict, path) -> None:
    Path(path).write_bytes(canonical_bytes(report))
