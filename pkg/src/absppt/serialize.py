"""Text formats for spectra and verdicts.

Spectra are written as nine decimal strings with 17 significant digits, which
round-trip every double exactly. Everything else goes through :func:`dumps`,
which sorts keys so that equal inputs give equal bytes.
"""

from __future__ import annotations

import enum
import json
import math

import numpy as np

from .spectrum import Spectrum, make_spectrum


class ParseError(ValueError):
    """Malformed spectrum text. ``line`` and ``column`` are 1-based."""

    def __init__(self, msg: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {msg}")
        self.line = line
        self.column = column


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def spectrum_to_json(s: Spectrum) -> list[str]:
    return [fmt(x) for x in s]


def spectrum_to_csv(s: Spectrum) -> str:
    return ",".join(fmt(x) for x in s)


def _to_jsonable(obj):
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, Spectrum):
        return spectrum_to_json(obj)
    if isinstance(obj, dict):
        return {str(k): _to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        # json has no inf/nan; keep them as strings
        return x if math.isfinite(x) else str(x)
    return obj


def dumps(obj) -> str:
    """Deterministic JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(_to_jsonable(obj), sort_keys=True, indent=2) + "\n"


def _floats_from_tokens(tokens, renormalize: bool) -> Spectrum:
    vals = []
    for tok, line, col in tokens:
        try:
            vals.append(float(tok))
        except (TypeError, ValueError):
            raise ParseError(f"not a number: {tok!r}", line, col) from None
    if len(vals) != 9:
        line, col = (tokens[-1][1], tokens[-1][2]) if tokens else (1, 1)
        raise ParseError(f"expected 9 values, got {len(vals)}", line, col)
    return make_spectrum(vals, renormalize=renormalize)


def _json_positions(text: str, n: int) -> list[tuple[int, int]]:
    # start of each array element, for error reporting only
    out, line, col, depth, expect = [], 1, 1, 0, False
    for ch in text:
        if ch == "[":
            depth += 1
            expect = True
        elif ch == "," and depth == 1:
            expect = True
        elif expect and not ch.isspace():
            out.append((line, col))
            expect = False
        if ch == "\n":
            line, col = line + 1, 1
        else:
            col += 1
    return (out + [(line, col)] * n)[:n]


def parse_spectrum_text(text: str, renormalize: bool = False) -> Spectrum:
    """Parse a JSON array (numbers or decimal strings) or comma/space separated values.

    A JSON object with a ``spectrum`` key, as written by ``classify``, is also accepted.
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None
        if not isinstance(data.get("spectrum"), list):
            raise ParseError("JSON object has no 'spectrum' array")
        return parse_spectrum_text(json.dumps(data["spectrum"]), renormalize)
    if stripped.startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None
        if not isinstance(data, list):
            raise ParseError("expected a JSON array")
        pos = _json_positions(text, len(data))
        return _floats_from_tokens([(v, ln, col) for v, (ln, col) in zip(data, pos)], renormalize)
    tokens = []
    for ln, row in enumerate(text.splitlines(), start=1):
        col, cur, start = 1, "", None
        for ch in row + ",":
            if ch in ", \t":
                if cur:
                    tokens.append((cur, ln, start))
                cur, start = "", None
            else:
                if start is None:
                    start = col
                cur += ch
            col += 1
    return _floats_from_tokens(tokens, renormalize)
