"""General helper utilities."""
from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any, Iterable, List

from homnr.errors import InputError


# ─── Rationals ───────────────────────────────────────────────────────────────

RATIONAL_RE = re.compile(r"^\s*-?\d+(\s*/\s*\d+)?\s*$")


def parse_rational(value: Any, field: str = "value") -> Fraction:
    """Integers or "p/q" strings; floats are refused."""
    if isinstance(value, bool):
        raise InputError(f"expected a rational, got {value!r}", field=field)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and RATIONAL_RE.match(value):
        try:
            return Fraction(value.replace(" ", ""))
        except ZeroDivisionError:
            raise InputError(f"zero denominator in {value!r}", field=field) from None
    raise InputError(f"expected an integer or a \"p/q\" string, got {value!r}", field=field)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_vector(v: Iterable[Fraction]) -> List[str]:
    return [format_rational(x) for x in v]


# ─── JSON ────────────────────────────────────────────────────────────────────

def dump_json(payload: Any) -> str:
    """Byte-stable rendering: sorted keys, two-space indent, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# ─── Text rendering ──────────────────────────────────────────────────────────

def _flatten(prefix: str, value: Any, out: List[tuple]) -> None:
    if isinstance(value, dict):
        if not value:
            out.append((prefix, "{}"))
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else str(k), value[k], out)
    elif isinstance(value, list) and value and any(isinstance(v, (dict, list)) for v in value):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append((prefix, json.dumps(value, ensure_ascii=False) if not isinstance(value, str) else value))


def render_text(payload: Any) -> str:
    rows: List[tuple] = []
    _flatten("", payload, rows)
    width = max((len(k) for k, _ in rows), default=0)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)
