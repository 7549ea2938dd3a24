"""Text formats: module files, type specs, command-line elements and reports.

Every number is written as an exact rational string ("3", "-1/2").  Output
is byte-reproducible: keys keep a fixed order, matrices are written one row
per line, and every document ends with a newline.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any

from .linalg import Matrix, format_rational, parse_rational
from .module import Decomposition, OModule, TypeInvariant
from .octonion import Octonion


class FormatError(ValueError):
    """Malformed module file, type spec or element string."""


# -- module files ------------------------------------------------------------


def module_to_json(M: OModule) -> dict[str, Any]:
    return {"label": M.label, "dim": M.dim, "actions": [a.to_lists() for a in M.actions]}


def _matrix_lines(rows: list[list[str]], indent: str) -> str:
    if not rows:
        return "[]"
    inner = ",\n".join(indent + "  " + json.dumps(r, separators=(", ", ": ")) for r in rows)
    return "[\n" + inner + "\n" + indent + "]"


def dumps_module(M: OModule) -> str:
    doc = module_to_json(M)
    mats = ",\n".join("    " + _matrix_lines(a, "    ") for a in doc["actions"])
    return (
        "{\n"
        f'  "label": {json.dumps(doc["label"])},\n'
        f'  "dim": {doc["dim"]},\n'
        '  "actions": [\n' + mats + "\n  ]\n"
        "}\n"
    )


def _rational(x, where: str) -> Fraction:
    if not isinstance(x, str):
        raise FormatError(f"{where}: expected a rational string, got {x!r}")
    try:
        return parse_rational(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"{where}: {exc}") from None


def module_from_json(doc: Any) -> OModule:
    if not isinstance(doc, dict):
        raise FormatError("module file must be a JSON object")
    missing = {"label", "dim", "actions"} - doc.keys()
    if missing:
        raise FormatError(f"module file lacks {sorted(missing)}")
    d = doc["dim"]
    if not isinstance(d, int) or isinstance(d, bool) or d < 0:
        raise FormatError(f"dim must be a non-negative integer, got {d!r}")
    acts = doc["actions"]
    if not isinstance(acts, list) or len(acts) != 7:
        raise FormatError("actions must be a list of 7 matrices")
    mats = []
    for k, a in enumerate(acts, 1):
        if not isinstance(a, list) or len(a) != d or any(not isinstance(r, list) or len(r) != d for r in a):
            raise FormatError(f"L_{k} is not a {d}x{d} array")
        rows = [[_rational(x, f"L_{k}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(a)]
        mats.append(Matrix(rows, ncols=d))
    return OModule(mats, label=str(doc["label"]), dim=d)


def loads_module(text: str) -> OModule:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not JSON: {exc}") from None
    return module_from_json(doc)


def read_module(path: str | Path) -> OModule:
    return loads_module(Path(path).read_text(encoding="utf-8"))


def write_module(M: OModule, path: str | Path) -> None:
    Path(path).write_text(dumps_module(M), encoding="utf-8")


# -- decompositions ----------------------------------------------------------


def decomposition_to_json(dec: Decomposition) -> dict[str, Any]:
    t = dec.type
    return {
        "type": [t.n1, t.n2],
        "block_layout": [b.value for b in dec.block_layout],
        "change_of_basis": dec.change_of_basis.to_lists(),
    }


# -- type specs and elements -------------------------------------------------

_TERM = re.compile(r"^(O|Obar)(?:\^(\d+))?$")


def parse_type_spec(spec: str) -> TypeInvariant:
    """"O^2+Obar^1" -> (2, 1).  Terms may repeat or appear in any order; "0" is the zero module."""
    s = spec.replace(" ", "")
    if s == "0":
        return TypeInvariant(0, 0)
    if not s:
        raise FormatError("empty type spec")
    n = {"O": 0, "Obar": 0}
    for term in s.split("+"):
        m = _TERM.match(term)
        if not m:
            raise FormatError(f"bad term {term!r} in type spec {spec!r}; expected O^a or Obar^b")
        n[m.group(1)] += int(m.group(2) or 1)
    return TypeInvariant(n["O"], n["Obar"])


def parse_octonion(text: str) -> Octonion:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 8:
        raise FormatError(f"octonion {text!r} has {len(parts)} coefficients, expected 8")
    try:
        return Octonion([parse_rational(p) for p in parts])
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"octonion {text!r}: {exc}") from None


def parse_element(text: str, dim: int | None = None) -> tuple[Fraction, ...]:
    """"1,0,0,0,0,0,0,0; 0,1,0,0,0,0,0,0" -> 16 rational coordinates."""
    octs = [parse_octonion(t) for t in text.split(";") if t.strip()]
    coords = tuple(c for o in octs for c in o.coeffs)
    if dim is not None and len(coords) != dim:
        raise FormatError(f"element has {len(coords)} coordinates, module has dim {dim}")
    return coords


def format_element(coords) -> str:
    coords = list(coords)
    blocks = [coords[i:i + 8] for i in range(0, len(coords), 8)]
    return "; ".join(",".join(format_rational(x) for x in b) for b in blocks)


# -- reports -----------------------------------------------------------------


def dumps_report(report: dict[str, Any]) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def render_text(report: dict[str, Any]) -> str:
    """Indented ``key: value`` lines; lists of scalars stay on one line."""
    lines: list[str] = []

    def scalar(v) -> str:
        if isinstance(v, bool):
            return str(v).lower()
        if v is None:
            return "-"
        if isinstance(v, list):
            return "[" + ", ".join(scalar(x) for x in v) + "]"
        return str(v)

    def walk(obj, depth):
        pad = "  " * depth
        for k, v in obj.items():
            if isinstance(v, dict):
                lines.append(f"{pad}{k}:")
                walk(v, depth + 1)
            elif isinstance(v, list) and v and isinstance(v[0], (dict, list)):
                lines.append(f"{pad}{k}:")
                for item in v:
                    if isinstance(item, dict):
                        lines.append(f"{pad}  -")
                        walk(item, depth + 2)
                    else:
                        lines.append(f"{pad}  {scalar(item)}")
            else:
                lines.append(f"{pad}{k}: {scalar(v)}")

    walk(report, 0)
    return "\n".join(lines) + "\n"
