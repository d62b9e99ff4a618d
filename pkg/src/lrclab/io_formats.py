"""Shared file formats: code files, JSON reports, curve CSV.

Code file, bit-exact: line 1 is ``LRC <G|H> q=<int> n=<int> rows=<int>``
followed by ``rows`` lines of ``n`` space-separated integers; ``#`` starts a
comment anywhere.  Reports are JSON with sorted keys and no timestamps, so a
seeded command is byte-stable across runs.  CSV floats carry 12 significant
digits with LF line endings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ParseError

FORMAT_MAGIC = "LRC"


@dataclass(frozen=True)
class CodeFile:
    kind: str  # 'G' or 'H'
    q: int
    n: int
    matrix: np.ndarray


def format_code_file(kind: str, q: int, matrix: np.ndarray) -> str:
    rows, n = matrix.shape
    lines = [f"{FORMAT_MAGIC} {kind} q={q} n={n} rows={rows}"]
    for row in matrix:
        lines.append(" ".join(str(int(x)) for x in row))
    return "\n".join(lines) + "\n"


def parse_code_file(text: str) -> CodeFile:
    lines = text.splitlines()
    content = []
    for lineno, raw in enumerate(lines, start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            content.append((lineno, body))
    if not content:
        raise ParseError("empty code file", line=1)
    lineno, header = content[0]
    parts = header.split()
    if len(parts) != 5 or parts[0] != FORMAT_MAGIC or parts[1] not in ("G", "H"):
        raise ParseError(f"bad header {header!r}", line=lineno)
    try:
        fields = dict(p.split("=", 1) for p in parts[2:])
        q = int(fields["q"])
        n = int(fields["n"])
        rows = int(fields["rows"])
    except (ValueError, KeyError) as exc:
        raise ParseError(f"bad header field: {exc}", line=lineno) from None
    body = content[1:]
    if len(body) != rows:
        raise ParseError(f"expected {rows} rows, found {len(body)}", line=lineno)
    matrix = np.zeros((rows, n), dtype=np.uint16)
    for idx, (lno, line) in enumerate(body):
        entries = line.split()
        if len(entries) != n:
            raise ParseError(f"expected {n} entries, found {len(entries)}", line=lno)
        for col, tok in enumerate(entries):
            try:
                val = int(tok)
            except ValueError:
                raise ParseError(f"bad integer {tok!r}", line=lno, column=col + 1) from None
            if not 0 <= val < q:
                raise ParseError(f"entry {val} outside [0, {q})", line=lno, column=col + 1)
            matrix[idx, col] = val
    return CodeFile(parts[1], q, n, matrix)


# -- reports --------------------------------------------------------------


def exact(value):
    """Tag an exact integer/rational result."""
    if isinstance(value, Fraction):
        rendered = str(value)
    elif isinstance(value, (bool, int)):
        rendered = value
    else:
        rendered = str(value)
    return {"kind": "exact", "value": rendered}


def approx(value, tolerance):
    """Tag a float result with its tolerance."""
    return {"kind": "float", "value": float(value), "tolerance": tolerance}


def build_report(command: str, params: dict, results: dict, seed=None, version: str = "") -> dict:
    return {
        "command": command,
        "params": _plain(params),
        "results": _plain(results),
        "provenance": {"seed": seed, "version": version},
    }


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, frozenset):
        return sorted(obj)
    return obj


def dumps_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


# -- curve CSV --------------------------------------------------------------

CSV_HEADER = "bound,q,r,t,delta,value,aux1,aux2"


def _sig12(x) -> str:
    return f"{float(x):.12g}"


def curve_csv(points) -> str:
    lines = [CSV_HEADER]
    for p in points:
        aux1 = _sig12(p.aux[0]) if len(p.aux) > 0 else ""
        aux2 = _sig12(p.aux[1]) if len(p.aux) > 1 else ""
        lines.append(
            f"{p.bound},{p.q},{p.r},{p.t},{_sig12(p.delta)},{_sig12(p.value)},{aux1},{aux2}"
        )
    return "\n".join(lines) + "\n"
