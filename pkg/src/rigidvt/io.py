"""Edge-list files, provenance sidecars and report serialisation.

Edge-list format::

    # comment
    n m
    u v      (m lines, 0-based, either order)
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import InputError
from .graph import Graph


class ParseError(InputError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


def parse_edge_list(text: str) -> Graph:
    header = None
    edges: list[tuple[int, int]] = []
    seen: dict[tuple[int, int], int] = {}
    last = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        last = lineno
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(lineno, f"expected two integers, got {line!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(lineno, f"expected two integers, got {line!r}") from None
        if header is None:
            if a < 0 or b < 0:
                raise ParseError(lineno, "header counts must be non-negative")
            header = (a, b)
            continue
        n = header[0]
        if a == b:
            raise ParseError(lineno, f"self-loop at vertex {a}")
        if not (0 <= a < n and 0 <= b < n):
            raise ParseError(lineno, f"vertex out of range 0..{n - 1}")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise ParseError(lineno, f"duplicate edge {key}, first on line {seen[key]}")
        seen[key] = lineno
        edges.append(key)
    if header is None:
        raise ParseError(max(last, 1), "missing 'n m' header")
    if len(edges) != header[1]:
        raise ParseError(last, f"header announces {header[1]} edges, found {len(edges)}")
    return Graph(header[0], edges)


def read_edge_list(path: str | Path) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_edge_list(text)


def format_edge_list(G: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"{G.n} {G.m}")
    lines.extend(f"{u} {v}" for u, v in G.edges)
    return "\n".join(lines) + "\n"


def write_edge_list(G: Graph, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(format_edge_list(G, comment))


def provenance_path(path: str | Path) -> Path:
    path = Path(path)
    return path.with_name(path.name + ".provenance.json")


def write_provenance(data: dict, path: str | Path) -> Path:
    out = provenance_path(path)
    out.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
    return out


def emit_structured(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


def parse_structured(text: str) -> dict:
    return json.loads(text)


def _flatten(prefix: str, value: Any, out: list[tuple[str, str]]) -> None:
    if isinstance(value, dict):
        for key in sorted(value):
            _flatten(f"{prefix}.{key}" if prefix else str(key), value[key], out)
    elif isinstance(value, bool):
        out.append((prefix, "yes" if value else "no"))
    elif value is None:
        out.append((prefix, "-"))
    elif isinstance(value, (list, tuple)):
        out.append((prefix, json.dumps(value)))
    else:
        out.append((prefix, str(value)))


def emit_text(doc: dict) -> str:
    rows: list[tuple[str, str]] = []
    _flatten("", doc, rows)
    return "\n".join(f"{k}: {v}" for k, v in rows)
