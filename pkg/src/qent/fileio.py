"""Readers and writers for the .adj, .vmap and .pam text formats.

All files are 1-based on the outside; parsing converts to the 0-based
indices used by the library. Parsing is strict: wrong token counts are
hard errors that name the offending line, never padded or ignored.
"""

from __future__ import annotations

import os

from .errors import ParseError
from .graphs import AdjacencyMatrix, VertexSurjection
from .interval_maps import ROLES, PiecewiseAffineSpec


def _lines(text: str) -> list[tuple[int, list[str]]]:
    """Nonempty lines with their 1-based numbers; trailing blanks allowed."""
    numbered = [(i + 1, line.split()) for i, line in enumerate(text.splitlines())]
    while numbered and not numbered[-1][1]:
        numbered.pop()
    for lineno, tokens in numbered:
        if not tokens:
            raise ParseError("blank line inside the file", lineno)
    return numbered


def _int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what}: expected an integer, got {token!r}", lineno) from None


def parse_adjacency(text: str) -> AdjacencyMatrix:
    """Parse the .adj format: vertex count, then one 0/1 row per vertex."""
    lines = _lines(text)
    if not lines:
        raise ParseError("empty file", 1)
    lineno, tokens = lines[0]
    if len(tokens) != 1:
        raise ParseError(f"expected a single vertex count, got {len(tokens)} tokens", lineno)
    n = _int(tokens[0], lineno, "vertex count")
    if n < 1:
        raise ParseError(f"vertex count must be >= 1, got {n}", lineno)
    if len(lines) != n + 1:
        raise ParseError(
            f"expected {n} matrix rows after the header, found {len(lines) - 1}",
            lines[-1][0] if len(lines) > 1 else lineno,
        )
    rows = []
    for lineno, tokens in lines[1:]:
        if len(tokens) != n:
            raise ParseError(f"row has {len(tokens)} entries, expected {n}", lineno)
        row = [_int(t, lineno, "matrix entry") for t in tokens]
        for x in row:
            if x not in (0, 1):
                raise ParseError(f"matrix entries must be 0 or 1, got {x}", lineno)
        rows.append(row)
    return AdjacencyMatrix.from_rows(rows)


def format_adjacency(A: AdjacencyMatrix) -> str:
    body = "\n".join(" ".join(str(x) for x in row) for row in A.rows)
    return f"{A.n}\n{body}\n"


def parse_vertex_map(text: str) -> VertexSurjection:
    """Parse the .vmap format: "n m" then n values in 1..m."""
    lines = _lines(text)
    if len(lines) != 2:
        raise ParseError(f"expected exactly 2 lines, found {len(lines)}", lines[-1][0] if lines else 1)
    lineno, tokens = lines[0]
    if len(tokens) != 2:
        raise ParseError(f'expected "n m", got {len(tokens)} tokens', lineno)
    n = _int(tokens[0], lineno, "domain size")
    m = _int(tokens[1], lineno, "codomain size")
    lineno, tokens = lines[1]
    if len(tokens) != n:
        raise ParseError(f"expected {n} values, got {len(tokens)}", lineno)
    values = [_int(t, lineno, "map value") for t in tokens]
    for v in values:
        if not 1 <= v <= m:
            raise ParseError(f"map value {v} outside 1..{m}", lineno)
    try:
        return VertexSurjection(m, tuple(v - 1 for v in values))
    except ValueError as exc:
        raise ParseError(str(exc), lineno) from None


def format_vertex_map(f: VertexSurjection) -> str:
    values = " ".join(str(v + 1) for v in f.image)
    return f"{f.domain_size} {f.codomain_size}\n{values}\n"


def parse_pam(text: str) -> PiecewiseAffineSpec:
    """Parse the .pam format: "role n" then the n+1 breakpoint values."""
    lines = _lines(text)
    if len(lines) != 2:
        raise ParseError(f"expected exactly 2 lines, found {len(lines)}", lines[-1][0] if lines else 1)
    lineno, tokens = lines[0]
    if len(tokens) != 2:
        raise ParseError(f'expected "role n", got {len(tokens)} tokens', lineno)
    role = tokens[0]
    if role not in ROLES:
        raise ParseError(f"role must be one of {ROLES}, got {role!r}", lineno)
    n = _int(tokens[1], lineno, "grid size")
    lineno, tokens = lines[1]
    if len(tokens) != n + 1:
        raise ParseError(f"expected {n + 1} breakpoint values, got {len(tokens)}", lineno)
    values = tuple(_int(t, lineno, "breakpoint value") for t in tokens)
    try:
        return PiecewiseAffineSpec(n, values, role)
    except ValueError as exc:
        raise ParseError(str(exc), lineno) from None


def format_pam(spec: PiecewiseAffineSpec) -> str:
    values = " ".join(str(v) for v in spec.values)
    return f"{spec.role} {spec.grid}\n{values}\n"


def _load(path: str, parser):
    if not os.path.exists(path):
        raise ParseError(f"no such file: {path}")
    with open(path, encoding="ascii") as fh:
        return parser(fh.read())


def load_adjacency(path: str) -> AdjacencyMatrix:
    return _load(path, parse_adjacency)


def load_vertex_map(path: str) -> VertexSurjection:
    return _load(path, parse_vertex_map)


def load_pam(path: str) -> PiecewiseAffineSpec:
    return _load(path, parse_pam)
