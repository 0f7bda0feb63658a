"""Plain-text map files.

Format::

    # comment lines start with '#'
    layout: 13 12 13 12 13 12 13 12 13
    P S L F M W D R ...      (one line per board row, codes separated by spaces)

Blank lines are ignored. Codes are case-insensitive.
"""

from __future__ import annotations

import warnings
from pathlib import Path
from typing import Optional

from ..board import STANDARD_LAYOUT, BoardLayout, MapState
from ..errors import ParseError, RowLengthError
from ..terrain import parse_code, standard_tiles


class TileCountWarning(UserWarning):
    """A standard-layout map whose tiles differ from the base-game counts."""


def format_map(m: MapState, comment: Optional[str] = None) -> str:
    lines = []
    if comment:
        lines.extend("# " + c for c in comment.splitlines())
    lines.append("layout: " + " ".join(str(n) for n in m.layout.row_lengths))
    for row in m.rows():
        lines.append(" ".join(t.code for t in row))
    return "\n".join(lines) + "\n"


def parse_map(text: str) -> MapState:
    layout = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if layout is None:
            layout = _parse_layout_line(line, lineno)
            continue
        row_index = len(rows)
        if row_index >= layout.rows:
            raise RowLengthError(
                f"found more than the {layout.rows} rows declared by the layout", line=lineno
            )
        row = []
        for column, token in _tokens(raw):
            row.append(parse_code(token, position=(lineno, column)))
        expected = layout.row_lengths[row_index]
        if len(row) != expected:
            raise RowLengthError(
                f"row {row_index} has {len(row)} cells, layout expects {expected}", line=lineno
            )
        rows.append(row)
    if layout is None:
        raise ParseError("missing 'layout:' line")
    if len(rows) != layout.rows:
        raise RowLengthError(f"found {len(rows)} rows, layout declares {layout.rows}")
    m = MapState(layout, tuple(t for row in rows for t in row))
    if layout == STANDARD_LAYOUT and dict(m.counts()) != standard_tiles():
        warnings.warn(
            "tile counts differ from the base game (11 of each land terrain, 36 river)",
            TileCountWarning,
            stacklevel=2,
        )
    return m


def _parse_layout_line(line: str, lineno: int) -> BoardLayout:
    key, sep, rest = line.partition(":")
    if not sep or key.strip().lower() != "layout":
        raise ParseError("expected 'layout: n1 n2 ...' as the first non-comment line", line=lineno)
    try:
        lengths = tuple(int(tok) for tok in rest.split())
        return BoardLayout(lengths)
    except ValueError as exc:
        raise ParseError(f"bad layout declaration: {exc}", line=lineno) from exc


def _tokens(raw: str):
    """Yield (1-based column, token) for each whitespace-separated token."""
    col = 0
    n = len(raw)
    while col < n:
        if raw[col].isspace():
            col += 1
            continue
        start = col
        while col < n and not raw[col].isspace():
            col += 1
        yield start + 1, raw[start:col]


def load_map(path) -> MapState:
    return parse_map(Path(path).read_text(encoding="utf-8"))


def save_map(m: MapState, path, comment: Optional[str] = None) -> None:
    Path(path).write_text(format_map(m, comment), encoding="utf-8")
