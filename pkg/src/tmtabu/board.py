"""Row-staggered hexagonal board geometry and the map state.

Cells are pointy-top hexagons laid out in rows. Even-index rows are aligned
to the left edge and odd-index rows are shifted right by half a hex, so the
standard 13/12 alternation closes up into a rectangle-ish board.

Cells are addressed either by ``HexCoord(row, col)`` or by their row-major
linear index; ``BoardLayout.index`` and ``BoardLayout.coord`` convert between
the two.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Mapping, NamedTuple, Sequence, Tuple

from .errors import CoordinateError, MultisetMismatchError
from .terrain import TerrainType


class HexCoord(NamedTuple):
    row: int
    col: int


# Neighbor offsets (drow, dcol) per row parity.
_EVEN_ROW_OFFSETS = ((0, -1), (0, 1), (-1, -1), (-1, 0), (1, -1), (1, 0))
_ODD_ROW_OFFSETS = ((0, -1), (0, 1), (-1, 0), (-1, 1), (1, 0), (1, 1))


@dataclass(frozen=True)
class BoardLayout:
    row_lengths: Tuple[int, ...]

    def __post_init__(self):
        lengths = tuple(int(n) for n in self.row_lengths)
        if not lengths or any(n <= 0 for n in lengths):
            raise ValueError(f"row lengths must be positive, got {self.row_lengths!r}")
        object.__setattr__(self, "row_lengths", lengths)

    @property
    def rows(self) -> int:
        return len(self.row_lengths)

    @property
    def cell_count(self) -> int:
        return sum(self.row_lengths)

    def contains(self, c) -> bool:
        row, col = c
        return 0 <= row < len(self.row_lengths) and 0 <= col < self.row_lengths[row]

    def index(self, c) -> int:
        if not self.contains(c):
            raise CoordinateError(f"{tuple(c)} is outside layout {list(self.row_lengths)}")
        return _row_offsets(self.row_lengths)[c[0]] + c[1]

    def coord(self, index: int) -> HexCoord:
        if not 0 <= index < self.cell_count:
            raise CoordinateError(f"index {index} is outside a {self.cell_count}-cell layout")
        offsets = _row_offsets(self.row_lengths)
        row = 0
        while row + 1 < len(offsets) and offsets[row + 1] <= index:
            row += 1
        return HexCoord(row, index - offsets[row])

    def coords(self) -> Iterator[HexCoord]:
        for row, n in enumerate(self.row_lengths):
            for col in range(n):
                yield HexCoord(row, col)

    def neighbors(self, c) -> List[HexCoord]:
        return neighbors(self, c)

    def adjacency(self) -> Tuple[Tuple[int, ...], ...]:
        """Neighbor lists by linear index (cached per layout)."""
        return _adjacency(self.row_lengths)

    def edges(self) -> Tuple[Tuple[int, int], ...]:
        """Every adjacent pair once, as ``(i, j)`` with ``i < j``."""
        return _edges(self.row_lengths)


STANDARD_LAYOUT = BoardLayout((13, 12, 13, 12, 13, 12, 13, 12, 13))


def neighbors(layout: BoardLayout, c) -> List[HexCoord]:
    """Valid cells adjacent to ``c``.

    >>> neighbors(BoardLayout((2, 1)), (1, 0))
    [HexCoord(row=0, col=0), HexCoord(row=0, col=1)]
    """
    if not layout.contains(c):
        raise CoordinateError(f"{tuple(c)} is outside layout {list(layout.row_lengths)}")
    row, col = c
    offsets = _ODD_ROW_OFFSETS if row % 2 else _EVEN_ROW_OFFSETS
    out = []
    for dr, dc in offsets:
        cand = (row + dr, col + dc)
        if layout.contains(cand):
            out.append(HexCoord(*cand))
    out.sort()
    return out


def cell_count(layout: BoardLayout) -> int:
    return layout.cell_count


@lru_cache(maxsize=None)
def _row_offsets(row_lengths: Tuple[int, ...]) -> Tuple[int, ...]:
    offsets, total = [], 0
    for n in row_lengths:
        offsets.append(total)
        total += n
    return tuple(offsets)


@lru_cache(maxsize=None)
def _adjacency(row_lengths: Tuple[int, ...]) -> Tuple[Tuple[int, ...], ...]:
    layout = BoardLayout(row_lengths)
    return tuple(
        tuple(layout.index(n) for n in neighbors(layout, c)) for c in layout.coords()
    )


@lru_cache(maxsize=None)
def _edges(row_lengths: Tuple[int, ...]) -> Tuple[Tuple[int, int], ...]:
    adj = _adjacency(row_lengths)
    return tuple((i, j) for i, ns in enumerate(adj) for j in ns if i < j)


def _check_multiset(layout: BoardLayout, multiset: Mapping) -> None:
    if any(n < 0 for n in multiset.values()):
        raise MultisetMismatchError("tile counts must be non-negative")
    total = sum(multiset.values())
    if total != layout.cell_count:
        raise MultisetMismatchError(
            f"tile counts sum to {total} but the layout has {layout.cell_count} cells"
        )


def search_space_log10(layout: BoardLayout, multiset: Mapping) -> float:
    """log10 of the number of distinct ways to place the tile multiset on the board.

    The multinomial coefficient is computed exactly with Python integers.
    """
    _check_multiset(layout, multiset)
    return math.log10(multinomial(multiset.values()))


def multinomial(counts) -> int:
    counts = list(counts)
    result = math.factorial(sum(counts))
    for n in counts:
        result //= math.factorial(n)
    return result


@dataclass(frozen=True)
class MapState:
    """A full terrain assignment: one ``TerrainType`` per cell, row-major."""

    layout: BoardLayout
    terrains: Tuple[TerrainType, ...]

    def __post_init__(self):
        terrains = tuple(TerrainType(t) for t in self.terrains)
        if len(terrains) != self.layout.cell_count:
            raise ValueError(
                f"expected {self.layout.cell_count} terrains, got {len(terrains)}"
            )
        object.__setattr__(self, "terrains", terrains)

    @classmethod
    def _unchecked(cls, layout: BoardLayout, terrains: Tuple[TerrainType, ...]) -> "MapState":
        # Hot path for the search loop: terrains are already validated members.
        m = object.__new__(cls)
        object.__setattr__(m, "layout", layout)
        object.__setattr__(m, "terrains", terrains)
        return m

    def __getitem__(self, c) -> TerrainType:
        if isinstance(c, int):
            return self.terrains[c]
        return self.terrains[self.layout.index(c)]

    def counts(self) -> Counter:
        return Counter(self.terrains)

    def rows(self) -> List[Tuple[TerrainType, ...]]:
        out, start = [], 0
        for n in self.layout.row_lengths:
            out.append(self.terrains[start:start + n])
            start += n
        return out

    def with_terrains(self, terrains: Sequence[TerrainType]) -> "MapState":
        return MapState(self.layout, tuple(terrains))

    def key(self) -> bytes:
        """Compact byte encoding of the terrain sequence."""
        return bytes(self.terrains)

    def code_string(self) -> str:
        return "".join(t.code for t in self.terrains)
