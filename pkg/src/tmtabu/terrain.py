"""Terrain types, their one-letter codes and the terraforming wheel."""

from __future__ import annotations

import enum
from typing import Dict

from .errors import NotTerraformableError, ParseError


class TerrainType(enum.IntEnum):
    # Values 0..6 are the positions on the terraforming wheel, in cyclic order.
    PLAINS = 0
    SWAMP = 1
    LAKES = 2
    FOREST = 3
    MOUNTAINS = 4
    WASTELAND = 5
    DESERT = 6
    RIVER = 7

    @property
    def is_land(self) -> bool:
        return self is not TerrainType.RIVER

    @property
    def code(self) -> str:
        return _CODES[self]

    @property
    def color(self) -> str:
        return COLORS[self]


WHEEL_SIZE = 7
LAND_TERRAINS = tuple(t for t in TerrainType if t.is_land)

_CODES: Dict[TerrainType, str] = {
    TerrainType.PLAINS: "P",
    TerrainType.SWAMP: "S",
    TerrainType.LAKES: "L",
    TerrainType.FOREST: "F",
    TerrainType.MOUNTAINS: "M",
    TerrainType.WASTELAND: "W",
    TerrainType.DESERT: "D",
    TerrainType.RIVER: "R",
}
_BY_CODE = {code: t for t, code in _CODES.items()}

COLORS: Dict[TerrainType, str] = {
    TerrainType.PLAINS: "#8b5a2b",
    TerrainType.SWAMP: "#222222",
    TerrainType.LAKES: "#2f6fd6",
    TerrainType.FOREST: "#2e8b3a",
    TerrainType.MOUNTAINS: "#9a9a9a",
    TerrainType.WASTELAND: "#c8352b",
    TerrainType.DESERT: "#e8d23a",
    TerrainType.RIVER: "#a9d8f0",
}


def spade_distance(a: TerrainType, b: TerrainType) -> int:
    """Number of spades needed to turn terrain ``a`` into ``b`` (0..3).

    >>> spade_distance(TerrainType.MOUNTAINS, TerrainType.DESERT)
    2
    """
    if not a.is_land or not b.is_land:
        raise NotTerraformableError("River cannot be terraformed")
    d = abs(int(a) - int(b))
    return min(d, WHEEL_SIZE - d)


# Lookup table indexed [a][b] over all 8 values; -1 marks pairs involving River.
SPADE_TABLE = tuple(
    tuple(spade_distance(a, b) if a.is_land and b.is_land else -1 for b in TerrainType)
    for a in TerrainType
)


def terrain_code(t: TerrainType) -> str:
    return _CODES[t]


def parse_code(ch: str, position=None) -> TerrainType:
    """Parse a single terrain letter (case-insensitive).

    ``position`` is an optional ``(line, column)`` pair reported on failure.
    """
    t = _BY_CODE.get(ch.upper()) if len(ch) == 1 else None
    if t is None:
        line, column = position if position is not None else (None, None)
        raise ParseError(f"unknown terrain code {ch!r}", line=line, column=column)
    return t


def standard_tiles() -> Dict[TerrainType, int]:
    """Tile counts of the base game: 11 of each land terrain plus 36 river hexes."""
    counts = {t: 11 for t in LAND_TERRAINS}
    counts[TerrainType.RIVER] = 36
    return counts
