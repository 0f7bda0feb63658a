"""Tabu Search map generation for Terra Mystica boards."""

from .board import STANDARD_LAYOUT, BoardLayout, HexCoord, MapState, neighbors, search_space_log10
from .evaluator import ViolationReport, evaluate
from .terrain import TerrainType, spade_distance, standard_tiles

__version__ = "0.1.0"

__all__ = [
    "STANDARD_LAYOUT",
    "BoardLayout",
    "HexCoord",
    "MapState",
    "TerrainType",
    "ViolationReport",
    "evaluate",
    "neighbors",
    "search_space_log10",
    "spade_distance",
    "standard_tiles",
]
