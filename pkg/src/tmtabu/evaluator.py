"""Map balance score: violation counts for the four map requirements.

REQ1  no two adjacent land hexes share a terrain (counted per offending pair,
      or per offending cell with ``req1_mode="cell"``)
REQ2  every river hex has 1..3 river neighbors (counted per offending cell)
REQ3  all river hexes form one connected body (components - 1)
REQ4  every land hex touches a land hex exactly one spade away (per cell)

The total of the four counts is the objective minimized by the search.
"""

from __future__ import annotations

from dataclasses import dataclass

from .board import MapState
from .terrain import SPADE_TABLE, TerrainType

_RIVER = int(TerrainType.RIVER)
REQ1_MODES = ("pair", "cell")


@dataclass(frozen=True)
class ViolationReport:
    req1: int
    req2: int
    req3: int
    req4: int

    @property
    def total(self) -> int:
        return self.req1 + self.req2 + self.req3 + self.req4

    def as_dict(self) -> dict:
        return {
            "REQ1": self.req1,
            "REQ2": self.req2,
            "REQ3": self.req3,
            "REQ4": self.req4,
            "F_tot": self.total,
        }

    def __str__(self):
        return " ".join(f"{k}={v}" for k, v in self.as_dict().items())


def req1_violations(m: MapState, mode: str = "pair") -> int:
    t = m.terrains
    if mode == "pair":
        return sum(1 for i, j in m.layout.edges() if t[i] == t[j] and t[i] != _RIVER)
    if mode == "cell":
        adj = m.layout.adjacency()
        return sum(
            1
            for i, ti in enumerate(t)
            if ti != _RIVER and any(t[j] == ti for j in adj[i])
        )
    raise ValueError(f"unknown REQ1 counting mode {mode!r}; expected one of {REQ1_MODES}")


def req2_violations(m: MapState) -> int:
    t = m.terrains
    adj = m.layout.adjacency()
    bad = 0
    for i, ti in enumerate(t):
        if ti == _RIVER:
            k = sum(1 for j in adj[i] if t[j] == _RIVER)
            if k == 0 or k > 3:
                bad += 1
    return bad


def river_components(m: MapState) -> list:
    """Connected bodies of river hexes, found by iterative depth-first search."""
    t = m.terrains
    adj = m.layout.adjacency()
    seen = [False] * len(t)
    components = []
    for start, ts in enumerate(t):
        if ts != _RIVER or seen[start]:
            continue
        seen[start] = True
        stack, comp = [start], []
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in adj[i]:
                if not seen[j] and t[j] == _RIVER:
                    seen[j] = True
                    stack.append(j)
        components.append(sorted(comp))
    return components


def req3_violations(m: MapState) -> int:
    return max(len(river_components(m)) - 1, 0)


def req4_violations(m: MapState) -> int:
    t = m.terrains
    adj = m.layout.adjacency()
    bad = 0
    for i, ti in enumerate(t):
        if ti == _RIVER:
            continue
        row = SPADE_TABLE[ti]
        if not any(row[t[j]] == 1 for j in adj[i]):
            bad += 1
    return bad


def evaluate(m: MapState, req1_mode: str = "pair") -> ViolationReport:
    return ViolationReport(
        req1=req1_violations(m, req1_mode),
        req2=req2_violations(m),
        req3=req3_violations(m),
        req4=req4_violations(m),
    )


def score(m: MapState, req1_mode: str = "pair") -> int:
    return evaluate(m, req1_mode).total
