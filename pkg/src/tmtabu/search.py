"""Tabu Search over full terrain assignments.

A move is the 6-cell cyclic shift produced by :func:`perturb`. Each iteration
draws ``neighborhood_size`` perturbations of the current map, discards the ones
whose terrain sequence is on the tabu list (unless they beat the best score
found so far), and moves to the lowest-scoring survivor even when it is worse
than the current map.
"""

from __future__ import annotations

import hashlib
import logging
import random
import time
from collections import deque
from dataclasses import dataclass, field
from typing import List, Mapping, Optional, Tuple

from .board import STANDARD_LAYOUT, BoardLayout, MapState, _check_multiset
from .errors import BoardTooSmallError, ConfigError, MultisetMismatchError
from .evaluator import REQ1_MODES, ViolationReport, evaluate
from .terrain import TerrainType, standard_tiles

log = logging.getLogger(__name__)

PERTURB_CELLS = 6
RNG_NAME = "python-random-mt19937"


def digest(m: MapState) -> bytes:
    """64-bit identity of a terrain sequence, used as the tabu list key."""
    return hashlib.blake2b(m.key(), digest_size=8).digest()


class TabuList:
    """Bounded FIFO of solution digests with O(1) membership."""

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ConfigError(f"tabu list capacity must be positive, got {capacity}")
        self.capacity = capacity
        self._queue = deque()
        self._members = {}

    def __len__(self):
        return len(self._queue)

    def __contains__(self, key) -> bool:
        return key in self._members

    def contains(self, key) -> bool:
        return key in self._members

    def push(self, key) -> None:
        self._queue.append(key)
        self._members[key] = self._members.get(key, 0) + 1
        while len(self._queue) > self.capacity:
            old = self._queue.popleft()
            n = self._members[old] - 1
            if n:
                self._members[old] = n
            else:
                del self._members[old]

    def entries(self) -> list:
        return list(self._queue)


@dataclass
class SearchConfig:
    tabu_size: int
    neighborhood_size: int
    max_seconds: Optional[float] = None
    max_evals: Optional[int] = None
    seed: int = 0
    initial: Optional[MapState] = None
    layout: BoardLayout = STANDARD_LAYOUT
    tiles: Mapping[TerrainType, int] = field(default_factory=standard_tiles)
    aspiration: bool = True
    req1_mode: str = "pair"

    def validate(self) -> None:
        if self.tabu_size < 1:
            raise ConfigError("tabu_size must be a positive integer")
        if self.neighborhood_size < 1:
            raise ConfigError("neighborhood_size must be a positive integer")
        if self.max_seconds is None and self.max_evals is None:
            raise ConfigError("a stop rule is required: max_seconds and/or max_evals")
        if self.max_seconds is not None and self.max_seconds < 0:
            raise ConfigError("max_seconds must be non-negative")
        if self.max_evals is not None and self.max_evals < 0:
            raise ConfigError("max_evals must be non-negative")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        if self.req1_mode not in REQ1_MODES:
            raise ConfigError(f"req1_mode must be one of {REQ1_MODES}")
        if self.layout.cell_count < PERTURB_CELLS:
            raise ConfigError(f"the board needs at least {PERTURB_CELLS} cells")
        if self.initial is not None:
            if self.initial.layout != self.layout:
                raise ConfigError("initial map does not use the configured layout")
        else:
            try:
                _check_multiset(self.layout, self.tiles)
            except MultisetMismatchError as exc:
                raise ConfigError(str(exc)) from exc


@dataclass
class SearchResult:
    best_map: MapState
    best_report: ViolationReport
    initial_score: int
    evaluations: int
    iterations: int
    elapsed: float
    history: List[Tuple[int, int, int]]
    seed: int
    rng: str = RNG_NAME

    @property
    def best_score(self) -> int:
        return self.best_report.total


def initial_map(layout: BoardLayout, multiset: Mapping, rng: random.Random) -> MapState:
    """Uniformly random placement of the tile multiset (Fisher-Yates shuffle)."""
    _check_multiset(layout, multiset)
    tiles = [TerrainType(t) for t, n in sorted(multiset.items()) for _ in range(n)]
    rng.shuffle(tiles)
    return MapState(layout, tuple(tiles))


def perturb_indices(n_cells: int, rng: random.Random) -> List[int]:
    if n_cells < PERTURB_CELLS:
        raise BoardTooSmallError(
            f"perturb needs at least {PERTURB_CELLS} cells, the board has {n_cells}"
        )
    return rng.sample(range(n_cells), PERTURB_CELLS)


def apply_cycle(m: MapState, cells) -> MapState:
    """Shift terrains one step along ``cells``: cells[i] -> cells[i+1], last -> first."""
    old = m.terrains
    new = list(old)
    for a, b in zip(cells, cells[1:]):
        new[b] = old[a]
    new[cells[0]] = old[cells[-1]]
    return MapState._unchecked(m.layout, tuple(new))


def perturb(m: MapState, rng: random.Random) -> MapState:
    return apply_cycle(m, perturb_indices(m.layout.cell_count, rng))


def neighborhood(m: MapState, n: int, rng: random.Random) -> List[MapState]:
    if n < 1:
        raise ConfigError("neighborhood size must be at least 1")
    return [perturb(m, rng) for _ in range(n)]


@dataclass
class StepOutcome:
    next: MapState
    report: Optional[ViolationReport]
    moved: bool
    evaluations: int
    aspirated: bool = False


def select(candidates, reports, tabu: TabuList, best_score: int, aspiration: bool = True):
    """Index of the admissible candidate with the lowest score, or ``None``.

    Ties go to the lowest index. A tabu candidate is admissible only through
    aspiration, i.e. when it scores strictly below ``best_score``.
    """
    chosen, chosen_score, chosen_tabu = None, None, False
    for k, (cand, rep) in enumerate(zip(candidates, reports)):
        s = rep.total
        if chosen_score is not None and s >= chosen_score:
            continue
        is_tabu = digest(cand) in tabu
        if is_tabu and not (aspiration and s < best_score):
            continue
        chosen, chosen_score, chosen_tabu = k, s, is_tabu
    return chosen, chosen_tabu


def step(
    current: MapState,
    current_report: ViolationReport,
    tabu: TabuList,
    best_score: int,
    cfg: SearchConfig,
    rng: random.Random,
    n: Optional[int] = None,
) -> StepOutcome:
    """One Tabu Search iteration; ``n`` overrides the neighborhood size."""
    n = cfg.neighborhood_size if n is None else n
    candidates = neighborhood(current, n, rng)
    reports = [evaluate(c, cfg.req1_mode) for c in candidates]
    k, aspirated = select(candidates, reports, tabu, best_score, cfg.aspiration)
    if k is None:
        return StepOutcome(current, current_report, False, n)
    chosen = candidates[k]
    tabu.push(digest(chosen))
    return StepOutcome(chosen, reports[k], True, n, aspirated)


def run(cfg: SearchConfig, progress=None) -> SearchResult:
    """Run Tabu Search until the wall-clock and/or evaluation budget is spent.

    ``progress``, if given, is called as ``progress(iteration, current, best)``
    after every iteration.
    """
    cfg.validate()
    start = time.perf_counter()
    rng = random.Random(cfg.seed)
    current = cfg.initial if cfg.initial is not None else initial_map(cfg.layout, cfg.tiles, rng)
    current_report = evaluate(current, cfg.req1_mode)
    best, best_report = current, current_report
    tabu = TabuList(cfg.tabu_size)
    tabu.push(digest(current))
    history = [(0, current_report.total, best_report.total)]
    evaluations = 0
    iteration = 0

    while True:
        if cfg.max_evals is not None and evaluations >= cfg.max_evals:
            break
        if cfg.max_seconds is not None and time.perf_counter() - start >= cfg.max_seconds:
            break
        n = cfg.neighborhood_size
        if cfg.max_evals is not None:
            n = min(n, cfg.max_evals - evaluations)
        out = step(current, current_report, tabu, best_report.total, cfg, rng, n)
        evaluations += out.evaluations
        iteration += 1
        current, current_report = out.next, out.report
        if current_report.total < best_report.total:
            best, best_report = current, current_report
        history.append((iteration, current_report.total, best_report.total))
        if progress is not None:
            progress(iteration, current_report.total, best_report.total)

    elapsed = time.perf_counter() - start
    log.debug(
        "tabu=%d nbh=%d seed=%d: best %d after %d evaluations",
        cfg.tabu_size, cfg.neighborhood_size, cfg.seed, best_report.total, evaluations,
    )
    return SearchResult(
        best_map=best,
        best_report=best_report,
        initial_score=history[0][1],
        evaluations=evaluations,
        iterations=iteration,
        elapsed=elapsed,
        history=history,
        seed=cfg.seed,
    )
