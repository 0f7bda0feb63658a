"""Hyperparameter sweep over tabu list and neighborhood sizes.

Every run in the grid gets its own seed, derived from the base seed and the
run's ordinal position in grid order (tabu size outermost, then neighborhood
size, then run index). Rows are appended to the output CSV in that same order
as soon as they are available, so an interrupted sweep restarts from the first
missing row and ends with the same file an uninterrupted sweep would produce.
"""

from __future__ import annotations

import csv
import io
import logging
import os
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..board import STANDARD_LAYOUT, BoardLayout
from ..errors import ConfigError, EmptyDataError
from ..search import SearchConfig, run
from ..stats import AnovaResult, mean_std, one_way_anova
from ..terrain import TerrainType, standard_tiles

log = logging.getLogger(__name__)

CSV_COLUMNS = (
    "tabu_size",
    "neighborhood_size",
    "run_index",
    "seed",
    "best_score",
    "evaluations",
    "elapsed_ms",
)
FACTORS = ("neighborhood", "tabu")

_MASK64 = (1 << 64) - 1


def mix_seed(base_seed: int, ordinal: int) -> int:
    """SplitMix64 finalizer applied to ``base_seed + ordinal`` (mod 2**64)."""
    z = (base_seed + ordinal) & _MASK64
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


@dataclass
class SweepConfig:
    tabu_sizes: Sequence[int] = (10, 20, 30, 50, 75, 100)
    neighborhood_sizes: Sequence[int] = (10, 25, 50, 75, 100)
    runs_per_cell: int = 30
    max_seconds: Optional[float] = 300.0
    max_evals: Optional[int] = None
    base_seed: int = 0
    out: Optional[Path] = None
    workers: int = 1
    layout: BoardLayout = STANDARD_LAYOUT
    tiles: Mapping[TerrainType, int] = field(default_factory=standard_tiles)

    def validate(self) -> None:
        if not self.tabu_sizes or not self.neighborhood_sizes:
            raise ConfigError("tabu and neighborhood grids must be non-empty")
        if any(v < 1 for v in list(self.tabu_sizes) + list(self.neighborhood_sizes)):
            raise ConfigError("grid values must be positive integers")
        if self.runs_per_cell < 1:
            raise ConfigError("runs_per_cell must be at least 1")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")
        if self.max_seconds is None and self.max_evals is None:
            raise ConfigError("a per-run stop rule is required")

    def tasks(self) -> List[Tuple[int, int, int, int]]:
        """(tabu_size, neighborhood_size, run_index, seed) in grid order."""
        out = []
        for t in self.tabu_sizes:
            for n in self.neighborhood_sizes:
                for r in range(self.runs_per_cell):
                    out.append((t, n, r, mix_seed(self.base_seed, len(out))))
        return out


# Paper-scale grid: 6 x 5 cells, 30 runs each, 5 minutes per run.
PAPER_PROFILE = dict(
    tabu_sizes=(10, 20, 30, 50, 75, 100),
    neighborhood_sizes=(10, 25, 50, 75, 100),
    runs_per_cell=30,
    max_seconds=300.0,
    max_evals=None,
)
# Desk-scale grid that finishes in minutes on a laptop.
DESK_PROFILE = dict(
    tabu_sizes=(10, 50, 100),
    neighborhood_sizes=(10, 25, 75),
    runs_per_cell=5,
    max_seconds=None,
    max_evals=5000,
)
PROFILES = {"paper": PAPER_PROFILE, "desk": DESK_PROFILE}


@dataclass(frozen=True)
class SweepResultRow:
    tabu_size: int
    neighborhood_size: int
    run_index: int
    seed: int
    best_score: int
    evaluations: int
    elapsed_ms: Optional[int] = None

    def as_csv(self) -> list:
        return [
            self.tabu_size,
            self.neighborhood_size,
            self.run_index,
            self.seed,
            self.best_score,
            self.evaluations,
            "" if self.elapsed_ms is None else self.elapsed_ms,
        ]


def _run_task(args) -> SweepResultRow:
    (tabu, nbh, run_index, seed), max_seconds, max_evals, layout, tiles = args
    res = run(
        SearchConfig(
            tabu_size=tabu,
            neighborhood_size=nbh,
            max_seconds=max_seconds,
            max_evals=max_evals,
            seed=seed,
            layout=layout,
            tiles=tiles,
        )
    )
    # Wall-clock time is only recorded when it is part of the stop rule, so
    # evaluation-budget sweeps stay byte-reproducible.
    elapsed = round(res.elapsed * 1000) if max_seconds is not None else None
    return SweepResultRow(tabu, nbh, run_index, seed, res.best_score, res.evaluations, elapsed)


def _row_from_record(rec: Dict[str, str]) -> SweepResultRow:
    try:
        return SweepResultRow(
            tabu_size=int(rec["tabu_size"]),
            neighborhood_size=int(rec["neighborhood_size"]),
            run_index=int(rec["run_index"]),
            seed=int(rec["seed"]),
            best_score=int(rec["best_score"]),
            evaluations=int(rec["evaluations"]),
            elapsed_ms=int(rec["elapsed_ms"]) if rec.get("elapsed_ms") else None,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed sweep CSV row {rec!r}") from exc


def read_rows(path) -> List[SweepResultRow]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or tuple(reader.fieldnames) != CSV_COLUMNS:
            raise ConfigError(f"{path}: expected CSV header {','.join(CSV_COLUMNS)}")
        return [_row_from_record(rec) for rec in reader]


def _csv_line(values) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerow(values)
    return buf.getvalue()


def _resume_rows(path: Path, tasks) -> List[SweepResultRow]:
    """Completed rows already present in ``path``; drops a torn trailing line."""
    raw = path.read_bytes()
    if not raw:
        return []
    if not raw.endswith(b"\n"):
        cut = raw.rfind(b"\n") + 1
        with open(path, "r+b") as fh:
            fh.truncate(cut)
        log.warning("%s: discarded an incomplete trailing row", path)
        if cut == 0:
            return []
    rows = read_rows(path)
    if len(rows) > len(tasks):
        raise ConfigError(f"{path} holds more rows than the configured sweep")
    for row, task in zip(rows, tasks):
        if (row.tabu_size, row.neighborhood_size, row.run_index, row.seed) != task:
            raise ConfigError(f"{path} was written by a different sweep configuration")
    return rows


def run_sweep(cfg: SweepConfig, progress=None) -> List[SweepResultRow]:
    """Run every (tabu, neighborhood, run) combination of the grid.

    ``progress(done, total, row)`` is called after each completed row.
    """
    cfg.validate()
    tasks = cfg.tasks()
    rows: List[SweepResultRow] = []
    out_fh = None
    if cfg.out is not None:
        path = Path(cfg.out)
        if path.exists():
            rows = _resume_rows(path, tasks)
            if rows:
                log.info("resuming %s after %d completed rows", path, len(rows))
        try:
            out_fh = open(path, "a", newline="", encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot write sweep output {path}: {exc}") from exc
        if not rows and path.stat().st_size == 0:
            out_fh.write(_csv_line(CSV_COLUMNS))
            out_fh.flush()

    todo = [
        (task, cfg.max_seconds, cfg.max_evals, cfg.layout, dict(cfg.tiles))
        for task in tasks[len(rows):]
    ]
    try:
        if cfg.workers == 1:
            results = map(_run_task, todo)
            executor = None
        else:
            executor = ProcessPoolExecutor(max_workers=cfg.workers)
            results = executor.map(_run_task, todo)
        try:
            for row in results:
                rows.append(row)
                if out_fh is not None:
                    out_fh.write(_csv_line(row.as_csv()))
                    out_fh.flush()
                    os.fsync(out_fh.fileno())
                if progress is not None:
                    progress(len(rows), len(tasks), row)
        finally:
            if executor is not None:
                executor.shutdown(cancel_futures=True)
    finally:
        if out_fh is not None:
            out_fh.close()
    return rows


@dataclass
class Summary:
    cells: Dict[Tuple[int, int], Tuple[float, float, int]]
    by_neighborhood: Dict[int, List[float]]
    by_tabu: Dict[int, List[float]]

    def best_cell(self) -> Tuple[int, int]:
        return min(self.cells, key=lambda k: (self.cells[k][0], k))

    def table(self) -> str:
        lines = [f"{'tabu':>6}{'nbh':>6}{'n':>5}{'mean':>10}{'std':>10}"]
        for (t, n), (mean, std, count) in sorted(self.cells.items()):
            lines.append(f"{t:>6}{n:>6}{count:>5}{mean:>10.2f}{std:>10.2f}")
        return "\n".join(lines)


def summarize(rows: Sequence[SweepResultRow]) -> Summary:
    if not rows:
        raise EmptyDataError("no sweep rows to summarize")
    cells = defaultdict(list)
    by_nbh = defaultdict(list)
    by_tabu = defaultdict(list)
    for r in rows:
        cells[(r.tabu_size, r.neighborhood_size)].append(float(r.best_score))
        by_nbh[r.neighborhood_size].append(float(r.best_score))
        by_tabu[r.tabu_size].append(float(r.best_score))
    stats = {k: (*mean_std(v), len(v)) for k, v in cells.items()}
    return Summary(stats, dict(sorted(by_nbh.items())), dict(sorted(by_tabu.items())))


def anova_by(rows: Sequence[SweepResultRow], factor: str, alpha: float = 0.05) -> AnovaResult:
    """One-way ANOVA of best scores grouped by one factor, pooling the other."""
    summary = summarize(rows)
    if factor == "neighborhood":
        groups = summary.by_neighborhood
    elif factor == "tabu":
        groups = summary.by_tabu
    else:
        raise ConfigError(f"factor must be one of {FACTORS}, got {factor!r}")
    return one_way_anova(list(groups.values()), alpha)
