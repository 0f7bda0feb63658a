"""Command-line interface: ``tmtabu generate|evaluate|render|sweep|anova``."""

from __future__ import annotations

import argparse
import logging
import sys
import warnings
from pathlib import Path

from ..errors import TMError
from ..evaluator import REQ1_MODES, evaluate
from ..search import SearchConfig, run
from . import mapio, render, sweep

log = logging.getLogger("tmtabu")


def _int_list(text):
    try:
        values = [int(v) for v in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("list must not be empty")
    return values


def _add_stop_args(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--time-limit", type=float, metavar="SECS", help="wall-clock budget per run")
    g.add_argument("--max-evals", type=int, metavar="N", help="candidate evaluation budget per run")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tmtabu", description="Tabu Search map generator for Terra Mystica.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="run one Tabu Search and save the best map")
    p.add_argument("--tabu-size", type=int, required=True)
    p.add_argument("--neighborhood-size", type=int, required=True)
    _add_stop_args(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--layout", type=Path, metavar="FILE",
                   help="map file whose layout and tile counts are used instead of the standard board")
    p.add_argument("--no-aspiration", action="store_true", help="never override tabu status")
    p.add_argument("--req1-mode", choices=REQ1_MODES, default="pair")
    p.add_argument("--history", type=Path, metavar="CSV", help="write the per-iteration score history")
    p.add_argument("--out", type=Path, required=True, metavar="MAP")

    p = sub.add_parser("evaluate", help="print the REQ1..REQ4 violation counts of a map file")
    p.add_argument("mapfile", type=Path)
    p.add_argument("--req1-mode", choices=REQ1_MODES, default="pair")

    p = sub.add_parser("render", help="draw a map file as ASCII or SVG")
    p.add_argument("mapfile", type=Path)
    p.add_argument("--format", choices=render.FORMATS, default="ascii")
    p.add_argument("--out", type=Path, metavar="FILE")

    p = sub.add_parser("sweep", help="grid sweep over tabu and neighborhood sizes")
    p.add_argument("--profile", choices=sorted(sweep.PROFILES), default="desk",
                   help="defaults for any option not given explicitly (default: desk)")
    p.add_argument("--tabu-sizes", type=_int_list, metavar="LIST")
    p.add_argument("--neighborhood-sizes", type=_int_list, metavar="LIST")
    p.add_argument("--runs", type=int, metavar="N")
    _add_stop_args(p, required=False)
    p.add_argument("--base-seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", type=Path, required=True, metavar="CSV")

    p = sub.add_parser("anova", help="one-way ANOVA of a sweep CSV")
    p.add_argument("csv", type=Path)
    p.add_argument("--factor", choices=sweep.FACTORS, required=True)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--summary", action="store_true", help="also print per-cell mean and std")
    return parser


def cmd_generate(args) -> int:
    kwargs = {}
    if args.layout is not None:
        template = mapio.load_map(args.layout)
        kwargs = dict(layout=template.layout, tiles=dict(template.counts()))
    cfg = SearchConfig(
        tabu_size=args.tabu_size,
        neighborhood_size=args.neighborhood_size,
        max_seconds=args.time_limit,
        max_evals=args.max_evals,
        seed=args.seed,
        aspiration=not args.no_aspiration,
        req1_mode=args.req1_mode,
        **kwargs,
    )
    res = run(cfg)
    comment = (
        f"tabu_size={cfg.tabu_size} neighborhood_size={cfg.neighborhood_size} seed={cfg.seed} rng={res.rng}\n"
        f"evaluations={res.evaluations} iterations={res.iterations}\n{res.best_report}"
    )
    mapio.save_map(res.best_map, args.out, comment=comment)
    if args.history is not None:
        with open(args.history, "w", encoding="utf-8") as fh:
            fh.write("iteration,current_score,best_score\n")
            for it, cur, best in res.history:
                fh.write(f"{it},{cur},{best}\n")
    print(f"initial score {res.initial_score}, best score {res.best_score} "
          f"after {res.evaluations} evaluations ({res.elapsed:.1f}s)")
    print(res.best_report)
    return 0


def cmd_evaluate(args) -> int:
    rep = evaluate(mapio.load_map(args.mapfile), args.req1_mode)
    for label, value in rep.as_dict().items():
        print(f"{label:<6}{value:>5}")
    return 0


def cmd_render(args) -> int:
    text = render.render(mapio.load_map(args.mapfile), args.format)
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text, encoding="utf-8")
    return 0


def cmd_sweep(args) -> int:
    profile = dict(sweep.PROFILES[args.profile])
    if args.time_limit is not None or args.max_evals is not None:
        profile["max_seconds"] = args.time_limit
        profile["max_evals"] = args.max_evals
    cfg = sweep.SweepConfig(
        tabu_sizes=args.tabu_sizes or profile["tabu_sizes"],
        neighborhood_sizes=args.neighborhood_sizes or profile["neighborhood_sizes"],
        runs_per_cell=args.runs if args.runs is not None else profile["runs_per_cell"],
        max_seconds=profile["max_seconds"],
        max_evals=profile["max_evals"],
        base_seed=args.base_seed,
        out=args.out,
        workers=args.workers,
    )

    def progress(done, total, row):
        log.info("[%d/%d] tabu=%d nbh=%d run=%d best=%d",
                 done, total, row.tabu_size, row.neighborhood_size, row.run_index, row.best_score)

    rows = sweep.run_sweep(cfg, progress)
    print(f"{len(rows)} rows in {args.out}")
    print(sweep.summarize(rows).table())
    return 0


def cmd_anova(args) -> int:
    rows = sweep.read_rows(args.csv)
    if args.summary:
        print(sweep.summarize(rows).table())
        print()
    res = sweep.anova_by(rows, args.factor, args.alpha)
    label = "Size of the neighbourhood" if args.factor == "neighborhood" else "Tabu list size"
    print(res.table(label))
    return 0


COMMANDS = {
    "generate": cmd_generate,
    "evaluate": cmd_evaluate,
    "render": cmd_render,
    "sweep": cmd_sweep,
    "anova": cmd_anova,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
    )
    warnings.simplefilter("default")
    try:
        return COMMANDS[args.command](args)
    except (TMError, OSError) as exc:
        print(f"tmtabu: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
