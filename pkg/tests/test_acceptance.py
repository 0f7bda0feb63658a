"""Exit criteria for the build.

Each test carries an ``acceptance`` marker; the conftest prints one PASS/FAIL
line per criterion at the end of the run. Runtime bounds are asserted
alongside correctness.
"""

import itertools
import random
import statistics
import time
from collections import Counter

import pytest

from conftest import random_standard_map
from oracles import all_compositions, naive_evaluate, wheel_distance
from tmtabu import search as search_mod
from tmtabu.board import STANDARD_LAYOUT, BoardLayout, MapState, multinomial, search_space_log10
from tmtabu.evaluator import ViolationReport, evaluate
from tmtabu.harness.sweep import SweepConfig, run_sweep
from tmtabu.search import (
    SearchConfig,
    TabuList,
    digest,
    neighborhood,
    perturb,
    perturb_indices,
    run,
    select,
    step,
)
from tmtabu.stats import anova_from_stats, f_critical, one_way_anova
from tmtabu.terrain import LAND_TERRAINS, TerrainType, parse_code, spade_distance, standard_tiles


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


@pytest.mark.acceptance(1, "objective composition: F_tot = REQ1+REQ2+REQ3+REQ4")
def test_ac1_objective_composition():
    for parts, total in [((4, 3, 1, 6), 14), ((0, 3, 0, 6), 9), ((0, 3, 0, 9), 12), ((0, 0, 0, 9), 9)]:
        rep = ViolationReport(*parts)
        assert rep.total == total == sum(parts)
    rng = random.Random(1)
    for _ in range(500):
        rep = evaluate(random_standard_map(rng))
        assert rep.total == rep.req1 + rep.req2 + rep.req3 + rep.req4


@pytest.mark.acceptance(2, "evaluator matches naive oracle on all layouts <= 12 cells, 10^4 maps")
def test_ac2_evaluator_oracle_equivalence():
    layouts = [c for n in range(1, 13) for c in all_compositions(n)]
    assert len(layouts) == 2**12 - 1
    rng = random.Random(2)
    with Timer() as t:
        for k in range(10_000):
            rows = layouts[k % len(layouts)]
            n = sum(rows)
            # small alphabets make same-terrain and river clusters common
            alphabet = rng.sample("PSLFMWD", rng.randint(1, 7)) + ["R"] * rng.randint(0, 4)
            codes = [rng.choice(alphabet) for _ in range(n)]
            m = MapState(BoardLayout(rows), tuple(parse_code(c) for c in codes))
            rep = evaluate(m)
            assert (rep.req1, rep.req2, rep.req3, rep.req4) == naive_evaluate(rows, codes), (rows, codes)
    assert t.seconds < 30


@pytest.mark.acceptance(3, "search space 113!/((11!)^7 36!) rounds to 3.7e89")
def test_ac3_search_space():
    with Timer() as t:
        exact = multinomial(standard_tiles().values())
        log10 = search_space_log10(STANDARD_LAYOUT, standard_tiles())
    assert f"{exact:.1e}" == "3.7e+89"
    assert 89.0 <= log10 <= 90.0 and round(10 ** (log10 - 89), 1) == 3.7
    assert t.seconds < 1


@pytest.mark.acceptance(4, "spade distance: Mountains-Desert = 2, metric axioms, max 3")
def test_ac4_spade_distance():
    with Timer() as t:
        assert spade_distance(TerrainType.MOUNTAINS, TerrainType.DESERT) == 2
        for a, b, c in itertools.product(LAND_TERRAINS, repeat=3):
            assert spade_distance(a, b) == spade_distance(b, a) == wheel_distance(a.code, b.code)
            assert (spade_distance(a, b) == 0) == (a == b)
            assert spade_distance(a, c) <= spade_distance(a, b) + spade_distance(b, c)
        assert max(spade_distance(a, b) for a in LAND_TERRAINS for b in LAND_TERRAINS) == 3
    assert t.seconds < 1


@pytest.mark.acceptance(5, "perturb conserves tiles, changes <= 6 cells, cyclic A-order shift")
def test_ac5_perturb():
    rng = random.Random(5)
    m = random_standard_map(rng)
    expected = Counter(standard_tiles())
    with Timer() as t:
        for _ in range(10_000):
            probe = random.Random()
            probe.setstate(rng.getstate())
            cells = perturb_indices(113, probe)
            new = perturb(m, rng)
            assert Counter(new.terrains) == expected
            assert sum(a != b for a, b in zip(m.terrains, new.terrains)) <= 6
            before = [m.terrains[i] for i in cells]
            after = [new.terrains[i] for i in cells]
            assert after == [before[5]] + before[:5]
            m = new
    assert t.seconds < 10


def _fork(rng):
    clone = random.Random()
    clone.setstate(rng.getstate())
    return clone


@pytest.mark.acceptance(6, "tabu mechanics: capacity, FIFO, aspiration, worsening moves, determinism")
def test_ac6_tabu_mechanics(monkeypatch):
    with Timer() as t:
        # capacity bound and FIFO eviction
        tabu = TabuList(5)
        for k in range(12):
            tabu.push(k)
            assert len(tabu) <= 5
        assert tabu.entries() == [7, 8, 9, 10, 11] and 0 not in tabu and 6 not in tabu

        # aspiration soundness over a whole run: record every selection
        checked = []

        def checking_select(cands, reports, tabu, best_score, aspiration=True):
            k, aspirated = select(cands, reports, tabu, best_score, aspiration)
            if k is not None:
                is_tabu = digest(cands[k]) in tabu
                assert aspirated == is_tabu
                if is_tabu:
                    assert reports[k].total < best_score
                checked.append(aspirated)
            return k, aspirated

        monkeypatch.setattr(search_mod, "select", checking_select)
        run(SearchConfig(tabu_size=100, neighborhood_size=3, max_evals=3000, seed=6))
        monkeypatch.undo()
        assert len(checked) > 500

        # worsening move: a locally optimised map whose next neighborhood is all worse
        base = run(SearchConfig(tabu_size=50, neighborhood_size=25, max_evals=5000, seed=21))
        current, cur_score = base.best_map, base.best_score
        cfg = SearchConfig(tabu_size=50, neighborhood_size=10, max_evals=10)
        for seed in range(1000):
            rng = random.Random(seed)
            scores = [evaluate(c).total for c in neighborhood(current, 10, _fork(rng))]
            if min(scores) > cur_score:
                break
        else:
            raise AssertionError("no all-worse neighborhood found")
        out = step(current, evaluate(current), TabuList(50), cur_score, cfg, rng)
        assert out.moved and out.report.total == min(scores) > cur_score

        # seed determinism of full runs under an evaluation budget
        a = run(SearchConfig(tabu_size=30, neighborhood_size=20, max_evals=4000, seed=606))
        b = run(SearchConfig(tabu_size=30, neighborhood_size=20, max_evals=4000, seed=606))
        assert a.best_map == b.best_map and a.history == b.history
        assert (a.evaluations, a.iterations) == (b.evaluations, b.iterations)
    assert t.seconds < 30


@pytest.mark.slow
@pytest.mark.acceptance(7, "desk-scale search halves the median score; best-monotone histories")
def test_ac7_search_effectiveness():
    initial, final = [], []
    with Timer() as t:
        for seed in range(20):
            res = run(SearchConfig(tabu_size=50, neighborhood_size=25, max_evals=20_000, seed=seed))
            bests = [b for _, _, b in res.history]
            assert all(x >= y for x, y in zip(bests, bests[1:]))
            assert res.evaluations == 20_000
            initial.append(res.initial_score)
            final.append(res.best_score)
    print(f"median initial {statistics.median(initial)}, median final {statistics.median(final)}, "
          f"{t.seconds:.1f}s")
    assert statistics.median(final) <= 0.5 * statistics.median(initial)
    assert t.seconds < 300


@pytest.mark.acceptance(8, "ANOVA: hand fixture, F-critical 2.39 / 2.22, Table I verdicts")
def test_ac8_anova():
    with Timer() as t:
        r = one_way_anova([[1, 2, 3], [4, 5, 6]], 0.05)
        assert r.ss_between == pytest.approx(13.5, rel=1e-9)
        assert r.ss_within == pytest.approx(4.0, rel=1e-9)
        assert r.f_value == pytest.approx(13.5, rel=1e-9)
        assert f_critical(0.05, 4, 895) == pytest.approx(2.39, abs=0.01)
        assert f_critical(0.05, 5, 894) == pytest.approx(2.22, abs=0.01)
        nbh = anova_from_stats(209.8, 13597, 4, 895, 0.05)
        tabu = anova_from_stats(23.84, 13783, 5, 894, 0.05)
        assert nbh.f_value == pytest.approx(3.45, abs=0.005) and nbh.significant
        assert tabu.f_value == pytest.approx(0.31, abs=0.005) and not tabu.significant
    assert t.seconds < 5


@pytest.mark.slow
@pytest.mark.acceptance(9, "2x2x2 sweep CSV byte-identical across runs and worker counts 1/4")
def test_ac9_pipeline_determinism(tmp_path):
    def sweep(name, workers):
        cfg = SweepConfig(
            tabu_sizes=(10, 50),
            neighborhood_sizes=(10, 25),
            runs_per_cell=2,
            max_seconds=None,
            max_evals=2000,
            base_seed=9,
            out=tmp_path / name,
            workers=workers,
        )
        run_sweep(cfg)
        return cfg.out.read_bytes()

    with Timer() as t:
        a = sweep("a.csv", 1)
        b = sweep("b.csv", 1)
        c = sweep("c.csv", 4)
    assert a == b == c
    assert len(a.decode().splitlines()) == 1 + 8
    assert t.seconds < 120
