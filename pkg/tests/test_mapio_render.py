import random
import warnings
from xml.etree import ElementTree

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import make_map
from tmtabu.board import BoardLayout, MapState
from tmtabu.errors import ParseError, RowLengthError
from tmtabu.harness.mapio import TileCountWarning, format_map, load_map, parse_map, save_map
from tmtabu.harness.render import hex_center, render, render_ascii, render_svg
from tmtabu.terrain import TerrainType

SVG_NS = "{http://www.w3.org/2000/svg}"


def test_save_load_round_trip(tmp_path, standard_map):
    path = tmp_path / "m.map"
    save_map(standard_map, path, comment="seed 1\nscore 12")
    text = path.read_text()
    assert text.startswith("# seed 1\n# score 12\nlayout: 13 12 13 12 13 12 13 12 13\n")
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert load_map(path) == standard_map


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=1, max_size=6), st.randoms(use_true_random=False))
def test_round_trip_random_small_layouts(rows, rnd):
    layout = BoardLayout(tuple(rows))
    m = MapState(layout, tuple(rnd.choice(list(TerrainType)) for _ in range(layout.cell_count)))
    assert parse_map(format_map(m)) == m


def test_round_trip_many_random_maps():
    rng = random.Random(0)
    for _ in range(10_000):
        rows = tuple(rng.randint(1, 5) for _ in range(rng.randint(1, 5)))
        layout = BoardLayout(rows)
        m = MapState(layout, tuple(rng.choice(list(TerrainType)) for _ in range(layout.cell_count)))
        assert parse_map(format_map(m)) == m


def test_lowercase_and_blank_lines():
    m = parse_map("# hi\n\nlayout: 2 1\np s\n\n r\n")
    assert m == make_map((2, 1), "PSR")


def test_row_length_error_names_row():
    text = "layout: 13 12\n" + " ".join("P" * 12) + "\n" + " ".join("R" * 12) + "\n"
    with pytest.raises(RowLengthError) as exc:
        parse_map(text)
    assert "row 0" in str(exc.value) and exc.value.line == 2


def test_unknown_code_position():
    with pytest.raises(ParseError) as exc:
        parse_map("layout: 3\nP X S\n")
    assert exc.value.line == 2 and exc.value.column == 3
    assert "'X'" in str(exc.value)


@pytest.mark.parametrize(
    "text",
    [
        "",
        "# only a comment\n",
        "P S\n",
        "layout: 2 x\nP S\n",
        "layout: 2 1\nP S\n",
        "layout: 2\nP S\nR\n",
    ],
)
def test_malformed_files(text):
    with pytest.raises(ParseError):
        parse_map(text)


def test_standard_layout_count_mismatch_warns(standard_map):
    terrains = list(standard_map.terrains)
    terrains[terrains.index(TerrainType.RIVER)] = TerrainType.PLAINS
    text = format_map(standard_map.with_terrains(terrains))
    with pytest.warns(TileCountWarning):
        m = parse_map(text)
    assert m.counts()[TerrainType.PLAINS] == 12


def test_ascii_small():
    assert render_ascii(make_map((2, 1), "PPR")) == "P P\n R\n"


def test_ascii_standard(standard_map):
    lines = render(standard_map, "ascii").splitlines()
    assert len(lines) == 9
    assert all(line.startswith(" ") == (i % 2 == 1) for i, line in enumerate(lines))


def test_svg_standard(standard_map):
    doc = render(standard_map, "svg")
    root = ElementTree.fromstring(doc.split("\n", 1)[1])
    polys = root.findall(f"{SVG_NS}polygon")
    assert len(polys) == 113
    fills = {p.get("fill") for p in polys}
    assert fills == {t.color for t in TerrainType}


def test_svg_small_stagger():
    doc = render_svg(make_map((2, 1), "PSR"), size=10)
    root = ElementTree.fromstring(doc.split("\n", 1)[1])
    polys = root.findall(f"{SVG_NS}polygon")
    assert len(polys) == 3
    xs = {}
    for p in polys:
        pts = [tuple(map(float, xy.split(","))) for xy in p.get("points").split()]
        xs[(int(p.get("data-row")), int(p.get("data-col")))] = sum(x for x, _ in pts) / 6
    width = 3 ** 0.5 * 10
    assert xs[(1, 0)] - xs[(0, 0)] == pytest.approx(width / 2, abs=0.01)
    assert xs[(0, 1)] - xs[(0, 0)] == pytest.approx(width, abs=0.01)


def test_hex_centers_touch_neighbors():
    # adjacent centers are exactly one hex width apart
    layout = BoardLayout((3, 2, 3))
    w = 3 ** 0.5
    for c in layout.coords():
        x0, y0 = hex_center(c.row, c.col, 1.0)
        for n in layout.neighbors(c):
            x1, y1 = hex_center(n.row, n.col, 1.0)
            assert ((x1 - x0) ** 2 + (y1 - y0) ** 2) ** 0.5 == pytest.approx(w)


def test_unknown_format(standard_map):
    with pytest.raises(ValueError):
        render(standard_map, "png")
