import re

import pytest

from halfhex.ensemble import Configuration, EnsembleSpec, enumerate_configurations, sample
from halfhex.errors import InvalidInput
from halfhex.render import lozenges, parse_paths_ascii, render


def triangles_of(config):
    return [tri for tile in lozenges(config) for tri in tile.triangles]


def test_order_one_strip():
    for config in enumerate_configurations(EnsembleSpec.half_hexagon(1)):
        tiles = lozenges(config)
        assert len(tiles) == 3
        assert sorted(t.kind for t in tiles) in (["empty", "jump", "stay"],)


@pytest.mark.parametrize("n", [1, 2, 5, 10, 20])
def test_lozenge_count_and_no_overlap(n):
    config = sample(EnsembleSpec.half_hexagon(n), seed=n)
    tris = triangles_of(config)
    assert len(tris) == len(set(tris))
    assert len(lozenges(config)) == 3 * n * (n + 1) // 2


@pytest.mark.parametrize("spec", [EnsembleSpec.half_hexagon(3), EnsembleSpec(2, 4, (3, 5))])
def test_every_tiling_covers_the_same_region(spec):
    regions = {frozenset(triangles_of(c)) for c in enumerate_configurations(spec)}
    assert len(regions) == 1


def test_lozenge_vertices_are_unit_rhombi():
    config = sample(EnsembleSpec.half_hexagon(4), seed=0)
    for tile in lozenges(config):
        a, b, c, d = tile.vertices
        # opposite sides are equal lattice vectors
        assert (b[0] - a[0], b[1] - a[1]) == (c[0] - d[0], c[1] - d[1])


@pytest.mark.parametrize("n", [1, 3, 6])
def test_paths_ascii_round_trip(n):
    config = sample(EnsembleSpec.half_hexagon(n), seed=11)
    assert parse_paths_ascii(render(config, "paths", "ascii")) == config


def test_paths_ascii_rejects_bad_grid():
    with pytest.raises(InvalidInput):
        parse_paths_ascii("no header\n")


def test_svg_polygon_count_and_determinism():
    config = sample(EnsembleSpec.half_hexagon(20), seed=5)
    svg = render(config, "lozenges", "svg")
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    assert len(re.findall(r"<polygon ", svg)) == 630
    assert svg == render(config, "lozenges", "svg")


def test_paths_svg_has_one_polyline_per_walker():
    config = sample(EnsembleSpec.half_hexagon(4), seed=2)
    assert render(config, "paths", "svg").count("<polyline") == 4


def test_lozenge_ascii_counts_tiles():
    config = sample(EnsembleSpec.half_hexagon(3), seed=9)
    text = render(config, "lozenges", "ascii")
    body = "".join(text.splitlines()[1:])
    assert sum(body.count(ch) for ch in "-/|") == 18
    assert "count=18" in text


def test_render_rejects_invalid():
    with pytest.raises(InvalidInput):
        render(Configuration(((1, 2), (2, 2), (2, 4), (2, 4))), "paths", "ascii")
    config = sample(EnsembleSpec.half_hexagon(1), seed=0)
    with pytest.raises(InvalidInput):
        render(config, "dots", "svg")
    with pytest.raises(InvalidInput):
        render(config, "paths", "png")
