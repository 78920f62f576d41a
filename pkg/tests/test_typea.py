"""Classical polygon snake graphs and the path-graph bridge."""

import random

import pytest

from lpsnake import ClusterContext, Tree, rf_equal, xvar, yvar
from lpsnake.errors import AdjacentEndpoints, ArcInTriangulation, NotAPath
from lpsnake.generators import random_maximal_nested_collection
from lpsnake import matchings as M
from lpsnake.oracle import OracleCache
from lpsnake.snakegraph import build_snake_graph
from lpsnake.typea import (Polygon, Triangulation, bridge_expansion,
                           build_ms_snake_graph, crossing_sequence, expand_arc,
                           is_zigzag, path_lp_bridge, perfect_matchings)

from conftest import fset


@pytest.fixture(scope='module')
def octagon():
    polygon = Polygon(range(1, 9))
    tri = Triangulation(polygon, [(1, 7), (2, 7), (3, 7), (4, 7), (4, 6)])
    return polygon, tri


def test_crossing_sequence_octagon(octagon):
    polygon, tri = octagon
    seq = crossing_sequence(polygon, tri, (5, 8))
    assert [sorted(a) for a in seq] == [[4, 6], [4, 7], [3, 7], [2, 7], [1, 7]]


def test_crossing_preconditions(octagon):
    polygon, tri = octagon
    with pytest.raises(ArcInTriangulation):
        crossing_sequence(polygon, tri, (2, 7))
    with pytest.raises(AdjacentEndpoints):
        crossing_sequence(polygon, tri, (5, 6))


def test_square_single_crossing():
    square = Polygon([1, 2, 3, 4])
    tri = Triangulation(square, [(1, 3)])
    assert crossing_sequence(square, tri, (2, 4)) == [fset(1, 3)]


def test_octagon_graph_and_matchings(octagon):
    polygon, tri = octagon
    g = build_ms_snake_graph(polygon, tri, (5, 8))
    assert len(g.tiles) == 5
    assert len(perfect_matchings(g)) == 9
    assert not is_zigzag(g)
    # dropping the leftmost tile (the arc one step in) leaves a zigzag
    g2 = build_ms_snake_graph(polygon, tri, (6, 8))
    assert len(g2.tiles) == 4 and is_zigzag(g2)


def test_octagon_count_agrees_with_frieze_recurrence(octagon):
    # independent oracle: matching numbers satisfy m = 2*5 - 1 here, the
    # continuant of the triangle counts at the two inner vertices
    from lpsnake.counting import continuant
    polygon, tri = octagon
    g = build_ms_snake_graph(polygon, tri, (5, 8))
    triangles = tri.triangles()
    inner = [6, 7]
    quiddity = [sum(1 for t in triangles if v in t) for v in inner]
    assert quiddity == [2, 5]
    assert len(perfect_matchings(g)) == continuant(quiddity) == 9


def test_single_tile_ptolemy():
    square = Polygon([1, 2, 3, 4])
    tri = Triangulation(square, [(1, 3)])
    g = build_ms_snake_graph(square, tri, (2, 4))
    assert len(perfect_matchings(g)) == 2
    got = expand_arc(square, tri, (2, 4))
    expected = (xvar(1, 2) * xvar(3, 4) + xvar(2, 3) * xvar(1, 4)) / xvar(1, 3)
    assert rf_equal(got, expected)


def test_zigzag_fans_have_n_plus_one_matchings():
    # the fan triangulation crossed from beside the apex is a zigzag
    for tiles in range(1, 11):
        m = tiles + 3
        polygon = Polygon(range(m))
        tri = Triangulation(polygon, [(m - 1, j) for j in range(1, m - 3 + 1)])
        g = build_ms_snake_graph(polygon, tri, (0, m - 2))
        assert len(g.tiles) == tiles
        assert is_zigzag(g)
        assert len(perfect_matchings(g)) == tiles + 1


def test_zigzag_single_tile_trivially():
    square = Polygon([1, 2, 3, 4])
    tri = Triangulation(square, [(1, 3)])
    assert is_zigzag(build_ms_snake_graph(square, tri, (2, 4)))


# -- the path bridge ----------------------------------------------------------

def test_bridge_polygon_shape(path3_ctx):
    polygon, tri, gamma, target = path_lp_bridge(path3_ctx, 4, 5)
    assert len(polygon) == 5
    assert target == fset(1, 2, 3)
    weights = {tuple(sorted(arc)): str(w) for arc, w in tri.weights.items()}
    assert weights[(4, 5)] == 'Y[{1,2,3}]'      # the closing side
    # each member spans its two neighbors: {2} between 1 and 3, {1,2}
    # between 3 and the companion of 1
    assert weights[(1, 3)] == 'Y[{2}]'
    assert weights[(3, 4)] == 'Y[{1,2}]'


def test_bridge_member_interval(path3_ctx):
    expr, target = bridge_expansion(path3_ctx, 4, 5)
    assert target == fset(1, 2, 3)
    assert expr == yvar({1, 2, 3})


def test_bridge_interval_expansion(path3_ctx):
    # [1', 3] strips to {1, 2}: a collection member here as well
    expr, target = bridge_expansion(path3_ctx, 4, 3)
    assert target == fset(1, 2)
    assert expr == yvar({1, 2})


def test_bridge_rejects_non_path(ctx0):
    with pytest.raises(NotAPath):
        path_lp_bridge(ctx0, 1, 2)


def test_bridge_matches_main_engine_on_paths():
    rng = random.Random(47)
    for _ in range(25):
        n = rng.randint(2, 6)
        tree = Tree(range(n), [(i, i + 1) for i in range(n - 1)])
        ctx = ClusterContext(tree, random_maximal_nested_collection(tree, rng))
        oc = OracleCache(ctx)
        ext = sorted(ctx.extended.vertices)
        for i, x in enumerate(ext):
            for y in ext[i + 1:]:
                expr, target = bridge_expansion(ctx, x, y)
                if not target:
                    continue
                lhs = oc.expand_off_cluster(expr)
                assert rf_equal(lhs, oc.y_set(target))
                if ctx.classify_set(target).is_buildable:
                    chi = M.chi(build_snake_graph(ctx, target))
                    assert rf_equal(lhs, oc.expand_off_cluster(chi))
