import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given

from gtbend.nerve import (
    CapExceeded,
    CellComplex2,
    ComplexError,
    ComplexParseError,
    EdgePath,
    bigon_census,
    check_small_cancellation,
    classify_bigons,
    corridor_boundary,
    corridor_chain,
    count_geodesics,
    enumerate_geodesics,
    find_corridors,
    from_vertex_cycles,
    gallery_union,
    geo_hull,
    is_local_geodesic,
    pieces,
    polygon,
    polygon_tree,
    simple_bigons_of_corridor,
    undecomposable,
)

from .conftest import seeds


def as_graph(Z):
    G = nx.Graph()
    G.add_nodes_from(range(Z.n_vertices))
    G.add_edges_from(Z.edges)
    return G


def two_faces_sharing_corner():
    # faces share edges (0,1) and (1,2): a bigon in the link of vertex 1
    return from_vertex_cycles(25, [list(range(14)), [2, 1, 0] + list(range(14, 25))])


class TestComplex:
    def test_face_cycle(self):
        Z = polygon(14)
        assert Z.face_vertices[0] == tuple(range(14))
        assert Z.half_perimeter(0) == 7
        assert Z.antipode(0, 0) == 7

    def test_short_face_rejected(self):
        with pytest.raises(ComplexError):
            polygon(6)

    def test_odd_face_rejected(self):
        with pytest.raises(ComplexError):
            polygon(15)

    def test_non_cycle_rejected(self):
        with pytest.raises(ComplexError):
            CellComplex2(range(8), [(i, i + 1) for i in range(7)] + [(0, 2)], [list(range(7)) + [7]])

    def test_round_trip(self):
        Z = polygon_tree(4, seed=2)
        Y = CellComplex2.loads(Z.dumps())
        assert Y.edges == Z.edges and Y.faces == Z.faces
        assert Y.dumps() == Z.dumps()

    def test_fixture_files(self, fixtures_dir):
        assert CellComplex2.load(fixtures_dir / "fourteen_gon.cx").faces == polygon(14).faces
        assert len(CellComplex2.load(fixtures_dir / "corridor_two_faces.cx").faces) == 2

    def test_malformed_fixture_reports_line(self, fixtures_dir):
        with pytest.raises(ComplexParseError) as info:
            CellComplex2.load(fixtures_dir / "malformed.cx")
        assert info.value.lineno == 6
        assert "zz" in str(info.value)

    @pytest.mark.parametrize("text, line", [
        ("edges\ne0 a b\n", 2),
        ("vertices\na b\nedges\ne0 a\n", 4),
        ("vertices\na b\nfaces\nf0 e0 e1\nedges\n", 4),
        ("vertices\na b\nedges\nvertices\n", 4),
        ("", 1),
    ])
    def test_parse_errors(self, text, line):
        with pytest.raises(ComplexParseError) as info:
            CellComplex2.loads(text)
        assert info.value.lineno == line

    def test_bad_face_line(self):
        text = polygon(14).dumps().replace("f0 e0 e1", "f0 e1 e0")
        with pytest.raises(ComplexParseError) as info:
            CellComplex2.loads(text)
        assert info.value.lineno == text.splitlines().index(next(l for l in text.splitlines() if l.startswith("f0"))) + 1


class TestSmallCancellation:
    def test_single_face(self):
        rep = check_small_cancellation(polygon(14), 14)
        assert rep.ok and rep.max_piece == 0 and not rep.pieces

    def test_shared_edge_is_a_piece(self):
        # strict convention: a piece of length 1 on a 14-gon fails C'(1/14)
        rep = check_small_cancellation(corridor_chain(2), 14)
        assert not rep.ok
        assert rep.max_piece == 1
        assert rep.witness.length == 1
        assert check_small_cancellation(corridor_chain(2), 13).ok

    def test_link_bigon(self):
        Z = two_faces_sharing_corner()
        rep = check_small_cancellation(Z, 7)
        assert not rep.ok
        assert rep.link_bigons and rep.link_bigons[0].vertex == 1
        assert max(p.length for p in pieces(Z)) == 2

    def test_tree_has_unit_pieces(self):
        Z = polygon_tree(6, seed=4)
        assert {p.length for p in pieces(Z)} == {1}
        assert check_small_cancellation(Z, 13).ok
        assert not Z.link_bigons()


class TestLocalGeodesic:
    def test_backtrack(self):
        Z = polygon(14)
        assert not is_local_geodesic(Z, EdgePath((0, 1, 0), (0, 0)))

    def test_too_long_in_face(self):
        Z = polygon(14)
        assert not is_local_geodesic(Z, Z.path_from_vertices(range(9)))

    def test_half_perimeter_allowed(self):
        Z = polygon(14)
        assert is_local_geodesic(Z, Z.path_from_vertices(range(8)))

    def test_across_faces(self):
        Z = corridor_chain(2)
        g = enumerate_geodesics(Z, 0, 19)
        assert all(is_local_geodesic(Z, p) for p in g)


class TestGeodesics:
    def test_trivial(self):
        assert [len(p) for p in enumerate_geodesics(polygon(14), 3, 3)] == [0]

    def test_antipodal(self):
        g = enumerate_geodesics(polygon(14), 0, 7)
        assert len(g) == 2 and all(len(p) == 7 for p in g)
        assert g == sorted(g, key=lambda p: p.edges)

    def test_adjacent(self):
        g = enumerate_geodesics(polygon(14), 0, 1)
        assert len(g) == 1 and len(g[0]) == 1

    def test_cap(self):
        with pytest.raises(CapExceeded):
            enumerate_geodesics(polygon(14), 0, 7, cap=1)

    def test_count_matches(self):
        Z = corridor_chain(3)
        for y in range(Z.n_vertices):
            assert count_geodesics(Z, 0, y) == len(enumerate_geodesics(Z, 0, y))

    @given(seeds)
    def test_bfs_oracle(self, seed):
        rng = np.random.default_rng(seed)
        Z = polygon_tree(int(rng.integers(1, 12)), seed=seed)
        G = as_graph(Z)
        for _ in range(10):
            x, y = (int(v) for v in rng.integers(0, Z.n_vertices, size=2))
            paths = enumerate_geodesics(Z, x, y)
            d = nx.shortest_path_length(G, x, y)
            assert {len(p) for p in paths} == {d}
            oracle = {tuple(p) for p in nx.all_shortest_paths(G, x, y)}
            assert {p.vertices for p in paths} == oracle


class TestHull:
    def test_adjacent(self):
        h = geo_hull(polygon(14), 0, 1)
        assert h.vertices == {0, 1} and h.diameter == 1

    def test_antipodal(self):
        h = geo_hull(polygon(14), 0, 7)
        assert h.vertices == frozenset(range(14))
        assert h.diameter == 7 == h.distance
        # brute force on the cycle
        assert max(min(abs(a - b), 14 - abs(a - b)) for a in range(14) for b in range(14)) == 7

    @given(seeds)
    def test_convex(self, seed):
        rng = np.random.default_rng(seed)
        Z = polygon_tree(5, seed=seed)
        x, y = (int(v) for v in rng.integers(0, Z.n_vertices, size=2))
        h = geo_hull(Z, x, y)
        for u, v in itertools.combinations(sorted(h.vertices), 2):
            for p in enumerate_geodesics(Z, u, v):
                assert set(p.vertices) <= h.vertices

    def test_gallery_union(self):
        assert gallery_union(polygon(14), 0, 1) == {0, 1}
        assert gallery_union(polygon(14), 0, 7) == geo_hull(polygon(14), 0, 7).vertices

    def test_gallery_union_distances(self):
        Z = polygon_tree(8, seed=1)
        G = as_graph(Z)
        A, B = 0, Z.n_vertices - 1
        d = nx.shortest_path_length(G, A, B)
        U = gallery_union(Z, A, B)
        for v in U:
            assert nx.shortest_path_length(G, A, v) + nx.shortest_path_length(G, v, B) == d


class TestBigons:
    def test_degenerate(self):
        bs = classify_bigons(polygon(14), 0, 3)
        assert [b.kind for b in bs] == ["degenerate"]

    def test_elementary(self):
        kinds = bigon_census(classify_bigons(polygon(14), 0, 7))
        assert kinds["elementary"] == 1 and kinds["undecomposable"] == 0

    def test_corridor_simple_bigons(self):
        Z = corridor_chain(2)
        (D,) = find_corridors(Z)
        simple = simple_bigons_of_corridor(Z, D)
        assert len(simple) == 4
        assert all(b.kind == "simple" and b.support == D.faces for b in simple)
        boundary = set(corridor_boundary(Z, D))
        for b in simple:
            assert set(b.alpha.vertices) | set(b.beta.vertices) <= boundary

    def test_non_antipodal_ladder_is_undecomposable(self):
        # three 14-gons in a row, the middle one entered and left at offsets 5 and 7;
        # both sides of the ladder are geodesics, but it is not a corridor
        Z = from_vertex_cycles(38, [list(range(14)), [8, 7] + list(range(14, 26)), [19, 18] + list(range(26, 38))])
        assert not Z.link_bigons() and check_small_cancellation(Z, 7).ok
        assert all(len(D) == 2 for D in find_corridors(Z))
        G = as_graph(Z)
        assert nx.shortest_path_length(G, 0, 32) == 19
        (b,) = undecomposable(classify_bigons(Z, 0, 32))
        assert {b.alpha.vertices, b.beta.vertices} <= {tuple(p) for p in nx.all_shortest_paths(G, 0, 32)}
        assert set(b.alpha.vertices) & set(b.beta.vertices) == {0, 32}

    @pytest.mark.parametrize("faces", [2, 3, 4, 5])
    def test_no_undecomposable_on_corridor_chains(self, faces):
        Z = corridor_chain(faces)
        for x, y in itertools.combinations(range(Z.n_vertices), 2):
            assert not undecomposable(classify_bigons(Z, x, y))

    @given(seeds)
    def test_undecomposable_parts_are_geodesic_bigons_on_trees(self, seed):
        rng = np.random.default_rng(seed)
        Z = polygon_tree(4, seed=seed)
        G = as_graph(Z)
        assert not Z.link_bigons()
        for _ in range(5):
            x, y = (int(v) for v in rng.integers(0, Z.n_vertices, size=2))
            for b in undecomposable(classify_bigons(Z, x, y)):
                u, v = b.alpha.vertices[0], b.alpha.vertices[-1]
                d = nx.shortest_path_length(G, u, v)
                assert len(b.alpha) == len(b.beta) == d
                assert set(b.alpha.vertices) & set(b.beta.vertices) == {u, v}


class TestCorridors:
    def test_none(self):
        assert find_corridors(polygon(14)) == []

    def test_chain_of_three(self):
        (D,) = find_corridors(corridor_chain(3))
        assert len(D) == 3 and len(D.edges) == 2

    def test_antipodal_edges(self):
        Z = corridor_chain(4)
        for D in find_corridors(Z):
            for i in range(1, len(D) - 1):
                assert Z.antipode(D.faces[i], D.edges[i - 1]) == D.edges[i]

    def test_maximal(self):
        Z = polygon_tree(6, seed=3)
        cs = find_corridors(Z)
        for a, b in itertools.permutations(cs, 2):
            assert not set(a.faces) < set(b.faces) or a.edges != b.edges[: len(a.edges)]


@pytest.mark.parametrize("k", [14, 22])
def test_polygon_sizes(k):
    Z = polygon(k)
    assert len(enumerate_geodesics(Z, 0, k // 2)) == 2
