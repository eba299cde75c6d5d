import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gtbend.bend import (
    FacedBody,
    Hyperplane,
    Lamination,
    LaminationError,
    Polytope,
    Wall,
    bend_ball,
    bend_map_for_crossing_sequence,
    check_cor_C1,
    check_cor_C2,
    check_half_open_interval,
    cone_over,
    sampled_union_convexity,
    union_covers,
    walls_disjoint_in_ball,
)
from gtbend.lambert import solve_product
from gtbend.projlin import DualPair, ProjectiveMap, proj_distance, projective_scaling, rotation
from gtbend.verdict import HypothesisError, PreconditionError

from .conftest import seeds

SQUARE = np.array([[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]])


def vertical_wall(c, t, sign=1):
    return Wall(DualPair.polar([1.0, 0.0], c), t, sign)


def boost_x(v):
    g = 1 / math.sqrt(1 - v * v)
    return np.array([[g, 0, g * v], [0, 1, 0], [g * v, 0, g]])


def moved(M, x):
    return (M @ np.append(x, 1.0))[:2] / (M @ np.append(x, 1.0))[2]


class TestPolytope:
    def test_square(self):
        P = Polytope(SQUARE)
        assert P.dim == 2 and len(P.vertices) == 4
        assert P.contains([[0, 0], [1, 1], [1.1, 0]]).tolist() == [True, True, False]

    def test_lower_dimensional(self):
        seg = Polytope([[0, 0, 0], [1, 1, 0]])
        assert seg.dim == 1
        assert seg.contains([[0.5, 0.5, 0.0]])[0]
        assert not seg.contains([[0.5, 0.5, 0.1]])[0]

    def test_segment_intervals(self):
        lo, hi = Polytope(SQUARE).segment_intervals([[-2.0, 0.0]], [[2.0, 0.0]], slack=0.0)
        assert (lo[0], hi[0]) == pytest.approx((0.25, 0.75))

    def test_active_facets(self):
        P = Polytope(SQUARE)
        assert len(P.active_facets([1.0, 1.0])) == 2
        assert len(P.face_of(P.active_facets([1.0, 0.0]))) == 2


class TestConeOver:
    def test_tip_inside(self):
        B = Polytope(SQUARE)
        assert cone_over([0.2, 0.1], B).equals(B)

    def test_triangle(self):
        C = cone_over([0.0, 1.0], [[-1.0, 0.0], [1.0, 0.0]])
        assert C.dim == 2 and len(C.vertices) == 3

    @given(seeds, st.integers(2, 4))
    def test_random_cones_convex(self, seed, d):
        rng = np.random.default_rng(seed)
        B = Polytope(rng.normal(size=(d + 3, d)))
        x = 3 * rng.normal(size=d)
        C = cone_over(x, B)
        assert sampled_union_convexity([C], 200, seed).status == "pass"
        # every segment from the tip to B lies in the cone
        Y = B.sample(20, rng)
        assert np.all(union_covers([C], np.tile(x, (20, 1)), Y))


def test_union_covers_detects_gap():
    A = Polytope([[0, 0], [1, 0], [1, 1], [0, 1]])
    B = Polytope([[2, 0], [3, 0], [3, 1], [2, 1]])
    assert not union_covers([A, B], np.array([[0.5, 0.5]]), np.array([[2.5, 0.5]]))[0]
    assert sampled_union_convexity([A, B], 50, 0).status == "fail"


class TestHalfOpenInterval:
    def test_interior(self):
        D = FacedBody(Polytope(SQUARE))
        assert check_half_open_interval(D, [0.1, 0.2], [-0.3, 0.4])

    def test_vertex_to_interior(self):
        D = FacedBody(Polytope(SQUARE))  # open square
        assert not D.contains([1.0, 1.0])
        assert check_half_open_interval(D, [1.0, 1.0], [0.0, 0.0])

    def test_face_included(self):
        P = Polytope(SQUARE)
        corner = P.face_of(P.active_facets([1.0, 1.0]))
        top = P.face_of(P.active_facets([0.0, 1.0]))
        right = P.face_of(P.active_facets([1.0, 0.0]))
        with pytest.raises(ValueError):
            FacedBody(P, [corner, top])
        D = FacedBody(P, [corner, top, right])
        assert D.contains([1.0, 1.0]) and not D.contains([-1.0, 1.0])
        assert check_half_open_interval(D, [-1.0, -1.0], [1.0, 1.0])
        assert check_half_open_interval(D, [-1.0, 1.0], [0.5, 1.0])

    def test_outside(self):
        with pytest.raises(PreconditionError):
            check_half_open_interval(FacedBody(Polytope(SQUARE)), [0.0, 0.0], [2.0, 0.0])


class TestLamination:
    def test_empty(self):
        f = bend_ball(Lamination(()))
        assert len(f.maps) == 1
        assert proj_distance(f.maps[0], np.eye(3)) == 0.0

    def test_one_wall(self):
        w = vertical_wall(0.2, 0.7)
        f = bend_ball(Lamination((w,)))
        assert proj_distance(f.maps[0], np.eye(3)) == 0.0
        assert proj_distance(f.maps[1], projective_scaling(w.pair, 0.7)) < 1e-14

    def test_two_walls_conjugated_bend(self):
        w1, w2 = vertical_wall(-0.3, 0.5), vertical_wall(0.4, -0.8)
        f = bend_ball(Lamination((w1, w2)))
        A1, A2 = w1.scaling(), w2.scaling()
        assert proj_distance(f.maps[2], A1 @ A2) < 1e-14
        A2p = A1 @ A2 @ A1.inverse()
        assert proj_distance(f.maps[2], A2p @ A1) < 1e-14

    @given(seeds)
    def test_continuity(self, seed):
        rng = np.random.default_rng(seed)
        cs = np.sort(rng.uniform(-0.9, 0.9, size=4))
        if np.min(np.diff(cs)) < 1e-3:
            return
        lam = Lamination(tuple(vertical_wall(c, t) for c, t in zip(cs, rng.normal(size=4))))
        assert max(bend_ball(lam).continuity_residuals(100, seed)) < 1e-10

    def test_intersecting(self):
        w1 = Wall(DualPair.polar([1.0, 0.0], 0.0), 1.0)
        w2 = Wall(DualPair.polar([0.0, 1.0], 0.0), 1.0)
        assert not walls_disjoint_in_ball(w1, w2)
        with pytest.raises(LaminationError):
            Lamination((w1, w2))

    def test_out_of_order(self):
        with pytest.raises(LaminationError):
            Lamination((vertical_wall(0.5, 1.0), vertical_wall(-0.5, 1.0)))

    def test_wall_outside_ball(self):
        with pytest.raises(LaminationError):
            Lamination((vertical_wall(1.5, 1.0),))

    def test_holonomy_equivariance(self):
        # gamma-periodic lamination: H_i = gamma^i(H_0), same weight; rho(gamma) = A_1 gamma
        v, t, k = 0.35, 0.6, 5
        G = boost_x(v)
        cs = [-0.8]
        for _ in range(k - 1):
            cs.append((cs[-1] + v) / (1 + v * cs[-1]))
        f = bend_ball(Lamination(tuple(vertical_wall(c, t) for c in cs)))
        rho = f.maps[1].matrix @ G
        rng = np.random.default_rng(5)
        X = rng.uniform(-0.95, 0.95, size=(400, 2))
        comp = f.component_of(X)
        # gamma maps B_i onto B_{i+1} only between the first and last wall
        X = X[(np.linalg.norm(X, axis=1) < 0.99) & (comp >= 1) & (comp < k)]
        assert len(X) > 100
        for x in X:
            lhs = f(moved(G, x)[None, :])[0]
            rhs = moved(rho, f(x[None, :])[0])
            assert np.allclose(lhs, rhs, atol=1e-9)


class TestCrossingSequence:
    def test_empty(self):
        assert proj_distance(bend_map_for_crossing_sequence([]), np.eye(3)) == 0.0

    def test_back_and_forth(self):
        w = vertical_wall(0.1, 0.9)
        assert proj_distance(bend_map_for_crossing_sequence([(w, 1), (w, -1)]), np.eye(3)) < 1e-14

    @given(seeds, st.integers(1, 6), st.integers(0, 6))
    def test_cocycle_and_inverse(self, seed, k1, k2):
        rng = np.random.default_rng(seed)
        walls = []
        for _ in range(k1 + k2):
            P = rng.normal(size=3)
            pair = DualPair(P, P + 0.5 * rng.normal(size=3))
            walls.append((Wall(pair, float(rng.uniform(-1, 1))), int(rng.choice([-1, 1]))))
        s1, s2 = walls[:k1], walls[k1:]
        whole = bend_map_for_crossing_sequence(walls)
        parts = bend_map_for_crossing_sequence(s1) @ bend_map_for_crossing_sequence(s2, n=2)
        assert proj_distance(whole, parts) < 1e-10
        back = bend_map_for_crossing_sequence([(w, -s) for w, s in reversed(walls)])
        assert proj_distance(whole @ back, np.eye(3)) < 1e-10

    @pytest.mark.parametrize("m", [8, 12, 16, 20])
    def test_four_walls_give_rotation(self, m):
        t = solve_product(-math.pi / m).t
        angles = (0.0, math.pi / 4, math.pi / 2, 3 * math.pi / 4)
        seq = [(Wall(DualPair.through_axis(a), ti), 1) for a, ti in zip(angles, t)]
        # crossings compose left to right, the transpose of A4 A3 A2 A1 = R_{-pi/m}
        M = bend_map_for_crossing_sequence(seq)
        assert proj_distance(M, rotation(math.pi / m)) < 1e-10
        rev = bend_map_for_crossing_sequence(seq[::-1])
        assert proj_distance(rev, rotation(-math.pi / m)) < 1e-10

    def test_bad_sign(self):
        with pytest.raises(ValueError):
            bend_map_for_crossing_sequence([(vertical_wall(0.0, 1.0), 2)])


H0 = Hyperplane(np.array([1.0, 0.0]), 0.0)
F0 = Polytope([[0.0, -1.0], [0.0, 1.0]])
P_RIGHT = np.array([1.0, 0.0, 0.0])
D_LEFT = Polytope([[-1.0, -1.0], [0.0, -1.0], [0.0, 1.0], [-1.0, 1.0]])


class TestCorC1:
    def test_reflection(self):
        E = Polytope(D_LEFT.vertices * [-1.0, 1.0])
        v = check_cor_C1(D_LEFT, E, H0, F0, P_RIGHT, trials=1000)
        assert v.status == "pass"
        assert v.details["E_in_limit_cone"]

    def test_outside_cone(self):
        E = Polytope([[0.0, -1.0], [0.0, 1.0], [1.0, 2.0]])
        v = check_cor_C1(D_LEFT, E, H0, F0, P_RIGHT, trials=1000)
        assert v.status == "fail"
        assert not v.details["E_in_limit_cone"]
        a, b = map(np.asarray, v.witness["segment"])
        assert not union_covers([D_LEFT, E], a[None], b[None])[0]

    def test_degenerate_slab(self):
        assert check_cor_C1(F0, F0, H0, F0, P_RIGHT, trials=100).status == "pass"

    def test_wrong_side(self):
        with pytest.raises(HypothesisError):
            check_cor_C1(D_LEFT, D_LEFT, H0, F0, P_RIGHT)

    def test_crossing_outside_face(self):
        D = Polytope([[-1.0, -3.0], [0.0, -1.0], [0.0, 1.0]])
        E = Polytope(D.vertices * [-1.0, 1.0])
        with pytest.raises(HypothesisError, match="outside F"):
            check_cor_C1(D, E, H0, F0, P_RIGHT)


def fan_wedge(m, k=24):
    phi = np.linspace(0.0, math.pi / m, k)
    return Polytope(np.vstack([[0.0, 0.0], 0.999 * np.column_stack([np.cos(phi), np.sin(phi)])]))


class TestCorC2:
    def test_zero(self):
        v = check_cor_C2(fan_wedge(8), DualPair.through_axis(0.0), 0.0, trials=200)
        assert v.status == "pass"

    @pytest.mark.parametrize("m", [8, 12])
    def test_wedge_with_bending_strength(self, m):
        pair = DualPair.through_axis(0.0)
        for t in solve_product(-math.pi / m).t:
            assert check_cor_C2(fan_wedge(m), pair, t, trials=10_000).status == "pass"

    def test_face_violated(self):
        lifted = Polytope(fan_wedge(8).vertices + [0.0, 0.1])
        with pytest.raises(HypothesisError):
            check_cor_C2(lifted, DualPair.through_axis(0.0), 0.5)

    def test_deterministic(self):
        args = (fan_wedge(8), DualPair.through_axis(0.0), 0.7)
        assert check_cor_C2(*args, trials=300, seed=4).to_dict() == check_cor_C2(*args, trials=300, seed=4).to_dict()


def test_projective_map_identity_default():
    assert ProjectiveMap.identity(3).n == 3
