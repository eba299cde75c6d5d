import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gtbend.lambert import (
    BendParameters,
    DomainError,
    compose_translations_oracle,
    group_matrices,
    product_matrix_2d,
    product_residual_2d,
    sl2_origin_displacement,
    solve_lambert,
    solve_lambert_newton,
    solve_product,
    verify_product,
)

LN_1_SQRT2 = math.log(1 + math.sqrt(2))

# frozen from solve_lambert_newton (oracle root-finder, independent of the closed forms)
ORACLE_PI_4 = (0.7642854597404989, 1.2242262238390378)
ORACLE_PI_6 = (0.6584789484624087, 0.8813735870195437)

# the oracle's own rounding grows like exp(2 ell2) eps, about 5e-10 at -pi/2 + 1e-3
thetas = st.floats(-math.pi / 2 + 1e-2, 0.0, allow_nan=False)
taus = st.floats(-math.pi / 4 + 1e-3, 0.0, allow_nan=False)


class TestSolveLambert:
    def test_zero(self):
        s = solve_lambert(0.0)
        assert (s.ell1, s.ell2) == (0.0, 0.0)
        assert s.alpha == math.pi / 2

    def test_quarter(self):
        s = solve_lambert(-math.pi / 4)
        assert (s.ell1, s.ell2) == pytest.approx(ORACLE_PI_4, abs=1e-12)
        assert s.ell1 == pytest.approx(math.asinh(math.sqrt(math.cos(s.alpha))), abs=1e-15)

    def test_sixth(self):
        s = solve_lambert(-math.pi / 6)
        assert s.ell2 == pytest.approx(LN_1_SQRT2, abs=1e-13)
        assert (s.ell1, s.ell2) == pytest.approx(ORACLE_PI_6, abs=1e-12)

    @pytest.mark.parametrize("theta", [0.1, -math.pi / 2, -2.0, float("nan")])
    def test_domain(self, theta):
        with pytest.raises(DomainError):
            solve_lambert(theta)

    def test_endpoint_guard(self):
        with pytest.raises(DomainError):
            solve_lambert(-math.pi / 2 + 1e-7)

    @given(thetas)
    def test_oracle_round_trip(self, theta):
        s = solve_lambert(theta)
        moved, angle = compose_translations_oracle(s.ell1, s.ell2)
        assert moved < 1e-10
        assert angle == pytest.approx(theta, abs=1e-10)

    @given(thetas)
    def test_closed_form_relations(self, theta):
        s = solve_lambert(theta)
        assert math.sinh(s.ell1) ** 2 == pytest.approx(math.cos(s.alpha), abs=1e-10)
        assert math.cosh(s.ell1) == pytest.approx(math.cosh(s.ell2) * math.sin(s.alpha), rel=1e-14)


class TestOracle:
    def test_identity(self):
        assert compose_translations_oracle(0.0, 0.0) == (0.0, 0.0)

    @given(thetas, st.floats(0.01, 0.3), st.sampled_from([(1, 0), (0, 1), (1, 1), (1, -1)]))
    def test_off_curve_moves_origin(self, theta, eps, direction):
        s = solve_lambert(theta)
        moved, _ = compose_translations_oracle(s.ell1 + eps * direction[0], s.ell2 + eps * direction[1])
        # tangent perturbations near theta = 0 move the origin only to second order
        assert moved > 1e-10

    def test_newton_agrees_with_closed_form(self):
        for theta in np.linspace(-1.5, -1e-3, 25):
            a, b = solve_lambert(theta), solve_lambert_newton(theta)
            assert (b.ell1, b.ell2) == pytest.approx((a.ell1, a.ell2), abs=1e-9)

    @pytest.mark.parametrize("theta", [-math.pi / 4, -0.2, -1.2])
    def test_restarts_converge_to_same_root(self, theta):
        rng = np.random.default_rng(11)
        ref = solve_lambert(theta)
        for x0 in rng.uniform(0.05, 2.0, size=(8, 2)):
            s = solve_lambert_newton(theta, x0=x0)
            assert (s.ell1, s.ell2) == pytest.approx((ref.ell1, ref.ell2), abs=1e-9)


def test_printed_relation_discrepancy():
    # cosh(ell2) = cosh(ell1) sin(alpha) fails at alpha = pi/4; the transposed relation holds
    s = solve_lambert(-math.pi / 4)
    assert abs(math.cosh(s.ell2) - math.cosh(s.ell1) * math.sin(s.alpha)) > 0.5
    assert math.cosh(s.ell1) == pytest.approx(math.cosh(s.ell2) * math.sin(s.alpha), abs=1e-14)
    # the printed form would need cosh < 1
    assert math.cosh(s.ell1) * math.sin(s.alpha) < 1.0


class TestSolveProduct:
    def test_zero(self):
        bp = solve_product(0.0)
        assert bp.t == (0.0, 0.0, 0.0, 0.0)
        assert all(math.copysign(1.0, x) == 1.0 for x in bp.t)
        assert np.array_equal(product_matrix_2d(bp.t), np.eye(2))

    def test_eighth(self):
        t = solve_product(-math.pi / 8).t
        # index order: long side first; the other order misses R_tau
        assert t == pytest.approx((ORACLE_PI_4[1], -ORACLE_PI_4[0], ORACLE_PI_4[0], -ORACLE_PI_4[1]), abs=1e-12)
        assert product_residual_2d(t, -math.pi / 8) < 1e-10

    def test_twelfth(self):
        t = solve_product(-math.pi / 12).t
        assert t[0] == pytest.approx(LN_1_SQRT2, abs=1e-13)

    def test_sum_zero_exactly(self):
        for tau in np.linspace(-0.78, 0.0, 50):
            assert sum(solve_product(tau).t) == 0.0

    @pytest.mark.parametrize("tau", [0.01, -math.pi / 4, -1.0])
    def test_domain(self, tau):
        with pytest.raises(DomainError):
            solve_product(tau)

    def test_guard_near_endpoint(self):
        with pytest.raises(DomainError):
            solve_product(-math.pi / 4 + 5e-7)
        solve_product(-math.pi / 4 + 2e-6)

    def test_conditioning_near_endpoint(self):
        # no solver error here: closed forms agree to rounding, the fixed point is ill-conditioned
        s = solve_lambert(-math.pi / 2 + 1e-4)
        assert math.cosh(s.ell1) == pytest.approx(math.cosh(s.ell2) * math.sin(s.alpha), rel=1e-14)
        assert compose_translations_oracle(s.ell1, s.ell2)[0] > 1e-10

    def test_tiny_angle_keeps_digits(self):
        s = solve_lambert(-4e-17)
        assert s.ell2 == pytest.approx(s.ell1, rel=1e-12)
        assert s.ell1 == pytest.approx(math.sqrt(4e-17), rel=1e-12)

    @given(taus)
    def test_product_is_rotation(self, tau):
        t = solve_product(tau).t
        assert product_residual_2d(t, tau) < 1e-10
        assert np.linalg.det(product_matrix_2d(t)) == pytest.approx(1.0, abs=1e-12)

    def test_wrong_index_order_fails(self):
        # the (short, -long, long, -short) reading does not give R_tau
        s = solve_lambert(-math.pi / 4)
        assert product_residual_2d((s.ell1, -s.ell2, s.ell2, -s.ell1), -math.pi / 8) > 0.1

    def test_monotone_continuous(self):
        grid = np.linspace(0.0, -math.pi / 4 + 1e-3, 1000)
        T = np.array([solve_product(tau).t for tau in grid])
        step = abs(grid[1] - grid[0])
        jumps = np.abs(np.diff(T, axis=0)).max(axis=1)
        # square-root onset at tau = 0
        assert jumps[0] < 2 * math.sqrt(step)
        # a jump would stand out against both neighbours
        ratio = jumps[1:-1] / np.minimum(jumps[:-2], jumps[2:])
        assert ratio[2:].max() < 1.5
        assert np.all(np.diff(T[:, 0]) >= 0)
        assert np.all(np.diff(T[:, 1]) <= 0)

    def test_bend_parameters_validation(self):
        with pytest.raises(ValueError):
            BendParameters(-0.1, -0.2)
        with pytest.raises(ValueError):
            BendParameters(0.1, 0.2)
        assert list(BendParameters(0.5, -0.25)) == [0.5, -0.25, 0.25, -0.5]


def test_three_factor_product_never_rotation():
    vals = [-1.0, -0.4, 0.3, 0.9]
    for t1, t2, t3 in itertools.product(vals, vals, vals):
        A1, A2, A3, _ = group_matrices((t1, t2, t3, 0.0))
        P = A3 @ A2 @ A1
        assert sl2_origin_displacement(P / math.sqrt(np.linalg.det(P))) > 1e-3


class TestVerifyProduct:
    def test_trivial(self):
        assert verify_product((0, 0, 0, 0), 0.0) == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_suspended(self, n):
        assert verify_product(solve_product(-math.pi / 8), -math.pi / 8, n=n) < 1e-10

    def test_wrong_sign_pattern(self):
        bp = solve_product(-math.pi / 8)
        assert verify_product((bp.t1, -bp.t2, bp.t2, -bp.t1), -math.pi / 8) > 0.05

    def test_malformed(self):
        with pytest.raises(ValueError):
            verify_product((0.1, 0.2, 0.3), 0.0)
        with pytest.raises(ValueError):
            verify_product((0, 0, 0, 0), 0.0, axis_angles=(0.0, 1.0))
