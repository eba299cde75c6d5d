"""Bending parameters from Lambert quadrilaterals.

The four one-parameter groups

    G1 = A_{e1,e2},  G2 = R_{pi/4} G1 R_{-pi/4},  G3 = A_{e2,e1},  G4 = R_{-pi/4} G1 R_{pi/4}

admit a product ``A4 A3 A2 A1 = R_tau`` with ``sum t_i = 0`` for every
``tau`` in ``(-pi/4, 0]``. Acting on the hyperbolic plane, each ``A_i`` is a
translation along one of two orthogonal geodesics and ``R_tau`` acts as the
rotation by ``theta = 2 tau``. The translation lengths are the two side
lengths of a Lambert quadrilateral with acute angle ``alpha = pi/2 + theta``:

    sinh^2(ell1) = cos(alpha),    cosh(ell2) = cosh(ell1) / sin(alpha).

The short side ``ell1`` is the translation along the geodesics crossed in
the middle of the product, so ``t = (ell2, -ell1, ell1, -ell2)``.

:func:`compose_translations_oracle` rebuilds the four translations as Lorentz
boosts on the hyperboloid, independently of the projective matrices, and is
the ground truth the closed forms are tested against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .projlin import (
    DualPair,
    ProjectiveMap,
    klein_distance,
    linear_scaling_2d,
    proj_distance,
    projective_scaling_matrix,
    rotation,
    rotation_matrix_2d,
)

TAU_MIN = -math.pi / 4
ENDPOINT_GUARD = 1e-6
DEFAULT_AXIS_ANGLES = (0.0, math.pi / 4, math.pi / 2, 3 * math.pi / 4)


class DomainError(ValueError):
    """Angle outside the solvable range."""


@dataclass(frozen=True)
class LambertSolution:
    theta: float
    alpha: float
    ell1: float
    ell2: float


@dataclass(frozen=True)
class BendParameters:
    """Signed bending strengths ``(t1, t2, -t2, -t1)``."""

    t1: float
    t2: float

    def __post_init__(self) -> None:
        if self.t1 < 0 or self.t2 > 0:
            raise ValueError("expected t1 >= 0 and t2 <= 0")

    @property
    def t(self) -> tuple[float, float, float, float]:
        # 0.0 - x keeps the zero vector free of negative zeros
        return (self.t1, self.t2, 0.0 - self.t2, 0.0 - self.t1)

    def __iter__(self):
        return iter(self.t)


def _check_theta(theta: float) -> None:
    if not (-math.pi / 2 < theta <= 0.0):
        raise DomainError(f"theta must lie in (-pi/2, 0], got {theta!r}")
    if theta < -math.pi / 2 + 2 * ENDPOINT_GUARD:
        raise DomainError("theta too close to -pi/2: the long side diverges")


def solve_lambert(theta: float) -> LambertSolution:
    """Closed-form Lambert side lengths for rotation angle ``theta``."""
    _check_theta(theta)
    if theta == 0.0:
        return LambertSolution(0.0, math.pi / 2, 0.0, 0.0)
    alpha = math.pi / 2 + theta
    # cos(alpha) = -sin(theta), sin(alpha) = cos(theta). The second relation is
    # rewritten as sinh^2(ell2) = -sin(theta) / (1 + sin(theta)); acosh of
    # cosh(ell1) / cos(theta) loses every digit for theta near 0, and the
    # half-angle form of 1 + sin(theta) keeps them near -pi/2.
    s = -math.sin(theta)
    c = 2.0 * math.sin(theta / 2 + math.pi / 4) ** 2
    ell1 = math.asinh(math.sqrt(s))
    ell2 = math.asinh(math.sqrt(s / c))
    return LambertSolution(theta, alpha, ell1, ell2)


# -- hyperboloid oracle ------------------------------------------------------


def _boost(axis: int, d: float) -> np.ndarray:
    """Translation by signed length ``d`` along the x-axis (0) or y-axis (1)."""
    B = np.eye(3)
    c, s = math.cosh(d), math.sinh(d)
    B[axis, axis] = c
    B[axis, 2] = B[2, axis] = s
    B[2, 2] = c
    return B


def oracle_isometry(ell1: float, ell2: float) -> np.ndarray:
    """``g4 g3 g2 g1`` with g1 = L1(+ell2), g2 = L2(-ell1), g3 = L1(-ell1), g4 = L2(+ell2).

    L1 is the x-axis and L2 the y-axis of the disk.
    """
    g1 = _boost(0, ell2)
    g2 = _boost(1, -ell1)
    g3 = _boost(0, -ell1)
    g4 = _boost(1, ell2)
    return g4 @ g3 @ g2 @ g1


def _polar_angle(g: np.ndarray) -> tuple[np.ndarray, float]:
    """Split ``g = T R_phi`` with ``T`` the pure boost taking 0 to ``g(0)``."""
    X = g[:, 2]
    x, w = X[:2], X[2]
    r2 = x @ x
    T = np.eye(3)
    if r2 > 0:
        T[:2, :2] += (w - 1.0) * np.outer(x, x) / r2
    T[:2, 2] = x
    T[2, :2] = x
    T[2, 2] = w
    # the inverse boost is the boost with -x
    Ti = T.copy()
    Ti[:2, 2] *= -1
    Ti[2, :2] *= -1
    R = Ti @ g
    return x / w, math.atan2(R[1, 0], R[0, 0])


def compose_translations_oracle(ell1: float, ell2: float) -> tuple[float, float]:
    """Return ``(klein distance of g(0) from 0, rotation angle of g)``."""
    g = oracle_isometry(ell1, ell2)
    image, phi = _polar_angle(g)
    return klein_distance(np.zeros(2), image), phi


def solve_lambert_newton(theta: float, x0: Sequence[float] = (0.5, 0.5), *, tol: float = 1e-12,
                         max_iter: int = 100) -> LambertSolution:
    """Gauss-Newton on the oracle residuals, for use where closed forms are suspect.

    Unknowns are ``(ell1, ell2)``; residuals are the Klein image of the origin
    and the angle defect.
    """
    _check_theta(theta)

    def F(v: np.ndarray) -> np.ndarray:
        g = oracle_isometry(v[0], v[1])
        image, phi = _polar_angle(g)
        return np.array([image[0], image[1], phi - theta])

    v = np.abs(np.asarray(x0, dtype=float))
    for _ in range(max_iter):
        f = F(v)
        if np.linalg.norm(f) < tol:
            break
        h = 1e-7
        J = np.column_stack([(F(v + h * e) - F(v - h * e)) / (2 * h) for e in np.eye(2)])
        step = np.linalg.lstsq(J, -f, rcond=None)[0]
        size = np.linalg.norm(step)
        if size > 1.0:  # trust region: boosts overflow for lengths beyond ~700
            step /= size
        # damped step keeps the iterate in the nonnegative quadrant
        lam = 1.0
        while lam > 1e-6:
            trial = np.abs(v + lam * step)
            if np.linalg.norm(F(trial)) < np.linalg.norm(f):
                break
            lam /= 2
        v = trial
    else:
        raise RuntimeError("Lambert Newton iteration did not converge")
    return LambertSolution(theta, math.pi / 2 + theta, float(v[0]), float(v[1]))


# -- matrix products --------------------------------------------------------


def solve_product(tau: float) -> BendParameters:
    """Bending strengths with ``A4 A3 A2 A1 = R_tau`` (2x2, exact up to rounding)."""
    if not (TAU_MIN < tau <= 0.0):
        raise DomainError(f"tau must lie in (-pi/4, 0], got {tau!r}")
    if tau < TAU_MIN + ENDPOINT_GUARD:
        raise DomainError("tau within 1e-6 of -pi/4: bending strengths diverge")
    sol = solve_lambert(2.0 * tau)
    return BendParameters(sol.ell2, 0.0 - sol.ell1)


def group_matrices(t: Sequence[float]) -> list[np.ndarray]:
    """The four 2x2 factors ``A1..A4`` for parameters ``t``."""
    e1, e2 = np.array([1.0, 0.0]), np.array([0.0, 1.0])
    R = rotation_matrix_2d(math.pi / 4)
    Ri = rotation_matrix_2d(-math.pi / 4)
    t1, t2, t3, t4 = (float(x) for x in t)
    return [
        linear_scaling_2d(e1, e2, t1),
        R @ linear_scaling_2d(e1, e2, t2) @ Ri,
        linear_scaling_2d(e2, e1, t3),
        Ri @ linear_scaling_2d(e1, e2, t4) @ R,
    ]


def product_matrix_2d(t: Sequence[float]) -> np.ndarray:
    A1, A2, A3, A4 = group_matrices(t)
    return A4 @ A3 @ A2 @ A1


def product_residual_2d(t: Sequence[float], tau: float) -> float:
    """Frobenius distance of ``A4 A3 A2 A1`` from the rotation matrix ``R_tau``."""
    return float(np.linalg.norm(product_matrix_2d(t) - rotation_matrix_2d(tau)))


def sl2_origin_displacement(P: np.ndarray) -> float:
    """Hyperbolic displacement of the origin under the isometry induced by ``P``.

    For ``P`` scaled into SL(2, R), ``cosh d = |P|_F^2 / 2``.
    """
    P = np.asarray(P, float)
    det = np.linalg.det(P)
    if det <= 0:
        raise ValueError("expected positive determinant")
    c = float(np.sum(P * P) / (2.0 * det))
    return math.acosh(max(c, 1.0))


def bending_pairs(axis_angles: Sequence[float] = DEFAULT_AXIS_ANGLES, n: int = 2) -> list[DualPair]:
    if len(axis_angles) != 4:
        raise ValueError("need exactly four axis angles")
    return [DualPair.through_axis(a, n) for a in axis_angles]


def verify_product(t: BendParameters | Sequence[float], tau: float,
                   axis_angles: Sequence[float] = DEFAULT_AXIS_ANGLES, n: int = 2) -> float:
    """``proj_distance(A_{P4,p4,t4} ... A_{P1,p1,t1}, rotation(tau))`` in PGL(n+1)."""
    ts = t.t if isinstance(t, BendParameters) else tuple(float(x) for x in t)
    if len(ts) != 4:
        raise ValueError("need four parameters")
    M = np.eye(n + 1)
    for pair, ti in zip(bending_pairs(axis_angles, n), ts):
        M = projective_scaling_matrix(pair, ti) @ M
    return proj_distance(ProjectiveMap(M, check=False), rotation(tau, n))


__all__ = [
    "BendParameters",
    "DomainError",
    "LambertSolution",
    "compose_translations_oracle",
    "group_matrices",
    "oracle_isometry",
    "product_matrix_2d",
    "product_residual_2d",
    "sl2_origin_displacement",
    "solve_lambert",
    "solve_lambert_newton",
    "solve_product",
    "verify_product",
]
