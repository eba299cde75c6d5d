"""Projective and Lorentzian linear algebra.

Elements of PGL(n+1, R) are stored as :class:`ProjectiveMap`, a matrix
normalised to unit Frobenius norm with the first nonzero entry (row-major)
positive. Two maps are equal in PGL exactly when :func:`proj_distance`
vanishes.

Conventions
-----------
* Angles are counter-clockwise positive in the oriented transverse plane
  spanned by the first two coordinates.
* The affine chart is ``x_{n+1} = 1``; a point ``x`` of R^n is the
  homogeneous vector ``(x, 1)``.
* Hyperplanes are row covectors ``P`` with ``P . X = 0``.

Examples
--------
>>> import numpy as np
>>> A = scaling_map_2d([1, 0], [0, 1], np.log(2.0))
>>> B = identity_extension(linear_scaling_2d([1, 0], [0, 1], np.log(2.0)), 2)
>>> float(proj_distance(B, ProjectiveMap(np.diag([1.0, 2.0, 1.0])))) < 1e-15
True
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .config import DEFAULT_TOLERANCES

Array = NDArray[np.float64]
MapLike = Union["ProjectiveMap", ArrayLike]

SQRT2 = math.sqrt(2.0)


class DegenerateError(ValueError):
    """Raised for singular maps, degenerate dual pairs or null hyperplanes."""


def normalize(matrix: ArrayLike) -> Array:
    """Return the canonical representative of a matrix up to nonzero scale."""
    M = np.array(matrix, dtype=float)
    norm = np.linalg.norm(M)
    if norm == 0.0:
        raise DegenerateError("zero matrix has no projective class")
    if abs(norm - 1.0) > 4 * np.finfo(float).eps:
        M = M / norm  # skipped for normalised input so that reloading is bitwise stable
    flat = M.ravel()
    nz = np.flatnonzero(np.abs(flat) > 1e-14)
    if nz.size and flat[nz[0]] < 0:
        M = -M
    return M


class ProjectiveMap:
    """An element of PGL(n+1, R) in normalised form.

    Parameters
    ----------
    matrix:
        Any invertible ``(n+1) x (n+1)`` representative.
    check:
        Verify invertibility against the degenerate tolerance.
    """

    __slots__ = ("_m", "n")

    def __init__(self, matrix: ArrayLike, *, check: bool = True) -> None:
        M = np.array(matrix, dtype=float)
        if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 2:
            raise ValueError(f"expected a square matrix of size >= 2, got shape {M.shape}")
        M = normalize(M)
        if check:
            # scale-free determinant test on the normalised matrix
            if abs(np.linalg.det(M)) * M.shape[0] ** (M.shape[0] / 2) < DEFAULT_TOLERANCES.degenerate:
                raise DegenerateError("matrix is not invertible")
        M.setflags(write=False)
        self._m = M
        self.n = M.shape[0] - 1

    @property
    def matrix(self) -> Array:
        return self._m

    @classmethod
    def identity(cls, n: int) -> "ProjectiveMap":
        return cls(np.eye(n + 1))

    def __matmul__(self, other: "ProjectiveMap") -> "ProjectiveMap":
        if not isinstance(other, ProjectiveMap):
            return NotImplemented
        _same_dim(self, other)
        return ProjectiveMap(self._m @ other._m, check=False)

    def inverse(self) -> "ProjectiveMap":
        return ProjectiveMap(np.linalg.inv(self._m), check=False)

    def power(self, k: int) -> "ProjectiveMap":
        if k < 0:
            return self.inverse().power(-k)
        return ProjectiveMap(np.linalg.matrix_power(self._m, k), check=False)

    def apply(self, points: ArrayLike) -> Array:
        """Act on affine points of the chart ``x_{n+1} = 1``."""
        X = np.atleast_2d(np.asarray(points, dtype=float))
        H = np.hstack([X, np.ones((X.shape[0], 1))]) @ self._m.T
        out = H[:, :-1] / H[:, -1:]
        return out if np.ndim(points) > 1 else out[0]

    def apply_covector(self, covector: ArrayLike) -> Array:
        """Push a hyperplane forward: the image of ``{P.X = 0}`` is ``{P A^{-1} X = 0}``."""
        c = np.asarray(covector, dtype=float) @ np.linalg.inv(self._m)
        return c / np.linalg.norm(c)

    def __repr__(self) -> str:
        return f"ProjectiveMap(n={self.n}, matrix={np.array2string(self._m, precision=6)})"


def _as_matrix(A: MapLike) -> Array:
    if isinstance(A, ProjectiveMap):
        return A.matrix
    return np.asarray(A, dtype=float)


def _same_dim(A: ProjectiveMap, B: ProjectiveMap) -> None:
    if A.n != B.n:
        raise ValueError(f"dimension mismatch: {A.n} vs {B.n}")


def proj_distance(A: MapLike, B: MapLike) -> float:
    """Frobenius distance between normalised representatives, minimised over sign."""
    a, b = _as_matrix(A), _as_matrix(B)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    return float(min(np.linalg.norm(a - b), np.linalg.norm(a + b)))


@dataclass(frozen=True)
class DualPair:
    """A hyperplane ``P`` (row covector) together with a point ``p`` off it."""

    P: Array
    p: Array
    n: int = field(init=False)

    def __post_init__(self) -> None:
        P = np.asarray(self.P, dtype=float).ravel()
        p = np.asarray(self.p, dtype=float).ravel()
        if P.shape != p.shape or P.size < 2:
            raise ValueError("P and p must be vectors of the same length >= 2")
        P = P / np.linalg.norm(P)
        p = p / np.linalg.norm(p)
        if abs(P @ p) < DEFAULT_TOLERANCES.degenerate:
            raise DegenerateError("point p lies on the hyperplane P")
        P.setflags(write=False)
        p.setflags(write=False)
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "n", P.size - 1)

    @classmethod
    def through_axis(cls, angle: float, n: int = 2) -> "DualPair":
        """Hyperplane through the codimension-2 axis ``x1 = x2 = 0`` whose
        trace in the transverse plane is the line at ``angle``; the dual point
        is the point at infinity in the normal direction."""
        normal = np.zeros(n + 1)
        normal[0], normal[1] = -math.sin(angle), math.cos(angle)
        return cls(normal, normal.copy())

    @classmethod
    def polar(cls, a: ArrayLike, c: float) -> "DualPair":
        """Affine hyperplane ``a.x = c`` with its pole for the unit sphere."""
        a = np.asarray(a, dtype=float)
        return cls(np.append(a, -c), np.append(a, c))

    @property
    def pairing(self) -> float:
        return float(self.P @ self.p)

    def affine(self) -> tuple[Array, float]:
        """Return ``(a, c)`` with the hyperplane written as ``a.x = c`` in the chart."""
        return self.P[:-1].copy(), float(-self.P[-1])


@dataclass(frozen=True)
class LorentzForm:
    """Quadratic form ``x_1^2 + ... + x_n^2 + coeff * x_{n+1}^2`` with ``coeff < 0``."""

    n: int
    coeff: float = -SQRT2

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("dimension must be positive")
        if not self.coeff < 0:
            raise ValueError("the last coefficient must be negative for signature (n, 1)")

    @property
    def matrix(self) -> Array:
        return np.diag([1.0] * self.n + [self.coeff])

    def __call__(self, x: ArrayLike) -> Array:
        x = np.asarray(x, dtype=float)
        return np.einsum("...i,ij,...j->...", x, self.matrix, x)

    def bilinear(self, x: ArrayLike, y: ArrayLike) -> Array:
        return np.einsum("...i,ij,...j->...", np.asarray(x, float), self.matrix, np.asarray(y, float))


@dataclass(frozen=True)
class KleinPoint:
    coords: Array

    def __post_init__(self) -> None:
        c = np.asarray(self.coords, dtype=float).ravel()
        if not np.linalg.norm(c) < 1.0:
            raise ValueError("Klein points must lie in the open unit ball")
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)


def linear_scaling_2d(v: ArrayLike, w: ArrayLike, t: float) -> Array:
    """The linear map fixing ``v`` and sending ``w`` to ``e^t w``."""
    B = np.column_stack([np.asarray(v, float), np.asarray(w, float)])
    if B.shape != (2, 2):
        raise ValueError("v and w must be 2-vectors")
    if abs(np.linalg.det(B)) < DEFAULT_TOLERANCES.degenerate:
        raise DegenerateError("v and w are parallel")
    return B @ np.diag([1.0, math.exp(t)]) @ np.linalg.inv(B)


def scaling_map_2d(v: ArrayLike, w: ArrayLike, t: float) -> ProjectiveMap:
    return ProjectiveMap(linear_scaling_2d(v, w, t))


def projective_scaling(pair: DualPair, t: float) -> ProjectiveMap:
    """A_{P,p,t}: fixes ``P`` pointwise and ``p``; eigenvalue ``e^t`` at ``p``.

    For ``P`` through the axis and ``p`` its orthogonal point at infinity this
    is the identity extension of ``A_{v,w,t}``.
    """
    return ProjectiveMap(projective_scaling_matrix(pair, t), check=False)


def projective_scaling_matrix(pair: DualPair, t: float) -> Array:
    P, p = pair.P, pair.p
    return np.eye(P.size) + (math.exp(t) - 1.0) * np.outer(p, P) / (P @ p)


def rotation_matrix_2d(angle: float) -> Array:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]])


def rotation(angle: float, n: int = 2, plane: Sequence[ArrayLike] | None = None) -> ProjectiveMap:
    """Rotation by ``angle`` in an oriented 2-plane of R^n through the origin.

    ``plane`` is an orthonormal pair ``(u1, u2)``; the default is ``(e1, e2)``,
    so the fixed axis is ``x1 = x2 = 0``.
    """
    return ProjectiveMap(rotation_matrix(angle, n, plane), check=False)


def rotation_matrix(angle: float, n: int = 2, plane: Sequence[ArrayLike] | None = None) -> Array:
    if n < 2:
        raise ValueError("rotations need n >= 2")
    if plane is None:
        U = np.zeros((n, 2))
        U[0, 0] = U[1, 1] = 1.0
    else:
        U = np.column_stack([np.asarray(u, float) for u in plane])
        if U.shape != (n, 2) or np.abs(U.T @ U - np.eye(2)).max() > 1e-12:
            raise ValueError("plane must be an orthonormal pair of n-vectors")
    Rn = np.eye(n) + U @ (rotation_matrix_2d(angle) - np.eye(2)) @ U.T
    out = np.eye(n + 1)
    out[:n, :n] = Rn
    return out


def conjugate_scaling(R: MapLike, v: ArrayLike, w: ArrayLike, t: float) -> ProjectiveMap:
    """``R A_{v,w,t} R^{-1}`` for a 2x2 rotation ``R``."""
    Rm = _as_matrix(R)
    return ProjectiveMap(Rm @ linear_scaling_2d(v, w, t) @ np.linalg.inv(Rm))


def identity_extension(A: MapLike, n: int) -> ProjectiveMap:
    """Extend a linear map of the transverse plane to PGL(n+1) by the identity."""
    if n < 2:
        raise ValueError("identity extension needs n >= 2")
    a = _as_matrix(A)
    if a.shape != (2, 2):
        raise ValueError("expected a 2x2 block")
    out = np.eye(n + 1)
    out[:2, :2] = a
    return ProjectiveMap(out)


def lorentz_reflection(W: ArrayLike, form: LorentzForm) -> ProjectiveMap:
    """The form-orthogonal involution fixing the hyperplane ``W`` pointwise."""
    return ProjectiveMap(lorentz_reflection_matrix(W, form), check=False)


def lorentz_reflection_matrix(W: ArrayLike, form: LorentzForm) -> Array:
    W = np.asarray(W, dtype=float).ravel()
    if W.size != form.n + 1:
        raise ValueError("covector length must be n+1")
    J = form.matrix
    w = np.linalg.solve(J, W)  # form-dual vector of the covector
    q = w @ J @ w
    if abs(q) < DEFAULT_TOLERANCES.degenerate * max(1.0, w @ w):
        raise DegenerateError("hyperplane is null for the form")
    return np.eye(W.size) - 2.0 * np.outer(w, W) / q


def dihedral_generators(m: int, form: LorentzForm) -> tuple[ProjectiveMap, ProjectiveMap]:
    """Reflections in the hyperplanes ``x2 = 0`` and the one at angle ``pi/m``,
    both containing ``V = {x1 = x2 = 0}``; their product rotates by ``2 pi/m``."""
    if m < 2:
        raise ValueError("m must be at least 2")
    if form.n < 2:
        raise ValueError("dihedral generators need n >= 2")
    W1 = np.zeros(form.n + 1)
    W1[1] = 1.0
    W2 = np.zeros(form.n + 1)
    W2[0], W2[1] = -math.sin(math.pi / m), math.cos(math.pi / m)
    return lorentz_reflection(W1, form), lorentz_reflection(W2, form)


def klein_distance(x: ArrayLike | KleinPoint, y: ArrayLike | KleinPoint) -> float:
    """Hyperbolic distance in the Klein model (curvature -1).

    Uses ``d = 2 asinh(|X - Y|_L / 2)`` on the hyperboloid lifts, which keeps
    full relative precision for nearby points.
    """
    a = x.coords if isinstance(x, KleinPoint) else np.asarray(x, float)
    b = y.coords if isinstance(y, KleinPoint) else np.asarray(y, float)
    na, nb = a @ a, b @ b
    if not (na < 1.0 and nb < 1.0):
        raise ValueError("points must lie inside the unit ball")
    X = np.append(a, 1.0) / math.sqrt(1.0 - na)
    Y = np.append(b, 1.0) / math.sqrt(1.0 - nb)
    D = X - Y
    q = D[:-1] @ D[:-1] - D[-1] ** 2
    return 2.0 * math.asinh(math.sqrt(max(q, 0.0)) / 2.0)


def chart_jacobian(A: MapLike, point: ArrayLike, h: float = 1e-6) -> Array:
    """Central-difference Jacobian of ``A`` at a fixed homogeneous ``point``.

    The chart is the one dividing by the largest coordinate of ``point``,
    so points at infinity of the standard chart are handled.
    """
    M = _as_matrix(A)
    p = np.asarray(point, float)
    k = int(np.argmax(np.abs(p)))
    others = [i for i in range(p.size) if i != k]

    def to_chart(X: Array) -> Array:
        return X[others] / X[k]

    def from_chart(u: Array) -> Array:
        X = np.empty(p.size)
        X[k] = 1.0
        X[others] = u
        return X

    u0 = to_chart(p)
    J = np.empty((u0.size, u0.size))
    for j in range(u0.size):
        du = np.zeros(u0.size)
        du[j] = h
        J[:, j] = (to_chart(M @ from_chart(u0 + du)) - to_chart(M @ from_chart(u0 - du))) / (2 * h)
    return J
