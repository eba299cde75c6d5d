"""Bending of the Klein ball along disjoint flat walls, and convexity predicates.

A wall is a hyperplane slice of the unit ball with a dual point and a
weight ``t``. Crossing the walls ``H_1, ..., H_k`` of an ordered lamination
in their coorientation, the bent developing map equals ``A_1 ... A_i`` on
the component ``B_i`` between ``H_i`` and ``H_{i+1}``, where
``A_i = A_{P_i, p_i, t_i}``. Because ``A_i`` fixes ``P_i`` pointwise, the
pieces agree along the walls.

Convex bodies are :class:`Polytope` instances (vertex lists, any
dimension, possibly lower-dimensional). Convexity of unions is tested by
sampling segments and checking exact coverage: for each body the set of
segment parameters inside it is an interval computed from its half-spaces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from numpy.typing import ArrayLike
from scipy.spatial import ConvexHull

from .config import DEFAULT_SAMPLING, DEFAULT_TOLERANCES
from .projlin import DualPair, ProjectiveMap, projective_scaling
from .verdict import FAIL, PASS, HypothesisError, PreconditionError, Verdict


class LaminationError(ValueError):
    """Walls intersect inside the ball or are not in separating order."""


# -- polytopes ------------------------------------------------------------------------------


class Polytope:
    """Convex hull of finitely many points in R^d, possibly lower-dimensional.

    The body is described inside its affine hull by half-spaces
    ``A y + b <= 0`` in hull coordinates ``y = (x - origin) @ basis.T``.
    """

    def __init__(self, points: ArrayLike, tol: float = DEFAULT_TOLERANCES.face) -> None:
        V = np.atleast_2d(np.asarray(points, dtype=float))
        if V.size == 0:
            raise ValueError("a polytope needs at least one point")
        self.tol = tol
        self.ambient_dim = V.shape[1]
        self.origin = V.mean(axis=0)
        X = V - self.origin
        scale = max(1.0, float(np.abs(V).max()))
        if X.shape[0] > 1:
            _, s, wt = np.linalg.svd(X, full_matrices=False)
            rank = int(np.sum(s > tol * scale * 10))
        else:
            s, wt, rank = np.zeros(0), np.zeros((0, self.ambient_dim)), 0
        self.dim = rank
        self.basis = wt[:rank]
        local = X @ self.basis.T
        if rank >= 2:
            hull = ConvexHull(local)
            self.vertices = V[np.sort(hull.vertices)]
            eq = _unique_rows(hull.equations, tol)
            self._A, self._b = eq[:, :-1], eq[:, -1]
        elif rank == 1:
            i, j = int(np.argmin(local[:, 0])), int(np.argmax(local[:, 0]))
            self.vertices = V[[i, j]]
            self._A = np.array([[1.0], [-1.0]])
            self._b = np.array([-local[j, 0], local[i, 0]])
        else:
            self.vertices = V[:1]
            self._A = np.zeros((0, 0))
            self._b = np.zeros(0)

    # geometry ------------------------------------------------------------------------------
    def _local(self, X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        D = X - self.origin
        Y = D @ self.basis.T
        off = D - Y @ self.basis
        return Y, np.linalg.norm(off, axis=-1)

    def contains(self, points: ArrayLike, tol: float | None = None) -> np.ndarray:
        tol = self.tol if tol is None else tol
        X = np.atleast_2d(np.asarray(points, dtype=float))
        Y, off = self._local(X)
        ok = off <= tol
        if self._A.size:
            ok &= np.all(Y @ self._A.T + self._b <= tol, axis=1)
        return ok

    def active_facets(self, point: ArrayLike, tol: float | None = None) -> frozenset[int]:
        tol = self.tol if tol is None else tol
        Y, _ = self._local(np.atleast_2d(np.asarray(point, float)))
        if not self._A.size:
            return frozenset()
        vals = Y[0] @ self._A.T + self._b
        return frozenset(int(i) for i in np.flatnonzero(np.abs(vals) <= tol))

    def face_of(self, facets: frozenset[int]) -> frozenset[int]:
        """Indices of vertices lying on all the given facets."""
        if not facets:
            return frozenset(range(len(self.vertices)))
        Y, _ = self._local(self.vertices)
        idx = sorted(facets)
        vals = Y @ self._A[idx].T + self._b[idx]
        return frozenset(int(i) for i in np.flatnonzero(np.all(np.abs(vals) <= self.tol, axis=1)))

    def segment_intervals(self, P0: ArrayLike, P1: ArrayLike, slack: float | None = None) -> tuple[np.ndarray, np.ndarray]:
        """Exact parameter intervals of segments ``P0 -> P1`` inside the body (batch)."""
        slack = self.tol if slack is None else slack
        P0 = np.atleast_2d(np.asarray(P0, float))
        P1 = np.atleast_2d(np.asarray(P1, float))
        T = P0.shape[0]
        lo, hi = np.zeros(T), np.ones(T)
        Y0, _ = self._local(P0)
        D = P1 - P0
        DY = D @ self.basis.T
        # component off the affine hull is affine in s; it must vanish
        R0 = (P0 - self.origin) - Y0 @ self.basis
        R1 = D - DY @ self.basis
        r1n = np.einsum("ij,ij->i", R1, R1)
        big = r1n > slack * slack
        with np.errstate(divide="ignore", invalid="ignore"):
            s_star = -np.einsum("ij,ij->i", R0, R1) / r1n
        resid_at = np.linalg.norm(R0 + s_star[:, None] * R1, axis=1)
        lo = np.where(big, np.maximum(lo, s_star - 1e-15), lo)
        hi = np.where(big, np.minimum(hi, s_star + 1e-15), hi)
        lo = np.where(big & (resid_at > slack), 2.0, lo)
        lo = np.where(~big & (np.linalg.norm(R0, axis=1) > slack), 2.0, lo)
        for a, b in zip(self._A, self._b):
            num = -b + slack - Y0 @ a
            den = DY @ a
            with np.errstate(divide="ignore", invalid="ignore"):
                r = num / den
            hi = np.where(den > 0, np.minimum(hi, r), hi)
            lo = np.where(den < 0, np.maximum(lo, r), lo)
            lo = np.where((den == 0) & (num < 0), 2.0, lo)
        return lo, hi

    def sample(self, k: int, rng: np.random.Generator) -> np.ndarray:
        """Random points as Dirichlet-weighted vertex combinations."""
        W = rng.dirichlet(np.ones(len(self.vertices)), size=k)
        return W @ self.vertices

    def equals(self, other: "Polytope", tol: float | None = None) -> bool:
        tol = self.tol if tol is None else tol
        return bool(np.all(self.contains(other.vertices, tol)) and np.all(other.contains(self.vertices, tol)))

    def __repr__(self) -> str:
        return f"Polytope(dim={self.dim}, ambient={self.ambient_dim}, vertices={len(self.vertices)})"


def _unique_rows(eq: np.ndarray, tol: float) -> np.ndarray:
    keep: list[np.ndarray] = []
    for row in eq:
        if not any(np.abs(row - k).max() <= 10 * tol for k in keep):
            keep.append(row)
    return np.array(keep)


def as_polytope(B: Polytope | ArrayLike) -> Polytope:
    return B if isinstance(B, Polytope) else Polytope(B)


def cone_over(x: ArrayLike, B: Polytope | ArrayLike) -> Polytope:
    """``Cone_x(B)``: the union of segments from ``x`` to points of ``B``."""
    B = as_polytope(B)
    x = np.asarray(x, dtype=float)
    return Polytope(np.vstack([B.vertices, x[None, :]]), tol=B.tol)


# -- union convexity by exact segment coverage ----------------------------------------------


def union_covers(bodies: Sequence[Polytope], P0: np.ndarray, P1: np.ndarray,
                 slack: float = DEFAULT_TOLERANCES.shrink) -> np.ndarray:
    """Boolean per segment: is the segment covered by the union of the bodies."""
    los, his = zip(*(b.segment_intervals(P0, P1, slack) for b in bodies))
    lo = np.column_stack(los)
    hi = np.column_stack(his)
    from ._kernels import coverage_gaps

    start, _ = coverage_gaps(lo, hi, np.ones_like(lo, dtype=bool), tol=slack)
    return start < 0


def sampled_union_convexity(bodies: Sequence[Polytope], trials: int, seed: int,
                            name: str = "union_convexity") -> Verdict:
    """Sample point pairs in the union and test segment coverage exactly."""
    rng = np.random.default_rng([seed, 0x5E6])
    k = len(bodies)
    choice = rng.integers(0, k, size=(trials, 2))
    P0 = np.empty((trials, bodies[0].ambient_dim))
    P1 = np.empty_like(P0)
    for j, body in enumerate(bodies):
        m0 = choice[:, 0] == j
        m1 = choice[:, 1] == j
        P0[m0] = body.sample(int(m0.sum()), rng)
        P1[m1] = body.sample(int(m1.sum()), rng)
    # also probe vertex pairs, which is where non-convexity concentrates
    V = np.vstack([b.vertices for b in bodies])
    ii, jj = np.triu_indices(len(V), 1)
    P0 = np.vstack([P0, V[ii]])
    P1 = np.vstack([P1, V[jj]])
    covered = union_covers(bodies, P0, P1)
    bad = np.flatnonzero(~covered)
    if bad.size:
        i = int(bad[0])
        return Verdict(name, FAIL, witness={"segment": [P0[i].tolist(), P1[i].tolist()]},
                       details={"violations": int(bad.size), "trials": int(len(P0))})
    return Verdict(name, PASS, residual=0.0, details={"trials": int(len(P0))})


# -- faced bodies and half-open intervals -------------------------------------------------


class FacedBody:
    """``C <= D <= closure(C)``: an open polytope together with chosen faces.

    ``faces`` are given as sets of vertex indices. The set of included faces
    is required to be closed under passing to larger faces; this is sufficient
    for ``D`` to be convex and is the form used by the half-open interval check.
    """

    def __init__(self, polytope: Polytope, faces: Iterable[Iterable[int]] = ()) -> None:
        self.polytope = polytope
        self.faces = {frozenset(f) for f in faces}
        self.faces.add(frozenset(range(len(polytope.vertices))))
        for f in list(self.faces):
            for g in self._all_faces():
                if f <= g and g not in self.faces:
                    raise ValueError(f"face {sorted(f)} included but larger face {sorted(g)} is not")

    def _all_faces(self) -> set[frozenset[int]]:
        P = self.polytope
        n_fac = len(P._b)
        out = {frozenset(range(len(P.vertices)))}
        frontier = [frozenset([i]) for i in range(n_fac)]
        seen: set[frozenset[int]] = set()
        while frontier:
            fs = frontier.pop()
            if fs in seen:
                continue
            seen.add(fs)
            vs = P.face_of(fs)
            if vs:
                out.add(vs)
                frontier.extend(fs | {j} for j in range(n_fac) if j not in fs)
        return out

    def contains(self, point: ArrayLike, tol: float | None = None) -> bool:
        P = self.polytope
        if not P.contains(point, tol)[0]:
            return False
        carrier = P.face_of(P.active_facets(point, tol))
        return carrier in self.faces

    @classmethod
    def closed(cls, polytope: Polytope) -> "FacedBody":
        fb = cls(polytope)
        fb.faces = fb._all_faces()
        return fb


def check_half_open_interval(D: FacedBody, x: ArrayLike, y: ArrayLike, samples: int = 1000,
                             seed: int = 0) -> bool:
    """Check that ``(x, y]`` lies in ``D`` for ``x`` in the closure and ``y`` in ``D``."""
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    if not D.contains(y):
        raise PreconditionError("y must lie in D")
    if not D.polytope.contains(x)[0]:
        raise PreconditionError("x must lie in the closure of D")
    rng = np.random.default_rng([seed, 0xB0])
    s = np.concatenate([[1.0], np.geomspace(1e-8, 1.0, 64), rng.uniform(0.0, 1.0, samples)])
    s = s[s > 0]
    return all(D.contains(x + si * (y - x)) for si in s)


# -- walls, laminations, bent developing maps ----------------------------------------------


@dataclass(frozen=True)
class Wall:
    """A dual pair, a weight ``t`` and a coorientation sign.

    The positive side is where ``coorientation * (P . X) > 0`` for homogeneous
    chart points ``X = (x, 1)``.
    """

    pair: DualPair
    weight: float
    coorientation: int = 1

    def __post_init__(self) -> None:
        if self.coorientation not in (1, -1):
            raise ValueError("coorientation must be +1 or -1")

    def side(self, points: ArrayLike) -> np.ndarray:
        X = np.atleast_2d(np.asarray(points, float))
        H = np.hstack([X, np.ones((len(X), 1))])
        return self.coorientation * (H @ self.pair.P)

    def scaling(self, sign: int = 1) -> ProjectiveMap:
        return projective_scaling(self.pair, sign * self.weight)

    def ball_slice(self) -> tuple[np.ndarray, float]:
        """Closest point of the wall to the origin and the slice radius in the ball."""
        a, c = self.pair.affine()
        x0 = a * c / (a @ a)
        r2 = 1.0 - x0 @ x0
        if r2 <= 0:
            raise LaminationError("wall does not meet the open ball")
        return x0, math.sqrt(r2)

    def sample_slice(self, k: int, rng: np.random.Generator) -> np.ndarray:
        a, _ = self.pair.affine()
        x0, r = self.ball_slice()
        d = a.size
        # orthonormal basis of the hyperplane directions
        Q, _ = np.linalg.qr(np.column_stack([a, rng.standard_normal((d, d - 1))]))
        E = Q[:, 1:]
        g = rng.standard_normal((k, d - 1))
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        rad = r * rng.uniform(0, 1, size=(k, 1)) ** (1.0 / max(d - 1, 1)) * (1 - 1e-9)
        return x0 + (g * rad) @ E.T


def walls_disjoint_in_ball(w1: Wall, w2: Wall, tol: float = DEFAULT_TOLERANCES.shrink) -> bool:
    a1, c1 = w1.pair.affine()
    a2, c2 = w2.pair.affine()
    A = np.vstack([a1, a2])
    G = A @ A.T
    if abs(np.linalg.det(G)) < 1e-14 * (a1 @ a1) * (a2 @ a2):
        # parallel: disjoint unless they coincide
        return abs(c1 / np.linalg.norm(a1) - np.sign(a1 @ a2) * c2 / np.linalg.norm(a2)) > tol
    x = A.T @ np.linalg.solve(G, np.array([c1, c2]))
    return bool(x @ x >= 1.0 - tol)


@dataclass(frozen=True)
class Lamination:
    """Finitely many disjoint cooriented walls in separating order."""

    walls: tuple[Wall, ...]
    separated: bool = field(init=False)

    def __post_init__(self) -> None:
        walls = tuple(self.walls)
        object.__setattr__(self, "walls", walls)
        for w in walls:
            w.ball_slice()
        for i in range(len(walls)):
            for j in range(i + 1, len(walls)):
                if not walls_disjoint_in_ball(walls[i], walls[j]):
                    raise LaminationError(f"walls {i} and {j} meet inside the ball")
        centers = [w.ball_slice()[0] for w in walls]
        for i, w in enumerate(walls):
            for j, x in enumerate(centers):
                if j == i:
                    continue
                s = float(w.side(x)[0])
                if (j > i and s <= 0) or (j < i and s >= 0):
                    raise LaminationError(f"wall {i} does not separate walls in order (wall {j} on the wrong side)")
        object.__setattr__(self, "separated", True)

    def __len__(self) -> int:
        return len(self.walls)


@dataclass(frozen=True)
class PiecewiseDevelopingMap:
    lamination: Lamination
    maps: tuple[ProjectiveMap, ...]
    base: int = 0

    def component_of(self, points: ArrayLike) -> np.ndarray:
        X = np.atleast_2d(np.asarray(points, float))
        if not self.lamination.walls:
            return np.zeros(len(X), dtype=int)
        S = np.column_stack([w.side(X) for w in self.lamination.walls])
        return np.sum(S > 0, axis=1)

    def __call__(self, points: ArrayLike) -> np.ndarray:
        X = np.atleast_2d(np.asarray(points, float))
        comp = self.component_of(X)
        out = np.empty_like(X)
        for i in np.unique(comp):
            sel = comp == i
            out[sel] = self.maps[i].apply(X[sel])
        return out

    def continuity_residuals(self, samples: int = 100, seed: int = 0) -> list[float]:
        """Max chart distance between the two side maps on sampled wall points."""
        rng = np.random.default_rng([seed, 0xC0])
        out = []
        for i, w in enumerate(self.lamination.walls):
            pts = w.sample_slice(samples, rng)
            left = self.maps[i].apply(pts)
            right = self.maps[i + 1].apply(pts)
            out.append(float(np.abs(left - right).max()))
        return out


def bend_ball(lamination: Lamination) -> PiecewiseDevelopingMap:
    """Component maps ``I, A1, A1 A2, ..., A1 ... Ak``."""
    n = lamination.walls[0].pair.n if lamination.walls else 2
    maps = [ProjectiveMap.identity(n)]
    for w in lamination.walls:
        maps.append(maps[-1] @ w.scaling())
    return PiecewiseDevelopingMap(lamination, tuple(maps))


def bend_map_for_crossing_sequence(walls: Sequence[tuple[Wall, int]], n: int | None = None) -> ProjectiveMap:
    """Ordered product of ``A_{P_i, p_i, sign_i t_i}``, first crossing leftmost."""
    if not walls:
        return ProjectiveMap.identity(2 if n is None else n)
    M = np.eye(walls[0][0].pair.n + 1)
    for w, sign in walls:
        if sign not in (1, -1):
            raise ValueError("crossing signs must be +1 or -1")
        M = M @ w.scaling(sign).matrix
    return ProjectiveMap(M, check=False)


# -- corollaries C1 and C2 -----------------------------------------------------------------


@dataclass(frozen=True)
class Hyperplane:
    """Affine hyperplane ``normal . x = offset``; the negative side is ``<=``."""

    normal: np.ndarray
    offset: float

    def value(self, X: ArrayLike) -> np.ndarray:
        return np.atleast_2d(np.asarray(X, float)) @ np.asarray(self.normal, float) - self.offset

    @classmethod
    def from_pair(cls, pair: DualPair) -> "Hyperplane":
        a, c = pair.affine()
        return cls(a, c)


def _face_on(body: Polytope, H: Hyperplane, tol: float) -> Polytope | None:
    on = np.abs(H.value(body.vertices)) <= tol
    if not on.any():
        return None
    return Polytope(body.vertices[on], tol=body.tol)


def _project_to_H(X: np.ndarray, H: Hyperplane, p: np.ndarray) -> np.ndarray:
    """Points where the lines from ``X`` towards the homogeneous point ``p`` meet ``H``."""
    a = np.asarray(H.normal, float)
    if abs(p[-1]) < 1e-15:
        u = p[:-1]
        s = (H.offset - X @ a) / (u @ a)
        return X + s[:, None] * u
    q = p[:-1] / p[-1]
    s = (H.offset - X @ a) / ((q - X) @ a)
    return X + s[:, None] * (q - X)


def _in_limit_cone(Y: np.ndarray, F: Polytope, H: Hyperplane, p: np.ndarray, tol: float) -> np.ndarray:
    """Membership in ``Cone_p(F)`` on the far side of ``H`` from ``D``."""
    a = np.asarray(H.normal, float)
    beyond = H.value(Y) >= -tol
    if abs(p[-1]) < 1e-15:
        proj = _project_to_H(Y, H, p)
        return beyond & F.contains(proj, tol)
    return beyond & cone_over(p[:-1] / p[-1], F).contains(Y, tol)


def check_cor_C1(D: Polytope, E: Polytope, H: Hyperplane, F: Polytope, p_limit: ArrayLike,
                 trials: int = DEFAULT_SAMPLING.adjacency_trials, seed: int = 0,
                 tol: float = DEFAULT_TOLERANCES.face) -> Verdict:
    """Convexity of ``D u E`` for bodies on the two sides of ``H`` meeting in ``F``.

    ``p_limit`` is a homogeneous point (last coordinate 0 for an ideal point).
    Raises :class:`HypothesisError` if ``D`` or ``E`` lie on the wrong side,
    do not meet ``H`` exactly in ``F``, or if some line from ``D`` towards
    ``p`` crosses ``H`` outside ``F``. Containment of ``E`` in the limit cone
    is reported in ``details`` and drives the expectation, not an error.
    """
    p = np.asarray(p_limit, float)
    if p.size != D.ambient_dim + 1:
        raise ValueError("p_limit must be homogeneous (length d+1)")
    if np.any(H.value(D.vertices) > tol):
        raise HypothesisError("D must lie on the negative side of H")
    if np.any(H.value(E.vertices) < -tol):
        raise HypothesisError("E must lie on the positive side of H")
    FD, FE = _face_on(D, H, tol), _face_on(E, H, tol)
    if FD is None or not FD.equals(F, tol):
        raise HypothesisError("D meets H in a set different from F")
    if FE is None or not FE.equals(F, tol):
        raise HypothesisError("E meets H in a set different from F")
    a = np.asarray(H.normal, float)
    if abs(p[-1]) < 1e-15 and p[:-1] @ a <= 0:
        raise HypothesisError("ideal point must lie on the positive side of H")
    crossing = F.contains(_project_to_H(D.vertices, H, p), tol)
    if not np.all(crossing):
        raise HypothesisError("a line from D towards p crosses H outside F")
    in_cone = bool(np.all(_in_limit_cone(E.vertices, F, H, p, tol)))
    v = sampled_union_convexity([D, E], trials, seed, name="cor_C1")
    v.details.update({"E_in_limit_cone": in_cone, "crossing_in_facet": True})
    return v


def check_cor_C2(E: Polytope, pair: DualPair, t: float,
                 trials: int = DEFAULT_SAMPLING.global_trials, seed: int = 0,
                 tol: float = DEFAULT_TOLERANCES.face) -> Verdict:
    """Convexity of ``A_{P,p,t}(E) u E`` for ``E`` on the side of ``p`` touching ``P`` in a face."""
    H = Hyperplane.from_pair(pair)
    p = np.asarray(pair.p, float)
    # orient H so that p's side is positive
    probe = p[:-1] if abs(p[-1]) < 1e-15 else p[:-1] / p[-1]
    ideal = abs(p[-1]) < 1e-15
    sgn = np.sign(probe @ H.normal) if ideal else np.sign(H.value(probe)[0])
    if sgn == 0:
        raise HypothesisError("dual point lies on the hyperplane")
    H = Hyperplane(sgn * np.asarray(H.normal), sgn * H.offset)
    if np.any(H.value(E.vertices) < -tol):
        raise HypothesisError("E must lie on the side of H containing p")
    F = _face_on(E, H, tol)
    if F is None or F.dim < E.dim - 1:
        raise HypothesisError("E must meet H in a facet F")
    in_cone = bool(np.all(_in_limit_cone(E.vertices, F, H, p, tol)))
    A = projective_scaling(pair, t)
    Hh = np.hstack([E.vertices, np.ones((len(E.vertices), 1))]) @ A.matrix.T
    if np.any(Hh[:, -1] * np.sign(Hh[0, -1]) <= 1e-12):
        raise HypothesisError("A_{P,p,t}(E) crosses the line at infinity of the chart")
    Et = Polytope(Hh[:, :-1] / Hh[:, -1:], tol=E.tol)
    v = sampled_union_convexity([E, Et], trials, seed, name="cor_C2")
    v.details.update({"E_in_limit_cone": in_cone})
    return v


__all__ = [
    "FacedBody",
    "Hyperplane",
    "Lamination",
    "LaminationError",
    "PiecewiseDevelopingMap",
    "Polytope",
    "Wall",
    "bend_ball",
    "bend_map_for_crossing_sequence",
    "check_cor_C1",
    "check_cor_C2",
    "check_half_open_interval",
    "cone_over",
    "sampled_union_convexity",
    "union_covers",
    "walls_disjoint_in_ball",
]
