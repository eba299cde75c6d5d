"""Transverse model of the bent Gromov-Thurston cross-section.

The transverse plane is the Klein disk. Around the codimension-2 axis ``Q``
(the origin of the disk) the unbent manifold has ``2m`` wedges of angle
``pi/m``; the bent model keeps ``2(m-1)`` of them. Cells are indexed by a
spiral position ``s`` (an integer; the label ``s mod 2(m-1)`` names the
wedge copy) and developed by

    M(s) = D(s) R_{s pi/m},    D(s) = B(1) B(2) ... B(s),

where ``B(r)`` is the bend ``A_{line at r pi/m, w(r)}`` on ray ``r``. Ray
weights repeat with period ``m - 1``: offsets ``0, m/4, m/2, 3m/4`` carry
``t1, t2, t3, t4`` (the walls ``P1..P4`` at angles ``0, pi/4, pi/2, 3pi/4``)
and all other rays carry 0. In prototype coordinates crossing ray ``r``
upwards is the map ``X(w) = R_{pi/m} A_{line 0, w}``; the vertex cycle closes
because ``X(w(1)) ... X(w(2m-2)) = I`` in PGL(3), which follows from
``A4 A3 A2 A1 = R_{-pi/m}`` and the order-2 symmetry of the fan.

Positions are deduplicated by (label, matrix); in a closing model position
``s`` and ``s - 2(m-1)`` become one cell and the dual graph is a cycle.
"""

from __future__ import annotations

import json
import math
import re
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Any, Sequence

import numpy as np

from .config import DEFAULT_SAMPLING, DEFAULT_TOLERANCES
from .lambert import bending_pairs, solve_product, verify_product
from .nerve import CellComplex2
from .projlin import (
    DualPair,
    LorentzForm,
    ProjectiveMap,
    dihedral_generators,
    proj_distance,
    projective_scaling_matrix,
    rotation,
    rotation_matrix,
)

FORMAT = "gtbend.truncation/1"


class ModelError(ValueError):
    """Invalid model parameters."""


class TruncationCapExceeded(RuntimeError):
    pass


# -- model -----------------------------------------------------------------------------


@dataclass(frozen=True)
class CrossSectionModel:
    """Bent (or unbent) fan around one codimension-2 axis.

    ``sectors`` is the number of wedges in a vertex cycle, ``ray_weights``
    the bending weight of ray ``r`` for ``r mod len(ray_weights)``.
    """

    m: int
    t: tuple[float, float, float, float]
    tau: float
    kind: str = "bent"
    n: int = 2
    note: str = ""

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ModelError("dimension must be at least 2")

    @property
    def wedge_angle(self) -> float:
        return math.pi / self.m

    @property
    def sectors(self) -> int:
        return 2 * (self.m - 1) if self.kind == "bent" else 2 * self.m

    @property
    def period(self) -> int:
        return self.sectors // 2

    @property
    def ray_weights(self) -> tuple[float, ...]:
        w = [0.0] * self.period
        if self.kind == "bent":
            m = self.m
            for off, ti in zip((0, m // 4, m // 2, 3 * m // 4), self.t):
                w[off] = float(ti)
        return tuple(w)

    def weight(self, ray: int) -> float:
        return self.ray_weights[ray % self.period]

    @property
    def wall_angles(self) -> dict[str, float]:
        a = {"P0": 0.0, "P1": 0.0, "P2": math.pi / 4, "P3": math.pi / 2, "P4": 3 * math.pi / 4,
             "P0'": math.pi - math.pi / self.m}
        return a

    @property
    def walls(self) -> dict[str, DualPair]:
        return {k: DualPair.through_axis(v, self.n) for k, v in self.wall_angles.items()}

    def gluing_rotation(self) -> ProjectiveMap:
        """The order-2 rotation carrying one half of the fan to the other."""
        return rotation(math.pi, self.n)

    # matrices ---------------------------------------------------------------------------
    def crossing_matrix(self, ray: int) -> np.ndarray:
        """Prototype-coordinate map for crossing ``ray`` upwards."""
        n = self.n
        A = projective_scaling_matrix(DualPair.through_axis(0.0, n), self.weight(ray))
        return rotation_matrix(self.wedge_angle, n) @ A

    def crossing_map(self, ray: int, sign: int = 1) -> ProjectiveMap:
        X = ProjectiveMap(self.crossing_matrix(ray), check=False)
        return X if sign > 0 else X.inverse()

    def position_matrix(self, s: int) -> np.ndarray:
        M = np.eye(self.n + 1)
        if s >= 0:
            for r in range(1, s + 1):
                M = M @ self.crossing_matrix(r)
        else:
            for r in range(0, s, -1):
                M = M @ np.linalg.inv(self.crossing_matrix(r))
        return M

    def closure_product(self, start: int = 0) -> ProjectiveMap:
        M = np.eye(self.n + 1)
        for r in range(start + 1, start + self.sectors + 1):
            M = M @ self.crossing_matrix(r)
        return ProjectiveMap(M, check=False)

    def closure_residual(self, start: int = 0) -> float:
        return proj_distance(self.closure_product(start), ProjectiveMap.identity(self.n))

    def eq1_residual(self) -> float:
        """``proj_distance(A_{P4} ... A_{P1}, rotation(-pi/m))`` in PGL(n+1)."""
        return verify_product(self.t, -math.pi / self.m, n=self.n)

    def bending_product(self) -> ProjectiveMap:
        M = np.eye(self.n + 1)
        for pair, ti in zip(bending_pairs(n=self.n), self.t):
            M = projective_scaling_matrix(pair, ti) @ M
        return ProjectiveMap(M, check=False)

    # variants ---------------------------------------------------------------------------
    def with_t(self, t: Sequence[float], note: str = "") -> "CrossSectionModel":
        return replace(self, t=tuple(float(x) for x in t), note=note or self.note)

    def scaled(self, lam: float) -> "CrossSectionModel":
        return self.with_t([lam * x for x in self.t], note=f"scaled by {lam:g}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "m": self.m,
            "n": self.n,
            "kind": self.kind,
            "tau": self.tau,
            "t": list(self.t),
            "wall_angles": self.wall_angles,
            "sectors": self.sectors,
            "note": self.note,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "CrossSectionModel":
        return cls(m=int(d["m"]), t=tuple(float(x) for x in d["t"]), tau=float(d["tau"]),
                   kind=d.get("kind", "bent"), n=int(d.get("n", 2)), note=d.get("note", ""))


def check_m(m: int) -> None:
    if not isinstance(m, (int, np.integer)) or m < 8 or m % 4:
        raise ModelError(f"m must be an integer >= 8 divisible by 4 (got {m!r})")


def build_model(m: int, tau: float | None = None, n: int = 2) -> CrossSectionModel:
    """Bent model with ``t = solve_product(tau).t`` (default ``tau = -pi/m``)."""
    check_m(m)
    tau = -math.pi / m if tau is None else float(tau)
    t = solve_product(tau).t
    return CrossSectionModel(m=int(m), t=t, tau=tau, kind="bent", n=n)


def build_unbent_model(m: int, n: int = 2) -> CrossSectionModel:
    if m < 2:
        raise ModelError("m must be at least 2")
    return CrossSectionModel(m=int(m), t=(0.0, 0.0, 0.0, 0.0), tau=0.0, kind="unbent", n=n)


def suspend_model(model: CrossSectionModel, n: int) -> CrossSectionModel:
    if n < 2:
        raise ModelError("n must be at least 2")
    return model if n == model.n else replace(model, n=n)


_CORRUPT = re.compile(r"^t([1-4])\s*(\+=|-=|\*=|=)\s*([-+0-9.eE]+)$")


def corrupt(model: CrossSectionModel, spec: str) -> CrossSectionModel:
    """Apply a corruption such as ``t1+=0.01``, ``t1*=3``, ``t2=-0.5`` or ``neg23``."""
    spec = spec.strip()
    t = list(model.t)
    if re.fullmatch(r"neg[1-4]+", spec):
        for ch in spec[3:]:
            t[int(ch) - 1] = -t[int(ch) - 1]
        return model.with_t(t, note=f"corrupted: {spec}")
    mt = _CORRUPT.match(spec)
    if not mt:
        raise ValueError(f"unrecognised corruption {spec!r}")
    i, op, val = int(mt.group(1)) - 1, mt.group(2), float(mt.group(3))
    if op == "+=":
        t[i] += val
    elif op == "-=":
        t[i] -= val
    elif op == "*=":
        t[i] *= val
    else:
        t[i] = val
    return model.with_t(t, note=f"corrupted: {spec}")


# -- truncations ----------------------------------------------------------------------------

PROTOTYPE_HALFPLANES_CACHE: dict[int, np.ndarray] = {}


def prototype_halfplanes(m: int) -> np.ndarray:
    """Rows ``(a0, a1, c)`` with ``a . y <= c`` cutting the wedge ``[0, pi/m]``."""
    if m not in PROTOTYPE_HALFPLANES_CACHE:
        a = math.pi / m
        PROTOTYPE_HALFPLANES_CACHE[m] = np.array([[0.0, -1.0, 0.0], [-math.sin(a), math.cos(a), 0.0]])
    return PROTOTYPE_HALFPLANES_CACHE[m]


@dataclass(frozen=True)
class CellInstance:
    id: int
    position: int
    label: int
    word: tuple[str, ...]
    matrix: ProjectiveMap

    @property
    def depth(self) -> int:
        return len(self.word)

    def transverse_linear(self) -> np.ndarray:
        """2x2 linear part in the chart (the maps fix the axis point)."""
        M = self.matrix.matrix
        return M[:2, :2] / M[-1, -1]

    def cone(self, m: int) -> tuple[np.ndarray, np.ndarray]:
        """Inward covectors of the two facets of the developed wedge."""
        a = math.pi / m
        n = self.matrix.n
        lo = np.zeros(n + 1)
        lo[1] = 1.0
        hi = np.zeros(n + 1)
        hi[0], hi[1] = math.sin(a), -math.cos(a)
        return self.matrix.apply_covector(lo), self.matrix.apply_covector(hi)

    def boundary_rays(self, m: int) -> np.ndarray:
        L = self.transverse_linear()
        a = math.pi / m
        return np.array([L @ [1.0, 0.0], L @ [math.cos(a), math.sin(a)]])


@dataclass(frozen=True)
class Adjacency:
    lower: int
    upper: int
    ray: int  # ray label mod sectors
    crossing: ProjectiveMap  # prototype map from lower to upper


@dataclass(frozen=True)
class VertexCycle:
    cells: tuple[int, ...]
    rays: tuple[int, ...]
    returns: bool  # the walk around the vertex comes back to its first cell
    residual: float  # proj_distance of the crossing product from I


@dataclass
class TruncatedTessellation:
    model: CrossSectionModel
    depth: int
    cells: list[CellInstance]
    adjacency: list[Adjacency]
    vertex_cycles: list[VertexCycle]
    star_closed: bool = False
    effective_depth: int = 0
    notices: list[str] = field(default_factory=list)

    # derived views ---------------------------------------------------------------------------
    @property
    def m(self) -> int:
        return self.model.m

    def neighbors(self) -> dict[int, list[int]]:
        nb: dict[int, list[int]] = {c.id: [] for c in self.cells}
        for a in self.adjacency:
            nb[a.lower].append(a.upper)
            nb[a.upper].append(a.lower)
        return nb

    def boundary_cells(self) -> set[int]:
        """Cells with a facet whose neighbour is missing from the truncation."""
        deg = {c.id: 0 for c in self.cells}
        for a in self.adjacency:
            deg[a.lower] += 1
            deg[a.upper] += 1
        return {i for i, d in deg.items() if d < 2}

    def closure_failures(self, tol: float = DEFAULT_TOLERANCES.composition) -> list[VertexCycle]:
        return [v for v in self.vertex_cycles if v.residual > tol]

    def cell_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Kernel inputs: ``Linv, off, hp, nhp, disk`` for all cells."""
        C = len(self.cells)
        Linv = np.empty((C, 2, 2))
        for i, c in enumerate(self.cells):
            Linv[i] = np.linalg.inv(c.transverse_linear())
        hp = np.broadcast_to(prototype_halfplanes(self.m), (C, 2, 3)).copy()
        return Linv, np.zeros((C, 2)), hp, np.full(C, 2), np.ones(C, dtype=bool)

    def to_dict(self) -> dict[str, Any]:
        return {
            "format": FORMAT,
            "model": self.model.to_dict(),
            "depth": self.depth,
            "effective_depth": self.effective_depth,
            "star_closed": self.star_closed,
            "cells": [
                {"id": c.id, "position": c.position, "label": c.label, "word": list(c.word),
                 "matrix": c.matrix.matrix.tolist()}
                for c in self.cells
            ],
            "adjacency": [[a.lower, a.upper, a.ray] for a in self.adjacency],
            "vertex_cycles": [
                {"cells": list(v.cells), "rays": list(v.rays), "returns": v.returns, "residual": v.residual}
                for v in self.vertex_cycles
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "TruncatedTessellation":
        if d.get("format") != FORMAT:
            raise ValueError(f"unsupported format {d.get('format')!r}")
        model = CrossSectionModel.from_dict(d["model"])
        cells = [CellInstance(c["id"], c["position"], c["label"], tuple(c["word"]), ProjectiveMap(c["matrix"]))
                 for c in d["cells"]]
        adj = [Adjacency(a, b, r, model.crossing_map(r)) for a, b, r in d["adjacency"]]
        cycles = [VertexCycle(tuple(v["cells"]), tuple(v["rays"]), v["returns"], v["residual"])
                  for v in d["vertex_cycles"]]
        return cls(model, d["depth"], cells, adj, cycles, d["star_closed"], d["effective_depth"])


def _token(ray: int, sign: int, sectors: int) -> str:
    return f"{ray % sectors}{'+' if sign > 0 else '-'}"


def generate_truncation(model: CrossSectionModel, depth: int, cap: int = DEFAULT_SAMPLING.truncation_cap,
                        close_stars: bool = False,
                        tol: float = DEFAULT_TOLERANCES.cell_identity) -> TruncatedTessellation:
    """Breadth-first development of cells up to ``depth`` wall crossings.

    With ``close_stars`` the search continues around the axis until every
    vertex star touched by the truncation is complete (for this single-axis
    model: depth ``sectors / 2``). If the star does not close, a full turn of
    ``sectors`` crossings is developed each way so the spiral overlaps itself.
    """
    if not close_stars:
        return _bfs(model, depth, depth, cap, tol)
    N = model.sectors
    tess = _bfs(model, depth, max(depth, N // 2), cap, tol)
    if not any(v.returns for v in tess.vertex_cycles):
        tess = _bfs(model, depth, max(depth, N), cap, tol)
    tess.star_closed = True
    return tess


def _bfs(model: CrossSectionModel, depth: int, eff: int, cap: int, tol: float) -> TruncatedTessellation:
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    N = model.sectors
    base = CellInstance(0, 0, 0, (), ProjectiveMap.identity(model.n))
    cells = [base]
    by_label: dict[int, list[int]] = {0: [0]}
    adjacency: dict[tuple[int, int], Adjacency] = {}
    queue = deque([0])
    while queue:
        cid = queue.popleft()
        cell = cells[cid]
        if cell.depth >= eff:
            continue
        for sign in (1, -1):
            ray = cell.position + 1 if sign > 0 else cell.position
            X = model.crossing_matrix(ray)
            Mnew = cell.matrix.matrix @ (X if sign > 0 else np.linalg.inv(X))
            pos = cell.position + sign
            label = pos % N
            found = None
            for other in by_label.get(label, []):
                if proj_distance(cells[other].matrix.matrix, Mnew) < tol:
                    found = other
                    break
            if found is None:
                if len(cells) >= cap:
                    raise TruncationCapExceeded(f"truncation exceeds {cap} cells")
                found = len(cells)
                cells.append(CellInstance(found, pos, label, cell.word + (_token(ray, sign, N),),
                                          ProjectiveMap(Mnew, check=False)))
                by_label.setdefault(label, []).append(found)
                queue.append(found)
            lower, upper = (cid, found) if sign > 0 else (found, cid)
            key = (lower, upper)
            if key not in adjacency:
                adjacency[key] = Adjacency(lower, upper, ray % N, model.crossing_map(ray))
    adj = sorted(adjacency.values(), key=lambda a: (a.lower, a.upper))
    tess = TruncatedTessellation(model, depth, cells, adj, [], False, eff)
    tess.vertex_cycles = _vertex_cycles(tess)
    if not tess.vertex_cycles:
        tess.notices.append("no complete vertex cycle in truncation")
    return tess


def _vertex_cycles(tess: TruncatedTessellation) -> list[VertexCycle]:
    model = tess.model
    N = model.sectors
    up = {a.lower: a for a in tess.adjacency}
    seen: set[frozenset[int]] = set()
    out = []
    for c in tess.cells:
        chain = [c.id]
        rays = []
        cur = c.id
        ok = True
        for _ in range(N - 1):
            a = up.get(cur)
            if a is None:
                ok = False
                break
            rays.append(a.ray)
            chain.append(a.upper)
            cur = a.upper
        if not ok:
            continue
        key = frozenset(chain)
        if key in seen or len(key) != N:
            continue
        seen.add(key)
        last_ray = tess.cells[cur].position + 1
        rays.append(last_ray % N)
        back = up.get(cur)
        returns = back is not None and back.upper == c.id
        residual = model.closure_residual(start=c.position)
        out.append(VertexCycle(tuple(chain), tuple(rays), returns, residual))
    return out


def build_unbent_control(m: int, depth: int = 1, n: int = 2) -> TruncatedTessellation:
    """The unbent fan of ``2m`` wedges, star-closed."""
    return generate_truncation(build_unbent_model(m, n), depth, close_stars=True)


def vertex_closure_check(tess: TruncatedTessellation) -> float:
    """Max crossing-product residual over complete vertex cycles (NaN if none)."""
    if not tess.vertex_cycles:
        tess.notices.append("vertex_closure_check: no complete vertex cycle")
        return float("nan")
    return max(v.residual for v in tess.vertex_cycles)


def build_nerve(tess: TruncatedTessellation) -> CellComplex2:
    """Vertices = cells, edges = shared facets, faces = closed vertex cycles."""
    edges = [(a.lower, a.upper) for a in tess.adjacency]
    eid = {(a.lower, a.upper): i for i, a in enumerate(tess.adjacency)}
    faces = []
    for v in tess.vertex_cycles:
        if not v.returns:
            continue
        cyc = list(v.cells)
        faces.append([eid[(cyc[i], cyc[(i + 1) % len(cyc)])] for i in range(len(cyc))])
    return CellComplex2([c.id for c in tess.cells], edges, faces, min_half_perimeter=2)


def developed_lines(tess: TruncatedTessellation, tol: float = 1e-9) -> list[float]:
    """Distinct lines (angles mod pi) spanned by developed facet rays."""
    angles = []
    for c in tess.cells:
        for r in c.boundary_rays(tess.m):
            angles.append(math.atan2(r[1], r[0]) % math.pi)
    angles.sort()
    lines: list[float] = []
    for a in angles:
        if not lines or min(abs(a - lines[-1]), math.pi - abs(a - lines[-1])) > tol:
            lines.append(a)
    if len(lines) > 1 and math.pi - (lines[-1] - lines[0]) <= tol:
        lines.pop()
    return lines


def walls_shared_by_faces(tess: TruncatedTessellation) -> int:
    """Developed walls whose facets lie on two or more closed vertex cycles."""
    closed = [set(v.cells) for v in tess.vertex_cycles if v.returns]
    count = 0
    for line in developed_lines(tess):
        touching = 0
        for cyc in closed:
            members = [tess.cells[i] for i in cyc]
            if any(min(abs((math.atan2(r[1], r[0]) % math.pi) - line), math.pi - abs((math.atan2(r[1], r[0]) % math.pi) - line)) < 1e-9
                   for c in members for r in c.boundary_rays(tess.m)):
                touching += 1
        if touching >= 2:
            count += 1
    return count


# -- de-projectivisation ---------------------------------------------------------------------


@dataclass(frozen=True)
class LiftedCell:
    id: int
    matrix: np.ndarray  # GL(n+1) representative with the chosen sign
    generators: np.ndarray  # extremal rays of the lifted wedge cone (boundary directions)


@dataclass(frozen=True)
class ConeTessellation:
    cells: tuple[LiftedCell, ...]
    consistent: bool
    sign_flips: tuple[tuple[int, int], ...]

    def contains(self, X: np.ndarray, m: int, tol: float = 1e-9) -> np.ndarray:
        """Membership of homogeneous points in the union of lifted cones (open disk part)."""
        X = np.atleast_2d(X)
        hp = prototype_halfplanes(m)
        out = np.zeros(len(X), dtype=bool)
        for c in self.cells:
            Y = X @ np.linalg.inv(c.matrix).T
            w = Y[:, -1]
            y = Y[:, :2] / np.where(w == 0, np.nan, w)[:, None]
            ok = (w > 0) & np.all(y @ hp[:, :2].T <= tol, axis=1) & (np.einsum("ij,ij->i", y, y) <= 1 + tol)
            out |= ok
        return out


def deprojectivize(tess: TruncatedTessellation) -> ConeTessellation:
    """Lift cells to cones in R^(n+1), propagating signs across facets from the base."""
    n = tess.model.n
    lifted: dict[int, np.ndarray] = {0: np.eye(n + 1)}
    flips: list[tuple[int, int]] = []
    nb: dict[int, list[tuple[int, np.ndarray]]] = {c.id: [] for c in tess.cells}
    for a in tess.adjacency:
        X = tess.model.crossing_matrix(_ray_position(tess, a))
        nb[a.lower].append((a.upper, X))
        nb[a.upper].append((a.lower, np.linalg.inv(X)))
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w, X in nb[u]:
            cand = lifted[u] @ X
            if w not in lifted:
                lifted[w] = cand
                queue.append(w)
            else:
                # same projective class; compare the sign of the scale factor
                ref = lifted[w]
                k = np.sum(cand * ref) / np.sum(ref * ref)
                if k <= 0 or np.abs(cand - k * ref).max() > 1e-8 * np.abs(ref).max():
                    flips.append((u, w))
    a = math.pi / tess.m
    gens0 = np.array([[0.0, 0.0, 1.0], [1.0, 0.0, 1.0], [math.cos(a), math.sin(a), 1.0]])
    if n > 2:
        gens0 = np.hstack([gens0[:, :2], np.zeros((3, n - 2)), gens0[:, 2:]])
    cells = tuple(LiftedCell(i, lifted[i], gens0 @ lifted[i].T) for i in sorted(lifted))
    flips_unique = tuple(sorted(set(tuple(sorted(f)) for f in flips)))
    return ConeTessellation(cells, not flips_unique, flips_unique)


def _ray_position(tess: TruncatedTessellation, a: Adjacency) -> int:
    return tess.cells[a.lower].position + 1


# -- holonomy comparison for the unbent control ---------------------------------------------


def dihedral_group(m: int, n: int = 2) -> list[ProjectiveMap]:
    """Closure enumeration of the group generated by :func:`dihedral_generators`."""
    r1, r2 = dihedral_generators(m, LorentzForm(n))
    elems = [ProjectiveMap.identity(n)]
    frontier = list(elems)
    while frontier:
        new = []
        for g in frontier:
            for s in (r1, r2):
                h = g @ s
                if all(proj_distance(h, e) > 1e-9 for e in elems):
                    elems.append(h)
                    new.append(h)
        frontier = new
        if len(elems) > 4 * m + 4:
            raise RuntimeError("dihedral enumeration did not close")
    return elems


def bisector_involution(m: int, n: int = 2) -> ProjectiveMap:
    """Reflection of the prototype wedge across its bisector."""
    a = math.pi / m
    M = np.eye(n + 1)
    M[:2, :2] = np.array([[math.cos(a), math.sin(a)], [math.sin(a), -math.cos(a)]])
    return ProjectiveMap(M)


__all__ = [
    "Adjacency",
    "CellInstance",
    "ConeTessellation",
    "CrossSectionModel",
    "ModelError",
    "TruncatedTessellation",
    "TruncationCapExceeded",
    "VertexCycle",
    "bisector_involution",
    "build_model",
    "build_nerve",
    "build_unbent_control",
    "build_unbent_model",
    "check_m",
    "corrupt",
    "deprojectivize",
    "developed_lines",
    "dihedral_group",
    "generate_truncation",
    "prototype_halfplanes",
    "suspend_model",
    "vertex_closure_check",
    "walls_shared_by_faces",
]
