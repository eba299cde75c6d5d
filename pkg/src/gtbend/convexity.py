"""Convexity checks on finite developed truncations, and the certificate.

All checks work on a :class:`CellFamily`: developed planar cells given as
affine images of one prototype (half-planes, optionally capped by the unit
disk), their dual graph, the set of boundary cells whose neighbours are
missing, and the images of codimension-2 faces. Truncations of the fan model
convert with :func:`family_from_truncation`; the controls build families
directly.

Segment coverage is exact per cell (parameter intervals), so a reported
failure comes with a concrete segment and the parameter of the gap.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable

import numpy as np

from . import __version__
from ._kernels import BACKEND, coverage_gaps, points_in_cells, segment_intervals
from .bend import Hyperplane, Polytope, check_cor_C1
from .config import DEFAULT_SAMPLING, DEFAULT_TOLERANCES, Tolerances
from .gtmodel import (
    CrossSectionModel,
    TruncatedTessellation,
    build_nerve,
    developed_lines,
    generate_truncation,
    vertex_closure_check,
)
from .nerve import CellComplex2, enumerate_geodesics, geo_hull
from .verdict import FAIL, INCONCLUSIVE, PASS, HypothesisError, Verdict, combine

FORMAT = "gtbend.certificate/1"
ADMISSIBLE_FRACTION = 0.10


# -- cell families ------------------------------------------------------------------------


@dataclass
class CellFamily:
    name: str
    Linv: np.ndarray
    off: np.ndarray
    hp: np.ndarray
    nhp: np.ndarray
    disk: np.ndarray
    nerve: CellComplex2
    sampler: Callable[[np.random.Generator, int], np.ndarray]
    boundary: frozenset[int] = frozenset()
    vertex_points: np.ndarray = field(default_factory=lambda: np.zeros((0, 2)))
    labels: tuple[str, ...] = ()
    sectors: np.ndarray | None = None  # (C, 2): start angle, width; apex at the origin
    outlines: list[np.ndarray] | None = None  # inscribed polygons for the facet predicate

    @property
    def n_cells(self) -> int:
        return len(self.Linv)

    def L(self) -> np.ndarray:
        return np.linalg.inv(self.Linv)

    def develop(self, c: int | np.ndarray, Y: np.ndarray) -> np.ndarray:
        L = np.linalg.inv(self.Linv[c])
        if L.ndim == 2:
            return Y @ L.T + self.off[c]
        return np.einsum("kij,kj->ki", L, Y) + self.off[c]

    def sample_points(self, cells: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        Y = self.sampler(rng, len(cells))
        return self.develop(np.asarray(cells), Y)

    def intervals(self, P0: np.ndarray, P1: np.ndarray, slack: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
        return segment_intervals(self.Linv, self.off, self.hp, self.nhp, self.disk, P0, P1, slack)

    def contains(self, X: np.ndarray, slack: float = 0.0) -> np.ndarray:
        return points_in_cells(self.Linv, self.off, self.hp, self.nhp, self.disk, X, slack)

    def label(self, c: int) -> str:
        return self.labels[c] if self.labels else str(c)

    @property
    def name_dict(self) -> dict[str, Any]:
        return {"family": self.name, "cells": self.n_cells}


def _wedge_sampler(m: int, shrink: float = 1e-6) -> Callable[[np.random.Generator, int], np.ndarray]:
    a = math.pi / m

    def sample(rng: np.random.Generator, k: int) -> np.ndarray:
        phi = a * rng.uniform(shrink, 1.0 - shrink, k)
        r = np.sqrt(rng.uniform(shrink, 1.0, k)) * (1.0 - shrink)
        return np.column_stack([r * np.cos(phi), r * np.sin(phi)])

    return sample


def family_from_truncation(tess: TruncatedTessellation, arc_samples: int = 16) -> CellFamily:
    Linv, off, hp, nhp, disk = tess.cell_arrays()
    m = tess.m
    nerve = build_nerve(tess)
    sectors = np.empty((len(tess.cells), 2))
    outlines = []
    phis = np.linspace(0.0, math.pi / m, arc_samples + 1)
    arc = np.column_stack([np.cos(phis), np.sin(phis)])
    for i, c in enumerate(tess.cells):
        r0, r1 = c.boundary_rays(m)
        start = math.atan2(r0[1], r0[0])
        width = (math.atan2(r1[1], r1[0]) - start) % (2 * math.pi)
        sectors[i] = start, width
        L = c.transverse_linear()
        outlines.append(np.vstack([[0.0, 0.0], arc @ L.T]))
    return CellFamily(
        name=f"{tess.model.kind} fan m={m}",
        Linv=Linv, off=off, hp=hp, nhp=nhp, disk=disk, nerve=nerve,
        sampler=_wedge_sampler(m),
        boundary=frozenset(tess.boundary_cells()),
        vertex_points=np.zeros((1, 2)),
        labels=tuple(f"c{c.id}[{c.label}]" for c in tess.cells),
        sectors=sectors,
        outlines=outlines,
    )


def as_family(obj: TruncatedTessellation | CellFamily) -> CellFamily:
    return obj if isinstance(obj, CellFamily) else family_from_truncation(obj)


# -- controls -------------------------------------------------------------------------------


def torus_control(layers: int = 3) -> CellFamily:
    """Cells ``R^k A^j P`` of the punctured-plane torus example.

    ``P`` is the square with vertices (1,0), (2,0), (0,1), (0,2), ``A(x) = 2x``
    and ``R`` the rotation by ``pi/2``. The union of all cells is the plane
    minus the origin, which is not convex.
    """
    J = layers
    idx = {}
    mats = []
    for j in range(-J, J + 1):
        for k in range(4):
            idx[(j, k)] = len(mats)
            c, s = math.cos(k * math.pi / 2), math.sin(k * math.pi / 2)
            mats.append((2.0 ** j) * np.array([[c, -s], [s, c]]))
    C = len(mats)
    Linv = np.array([np.linalg.inv(M) for M in mats])
    hp = np.broadcast_to(np.array([[-1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [-1.0, -1.0, -1.0], [1.0, 1.0, 2.0]]),
                         (C, 4, 3)).copy()
    edges = []
    for (j, k), i in idx.items():
        edges.append((i, idx[(j, (k + 1) % 4)]))
        if j < J:
            edges.append((i, idx[(j + 1, k)]))
    nerve = CellComplex2(list(idx), edges, (), min_half_perimeter=2)
    boundary = frozenset(i for (j, _), i in idx.items() if abs(j) == J)
    corners = np.array([[1.0, 0.0], [2.0, 0.0], [0.0, 1.0], [0.0, 2.0]])
    verts = np.vstack([corners @ M.T for M in mats])

    def sample(rng: np.random.Generator, k: int) -> np.ndarray:
        s = np.sqrt(1.0 + 3.0 * rng.uniform(1e-6, 1 - 1e-6, k))
        v = rng.uniform(1e-6, 1 - 1e-6, k)
        return np.column_stack([s * v, s * (1 - v)])

    return CellFamily("punctured-plane torus", Linv, np.zeros((C, 2)), hp, np.full(C, 4), np.zeros(C, dtype=bool), nerve,
                      sample, boundary, np.unique(np.round(verts, 12), axis=0),
                      tuple(f"A^{j}R^{k}" for (j, k) in idx))


def polygonal_control(sides: int = 4) -> CellFamily:
    """A regular polygon split into triangles from its centre (convex, not strictly)."""
    ang = 2 * math.pi / sides
    base = np.array([[1.0, 0.0], [math.cos(ang), math.sin(ang)]])
    # prototype triangle (0, e1, e2) in barycentric coordinates y >= 0, y0 + y1 <= 1
    hp0 = np.array([[-1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [1.0, 1.0, 1.0]])
    Ls = []
    for k in range(sides):
        c, s = math.cos(k * ang), math.sin(k * ang)
        R = np.array([[c, -s], [s, c]])
        Ls.append(R @ base.T)
    Linv = np.array([np.linalg.inv(L) for L in Ls])
    edges = [(k, (k + 1) % sides) for k in range(sides)]
    nerve = CellComplex2(list(range(sides)), edges, (), min_half_perimeter=2)

    def sample(rng: np.random.Generator, k: int) -> np.ndarray:
        u = rng.dirichlet([1.0, 1.0, 1.0], k)
        return u[:, :2]

    return CellFamily(f"{sides}-gon", Linv, np.zeros((sides, 2)), np.broadcast_to(hp0, (sides, 3, 3)).copy(),
                      np.full(sides, 3), np.zeros(sides, dtype=bool), nerve, sample,
                      vertex_points=np.zeros((1, 2)))


# -- disjointness ------------------------------------------------------------------------------


def _arc_overlap(a1: float, w1: float, a2: float, w2: float) -> float:
    d = (a2 - a1) % (2 * math.pi)
    total = 0.0
    for shift in (d, d - 2 * math.pi):
        total += max(0.0, min(w1, shift + w2) - max(0.0, shift))
    return total


def check_disjoint_interiors(tess: TruncatedTessellation | CellFamily, points: int = DEFAULT_SAMPLING.disjoint_points,
                             seed: int = 0, tol: Tolerances = DEFAULT_TOLERANCES) -> Verdict:
    fam = as_family(tess)
    C = fam.n_cells
    if fam.sectors is not None:
        worst, witness = 0.0, None
        for i in range(C):
            for j in range(i + 1, C):
                ov = _arc_overlap(*fam.sectors[i], *fam.sectors[j])
                if ov > worst:
                    worst, witness = ov, (i, j)
        if worst > tol.orientation:
            i, j = witness
            # a point near the apex inside the common angular range
            mid = _overlap_direction(fam.sectors[i], fam.sectors[j])
            pt = 1e-3 * np.array([math.cos(mid), math.sin(mid)])
            return Verdict("disjoint_interiors", FAIL, residual=worst,
                           witness={"cells": [fam.label(i), fam.label(j)], "point": pt.tolist()},
                           details={"method": "sector", "pairs": C * (C - 1) // 2})
        return Verdict("disjoint_interiors", PASS, residual=worst,
                       details={"method": "sector", "pairs": C * (C - 1) // 2})
    rng = np.random.default_rng([seed, 0xD15])
    for i in range(C):
        X = fam.sample_points(np.full(points, i), rng)
        inside = fam.contains(X, slack=-tol.shrink)
        inside[:, i] = False
        hit = np.argwhere(inside)
        if hit.size:
            p, j = hit[0]
            return Verdict("disjoint_interiors", FAIL, residual=float(len(hit)) / points,
                           witness={"cells": [fam.label(i), fam.label(int(j))], "point": X[p].tolist()},
                           details={"method": "sampled", "points_per_cell": points})
    return Verdict("disjoint_interiors", PASS, residual=0.0,
                   details={"method": "sampled", "points_per_cell": points})


def _overlap_direction(s1: np.ndarray, s2: np.ndarray) -> float:
    a1, w1 = s1
    a2, w2 = s2
    d = (a2 - a1) % (2 * math.pi)
    for shift in (d, d - 2 * math.pi):
        lo, hi = max(0.0, shift), min(w1, shift + w2)
        if hi > lo:
            return a1 + 0.5 * (lo + hi)
    return a1


# -- adjacent unions ------------------------------------------------------------------------------


def _pair_union_trials(fam: CellFamily, a: int, b: int, trials: int, rng: np.random.Generator) -> tuple[int, Any]:
    half = trials // 2
    P0 = np.vstack([fam.sample_points(np.full(half, a), rng), fam.sample_points(np.full(trials - half, b), rng)])
    P1 = np.vstack([fam.sample_points(np.full(half, b), rng), fam.sample_points(np.full(trials - half, a), rng)])
    if fam.outlines is not None:
        # frontier probes: inscribed outline vertices pairwise
        V = np.vstack([fam.outlines[a], fam.outlines[b]])
        ii, jj = np.triu_indices(len(V), 1)
        P0 = np.vstack([P0, V[ii]])
        P1 = np.vstack([P1, V[jj]])
    lo, hi = fam.intervals(P0, P1, slack=DEFAULT_TOLERANCES.shrink)
    mask = np.zeros(lo.shape, dtype=bool)
    mask[:, [a, b]] = True
    start, _ = coverage_gaps(lo, hi, mask, tol=1e-12)
    bad = np.flatnonzero(start >= 0)
    if bad.size:
        k = int(bad[0])
        return int(bad.size), {"cells": [fam.label(a), fam.label(b)], "segment": [P0[k].tolist(), P1[k].tolist()],
                               "gap_at": float(start[k])}
    return 0, None


def _facet_predicate(fam: CellFamily, a: int, b: int, trials: int, seed: int) -> dict[str, Any]:
    """Run the two-body predicate on inscribed outlines across the shared ray."""
    assert fam.outlines is not None and fam.sectors is not None
    Da, Db = fam.outlines[a], fam.outlines[b]
    # shared facet: the ray common to both outlines
    shared = [p for p in Da[1:] if np.min(np.linalg.norm(Db[1:] - p, axis=1)) < 1e-12]
    if not shared:
        return {"status": "no shared facet"}
    v = shared[0]
    normal = np.array([-v[1], v[0]])
    if np.mean(Db @ normal) < np.mean(Da @ normal):
        normal = -normal
    H = Hyperplane(normal / np.linalg.norm(normal), 0.0)
    F = Polytope(np.array([[0.0, 0.0], v]))
    # dual point of the developed wall: its polar, the ideal point normal to the ray
    p = np.array([H.normal[0], H.normal[1], 0.0])
    try:
        res = check_cor_C1(Polytope(Da), Polytope(Db), H, F, p, trials=trials, seed=seed)
    except HypothesisError as exc:
        return {"status": "hypothesis", "message": str(exc)}
    return {"status": res.status, "E_in_limit_cone": res.details.get("E_in_limit_cone"),
            "crossing_in_facet": res.details.get("crossing_in_facet")}


def check_adjacent_union_convex(tess: TruncatedTessellation | CellFamily,
                                trials: int = DEFAULT_SAMPLING.adjacency_trials, seed: int = 0) -> Verdict:
    fam = as_family(tess)
    rng = np.random.default_rng([seed, 0xAD1])
    violations = 0
    witness = None
    predicate: dict[str, int] = {}
    pairs = 0
    for e, (a, b) in enumerate(fam.nerve.edges):
        pairs += 1
        nbad, w = _pair_union_trials(fam, a, b, trials, rng)
        if nbad and witness is None:
            witness = w
        violations += nbad
        if fam.outlines is not None:
            r = _facet_predicate(fam, a, b, min(trials, 200), seed + e)
            predicate[r["status"]] = predicate.get(r["status"], 0) + 1
            if r["status"] == FAIL:
                violations += 1
                witness = witness or {"cells": [fam.label(a), fam.label(b)], "predicate": r}
    details = {"pairs": pairs, "trials_per_pair": trials, "facet_predicate": predicate}
    if violations:
        return Verdict("adjacent_union_convex", FAIL, residual=float(violations), witness=witness, details=details)
    return Verdict("adjacent_union_convex", PASS, residual=0.0, details=details)


# -- local picture ------------------------------------------------------------------------------


def check_local_picture(tess: TruncatedTessellation, vertex: int | None = 0,
                        tol: Tolerances = DEFAULT_TOLERANCES) -> Verdict:
    """Walls through a developed codimension-2 face: distinct lines and angular partition.

    ``vertex`` indexes ``tess.vertex_cycles``; cycles that do not return to
    their first cell count as incomplete.
    """
    name = "local_picture"
    cycles = tess.vertex_cycles
    if vertex is None or vertex >= len(cycles) or not cycles[vertex].returns:
        return Verdict(name, INCONCLUSIVE, details={"reason": "incomplete vertex cycle (truncation boundary)"})
    cyc = cycles[vertex]
    m = tess.m
    cells = [tess.cells[i] for i in cyc.cells]
    sub = TruncatedTessellation(tess.model, tess.depth, cells, [], [])
    lines = developed_lines(sub)
    widths = []
    starts = []
    for c in cells:
        r0, r1 = c.boundary_rays(m)
        s = math.atan2(r0[1], r0[0])
        starts.append(s)
        widths.append((math.atan2(r1[1], r1[0]) - s) % (2 * math.pi))
    overlap = max((_arc_overlap(starts[i], widths[i], starts[j], widths[j])
                   for i in range(len(cells)) for j in range(i + 1, len(cells))), default=0.0)
    defect = abs(sum(widths) - 2 * math.pi)
    expected = tess.model.sectors // 2
    ok = len(lines) == expected and expected >= 4 and overlap <= tol.orientation and defect <= 1e-10
    details = {"lines": len(lines), "expected_lines": expected,
               "line_angles": [round(x, 12) for x in lines], "cells": len(cells),
               "angle_sum_defect": defect, "max_overlap": overlap}
    if ok:
        return Verdict(name, PASS, residual=max(defect, overlap), details=details)
    return Verdict(name, FAIL, residual=max(defect, overlap),
                   witness={"vertex_cycle": list(cyc.cells)}, details=details)


# -- global convexity --------------------------------------------------------------------------


def _segment_vertex_distance(P0: np.ndarray, P1: np.ndarray, V: np.ndarray) -> np.ndarray:
    if len(V) == 0:
        return np.full(len(P0), np.inf)
    D = P1 - P0
    dd = np.einsum("ij,ij->i", D, D)
    out = np.full(len(P0), np.inf)
    for v in V:
        s = np.clip(np.einsum("ij,ij->i", v - P0, D) / np.where(dd > 0, dd, 1.0), 0.0, 1.0)
        q = P0 + s[:, None] * D
        out = np.minimum(out, np.linalg.norm(q - v, axis=1))
    return out


class _HullCache:
    def __init__(self, nerve: CellComplex2) -> None:
        self.nerve = nerve

        @lru_cache(maxsize=None)
        def hull(a: int, b: int) -> frozenset[int]:
            return geo_hull(self.nerve, a, b).vertices

        self.hull = hull


def _sample_pairs(fam: CellFamily, trials: int, seed: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    C = fam.n_cells
    cells = np.empty((trials, 2), dtype=np.int64)
    P0 = np.empty((trials, 2))
    P1 = np.empty((trials, 2))
    for i in range(trials):
        rng = np.random.default_rng([seed, i])
        ab = rng.integers(0, C, 2)
        cells[i] = ab
        X = fam.sample_points(ab, rng)
        P0[i], P1[i] = X
    return cells, P0, P1


def check_global_convexity(tess: TruncatedTessellation | CellFamily, trials: int = DEFAULT_SAMPLING.global_trials,
                           seed: int = 0, tol: Tolerances = DEFAULT_TOLERANCES,
                           probe_antipodal: bool = True) -> Verdict:
    """Guarded segment-coverage test.

    A trial is admissible when the gallery hull of its two cells avoids the
    truncation boundary and the segment stays away from codimension-2
    images. An admissible segment must be covered by cells of that hull.
    """
    name = "global_convexity"
    fam = as_family(tess)
    hulls = _HullCache(fam.nerve)
    cells, P0, P1 = _sample_pairs(fam, trials, seed)
    probes = 0
    if probe_antipodal:
        # points and their negatives: the segment passes through the origin region
        rng = np.random.default_rng([seed, 0xA47])
        k = np.arange(fam.n_cells)
        X = fam.sample_points(k, rng)
        inside = fam.contains(-X, slack=-tol.shrink)
        for c in k:
            hit = np.flatnonzero(inside[c])
            if hit.size:
                cells = np.vstack([cells, [c, hit[0]]])
                P0 = np.vstack([P0, X[c]])
                P1 = np.vstack([P1, -X[c]])
                probes += 1
    near = _segment_vertex_distance(P0, P1, fam.vertex_points) <= tol.shrink
    admissible = ~near
    masks = np.zeros((len(P0), fam.n_cells), dtype=bool)
    for i, (a, b) in enumerate(cells):
        if not admissible[i]:
            continue
        h = hulls.hull(int(a), int(b))
        if h & fam.boundary:
            admissible[i] = False
            continue
        masks[i, list(h)] = True
    n_adm = int(admissible[:trials].sum())
    lo, hi = fam.intervals(P0, P1)
    start, end = coverage_gaps(lo, hi, masks, tol=1e-12)
    bad = np.flatnonzero(admissible & (start >= 0))
    details = {"trials": trials, "admissible": n_adm, "probes": probes,
               "skipped_boundary_or_vertex": int(trials - n_adm)}
    if bad.size:
        # prefer a segment that no truncation cell covers
        any_start, _ = coverage_gaps(lo[bad], hi[bad], np.ones((bad.size, fam.n_cells), dtype=bool), tol=1e-12)
        strong = bad[any_start >= 0]
        details["uncovered_by_any_cell"] = int(strong.size)
        i = int(strong[-1]) if strong.size else int(bad[0])
        D = P1[i] - P0[i]
        gap = (P0[i] + 0.5 * (start[i] + end[i]) * D).tolist()
        details["violations"] = int(bad.size)
        return Verdict(name, FAIL, residual=float(np.max(end[bad] - start[bad])),
                       witness={"segment": [P0[i].tolist(), P1[i].tolist()],
                                "cells": [fam.label(int(cells[i, 0])), fam.label(int(cells[i, 1]))],
                                "uncovered_point": gap, "gap": [float(start[i]), float(end[i])]},
                       details=details)
    if n_adm < ADMISSIBLE_FRACTION * trials:
        return Verdict(name, INCONCLUSIVE, details={**details, "reason": "too few admissible trials; deepen truncation"})
    return Verdict(name, PASS, residual=0.0, details=details)


# -- gallery-geodesy bridge ----------------------------------------------------------------------


def crossing_sequence(fam: CellFamily, P0: np.ndarray, P1: np.ndarray, min_length: float = 1e-12) -> list[int]:
    """Cells met by the segment ``P0 P1`` in order along it."""
    lo, hi = fam.intervals(P0[None, :], P1[None, :])
    lo, hi = lo[0], hi[0]
    hit = np.flatnonzero(hi - lo > min_length)
    return [int(c) for c in hit[np.argsort(lo[hit], kind="stable")]]


def check_gallery_geodesy(tess: TruncatedTessellation | CellFamily, trials: int = DEFAULT_SAMPLING.adjacency_trials,
                          seed: int = 0, tol: Tolerances = DEFAULT_TOLERANCES) -> Verdict:
    """The crossing sequence of a generic segment is a geodesic of the nerve."""
    name = "gallery_geodesy"
    fam = as_family(tess)
    cells, P0, P1 = _sample_pairs(fam, trials, seed + 0x6A1)
    near = _segment_vertex_distance(P0, P1, fam.vertex_points) <= tol.shrink
    Z = fam.nerve
    dist = np.array([Z.distances_from(c) for c in range(fam.n_cells)])
    geos: dict[tuple[int, int], set[tuple[int, ...]]] = {}
    admissible = 0
    for i in range(trials):
        if near[i]:
            continue
        seq = crossing_sequence(fam, P0[i], P1[i])
        if not seq or seq[0] != cells[i, 0] or seq[-1] != cells[i, 1]:
            continue
        admissible += 1
        a, b = int(cells[i, 0]), int(cells[i, 1])
        ok = len(seq) - 1 == dist[a, b]
        if ok and a != b:
            key = (a, b)
            if key not in geos:
                geos[key] = {p.vertices for p in enumerate_geodesics(Z, a, b)}
            ok = tuple(seq) in geos[key]
        if not ok:
            return Verdict(name, FAIL, residual=float(len(seq) - 1 - dist[a, b]),
                           witness={"segment": [P0[i].tolist(), P1[i].tolist()],
                                    "crossing_sequence": [fam.label(c) for c in seq],
                                    "nerve_distance": int(dist[a, b])},
                           details={"trials": trials, "admissible": admissible})
    status = PASS if admissible >= ADMISSIBLE_FRACTION * trials else INCONCLUSIVE
    return Verdict(name, status, residual=0.0, details={"trials": trials, "admissible": admissible})


# -- strict convexity (advisory) ------------------------------------------------------------------


def frontier_points(fam: CellFamily, directions: int, center: np.ndarray | None = None,
                    reach: float = 1e3) -> np.ndarray:
    """Frontier of the star-shaped union along rays from ``center``."""
    c = np.zeros(2) if center is None else np.asarray(center, float)
    ang = 2 * math.pi * (np.arange(directions) + 0.5) / directions
    U = np.column_stack([np.cos(ang), np.sin(ang)])
    P0 = np.broadcast_to(c, U.shape).copy()
    P1 = c + reach * U
    lo, hi = fam.intervals(P0, P1)
    start, _ = coverage_gaps(lo, hi, np.ones(lo.shape, dtype=bool), tol=1e-12)
    rho = np.where(start < 0, 1.0, start) * reach
    return c + rho[:, None] * U


def longest_flat_run(F: np.ndarray, tol: float = 1e-10) -> tuple[float, int]:
    """Longest chord of consecutive frontier samples that are collinear within ``tol``."""
    k = len(F)
    A, B, C = F, np.roll(F, -1, axis=0), np.roll(F, -2, axis=0)
    chord = C - A
    U = B - A
    dev = np.abs(chord[:, 0] * U[:, 1] - chord[:, 1] * U[:, 0]) / np.maximum(np.linalg.norm(chord, axis=1), 1e-300)
    flat = dev <= tol
    if flat.all():
        return float(np.max(np.linalg.norm(F - F[0], axis=1))), k
    best, best_len = 0.0, 0
    # rotate so that the scan starts on a non-flat triple
    s0 = int(np.flatnonzero(~flat)[0]) + 1
    i = 0
    while i < k:
        j = i
        while j < k and flat[(s0 + j) % k]:
            j += 1
        if j > i:
            a = (s0 + i) % k
            b = (s0 + j + 1) % k
            length = float(np.linalg.norm(F[b] - F[a]))
            if length > best:
                best, best_len = length, j - i + 2
        i = j + 1
    return best, best_len


def check_strict_convexity_sampling(tess: TruncatedTessellation | CellFamily,
                                    directions: int = DEFAULT_SAMPLING.frontier_directions,
                                    seed: int = 0, tol: float = 1e-10) -> Verdict:
    """Advisory: flat pieces of the developed frontier at sampling resolution.

    ``seed`` only rotates the direction grid, for reproducible variation.
    """
    fam = as_family(tess)
    F = frontier_points(fam, directions)
    if seed:
        F = np.roll(F, int(np.random.default_rng(seed).integers(directions)), axis=0)
    spacing = float(np.max(np.linalg.norm(np.roll(F, -1, axis=0) - F, axis=1)))
    flat, npts = longest_flat_run(F, tol)
    resolution = 2.0 * spacing
    details = {"directions": directions, "spacing": spacing, "resolution": resolution,
               "flat_samples": npts, "advisory": True}
    if flat < resolution:
        return Verdict("strict_convexity", PASS, residual=flat, details=details)
    return Verdict("strict_convexity", FAIL, residual=flat, details=details,
                   witness={"flat_length": flat})


# -- certificate ------------------------------------------------------------------------------


@dataclass
class ConvexityCertificate:
    model: dict[str, Any]
    checks: list[Verdict]
    verdict: str
    versions: dict[str, str]

    def check(self, name: str) -> Verdict:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def failing(self) -> list[str]:
        return [c.name for c in self.checks if c.status == FAIL]

    def to_dict(self) -> dict[str, Any]:
        return {"format": FORMAT, "model": self.model, "checks": [c.to_dict() for c in self.checks],
                "verdict": self.verdict, "versions": self.versions}

    def to_json(self) -> str:
        return json.dumps(_jsonable(self.to_dict()), sort_keys=True, indent=2) + "\n"


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else None
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


@dataclass(frozen=True)
class CertifyConfig:
    seed: int = 1
    trials: int = DEFAULT_SAMPLING.global_trials
    adjacency_trials: int = DEFAULT_SAMPLING.adjacency_trials
    bridge_trials: int = DEFAULT_SAMPLING.adjacency_trials
    directions: int = DEFAULT_SAMPLING.frontier_directions
    tolerances: Tolerances = DEFAULT_TOLERANCES


ADVISORY = frozenset({"strict_convexity"})


def certify(model: CrossSectionModel, depth: int, config: CertifyConfig | None = None) -> ConvexityCertificate:
    cfg = config or CertifyConfig()
    tol = cfg.tolerances
    tess = generate_truncation(model, depth, close_stars=True)
    fam = family_from_truncation(tess)
    checks = []

    res = vertex_closure_check(tess)
    if math.isnan(res):
        checks.append(Verdict("vertex_closure", INCONCLUSIVE, details={"reason": "no complete vertex cycle"}))
    else:
        worst = max(tess.vertex_cycles, key=lambda v: v.residual)
        ok = res < tol.composition
        checks.append(Verdict("vertex_closure", PASS if ok else FAIL, residual=res,
                              witness=None if ok else {"vertex_cycle": list(worst.cells), "rays": list(worst.rays)},
                              details={"cycles": len(tess.vertex_cycles), "cells": len(tess.cells)}))
    checks.append(check_disjoint_interiors(fam, seed=cfg.seed, tol=tol))
    checks.append(check_adjacent_union_convex(fam, trials=cfg.adjacency_trials, seed=cfg.seed))
    local = [check_local_picture(tess, i, tol) for i in range(len(tess.vertex_cycles))]
    if local:
        status = combine([v.status for v in local])
        checks.append(Verdict("local_picture", status, residual=max(v.residual or 0.0 for v in local),
                              witness=next((v.witness for v in local if v.status == FAIL), None),
                              details={"vertices": len(local), "per_vertex": [v.details for v in local]}))
    else:
        checks.append(check_local_picture(tess, None, tol))
    checks.append(check_global_convexity(fam, trials=cfg.trials, seed=cfg.seed, tol=tol))
    checks.append(check_gallery_geodesy(fam, trials=cfg.bridge_trials, seed=cfg.seed, tol=tol))
    checks.append(check_strict_convexity_sampling(fam, directions=cfg.directions))
    for c in checks:
        c.details["advisory"] = c.name in ADVISORY
    overall = combine([c.status for c in checks if c.name not in ADVISORY])
    model_info = {**model.to_dict(), "depth": depth, "effective_depth": tess.effective_depth,
                  "seed": cfg.seed, "tolerances": tol.to_dict(),
                  "sampling": {"trials": cfg.trials, "adjacency_trials": cfg.adjacency_trials,
                               "bridge_trials": cfg.bridge_trials, "directions": cfg.directions}}
    model_info.pop("wall_angles", None)
    versions = {"gtbend": __version__, "numpy": np.__version__, "kernel_backend": BACKEND}
    return ConvexityCertificate(model_info, checks, overall, versions)


__all__ = [
    "CellFamily",
    "CertifyConfig",
    "ConvexityCertificate",
    "as_family",
    "certify",
    "check_adjacent_union_convex",
    "check_disjoint_interiors",
    "check_gallery_geodesy",
    "check_global_convexity",
    "check_local_picture",
    "check_strict_convexity_sampling",
    "crossing_sequence",
    "family_from_truncation",
    "frontier_points",
    "longest_flat_run",
    "polygonal_control",
    "torus_control",
]
