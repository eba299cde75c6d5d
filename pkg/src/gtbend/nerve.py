"""Two-dimensional nerve complexes and their small-cancellation combinatorics.

A :class:`CellComplex2` has vertices, edges (vertex pairs with ids) and
faces given as cyclic edge sequences. All lengths are combinatorial: each
edge has length 1 and a face with ``2t`` edges is a ``2t``-gon.

Text fixture format::

    # comments and blank lines are ignored
    vertices
    v0 v1 v2 v3
    edges
    e0 v0 v1
    e1 v1 v2
    faces
    f0 e0 e1 e2 e3

Names are whitespace-free tokens. Vertex names may span several lines.
"""

from __future__ import annotations

import itertools
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Sequence

import numpy as np

from .config import DEFAULT_SAMPLING


class ComplexError(ValueError):
    """Malformed complex (non-simple face boundary, unknown ids, ...)."""


class ComplexParseError(ComplexError):
    def __init__(self, message: str, lineno: int) -> None:
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class CapExceeded(RuntimeError):
    """Path enumeration produced more results than the cap allows."""


@dataclass(frozen=True)
class EdgePath:
    """A path in the 1-skeleton: ``vertices[i]`` and ``vertices[i+1]`` bound ``edges[i]``."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.vertices) != len(self.edges) + 1:
            raise ValueError("a path with k edges has k+1 vertices")

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    def reversed(self) -> "EdgePath":
        return EdgePath(self.vertices[::-1], self.edges[::-1])

    def sub(self, i: int, j: int) -> "EdgePath":
        return EdgePath(self.vertices[i:j + 1], self.edges[i:j])


@dataclass(frozen=True)
class Piece:
    faces: tuple[int, int]
    edges: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class LinkBigon:
    vertex: int
    edge_pair: tuple[int, int]
    faces: tuple[int, int]


@dataclass(frozen=True)
class SmallCancellationReport:
    k: int
    ok: bool
    max_piece: int
    pieces: tuple[Piece, ...]
    link_bigons: tuple[LinkBigon, ...]
    witness: Piece | LinkBigon | None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class Bigon:
    """Two paths with common endpoints and a classification tag.

    ``kind`` is one of ``degenerate``, ``elementary``, ``simple``,
    ``concatenation``; a part that fits none of these is tagged
    ``undecomposable``.
    """

    alpha: EdgePath
    beta: EdgePath
    kind: str
    parts: tuple["Bigon", ...] = ()
    support: tuple[int, ...] = ()  # face ids (elementary) or corridor faces (simple)

    @property
    def x(self) -> int:
        return self.alpha.start

    @property
    def y(self) -> int:
        return self.alpha.end

    def primitive_parts(self) -> tuple["Bigon", ...]:
        return self.parts if self.kind == "concatenation" else (self,)


@dataclass(frozen=True)
class Corridor:
    faces: tuple[int, ...]
    edges: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.faces)


@dataclass(frozen=True)
class HullResult:
    vertices: frozenset[int]
    diameter: int
    distance: int


class CellComplex2:
    """Finite 2-complex with combinatorial edge lengths.

    Parameters
    ----------
    vertices:
        Vertex names (any hashables); indices follow this order.
    edges:
        ``(u, v)`` pairs of vertex *indices*; ids follow this order.
    faces:
        Cyclic sequences of edge ids.
    min_half_perimeter:
        Faces must have ``2t`` edges with ``t`` at least this value.
    """

    def __init__(self, vertices: Sequence[Hashable], edges: Sequence[tuple[int, int]],
                 faces: Sequence[Sequence[int]] = (), *, min_half_perimeter: int = 4,
                 edge_names: Sequence[str] | None = None, face_names: Sequence[str] | None = None) -> None:
        self.vertex_names = tuple(vertices)
        nv = len(self.vertex_names)
        self.edges = tuple((int(u), int(v)) for u, v in edges)
        for i, (u, v) in enumerate(self.edges):
            if not (0 <= u < nv and 0 <= v < nv) or u == v:
                raise ComplexError(f"edge {i} has invalid endpoints {(u, v)}")
        self.faces = tuple(tuple(int(e) for e in f) for f in faces)
        self.edge_names = tuple(edge_names) if edge_names else tuple(f"e{i}" for i in range(len(self.edges)))
        self.face_names = tuple(face_names) if face_names else tuple(f"f{i}" for i in range(len(self.faces)))
        self.min_half_perimeter = min_half_perimeter
        self._adj: list[list[tuple[int, int]]] = [[] for _ in range(nv)]
        for i, (u, v) in enumerate(self.edges):
            self._adj[u].append((v, i))
            self._adj[v].append((u, i))
        for lst in self._adj:
            lst.sort(key=lambda p: p[1])
        self.face_vertices = tuple(self._face_cycle(i, f) for i, f in enumerate(self.faces))
        self.edge_faces: dict[int, list[int]] = defaultdict(list)
        for i, f in enumerate(self.faces):
            for e in f:
                self.edge_faces[e].append(i)

    def _face_cycle(self, idx: int, f: tuple[int, ...]) -> tuple[int, ...]:
        k = len(f)
        if k < 2 * self.min_half_perimeter or k % 2:
            raise ComplexError(f"face {idx} has {k} edges; expected an even number >= {2 * self.min_half_perimeter}")
        if len(set(f)) != k:
            raise ComplexError(f"face {idx} repeats an edge")
        for e in f:
            if not 0 <= e < len(self.edges):
                raise ComplexError(f"face {idx} uses unknown edge {e}")
        a, b = self.edges[f[-1]], self.edges[f[0]]
        common = set(a) & set(b)
        if not common:
            raise ComplexError(f"face {idx}: edges {f[-1]} and {f[0]} are not adjacent")
        start = common.pop() if len(common) == 1 else min(common)
        verts = [start]
        cur = start
        for e in f:
            u, v = self.edges[e]
            if cur == u:
                cur = v
            elif cur == v:
                cur = u
            else:
                raise ComplexError(f"face {idx}: boundary is not a closed edge path at edge {e}")
            verts.append(cur)
        if verts[-1] != start or len(set(verts[:-1])) != k:
            raise ComplexError(f"face {idx}: boundary is not a simple cycle")
        return tuple(verts[:-1])

    # basic queries ------------------------------------------------------------------------------
    @property
    def n_vertices(self) -> int:
        return len(self.vertex_names)

    def neighbors(self, v: int) -> list[tuple[int, int]]:
        """``(neighbor, edge id)`` pairs sorted by edge id."""
        return self._adj[v]

    def other_end(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if v == a else a

    def distances_from(self, source: int) -> np.ndarray:
        dist = np.full(self.n_vertices, -1, dtype=np.int64)
        dist[source] = 0
        q = deque([source])
        while q:
            u = q.popleft()
            for w, _ in self._adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return dist

    def half_perimeter(self, f: int) -> int:
        return len(self.faces[f]) // 2

    def antipode(self, f: int, e: int) -> int:
        cyc = self.faces[f]
        i = cyc.index(e)
        return cyc[(i + len(cyc) // 2) % len(cyc)]

    def path_from_vertices(self, verts: Sequence[int]) -> EdgePath:
        """Path through the given vertices using the smallest edge id for each step."""
        edges = []
        for u, w in zip(verts, verts[1:]):
            cand = [e for x, e in self._adj[u] if x == w]
            if not cand:
                raise ComplexError(f"vertices {u} and {w} are not adjacent")
            edges.append(cand[0])
        return EdgePath(tuple(verts), tuple(edges))

    # links ---------------------------------------------------------------------------------
    def link_bigons(self) -> list[LinkBigon]:
        """Pairs of faces with a common corner (two edges at a vertex)."""
        corners: dict[tuple[int, int, int], list[int]] = defaultdict(list)
        for fi, (f, vs) in enumerate(zip(self.faces, self.face_vertices)):
            k = len(f)
            for i in range(k):
                v = vs[(i + 1) % k]  # vertex between f[i] and f[i+1]
                a, b = sorted((f[i], f[(i + 1) % k]))
                corners[(v, a, b)].append(fi)
        out = []
        for (v, a, b), fs in sorted(corners.items()):
            for f1, f2 in itertools.combinations(fs, 2):
                out.append(LinkBigon(v, (a, b), (f1, f2)))
        return out

    # serialisation ---------------------------------------------------------------------------
    def dumps(self) -> str:
        lines = ["vertices"]
        lines.append(" ".join(str(v) for v in self.vertex_names))
        lines.append("edges")
        for name, (u, v) in zip(self.edge_names, self.edges):
            lines.append(f"{name} {self.vertex_names[u]} {self.vertex_names[v]}")
        lines.append("faces")
        for name, f in zip(self.face_names, self.faces):
            lines.append(" ".join([name] + [self.edge_names[e] for e in f]))
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str, *, min_half_perimeter: int = 4) -> "CellComplex2":
        section = None
        vnames: list[str] = []
        vindex: dict[str, int] = {}
        enames: list[str] = []
        eindex: dict[str, int] = {}
        edges: list[tuple[int, int]] = []
        fnames: list[str] = []
        faces: list[list[int]] = []
        face_lines: list[int] = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            tokens = line.split()
            if len(tokens) == 1 and tokens[0] in {"vertices", "edges", "faces"}:
                order = ["vertices", "edges", "faces"]
                if section is not None and order.index(tokens[0]) <= order.index(section):
                    raise ComplexParseError(f"section '{tokens[0]}' out of order", lineno)
                section = tokens[0]
                continue
            if section is None:
                raise ComplexParseError("content before the 'vertices' section", lineno)
            if section == "vertices":
                for tok in tokens:
                    if tok in vindex:
                        raise ComplexParseError(f"duplicate vertex '{tok}'", lineno)
                    vindex[tok] = len(vnames)
                    vnames.append(tok)
            elif section == "edges":
                if len(tokens) != 3:
                    raise ComplexParseError("edge lines need: <id> <vertex> <vertex>", lineno)
                name, a, b = tokens
                if name in eindex:
                    raise ComplexParseError(f"duplicate edge '{name}'", lineno)
                for x in (a, b):
                    if x not in vindex:
                        raise ComplexParseError(f"unknown vertex '{x}'", lineno)
                if a == b:
                    raise ComplexParseError("loops are not allowed", lineno)
                eindex[name] = len(enames)
                enames.append(name)
                edges.append((vindex[a], vindex[b]))
            else:
                if len(tokens) < 3:
                    raise ComplexParseError("face lines need: <id> <edge> <edge> ...", lineno)
                for x in tokens[1:]:
                    if x not in eindex:
                        raise ComplexParseError(f"unknown edge '{x}'", lineno)
                fnames.append(tokens[0])
                faces.append([eindex[x] for x in tokens[1:]])
                face_lines.append(lineno)
        if section is None:
            raise ComplexParseError("empty fixture", 1)
        try:
            return cls(vnames, edges, faces, min_half_perimeter=min_half_perimeter,
                       edge_names=enames, face_names=fnames)
        except ComplexError as exc:
            msg = str(exc)
            for i, ln in enumerate(face_lines):
                if f"face {i}" in msg:
                    raise ComplexParseError(msg, ln) from exc
            raise ComplexParseError(msg, len(text.splitlines())) from exc

    @classmethod
    def load(cls, path: str, **kw) -> "CellComplex2":
        with open(path, encoding="utf-8") as fh:
            return cls.loads(fh.read(), **kw)


# -- builders ------------------------------------------------------------------------------


def from_vertex_cycles(n_vertices: int, cycles: Sequence[Sequence[int]], extra_edges: Iterable[tuple[int, int]] = (),
                       **kw) -> CellComplex2:
    """Complex whose faces are the given vertex cycles; edges are created as needed."""
    edge_id: dict[frozenset[int], int] = {}
    edges: list[tuple[int, int]] = []

    def eid(u: int, v: int) -> int:
        key = frozenset((u, v))
        if key not in edge_id:
            edge_id[key] = len(edges)
            edges.append((u, v))
        return edge_id[key]

    faces = [[eid(c[i], c[(i + 1) % len(c)]) for i in range(len(c))] for c in cycles]
    for u, v in extra_edges:
        eid(u, v)
    return CellComplex2(list(range(n_vertices)), edges, faces, **kw)


def polygon(k: int) -> CellComplex2:
    return from_vertex_cycles(k, [list(range(k))])


def corridor_chain(length: int, k: int = 14) -> CellComplex2:
    """``length`` k-gons, each glued to the next along antipodal edges."""
    t = k // 2
    cycles: list[list[int]] = []
    nxt = 0
    shared: tuple[int, int] | None = None
    for _ in range(length):
        if shared is None:
            cyc = list(range(nxt, nxt + k))
            nxt += k
        else:
            a, b = shared
            fresh = list(range(nxt, nxt + k - 2))
            nxt += k - 2
            cyc = [b, a] + fresh
        cycles.append(cyc)
        # edge antipodal to (cyc[0], cyc[1]) is (cyc[t], cyc[t+1])
        shared = (cyc[t], cyc[(t + 1) % k])
    return from_vertex_cycles(nxt, cycles)


def polygon_tree(n_faces: int, k: int = 14, seed: int = 0) -> CellComplex2:
    """Random tree of k-gons, each new face glued along one free boundary edge."""
    rng = np.random.default_rng(seed)
    cycles = [list(range(k))]
    free = [(i, (i + 1) % k) for i in range(k)]
    nxt = k
    for _ in range(n_faces - 1):
        j = int(rng.integers(len(free)))
        a, b = free.pop(j)
        fresh = list(range(nxt, nxt + k - 2))
        nxt += k - 2
        cyc = [b, a] + fresh
        cycles.append(cyc)
        free.extend((cyc[i], cyc[(i + 1) % k]) for i in range(1, k))
    return from_vertex_cycles(nxt, cycles)


# -- pieces and small cancellation ----------------------------------------------------------


def pieces(Z: CellComplex2) -> list[Piece]:
    """Maximal common boundary arcs of pairs of distinct faces."""
    out: list[Piece] = []
    pairs: set[tuple[int, int]] = set()
    for e, fs in Z.edge_faces.items():
        for f, g in itertools.combinations(sorted(set(fs)), 2):
            pairs.add((f, g))
    for f, g in sorted(pairs):
        cf, cg = Z.faces[f], Z.faces[g]
        pos_g = {e: i for i, e in enumerate(cg)}
        kf, kg = len(cf), len(cg)
        common = [e in pos_g for e in cf]
        if all(common):
            out.append(Piece((f, g), tuple(cf)))
            continue

        def linked(i: int) -> bool:
            # cf[i] and cf[i+1] both common and adjacent on g as well
            j = (i + 1) % kf
            if not (common[i] and common[j]):
                return False
            d = (pos_g[cf[i]] - pos_g[cf[j]]) % kg
            return d in (1, kg - 1)

        start = next(i for i in range(kf) if common[i] and not linked((i - 1) % kf))
        i = start
        run: list[int] = []
        for step in range(kf):
            idx = (start + step) % kf
            if common[idx]:
                run.append(cf[idx])
                if not linked(idx):
                    out.append(Piece((f, g), tuple(run)))
                    run = []
            elif run:
                out.append(Piece((f, g), tuple(run)))
                run = []
        if run:
            out.append(Piece((f, g), tuple(run)))
    return out


def check_small_cancellation(Z: CellComplex2, k: int) -> SmallCancellationReport:
    """C'(1/k): every piece is shorter than 1/k of each incident face's perimeter.

    Link bigons are reported first, since they violate the standing
    hypothesis on the links.
    """
    if k <= 0:
        raise ValueError("k must be positive")
    bigons = tuple(Z.link_bigons())
    ps = tuple(pieces(Z))
    max_piece = max((p.length for p in ps), default=0)
    witness: Piece | LinkBigon | None = bigons[0] if bigons else None
    if witness is None:
        for p in ps:
            if any(p.length * k >= len(Z.faces[f]) for f in p.faces):
                witness = p
                break
    return SmallCancellationReport(k, witness is None, max_piece, ps, bigons, witness)


# -- paths ---------------------------------------------------------------------------------


def validate_path(Z: CellComplex2, path: EdgePath) -> None:
    for i, e in enumerate(path.edges):
        if set(Z.edges[e]) != {path.vertices[i], path.vertices[i + 1]}:
            raise ComplexError(f"edge {e} does not join {path.vertices[i]} and {path.vertices[i + 1]}")


def _face_runs(Z: CellComplex2, path: EdgePath) -> Iterator[tuple[int, int, int]]:
    """Maximal ``(face, start, length)`` runs of path edges following one face boundary."""
    edges = path.edges
    for f, cyc in enumerate(Z.faces):
        pos = {e: i for i, e in enumerate(cyc)}
        k = len(cyc)
        i = 0
        while i < len(edges):
            if edges[i] not in pos:
                i += 1
                continue
            j = i
            while j + 1 < len(edges) and edges[j + 1] in pos and \
                    (pos[edges[j + 1]] - pos[edges[j]]) % k in (1, k - 1) and \
                    (j == i or (pos[edges[j + 1]] - pos[edges[j]]) % k == (pos[edges[j]] - pos[edges[j - 1]]) % k):
                j += 1
            yield f, i, j - i + 1
            i = j + 1


def is_local_geodesic(Z: CellComplex2, path: EdgePath) -> bool:
    """No backtracks and no subpath longer than ``t`` along a single ``2t``-gon."""
    validate_path(Z, path)
    if any(a == b for a, b in zip(path.edges, path.edges[1:])):
        return False
    for f, _, length in _face_runs(Z, path):
        if length > Z.half_perimeter(f):
            return False
    return True


def enumerate_geodesics(Z: CellComplex2, x: int, y: int, cap: int = DEFAULT_SAMPLING.geodesic_cap) -> list[EdgePath]:
    """All shortest edge paths from ``x`` to ``y`` in lexicographic edge-id order."""
    dy = Z.distances_from(y)
    if dy[x] < 0:
        raise ComplexError(f"vertices {x} and {y} are not connected")
    out: list[EdgePath] = []
    verts = [x]
    edges: list[int] = []

    def rec(u: int) -> None:
        if u == y:
            if len(out) >= cap:
                raise CapExceeded(f"more than {cap} geodesics between {x} and {y}")
            out.append(EdgePath(tuple(verts), tuple(edges)))
            return
        for w, e in Z.neighbors(u):
            if dy[w] == dy[u] - 1:
                verts.append(w)
                edges.append(e)
                rec(w)
                verts.pop()
                edges.pop()

    import sys

    limit = sys.getrecursionlimit()
    if dy[x] + 100 > limit:
        sys.setrecursionlimit(int(dy[x]) + 200)
    rec(x)
    return out


def count_geodesics(Z: CellComplex2, x: int, y: int) -> int:
    """Number of shortest paths (edge multiplicity included) by dynamic programming."""
    dx = Z.distances_from(x)
    order = np.argsort(dx, kind="stable")
    cnt = np.zeros(Z.n_vertices, dtype=object)
    cnt[x] = 1
    for u in order:
        if dx[u] <= 0:
            continue
        cnt[u] = sum(cnt[w] for w, _ in Z.neighbors(u) if dx[w] == dx[u] - 1)
    return int(cnt[y])


def geo_hull(Z: CellComplex2, x: int, y: int) -> HullResult:
    """Union of all geodesics from ``x`` to ``y`` and its diameter."""
    dx, dy = Z.distances_from(x), Z.distances_from(y)
    d = int(dx[y])
    if d < 0:
        raise ComplexError(f"vertices {x} and {y} are not connected")
    hull = frozenset(int(v) for v in np.flatnonzero((dx >= 0) & (dx + dy == d)))
    diam = 0
    members = np.array(sorted(hull))
    for v in members:
        dv = Z.distances_from(int(v))[members]
        diam = max(diam, int(dv.max()))
    if diam > d:
        raise AssertionError(f"hull diameter {diam} exceeds d(x, y) = {d}")
    return HullResult(hull, diam, d)


def gallery_union(Z: CellComplex2, A: int, B: int) -> frozenset[int]:
    return geo_hull(Z, A, B).vertices


# -- corridors ----------------------------------------------------------------------------


def find_corridors(Z: CellComplex2) -> list[Corridor]:
    """All maximal chains of faces glued along antipodal edges."""
    found: dict[tuple[int, ...], Corridor] = {}

    def extend(faces: list[int], edges: list[int]) -> list[tuple[list[int], list[int]]]:
        # grow to the right from the last face through the edge antipodal to edges[-1]
        last = faces[-1]
        e = Z.antipode(last, edges[-1])
        nxt = [g for g in Z.edge_faces[e] if g != last and g not in faces]
        if not nxt:
            return [(faces, edges)]
        out = []
        for g in nxt:
            out.extend(extend(faces + [g], edges + [e]))
        return out

    for e, fs in sorted(Z.edge_faces.items()):
        for f, g in itertools.permutations(sorted(set(fs)), 2):
            for right_f, right_e in extend([f, g], [e]):
                left_seed = list(reversed(right_f))
                left_edges = list(reversed(right_e))
                for full_f, full_e in extend(left_seed, left_edges):
                    key = tuple(full_f)
                    canon = min(key, key[::-1])
                    if canon not in found:
                        if canon == key:
                            found[canon] = Corridor(key, tuple(full_e))
                        else:
                            found[canon] = Corridor(key[::-1], tuple(full_e[::-1]))
    return [found[k] for k in sorted(found)]


def corridor_boundary(Z: CellComplex2, corridor: Corridor) -> tuple[int, ...]:
    """Vertex cycle of the boundary circle of a corridor."""
    interior = set(corridor.edges)
    bedges = [e for f in corridor.faces for e in Z.faces[f] if e not in interior]
    adj: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for e in bedges:
        u, v = Z.edges[e]
        adj[u].append((v, e))
        adj[v].append((u, e))
    if any(len(v) != 2 for v in adj.values()):
        raise ComplexError("corridor boundary is not a simple circle")
    start = min(adj)
    cyc = [start]
    prev_e = None
    cur = start
    while True:
        (a, ea), (b, eb) = adj[cur]
        w, e = (a, ea) if ea != prev_e else (b, eb)
        if w == start:
            break
        cyc.append(w)
        prev_e, cur = e, w
    if len(cyc) != len(bedges):
        raise ComplexError("corridor boundary is not connected")
    return tuple(cyc)


def simple_bigons_of_corridor(Z: CellComplex2, corridor: Corridor) -> list[Bigon]:
    """Pairs of boundary vertices splitting the corridor circle into two local geodesics."""
    cyc = corridor_boundary(Z, corridor)
    L = len(cyc)
    out = []
    for i in range(L):
        for j in range(i + 1, L):
            a = Z.path_from_vertices(list(cyc[i:j + 1]))
            b = Z.path_from_vertices([cyc[(i - k) % L] for k in range(L - (j - i) + 1)])
            if is_local_geodesic(Z, a) and is_local_geodesic(Z, b):
                out.append(Bigon(a, b, "simple", support=corridor.faces))
    return out


# -- bigons -------------------------------------------------------------------------------


def _cycle_edges(alpha: EdgePath, beta: EdgePath) -> frozenset[int]:
    return frozenset(alpha.edges) | frozenset(beta.edges)


class _BigonClassifier:
    def __init__(self, Z: CellComplex2) -> None:
        self.Z = Z
        self.face_by_edges = {frozenset(f): i for i, f in enumerate(Z.faces)}
        self.corridor_by_edges: dict[frozenset[int], tuple[int, ...]] = {}
        for c in find_corridors(Z):
            for i in range(len(c.faces)):
                for j in range(i + 2, len(c.faces) + 1):
                    sub = Corridor(c.faces[i:j], c.edges[i:j - 1])
                    interior = set(sub.edges)
                    bedges = frozenset(e for f in sub.faces for e in Z.faces[f] if e not in interior)
                    self.corridor_by_edges.setdefault(bedges, sub.faces)

    def primitive(self, alpha: EdgePath, beta: EdgePath) -> Bigon:
        if alpha.edges == beta.edges:
            return Bigon(alpha, beta, "degenerate")
        edges = _cycle_edges(alpha, beta)
        if len(edges) == len(alpha) + len(beta):
            if edges in self.face_by_edges:
                return Bigon(alpha, beta, "elementary", support=(self.face_by_edges[edges],))
            if edges in self.corridor_by_edges:
                return Bigon(alpha, beta, "simple", support=self.corridor_by_edges[edges])
        return Bigon(alpha, beta, "undecomposable")

    def decompose(self, alpha: EdgePath, beta: EdgePath) -> Bigon:
        if (alpha.start, alpha.end) != (beta.start, beta.end):
            raise ValueError("bigon paths must share endpoints")
        pos_b = {v: i for i, v in enumerate(beta.vertices)}
        cuts: list[tuple[int, int]] = []
        last_b = -1
        for i, v in enumerate(alpha.vertices):
            j = pos_b.get(v)
            if j is not None and j > last_b:
                cuts.append((i, j))
                last_b = j
        if cuts[-1] != (len(alpha), len(beta)):
            # endpoint must be the final cut; trailing repeats would leave garbage
            cuts.append((len(alpha), len(beta)))
        parts: list[Bigon] = []
        for (i0, j0), (i1, j1) in zip(cuts, cuts[1:]):
            a, b = alpha.sub(i0, i1), beta.sub(j0, j1)
            part = self.primitive(a, b)
            if part.kind == "degenerate" and parts and parts[-1].kind == "degenerate":
                prev = parts.pop()
                part = Bigon(EdgePath(prev.alpha.vertices + a.vertices[1:], prev.alpha.edges + a.edges),
                             EdgePath(prev.beta.vertices + b.vertices[1:], prev.beta.edges + b.edges), "degenerate")
            parts.append(part)
        if not parts:
            return Bigon(alpha, beta, "degenerate")
        if len(parts) == 1:
            return parts[0]
        return Bigon(alpha, beta, "concatenation", parts=tuple(parts))


def classify_bigons(Z: CellComplex2, x: int, y: int, cap: int = DEFAULT_SAMPLING.geodesic_cap) -> list[Bigon]:
    """Decompose every pair of geodesics from ``x`` to ``y`` into primitive bigons."""
    geos = enumerate_geodesics(Z, x, y, cap)
    clf = _BigonClassifier(Z)
    return [clf.decompose(a, b) for a, b in itertools.combinations_with_replacement(geos, 2)]


def decompose_bigon(Z: CellComplex2, alpha: EdgePath, beta: EdgePath) -> Bigon:
    return _BigonClassifier(Z).decompose(alpha, beta)


def undecomposable(bigons: Iterable[Bigon]) -> list[Bigon]:
    return [p for b in bigons for p in b.primitive_parts() if p.kind == "undecomposable"]


def bigon_census(bigons: Iterable[Bigon]) -> dict[str, int]:
    counts = {"degenerate": 0, "elementary": 0, "simple": 0, "undecomposable": 0}
    for b in bigons:
        for p in b.primitive_parts():
            counts[p.kind] += 1
    return counts


__all__ = [
    "Bigon",
    "CapExceeded",
    "CellComplex2",
    "ComplexError",
    "ComplexParseError",
    "Corridor",
    "EdgePath",
    "HullResult",
    "Piece",
    "SmallCancellationReport",
    "bigon_census",
    "check_small_cancellation",
    "classify_bigons",
    "corridor_boundary",
    "corridor_chain",
    "count_geodesics",
    "decompose_bigon",
    "enumerate_geodesics",
    "find_corridors",
    "from_vertex_cycles",
    "gallery_union",
    "geo_hull",
    "is_local_geodesic",
    "pieces",
    "polygon",
    "polygon_tree",
    "simple_bigons_of_corridor",
    "undecomposable",
]
