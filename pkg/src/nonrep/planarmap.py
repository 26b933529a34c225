"""Planar maps as rotation systems: faces, duals, and the outerplanar
five-colour face-colouring pipeline.

A map is a connected simple graph with a cyclic neighbour order at each
vertex plus a designated outer face.  Faces are traced with the usual
next-dart rule; a trace whose face count violates Euler's formula is not a
sphere embedding and is rejected.  A face colouring is non-repetitive exactly
when the induced vertex colouring of the dual simple graph is, because a
sequence of distinct faces with consecutive ones sharing an edge is the same
thing as a simple path in the dual.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from nonrep.graph import Graph, VertexColouring, _forest_parents, is_nonrepetitive
from nonrep.solver import colour_forest

__all__ = [
    "EmbeddingError",
    "NotOuterplanarError",
    "PlanarMap",
    "FaceSet",
    "FaceColouring",
    "trace_faces",
    "dual_graph",
    "weak_dual",
    "check_outerplanar",
    "colour_faces_outerplanar",
    "random_outerplanar_map",
]

Dart = tuple[int, int]


class EmbeddingError(ValueError):
    """Rotation system is inconsistent or does not describe a sphere map."""


class NotOuterplanarError(EmbeddingError):
    """Some vertex does not lie on the designated outer face."""


def _trace_walks(rotation: Sequence[Sequence[int]]) -> list[tuple[Dart, ...]]:
    """Face boundary walks of a rotation system.

    The dart after (u, v) is (v, w) with w the cyclic successor of u in the
    rotation at v.  Every dart lies on exactly one walk.  A map on a single
    vertex has one (empty) face walk.
    """
    n = len(rotation)
    succ: dict[Dart, int] = {}
    for v in range(n):
        ring = rotation[v]
        deg = len(ring)
        for i, u in enumerate(ring):
            succ[(v, u)] = ring[(i + 1) % deg]
    if not succ:
        return [()]
    walks: list[tuple[Dart, ...]] = []
    traced: set[Dart] = set()
    for v in range(n):
        for w in rotation[v]:
            dart = (v, w)
            if dart in traced:
                continue
            walk = []
            cur = dart
            while cur not in traced:
                traced.add(cur)
                walk.append(cur)
                u, x = cur
                cur = (x, succ[(x, u)])
            walks.append(tuple(walk))
    return walks


class PlanarMap:
    """Rotation system plus a designated outer face."""

    __slots__ = ("rotation", "outer_face_id", "_walks")

    def __init__(self, rotation: Sequence[Sequence[int]], outer_face_id: int):
        n = len(rotation)
        if n == 0:
            raise EmbeddingError("map must have at least one vertex")
        edges = set()
        for v, ring in enumerate(rotation):
            if len(set(ring)) != len(ring):
                raise EmbeddingError(f"rotation at {v} repeats a neighbour")
            for u in ring:
                if not (0 <= u < n) or u == v:
                    raise EmbeddingError(f"bad neighbour {u} at vertex {v}")
                edges.add((min(u, v), max(u, v)))
        for u, v in edges:
            if u not in rotation[v] or v not in rotation[u]:
                raise EmbeddingError(f"edge ({u}, {v}) listed on one side only")
        self.rotation = tuple(tuple(ring) for ring in rotation)

        graph = Graph(n, edges)
        seen = [False] * n
        stack = [0]
        seen[0] = True
        count = 1
        while stack:
            v = stack.pop()
            for w in graph.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    count += 1
                    stack.append(w)
        if count != n:
            raise EmbeddingError("map is disconnected")

        walks = _trace_walks(self.rotation)
        if n - len(edges) + len(walks) != 2:
            raise EmbeddingError(
                "V - E + F = "
                f"{n - len(edges) + len(walks)}: not a sphere embedding"
            )
        if not (0 <= outer_face_id < len(walks)):
            raise EmbeddingError(f"outer face id {outer_face_id} out of range")
        self.outer_face_id = outer_face_id
        self._walks = tuple(walks)

    @property
    def n(self) -> int:
        return len(self.rotation)

    def graph(self) -> Graph:
        edges = {
            (min(u, v), max(u, v))
            for v, ring in enumerate(self.rotation)
            for u in ring
        }
        return Graph(self.n, edges)

    def to_json(self) -> dict:
        outer = self._walks[self.outer_face_id]
        return {
            "n": self.n,
            "rotation": [list(ring) for ring in self.rotation],
            "outer_face": [dart[0] for dart in outer],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PlanarMap":
        try:
            n = obj["n"]
            rotation = obj["rotation"]
            outer_walk = obj["outer_face"]
        except (KeyError, TypeError) as exc:
            raise EmbeddingError(f"embedding object missing field: {exc}")
        if len(rotation) != n:
            raise EmbeddingError("rotation length does not match n")
        walks = _trace_walks([tuple(r) for r in rotation])
        target = tuple(outer_walk)
        for face_id, walk in enumerate(walks):
            if _walk_matches(tuple(d[0] for d in walk), target):
                return cls(rotation, face_id)
        raise EmbeddingError("outer_face walk does not match any traced face")


def _walk_matches(walk: tuple[int, ...], target: tuple[int, ...]) -> bool:
    """Closed-walk equality up to rotation and reflection."""
    if len(walk) != len(target):
        return False
    if not walk:
        return not target
    m = len(walk)
    for candidate in (walk, walk[::-1]):
        doubled = candidate + candidate
        if any(doubled[i : i + m] == target for i in range(m)):
            return True
    return False


@dataclass(frozen=True)
class FaceSet:
    """Face boundary walks plus the edge -> faces incidence."""

    walks: tuple[tuple[Dart, ...], ...]
    edge_faces: dict

    @property
    def count(self) -> int:
        return len(self.walks)

    def vertices_of(self, face_id: int) -> set[int]:
        return {dart[0] for dart in self.walks[face_id]}


def trace_faces(m: PlanarMap) -> FaceSet:
    """Faces of the map; the Euler check already ran at construction."""
    walks = m._walks
    edge_faces: dict[tuple[int, int], tuple[int, ...]] = {}
    sides: dict[tuple[int, int], set[int]] = {}
    for face_id, walk in enumerate(walks):
        for u, v in walk:
            sides.setdefault((min(u, v), max(u, v)), set()).add(face_id)
    for edge, face_ids in sides.items():
        edge_faces[edge] = tuple(sorted(face_ids))
    return FaceSet(walks, edge_faces)


def dual_graph(m: PlanarMap, fs: FaceSet) -> tuple[Graph, list[int]]:
    """Dual simple graph: one vertex per face, one edge per adjacent face
    pair (multiple shared edges collapse; bridges contribute nothing)."""
    edges = {
        pair for pair in fs.edge_faces.values() if len(pair) == 2
    }
    mapping = list(range(fs.count))
    return Graph(fs.count, edges), mapping


def weak_dual(m: PlanarMap, fs: FaceSet) -> tuple[Graph, list[int]]:
    """Dual graph minus the outer face's vertex.

    Returns the graph and the face id of each weak-dual vertex.
    """
    dual, _ = dual_graph(m, fs)
    keep = [f for f in range(fs.count) if f != m.outer_face_id]
    index = {f: i for i, f in enumerate(keep)}
    edges = [
        (index[u], index[v])
        for u, v in dual.edges
        if u != m.outer_face_id and v != m.outer_face_id
    ]
    return Graph(len(keep), edges), keep


def check_outerplanar(m: PlanarMap, fs: Optional[FaceSet] = None) -> bool:
    """True iff every vertex lies on the designated outer face walk."""
    fs = fs if fs is not None else trace_faces(m)
    if m.n == 1:
        return True
    return fs.vertices_of(m.outer_face_id) == set(range(m.n))


@dataclass(frozen=True)
class FaceColouring:
    """One colour per face from a palette of k."""

    colours: tuple[int, ...]
    k: int


def colour_faces_outerplanar(m: PlanarMap) -> FaceColouring:
    """Non-repetitive face colouring of an outerplanar map, at most 5 colours.

    The weak dual of an outerplanar map is a forest; colour it with at most
    four colours and give the outer face a fifth colour of its own.  The
    result is verified against the dual simple graph before being returned.
    """
    fs = trace_faces(m)
    if not check_outerplanar(m, fs):
        raise NotOuterplanarError(
            "some vertex is not on the designated outer face"
        )
    forest, face_ids = weak_dual(m, fs)
    try:
        _forest_parents(forest)
    except Exception as exc:
        raise AssertionError(
            f"internal error: weak dual of an outerplanar map has a cycle ({exc})"
        )
    inner = colour_forest(forest)

    colours = [4] * fs.count
    for wd_vertex, face_id in enumerate(face_ids):
        colours[face_id] = inner.colours[wd_vertex]
    colours[m.outer_face_id] = 4

    dual, _ = dual_graph(m, fs)
    dual_colouring = VertexColouring(tuple(colours), 5)
    if not is_nonrepetitive(dual, dual_colouring):
        raise AssertionError(
            "internal error: outerplanar face colouring failed verification"
        )
    return FaceColouring(tuple(colours), 5)


def _chords_cross(a: tuple[int, int], b: tuple[int, int]) -> bool:
    (p, q), (r, s) = a, b
    return (p < r < q < s) or (r < p < s < q)


def random_outerplanar_map(n: int, density: float = 0.5, seed: int = 0) -> PlanarMap:
    """Random n-gon with non-crossing chords, drawn with seeded randomness.

    Candidate chords are visited in a shuffled order and kept with
    probability ``density`` when they cross nothing already kept.  Vertices
    sit in convex position, so the rotation at each vertex orders neighbours
    by circular offset.
    """
    if n < 3:
        raise ValueError("polygon needs at least 3 vertices")
    rng = random.Random(seed)
    candidates = [
        (i, j)
        for i in range(n)
        for j in range(i + 2, n)
        if not (i == 0 and j == n - 1)
    ]
    rng.shuffle(candidates)
    chords: list[tuple[int, int]] = []
    for cand in candidates:
        if rng.random() < density and not any(
            _chords_cross(cand, c) for c in chords
        ):
            chords.append(cand)

    edges = [(i, (i + 1) % n) for i in range(n)] + chords
    neigh: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        neigh[u].append(v)
        neigh[v].append(u)
    rotation = [
        sorted(ring, key=lambda w, v=v: (w - v) % n)
        for v, ring in enumerate(neigh)
    ]

    walks = _trace_walks([tuple(r) for r in rotation])
    outer_id = None
    for face_id, walk in enumerate(walks):
        if {d[0] for d in walk} == set(range(n)):
            outer_id = face_id
            break
    if outer_id is None:
        raise AssertionError("internal error: polygon lost its boundary face")
    return PlanarMap(rotation, outer_id)
