"""Deterministic generators for the extremal graphs: paths, fans, diamonds,
the five-fan outerplanar gadget that needs five colours, and the
seven-diamond planar gadget that needs seven.

A *diamond* is a fan on four path vertices plus an apex joined to all five
fan vertices; drawn with the rivet below the path and the apex above, it is
the diamond shape the name suggests.  The apex dominates its diamond, which
is what makes the pigeonhole argument over the planar gadget's kernel work:
every colour used in a diamond appears on a neighbour of its apex.

Vertex numbering is frozen so emitted files are stable: within a fan or
diamond, path vertices come first, then the rivet, then the apex; blocks
come before their hub(s); hubs come last.

``planar_gadget_variant`` is a larger graph with the same degree signature
(two vertices of degree 8, seven of degree 7) whose diamonds are whole
copies of the five-fan gadget.  It is kept as a cautionary counterexample:
its diamond interiors are not dominated by their centres, and it admits a
verified five-colouring, so it witnesses no lower bound beyond five.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from nonrep.graph import Graph
from nonrep.planarmap import PlanarMap, _trace_walks

__all__ = [
    "Gadget",
    "path_graph",
    "fan",
    "diamond",
    "outerplanar_gadget",
    "planar_gadget",
    "planar_gadget_variant",
    "gadget_by_name",
    "GADGET_NAMES",
]


@dataclass(frozen=True)
class Gadget:
    """A generated graph with named special vertices and, when one is
    constructed, a planar embedding."""

    graph: Graph
    roles: dict
    embedding: Optional[PlanarMap] = None


def path_graph(n: int) -> Gadget:
    """Simple path on n vertices, endpoints named."""
    if n < 1:
        raise ValueError("path needs at least one vertex")
    g = Graph(n, [(i, i + 1) for i in range(n - 1)])
    return Gadget(g, {"ends": (0, n - 1)})


def fan(n: int) -> Gadget:
    """Path on n vertices plus a rivet adjacent to every path vertex.

    Vertices 0..n-1 are the path, vertex n is the rivet; 2n-1 edges.
    """
    if n < 1:
        raise ValueError("fan needs at least one path vertex")
    edges = [(i, i + 1) for i in range(n - 1)] + [(i, n) for i in range(n)]
    g = Graph(n + 1, edges)
    return Gadget(g, {"rivet": n, "ends": (0, n - 1)})


# Path 0..3, rivet 4, apex 5.  The apex is adjacent to every fan vertex, so
# the diamond is a maximal planar graph on six vertices.
_DIAMOND_EDGES = (
    [(0, 1), (1, 2), (2, 3)]
    + [(i, 4) for i in range(4)]
    + [(i, 5) for i in range(5)]
)

# Planar rotation of a single diamond: the fan drawn in convex position with
# the apex inserted into its outer pentagon.  All eight faces are triangles.
_DIAMOND_ROT = (
    (1, 4, 5),
    (2, 4, 0, 5),
    (3, 4, 1, 5),
    (4, 2, 5),
    (0, 1, 2, 3, 5),
    (4, 3, 2, 1, 0),
)


def diamond() -> Gadget:
    """Fan on four path vertices plus an apex joined to all five.

    Six vertices, twelve edges; needs five colours: the path needs three,
    the rivet a fourth, the apex a fifth.
    """
    g = Graph(6, _DIAMOND_EDGES)
    emb = PlanarMap([list(r) for r in _DIAMOND_ROT], 0)
    return Gadget(g, {"rivet": 4, "apex": 5, "ends": (0, 3)}, emb)


def _fan_block_edges(base: int) -> list[tuple[int, int]]:
    # one fan on four path vertices: path base..base+3, rivet base+4
    edges = [(base + i, base + i + 1) for i in range(3)]
    edges += [(base + i, base + 4) for i in range(4)]
    return edges


def _convex_rotation(n: int, edges: list[tuple[int, int]]) -> list[list[int]]:
    """Rotation for vertices in convex position 0..n-1 on a circle: the ring
    at v orders neighbours by circular offset from v."""
    neigh: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        neigh[u].append(v)
        neigh[v].append(u)
    return [
        sorted(ring, key=lambda w, v=v: (w - v) % n)
        for v, ring in enumerate(neigh)
    ]


_OUTER_N = 26
_OUTER_HUB = 25
_OUTER_RIVETS = (4, 9, 14, 19, 24)


def _outerplanar_edges() -> list[tuple[int, int]]:
    edges: list[tuple[int, int]] = []
    for i in range(5):
        edges += _fan_block_edges(5 * i)
        edges.append((5 * i + 4, _OUTER_HUB))
    return edges


def outerplanar_gadget() -> Gadget:
    """Five fans joined at a hub: the outerplanar graph whose vertices need
    five colours.  26 vertices, 40 edges; comes with an outerplanar
    embedding (all vertices on the outer face)."""
    edges = _outerplanar_edges()
    g = Graph(_OUTER_N, edges)
    rotation = _convex_rotation(_OUTER_N, edges)
    walks = _trace_walks([tuple(r) for r in rotation])
    outer_id = next(
        f
        for f, walk in enumerate(walks)
        if {d[0] for d in walk} == set(range(_OUTER_N))
    )
    emb = PlanarMap(rotation, outer_id)
    return Gadget(g, {"hub": _OUTER_HUB, "rivets": _OUTER_RIVETS}, emb)


_PLANAR_N = 44
_PLANAR_HUBS = (42, 43)
_PLANAR_CENTRES = tuple(6 * t + 5 for t in range(7))


def planar_gadget() -> Gadget:
    """Seven diamonds whose apexes all join two adjacent hubs: the planar
    graph whose vertices need seven colours.

    44 vertices, 99 edges, exactly two vertices of degree 8 (the hubs) and
    seven of degree 7 (the diamond apexes).  Each diamond hangs as a bubble
    off its apex; the hub edge is routed around the outside.
    """
    r, s = _PLANAR_HUBS
    edges: list[tuple[int, int]] = []
    for t in range(7):
        off = 6 * t
        edges += [(off + a, off + b) for a, b in _DIAMOND_EDGES]
        edges.append((off + 5, r))
        edges.append((off + 5, s))
    edges.append((r, s))
    g = Graph(_PLANAR_N, edges)

    rotation: list[list[int]] = [[] for _ in range(_PLANAR_N)]
    for t in range(7):
        off = 6 * t
        for v in range(5):
            rotation[off + v] = [off + w for w in _DIAMOND_ROT[v]]
        rotation[off + 5] = [r] + [off + w for w in _DIAMOND_ROT[5]] + [s]
    rotation[r] = [s] + list(_PLANAR_CENTRES)
    rotation[s] = [r] + list(reversed(_PLANAR_CENTRES))

    walks = _trace_walks([tuple(ring) for ring in rotation])
    outer_id = next(f for f, walk in enumerate(walks) if (r, s) in walk)
    emb = PlanarMap(rotation, outer_id)
    return Gadget(g, {"hubs": _PLANAR_HUBS, "centres": _PLANAR_CENTRES}, emb)


_VARIANT_N = 184
_VARIANT_HUBS = (182, 183)
_VARIANT_CENTRES = tuple(26 * t + 25 for t in range(7))


def planar_gadget_variant() -> Gadget:
    """Seven whole copies of the five-fan gadget strung between two hubs.

    Matches the degree signature of :func:`planar_gadget` (two vertices of
    degree 8, seven of degree 7) with 184 vertices and 295 edges, but its
    diamond interiors are not dominated by their centres: colours can hide
    inside fan paths where no hub-crossing square reaches them, and the
    graph admits a verified non-repetitive five-colouring.
    """
    r, s = _VARIANT_HUBS
    edges: list[tuple[int, int]] = []
    for t in range(7):
        off = 26 * t
        edges += [(off + a, off + b) for a, b in _outerplanar_edges()]
        edges.append((off + _OUTER_HUB, r))
        edges.append((off + _OUTER_HUB, s))
    edges.append((r, s))
    g = Graph(_VARIANT_N, edges)

    diamond_rot = _convex_rotation(_OUTER_N, _outerplanar_edges())
    rotation: list[list[int]] = [[] for _ in range(_VARIANT_N)]
    for t in range(7):
        off = 26 * t
        for v in range(_OUTER_HUB):
            rotation[off + v] = [off + w for w in diamond_rot[v]]
        rotation[off + _OUTER_HUB] = (
            [r] + [off + w for w in diamond_rot[_OUTER_HUB]] + [s]
        )
    rotation[r] = [s] + list(_VARIANT_CENTRES)
    rotation[s] = [r] + list(reversed(_VARIANT_CENTRES))

    walks = _trace_walks([tuple(ring) for ring in rotation])
    outer_id = next(f for f, walk in enumerate(walks) if (r, s) in walk)
    emb = PlanarMap(rotation, outer_id)
    return Gadget(g, {"hubs": _VARIANT_HUBS, "centres": _VARIANT_CENTRES}, emb)


GADGET_NAMES = (
    "path4",
    "fan4",
    "diamond",
    "outerplanar",
    "planar",
    "planar-variant",
)


def gadget_by_name(name: str) -> Gadget:
    if name == "path4":
        return path_graph(4)
    if name == "fan4":
        return fan(4)
    if name == "diamond":
        return diamond()
    if name == "outerplanar":
        return outerplanar_gadget()
    if name == "planar":
        return planar_gadget()
    if name == "planar-variant":
        return planar_gadget_variant()
    raise ValueError(f"unknown gadget {name!r}; choose from {GADGET_NAMES}")
