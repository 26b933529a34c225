"""Finite simple graphs and the non-repetitive vertex-colouring verifier.

A colouring is non-repetitive when the colour word along every simple path is
square-free.  The verifier either certifies that or returns a path whose whole
colour word is a square; since every subpath of a simple path is again a
simple path, searching for whole-word squares is exhaustive.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from nonrep.words import find_square

__all__ = [
    "GraphError",
    "BudgetExhausted",
    "Graph",
    "VertexColouring",
    "PathWitness",
    "build_graph",
    "find_repetitive_path",
    "is_nonrepetitive",
    "witness_is_valid",
    "tree_path_word",
]


class GraphError(ValueError):
    """Invalid graph construction or mismatched arguments."""


class BudgetExhausted(RuntimeError):
    """A search hit its node budget before reaching a verdict."""


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1."""

    __slots__ = ("n", "edges", "adj")

    def __init__(self, n: int, edge_list: Iterable[tuple[int, int]]):
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        seen = set()
        for u, v in edge_list:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has an endpoint out of range")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise GraphError(f"duplicate edge {e}")
            seen.add(e)
        self.n = n
        self.edges = tuple(sorted(seen))
        neigh = [[] for _ in range(n)]
        for u, v in self.edges:
            neigh[u].append(v)
            neigh[v].append(u)
        self.adj = tuple(tuple(sorted(a)) for a in neigh)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u] if 0 <= u < self.n else False

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)})"


def build_graph(n: int, edge_list: Iterable[tuple[int, int]]) -> Graph:
    """Validate and normalise an edge list into a :class:`Graph`."""
    return Graph(n, edge_list)


@dataclass(frozen=True)
class VertexColouring:
    """Total assignment of one colour index per vertex, from a palette of k."""

    colours: tuple[int, ...]
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("palette size must be non-negative")
        for c in self.colours:
            if not (0 <= c < self.k):
                raise ValueError(f"colour {c} outside palette of size {self.k}")

    def __len__(self) -> int:
        return len(self.colours)


@dataclass(frozen=True)
class PathWitness:
    """A simple path whose colour word is a square: the falsification certificate."""

    vertices: tuple[int, ...]


def _check_colouring(g: Graph, c: VertexColouring) -> None:
    if len(c.colours) != g.n:
        raise GraphError(
            f"colouring covers {len(c.colours)} vertices, graph has {g.n}"
        )


def find_repetitive_path(
    g: Graph, c: VertexColouring, node_budget: Optional[int] = None
) -> Optional[PathWitness]:
    """Search for a simple path whose colour word is a square.

    Returns None iff the colouring is non-repetitive.  Paths are enumerated
    depth-first from each start vertex in increasing order with neighbours in
    increasing order; after each extension every suffix of the current colour
    word is tested, so the first square found is reported and the witness is
    deterministic (lowest start vertex first).

    Raises :class:`BudgetExhausted` after ``node_budget`` path extensions.
    """
    _check_colouring(g, c)
    colours = c.colours
    adj = g.adj
    nodes = 0

    # Adjacent equal colours are squares of half-length 1; catching them here
    # keeps the main loop free of the most common witness.
    for u, v in g.edges:
        if colours[u] == colours[v]:
            return PathWitness((u, v))

    in_path = bytearray(g.n)
    path: list[int] = []
    word: list[int] = []

    def extend(v: int) -> Optional[PathWitness]:
        nonlocal nodes
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise BudgetExhausted(f"path enumeration exceeded {node_budget} nodes")
        path.append(v)
        word.append(colours[v])
        in_path[v] = 1
        m = len(word)
        for half in range(2, m // 2 + 1):  # half=1 handled by the edge scan
            if word[m - 2 * half : m - half] == word[m - half :]:
                return PathWitness(tuple(path[m - 2 * half :]))
        for w in adj[v]:
            if not in_path[w]:
                found = extend(w)
                if found is not None:
                    return found
        path.pop()
        word.pop()
        in_path[v] = 0
        return None

    for start in range(g.n):
        found = extend(start)
        if found is not None:
            return found
    return None


def is_nonrepetitive(
    g: Graph, c: VertexColouring, node_budget: Optional[int] = None
) -> bool:
    """True iff every simple path of g has a square-free colour word."""
    return find_repetitive_path(g, c, node_budget=node_budget) is None


def witness_is_valid(g: Graph, c: VertexColouring, w: PathWitness) -> bool:
    """Check a witness without re-running the search.

    Valid means: even length >= 2, distinct vertices, consecutive pairs
    adjacent, and the induced colour word is a square (first half equals
    second half).
    """
    vs = w.vertices
    if len(vs) < 2 or len(vs) % 2 != 0:
        return False
    if len(set(vs)) != len(vs):
        return False
    if any(not (0 <= v < g.n) for v in vs):
        return False
    edge_set = frozenset(g.edges)
    for a, b in zip(vs, vs[1:]):
        if ((a, b) if a < b else (b, a)) not in edge_set:
            return False
    word = [c.colours[v] for v in vs]
    half = len(word) // 2
    return word[:half] == word[half:]


def _forest_parents(g: Graph) -> tuple[list[int], list[int]]:
    """BFS forest (parent, depth) arrays; raises GraphError on a cycle."""
    parent = [-2] * g.n  # -2 unvisited, -1 root
    depth = [0] * g.n
    for root in range(g.n):
        if parent[root] != -2:
            continue
        parent[root] = -1
        queue = [root]
        while queue:
            v = queue.pop()
            for w in g.adj[v]:
                if parent[w] == -2:
                    parent[w] = v
                    depth[w] = depth[v] + 1
                    queue.append(w)
                elif w != parent[v]:
                    raise GraphError("graph has a cycle")
    return parent, depth


def tree_path_word(g: Graph, c: VertexColouring, u: int, v: int) -> list[int]:
    """Colour word along the unique u-v path of a forest."""
    _check_colouring(g, c)
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise GraphError("path endpoint out of range")
    parent, depth = _forest_parents(g)
    colours = c.colours
    left, right = u, v
    front: list[int] = []
    back: list[int] = []
    while depth[left] > depth[right]:
        front.append(colours[left])
        left = parent[left]
    while depth[right] > depth[left]:
        back.append(colours[right])
        right = parent[right]
    while left != right:
        if left == -1:
            raise GraphError(f"vertices {u} and {v} are in different components")
        front.append(colours[left])
        back.append(colours[right])
        left, right = parent[left], parent[right]
    if left == -1:
        raise GraphError(f"vertices {u} and {v} are in different components")
    front.append(colours[left])
    back.reverse()
    return front + back
