"""Exact decision procedure for non-repetitive k-colourability.

Backtracking over vertices in a connected order.  When a vertex v is
assigned, any new square must lie on a simple path through v inside the
already-coloured subgraph, so legality is checked by enumerating arm pairs
centred on v.  Colour indices are introduced in first-use order, which is
sound because non-repetitiveness is invariant under renaming colours.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from nonrep.graph import (
    BudgetExhausted,
    Graph,
    VertexColouring,
    _forest_parents,
    is_nonrepetitive,
)

__all__ = [
    "SAT",
    "UNSAT",
    "INDETERMINATE",
    "SolveOptions",
    "SolveResult",
    "solve",
    "thue_number",
    "colour_forest",
]

SAT = "SAT"
UNSAT = "UNSAT"
INDETERMINATE = "INDETERMINATE"


@dataclass(frozen=True)
class SolveOptions:
    """Search knobs.  A hit node budget yields INDETERMINATE, never UNSAT."""

    node_budget: Optional[int] = None
    order: str = "connected"  # "connected" | "forest" | "given"
    jobs: int = 1


@dataclass
class SolveResult:
    status: str
    colouring: Optional[VertexColouring]
    nodes: int = 0
    prunes: int = 0
    elapsed: float = 0.0


def _order_connected(g: Graph) -> list[int]:
    """Each vertex after the first is adjacent to an earlier one; ties go to
    the higher degree, then the lower index."""
    n = g.n
    seen = [False] * n
    order: list[int] = []
    frontier: set[int] = set()
    remaining = n
    while remaining:
        if frontier:
            v = max(frontier, key=lambda u: (g.degree(u), -u))
        else:
            v = max(
                (u for u in range(n) if not seen[u]),
                key=lambda u: (g.degree(u), -u),
            )
        seen[v] = True
        order.append(v)
        remaining -= 1
        frontier.discard(v)
        for w in g.adj[v]:
            if not seen[w]:
                frontier.add(w)
    return order


def _order_forest(g: Graph) -> list[int]:
    """Breadth-first from the lowest-index root of each tree."""
    _forest_parents(g)  # raises GraphError on a cycle
    seen = [False] * g.n
    order: list[int] = []
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        queue = [root]
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            order.append(v)
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return order


def _vertex_order(g: Graph, kind: str) -> list[int]:
    if kind == "connected":
        return _order_connected(g)
    if kind == "forest":
        return _order_forest(g)
    if kind == "given":
        return list(range(g.n))
    raise ValueError(f"unknown vertex order {kind!r}")


def _creates_square(adj, colours, v: int) -> bool:
    """Does assigning colours[v] close a square path through v?

    Enumerates every simple path (arm) from v inside the assigned subgraph
    and tests whole-word squares over single arms and disjoint arm pairs.
    Arm sets are prefix-closed, so whole-word checks are exhaustive.
    """
    x = colours[v]
    arms: list[tuple[int, tuple[int, ...]]] = [(0, ())]

    stack = [(v, 0, ())]
    while stack:
        u, mask, word = stack.pop()
        for w in adj[u]:
            if w == v or colours[w] < 0 or (mask >> w) & 1:
                continue
            nm = mask | (1 << w)
            nw = word + (colours[w],)
            arms.append((nm, nw))
            stack.append((w, nm, nw))

    count = len(arms)
    for i in range(count):
        mask_a, word_a = arms[i]
        rev_a = word_a[::-1]
        la = len(word_a)
        for j in range(i + 1, count):
            mask_b, word_b = arms[j]
            if (la + len(word_b)) % 2 == 0 or (mask_a & mask_b):
                continue
            full = rev_a + (x,) + word_b
            half = len(full) // 2
            if full[:half] == full[half:]:
                return True
    return False


def _search(
    g: Graph,
    k: int,
    order: list[int],
    prefix: tuple[int, ...] = (),
    node_budget: Optional[int] = None,
) -> SolveResult:
    n = g.n
    adj = g.adj
    colours = [-1] * n
    used_max = -1
    for pos, c in enumerate(prefix):
        colours[order[pos]] = c
        used_max = max(used_max, c)

    nodes = 0
    prunes = 0

    def descend(pos: int, used_max: int) -> Optional[tuple[int, ...]]:
        nonlocal nodes, prunes
        if pos == n:
            return tuple(colours)
        v = order[pos]
        limit = min(k - 1, used_max + 1)
        for c in range(limit + 1):
            nodes += 1
            if node_budget is not None and nodes > node_budget:
                raise BudgetExhausted(str(node_budget))
            colours[v] = c
            if _creates_square(adj, colours, v):
                prunes += 1
                colours[v] = -1
                continue
            found = descend(pos + 1, max(used_max, c))
            if found is not None:
                return found
            colours[v] = -1
        return None

    try:
        found = descend(len(prefix), used_max)
    except BudgetExhausted:
        return SolveResult(INDETERMINATE, None, nodes, prunes)
    if found is None:
        return SolveResult(UNSAT, None, nodes, prunes)
    return SolveResult(SAT, VertexColouring(found, k), nodes, prunes)


def _enumerate_prefixes(
    g: Graph, k: int, order: list[int], target: int
) -> list[tuple[int, ...]]:
    """Partial assignments at a fixed depth, pruned and symmetry-reduced,
    for splitting the search across workers."""
    prefixes: list[tuple[int, ...]] = [()]
    depth = 0
    colours = [-1] * g.n
    while len(prefixes) < target and depth < min(g.n, 8):
        nxt: list[tuple[int, ...]] = []
        v = order[depth]
        for p in prefixes:
            for pos, c in enumerate(p):
                colours[order[pos]] = c
            used_max = max(p, default=-1)
            for c in range(min(k - 1, used_max + 1) + 1):
                colours[v] = c
                if not _creates_square(g.adj, colours, v):
                    nxt.append(p + (c,))
            colours[v] = -1
            for pos in range(len(p)):
                colours[order[pos]] = -1
        prefixes = nxt
        depth += 1
        if not prefixes:
            break
    return prefixes


def _solve_worker(args) -> tuple[str, Optional[tuple[int, ...]], int, int]:
    n, edges, k, order, prefix, budget = args
    g = Graph(n, edges)
    res = _search(g, k, order, prefix, budget)
    col = res.colouring.colours if res.colouring is not None else None
    return res.status, col, res.nodes, res.prunes


def solve(g: Graph, k: int, opts: Optional[SolveOptions] = None) -> SolveResult:
    """Decide whether g has a non-repetitive k-colouring.

    SAT results are re-verified with the independent verifier before being
    returned; UNSAT means the symmetry-reduced search space was exhausted.
    """
    if k < 1:
        raise ValueError("colour count must be at least 1")
    opts = opts or SolveOptions()
    order = _vertex_order(g, opts.order)
    start = time.perf_counter()

    if opts.jobs > 1 and g.n > 2:
        result = _solve_parallel(g, k, order, opts)
    else:
        result = _search(g, k, order, (), opts.node_budget)

    result.elapsed = time.perf_counter() - start
    if result.status == SAT:
        assert result.colouring is not None
        if not is_nonrepetitive(g, result.colouring):
            raise AssertionError(
                "internal error: search produced a repetitive colouring"
            )
    return result


def _solve_parallel(
    g: Graph, k: int, order: list[int], opts: SolveOptions
) -> SolveResult:
    prefixes = _enumerate_prefixes(g, k, order, target=4 * opts.jobs)
    if not prefixes:
        return SolveResult(UNSAT, None, 0, 0)
    payload = [
        (g.n, g.edges, k, order, p, opts.node_budget) for p in prefixes
    ]
    nodes = prunes = 0
    sat_colours: Optional[tuple[int, ...]] = None
    saw_budget = False
    with ProcessPoolExecutor(max_workers=opts.jobs) as pool:
        futures = [pool.submit(_solve_worker, a) for a in payload]
        # Prefixes are generated in search order; taking the first SAT in
        # submission order reproduces the sequential witness.
        for fut in futures:
            status, col, nd, pr = fut.result()
            nodes += nd
            prunes += pr
            if status == SAT:
                sat_colours = col
                for later in futures:
                    later.cancel()
                break
            if status == INDETERMINATE:
                saw_budget = True
    if sat_colours is not None:
        return SolveResult(SAT, VertexColouring(sat_colours, k), nodes, prunes)
    if saw_budget:
        return SolveResult(INDETERMINATE, None, nodes, prunes)
    return SolveResult(UNSAT, None, nodes, prunes)


def thue_number(
    g: Graph, k_max: int, opts: Optional[SolveOptions] = None
) -> Optional[int]:
    """Smallest k <= k_max admitting a non-repetitive colouring, else None.

    Raises :class:`BudgetExhausted` if any intermediate solve is cut off,
    since neither bound could then be trusted.
    """
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    for k in range(1, k_max + 1):
        result = solve(g, k, opts)
        if result.status == INDETERMINATE:
            raise BudgetExhausted(f"solve({k}) hit its node budget")
        if result.status == SAT:
            return k
    return None


def colour_forest(g: Graph) -> VertexColouring:
    """Non-repetitive colouring of a forest with at most 4 colours.

    Four colours always suffice for trees, so a 4-colour UNSAT here would
    mean the solver itself is broken.
    """
    order = _order_forest(g)  # raises GraphError on a cycle
    result = _search(g, 4, order)
    if result.status != SAT:
        raise AssertionError(
            "internal error: a forest admitted no 4-colouring"
        )
    assert result.colouring is not None
    if not is_nonrepetitive(g, result.colouring):
        raise AssertionError("internal error: forest colouring failed verification")
    return result.colouring
