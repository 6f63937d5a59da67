"""k-tree recognition, simplicial vertices and simplexes, chordal independence."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Sequence

from .graph import Graph, GraphError, build_graph


class OrderingError(ValueError):
    """The supplied vertex sequence is not a perfect elimination ordering."""


@dataclass(frozen=True)
class EliminationOrder:
    """Certificate that a graph is a k-tree.

    ``steps`` are in construction order: replaying ``base`` as a complete
    graph and then attaching each ``(vertex, clique)`` in turn rebuilds the
    graph. ``base`` is the residual clique left after peeling, of order
    ``k + 1`` (or ``k`` when the graph itself is ``K_k``).
    """

    k: int
    base: tuple[int, ...]
    steps: tuple[tuple[int, tuple[int, ...]], ...]

    def elimination_sequence(self) -> list[int]:
        """Vertices in peeling order followed by the base clique: a perfect elimination ordering."""
        return [v for v, _ in reversed(self.steps)] + list(self.base)

    def replay(self, n: int) -> Graph:
        edges = [(a, b) for i, a in enumerate(self.base) for b in self.base[i + 1:]]
        for v, clique in self.steps:
            edges.extend((v, u) for u in clique)
        return build_graph(n, edges)


@dataclass(frozen=True)
class Simplex:
    vertices: frozenset[int]
    witnesses: frozenset[int]


def recognize_ktree(g: Graph, k: int) -> EliminationOrder | None:
    """Return an elimination certificate if ``g`` is a k-tree, else ``None``.

    Peels the highest-id simplicial vertex of degree exactly ``k`` until a
    clique of order ``k + 1`` (or ``k``) remains, so a graph whose ids follow
    construction order gets its own construction back.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    n = g.n
    if n < k:
        return None
    if n <= k + 1:
        if g.is_clique(range(n)) and n >= k:
            return EliminationOrder(k, tuple(range(n)), ())
        return None

    adj = [set(a) for a in g.adjacency]
    alive = [True] * n
    # max-heap on vertex id
    heap = [-v for v in range(n) if len(adj[v]) == k]
    heapq.heapify(heap)
    peeled: list[tuple[int, tuple[int, ...]]] = []
    remaining = n
    while remaining > k + 1:
        v = None
        while heap:
            cand = -heapq.heappop(heap)
            # a degree-k vertex that is not simplicial never becomes eligible again
            if alive[cand] and len(adj[cand]) == k and _clique(adj, adj[cand]):
                v = cand
                break
        if v is None:
            return None
        nbrs = adj[v]
        peeled.append((v, tuple(sorted(nbrs))))
        alive[v] = False
        remaining -= 1
        for u in nbrs:
            adj[u].discard(v)
            if len(adj[u]) == k:
                heapq.heappush(heap, -u)
        adj[v] = set()
    rest = [v for v in range(n) if alive[v]]
    if not _clique(adj, rest) or any(len(adj[v]) != k for v in rest):
        return None
    return EliminationOrder(k, tuple(rest), tuple(reversed(peeled)))


def _clique(adj, vertices) -> bool:
    vs = list(vertices)
    for i, a in enumerate(vs):
        row = adj[a]
        for b in vs[i + 1:]:
            if b not in row:
                return False
    return True


def is_ktree(g: Graph, k: int) -> bool:
    return recognize_ktree(g, k) is not None


def simplicial_vertices(g: Graph) -> frozenset[int]:
    return frozenset(v for v in range(g.n) if g.is_clique(g.adjacency[v]))


def simplexes(g: Graph) -> list[Simplex]:
    """Each simplex once with all its simplicial witnesses, ordered by sorted vertex tuple."""
    groups: dict[frozenset[int], set[int]] = {}
    for v in sorted(simplicial_vertices(g)):
        groups.setdefault(g.closed_neighborhood(v), set()).add(v)
    return [Simplex(vs, frozenset(w)) for vs, w in sorted(groups.items(), key=lambda kv: sorted(kv[0]))]


def passes_simplex_disjointness(g: Graph) -> tuple[bool, int | None]:
    """``(False, v)`` with the lowest vertex lying in two simplexes, else ``(True, None)``.

    A failure certifies that ``v`` is in no maximum independent set.
    """
    count = [0] * g.n
    for s in simplexes(g):
        for v in s.vertices:
            count[v] += 1
    for v in range(g.n):
        if count[v] >= 2:
            return False, v
    return True, None


def check_elimination_ordering(g: Graph, order: Sequence[int]) -> None:
    """Raise :class:`OrderingError` unless ``order`` is a perfect elimination ordering of ``g``."""
    if sorted(order) != list(range(g.n)):
        raise OrderingError("ordering must list every vertex exactly once")
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [u for u in g.adjacency[v] if pos[u] > pos[v]]
        if len(later) < 2:
            continue
        first = min(later, key=pos.__getitem__)
        row = g.adjacency[first]
        for u in later:
            if u != first and u not in row:
                raise OrderingError(f"later neighbourhood of vertex {v} is not a clique")


def chordal_alpha(g: Graph, order: EliminationOrder | Sequence[int]) -> tuple[int, frozenset[int]]:
    """Maximum independent set of a chordal graph by greedy over a perfect elimination ordering."""
    seq = order.elimination_sequence() if isinstance(order, EliminationOrder) else list(order)
    check_elimination_ordering(g, seq)
    blocked = bytearray(g.n)
    chosen = []
    for v in seq:
        if not blocked[v]:
            chosen.append(v)
            for u in g.adjacency[v]:
                blocked[u] = 1
    return len(chosen), frozenset(chosen)


def ktree_vertex_maxima(g: Graph, order: EliminationOrder) -> list[int]:
    """For every vertex, the size of a largest independent set containing it.

    Dynamic programming over the clique tree implied by the construction
    order, with a second (top-down) pass so all vertices are answered in
    one sweep: ``O(n k^2)``. Each bag is a (k+1)-clique, so its state is the
    single bag vertex that is in the independent set, or none.
    """
    n = g.n
    if n == 0:
        return []
    # bag 0 is the base clique; bag i>0 introduces steps[i-1]'s vertex
    bags: list[tuple[int, ...]] = [tuple(order.base)]
    parent = [-1]
    attach: list[tuple[int, ...]] = [()]
    owner_bag = {v: 0 for v in order.base}
    for v, clique in order.steps:
        latest = max(clique, key=lambda u: (owner_bag[u], u))
        p = owner_bag[latest]
        bag_index = len(bags)
        bags.append(tuple(clique) + (v,))
        parent.append(p)
        attach.append(tuple(clique))
        owner_bag[v] = bag_index
    if len(owner_bag) != n:
        raise GraphError("elimination order does not cover every vertex")

    nb = len(bags)
    children: list[list[int]] = [[] for _ in range(nb)]
    for b in range(1, nb):
        children[parent[b]].append(b)

    NONE = -1

    def own_count(b: int, s: int) -> int:
        if s == NONE:
            return 0
        return 1 if (b == 0 or s == bags[b][-1]) else 0

    # states of bag b: NONE plus each bag vertex
    down: list[dict[int, int]] = [dict() for _ in range(nb)]
    # best_child[c][s]: best of child c given its parent's state s
    best_child: list[dict[int, int]] = [dict() for _ in range(nb)]

    post = []
    stack = [0]
    while stack:
        b = stack.pop()
        post.append(b)
        stack.extend(children[b])

    for b in reversed(post):
        states = (NONE,) + bags[b]
        d = {}
        for s in states:
            total = own_count(b, s)
            for c in children[b]:
                total += best_child[c][s]
            d[s] = total
        down[b] = d
        if b:
            cset = attach[b]
            v = bags[b][-1]
            free = max(d[NONE], d[v])
            pstates = (NONE,) + bags[parent[b]]
            best_child[b] = {s: (d[s] if s in cset else free) for s in pstates}

    up: list[dict[int, int]] = [dict() for _ in range(nb)]
    up[0] = {s: 0 for s in (NONE,) + bags[0]}
    for b in post:
        if b == 0:
            continue
        p = parent[b]
        cset = attach[b]
        outside = {s: down[p][s] - best_child[b][s] + up[p][s] for s in (NONE,) + bags[p]}
        free_outside = max(v for s, v in outside.items() if s not in cset)
        v_new = bags[b][-1]
        u = {NONE: free_outside, v_new: free_outside}
        for s in cset:
            u[s] = outside[s]
        up[b] = u

    return [down[owner_bag[v]][v] + up[owner_bag[v]][v] for v in range(n)]
