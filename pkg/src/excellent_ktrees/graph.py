"""Immutable simple graphs on dense integer vertex ids.

Every other module speaks in vertex ids ``0..n-1``. A :class:`Graph` never
changes after construction; operations that remove or add vertices return a
new graph (and, where ids move, a relabeling map).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

Edge = tuple[int, int]
Triangle = tuple[int, int, int]

ISOMORPHISM_ORDER_LIMIT = 12


class GraphError(ValueError):
    """Raised for malformed graph input (bad endpoints, self-loops, ...)."""


@dataclass(frozen=True, eq=True)
class Graph:
    n: int
    adjacency: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.adjacency) != self.n:
            raise GraphError(f"adjacency has {len(self.adjacency)} rows, expected {self.n}")

    def __repr__(self):
        return f"Graph(n={self.n}, edges={list(self.edges())})"

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        return self.adjacency[v] | {v}

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> list[Edge]:
        """Edges as sorted ``(u, v)`` pairs with ``u < v``, in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in sorted(self.adjacency[u]) if u < v]

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(b in self.adjacency[a] for a, b in combinations(vs, 2))

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighborhoods as int bitsets, used by the exact search routines."""
        return tuple(sum(1 << u for u in nbrs) for nbrs in self.adjacency)

    def add_vertices_and_edges(self, count: int, edges: Iterable[Edge]) -> "Graph":
        """Return a graph with ``count`` extra vertices (ids ``n..n+count-1``) and extra edges."""
        adj = [set(a) for a in self.adjacency] + [set() for _ in range(count)]
        _insert_edges(adj, edges)
        return Graph(len(adj), tuple(frozenset(a) for a in adj))


def _insert_edges(adj: list[set[int]], edges: Iterable[Edge]) -> None:
    n = len(adj)
    for pair in edges:
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge {pair} has an endpoint outside [0, {n})")
        if u == v:
            raise GraphError(f"self-loop on vertex {u}")
        adj[u].add(v)
        adj[v].add(u)


def build_graph(n: int, edges: Iterable[Edge]) -> Graph:
    """Build a simple graph on ``0..n-1``; duplicate edges collapse."""
    if n < 0:
        raise GraphError("vertex count must be non-negative")
    adj: list[set[int]] = [set() for _ in range(n)]
    _insert_edges(adj, edges)
    return Graph(n, tuple(frozenset(a) for a in adj))


def complete_graph(n: int) -> Graph:
    return build_graph(n, combinations(range(n), 2))


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def diamond() -> Graph:
    """K4 minus the edge 23."""
    return build_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])


def enumerate_triangles(g: Graph) -> list[Triangle]:
    """All 3-cliques as sorted tuples, in lexicographic order."""
    out = []
    adj = g.adjacency
    for a in range(g.n):
        higher = sorted(b for b in adj[a] if b > a)
        for i, b in enumerate(higher):
            for c in higher[i + 1:]:
                if c in adj[b]:
                    out.append((a, b, c))
    return out


def cliques_of_size(g: Graph, size: int) -> list[tuple[int, ...]]:
    """All cliques with exactly ``size`` vertices, as sorted tuples in lexicographic order."""
    if size <= 0:
        return [()]
    out: list[tuple[int, ...]] = []
    adj = g.adjacency

    def extend(clique: tuple[int, ...], candidates: list[int]) -> None:
        if len(clique) == size:
            out.append(clique)
            return
        for i, v in enumerate(candidates):
            extend(clique + (v,), [w for w in candidates[i + 1:] if w in adj[v]])

    extend((), list(range(g.n)))
    return out


def delete_vertices(g: Graph, removed: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on the surviving vertices, relabeled to ``0..n'-1``.

    Returns the new graph and the map from old ids to new ids (survivors only).
    Relative order of surviving ids is preserved.
    """
    gone = set(removed)
    for v in gone:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range [0, {g.n})")
    keep = [v for v in range(g.n) if v not in gone]
    relabel = {old: new for new, old in enumerate(keep)}
    adj = tuple(frozenset(relabel[u] for u in g.adjacency[v] if u in relabel) for v in keep)
    return Graph(len(keep), adj), relabel


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    keep_set = set(keep)
    return delete_vertices(g, (v for v in range(g.n) if v not in keep_set))


def permute(g: Graph, perm: Sequence[int]) -> Graph:
    """Relabel vertex ``v`` as ``perm[v]``."""
    if sorted(perm) != list(range(g.n)):
        raise GraphError("perm must be a permutation of range(n)")
    return build_graph(g.n, [(perm[u], perm[v]) for u, v in g.edges()])


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for u in g.adjacency[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == g.n


def is_independent(g: Graph, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    return all(b not in g.adjacency[a] for a, b in combinations(vs, 2))


def are_isomorphic(g: Graph, h: Graph, limit: int = ISOMORPHISM_ORDER_LIMIT) -> bool:
    """Exact isomorphism test by colour refinement plus backtracking.

    Only meant for small graphs; orders above ``limit`` are refused.
    """
    if max(g.n, h.n) > limit:
        raise GraphError(f"isomorphism test refused for order above {limit}")
    if g.n != h.n or g.m != h.m:
        return False
    if sorted(map(len, g.adjacency)) != sorted(map(len, h.adjacency)):
        return False
    cg = _refine_joint(g, h)
    if cg is None:
        return False
    col_g, col_h = cg
    order = sorted(range(g.n), key=lambda v: (sum(1 for u in range(g.n) if col_g[u] == col_g[v]), v))
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def backtrack(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in range(h.n):
            if w in used or col_h[w] != col_g[v]:
                continue
            if any((u in g.adjacency[v]) != (mapping[u] in h.adjacency[w]) for u in mapping):
                continue
            mapping[v] = w
            used.add(w)
            if backtrack(i + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    return backtrack(0)


def _refine_joint(g: Graph, h: Graph):
    """Refine both graphs with a shared palette so colours are comparable."""
    cg = [g.degree(v) for v in range(g.n)]
    ch = [h.degree(v) for v in range(h.n)]
    while True:
        sg = [(cg[v], tuple(sorted(cg[u] for u in g.adjacency[v]))) for v in range(g.n)]
        sh = [(ch[v], tuple(sorted(ch[u] for u in h.adjacency[v]))) for v in range(h.n)]
        if sorted(sg) != sorted(sh):
            return None
        palette = {sig: i for i, sig in enumerate(sorted(set(sg)))}
        ng = [palette[s] for s in sg]
        nh = [palette[s] for s in sh]
        if len(palette) == len(set(cg)):
            return ng, nh
        cg, ch = ng, nh
