"""Labeled 2-trees built from a red triangle by the two growth operations.

``apply_o1`` hangs a three-vertex strip off an edge; ``apply_o2`` splits a
red triangle into two new red triangles. The red triangles of every such
graph form its perfect 3-cover. :func:`decompose` runs the construction
backwards on an unlabeled 2-tree and returns a replayable
:class:`Certificate` exactly when the graph is alpha-excellent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .cover import find_perfect_cover
from .graph import Graph, GraphError, Triangle, build_graph, delete_vertices
from .ktree import recognize_ktree


class OperationError(ValueError):
    """A growth operation's precondition does not hold."""


class CertificateError(ValueError):
    def __init__(self, index: int, reason: str):
        super().__init__(f"step {index}: {reason}")
        self.index = index
        self.reason = reason


def tri(a: int, b: int, c: int) -> Triangle:
    return tuple(sorted((a, b, c)))  # type: ignore[return-value]


@dataclass(frozen=True)
class LabeledTwoTree:
    """A 2-tree with red and blue triangle labels.

    ``graph`` may carry isolated placeholder ids that are not yet part of
    the tree (certificates use the final graph's ids); ``vertices`` lists
    the ids actually present. :meth:`core` drops the placeholders.
    """

    graph: Graph
    vertices: frozenset[int]
    red: frozenset[Triangle]
    blue: frozenset[Triangle] = frozenset()

    def core(self) -> tuple[Graph, dict[int, int]]:
        return delete_vertices(self.graph, set(range(self.graph.n)) - self.vertices)

    def edge_set(self) -> set[tuple[int, int]]:
        return set(self.graph.edges())


def base_tree(triangle: tuple[int, int, int] = (0, 1, 2), n: int | None = None) -> LabeledTwoTree:
    """The red K3 on the given ids, optionally padded to ``n`` ids."""
    a, b, c = triangle
    if len({a, b, c}) != 3 or min(triangle) < 0:
        raise OperationError(f"base triangle needs three distinct non-negative ids, got {triangle}")
    size = max(max(triangle) + 1, n or 0)
    g = build_graph(size, [(a, b), (a, c), (b, c)])
    return LabeledTwoTree(g, frozenset(triangle), frozenset({tri(a, b, c)}))


def _grow(t: LabeledTwoTree, fresh: tuple[int, ...], edges: list[tuple[int, int]]) -> tuple[Graph, frozenset[int]]:
    if len(set(fresh)) != len(fresh) or any(u < 0 or u in t.vertices for u in fresh):
        raise OperationError(f"ids {fresh} are not fresh")
    extra = max(max(fresh) + 1 - t.graph.n, 0)
    return t.graph.add_vertices_and_edges(extra, edges), t.vertices | set(fresh)


def apply_o1(t: LabeledTwoTree, edge: tuple[int, int], fresh: tuple[int, int, int]) -> LabeledTwoTree:
    """Add u1,u2,u3 forming triangles v1v2u1, v2u1u2, u1u2u3; the last one is red."""
    v1, v2 = edge
    if v1 not in t.vertices or v2 not in t.vertices or not t.graph.has_edge(v1, v2):
        raise OperationError(f"{edge} is not an edge")
    u1, u2, u3 = fresh
    g, vs = _grow(t, fresh, [(u1, v1), (u1, v2), (u2, v2), (u2, u1), (u3, u1), (u3, u2)])
    return LabeledTwoTree(
        g,
        vs,
        t.red | {tri(u1, u2, u3)},
        t.blue | {tri(v1, v2, u1), tri(v2, u1, u2)},
    )


def apply_o2(
    t: LabeledTwoTree,
    triangle: tuple[int, int, int],
    edge: tuple[int, int],
    fresh: tuple[int, int, int],
) -> LabeledTwoTree:
    """Split red v1v2v3 into red u0v1v2 and v3u1u2, with u1 hung on the edge v3v4.

    ``v4`` may be ``v1`` or ``v2``.
    """
    v1, v2, v3 = triangle
    w3, v4 = edge
    if w3 != v3:
        raise OperationError(f"edge {edge} must start at the triangle's third vertex {v3}")
    if tri(v1, v2, v3) not in t.red:
        raise OperationError(f"triangle {triangle} is not red")
    if v4 not in t.vertices or not t.graph.has_edge(v3, v4):
        raise OperationError(f"{v4} is not a neighbour of {v3}")
    u0, u1, u2 = fresh
    g, vs = _grow(t, fresh, [(u0, v1), (u0, v2), (u1, v3), (u1, v4), (u2, v3), (u2, u1)])
    return LabeledTwoTree(
        g,
        vs,
        (t.red - {tri(v1, v2, v3)}) | {tri(u0, v1, v2), tri(v3, u1, u2)},
        t.blue | {tri(v1, v2, v3), tri(v3, v4, u1)},
    )


@dataclass(frozen=True)
class O1Step:
    edge: tuple[int, int]
    fresh: tuple[int, int, int]


@dataclass(frozen=True)
class O2Step:
    triangle: tuple[int, int, int]
    edge: tuple[int, int]
    fresh: tuple[int, int, int]


Step = Union[O1Step, O2Step]


@dataclass(frozen=True)
class Certificate:
    base: tuple[int, int, int]
    steps: tuple[Step, ...] = ()

    @property
    def order(self) -> int:
        return 3 + 3 * len(self.steps)


def replay_prefixes(cert: Certificate, n: int | None = None):
    """Yield the labeled tree after the base and after every step."""
    size = n if n is not None else cert.order
    try:
        t = base_tree(cert.base, size)
    except OperationError as exc:
        raise CertificateError(0, str(exc)) from None
    yield t
    for i, step in enumerate(cert.steps, start=1):
        try:
            if isinstance(step, O1Step):
                t = apply_o1(t, step.edge, step.fresh)
            else:
                t = apply_o2(t, step.triangle, step.edge, step.fresh)
        except OperationError as exc:
            raise CertificateError(i, str(exc)) from None
        yield t


def replay_certificate(cert: Certificate, n: int | None = None) -> LabeledTwoTree:
    """Rebuild the labeled 2-tree; failures name the offending step (base is step 0)."""
    t = None
    for t in replay_prefixes(cert, n):
        pass
    return t


@dataclass
class _Peel:
    step: Step
    removed: tuple[int, int, int]
    red_out: tuple[Triangle, ...]
    red_in: tuple[Triangle, ...]
    saved: dict[int, set[int]] = field(default_factory=dict)


class _Peeler:
    """Undoes growth operations on a mutable copy of the graph, with backtracking."""

    def __init__(self, g: Graph, red: set[Triangle]):
        self.adj = {v: set(g.adjacency[v]) for v in range(g.n)}
        self.red = set(red)
        self.red_of: dict[int, Triangle] = {v: t for t in red for v in t}

    def deg(self, v: int) -> int:
        return len(self.adj[v])

    def candidates(self) -> list[_Peel]:
        out = []
        # inverse O1: red u1u2u3 with degrees 4, 3, 2
        for t in sorted(self.red):
            degs = sorted(t, key=self.deg)
            u3, u2, u1 = degs
            if (self.deg(u3), self.deg(u2), self.deg(u1)) != (2, 3, 4):
                continue
            if not (self.adj[u3] == {u1, u2} and u1 in self.adj[u2]):
                continue
            (v2,) = self.adj[u2] - {u1, u3}
            rest = self.adj[u1] - {u2, u3, v2}
            if v2 not in self.adj[u1] or len(rest) != 1:
                continue
            (v1,) = rest
            if v2 not in self.adj[v1]:
                continue
            out.append(_Peel(O1Step((v1, v2), (u1, u2, u3)), (u1, u2, u3), (t,), ()))
        out.sort(key=lambda p: p.removed[2])
        o2 = []
        # inverse O2: red v3u1u2 (u2 degree 2, u1 degree 3) and red u0v1v2 (u0 degree 2), v1v2v3 a triangle
        for t in sorted(self.red):
            for u2 in t:
                if self.deg(u2) != 2:
                    continue
                for u1 in t:
                    if u1 == u2 or self.deg(u1) != 3:
                        continue
                    (v3,) = set(t) - {u1, u2}
                    if self.adj[u2] != {u1, v3} or v3 not in self.adj[u1]:
                        continue
                    (v4,) = self.adj[u1] - {u2, v3}
                    if v4 not in self.adj[v3]:
                        continue
                    # u0 is a degree-2 vertex whose two neighbours both see v3
                    partners = {
                        u0
                        for w in self.adj[v3]
                        for u0 in self.adj[w]
                        if self.deg(u0) == 2 and u0 not in t
                    }
                    for u0 in sorted(partners):
                        v1, v2 = sorted(self.adj[u0])
                        s = tri(u0, v1, v2)
                        if s in self.red and v3 in self.adj[v1] and v3 in self.adj[v2]:
                            o2.append(
                                _Peel(
                                    O2Step((v1, v2, v3), (v3, v4), (u0, u1, u2)),
                                    (u0, u1, u2),
                                    (s, t),
                                    (tri(v1, v2, v3),),
                                )
                            )
        o2.sort(key=lambda p: (p.removed[2], p.removed[0]))
        return out + o2

    def apply(self, peel: _Peel) -> None:
        for u in peel.removed:
            peel.saved[u] = self.adj.pop(u)
        for u, nbrs in peel.saved.items():
            for w in nbrs:
                if w in self.adj:
                    self.adj[w].discard(u)
        self.red.difference_update(peel.red_out)
        self.red.update(peel.red_in)

    def undo(self, peel: _Peel) -> None:
        self.red.difference_update(peel.red_in)
        self.red.update(peel.red_out)
        for u, nbrs in peel.saved.items():
            self.adj[u] = nbrs
        for u, nbrs in peel.saved.items():
            for w in nbrs:
                self.adj[w].add(u)
        peel.saved = {}


def _require_two_tree(g: Graph) -> None:
    if g.n < 3:
        raise GraphError("decomposition needs a 2-tree of order at least 3")
    if recognize_ktree(g, 2) is None:
        raise GraphError("input is not a 2-tree")


def decompose(g: Graph) -> Certificate | None:
    """Certificate rebuilding ``g`` with its own vertex ids, or ``None`` if ``g`` is not alpha-excellent.

    Raises :class:`GraphError` when ``g`` is not a 2-tree of order >= 3.
    """
    _require_two_tree(g)
    cover = find_perfect_cover(g, 2)
    if cover is None:
        return None
    peeler = _Peeler(g, set(cover.parts))
    applied: list[_Peel] = []
    frames: list[list[_Peel]] = [peeler.candidates()]
    while True:
        if len(peeler.adj) == 3:
            (base,) = peeler.red
            steps = tuple(p.step for p in reversed(applied))
            return Certificate(base, steps)
        options = frames[-1]
        if options:
            peel = options.pop(0)
            peeler.apply(peel)
            applied.append(peel)
            frames.append(peeler.candidates())
            continue
        frames.pop()
        if not applied:
            return None
        peeler.undo(applied.pop())


def is_in_family_e(g: Graph) -> bool:
    return decompose(g) is not None
