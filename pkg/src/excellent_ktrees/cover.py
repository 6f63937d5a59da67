"""Perfect (k+1)-covers: partitions of the vertex set into (k+1)-cliques."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .graph import Graph, cliques_of_size
from .ktree import recognize_ktree, chordal_alpha
from .oracle import BudgetExceeded, alpha_bruteforce


@dataclass(frozen=True)
class Cover:
    k: int
    parts: frozenset[tuple[int, ...]]

    def sorted_parts(self) -> list[tuple[int, ...]]:
        return sorted(self.parts)


def _make_cover(k: int, parts) -> Cover:
    return Cover(k, frozenset(tuple(sorted(p)) for p in parts))


class _ExactCover:
    """Exact cover of vertices by candidate cliques.

    Each branch point picks the uncovered vertex with the fewest surviving
    cliques (lowest id on ties); a vertex with a single survivor is a forced
    move, so on k-trees the search mostly cascades without branching.
    """

    def __init__(self, n: int, cliques: list[tuple[int, ...]]):
        self.cliques = cliques
        self.by_vertex: dict[int, set[int]] = {v: set() for v in range(n)}
        for idx, c in enumerate(cliques):
            for v in c:
                self.by_vertex[v].add(idx)
        # size buckets give a quick minimum without scanning every vertex
        self.buckets: dict[int, set[int]] = {}
        for v, rows in self.by_vertex.items():
            self.buckets.setdefault(len(rows), set()).add(v)

    def _move(self, v: int, old: int, new: int) -> None:
        self.buckets[old].discard(v)
        self.buckets.setdefault(new, set()).add(v)

    def _choose(self) -> int:
        for size in sorted(s for s, vs in self.buckets.items() if vs):
            return min(self.buckets[size])
        raise AssertionError("no uncovered vertex")

    def _select(self, row: int) -> list[tuple[int, set[int]]]:
        removed_cols = []
        for v in self.cliques[row]:
            rows = self.by_vertex.pop(v)
            self.buckets[len(rows)].discard(v)
            for other in rows:
                for w in self.cliques[other]:
                    if w != v and w in self.by_vertex:
                        before = len(self.by_vertex[w])
                        self.by_vertex[w].discard(other)
                        self._move(w, before, len(self.by_vertex[w]))
            removed_cols.append((v, rows))
        return removed_cols

    def _deselect(self, removed_cols: list[tuple[int, set[int]]]) -> None:
        for v, rows in reversed(removed_cols):
            self.by_vertex[v] = rows
            self.buckets.setdefault(len(rows), set()).add(v)
            for other in rows:
                for w in self.cliques[other]:
                    if w != v and w in self.by_vertex:
                        before = len(self.by_vertex[w])
                        self.by_vertex[w].add(other)
                        self._move(w, before, len(self.by_vertex[w]))

    def solutions(self) -> Iterator[list[int]]:
        partial: list[int] = []
        # explicit stack keeps deep forced cascades off the Python call stack
        stack: list[tuple[list[int], int, list | None]] = []
        if not self.by_vertex:
            yield []
            return
        v = self._choose()
        stack.append((sorted(self.by_vertex[v]), 0, None))
        while stack:
            rows, i, undo = stack.pop()
            if undo is not None:
                self._deselect(undo)
                partial.pop()
            if i == len(rows):
                continue
            row = rows[i]
            undo = self._select(row)
            partial.append(row)
            stack.append((rows, i + 1, undo))
            if not self.by_vertex:
                yield list(partial)
                continue
            v = self._choose()
            if self.by_vertex[v]:
                stack.append((sorted(self.by_vertex[v]), 0, None))


def _solver(g: Graph, k: int) -> _ExactCover | None:
    if k < 1:
        raise ValueError("k must be at least 1")
    if g.n % (k + 1):
        return None
    return _ExactCover(g.n, cliques_of_size(g, k + 1))


def find_perfect_cover(g: Graph, k: int) -> Cover | None:
    solver = _solver(g, k)
    if solver is None:
        return None
    for rows in solver.solutions():
        return _make_cover(k, (solver.cliques[r] for r in rows))
    return None


def iter_perfect_covers(g: Graph, k: int) -> Iterator[Cover]:
    solver = _solver(g, k)
    if solver is None:
        return
    for rows in solver.solutions():
        yield _make_cover(k, (solver.cliques[r] for r in rows))


def count_perfect_covers(g: Graph, k: int, limit: int) -> int:
    """Number of distinct perfect covers, stopping once ``limit`` are found."""
    if limit < 1:
        raise ValueError("limit must be at least 1")
    count = 0
    for _ in iter_perfect_covers(g, k):
        count += 1
        if count >= limit:
            break
    return count


def validate_cover(g: Graph, cover: Cover) -> tuple[bool, str | None]:
    """Check clique, size, disjointness and coverage; returns the first violation found."""
    seen: dict[int, tuple[int, ...]] = {}
    for part in sorted(cover.parts):
        if len(part) != cover.k + 1:
            return False, f"part {part} has {len(part)} vertices, expected {cover.k + 1}"
        if any(not 0 <= v < g.n for v in part):
            return False, f"part {part} names a vertex outside the graph"
        if not g.is_clique(part):
            return False, f"part {part} is not a clique"
        for v in part:
            if v in seen:
                return False, f"parts {seen[v]} and {part} share vertex {v}"
            seen[v] = part
    for v in range(g.n):
        if v not in seen:
            return False, f"vertex {v} is uncovered"
    return True, None


@dataclass
class CoverConsequences:
    """Outcome of checking that a covered k-tree has alpha = n/(k+1) with maximum colour classes."""

    alpha: int | None
    expected_alpha: float
    alpha_matches: bool | None
    colour_classes: list[frozenset[int]] = field(default_factory=list)
    classes_maximum: bool | None = None
    partial: bool = False
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.partial and not self.failures


def ktree_colouring(g: Graph, k: int) -> list[frozenset[int]] | None:
    """The proper (k+1)-colouring of a k-tree, read off its construction order."""
    order = recognize_ktree(g, k)
    if order is None:
        return None
    colour = {v: i for i, v in enumerate(order.base)}
    for v, clique in order.steps:
        used = {colour[u] for u in clique}
        colour[v] = min(set(range(k + 1)) - used)
    return [frozenset(v for v, c in colour.items() if c == i) for i in range(k + 1)]


def cover_consequences(g: Graph, cover: Cover, budget: int | None = None) -> CoverConsequences:
    k = cover.k
    expected = g.n / (k + 1)
    ok, why = validate_cover(g, cover)
    report = CoverConsequences(alpha=None, expected_alpha=expected, alpha_matches=None)
    if not ok:
        report.failures.append(f"invalid cover: {why}")
        return report
    classes = ktree_colouring(g, k)
    if classes is None:
        report.failures.append(f"graph is not a {k}-tree")
        return report
    report.colour_classes = classes
    try:
        alpha = alpha_bruteforce(g, budget)[0]
    except BudgetExceeded:
        order = recognize_ktree(g, k)
        try:
            alpha = chordal_alpha(g, order)[0]
        except Exception:  # pragma: no cover - recognized k-trees always give a valid ordering
            report.partial = True
            return report
    report.alpha = alpha
    report.alpha_matches = alpha == expected
    if not report.alpha_matches:
        report.failures.append(f"alpha {alpha} != n/(k+1) = {expected}")
    report.classes_maximum = all(len(c) == alpha for c in classes)
    if not report.classes_maximum:
        report.failures.append("some colour class is not a maximum independent set")
    return report
