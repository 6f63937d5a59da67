"""Exact independence parameters of small graphs.

These routines are the ground truth the structural algorithms are checked
against. They work on any graph but refuse inputs above an order budget
instead of returning approximate answers. The budget defaults to 40 and
can be overridden with the ``EXCELLENT_KTREES_BUDGET`` environment variable.

Conventions for the empty graph: alpha = i = alpha_c = 0, and it is counted
as both well-covered and excellent.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .graph import Graph
from .ktree import OrderingError, recognize_ktree, ktree_vertex_maxima

DEFAULT_BUDGET = 40
BUDGET_ENV = "EXCELLENT_KTREES_BUDGET"


class BudgetExceeded(RuntimeError):
    """The graph is larger than the exact-search budget allows."""


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None


def _guard(g: Graph, budget: int | None) -> None:
    limit = default_budget() if budget is None else budget
    if g.n > limit:
        raise BudgetExceeded(f"order {g.n} exceeds exact-search budget {limit}")


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _MaxIndependentSet:
    """Branch and bound over int bitsets.

    Branches on a highest-degree vertex (take it / drop it). Degree 0 and 1
    vertices are taken without branching. The bound is a greedy partition of
    the candidates into cliques, each contributing at most one vertex.
    """

    def __init__(self, masks: tuple[int, ...]):
        self.masks = masks
        self.best = 0
        self.best_set = 0

    def run(self, candidates: int) -> tuple[int, int]:
        self.best_set = self._greedy(candidates)
        self.best = self.best_set.bit_count()
        self._search(candidates, 0, 0)
        return self.best, self.best_set

    def _greedy(self, cand: int) -> int:
        masks = self.masks
        chosen = 0
        while cand:
            v = min(_bits(cand), key=lambda u: (masks[u] & cand).bit_count())
            chosen |= 1 << v
            cand &= ~(masks[v] | (1 << v))
        return chosen

    def _clique_cover_bound(self, cand: int) -> int:
        masks = self.masks
        bound = 0
        while cand:
            v = (cand & -cand).bit_length() - 1
            clique_ok = masks[v] & cand
            cand &= ~(1 << v)
            while clique_ok:
                u = (clique_ok & -clique_ok).bit_length() - 1
                cand &= ~(1 << u)
                clique_ok &= masks[u]
            bound += 1
        return bound

    def _search(self, cand: int, chosen: int, size: int) -> None:
        masks = self.masks
        # forced moves: vertices of degree <= 1 belong to some maximum set
        while True:
            forced = None
            for v in _bits(cand):
                if (masks[v] & cand) & ((masks[v] & cand) - 1) == 0:
                    forced = v
                    break
            if forced is None:
                break
            chosen |= 1 << forced
            size += 1
            cand &= ~(masks[forced] | (1 << forced))
        if not cand:
            if size > self.best:
                self.best, self.best_set = size, chosen
            return
        if size + self._clique_cover_bound(cand) <= self.best:
            return
        v = max(_bits(cand), key=lambda u: ((masks[u] & cand).bit_count(), -u))
        self._search(cand & ~(masks[v] | (1 << v)), chosen | (1 << v), size + 1)
        self._search(cand & ~(1 << v), chosen, size)


def _alpha_mask(g: Graph, candidates: int) -> tuple[int, int]:
    return _MaxIndependentSet(g.masks).run(candidates)


def alpha_bruteforce(g: Graph, budget: int | None = None) -> tuple[int, frozenset[int]]:
    """Exact independence number with a witness maximum independent set."""
    _guard(g, budget)
    size, chosen = _alpha_mask(g, (1 << g.n) - 1)
    return size, frozenset(_bits(chosen))


def _vertex_maximum(g: Graph, v: int) -> int:
    rest = ((1 << g.n) - 1) & ~(g.masks[v] | (1 << v))
    return 1 + _alpha_mask(g, rest)[0]


def vertex_max_independent(g: Graph, v: int, budget: int | None = None) -> int:
    """Size of a largest independent set containing ``v``: ``1 + alpha(G - N[v])``."""
    _guard(g, budget)
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    return _vertex_maximum(g, v)


def vertex_in_alpha_set(g: Graph, v: int, budget: int | None = None) -> bool:
    """True iff ``v`` lies in some maximum independent set."""
    _guard(g, budget)
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    return _vertex_maximum(g, v) == _alpha_mask(g, (1 << g.n) - 1)[0]


def independent_domination(g: Graph, budget: int | None = None) -> tuple[int, frozenset[int]]:
    """Exact i(G) with a witness minimum maximal independent set.

    Some vertex of ``N[w]`` must be chosen for every undominated ``w``; we
    branch on the undominated vertex with the fewest such options.
    """
    _guard(g, budget)
    masks = g.masks
    best = [g.n + 1, 0]

    def search(undominated: int, chosen: int, size: int) -> None:
        if size >= best[0]:
            return
        if not undominated:
            best[0], best[1] = size, chosen
            return
        w = min(_bits(undominated), key=lambda u: (((masks[u] | (1 << u)) & undominated).bit_count(), u))
        for u in _bits((masks[w] | (1 << w)) & undominated):
            search(undominated & ~(masks[u] | (1 << u)), chosen | (1 << u), size + 1)

    if g.n == 0:
        return 0, frozenset()
    search((1 << g.n) - 1, 0, 0)
    return best[0], frozenset(_bits(best[1]))


def common_independence(g: Graph, budget: int | None = None) -> int:
    """alpha_c(G): the minimum over vertices of the largest independent set through that vertex."""
    _guard(g, budget)
    if g.n == 0:
        return 0
    return min(_vertex_maximum(g, v) for v in range(g.n))


def is_excellent(g: Graph, budget: int | None = None) -> bool:
    """Definition-level test: every vertex lies in some maximum independent set."""
    _guard(g, budget)
    alpha = _alpha_mask(g, (1 << g.n) - 1)[0]
    return all(_vertex_maximum(g, v) == alpha for v in range(g.n))


@dataclass(frozen=True)
class OracleReport:
    alpha: int
    i_dom: int
    alpha_c: int
    well_covered: bool
    excellent: bool
    per_vertex_max: dict[int, int] = field(default_factory=dict)
    alpha_witness: frozenset[int] = frozenset()
    i_witness: frozenset[int] = frozenset()


def classify(g: Graph, budget: int | None = None) -> OracleReport:
    _guard(g, budget)
    alpha, alpha_set = alpha_bruteforce(g, budget=g.n)
    i_dom, i_set = independent_domination(g, budget=g.n)
    per_vertex = {v: _vertex_maximum(g, v) for v in range(g.n)}
    alpha_c = min(per_vertex.values()) if per_vertex else 0
    return OracleReport(
        alpha=alpha,
        i_dom=i_dom,
        alpha_c=alpha_c,
        well_covered=i_dom == alpha,
        excellent=alpha_c == alpha,
        per_vertex_max=per_vertex,
        alpha_witness=alpha_set,
        i_witness=i_set,
    )


def fast_excellent_ktree(g: Graph, k: int) -> bool:
    """Excellence of a k-tree in ``O(n k^2)`` from its elimination order; no order budget."""
    order = recognize_ktree(g, k)
    if order is None:
        raise OrderingError(f"input is not a {k}-tree")
    maxima = ktree_vertex_maxima(g, order)
    alpha = max(maxima, default=0)
    return all(m == alpha for m in maxima)


def fast_excellent_2tree(g: Graph) -> bool:
    return fast_excellent_ktree(g, 2)
