"""Definition-level brute force used as independent test oracles.

Nothing here calls into the library's search routines; only the Graph
container is shared.
"""

from itertools import combinations

from excellent_ktrees.graph import Graph


def independent_sets(g: Graph):
    for r in range(g.n + 1):
        for s in combinations(range(g.n), r):
            if all(b not in g.adjacency[a] for a, b in combinations(s, 2)):
                yield frozenset(s)


def alpha(g: Graph) -> int:
    return max(len(s) for s in independent_sets(g))


def maximal_independent_sets(g: Graph):
    sets = list(independent_sets(g))
    for s in sets:
        if all(v in s or g.adjacency[v] & s for v in range(g.n)):
            yield s


def i_dom(g: Graph) -> int:
    return min(len(s) for s in maximal_independent_sets(g))


def per_vertex_max(g: Graph) -> dict[int, int]:
    best = {v: 0 for v in range(g.n)}
    for s in independent_sets(g):
        for v in s:
            best[v] = max(best[v], len(s))
    return best


def excellent(g: Graph) -> bool:
    a = alpha(g)
    return all(m == a for m in per_vertex_max(g).values())


def triangles(g: Graph):
    return [t for t in combinations(range(g.n), 3) if g.is_clique(t)]


def perfect_covers(g: Graph, k: int):
    """Every partition of V into (k+1)-cliques, by plain recursion on the lowest uncovered vertex."""
    out = []

    def rec(uncovered: frozenset, parts: list):
        if not uncovered:
            out.append(frozenset(parts))
            return
        v = min(uncovered)
        for rest in combinations(sorted(uncovered - {v}), k):
            part = (v,) + rest
            if g.is_clique(part):
                rec(uncovered - set(part), parts + [part])

    if g.n % (k + 1) == 0:
        rec(frozenset(range(g.n)), [])
    return out


def has_perfect_matching(g: Graph) -> bool:
    return bool(perfect_covers(g, 1))


def _components_without(g: Graph, removed: set[int]):
    seen = set(removed)
    comps = []
    for s in range(g.n):
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        seen.add(s)
        while stack:
            v = stack.pop()
            for u in g.adjacency[v]:
                if u not in seen:
                    seen.add(u)
                    comp.add(u)
                    stack.append(u)
        comps.append(comp)
    return comps


def _separates(g: Graph, sep: set[int], u: int, v: int) -> bool:
    for comp in _components_without(g, sep):
        if u in comp:
            return v not in comp
    raise AssertionError("u removed")


def rose_ktree(g: Graph, k: int) -> bool:
    """Connected, has K_k, no K_{k+2}, and every minimal separator of a nonadjacent pair is a K_k."""
    if g.n == 0 or len(_components_without(g, set())) != 1:
        return False
    if not any(g.is_clique(c) for c in combinations(range(g.n), k)):
        return False
    if any(g.is_clique(c) for c in combinations(range(g.n), k + 2)):
        return False
    for u, v in combinations(range(g.n), 2):
        if v in g.adjacency[u]:
            continue
        others = [w for w in range(g.n) if w not in (u, v)]
        for r in range(len(others) + 1):
            for sep in combinations(others, r):
                s = set(sep)
                if not _separates(g, s, u, v):
                    continue
                if any(_separates(g, s - {x}, u, v) for x in s):
                    continue
                if len(s) != k or not g.is_clique(s):
                    return False
    return True
