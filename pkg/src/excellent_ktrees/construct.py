"""Graph generators, the excellent 2-tree embedding, and the k >= 3 converse explorer."""

from __future__ import annotations

import hashlib
import heapq
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, asdict
from itertools import combinations
from typing import Iterable, Iterator, Literal

from .cover import find_perfect_cover
from .graph import Graph, GraphError, Triangle, are_isomorphic, build_graph, complete_graph, enumerate_triangles
from .ktree import recognize_ktree
from .oracle import BudgetExceeded, is_excellent

log = logging.getLogger(__name__)

EXHAUSTIVE_ORDER_CAP = 10


@dataclass(frozen=True)
class GenSpec:
    n: int
    k: int
    seed: int = 0
    mode: Literal["random", "exhaustive"] = "random"

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if self.n < self.k:
            raise ValueError(f"order {self.n} is below k = {self.k}")
        if self.mode not in ("random", "exhaustive"):
            raise ValueError(f"unknown mode {self.mode!r}")


def random_ktree(spec: GenSpec | None = None, *, n: int | None = None, k: int | None = None, seed: int = 0) -> Graph:
    """Grow a k-tree from K_k, attaching each new vertex to a uniformly chosen k-clique.

    Vertex ids follow attachment order. Deterministic for a given seed.
    """
    if spec is None:
        if n is None or k is None:
            raise TypeError("pass a GenSpec or both n and k")
        spec = GenSpec(n=n, k=k, seed=seed)
    if spec.mode != "random":
        raise ValueError("random_ktree needs mode='random'")
    rng = random.Random(spec.seed)
    k = spec.k
    edges = list(combinations(range(k), 2))
    cliques: list[tuple[int, ...]] = [tuple(range(k))]
    for v in range(k, spec.n):
        clique = cliques[rng.randrange(len(cliques))]
        edges.extend((u, v) for u in clique)
        for drop in range(k):
            cliques.append(clique[:drop] + clique[drop + 1:] + (v,))
    return build_graph(spec.n, edges)


def random_covered_ktree(n: int, k: int, seed: int = 0) -> Graph:
    """A random k-tree that has a perfect (k+1)-cover by construction.

    Starts from K_{k+1} and grows in blocks of k+1 vertices: the first block
    vertex attaches to a uniformly chosen k-clique, each later one to the
    earlier block vertices plus a shrinking subset of that clique, so every
    block is a (k+1)-clique. Uniform attachment alone almost never yields a
    cover once n is a few multiples of k+1.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if n < k + 1 or n % (k + 1):
        raise ValueError(f"order must be a positive multiple of k + 1 = {k + 1}")
    rng = random.Random(seed)
    edges = list(combinations(range(k + 1), 2))
    base = tuple(range(k + 1))
    cliques: list[tuple[int, ...]] = [base[:i] + base[i + 1:] for i in range(k + 1)]
    v = k + 1
    while v < n:
        rest = list(cliques[rng.randrange(len(cliques))])
        block: list[int] = []
        for _ in range(k + 1):
            clique = tuple(block) + tuple(rest)
            edges.extend((u, v) for u in clique)
            for drop in range(k):
                cliques.append(clique[:drop] + clique[drop + 1:] + (v,))
            block.append(v)
            v += 1
            if rest:
                rest.pop(rng.randrange(len(rest)))
    return build_graph(n, edges)


def random_certificate(steps: int, seed: int = 0, o2_bias: float = 0.5):
    """A random construction sequence of ``steps`` growth operations from the red K3.

    Returns ``(certificate, labeled_tree)``; ids are assigned in creation order.
    """
    from .family import Certificate, O1Step, O2Step, apply_o1, apply_o2, base_tree

    rng = random.Random(seed)
    t = base_tree()
    done = []
    for _ in range(steps):
        fresh = (t.graph.n, t.graph.n + 1, t.graph.n + 2)
        if rng.random() < o2_bias:
            red = sorted(t.red)
            tri = list(red[rng.randrange(len(red))])
            rng.shuffle(tri)
            v1, v2, v3 = tri
            v4 = rng.choice(sorted(t.graph.adjacency[v3]))
            step = O2Step((v1, v2, v3), (v3, v4), fresh)
            t = apply_o2(t, step.triangle, step.edge, fresh)
        else:
            edges = t.graph.edges()
            e = edges[rng.randrange(len(edges))]
            if rng.random() < 0.5:
                e = (e[1], e[0])
            step = O1Step(e, fresh)
            t = apply_o1(t, e, fresh)
        done.append(step)
    return Certificate((0, 1, 2), tuple(done)), t


def random_tree(n: int, seed: int = 0) -> Graph:
    """Uniform random labeled tree (via a random Pruefer sequence)."""
    if n <= 2:
        return build_graph(n, [(0, 1)] if n == 2 else [])
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    a, b = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((a, b))
    return build_graph(n, edges)


def _invariant_key(g: Graph) -> tuple:
    degs = sorted(g.degree(v) for v in range(g.n))
    tri_count = [0] * g.n
    for t in enumerate_triangles(g):
        for v in t:
            tri_count[v] += 1
    return (g.m, tuple(degs), tuple(sorted(zip(map(g.degree, range(g.n)), tri_count))))


def enumerate_2trees(n: int, cap: int = EXHAUSTIVE_ORDER_CAP) -> list[Graph]:
    """All 2-trees of order ``n`` up to isomorphism."""
    if n > cap:
        raise ValueError(f"exhaustive enumeration refused above order {cap}")
    if n < 2:
        return []
    if n == 2:
        return [complete_graph(2)]
    level = [complete_graph(3)]
    for order in range(4, n + 1):
        buckets: dict[tuple, list[Graph]] = {}
        nxt: list[Graph] = []
        for g in level:
            for a, b in g.edges():
                h = g.add_vertices_and_edges(1, [(a, order - 1), (b, order - 1)])
                key = _invariant_key(h)
                bucket = buckets.setdefault(key, [])
                if any(are_isomorphic(h, other, limit=cap) for other in bucket):
                    continue
                bucket.append(h)
                nxt.append(h)
        level = nxt
    return level


def generate(spec: GenSpec) -> list[Graph]:
    if spec.mode == "random":
        return [random_ktree(spec)]
    if spec.k != 2:
        raise ValueError("exhaustive generation is only implemented for k = 2")
    return enumerate_2trees(spec.n)


def corona(h: Graph) -> Graph:
    """H o K1: vertex ``v`` of H gets a pendant vertex ``n + v``."""
    return h.add_vertices_and_edges(h.n, [(v, h.n + v) for v in range(h.n)])


def greedy_disjoint_triangles(g: Graph) -> list[Triangle]:
    taken: set[int] = set()
    chosen = []
    for t in enumerate_triangles(g):
        if taken.isdisjoint(t):
            chosen.append(t)
            taken.update(t)
    return chosen


@dataclass(frozen=True)
class Embedding:
    graph: Graph
    vertex_map: dict[int, int]
    cover: tuple[Triangle, ...]


def embed_excellent(g: Graph) -> Embedding:
    """Extend a 2-tree to an alpha-excellent 2-tree containing it as an induced subgraph.

    Vertices missed by a greedy maximal family of disjoint triangles each
    get a new triangle ``v x y`` with ``x`` also joined to ``v``'s lowest
    neighbour. Original ids are kept; new ids start at ``g.n``.
    """
    if recognize_ktree(g, 2) is None:
        raise GraphError("input is not a 2-tree")
    family = greedy_disjoint_triangles(g)
    covered = {v for t in family for v in t}
    new_edges = []
    gadgets = []
    nxt = g.n
    for v in range(g.n):
        if v in covered:
            continue
        anchor = min(g.adjacency[v])
        x, y = nxt, nxt + 1
        nxt += 2
        new_edges += [(x, v), (x, anchor), (y, v), (y, x)]
        gadgets.append((v, x, y))
    big = g.add_vertices_and_edges(nxt - g.n, new_edges)
    return Embedding(big, {v: v for v in range(g.n)}, tuple(family) + tuple(gadgets))


def fingerprint(g: Graph) -> str:
    """Hash of the edge list after relabeling vertices in degree-signature order.

    Isomorphic graphs usually, but not always, share a fingerprint; it is a
    dedup aid, not a canonical form.
    """
    key = {v: (g.degree(v), tuple(sorted(g.degree(u) for u in g.adjacency[v])), v) for v in range(g.n)}
    order = sorted(range(g.n), key=key.__getitem__)
    pos = {v: i for i, v in enumerate(order)}
    edges = sorted(tuple(sorted((pos[u], pos[v]))) for u, v in g.edges())
    payload = f"{g.n};" + ";".join(f"{a},{b}" for a, b in edges)
    return hashlib.sha1(payload.encode()).hexdigest()[:16]


class ContradictionError(RuntimeError):
    """A k-tree with a perfect cover was found not to be excellent."""


@dataclass(frozen=True)
class ExplorationRecord:
    fingerprint: str
    k: int
    n: int
    excellent: bool
    has_cover: bool
    seed: int = 0

    @property
    def agrees(self) -> bool:
        return self.has_cover or not self.excellent

    @property
    def finding(self) -> bool:
        """Excellent without a perfect cover: a counterexample candidate for the converse."""
        return self.excellent and not self.has_cover

    def to_dict(self) -> dict:
        d = asdict(self)
        d["agrees"] = self.agrees
        d["finding"] = self.finding
        return d


@dataclass
class ExplorationResult:
    records: list[ExplorationRecord] = field(default_factory=list)
    skipped: int = 0

    @property
    def findings(self) -> list[ExplorationRecord]:
        return [r for r in self.records if r.finding]


def _instance_seed(seed: int, index: int) -> int:
    digest = hashlib.blake2b(f"{seed}:{index}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def _orders(k: int, n_max: int) -> list[int]:
    if n_max < k + 1:
        raise ValueError(f"n_max must be at least k + 1 = {k + 1}")
    return list(range(k + 1, n_max + 1))


def _run_instance(args: tuple[int, int, int, int, int | None]) -> ExplorationRecord | None:
    k, n_max, seed, index, oracle_budget = args
    inst_seed = _instance_seed(seed, index)
    rng = random.Random(inst_seed)
    n = rng.choice(_orders(k, n_max))
    g = random_ktree(GenSpec(n=n, k=k, seed=inst_seed))
    try:
        excellent = is_excellent(g, oracle_budget)
    except BudgetExceeded:
        return None
    has_cover = find_perfect_cover(g, k) is not None
    return ExplorationRecord(fingerprint(g), k, n, excellent, has_cover, inst_seed)


def iter_exploration(
    k: int,
    n_max: int,
    budget: int,
    seed: int = 0,
    workers: int = 1,
    oracle_budget: int | None = None,
    skip: Iterable[str] = (),
) -> Iterator[ExplorationRecord | None]:
    """Yield one record per sampled instance in index order (``None`` for skipped ones).

    Instance ``i`` depends only on ``(seed, i)``, so output is identical for
    any worker count. Orders range over ``k+1..n_max``; orders not divisible
    by ``k+1`` act as negative controls for the cover search.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    _orders(k, n_max)
    skip_set = set(skip)
    jobs = ((k, n_max, seed, i, oracle_budget) for i in range(budget))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = pool.map(_run_instance, jobs, chunksize=64)
            yield from _check_stream(results, skip_set)
    else:
        yield from _check_stream(map(_run_instance, jobs), skip_set)


def _check_stream(results, skip_set):
    for rec in results:
        if rec is not None and rec.has_cover and not rec.excellent:
            raise ContradictionError(f"k-tree {rec.fingerprint} (seed {rec.seed}) has a perfect cover but is not excellent")
        if rec is not None and rec.fingerprint in skip_set:
            continue
        if rec is not None and rec.finding:
            log.warning("excellent %d-tree without perfect cover: %s (seed %d)", rec.k, rec.fingerprint, rec.seed)
        yield rec


def explore_converse(
    k: int,
    n_max: int,
    budget: int,
    seed: int = 0,
    workers: int = 1,
    oracle_budget: int | None = None,
) -> ExplorationResult:
    """Sample k-trees and compare oracle excellence with perfect-cover existence."""
    result = ExplorationResult()
    for rec in iter_exploration(k, n_max, budget, seed, workers, oracle_budget):
        if rec is None:
            result.skipped += 1
        else:
            result.records.append(rec)
    return result
