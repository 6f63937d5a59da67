"""Text formats: graph files, certificate files, DOT export.

Graph file::

    # comment
    n 6 k 2
    0 1
    1 2

The header ``n <order>`` (optionally ``k <k>``) is the first non-comment
line; every following line is one edge ``u v`` with 0-based ids. A new
header starts a new graph, so several graphs may share one stream.

Certificate file::

    base a b c
    O1 v1 v2 u1 u2 u3
    O2 v1 v2 v3 v4 u0 u1 u2
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .family import Certificate, LabeledTwoTree, O1Step, O2Step
from .graph import Graph, build_graph


class FormatError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class GraphFile:
    graph: Graph
    k: int | None = None


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(lineno, f"expected integers, got {' '.join(tokens)!r}") from None


def _parse_header(tokens: list[str], lineno: int) -> tuple[int, int | None]:
    if len(tokens) not in (2, 4) or tokens[0] != "n" or (len(tokens) == 4 and tokens[2] != "k"):
        raise FormatError(lineno, "header must be 'n <order>' or 'n <order> k <k>'")
    n = _ints(tokens[1:2], lineno)[0]
    k = _ints(tokens[3:4], lineno)[0] if len(tokens) == 4 else None
    if n < 0:
        raise FormatError(lineno, "order must be non-negative")
    return n, k


def iter_graph_files(lines: Iterable[str]) -> Iterator[GraphFile]:
    header: tuple[int, int | None] | None = None
    header_line = 0
    edges: list[tuple[int, int]] = []
    edge_lines: list[int] = []

    def finish() -> GraphFile:
        n, k = header
        for (u, v), ln in zip(edges, edge_lines):
            if not (0 <= u < n and 0 <= v < n):
                raise FormatError(ln, f"edge {u} {v} has an endpoint outside [0, {n})")
            if u == v:
                raise FormatError(ln, f"self-loop on vertex {u}")
        return GraphFile(build_graph(n, edges), k)

    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "n":
            if header is not None:
                yield finish()
            header = _parse_header(tokens, lineno)
            header_line = lineno
            edges, edge_lines = [], []
            continue
        if header is None:
            raise FormatError(lineno, "edge before header")
        if len(tokens) != 2:
            raise FormatError(lineno, "edge lines hold exactly two vertex ids")
        u, v = _ints(tokens, lineno)
        edges.append((u, v))
        edge_lines.append(lineno)
    if header is None:
        raise FormatError(max(header_line, 1), "missing header 'n <order>'")
    yield finish()


def parse_graph(text: str) -> GraphFile:
    files = list(iter_graph_files(text.splitlines()))
    if len(files) != 1:
        raise FormatError(1, f"expected one graph, found {len(files)}")
    return files[0]


def format_graph(g: Graph, k: int | None = None, comments: Iterable[str] = ()) -> str:
    out = [f"# {c}" for c in comments]
    out.append(f"n {g.n}" + (f" k {k}" if k is not None else ""))
    out += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(out) + "\n"


def parse_certificate(text: str) -> Certificate:
    base = None
    steps = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, *rest = line.split()
        if base is None:
            if head != "base" or len(rest) != 3:
                raise FormatError(lineno, "first record must be 'base a b c'")
            base = tuple(_ints(rest, lineno))
            continue
        nums = _ints(rest, lineno)
        if head == "O1" and len(nums) == 5:
            steps.append(O1Step((nums[0], nums[1]), tuple(nums[2:])))
        elif head == "O2" and len(nums) == 7:
            steps.append(O2Step(tuple(nums[0:3]), (nums[2], nums[3]), tuple(nums[4:])))
        else:
            raise FormatError(lineno, "expected 'O1 v1 v2 u1 u2 u3' or 'O2 v1 v2 v3 v4 u0 u1 u2'")
    if base is None:
        raise FormatError(1, "empty certificate")
    return Certificate(base, tuple(steps))


def format_certificate(cert: Certificate) -> str:
    out = ["base " + " ".join(map(str, cert.base))]
    for s in cert.steps:
        if isinstance(s, O1Step):
            out.append("O1 " + " ".join(map(str, s.edge + s.fresh)))
        else:
            out.append("O2 " + " ".join(map(str, s.triangle + (s.edge[1],) + s.fresh)))
    return "\n".join(out) + "\n"


RED_FILL = "#f6c6c6"
BLUE_EDGE = "#2b5fb3"


def to_dot(g: Graph, labels: LabeledTwoTree | None = None, name: str = "G") -> str:
    """DOT text; with ``labels`` red triangles become filled clusters, blue ones annotated comments."""
    out = [f"graph {name} {{", "  node [shape=circle];"]
    blue_edges: set[tuple[int, int]] = set()
    if labels is not None:
        for i, t in enumerate(sorted(labels.red)):
            out.append(f"  // red triangle {' '.join(map(str, t))}")
            out.append(
                f'  subgraph cluster_red_{i} {{ style=filled; fillcolor="{RED_FILL}"; color="#c03030"; '
                + " ".join(f"{v};" for v in t)
                + " }"
            )
        for t in sorted(labels.blue):
            out.append(f"  // blue triangle {' '.join(map(str, t))}")
            a, b, c = t
            blue_edges.update({(a, b), (a, c), (b, c)})
    for v in range(g.n):
        if labels is None or v in labels.vertices:
            out.append(f"  {v};")
    for u, v in g.edges():
        attr = f' [color="{BLUE_EDGE}"]' if (u, v) in blue_edges else ""
        out.append(f"  {u} -- {v}{attr};")
    out.append("}")
    return "\n".join(out) + "\n"


def format_vertex_map(vertex_map: Mapping[int, int]) -> list[str]:
    return [f"map {k} {v}" for k, v in sorted(vertex_map.items())]
