"""Command-line entry point: ``excellent-ktrees <command> ...``.

Exit status: 0 success, 1 negative verdict (not excellent, no cover, ...),
2 input error, 3 exact-search budget refused.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

from . import construct, cover, family, formats, oracle
from .graph import GraphError
from .ktree import OrderingError, recognize_ktree

OK, NEGATIVE, INPUT_ERROR, BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _load(path: str) -> formats.GraphFile:
    try:
        return formats.parse_graph(_read_text(path))
    except formats.FormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_two_tree(path: str):
    g = _load(path).graph
    if g.n < 3 or recognize_ktree(g, 2) is None:
        raise InputError(f"{path}: not a 2-tree of order at least 3")
    return g


def cmd_check(args, out) -> int:
    g = _load_two_tree(args.file)
    excellent = oracle.fast_excellent_2tree(g)
    out.write(("excellent" if excellent else "not excellent") + "\n")
    if args.certify and excellent:
        c = cover.find_perfect_cover(g, 2)
        out.write("# cover\n")
        for part in c.sorted_parts():
            out.write("cover " + " ".join(map(str, part)) + "\n")
        out.write("# certificate\n")
        out.write(formats.format_certificate(family.decompose(g)))
    return OK if excellent else NEGATIVE


def cmd_cover(args, out) -> int:
    g = _load(args.file).graph
    if args.count:
        count = cover.count_perfect_covers(g, args.k, args.limit)
        out.write(f"count {count}" + (f" (stopped at limit {args.limit})" if count >= args.limit else "") + "\n")
        return OK if count else NEGATIVE
    c = cover.find_perfect_cover(g, args.k)
    if c is None:
        out.write("none\n")
        return NEGATIVE
    for part in c.sorted_parts():
        out.write("cover " + " ".join(map(str, part)) + "\n")
    return OK


def cmd_decompose(args, out) -> int:
    g = _load_two_tree(args.file)
    cert = family.decompose(g)
    if cert is None:
        out.write("not alpha-excellent\n")
        return NEGATIVE
    out.write(formats.format_certificate(cert))
    return OK


def cmd_embed(args, out) -> int:
    g = _load_two_tree(args.file)
    emb = construct.embed_excellent(g)
    out.write(formats.format_graph(emb.graph, 2, formats.format_vertex_map(emb.vertex_map)))
    return OK


def cmd_gen(args, out) -> int:
    mode = "exhaustive" if args.exhaustive else "random"
    try:
        spec = construct.GenSpec(n=args.n, k=args.k, seed=args.seed, mode=mode)
        graphs = construct.generate(spec)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    for i, g in enumerate(graphs):
        out.write(formats.format_graph(g, args.k, [f"graph {i} seed {args.seed}" if mode == "random" else f"graph {i}"]))
    return OK


def cmd_oracle(args, out) -> int:
    g = _load(args.file).graph
    report = oracle.classify(g)
    if args.json:
        payload = {
            "alpha": report.alpha,
            "i": report.i_dom,
            "alpha_c": report.alpha_c,
            "well_covered": report.well_covered,
            "excellent": report.excellent,
            "per_vertex_max": {str(v): m for v, m in report.per_vertex_max.items()},
        }
        out.write(json.dumps(payload) + "\n")
    else:
        out.write(f"alpha={report.alpha}\n")
        out.write(f"i={report.i_dom}\n")
        out.write(f"alpha_c={report.alpha_c}\n")
        out.write(f"well_covered={str(report.well_covered).lower()}\n")
        out.write(f"excellent={str(report.excellent).lower()}\n")
        for v, m in report.per_vertex_max.items():
            out.write(f"vertex {v} max={m}\n")
    return OK if report.excellent else NEGATIVE


def _seen_fingerprints(path: str) -> set[str]:
    seen = set()
    for lineno, line in enumerate(_read_text(path).splitlines(), start=1):
        if not line.strip():
            continue
        try:
            seen.add(json.loads(line)["fingerprint"])
        except (ValueError, KeyError, TypeError):
            raise InputError(f"{path}: line {lineno}: not an exploration record") from None
    return seen


def cmd_explore(args, out) -> int:
    skip = _seen_fingerprints(args.resume_from) if args.resume_from else set()
    records = skipped = findings = 0
    try:
        for rec in construct.iter_exploration(args.k, args.nmax, args.budget, args.seed, args.workers, skip=skip):
            if rec is None:
                skipped += 1
                continue
            records += 1
            findings += rec.finding
            out.write(json.dumps(rec.to_dict()) + "\n")
            out.flush()
    except construct.ContradictionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return NEGATIVE
    except ValueError as exc:
        raise InputError(str(exc)) from None
    print(f"# records={records} skipped={skipped} findings={findings}", file=sys.stderr)
    return OK


def cmd_convert(args, out) -> int:
    gf = _load(args.file)
    if not args.dot:
        out.write(formats.format_graph(gf.graph, gf.k))
        return OK
    labels = None
    if args.labels:
        g = gf.graph
        if g.n >= 3 and recognize_ktree(g, 2) is not None:
            cert = family.decompose(g)
            if cert is not None:
                labels = family.replay_certificate(cert, g.n)
        if labels is None:
            print("# no red/blue labels: not an alpha-excellent 2-tree", file=sys.stderr)
    out.write(formats.to_dot(gf.graph, labels))
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="excellent-ktrees", description="Independence oracles, perfect clique covers and excellent 2-tree certificates.", epilog="exit status: 0 ok, 1 negative verdict, 2 input error, 3 exact-search budget refused")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="excellence verdict for a 2-tree")
    s.add_argument("file")
    s.add_argument("--certify", action="store_true", help="also print the cover and a certificate")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("cover", help="find or count perfect (k+1)-covers")
    s.add_argument("file")
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--count", action="store_true")
    s.add_argument("--limit", type=int, default=2)
    s.set_defaults(func=cmd_cover)

    s = sub.add_parser("decompose", help="construction certificate of an excellent 2-tree")
    s.add_argument("file")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("embed", help="embed a 2-tree in an excellent 2-tree")
    s.add_argument("file")
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("gen", help="generate k-trees")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--exhaustive", action="store_true", help="all 2-trees of order n up to isomorphism")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("oracle", help="exact alpha, i, alpha_c, well-covered and excellent")
    s.add_argument("file")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("explore", help="sample k-trees: excellence vs perfect cover")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--nmax", type=int, required=True)
    s.add_argument("--budget", type=int, required=True, help="number of sampled instances")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--resume-from", help="skip fingerprints already present in this record file")
    s.set_defaults(func=cmd_explore)

    s = sub.add_parser("convert", help="rewrite a graph file, or export DOT")
    s.add_argument("file")
    s.add_argument("--dot", action="store_true")
    s.add_argument("--labels", action="store_true", help="colour red/blue triangles (excellent 2-trees)")
    s.set_defaults(func=cmd_convert)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except (GraphError, OrderingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except oracle.BudgetExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return BUDGET


def main_entry() -> None:
    sys.exit(main())
