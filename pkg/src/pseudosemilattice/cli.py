"""``psl``: command-line front end.

Exit codes: 0 true/success, 1 false (or a failing replay), 2 usage or
semantic error, 3 unparsable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, TextIO

from . import family, finmodel, graphs, order, proofs, rewrite, varieties
from .errors import NotReduced, PseudosemilatticeError, SchemaError, TermSyntaxError
from .terms import invariants, letter_sort_key, parse_term, print_term, sorted_letters

EXIT_TRUE, EXIT_FALSE, EXIT_USAGE, EXIT_PARSE = 0, 1, 2, 3


@dataclass(frozen=True)
class CliConfig:
    format: str = "text"
    trace: bool = False
    seed: int = 0
    strict: bool = False


class _Usage(Exception):
    pass


def _config(ns: argparse.Namespace) -> CliConfig:
    return CliConfig(
        format=getattr(ns, "format", "text"),
        trace=getattr(ns, "trace", False),
        seed=getattr(ns, "seed", 0),
        strict=getattr(ns, "strict", False),
    )


def load_graph(arg: str, cfg: CliConfig, err: TextIO) -> graphs.BiTree:
    """A term (reduced via theta) or ``@file.json`` holding a graph."""
    if not arg.startswith("@"):
        return rewrite.theta(parse_term(arg))
    try:
        text = Path(arg[1:]).read_text()
    except OSError as exc:
        raise _Usage(f"cannot read {arg[1:]}: {exc}") from exc
    g = graphs.from_json(text)
    if not graphs.is_reduced(g):
        if cfg.strict:
            raise NotReduced(f"{arg[1:]} is not reduced")
        print(f"note: {arg[1:]} was not reduced; using its reduced form", file=err)
        g = rewrite.reduce(g)
    return g


def render_graph(g: graphs.BiTree, fmt: str) -> str:
    if fmt == "json":
        return graphs.to_json(g)
    if fmt == "dot":
        return graphs.to_dot(g).rstrip("\n")
    return graphs.describe(g)


def _verdict(flag: bool, out: TextIO) -> int:
    print("true" if flag else "false", file=out)
    return EXIT_TRUE if flag else EXIT_FALSE


# -- commands -----------------------------------------------------------------

def cmd_reduce(ns, cfg, out, err) -> int:
    if ns.graph.startswith("@"):
        try:
            raw = graphs.from_json(Path(ns.graph[1:]).read_text())
        except OSError as exc:
            raise _Usage(f"cannot read {ns.graph[1:]}: {exc}") from exc
    else:
        raw = graphs.delta(parse_term(ns.graph))
    g, trace = rewrite.reduce_with_trace(raw)
    if cfg.format == "json" and cfg.trace:
        print(json.dumps({"graph": graphs.to_dict(g), "trace": trace.to_dict()}, separators=(",", ":")), file=out)
        return EXIT_TRUE
    print(render_graph(g, cfg.format), file=out)
    if cfg.trace:
        if cfg.format == "text":
            for s in trace.steps:
                print(f"{s.kind} survivor={s.survivor} removed={s.removed}", file=out)
        else:
            print("// trace " + trace.to_json(), file=out)
    return EXIT_TRUE


def cmd_eq(ns, cfg, out, err) -> int:
    return _verdict(rewrite.words_equal(parse_term(ns.u), parse_term(ns.v)), out)


def cmd_sps(ns, cfg, out, err) -> int:
    return _verdict(varieties.is_sps_identity(parse_term(ns.u), parse_term(ns.v)), out)


ORDER_RELATIONS = {
    "leq": order.leq,
    "leq_R": order.leq_R,
    "leq_L": order.leq_L,
    "rel_R": order.rel_R,
    "rel_L": order.rel_L,
    "rel_D": order.rel_D,
    "covers": order.covers,
}


def cmd_order(ns, cfg, out, err) -> int:
    a = load_graph(ns.first, cfg, err)
    b = load_graph(ns.second, cfg, err)
    if ns.rel == "elementary":
        return _verdict(order.is_elementary(order.GraphPair(a, b)), out)
    return _verdict(ORDER_RELATIONS[ns.rel](a, b), out)


def cmd_invariants(ns, cfg, out, err) -> int:
    if ns.graph.startswith("@"):
        inv = load_graph(ns.graph, cfg, err).invariants()
    else:
        inv = invariants(parse_term(ns.graph))
    data = {
        "l": inv.l,
        "r": inv.r,
        "c": sorted_letters(inv.c),
        "c2": sorted(([a, b] for a, b in inv.c2), key=lambda p: tuple(map(letter_sort_key, p))),
        "cl": sorted_letters(inv.cl),
        "cr": sorted_letters(inv.cr),
    }
    if cfg.format == "json":
        print(json.dumps(data, separators=(",", ":")), file=out)
    else:
        for key in ("l", "r"):
            print(f"{key}: {data[key]}", file=out)
        for key in ("c", "cl", "cr"):
            print(f"{key}: {{{', '.join(data[key])}}}", file=out)
        print("c2: {" + ", ".join(f"({a},{b})" for a, b in data["c2"]) + "}", file=out)
    return EXIT_TRUE


def cmd_family(ns, cfg, out, err) -> int:
    idx = family.FamilyIndex(ns.n, ns.k, ns.i, ns.dual)
    if ns.what == "word":
        t = family.word_v(idx) if ns.beta else family.word_u(idx)
        print(print_term(t), file=out)
    else:
        g = family.beta(idx) if ns.beta else family.alpha(idx)
        print(render_graph(g, cfg.format), file=out)
    return EXIT_TRUE


def cmd_word(ns, cfg, out, err) -> int:
    print(print_term(family.word_of_path(load_graph(ns.graph, cfg, err))), file=out)
    return EXIT_TRUE


def cmd_compare(ns, cfg, out, err) -> int:
    a, b = varieties.parse_variety(ns.a), varieties.parse_variety(ns.b)
    res = varieties.compare_detail(a, b)
    if cfg.format == "json":
        print(json.dumps({"relation": res.relation.value, "derived": res.derived}), file=out)
    else:
        print(res.relation.value, file=out)
        if res.derived:
            print("note: verdict derived by combining single-pair results", file=err)
    if ns.witness:
        return _print_witness(a, b, res.relation, out)
    return EXIT_TRUE


def _print_witness(a, b, rel, out) -> int:
    if a.kind == "M" or b.kind == "M":
        raise _Usage("--witness needs plain or starred varieties")
    src, dst = varieties.generators(a)[0], varieties.generators(b)[0]
    if rel is varieties.Relation.SUPER:
        src, dst = dst, src
    elif rel is varieties.Relation.INCOMPARABLE:
        print("no inclusion to witness", file=out)
        return EXIT_FALSE
    report = varieties.verify_pair_consequence_witness(src, dst)
    if report is None:
        print("no constructive route implemented", file=out)
        return EXIT_FALSE
    for step in report.steps:
        print(step.line(), file=out)
    return EXIT_TRUE if report.ok else EXIT_FALSE


def cmd_hasse(ns, cfg, out, err) -> int:
    d = varieties.hasse(ns.n, ns.size_from, ns.size_to)
    if cfg.format == "dot":
        out.write(d.to_dot())
    elif cfg.format == "json":
        print(d.to_json(), file=out)
    else:
        for lo, hi in d.cover_edges:
            print(f"{lo.label()} < {hi.label()}", file=out)
    return EXIT_TRUE


def cmd_models(ns, cfg, out, err) -> int:
    algebras = finmodel.enumerate_algebras(ns.size, ns.up_to_iso)
    if cfg.format == "json":
        print(json.dumps({"size": ns.size, "upToIso": ns.up_to_iso, "count": len(algebras),
                          "tables": [[list(r) for r in a.table] for a in algebras] if ns.tables else None}),
              file=out)
        return EXIT_TRUE
    suffix = " up to isomorphism" if ns.up_to_iso else ""
    print(f"{len(algebras)} pseudosemilattices{suffix}", file=out)
    if ns.tables:
        for a in algebras:
            print(a.to_json(), file=out)
    return EXIT_TRUE


def cmd_witness(ns, cfg, out, err) -> int:
    hit = finmodel.find_witness(parse_term(ns.u), parse_term(ns.v), ns.max_size)
    if hit is None:
        print("none", file=out)
        return EXIT_FALSE
    a, env = hit
    if cfg.format == "json":
        print(json.dumps({"table": [list(r) for r in a.table], "assignment": env}), file=out)
    else:
        print(f"size {a.size}: {a.to_json()}", file=out)
        print("assignment: " + ", ".join(f"{k}={v}" for k, v in env.items()), file=out)
    return EXIT_TRUE


def cmd_replay(ns, cfg, out, err) -> int:
    checks = proofs.replay(ns.selector, seed=cfg.seed, samples=ns.samples)
    for c in checks:
        print(c.line(), file=out)
    failed = sum(not c.ok for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed", file=out)
    return EXIT_TRUE if failed == 0 else EXIT_FALSE


# -- parser -------------------------------------------------------------------

def _globals(defaults: bool) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p.add_argument("--format", choices=("text", "json", "dot"), default=d("text"))
    p.add_argument("--trace", action="store_true", default=d(False))
    p.add_argument("--seed", type=int, default=d(0))
    p.add_argument("--strict", action="store_true", default=d(False),
                   help="refuse unreduced graph files instead of reducing them")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="psl", parents=[_globals(True)],
                                     description="Word problem, identity families and finite models "
                                                 "for pseudosemilattices.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _globals(False)

    def add(name, func, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=func)
        return sp

    sp = add("reduce", cmd_reduce, "reduced graph of a term or graph file")
    sp.add_argument("graph", help="term, or @file.json")

    for name, func, text in (("eq", cmd_eq, "decide u = v"), ("sps", cmd_sps, "compare (l, c2, r)")):
        sp = add(name, func, text)
        sp.add_argument("u")
        sp.add_argument("v")

    sp = add("order", cmd_order, "order predicates on reduced graphs")
    sp.add_argument("--rel", choices=sorted(ORDER_RELATIONS) + ["elementary"], default="leq")
    sp.add_argument("first")
    sp.add_argument("second")

    sp = add("invariants", cmd_invariants, "l, r, c, c2, cl, cr")
    sp.add_argument("graph")

    sp = add("family", cmd_family, "family words and graphs")
    sp.add_argument("what", choices=("word", "graph"))
    which = sp.add_mutually_exclusive_group()
    which.add_argument("-u", "--alpha", dest="alpha", action="store_true", help="the alpha side (default)")
    which.add_argument("-v", "--beta", dest="beta", action="store_true", help="the beta side")
    sp.add_argument("n", type=int)
    sp.add_argument("k", type=int)
    sp.add_argument("i", type=int)
    sp.add_argument("--dual", action="store_true", help="starred family")

    sp = add("word", cmd_word, "the term of a path-shaped graph")
    sp.add_argument("graph")

    sp = add("compare", cmd_compare, "compare two varieties n,k,i[,p|d|m]")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--witness", action="store_true", help="replay the endomorphisms behind an inclusion")

    sp = add("hasse", cmd_hasse, "cover diagram of the varieties")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--from", dest="size_from", type=int, required=True)
    sp.add_argument("--to", dest="size_to", type=int, required=True)

    sp = add("models", cmd_models, "count finite pseudosemilattices")
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--up-to-iso", action="store_true")
    sp.add_argument("--tables", action="store_true")

    sp = add("witness", cmd_witness, "smallest finite model refuting u = v")
    sp.add_argument("u")
    sp.add_argument("v")
    sp.add_argument("--max-size", type=int, default=3)

    sp = add("replay", cmd_replay, "re-run the constructive proof steps")
    sp.add_argument("selector", choices=proofs.SELECTORS)
    sp.add_argument("--samples", type=int, default=500)
    return parser


def main(argv: Optional[list[str]] = None, out: TextIO = None, err: TextIO = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = _config(ns)
    try:
        return ns.func(ns, cfg, out, err)
    except (TermSyntaxError, SchemaError) as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_PARSE
    except (PseudosemilatticeError, _Usage) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())
