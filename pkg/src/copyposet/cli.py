"""Command-line entry point: ``copyposet <verb> ...``.

Exit codes: 0 success, 1 domain error, 2 capacity error, 3 syntax error
(bad JSON, bad expressions and bad command lines alike). ``--json`` prints
canonical JSON (sorted keys), otherwise a short human-readable summary.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import poset as po
from . import structure as st
from .classify import classify, parse_descriptor
from .copies import (
    avoider_sets,
    homogeneous_subset,
    is_ideal_finite,
    maximal_prefix_check,
    pattern_indivisible,
    poset_of_copies,
    ramsey_coloring,
)
from .embed import DEFAULT_NODE_LIMIT, copies, copies_of_union_oracle, embeddings
from .errors import CapacityError, DomainError, ParseError
from .ordinal import is_indivisible_ordinal, ord_add, ord_mul, parse_ordinal, render as render_ordinal, sq_formula
from .suites import SUITES, run_suite
from .terms import render

EXIT_OK, EXIT_DOMAIN, EXIT_CAPACITY, EXIT_SYNTAX = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    """Usage errors count as syntax errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_SYNTAX, f"{self.prog}: error: {message}\n")


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc.msg}", exc.pos) from None


def _subset(text):
    try:
        return sorted({int(x) for x in text.split(",") if x.strip()})
    except ValueError:
        raise ParseError(f"expected a comma-separated list of elements, got {text!r}") from None


def _poset_payload(P):
    return P.to_dict()


# --- verbs ---------------------------------------------------------------


def cmd_components(args):
    s = st.load_structure(args.file)
    blocks = st.components(s).as_lists()
    return {"components": blocks, "connected": len(blocks) == 1}, "\n".join(" ".join(map(str, b)) for b in blocks)


def cmd_complement(args):
    c = st.complement(st.load_structure(args.file))
    return c.to_dict(), c.to_json()


def cmd_induced(args):
    s = st.induced(st.load_structure(args.file), _subset(args.subset))
    return s.to_dict(), s.to_json()


def cmd_iso(args):
    f = st.is_isomorphic(st.load_structure(args.first), st.load_structure(args.second), cap=args.cap_size or st.DEFAULT_ISO_CAP)
    witness = None if f is None else list(f)
    return {"isomorphic": f is not None, "witness": witness}, "not isomorphic" if f is None else f"isomorphic via {witness}"


def cmd_embed(args):
    found = embeddings(st.load_structure(args.pattern), st.load_structure(args.host), args.cap_nodes)
    rows = [list(f) for f in found]
    return {"count": len(rows), "embeddings": rows}, "\n".join([f"{len(rows)} embeddings"] + [" ".join(map(str, r)) for r in rows])


def _copies_payload(cs):
    rows = cs.sorted_copies()
    return {"count": len(rows), "copies": rows}, "\n".join([f"{len(rows)} copies"] + [" ".join(map(str, r)) for r in rows])


def cmd_copies(args):
    return _copies_payload(copies(st.load_structure(args.pattern), st.load_structure(args.host), args.cap_nodes))


def cmd_copies_oracle(args):
    parts = [st.load_structure(p) for p in args.parts]
    host_parts = [st.load_structure(p) for p in args.host_parts]
    return _copies_payload(copies_of_union_oracle(parts, host_parts, args.cap_nodes))


def cmd_poset(args):
    pattern = st.load_structure(args.pattern)
    host = st.load_structure(args.host) if args.host else pattern
    cp = poset_of_copies(pattern, host, cap=args.cap_size or 4096, node_limit=args.cap_nodes)
    payload = dict(_poset_payload(cp.poset), labels=cp.label_lists())
    text = "\n".join([f"{cp.poset.size} copies"] + [f"{i}: {' '.join(map(str, lab))}" for i, lab in enumerate(cp.label_lists())])
    return payload, text


def _load_poset_or_copies(path, args):
    """A poset file, or a structure file standing for its poset of self-copies."""
    data = _read_json(path)
    if isinstance(data, dict) and "pairs" in data and "leq" not in data:
        s = st.parse_structure(data)
        return poset_of_copies(s, s, cap=args.cap_size or 4096, node_limit=args.cap_nodes).poset
    return po.parse_poset(data)


def cmd_sq(args):
    P = _load_poset_or_copies(args.file, args)
    q = po.separative_quotient(P)
    payload = dict(_poset_payload(q.quotient), classOf=list(q.class_of), separative=po.is_separative(P))
    classes = {}
    for p, c in enumerate(q.class_of):
        classes.setdefault(c, []).append(p)
    text = "\n".join([f"quotient of size {q.quotient.size}"] + [f"class {c}: {' '.join(map(str, m))}" for c, m in classes.items()])
    return payload, text


def cmd_density(args):
    P = _load_poset_or_copies(args.file, args)
    subset = _subset(args.subset) if args.subset is not None else sorted(po.atoms(P))
    mode = po.density_mode(P, subset)
    payload = {
        "subset": subset,
        "mode": mode,
        "atoms": sorted(po.atoms(P)),
        "atomic": po.is_atomic(P),
        "atomless": po.is_atomless(P),
    }
    return payload, f"{mode} (atoms: {payload['atoms']})"


def _pattern_host(args):
    pattern = st.load_structure(args.pattern)
    return pattern, (st.load_structure(args.host) if args.host else pattern)


def cmd_indivisible(args):
    pattern, host = _pattern_host(args)
    ok = pattern_indivisible(pattern, host, args.cap_nodes)
    return {"indivisible": ok}, "indivisible" if ok else "divisible"


def cmd_ideal(args):
    pattern, host = _pattern_host(args)
    avoid = avoider_sets(pattern, host, args.cap_nodes)
    ok = is_ideal_finite(avoid, host)
    return {"ideal": ok, "avoiders": len(avoid)}, f"{'ideal' if ok else 'not an ideal'} ({len(avoid)} avoiding subsets)"


def cmd_ramsey(args):
    s = st.load_structure(args.file)
    col = ramsey_coloring(s)
    classes = {f"{x},{y}": col.color(x, y).name for x, y in sorted(col.classes)}
    found = homogeneous_subset(col, args.k)
    hom = None if found is None else {"subset": list(found[0]), "class": found[1].name}
    text = [f"{k}: {v}" for k, v in classes.items()]
    text.append(f"homogeneous {args.k}-set: " + ("none" if hom is None else f"{hom['subset']} in {hom['class']}"))
    return {"classes": classes, "homogeneous": hom}, "\n".join(text)


def cmd_maximal_check(args):
    ok = maximal_prefix_check(args.family, args.n)
    return {"family": args.family, "n": args.n, "maximal": ok}, "maximal" if ok else "not maximal"


def cmd_ordinal(args):
    a = parse_ordinal(args.expr)
    if args.add:
        a = ord_add(a, parse_ordinal(args.add))
    if args.mul:
        a = ord_mul(a, parse_ordinal(args.mul))
    payload = {
        "ordinal": render_ordinal(a),
        "indivisible": (not a.is_zero()) and is_indivisible_ordinal(a),
        "limit": a.is_limit(),
    }
    return payload, payload["ordinal"]


def cmd_sq_formula(args):
    term = render(sq_formula(parse_ordinal(args.expr)))
    return {"ordinal": render_ordinal(parse_ordinal(args.expr)), "term": term}, term


def cmd_classify(args):
    result = classify(parse_descriptor(args.descriptor), ch_mode=args.ch)
    payload = result.to_dict()
    lines = [f"cell: {payload['cell']}", f"term: {payload['term']}"]
    lines += [f"{k}: {v}" for k, v in payload["attributes"].items()]
    lines += [f"- {c}" for c in payload["citations"]]
    return payload, "\n".join(lines)


def cmd_verify(args):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = [run_suite(n, args.seed) for n in names]
    lines = []
    for r in results:
        lines.append(f"{'PASS' if r.ok else 'FAIL'} {r.name}: {r.passed} passed, {r.failed} failed")
        lines += [f"  violated: {f}" for f in r.failures]
    payload = {"suites": [r.to_dict() for r in results], "ok": all(r.ok for r in results)}
    return payload, "\n".join(lines), (EXIT_OK if payload["ok"] else EXIT_DOMAIN)


# --- parser --------------------------------------------------------------


def _add_global_flags(p, suppress):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--json", action="store_true", default=default(False), help="canonical JSON output")
    p.add_argument("--ch", action="store_true", default=default(False), help="merge sigma-closed terms in classify")
    p.add_argument("--cap-nodes", type=int, default=default(DEFAULT_NODE_LIMIT), help="search node budget")
    p.add_argument("--cap-size", type=int, default=default(None), help="size cap for posets and isomorphism tests")
    p.add_argument("--seed", type=int, default=default(0), help="seed for randomized suites")


def build_parser():
    parser = _Parser(prog="copyposet", description="Posets of copies of finite binary structures.")
    _add_global_flags(parser, suppress=False)
    common = _Parser(add_help=False)
    _add_global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, handler, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
        return p

    verb("components", cmd_components, "connected components").add_argument("file")
    verb("complement", cmd_complement, "complement relation").add_argument("file")
    p = verb("induced", cmd_induced, "induced substructure")
    p.add_argument("file")
    p.add_argument("--subset", required=True, help="comma-separated elements")
    p = verb("iso", cmd_iso, "isomorphism test")
    p.add_argument("first")
    p.add_argument("second")
    for name, handler, text in (("embed", cmd_embed, "all induced embeddings"), ("copies", cmd_copies, "all copies of PATTERN in HOST")):
        p = verb(name, handler, text)
        p.add_argument("pattern")
        p.add_argument("host")
    p = verb("copies-oracle", cmd_copies_oracle, "copies of a union of connected parts, part by part")
    p.add_argument("--parts", nargs="+", required=True)
    p.add_argument("--host-parts", nargs="+", required=True)
    for name, handler, text in (
        ("poset", cmd_poset, "poset of copies ordered by inclusion"),
        ("indivisible", cmd_indivisible, "finite indivisibility"),
        ("ideal", cmd_ideal, "are the copy-avoiding subsets an ideal"),
    ):
        p = verb(name, handler, text)
        p.add_argument("pattern")
        p.add_argument("host", nargs="?", help="defaults to the pattern itself")
    verb("sq", cmd_sq, "separative quotient of a poset (or of a structure's poset of copies)").add_argument("file")
    p = verb("density", cmd_density, "density of a subset of a poset (atoms by default)")
    p.add_argument("file")
    p.add_argument("--subset")
    p = verb("ramsey", cmd_ramsey, "four-class pair colouring and a homogeneous subset")
    p.add_argument("file")
    p.add_argument("--k", type=int, default=3)
    p = verb("maximal-check", cmd_maximal_check, "prefix check for an embedding-maximal family")
    p.add_argument("family")
    p.add_argument("n", type=int)
    p = verb("ordinal", cmd_ordinal, "normalise an ordinal, optionally adding or multiplying on the right")
    p.add_argument("expr")
    p.add_argument("--add")
    p.add_argument("--mul")
    verb("sq-formula", cmd_sq_formula, "symbolic quotient term for an ordinal").add_argument("expr")
    verb("classify", cmd_classify, "place a described family in the diagram").add_argument("descriptor")
    verb("verify", cmd_verify, "run a property suite").add_argument("suite", choices=list(SUITES) + ["all"])
    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # --help, or a usage error already reported
        return exc.code if isinstance(exc.code, int) else EXIT_SYNTAX
    try:
        out = args.handler(args)
    except ParseError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return EXIT_SYNTAX
    except CapacityError as exc:
        print(f"capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    payload, text = out[0], out[1]
    code = out[2] if len(out) > 2 else EXIT_OK
    print(json.dumps(payload, sort_keys=True) if args.json else text)
    return code


if __name__ == "__main__":
    sys.exit(main())
