"""Command-line front end.

Inputs are JSON documents read from a path, from ``-`` (standard input), or
named from the bundled catalog as ``catalog:NAME``. Results go to standard
output as documents; diagnostics go to standard error as one JSON object.

Exit codes: 0 success, 1 negative verdict, 2 bad input, 3 budget or size limit.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import documents as docs
from .atoms import atom_check, default_family, idempotent_atoms, karoubi, object_atoms
from .catalog import load_catalog
from .errors import BipolarError, DocumentError
from .fibrations import CLOSED, OPEN, classify_part, clopen_coreflect, clopen_reflect, coreflect, reflect
from .fincat import DEFAULT_BUDGET, FinCat, FinFunctor, FinGraph, UnionFind, components
from .graphspace import (
    CycleSum,
    GraphPart,
    SymbolicEndomap,
    chains,
    classify_graph_part,
    cycle_pairing,
    graph_space_bridge,
    loop_reflect,
    zn_transfer,
)
from .kan import lan, ran
from .parts import Part, hom_over, negation, tensor
from .presheaf import Presheaf, elements
from .twoval import (
    DOWN,
    UP,
    Poset,
    alexandrov_coreflect,
    alexandrov_reflect,
    classify_subset,
    is_atom,
    pseudocomplement,
)

NEGATIVE = 1


class Verdict(Exception):
    """A computed negative answer: the document is still printed, exit code 1."""

    def __init__(self, doc):
        super().__init__("negative verdict")
        self.doc = doc


# ------------------------------------------------------------------ input


def read_input(source: str, expect=None):
    """Load a document from a path, ``-`` or ``catalog:NAME``."""
    if source.startswith("catalog:"):
        name = source[len("catalog:"):]
        cat = load_catalog()
        if expect in (None, "category") or (isinstance(expect, tuple) and "category" in expect):
            if name in cat.bases:
                return cat.bases[name]
        if name in cat.graphs:
            return cat.graphs[name]
        raise DocumentError(f"no catalog entry named {name!r}")
    if source == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise DocumentError(f"cannot read {source}: {e.strerror}") from None
    return docs.load(text, expect)


def as_part(obj, budget: int) -> Part:
    """Parts, presheaves (via elements) and graph parts (via free categories)."""
    if isinstance(obj, Part):
        return obj
    if isinstance(obj, Presheaf):
        return elements(obj)
    if isinstance(obj, GraphPart):
        return graph_space_bridge(obj, budget)
    raise DocumentError(f"expected a part, got a {type(obj).__name__}")


def emit(doc: dict) -> None:
    sys.stdout.write(docs.dumps(doc))


def report(payload: dict) -> dict:
    return docs.envelope("report", payload)


# -------------------------------------------------------------- commands


def cmd_check(args) -> dict:
    obj = read_input(args.input)
    if isinstance(obj, FinCat):
        return report({"valid": True, "objects": len(obj.objects), "arrows": len(obj.arrows)})
    if isinstance(obj, GraphPart):
        kind = classify_graph_part(obj)
        doc = report({"classification": kind})
        if args.side and not _graph_side_ok(kind, args.side):
            raise Verdict(doc)
        return doc
    if isinstance(obj, (Part, Presheaf)):
        kind = classify_part(as_part(obj, args.budget)).kind
        doc = report({"classification": kind})
        wanted = {OPEN: ("df", "bifibration"), CLOSED: ("dof", "bifibration")}
        if args.side and kind not in wanted[args.side]:
            raise Verdict(doc)
        return doc
    if isinstance(obj, Poset):
        return report({"valid": True, "partial_order": obj.is_partial_order()})
    return report({"valid": True, "kind": type(obj).__name__})


def _graph_side_ok(kind: str, side: str) -> bool:
    # over a graph base, closed parts are the right-functional ones
    if side == CLOSED:
        return kind in ("right-functional", "bifunctional")
    return kind in ("left-functional", "bifunctional")


def cmd_components(args) -> dict:
    obj = read_input(args.input)
    if isinstance(obj, FinGraph):
        uf = UnionFind(obj.nodes)
        for _, s, t in obj.edges:
            uf.union(s, t)
        classes = uf.groups()
    else:
        cat = obj if isinstance(obj, FinCat) else as_part(obj, args.budget).total
        classes = components(cat).classes
    return docs.envelope("partition", {"classes": [list(c) for c in classes]})


def cmd_tensor(args) -> dict:
    p = as_part(read_input(args.left), args.budget)
    q = as_part(read_input(args.right), args.budget)
    ten = tensor(p, q)
    classes = [list(ten.rep_pair(i)) for i in range(ten.size)]
    return report({"size": ten.size, "representatives": classes})


def cmd_hom(args) -> dict:
    p = as_part(read_input(args.left), args.budget)
    q = as_part(read_input(args.right), args.budget)
    maps = hom_over(p, q)
    payload = [
        {"objects": dict(sorted(m.carrier.obj_map.items())), "arrows": dict(sorted(m.carrier.arr_map.items()))}
        for m in maps
    ]
    return docs.envelope("homset", {"count": len(maps), "morphisms": payload})


def cmd_negate(args) -> dict:
    a = as_part(read_input(args.input), args.budget)
    s = tuple(str(i) for i in range(args.set_size))
    neg = negation(a, s)
    return docs.to_document(classify_part(neg).presheaf)


def _reflect_common(args, which: str) -> dict:
    obj = read_input(args.input)
    if isinstance(obj, FinGraph):
        # a plain graph is a part over the one-loop graph
        if which == "reflect":
            return docs.to_document(loop_reflect(obj))
        return docs.to_document(SymbolicEndomap(chains(obj).as_endomap(), 0))
    p = as_part(obj, args.budget)
    if args.clopen:
        fn = clopen_reflect if which == "reflect" else clopen_coreflect
        return docs.to_document(fn(p, args.budget))
    side = args.side or CLOSED
    fn = reflect if which == "reflect" else coreflect
    return docs.to_document(fn(p, side).presheaf)


def cmd_reflect(args) -> dict:
    return _reflect_common(args, "reflect")


def cmd_coreflect(args) -> dict:
    return _reflect_common(args, "coreflect")


def cmd_atoms(args) -> dict:
    x = read_input(args.input, "category")
    family = default_family(x)
    rows, ok = [], True
    for label, parts in (("object", object_atoms(x)), ("idempotent", idempotent_atoms(x))):
        for p in parts:
            w = atom_check(p, family)
            ok &= w is not None
            over = p.proj.obj_map.get("*")
            rows.append(
                {
                    "kind": label,
                    "object": over,
                    "arrows": sorted(set(p.proj.arr_map.values())),
                    "atom": w is not None,
                    "witness": list(w.pair) if w else None,
                }
            )
    doc = report({"family": [name for name, _ in family], "atoms": rows})
    if not ok:
        raise Verdict(doc)
    return doc


def cmd_karoubi(args) -> dict:
    x = read_input(args.input, "category")
    k = karoubi(x)
    payload = {
        "category": docs.category_payload(k.category),
        "idempotents": {obj: list(v) for obj, v in sorted(k.idempotent.items())},
    }
    return docs.envelope("karoubi", payload)


def cmd_kan(args) -> dict:
    f = read_input(args.functor, "functor")
    d = read_input(args.presheaf, "presheaf")
    if not isinstance(f, FinFunctor):
        raise DocumentError("kan needs a functor document")
    direction = args.dir or "left"
    if direction not in ("left", "right"):
        raise DocumentError("kan --dir must be left or right")
    return docs.to_document(lan(f, d) if direction == "left" else ran(f, d))


def _subset_arg(x: Poset, text: str | None) -> frozenset:
    if text is None:
        return frozenset()
    items = frozenset(s for s in text.split(",") if s)
    unknown = items - set(x.elements)
    if unknown:
        raise DocumentError(f"--subset mentions unknown elements {sorted(unknown)}")
    return items


def cmd_alex(args) -> dict:
    x = read_input(args.input, "poset")
    p = _subset_arg(x, args.subset)
    op = args.op
    direction = args.dir or (UP if op == "reflect" else DOWN)
    if direction not in (UP, DOWN):
        raise DocumentError("alex --dir must be up or down")
    if op == "reflect":
        out = alexandrov_reflect(x, p, direction)
    elif op == "coreflect":
        out = alexandrov_coreflect(x, p, direction)
    elif op == "negate":
        out = pseudocomplement(x, p)
    else:
        return report({"classification": classify_subset(x, p), "atom": is_atom(x, p)})
    return docs.envelope("subset", {"elements": sorted(out), "classification": classify_subset(x, out)})


def cmd_cycles(args) -> dict:
    a = read_input(args.input, "cyclesum")
    if args.other:
        b = read_input(args.other, "cyclesum")
        pair = cycle_pairing(a, b)
        return docs.envelope(
            "pairing", {"product": docs.cyclesum_payload(pair.product), "hom": pair.hom, "ten": pair.ten}
        )
    if args.transfer is not None:
        op = args.op if args.op in ("reflect", "coreflect") else "reflect"
        return docs.to_document(zn_transfer(a, args.transfer, op))
    return report({"size": a.size(), "cycles": sum(a.mult.values())})


def cmd_verify(args) -> int:
    from .verify import run_suite

    def show(check):
        print(check.line(), flush=True)

    results = run_suite(args.suite, emit=show)
    failed = sum(not c.ok for c in results)
    print(f"{len(results) - failed}/{len(results)} checks passed", file=sys.stderr)
    return NEGATIVE if failed else 0


COMMANDS = {
    "check": cmd_check,
    "components": cmd_components,
    "tensor": cmd_tensor,
    "hom": cmd_hom,
    "negate": cmd_negate,
    "reflect": cmd_reflect,
    "coreflect": cmd_coreflect,
    "atoms": cmd_atoms,
    "karoubi": cmd_karoubi,
    "kan": cmd_kan,
    "alex": cmd_alex,
    "cycles": cmd_cycles,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="arrow budget for free categories and groupoids")
    common.add_argument("--side", choices=(OPEN, CLOSED), help="open (df, down) or closed (dof, up)")
    common.add_argument("--dir", choices=("left", "right", "up", "down"))
    common.add_argument("--set-size", type=int, default=2, dest="set_size")

    parser = argparse.ArgumentParser(prog="bipolar", description="Finite bipolar spaces from the command line.")
    sub = parser.add_subparsers(dest="command", required=True)

    def one(name, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("input", nargs="?", default="-")
        return p

    def two(name, help_, a="left", b="right"):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument(a)
        p.add_argument(b)
        return p

    one("check", "validate a document; with --side, test for a df or dof")
    one("components", "connected components of a category, part total or graph")
    two("tensor", "ten(P, Q): components of the fibre product")
    two("hom", "all morphisms P → Q over the base")
    one("negate", "negation with values in a set of --set-size elements")
    for name in ("reflect", "coreflect"):
        p = one(name, f"{name} a part on --side, or a graph over the loop")
        p.add_argument("--clopen", action="store_true", help="into discrete bifibrations")
    one("atoms", "atom checks for every object and idempotent part")
    one("karoubi", "the Karoubi envelope of a category")
    two("kan", "left (--dir left) or right Kan extension", "functor", "presheaf")
    p = one("alex", "Alexandrov operations on a poset")
    p.add_argument("--subset", help="comma-separated elements")
    p.add_argument("--op", choices=("reflect", "coreflect", "negate", "classify"), default="classify")
    p = one("cycles", "cycle sums: sizes, pairings and transfers")
    p.add_argument("other", nargs="?")
    p.add_argument("--transfer", type=int, metavar="N", help="transfer along Z → Z_N")
    p.add_argument("--op", choices=("reflect", "coreflect"), default="reflect")
    v = sub.add_parser("verify", help="run the property suites over the bundled catalog")
    v.add_argument("--suite", choices=("core", "all"), default="core")
    return parser


def _diagnose(code: int, kind: str, message: str) -> int:
    print(json.dumps({"error": kind, "message": message, "exit_code": code}, ensure_ascii=False), file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        out = COMMANDS[args.command](args)
    except Verdict as v:
        emit(v.doc)
        return NEGATIVE
    except BipolarError as e:
        return _diagnose(e.exit_code, type(e).__name__, str(e))
    except RecursionError:
        return _diagnose(3, "SizeLimit", "input too deep to process")
    if isinstance(out, int):
        return out
    emit(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
