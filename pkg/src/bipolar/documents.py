"""Versioned JSON documents: ``{"kind", "version", "payload"}`` with sorted keys."""
from __future__ import annotations

import json

from .errors import BipolarError, DocumentError
from .fincat import FinCat, FinFunctor, FinGraph, make_category, validate_category, validate_functor
from .graphspace import CycleSum, GraphPart, SymbolicEndomap
from .parts import Part
from .presheaf import CO, CONTRA, Presheaf, validate_presheaf
from .twoval import Poset

VERSION = 1
KINDS = (
    "category",
    "functor",
    "part",
    "presheaf",
    "graph",
    "graphpart",
    "poset",
    "subset",
    "cyclesum",
    "endomap",
    "partition",
    "homset",
    "karoubi",
    "pairing",
    "report",
)


def envelope(kind: str, payload) -> dict:
    return {"kind": kind, "version": VERSION, "payload": payload}


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"not JSON: {e}") from None
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    for key in ("kind", "version", "payload"):
        if key not in doc:
            raise DocumentError(f"missing field {key!r}")
    if doc["kind"] not in KINDS:
        raise DocumentError(f"unknown kind {doc['kind']!r}")
    if doc["version"] != VERSION:
        raise DocumentError(f"unsupported version {doc['version']!r}")
    return doc


def _need(payload, key, typ, where):
    if not isinstance(payload, dict):
        raise DocumentError(f"{where}: payload must be an object")
    if key not in payload:
        raise DocumentError(f"{where}: missing field {key!r}")
    value = payload[key]
    if not isinstance(value, typ):
        raise DocumentError(f"{where}.{key}: expected {getattr(typ, '__name__', typ)}")
    return value


def _triples(items, where):
    out = []
    for item in items:
        if not (isinstance(item, list) and len(item) == 3 and all(isinstance(v, str) for v in item)):
            raise DocumentError(f"{where}: entries must be [id, source, target] strings")
        out.append(tuple(item))
    return out


# --------------------------------------------------------------- category


def category_payload(c: FinCat) -> dict:
    ids = set(c.identity.values())
    return {
        "objects": sorted(c.objects),
        "identity": dict(sorted(c.identity.items())),
        "arrows": sorted([a, s, t] for a, s, t in c.arrows if a not in ids),
        "compose": sorted([g, f, h] for (g, f), h in c.compose.items() if g not in ids and f not in ids),
    }


def category_from(payload, where="category", catalog=None) -> FinCat:
    if isinstance(payload, str):
        if catalog is None:
            from .catalog import load_catalog

            catalog = load_catalog()
        if payload not in catalog.bases:
            raise DocumentError(f"{where}: unknown catalog base {payload!r}")
        return catalog.bases[payload]
    objects = _need(payload, "objects", list, where)
    arrows = _triples(payload.get("arrows", []), f"{where}.arrows")
    identity = payload.get("identity", {})
    compose = {}
    for item in payload.get("compose", []):
        if not (isinstance(item, list) and len(item) == 3):
            raise DocumentError(f"{where}.compose: entries must be [g, f, g∘f]")
        compose[item[0], item[1]] = item[2]
    try:
        c = make_category(objects, arrows, compose, identity)
        known = set(c.arrow_ids)
        for (g, f), h in compose.items():
            if g not in known or f not in known or h not in known:
                raise DocumentError(f"{where}.compose: unknown arrow in [{g}, {f}, {h}]")
        # missing composites are reported by validation
        return validate_category(c)
    except KeyError as e:
        raise DocumentError(f"{where}: reference to unknown id {e}") from None


def _maps(payload, c_dom: FinCat, c_cod: FinCat, where) -> FinFunctor:
    omap = _need(payload, "objects", dict, where)
    amap = dict(_need(payload, "arrows", dict, where))
    for x in c_dom.objects:
        if x in omap and c_dom.identity[x] not in amap and omap[x] in c_cod.identity:
            amap[c_dom.identity[x]] = c_cod.identity[omap[x]]
    return validate_functor(FinFunctor(c_dom, c_cod, omap, amap))


def functor_payload(f: FinFunctor) -> dict:
    return {
        "dom": category_payload(f.dom),
        "cod": category_payload(f.cod),
        "objects": dict(sorted(f.obj_map.items())),
        "arrows": dict(sorted(f.arr_map.items())),
    }


def functor_from(payload, catalog=None) -> FinFunctor:
    dom = category_from(_need(payload, "dom", (dict, str), "functor"), "functor.dom", catalog)
    cod = category_from(_need(payload, "cod", (dict, str), "functor"), "functor.cod", catalog)
    return _maps(payload, dom, cod, "functor")


def part_payload(p: Part) -> dict:
    return {
        "base": category_payload(p.base),
        "total": category_payload(p.total),
        "objects": dict(sorted(p.proj.obj_map.items())),
        "arrows": dict(sorted(p.proj.arr_map.items())),
    }


def part_from(payload, catalog=None) -> Part:
    base = category_from(_need(payload, "base", (dict, str), "part"), "part.base", catalog)
    total = category_from(_need(payload, "total", (dict, str), "part"), "part.total", catalog)
    return Part(base, total, _maps(payload, total, base, "part"))


# --------------------------------------------------------------- presheaf


def presheaf_payload(p: Presheaf) -> dict:
    ids = set(p.base.identity.values())
    return {
        "base": category_payload(p.base),
        "variance": p.variance,
        "fibres": {x: list(v) for x, v in sorted(p.fibre.items())},
        "transitions": {
            f: dict(sorted(m.items())) for f, m in sorted(p.trans.items()) if f not in ids
        },
    }


def presheaf_from(payload, catalog=None) -> Presheaf:
    base = category_from(_need(payload, "base", (dict, str), "presheaf"), "presheaf.base", catalog)
    variance = _need(payload, "variance", str, "presheaf")
    if variance not in (CO, CONTRA):
        raise DocumentError("presheaf.variance: expected 'co' or 'contra'")
    fibres = _need(payload, "fibres", dict, "presheaf")
    trans = _need(payload, "transitions", dict, "presheaf")
    return validate_presheaf(Presheaf(base, variance, fibres, trans))


# ----------------------------------------------------------------- graphs


def graph_payload(g: FinGraph) -> dict:
    return {"nodes": list(g.nodes), "edges": [list(e) for e in g.edges]}


def graph_from(payload, catalog=None) -> FinGraph:
    if isinstance(payload, str):
        if catalog is None:
            from .catalog import load_catalog

            catalog = load_catalog()
        if payload not in catalog.graphs:
            raise DocumentError(f"unknown catalog graph {payload!r}")
        return catalog.graphs[payload]
    nodes = _need(payload, "nodes", list, "graph")
    edges = _triples(_need(payload, "edges", list, "graph"), "graph.edges")
    return FinGraph(tuple(nodes), tuple(edges))


def graphpart_payload(p: GraphPart) -> dict:
    return {
        "base": graph_payload(p.base),
        "total": graph_payload(p.total),
        "nodes": dict(sorted(p.node_map.items())),
        "edges": dict(sorted(p.edge_map.items())),
    }


def graphpart_from(payload, catalog=None) -> GraphPart:
    base = graph_from(_need(payload, "base", (dict, str), "graphpart"), catalog)
    total = graph_from(_need(payload, "total", (dict, str), "graphpart"), catalog)
    return GraphPart(
        base,
        total,
        _need(payload, "nodes", dict, "graphpart"),
        _need(payload, "edges", dict, "graphpart"),
    )


# ------------------------------------------------------------ other kinds


def poset_payload(x: Poset) -> dict:
    return {
        "elements": list(x.elements),
        "leq": sorted([a, b] for a, b in x.leq if a != b),
    }


def poset_from(payload) -> Poset:
    elements = _need(payload, "elements", list, "poset")
    pairs = _need(payload, "leq", list, "poset")
    for pair in pairs:
        if not (isinstance(pair, list) and len(pair) == 2):
            raise DocumentError("poset.leq: entries must be [x, y] pairs")
    return Poset.generated(elements, [tuple(p) for p in pairs])


def cyclesum_payload(a: CycleSum) -> dict:
    return {"mult": {str(k): n for k, n in a.mult.items()}}


def cyclesum_from(payload) -> CycleSum:
    mult = _need(payload, "mult", dict, "cyclesum")
    try:
        return CycleSum({int(k): int(v) for k, v in mult.items()})
    except ValueError as e:
        raise DocumentError(f"cyclesum: {e}") from None


def endomap_payload(e: SymbolicEndomap) -> dict:
    return {"core": dict(sorted(e.core.items())), "tails": e.tails}


def endomap_from(payload) -> SymbolicEndomap:
    return SymbolicEndomap(
        dict(_need(payload, "core", dict, "endomap")), _need(payload, "tails", int, "endomap")
    )


# ------------------------------------------------------------ dispatching

_DUMP = {
    "category": (FinCat, category_payload),
    "functor": (FinFunctor, functor_payload),
    "part": (Part, part_payload),
    "presheaf": (Presheaf, presheaf_payload),
    "graph": (FinGraph, graph_payload),
    "graphpart": (GraphPart, graphpart_payload),
    "poset": (Poset, poset_payload),
    "cyclesum": (CycleSum, cyclesum_payload),
    "endomap": (SymbolicEndomap, endomap_payload),
}

_LOAD = {
    "category": lambda p, c: category_from(p, catalog=c),
    "functor": functor_from,
    "part": part_from,
    "presheaf": presheaf_from,
    "graph": graph_from,
    "graphpart": graphpart_from,
    "poset": lambda p, c: poset_from(p),
    "cyclesum": lambda p, c: cyclesum_from(p),
    "endomap": lambda p, c: endomap_from(p),
}


def to_document(obj) -> dict:
    for kind, (cls, fn) in _DUMP.items():
        if isinstance(obj, cls):
            return envelope(kind, fn(obj))
    raise TypeError(f"no document kind for {type(obj).__name__}")


def from_document(doc: dict, expect: str | tuple | None = None, catalog=None):
    kind = doc["kind"]
    if expect is not None and kind not in ((expect,) if isinstance(expect, str) else expect):
        raise DocumentError(f"expected a {expect} document, got {kind!r}")
    if kind not in _LOAD:
        raise DocumentError(f"documents of kind {kind!r} are output only")
    try:
        return _LOAD[kind](doc["payload"], catalog)
    except BipolarError:
        raise
    except (TypeError, ValueError, AttributeError) as e:
        raise DocumentError(f"{kind}: malformed payload ({e})") from None


def dump(obj) -> str:
    return dumps(to_document(obj))


def load(text: str, expect=None, catalog=None):
    return from_document(loads(text), expect, catalog)
