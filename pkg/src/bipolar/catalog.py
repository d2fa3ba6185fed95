"""Named small instances used by ``verify``, the tests and the demos.

``BIPOLAR_CATALOG`` may point at a JSON file with extra ``bases`` (category
payloads) and ``graphs`` (graph payloads), keyed by name; they are added to,
or replace, the bundled entries.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from functools import lru_cache

from .fincat import (
    FinCat,
    FinFunctor,
    arrow_category,
    arrow_graph,
    chain3_category,
    chain_graph,
    cyclic_group,
    discrete_category,
    dot_graph,
    idempotent_monoid,
    loop_graph,
    nilpotent_monoid,
    split_idempotent_category,
    star_graph,
    terminal_category,
)
from .graphspace import CycleSum
from .parts import (
    Part,
    arrow_part,
    empty_part,
    endo_part,
    identity_part,
    object_part,
    sum_parts,
)
from .presheaf import CO, CONTRA, constant, elements, representable
from .twoval import Poset, to_fincat

MAX_TOTAL = 4
ENV_VAR = "BIPOLAR_CATALOG"

# bases used by the exhaustive adjunction and coadjunction suites
CORE_BASES = ("1", "2", "3", "{1,e}", "Z2", "a<b")


@dataclass
class Catalog:
    bases: dict = field(default_factory=dict)
    graphs: dict = field(default_factory=dict)

    def parts(self, name: str) -> list[tuple[str, Part]]:
        return catalog_parts(self.bases[name])


def bundled_bases() -> dict:
    return {
        "1": terminal_category(),
        "2": arrow_category(),
        "3": chain3_category(),
        "a<b": to_fincat(Poset.generated(("a", "b"), [("a", "b")])),
        "Z2": cyclic_group(2),
        "{1,e}": idempotent_monoid(),
        "discrete-2": discrete_category(("0", "1")),
        "{1,a,z}": nilpotent_monoid(),
        "split": split_idempotent_category(),
    }


def bundled_graphs() -> dict:
    graphs = {"D": dot_graph(), "A": arrow_graph(), "L": loop_graph(1)}
    for n in range(1, 6):
        graphs[f"C{n}"] = chain_graph(n)
    for n in range(1, 13):
        graphs[f"L{n}"] = CycleSum.single(n).to_graph()
    for n in range(1, 4):
        graphs[f"S{n}"] = star_graph(n)
    return graphs


def catalog_parts(x: FinCat) -> list[tuple[str, Part]]:
    """Parts over x whose totals have at most four objects."""
    out = [("empty", empty_part(x))]
    if len(x.objects) <= MAX_TOTAL:
        out.append(("identity", identity_part(x)))
    for o in x.objects:
        out.append((f"object({o})", object_part(x, o)))
    for f in x.non_identity_arrows():
        if x.src(f) != x.tgt(f):
            out.append((f"arrow({f})", arrow_part(x, f)))
        else:
            out.append((f"endo({f})", endo_part(x, f)))
    for o in x.objects:
        for variance, label in ((CONTRA, "down"), (CO, "up")):
            p = elements(representable(x, o, variance))
            if len(p.total.objects) <= MAX_TOTAL:
                out.append((f"{label}({o})", p))
    objs = list(x.objects)
    for i, a in enumerate(objs):
        for b in objs[i:]:
            out.append((f"object({a})+object({b})", sum_parts(object_part(x, a), object_part(x, b))))
    for variance, label in ((CONTRA, "contra"), (CO, "co")):
        p = elements(constant(x, ("s", "t"), variance))
        if len(p.total.objects) <= MAX_TOTAL:
            out.append((f"const2-{label}", p))
    if len(x.objects) == 1:
        # the arrow category placed over a single object
        two = arrow_category()
        (o,) = x.objects
        ident = x.identity[o]
        proj = FinFunctor(two, x, {"0": o, "1": o}, {a: ident for a in two.arrow_ids})
        out.append(("2-over-1", Part(x, two, proj)))
    return out


def _load_override(path: str, cat: Catalog) -> None:
    from .documents import category_from, graph_from

    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    for name, payload in data.get("bases", {}).items():
        cat.bases[name] = category_from(payload, f"catalog.bases.{name}", catalog=cat)
    for name, payload in data.get("graphs", {}).items():
        cat.graphs[name] = graph_from(payload, catalog=cat)


@lru_cache(maxsize=4)
def _load(path: str | None) -> Catalog:
    cat = Catalog(bundled_bases(), bundled_graphs())
    if path:
        _load_override(path, cat)
    return cat


def load_catalog() -> Catalog:
    return _load(os.environ.get(ENV_VAR) or None)

