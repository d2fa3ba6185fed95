"""Finite graphs, finite categories and functors between them.

Ids are strings and every enumeration follows the sorted order of ids, so
results are deterministic.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .errors import (
    BadComposability,
    BadIdentity,
    BudgetExceeded,
    InvalidCategory,
    InvalidFunctor,
    NotAssociative,
    UnknownObject,
)

DEFAULT_BUDGET = 10_000


class UnionFind:
    """Disjoint sets whose roots are always the least member.

    >>> uf = UnionFind("cab")
    >>> uf.union("c", "b")
    True
    >>> uf.find("c")
    'b'
    """

    def __init__(self, items: Iterable = ()):
        self.parent = {x: x for x in items}

    def add(self, x) -> None:
        self.parent.setdefault(x, x)

    def find(self, x):
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def groups(self) -> list[tuple]:
        out = defaultdict(list)
        for x in self.parent:
            out[self.find(x)].append(x)
        return [tuple(sorted(v)) for _, v in sorted(out.items())]


# ---------------------------------------------------------------- graphs


@dataclass(frozen=True, eq=False)
class FinGraph:
    nodes: tuple
    edges: tuple

    def __post_init__(self):
        nodes = tuple(sorted(set(self.nodes)))
        if len(nodes) != len(tuple(self.nodes)):
            raise InvalidCategory("duplicate node ids")
        edges = tuple(sorted(tuple(e) for e in self.edges))
        ids = [e[0] for e in edges]
        if len(set(ids)) != len(ids):
            raise InvalidCategory("duplicate edge ids")
        known = set(nodes)
        for e, s, t in edges:
            if s not in known or t not in known:
                raise UnknownObject(f"edge {e} has an unknown endpoint")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", edges)
        out, into = defaultdict(list), defaultdict(list)
        for e, s, t in edges:
            out[s].append(e)
            into[t].append(e)
        object.__setattr__(self, "_src", {e: s for e, s, _ in edges})
        object.__setattr__(self, "_tgt", {e: t for e, _, t in edges})
        object.__setattr__(self, "_out", {n: tuple(out[n]) for n in nodes})
        object.__setattr__(self, "_in", {n: tuple(into[n]) for n in nodes})

    def __eq__(self, other):
        return isinstance(other, FinGraph) and (self.nodes, self.edges) == (other.nodes, other.edges)

    def __hash__(self):
        return hash((self.nodes, self.edges))

    def __repr__(self):
        return f"FinGraph(nodes={len(self.nodes)}, edges={len(self.edges)})"

    def src(self, e):
        return self._src[e]

    def tgt(self, e):
        return self._tgt[e]

    def out_edges(self, n) -> tuple:
        return self._out[n]

    def in_edges(self, n) -> tuple:
        return self._in[n]


def dot_graph() -> FinGraph:
    return FinGraph(("0",), ())


def arrow_graph() -> FinGraph:
    return FinGraph(("0", "1"), (("a", "0", "1"),))


def loop_graph(loops: int = 1) -> FinGraph:
    return FinGraph(("*",), tuple((f"l{i}", "*", "*") for i in range(loops)))


def chain_graph(n: int) -> FinGraph:
    """C_n: n nodes in a row, n-1 edges."""
    nodes = tuple(f"c{i}" for i in range(n))
    return FinGraph(nodes, tuple((f"e{i}", f"c{i}", f"c{i + 1}") for i in range(n - 1)))


def cycle_graph(n: int) -> FinGraph:
    """L_n: a single directed cycle of length n."""
    nodes = tuple(f"z{i:02d}" for i in range(n))
    return FinGraph(nodes, tuple((f"s{i:02d}", f"z{i:02d}", f"z{(i + 1) % n:02d}") for i in range(n)))


def star_graph(n: int) -> FinGraph:
    """S_n: a source node with one edge into each of n looped nodes."""
    nodes = ("s",) + tuple(f"p{i}" for i in range(n))
    edges = [(f"to{i}", "s", f"p{i}") for i in range(n)]
    edges += [(f"loop{i}", f"p{i}", f"p{i}") for i in range(n)]
    return FinGraph(nodes, tuple(edges))


# ------------------------------------------------------------ categories


@dataclass(frozen=True, eq=False)
class FinCat:
    """A finite category given by its full composition table.

    ``compose[(g, f)]`` is ``g∘f`` and is present exactly for composable pairs.
    Construction does not check the category laws; use ``validate_category``.
    """

    objects: tuple
    arrows: tuple
    identity: Mapping
    compose: Mapping
    _src: dict = field(init=False, repr=False)
    _tgt: dict = field(init=False, repr=False)
    _hom: dict = field(init=False, repr=False)

    def __post_init__(self):
        objects = tuple(sorted(self.objects))
        arrows = tuple(sorted(tuple(a) for a in self.arrows))
        object.__setattr__(self, "objects", objects)
        object.__setattr__(self, "arrows", arrows)
        object.__setattr__(self, "identity", dict(self.identity))
        object.__setattr__(self, "compose", {tuple(k): v for k, v in self.compose.items()})
        object.__setattr__(self, "_src", {a: s for a, s, _ in arrows})
        object.__setattr__(self, "_tgt", {a: t for a, _, t in arrows})
        hom = defaultdict(list)
        for a, s, t in arrows:
            hom[s, t].append(a)
        object.__setattr__(self, "_hom", {k: tuple(v) for k, v in hom.items()})
        object.__setattr__(self, "_ids", frozenset(self.identity.values()))

    def __eq__(self, other):
        return isinstance(other, FinCat) and (
            self.objects == other.objects
            and self.arrows == other.arrows
            and self.identity == other.identity
            and self.compose == other.compose
        )

    def __hash__(self):
        return hash((self.objects, self.arrows))

    def __repr__(self):
        return f"FinCat(objects={self.objects!r}, arrows={len(self.arrows)})"

    @property
    def arrow_ids(self) -> tuple:
        return tuple(a for a, _, _ in self.arrows)

    def src(self, a):
        return self._src[a]

    def tgt(self, a):
        return self._tgt[a]

    def hom(self, x, y) -> tuple:
        return self._hom.get((x, y), ())

    def comp(self, g, f):
        """The composite g∘f (f first)."""
        return self.compose[g, f]

    def is_identity(self, a) -> bool:
        return a in self._ids

    def non_identity_arrows(self) -> tuple:
        return tuple(a for a in self.arrow_ids if a not in self._ids)

    def endos(self, x) -> tuple:
        return self.hom(x, x)

    def idempotents(self) -> tuple:
        return tuple(a for a, s, t in self.arrows if s == t and self.compose[a, a] == a)

    def check_object(self, x):
        if x not in self.objects:
            raise UnknownObject(f"unknown object {x!r}")

    def op(self) -> "FinCat":
        return FinCat(
            self.objects,
            tuple((a, t, s) for a, s, t in self.arrows),
            self.identity,
            {(f, g): h for (g, f), h in self.compose.items()},
        )


def make_category(objects, arrows=(), compose=None, identity=None) -> FinCat:
    """Build a category from its non-identity arrows.

    Identities are added as ``id<x>`` unless named in ``identity``; compositions
    with identities are filled in, so ``compose`` only lists non-identity pairs.
    """
    objects = tuple(objects)
    identity = dict(identity or {})
    for x in objects:
        identity.setdefault(x, f"id{x}")
    all_arrows = [(identity[x], x, x) for x in objects] + [tuple(a) for a in arrows]
    table = dict(compose or {})
    src = {a: s for a, s, _ in all_arrows}
    tgt = {a: t for a, _, t in all_arrows}
    for a, s, t in all_arrows:
        table[identity[t], a] = a
        table[a, identity[s]] = a
    return FinCat(objects, tuple(all_arrows), identity, table)


def discrete_category(objects) -> FinCat:
    return make_category(objects)


def terminal_category() -> FinCat:
    return make_category(("*",), identity={"*": "1"})


def arrow_category() -> FinCat:
    """The category 2 = {0 → 1}."""
    return make_category(("0", "1"), [("a", "0", "1")])


def chain3_category() -> FinCat:
    """The category 3 = {0 → 1 → 2}."""
    return make_category(
        ("0", "1", "2"),
        [("a", "0", "1"), ("b", "1", "2"), ("ba", "0", "2")],
        {("b", "a"): "ba"},
    )


def monoid_category(elements, table, unit="1", obj="*") -> FinCat:
    """One-object category; ``table[(g, f)]`` is the product g·f of non-units."""
    arrows = [(m, obj, obj) for m in elements if m != unit]
    return make_category((obj,), arrows, dict(table), identity={obj: unit})


def idempotent_monoid() -> FinCat:
    return monoid_category(("1", "e"), {("e", "e"): "e"})


def cyclic_group(n: int) -> FinCat:
    names = ["1"] + [f"g{k}" if k > 1 else "g" for k in range(1, n)]
    table = {}
    for i in range(1, n):
        for j in range(1, n):
            table[names[i], names[j]] = names[(i + j) % n]
    return monoid_category(names, table)


def nilpotent_monoid() -> FinCat:
    """{1, a, z} with a·a = z and z absorbing."""
    table = {(p, q): "z" for p in ("a", "z") for q in ("a", "z")}
    return monoid_category(("1", "a", "z"), table)


def split_idempotent_category() -> FinCat:
    """A retract y of x: r: x → y, i: y → x with r∘i = id and e = i∘r."""
    return make_category(
        ("x", "y"),
        [("r", "x", "y"), ("i", "y", "x"), ("e", "x", "x")],
        {
            ("r", "i"): "idy",
            ("i", "r"): "e",
            ("e", "e"): "e",
            ("r", "e"): "r",
            ("e", "i"): "i",
        },
    )


def preorder_category(elements, leq) -> FinCat:
    """The category with one arrow ``x<=y`` for each related pair."""
    leq = set(leq)
    arrows = [(f"{x}<={y}", x, y) for x in elements for y in elements if (x, y) in leq and x != y]
    identity = {x: f"{x}<={x}" for x in elements}
    table = {}
    for x in elements:
        for y in elements:
            for z in elements:
                if (x, y) in leq and (y, z) in leq and x != y and y != z:
                    table[f"{y}<={z}", f"{x}<={y}"] = f"{x}<={z}"
    return make_category(elements, arrows, table, identity)


def validate_category(c: FinCat) -> FinCat:
    """Return ``c`` if every category law holds, else raise naming the first failure."""
    if len(set(c.arrow_ids)) != len(c.arrows):
        raise InvalidCategory("duplicate arrow ids")
    objects = set(c.objects)
    for a, s, t in c.arrows:
        if s not in objects or t not in objects:
            raise UnknownObject(f"arrow {a} has an unknown endpoint")
    for x in c.objects:
        i = c.identity.get(x)
        if i is None or i not in c._src or c.src(i) != x or c.tgt(i) != x:
            raise BadIdentity(i if i is not None else x, f"no identity endo at {x}")
    arrows = c.arrow_ids
    for (g, f), h in c.compose.items():
        if g not in c._src or f not in c._src:
            raise BadComposability(g, f, "unknown arrow")
        if c.tgt(f) != c.src(g):
            raise BadComposability(g, f, "not composable")
        if h not in c._src or c.src(h) != c.src(f) or c.tgt(h) != c.tgt(g):
            raise BadComposability(g, f, "composite has wrong endpoints")
    for f in arrows:
        for y in c.objects:
            for g in c.hom(c.tgt(f), y):
                if (g, f) not in c.compose:
                    raise BadComposability(g, f, "missing composite")
    for f in arrows:
        if c.compose[c.identity[c.tgt(f)], f] != f or c.compose[f, c.identity[c.src(f)]] != f:
            raise BadIdentity(f)
    out = defaultdict(list)
    for a, s, _ in c.arrows:
        out[s].append(a)
    for f in arrows:
        for g in out[c.tgt(f)]:
            gf = c.compose[g, f]
            for h in out[c.tgt(g)]:
                if c.compose[h, gf] != c.compose[c.compose[h, g], f]:
                    raise NotAssociative(h, g, f)
    return c


# -------------------------------------------------------------- functors


@dataclass(frozen=True, eq=False)
class FinFunctor:
    dom: FinCat
    cod: FinCat
    obj_map: Mapping
    arr_map: Mapping

    def __post_init__(self):
        object.__setattr__(self, "obj_map", dict(self.obj_map))
        object.__setattr__(self, "arr_map", dict(self.arr_map))

    def __eq__(self, other):
        return isinstance(other, FinFunctor) and (
            self.dom == other.dom
            and self.cod == other.cod
            and self.obj_map == other.obj_map
            and self.arr_map == other.arr_map
        )

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"FinFunctor({self.obj_map!r})"

    def key(self) -> tuple:
        return tuple(sorted(self.obj_map.items())), tuple(sorted(self.arr_map.items()))

    def __call__(self, a):
        """Image of an arrow."""
        return self.arr_map[a]

    def obj(self, x):
        return self.obj_map[x]

    def then(self, g: "FinFunctor") -> "FinFunctor":
        """The composite g∘self."""
        return FinFunctor(
            self.dom,
            g.cod,
            {x: g.obj_map[y] for x, y in self.obj_map.items()},
            {a: g.arr_map[b] for a, b in self.arr_map.items()},
        )

    def op(self) -> "FinFunctor":
        return FinFunctor(self.dom.op(), self.cod.op(), self.obj_map, self.arr_map)


def identity_functor(c: FinCat) -> FinFunctor:
    return FinFunctor(c, c, {x: x for x in c.objects}, {a: a for a in c.arrow_ids})


def validate_functor(f: FinFunctor) -> FinFunctor:
    dom, cod = f.dom, f.cod
    if set(f.obj_map) != set(dom.objects) or set(f.arr_map) != set(dom.arrow_ids):
        raise InvalidFunctor("functor maps are not total")
    for a, s, t in dom.arrows:
        b = f.arr_map[a]
        if b not in cod._src or cod.src(b) != f.obj_map[s] or cod.tgt(b) != f.obj_map[t]:
            raise InvalidFunctor(f"arrow {a} is sent to an arrow with wrong endpoints")
    for x in dom.objects:
        if f.arr_map[dom.identity[x]] != cod.identity[f.obj_map[x]]:
            raise InvalidFunctor(f"identity at {x} not preserved")
    for (g, h), k in dom.compose.items():
        if cod.compose[f.arr_map[g], f.arr_map[h]] != f.arr_map[k]:
            raise InvalidFunctor(f"composite {g}∘{h} not preserved")
    return f


def search_functors(
    dom: FinCat,
    cod: FinCat,
    obj_candidates: Mapping | None = None,
    arr_candidates: Mapping | None = None,
) -> Iterator[tuple[dict, dict]]:
    """Yield every functor dom → cod as a pair (object map, arrow map).

    Optional candidate maps restrict where each object and arrow may go
    (used to enumerate functors over a base).
    """
    objs = _connected_order(dom)
    ocands = {x: tuple(obj_candidates[x]) if obj_candidates else cod.objects for x in objs}
    gens = dom.non_identity_arrows()
    acands = {a: frozenset(arr_candidates[a]) if arr_candidates else None for a in gens}
    ids = dom.identity

    # composition constraints among non-identity arrows
    triples = defaultdict(list)
    for (g, f), h in dom.compose.items():
        if dom.is_identity(g) or dom.is_identity(f):
            continue
        t = (g, f, h)
        for a in {g, f, h}:
            if not dom.is_identity(a):
                triples[a].append(t)

    arrows_by_ends = defaultdict(list)
    for a in gens:
        arrows_by_ends[dom.src(a)].append(a)
        arrows_by_ends[dom.tgt(a)].append(a)

    omap: dict = {}
    amap: dict = {}

    def candidates(a):
        pool = cod.hom(omap[dom.src(a)], omap[dom.tgt(a)])
        allowed = acands[a]
        return pool if allowed is None else tuple(b for b in pool if b in allowed)

    def image(a):
        if a in amap:
            return amap[a]
        if dom.is_identity(a):
            return cod.identity[omap[dom.src(a)]]
        return None

    def consistent(a) -> bool:
        for g, f, h in triples[a]:
            ig, i_f, ih = image(g), image(f), image(h)
            if ig is None or i_f is None or ih is None:
                continue
            if cod.compose[ig, i_f] != ih:
                return False
        return True

    def forced(a):
        for g, f, h in triples[a]:
            if h == a and g != a and f != a:
                ig, i_f = image(g), image(f)
                if ig is not None and i_f is not None:
                    return cod.compose[ig, i_f]
        return None

    def assign_arrows(i):
        if i == len(gens):
            full = dict(amap)
            for x in dom.objects:
                full[ids[x]] = cod.identity[omap[x]]
            yield dict(omap), full
            return
        a = gens[i]
        pool = candidates(a)
        v = forced(a)
        if v is not None:
            pool = (v,) if v in pool else ()
        for b in pool:
            amap[a] = b
            if consistent(a):
                yield from assign_arrows(i + 1)
            del amap[a]

    def assign_objects(i):
        if i == len(objs):
            yield from assign_arrows(0)
            return
        x = objs[i]
        for y in ocands[x]:
            omap[x] = y
            ok = True
            for a in arrows_by_ends[x]:
                if dom.src(a) in omap and dom.tgt(a) in omap and not candidates(a):
                    ok = False
                    break
            if ok:
                yield from assign_objects(i + 1)
            del omap[x]

    yield from assign_objects(0)


def _connected_order(c: FinCat) -> list:
    """Objects in breadth-first order along arrows, for early pruning."""
    adj = defaultdict(set)
    for a, s, t in c.arrows:
        if s != t:
            adj[s].add(t)
            adj[t].add(s)
    seen, order = set(), []
    for x in c.objects:
        if x in seen:
            continue
        queue = [x]
        seen.add(x)
        while queue:
            y = queue.pop(0)
            order.append(y)
            for z in sorted(adj[y]):
                if z not in seen:
                    seen.add(z)
                    queue.append(z)
    return order


def enumerate_functors(dom: FinCat, cod: FinCat) -> list[FinFunctor]:
    return [FinFunctor(dom, cod, o, a) for o, a in search_functors(dom, cod)]


# ------------------------------------------------------------ components


@dataclass(frozen=True, eq=False)
class ComponentPartition:
    """A partition of object ids; each class is sorted and led by its representative."""

    classes: tuple

    def __post_init__(self):
        classes = tuple(sorted(tuple(sorted(c)) for c in self.classes))
        object.__setattr__(self, "classes", classes)
        object.__setattr__(self, "_index", {x: i for i, c in enumerate(classes) for x in c})

    def __eq__(self, other):
        return isinstance(other, ComponentPartition) and self.classes == other.classes

    def __hash__(self):
        return hash(self.classes)

    def __len__(self):
        return len(self.classes)

    def __repr__(self):
        return f"ComponentPartition({self.classes!r})"

    @property
    def reps(self) -> tuple:
        return tuple(c[0] for c in self.classes)

    def rep(self, i: int):
        return self.classes[i][0]

    def index(self, x) -> int:
        return self._index[x]

    def rep_of(self, x):
        return self.classes[self._index[x]][0]


def components(c: FinCat) -> ComponentPartition:
    uf = UnionFind(c.objects)
    for _, s, t in c.arrows:
        uf.union(s, t)
    return ComponentPartition(uf.groups())


def discrete_quotient(c: FinCat) -> FinCat:
    """Γ* Γ! c: the discrete category on the component representatives."""
    return discrete_category(components(c).reps)


# -------------------------------------------------------- free categories


def free_category(g: FinGraph, budget: int = DEFAULT_BUDGET) -> FinCat:
    """The category of directed paths in an acyclic graph.

    A path is named by its edges joined with ``;`` in traversal order; the empty
    path at node n is ``1_n``.
    """
    for e, _, _ in g.edges:
        if ";" in e:
            raise InvalidCategory(f"edge id {e!r} contains ';', which separates path steps")
    color = {}

    def visit(n):
        color[n] = 1
        for e in g.out_edges(n):
            m = g.tgt(e)
            c = color.get(m, 0)
            if c == 1:
                raise BudgetExceeded(f"graph has a directed cycle through {m}; infinitely many paths")
            if c == 0:
                visit(m)
        color[n] = 2

    for n in g.nodes:
        if n not in color:
            visit(n)

    # count paths before materializing them
    count = {}
    for n in reversed(_topological(g)):
        count[n] = 1 + sum(count[g.tgt(e)] for e in g.out_edges(n))
    total = sum(count.values())
    if total > budget:
        raise BudgetExceeded(f"{total} paths exceed the budget {budget}")

    paths = {}  # name -> (src, tgt, edge tuple)
    for n in g.nodes:
        paths[f"1_{n}"] = (n, n, ())

    def extend(start, node, edges):
        for e in g.out_edges(node):
            es = edges + (e,)
            paths[";".join(es)] = (start, g.tgt(e), es)
            extend(start, g.tgt(e), es)

    for n in g.nodes:
        extend(n, n, ())
    by_edges = {v[2] if v[2] else ("", v[0]): k for k, v in paths.items()}
    identity = {n: f"1_{n}" for n in g.nodes}
    table = {}
    for fname, (fs, ft, fe) in paths.items():
        for gname, (gs, gt, ge) in paths.items():
            if gs != ft:
                continue
            es = fe + ge
            table[gname, fname] = by_edges[es] if es else identity[fs]
    arrows = tuple((k, v[0], v[1]) for k, v in paths.items())
    return FinCat(g.nodes, arrows, identity, table)


def _topological(g: FinGraph) -> list:
    indeg = {n: len(g.in_edges(n)) for n in g.nodes}
    ready = sorted(n for n, d in indeg.items() if d == 0)
    order = []
    while ready:
        n = ready.pop(0)
        order.append(n)
        for e in g.out_edges(n):
            m = g.tgt(e)
            indeg[m] -= 1
            if indeg[m] == 0:
                ready.append(m)
    return order
