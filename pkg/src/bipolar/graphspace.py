"""Graphs as bipolar spaces: functional graphs, chains, cochains and cycle sums."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import gcd, prod

from .errors import InvalidFunctor, UncountableChains, UnsupportedShape
from .fincat import DEFAULT_BUDGET, FinFunctor, FinGraph, UnionFind, arrow_graph, free_category
from .parts import Part

BIFUNCTIONAL = "bifunctional"
RIGHT_FUNCTIONAL = "right-functional"
LEFT_FUNCTIONAL = "left-functional"
RIGHT_COMAPPING = "right-comapping"
LEFT_COMAPPING = "left-comapping"
NEITHER = "neither"


@dataclass(frozen=True, eq=False)
class GraphPart:
    """A graph ``total`` with a graph morphism onto ``base``."""

    base: FinGraph
    total: FinGraph
    node_map: dict
    edge_map: dict

    def __post_init__(self):
        object.__setattr__(self, "node_map", dict(self.node_map))
        object.__setattr__(self, "edge_map", dict(self.edge_map))
        if set(self.node_map) != set(self.total.nodes) or set(self.edge_map) != set(
            e for e, _, _ in self.total.edges
        ):
            raise InvalidFunctor("graph morphism is not total")
        for e, s, t in self.total.edges:
            f = self.edge_map[e]
            if f not in self.base._src:
                raise InvalidFunctor(f"edge {e} maps to unknown edge {f}")
            if self.base.src(f) != self.node_map[s] or self.base.tgt(f) != self.node_map[t]:
                raise InvalidFunctor(f"edge {e} does not respect endpoints")

    def __eq__(self, other):
        return isinstance(other, GraphPart) and (
            self.base == other.base
            and self.total == other.total
            and self.node_map == other.node_map
            and self.edge_map == other.edge_map
        )

    def __hash__(self):
        return hash((self.base, self.total))

    def over(self, n) -> tuple:
        return tuple(a for a in self.total.nodes if self.node_map[a] == n)


def over_loop(g: FinGraph) -> GraphPart:
    """Any graph is uniquely a graph over the one-loop graph L."""
    base = FinGraph(("*",), (("l", "*", "*"),))
    return GraphPart(base, g, {n: "*" for n in g.nodes}, {e: "l" for e, _, _ in g.edges})


def _per_edge(p: GraphPart, a, outgoing: bool) -> list[list]:
    """For each base edge leaving (or entering) π(a), the total edges over it at a."""
    g, base = p.total, p.base
    here = p.node_map[a]
    base_edges = base.out_edges(here) if outgoing else base.in_edges(here)
    mine = g.out_edges(a) if outgoing else g.in_edges(a)
    return [[u for u in mine if p.edge_map[u] == f] for f in base_edges]


def _functional(p: GraphPart, outgoing: bool) -> bool:
    return all(len(us) == 1 for a in p.total.nodes for us in _per_edge(p, a, outgoing))


def _comapping(p: GraphPart, outgoing: bool) -> bool:
    g = p.total
    end = g.tgt if outgoing else g.src
    return all(
        us and len({end(u) for u in us}) == 1
        for a in g.nodes
        for us in _per_edge(p, a, outgoing)
    )


def is_functional(p: GraphPart, side: str = "right") -> bool:
    """Right: one outgoing edge per base out-edge at every node; left: incoming."""
    return _functional(p, _outgoing(side))


def is_comapping(p: GraphPart, side: str = "right") -> bool:
    """Right: at least one outgoing edge per base out-edge, all with one target."""
    return _comapping(p, _outgoing(side))


def _outgoing(side: str) -> bool:
    if side not in ("right", "left"):
        raise ValueError(f"side must be 'right' or 'left', not {side!r}")
    return side == "right"


def classify_graph_part(p: GraphPart) -> str:
    right, left = _functional(p, True), _functional(p, False)
    if right and left:
        return BIFUNCTIONAL
    if right:
        return RIGHT_FUNCTIONAL
    if left:
        return LEFT_FUNCTIONAL
    if _comapping(p, True):
        return RIGHT_COMAPPING
    if _comapping(p, False):
        return LEFT_COMAPPING
    return NEITHER


# ------------------------------------------------------------------ chains


@dataclass(frozen=True)
class Lasso:
    """An eventually periodic infinite path: ``prefix`` then ``cycle`` forever."""

    start: str
    prefix: tuple
    cycle: tuple

    @property
    def name(self) -> str:
        return f"{self.start}:{'.'.join(self.prefix)}({'.'.join(self.cycle)})"


@dataclass(frozen=True, eq=False)
class ChainSet:
    lassos: tuple
    translation: dict  # lasso name -> lasso name

    def as_endomap(self) -> dict:
        return dict(self.translation)


def _live_nodes(g: FinGraph) -> set:
    """Nodes admitting an infinite forward path."""
    live = set(g.nodes)
    changed = True
    while changed:
        changed = False
        for n in list(live):
            if not any(g.tgt(e) in live for e in g.out_edges(n)):
                live.discard(n)
                changed = True
    return live


def _cycle_nodes(g: FinGraph, live: set) -> set:
    """Live nodes that lie on a directed cycle."""
    reach = {}
    for n in live:
        seen, stack = set(), [g.tgt(e) for e in g.out_edges(n) if g.tgt(e) in live]
        while stack:
            m = stack.pop()
            if m not in seen:
                seen.add(m)
                stack.extend(g.tgt(e) for e in g.out_edges(m) if g.tgt(e) in live)
        reach[n] = seen
    return {n for n in live if n in reach[n]}


def chains(g: FinGraph) -> ChainSet:
    """All chains C∞ → g as lassos, with the translation endomap, when finitely many."""
    live = _live_nodes(g)
    on_cycle = _cycle_nodes(g, live)
    cycle_from = {}
    for n in sorted(on_cycle):
        outs = [e for e in g.out_edges(n) if g.tgt(e) in live]
        if len(outs) != 1:
            raise UncountableChains(f"node {n} lies on a cycle and has {len(outs)} live out-edges")
        cycle_from[n] = outs[0]
    lassos = {}

    def loop_at(n):
        cyc, m = [], n
        while True:
            e = cycle_from[m]
            cyc.append(e)
            m = g.tgt(e)
            if m == n:
                return tuple(cyc)

    def walk(start, node, prefix):
        if node in on_cycle:
            las = Lasso(start, tuple(prefix), loop_at(node))
            lassos[las.name] = las
            return
        for e in g.out_edges(node):
            if g.tgt(e) in live:
                walk(start, g.tgt(e), prefix + [e])

    for n in sorted(live):
        walk(n, n, [])
    translation = {}
    for name, las in lassos.items():
        if las.prefix:
            nxt = Lasso(g.tgt(las.prefix[0]), las.prefix[1:], las.cycle)
        else:
            nxt = Lasso(g.tgt(las.cycle[0]), (), las.cycle[1:] + las.cycle[:1])
        translation[name] = nxt.name
    return ChainSet(tuple(lassos[k] for k in sorted(lassos)), translation)


# ---------------------------------------------------------------- cochains


@dataclass(frozen=True, eq=False)
class SymbolicEndomap:
    """A finite functional graph ``core`` plus ``tails`` disjoint copies of C∞."""

    core: dict  # node -> successor
    tails: int

    def __eq__(self, other):
        return (
            isinstance(other, SymbolicEndomap)
            and self.tails == other.tails
            and endomap_signature(self.core) == endomap_signature(other.core)
        )

    def __hash__(self):
        return hash((endomap_signature(self.core), self.tails))

    def __repr__(self):
        return f"SymbolicEndomap(core={len(self.core)} nodes, tails={self.tails})"


def truncation_depth(g: FinGraph) -> int:
    return 2 * (len(g.nodes) + len(g.edges)) + 2


def _level_partition(g: FinGraph, depth: int, window: int) -> UnionFind:
    """Components of C∞^op × g cut at ``depth``: node (k, n) is the k-th translate of n."""
    order = {n: i for i, n in enumerate(g.nodes)}
    uf = UnionFind((k, order[n]) for k in range(depth + 1) for n in g.nodes)
    for k in range(depth):
        for _, s, t in g.edges:
            uf.union((k + 1, order[s]), (k, order[t]))
    return uf


def _window_classes(uf: UnionFind, window: int, width: int) -> dict:
    return {(k, i): uf.find((k, i)) for k in range(window + 1) for i in range(width)}


def loop_reflect(g: FinGraph, depth: int | None = None) -> SymbolicEndomap:
    """↑g: the translation on components of C∞^op × g, as core plus C∞ tails."""
    width = len(g.nodes)
    window = width + 1
    depth = truncation_depth(g) if depth is None else depth
    if depth < window + 1:
        raise UnsupportedShape(f"depth {depth} is below the window {window}")
    cls = _window_classes(_level_partition(g, depth, window), window, width)
    again = _window_classes(_level_partition(g, depth + 1, window), window, width)
    if _partition(cls) != _partition(again):
        raise UnsupportedShape(f"components did not stabilise by depth {depth}")
    core_gens, infinite_gens = [], []
    for i in range(width):
        orbit = [cls[k, i] for k in range(window + 1)]
        (core_gens if len(set(orbit)) < len(orbit) else infinite_gens).append(i)
    names, core = {}, {}
    for i in core_gens:
        for k in range(window):
            c = cls[k, i]
            names.setdefault(c, f"{g.nodes[i]}+{k}")
    for i in core_gens:
        for k in range(window):
            core[names[cls[k, i]]] = names[cls[k + 1, i]]
    # the infinite part must be a disjoint sum of C∞: T injective there
    succ, starts = {}, set()
    for i in infinite_gens:
        for k in range(window):
            a, b = cls[k, i], cls[k + 1, i]
            if a in names or b in names:
                raise UnsupportedShape("an infinite orbit meets the periodic core")
            if b in succ.values() and succ.get(a) != b:
                raise UnsupportedShape("translation is not injective on the infinite part")
            succ[a] = b
        starts.add(cls[0, i])
    starts -= set(succ.values())
    return SymbolicEndomap(core, len(starts))


def _partition(cls: dict) -> frozenset:
    groups = {}
    for key, root in cls.items():
        groups.setdefault(root, set()).add(key)
    return frozenset(frozenset(v) for v in groups.values())


def dual_graph(g: FinGraph) -> FinGraph:
    """P*: edges are the nodes of P, nodes are the components of P × A."""
    order = {n: i for i, n in enumerate(g.nodes)}
    uf = UnionFind((order[n], end) for n in g.nodes for end in (0, 1))
    for _, s, t in g.edges:
        uf.union((order[s], 0), (order[t], 1))
    name = {}
    for group in uf.groups():
        label = min(group)
        for m in group:
            name[m] = f"{g.nodes[label[0]]}/{label[1]}"
    nodes = sorted(set(name.values()))
    edges = [(n, name[order[n], 0], name[order[n], 1]) for n in g.nodes]
    return FinGraph(tuple(nodes), tuple(edges))


# ------------------------------------------------------- functional graphs


def endomap_of(g: FinGraph) -> dict:
    """The successor map of a graph in which every node has exactly one out-edge."""
    succ = {}
    for n in g.nodes:
        outs = g.out_edges(n)
        if len(outs) != 1:
            raise UnsupportedShape(f"node {n} has {len(outs)} out-edges")
        succ[n] = g.tgt(outs[0])
    return succ


def endomap_signature(succ: dict) -> tuple:
    """A canonical form of a finite endomap, equal exactly for isomorphic maps."""
    preds = {n: [] for n in succ}
    for n, m in succ.items():
        preds[m].append(n)
    cyclic = set()
    for n in succ:
        seen, m = [], n
        while m not in seen:
            seen.append(m)
            m = succ[m]
        cyclic.update(seen[seen.index(m):])

    def tree(n):
        return tuple(sorted(tree(p) for p in preds[n] if p not in cyclic))

    comps, done = [], set()
    for n in sorted(cyclic):
        if n in done:
            continue
        cyc, m = [], n
        while True:
            cyc.append(tree(m))
            done.add(m)
            m = succ[m]
            if m == n:
                break
        comps.append(min(tuple(cyc[i:] + cyc[:i]) for i in range(len(cyc))))
    return tuple(sorted(comps))


def chain_endomap(cs: ChainSet) -> dict:
    return cs.as_endomap()


# -------------------------------------------------------------- cycle sums


@dataclass(frozen=True)
class CycleSum:
    """Σ n_k · L_k with positive multiplicities."""

    mult: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for k, n in dict(self.mult).items():
            k, n = int(k), int(n)
            if k < 1 or n < 0:
                raise ValueError(f"bad cycle term {n}·L{k}")
            if n:
                clean[k] = clean.get(k, 0) + n
        object.__setattr__(self, "mult", dict(sorted(clean.items())))

    def __hash__(self):
        return hash(tuple(self.mult.items()))

    def __add__(self, other: "CycleSum") -> "CycleSum":
        out = Counter(self.mult)
        out.update(other.mult)
        return CycleSum(dict(out))

    @classmethod
    def single(cls, k: int, n: int = 1) -> "CycleSum":
        return cls({k: n})

    def size(self) -> int:
        return sum(k * n for k, n in self.mult.items())

    def to_endomap(self) -> dict:
        succ = {}
        for k, n in self.mult.items():
            for c in range(n):
                for i in range(k):
                    succ[f"L{k}.{c}.{i}"] = f"L{k}.{c}.{(i + 1) % k}"
        return succ

    def to_graph(self) -> FinGraph:
        succ = self.to_endomap()
        return FinGraph(tuple(succ), tuple((f"{a}>", a, b) for a, b in succ.items()))


def cycle_hom(n: int, k: int) -> int:
    """|hom(L_n, L_k)|."""
    return k if n % k == 0 else 0


@dataclass(frozen=True)
class Pairing:
    product: CycleSum
    hom: int
    ten: int


def cycle_pairing(a: CycleSum, b: CycleSum) -> Pairing:
    terms = Counter()
    ten = 0
    for n, p in a.mult.items():
        for k, q in b.mult.items():
            g = gcd(n, k)
            terms[n * k // g] += p * q * g
            ten += p * q * g
    # a map out of a sum is a tuple of maps; a connected cycle lands in one summand
    hom = prod(sum(q * cycle_hom(n, k) for k, q in b.mult.items()) ** p for n, p in a.mult.items())
    return Pairing(CycleSum(dict(terms)), hom, ten)


def zn_transfer(a: CycleSum, n: int, direction: str) -> CycleSum:
    """Along ℤ → ℤ_n: coreflect keeps k | n; reflect turns each k-cycle into a gcd(n, k)-cycle."""
    if n < 1:
        raise ValueError("n must be positive")
    if direction == "coreflect":
        return CycleSum({k: m for k, m in a.mult.items() if n % k == 0})
    if direction == "reflect":
        out = Counter()
        for k, m in a.mult.items():
            out[gcd(n, k)] += m
        return CycleSum(dict(out))
    raise ValueError(f"unknown direction {direction!r}")


def cycle_sum_of(succ: dict) -> CycleSum:
    """The cycle type of a permutation given as a successor map."""
    seen, out = set(), Counter()
    for n in succ:
        if n in seen:
            continue
        length, m = 0, n
        while m not in seen:
            seen.add(m)
            m = succ[m]
            length += 1
        if m != n:
            raise UnsupportedShape("not a permutation")
        out[length] += 1
    return CycleSum(dict(out))


# ------------------------------------------------------------------ bridge


def graph_space_bridge(p: GraphPart, budget: int = DEFAULT_BUDGET) -> Part:
    """The part of free categories induced by a graph part over an acyclic base."""
    base = free_category(p.base, budget)
    total = free_category(p.total, budget)
    omap = dict(p.node_map)
    amap = {}
    for a, s, _ in total.arrows:
        if a == total.identity[s]:
            amap[a] = base.identity[p.node_map[s]]
        else:
            amap[a] = ";".join(p.edge_map[e] for e in a.split(";"))
    return Part(base, total, FinFunctor(total, base, omap, amap))


def over_arrow(total: FinGraph, node_map: dict, edge_map: dict | None = None) -> GraphPart:
    """A graph over A = 0 → 1; every edge lies over the arrow ``a``."""
    edge_map = edge_map or {e: "a" for e, _, _ in total.edges}
    return GraphPart(arrow_graph(), total, node_map, edge_map)


def empty_graph_part(base: FinGraph) -> GraphPart:
    return GraphPart(base, FinGraph((), ()), {}, {})

