"""Brute-force reference computations, kept independent of the main algorithms.

These are deliberately naive: colimits and limits are computed from their
defining universal formulas, graph quantities by exhaustive enumeration.
"""
from __future__ import annotations

from collections import Counter
from itertools import product

from .fincat import FinFunctor, FinGraph, UnionFind
from .presheaf import CO, Presheaf


# ------------------------------------------------------------- Kan oracles


def colimit_presheaf(f: FinFunctor, d) -> Presheaf:
    """(Lan_f D)y as a colimit over f ↓ y: triples (x, g: fx → y, s ∈ Dx) glued along X.

    ``d`` must be covariant.
    """
    x_cat, y_cat = f.dom, f.cod
    classes = {}
    for y in y_cat.objects:
        uf = UnionFind()
        for x in x_cat.objects:
            for g in y_cat.hom(f.obj(x), y):
                for s in d.fibre[x]:
                    uf.add((x, g, s))
        for k, x, x2 in x_cat.arrows:
            for g in y_cat.hom(f.obj(x2), y):
                for s in d.fibre[x]:
                    uf.union((x, y_cat.comp(g, f(k)), s), (x2, g, d.trans[k][s]))
        classes[y] = uf
    fibre = {y: tuple(str(min(grp)) for grp in uf.groups()) for y, uf in classes.items()}
    name = {y: {m: str(min(grp)) for grp in uf.groups() for m in grp} for y, uf in classes.items()}
    trans = {}
    for h, y, y2 in y_cat.arrows:
        trans[h] = {}
        for grp in classes[y].groups():
            x, g, s = min(grp)
            trans[h][str(min(grp))] = name[y2][x, y_cat.comp(h, g), s]
    return Presheaf(y_cat, CO, fibre, trans)


def limit_presheaf(f: FinFunctor, d) -> Presheaf:
    """(Ran_f D)y as a limit over y ↓ f: compatible families indexed by (x, g: y → fx).

    ``d`` must be covariant.
    """
    x_cat, y_cat = f.dom, f.cod
    index, fams = {}, {}
    for y in y_cat.objects:
        index[y] = [(x, g) for x in x_cat.objects for g in y_cat.hom(y, f.obj(x))]
        fams[y] = []
        for choice in product(*(d.fibre[x] for x, _ in index[y])):
            fam = dict(zip(index[y], choice))
            if all(
                d.trans[k][fam[x, g]] == fam[x2, y_cat.comp(f(k), g)]
                for k, x, x2 in x_cat.arrows
                for g in y_cat.hom(y, f.obj(x))
            ):
                fams[y].append(fam)

    def label(y, fam):
        return "[" + ",".join(f"{x}/{g}={fam[x, g]}" for x, g in index[y]) + "]"

    fibre = {y: tuple(label(y, fam) for fam in fams[y]) for y in y_cat.objects}
    trans = {}
    for h, y, y2 in y_cat.arrows:
        # restrict a family at y along h: component (x, g: y2 → fx) takes fam[x, g∘h]
        trans[h] = {
            label(y, fam): label(y2, {(x, g): fam[x, y_cat.comp(g, h)] for x, g in index[y2]})
            for fam in fams[y]
        }
    return Presheaf(y_cat, CO, fibre, trans)


# ---------------------------------------------------------- graph oracles


def free_endomap(g: FinGraph) -> tuple[dict, set]:
    """Congruence closure for the free endomap on g.

    Returns (successor on classes of nodes, classes lacking a successor). Each
    class without a successor starts a fresh infinite chain.
    """
    uf = UnionFind(g.nodes)
    succ, merges = {}, []  # succ is keyed by current roots

    def set_succ(root, t):
        if root in succ:
            merges.append((succ[root], t))
        else:
            succ[root] = t

    for _, s, t in g.edges:
        set_succ(uf.find(s), t)
    while merges:
        a, b = merges.pop()
        ra, rb = uf.find(a), uf.find(b)
        if ra == rb:
            continue
        sa, sb = succ.pop(ra, None), succ.pop(rb, None)
        uf.union(ra, rb)
        root = uf.find(ra)
        for t in (sa, sb):
            if t is not None:
                set_succ(root, t)
    succ = {k: uf.find(v) for k, v in succ.items()}
    classes = {uf.find(n) for n in g.nodes}
    return succ, classes - set(succ)


def free_endomap_shape(g: FinGraph):
    """(core successor map, number of C∞ tails) or None if not core ⊕ tails."""
    succ, open_ends = free_endomap(g)
    classes = set(succ) | open_ends
    periodic = set()
    for c in classes:
        seen, m = [], c
        while m in succ and m not in seen:
            seen.append(m)
            m = succ[m]
        if m in succ:
            periodic.add(c)
    infinite = classes - periodic
    preds = Counter(succ[c] for c in infinite if c in succ)
    if any(v > 1 for v in preds.values()):
        return None
    starts = [c for c in infinite if preds[c] == 0]
    return {c: succ[c] for c in periodic}, len(starts)


def graph_product_cycles(n: int, k: int) -> Counter:
    """Cycle lengths of L_n × L_k, by walking the product."""
    seen, out = set(), Counter()
    for i in range(n):
        for j in range(k):
            if (i, j) in seen:
                continue
            length, a, b = 0, i, j
            while (a, b) not in seen:
                seen.add((a, b))
                a, b = (a + 1) % n, (b + 1) % k
                length += 1
            out[length] += 1
    return out


def endomap_hom_count(src: dict, tgt: dict) -> int:
    """Maps h with h∘s = t∘h, by exhaustive search."""
    nodes, targets = list(src), list(tgt)
    count = 0
    for images in product(targets, repeat=len(nodes)):
        h = dict(zip(nodes, images))
        if all(h[src[a]] == tgt[h[a]] for a in nodes):
            count += 1
    return count


def endomap_tensor_count(a: dict, b: dict) -> int:
    """Components of the product endomap."""
    uf = UnionFind((x, y) for x in a for y in b)
    for x in a:
        for y in b:
            uf.union((x, y), (a[x], b[y]))
    return len(uf.groups())


def permutation_transfer(succ: dict, n: int, direction: str) -> dict:
    """ℤ_n-set from a ℤ-set: fixed points of σⁿ (coreflect) or orbits of σⁿ (reflect)."""

    def power(x):
        for _ in range(n):
            x = succ[x]
        return x

    if direction == "coreflect":
        fixed = [x for x in succ if power(x) == x]
        return {x: succ[x] for x in fixed}
    uf = UnionFind(succ)
    for x in succ:
        uf.union(x, power(x))
    return {uf.find(x): uf.find(succ[x]) for x in succ}


# ------------------------------------------------------ two-valued oracles


def least_closed_superset(elements, leq, p, upward: bool) -> frozenset:
    """Intersection of all cosieves (or sieves) containing p, by enumerating subsets."""
    elements = list(elements)
    best = frozenset(elements)
    for mask in range(1 << len(elements)):
        s = frozenset(e for i, e in enumerate(elements) if mask >> i & 1)
        if not p <= s:
            continue
        closed = all(
            (b in s) for a in s for b in elements if ((a, b) in leq if upward else (b, a) in leq)
        )
        if closed:
            best &= s
    return best


def greatest_open_subset(elements, leq, p, downward: bool) -> frozenset:
    """Union of all sieves (or cosieves) inside p."""
    elements = list(elements)
    best = frozenset()
    for mask in range(1 << len(elements)):
        s = frozenset(e for i, e in enumerate(elements) if mask >> i & 1)
        if not s <= p:
            continue
        closed = all(
            (b in s) for a in s for b in elements if ((b, a) in leq if downward else (a, b) in leq)
        )
        if closed:
            best |= s
    return best
