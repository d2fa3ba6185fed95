"""Discrete (op)fibrations and the reflections of parts into them.

A part is a df (open) when every base arrow lifts uniquely once its codomain is
fixed, and a dof (closed) when it lifts uniquely once its domain is fixed.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product

from .errors import BudgetExceeded, NotFibration, NotNatural
from .fincat import DEFAULT_BUDGET, FinCat, FinFunctor, UnionFind, components
from .parts import (
    Part,
    PartMorphism,
    hom_over,
    tensor,
    tensor_map,
)
from .presheaf import (
    CO,
    CONTRA,
    NatTrans,
    Presheaf,
    check_natural,
    element_arrows,
    element_objects,
    elements,
    representable,
)

CLOSED, OPEN = "closed", "open"


# ---------------------------------------------------------- classification


@dataclass(frozen=True, eq=False)
class Classification:
    """Result of ``classify_part``.

    ``co`` is the extracted covariant presheaf when the part is a dof and
    ``contra`` the contravariant one when it is a df. ``element`` names each
    total object as (base object, fibre element); ``lift_from[f, a]`` is the
    lift of f starting at a (dof) and ``lift_to[f, b]`` the lift ending at b (df).
    """

    kind: str
    co: Presheaf | None
    contra: Presheaf | None
    element: dict
    obj_of: dict
    lift_from: dict = field(default_factory=dict)
    lift_to: dict = field(default_factory=dict)

    @property
    def presheaf(self) -> Presheaf | None:
        return self.co if self.co is not None else self.contra

    @property
    def is_df(self) -> bool:
        return self.contra is not None

    @property
    def is_dof(self) -> bool:
        return self.co is not None


def classify_part(p: Part) -> Classification:
    base, tp = p.base, p.total
    element, obj_of = {}, {}
    for x in base.objects:
        over = p.over(x)
        prefix = f"{x}."
        strip = all(a.startswith(prefix) for a in over)
        for a in over:
            s = a[len(prefix):] if strip else a
            element[a] = (x, s)
            obj_of[x, s] = a
    fibre = {x: tuple(element[a][1] for a in p.over(x)) for x in base.objects}

    lift_from, lift_to = {}, {}
    dof = df = True
    for f in base.arrow_ids:
        lifted = p.arrows_over(f)
        by_src, by_tgt = {}, {}
        for u in lifted:
            by_src.setdefault(tp.src(u), []).append(u)
            by_tgt.setdefault(tp.tgt(u), []).append(u)
        if dof:
            for a in p.over(base.src(f)):
                us = by_src.get(a, [])
                if len(us) != 1:
                    dof = False
                    break
                lift_from[f, a] = us[0]
        if df:
            for b in p.over(base.tgt(f)):
                us = by_tgt.get(b, [])
                if len(us) != 1:
                    df = False
                    break
                lift_to[f, b] = us[0]
    co = contra = None
    if dof:
        trans = {
            f: {element[a][1]: element[tp.tgt(lift_from[f, a])][1] for a in p.over(base.src(f))}
            for f in base.arrow_ids
        }
        co = Presheaf(base, CO, fibre, trans)
    if df:
        trans = {
            f: {element[b][1]: element[tp.src(lift_to[f, b])][1] for b in p.over(base.tgt(f))}
            for f in base.arrow_ids
        }
        contra = Presheaf(base, CONTRA, fibre, trans)
    kind = {(True, True): "bifibration", (True, False): "df", (False, True): "dof"}.get(
        (df, dof), "neither"
    )
    return Classification(
        kind, co, contra, element, obj_of, lift_from if dof else {}, lift_to if df else {}
    )


def is_df(p: Part) -> bool:
    return classify_part(p).is_df


def is_dof(p: Part) -> bool:
    return classify_part(p).is_dof


# ----------------------------------------------------------- reflections


@dataclass(frozen=True, eq=False)
class ReflectionResult:
    """A (co)reflection of a part.

    ``part`` is ``elements(presheaf)``. For reflections ``unit`` goes from the
    input part to ``part``; for coreflections it is the counit, from ``part`` to
    the input. ``witness`` maps each fibre element to its representative: a
    pair (object, base arrow) for reflections, a PartMorphism for coreflections.
    """

    source: Part
    side: str
    kind: str
    presheaf: Presheaf
    part: Part
    unit: PartMorphism
    witness: dict
    index: dict  # coreflections: base object -> {morphism key: element name}


def _comma_classes(p: Part, x, side: str) -> UnionFind:
    base, tp, pi = p.base, p.total, p.proj
    uf = UnionFind()
    for a in tp.objects:
        pa = pi.obj_map[a]
        for f in base.hom(pa, x) if side == CLOSED else base.hom(x, pa):
            uf.add((a, f))
    for u, a, b in tp.arrows:
        pu = pi.arr_map[u]
        if side == CLOSED:
            for g in base.hom(base.tgt(pu), x):
                uf.union((a, base.comp(g, pu)), (b, g))
        else:
            for f in base.hom(x, base.src(pu)):
                uf.union((a, f), (b, base.comp(pu, f)))
    return uf


def reflect(p: Part, side: str = CLOSED) -> ReflectionResult:
    """↑P (closed) or ↓P (open): components of the comma categories P/x or x/P."""
    base, pi = p.base, p.proj
    cls = {}  # (x, (a, f)) -> element name
    fibre, witness = {}, {}
    for x in base.objects:
        uf = _comma_classes(p, x, side)
        names = []
        for group in uf.groups():
            rep = min(group, key=lambda af: f"{af[0]}|{af[1]}")
            name = f"{x}~{rep[0]}|{rep[1]}"
            names.append(name)
            witness[x, name] = rep
            for member in group:
                cls[x, member] = name
        fibre[x] = tuple(names)
    trans = {}
    for h in base.arrow_ids:
        x, y = base.src(h), base.tgt(h)
        if side == CLOSED:
            trans[h] = {
                name: cls[y, (a, base.comp(h, f))]
                for name in fibre[x]
                for a, f in [witness[x, name]]
            }
        else:
            trans[h] = {
                name: cls[x, (a, base.comp(f, h))]
                for name in fibre[y]
                for a, f in [witness[y, name]]
            }
    variance = CO if side == CLOSED else CONTRA
    pre = Presheaf(base, variance, fibre, trans)
    part = elements(pre)
    omap, amap, elem = {}, {}, {}
    for a in p.total.objects:
        x = pi.obj_map[a]
        elem[a] = cls[x, (a, base.identity[x])]
        omap[a] = f"{x}.{elem[a]}"
    for u, a, b in p.total.arrows:
        # the lift of f is attached to the element on its domain side
        amap[u] = f"{pi.arr_map[u]}@{elem[a if side == CLOSED else b]}"
    unit = PartMorphism(p, part, FinFunctor(p.total, part.total, omap, amap))
    return ReflectionResult(
        p, side, "reflection", pre, part, unit, {k[1]: v for k, v in witness.items()}, {}
    )


def _yoneda_shift(base: FinCat, h, side: str, reps: dict) -> PartMorphism:
    """The map between representable parts induced by h: x → y.

    Closed side: ↑y → ↑x, f ↦ f∘h. Open side: ↓x → ↓y, f ↦ h∘f.
    """
    x, y = base.src(h), base.tgt(h)
    if side == CLOSED:
        (pre_from, rep_from), (_, rep_to) = reps[y], reps[x]
    else:
        (pre_from, rep_from), (_, rep_to) = reps[x], reps[y]

    def move(f):
        return base.comp(f, h) if side == CLOSED else base.comp(h, f)

    omap = {o: f"{z}.{move(f)}" for z, f, o in element_objects(pre_from)}
    amap = {u: f"{k}@{move(f)}" for k, f, u in element_arrows(pre_from)}
    return PartMorphism(rep_from, rep_to, FinFunctor(rep_from.total, rep_to.total, omap, amap))


def representable_parts(base: FinCat, side: str) -> dict:
    """Base object ↦ (representable presheaf, its part): ↑x closed, ↓x open."""
    variance = CO if side == CLOSED else CONTRA
    out = {}
    for x in base.objects:
        pre = representable(base, x, variance)
        out[x] = (pre, elements(pre))
    return out


def coreflect(p: Part, side: str = CLOSED) -> ReflectionResult:
    """P↑ = hom(↑-, P) (closed) or P↓ = hom(↓-, P) (open), with the counit."""
    base = p.base
    reps = representable_parts(base, side)
    fibre, witness, index = {}, {}, {}
    for x in base.objects:
        homs = hom_over(reps[x][1], p)
        names = [f"{x}#{i}" for i in range(len(homs))]
        fibre[x] = tuple(names)
        index[x] = {m.key(): n for m, n in zip(homs, names)}
        witness.update(zip(names, homs))
    trans = {}
    for h in base.arrow_ids:
        x, y = base.src(h), base.tgt(h)
        shift = _yoneda_shift(base, h, side, reps)
        if side == CLOSED:
            trans[h] = {n: index[y][shift.then(witness[n]).key()] for n in fibre[x]}
        else:
            trans[h] = {n: index[x][shift.then(witness[n]).key()] for n in fibre[y]}
    pre = Presheaf(base, CO if side == CLOSED else CONTRA, fibre, trans)
    part = elements(pre)
    omap = {o: witness[n].obj(f"{x}.{base.identity[x]}") for x, n, o in element_objects(pre)}
    amap = {}
    for f, n, u in element_arrows(pre):
        at = base.src(f) if side == CLOSED else base.tgt(f)
        amap[u] = witness[n].arr(f"{f}@{base.identity[at]}")
    counit = PartMorphism(part, p, FinFunctor(part.total, p.total, omap, amap))
    return ReflectionResult(p, side, "coreflection", pre, part, counit, witness, index)


# ------------------------------------------------ hom bijections (transposes)


def _fibration_of(d: Part, side: str) -> Classification:
    c = classify_part(d)
    if (side == CLOSED and not c.is_dof) or (side == OPEN and not c.is_df):
        raise NotFibration(f"expected a {'dof' if side == CLOSED else 'df'}")
    return c


def _act(d: Part, c: Classification, side: str, f, obj):
    """f·obj: push forward along a dof, or pull back along a df."""
    if side == CLOSED:
        return d.total.tgt(c.lift_from[f, obj])
    return d.total.src(c.lift_to[f, obj])


def reflection_transpose(res: ReflectionResult, phi: PartMorphism) -> PartMorphism:
    """φ: P → D  ↦  the morphism ↑P → D (or ↓P → D) with [(a, f)] ↦ f·φ(a)."""
    d, side, base = phi.cod, res.side, res.source.base
    c = _fibration_of(d, side)
    omap, amap = {}, {}
    for x, n, o in element_objects(res.presheaf):
        a, f = res.witness[n]
        omap[o] = _act(d, c, side, f, phi.obj(a))
    tp = res.part.total
    for f, n, u in element_arrows(res.presheaf):
        if side == CLOSED:
            amap[u] = c.lift_from[f, omap[tp.src(u)]]
        else:
            amap[u] = c.lift_to[f, omap[tp.tgt(u)]]
    return PartMorphism(res.part, d, FinFunctor(res.part.total, d.total, omap, amap))


def reflection_restrict(res: ReflectionResult, alpha: PartMorphism) -> PartMorphism:
    """α ↦ α∘unit."""
    return res.unit.then(alpha)


def coreflection_transpose(res: ReflectionResult, phi: PartMorphism) -> PartMorphism:
    """φ: D → P  ↦  D → P↑ sending d to the morphism f ↦ φ(f·d)."""
    d, side, base = phi.dom, res.side, res.source.base
    c = _fibration_of(d, side)
    reps = representable_parts(base, side)
    omap, amap = {}, {}
    for obj in d.total.objects:
        x = d.proj.obj_map[obj]
        pre, rep = reps[x]
        xo, xa = {}, {}
        for _, f, o in element_objects(pre):
            xo[o] = phi.obj(_act(d, c, side, f, obj))
        for g, f, u in element_arrows(pre):
            if side == CLOSED:
                xa[u] = phi.arr(c.lift_from[g, _act(d, c, side, f, obj)])
            else:
                xa[u] = phi.arr(c.lift_to[g, _act(d, c, side, f, obj)])
        key = FinFunctor(rep.total, res.source.total, xo, xa).key()
        omap[obj] = f"{x}.{res.index[x][key]}"
    elem = {obj: o[len(f"{d.proj.obj_map[obj]}."):] for obj, o in omap.items()}
    for u, s, t in d.total.arrows:
        amap[u] = f"{d.proj.arr_map[u]}@{elem[s if side == CLOSED else t]}"
    return PartMorphism(d, res.part, FinFunctor(d.total, res.part.total, omap, amap))


def coreflection_restrict(res: ReflectionResult, alpha: PartMorphism) -> PartMorphism:
    """α ↦ counit∘α."""
    return alpha.then(res.unit)


# --------------------------------------------------------- contraposition


def _fn(dom: tuple, images) -> tuple:
    return tuple(images)


def _all_fns(dom: tuple, cod: tuple) -> list[tuple]:
    return list(product(cod, repeat=len(dom)))


def contrapose(alpha: NatTrans) -> dict:
    """¬α on the sets S = B_y: Θ[x, y] sends h: B_x → B_y to h∘α_x.

    Functions are tuples of images listed in the sorted order of their domain.
    """
    a, b = alpha.src, alpha.tgt
    theta = {}
    for x in a.base.objects:
        ax, bx = a.fibre[x], b.fibre[x]
        pos = {s: i for i, s in enumerate(bx)}
        for y in a.base.objects:
            theta[x, y] = {
                h: tuple(h[pos[alpha.comp[x][s]]] for s in ax) for h in _all_fns(bx, b.fibre[y])
            }
    return theta


def contrapose_inverse(theta: dict, a: Presheaf, b: Presheaf) -> NatTrans:
    """Recover α: a → b from ¬α given on the sets B_y (Yoneda at S = B_x).

    Raises NotNatural if Θ fails naturality in x or in S.
    """
    base = a.base
    for y in base.objects:
        s = b.fibre[y]
        for f in base.arrow_ids:
            d, c = a.domain_object(f), a.codomain_object(f)
            bpos = {e: i for i, e in enumerate(b.fibre[c])}
            apos = {e: i for i, e in enumerate(a.fibre[c])}
            for h in _all_fns(b.fibre[c], s):
                left = theta[d, y][tuple(h[bpos[b.trans[f][e]]] for e in b.fibre[d])]
                right_h = theta[c, y][h]
                right = tuple(right_h[apos[a.trans[f][e]]] for e in a.fibre[d])
                if left != right:
                    raise NotNatural(f, f"square fails at S = B({y})")
    for x in base.objects:
        for y in base.objects:
            for y2 in base.objects:
                pos = {e: i for i, e in enumerate(b.fibre[y])}
                for k in _all_fns(b.fibre[y], b.fibre[y2]):
                    for h in _all_fns(b.fibre[x], b.fibre[y]):
                        kh = tuple(k[pos[v]] for v in h)
                        lhs = theta[x, y2][kh]
                        rhs = tuple(k[pos[v]] for v in theta[x, y][h])
                        if lhs != rhs:
                            raise NotNatural(f"set map B({y}) → B({y2})", "not natural in S")
    comp = {}
    for x in base.objects:
        ident = tuple(b.fibre[x])
        image = theta[x, x][ident]
        comp[x] = dict(zip(a.fibre[x], image))
    return check_natural(NatTrans(a, b, comp))


# ------------------------------------------------------ groupoid reflection


@dataclass(frozen=True)
class GroupoidReflection:
    groupoid: FinCat
    quotient: FinFunctor

    def inverse(self, m):
        g = self.groupoid
        for k in g.hom(g.tgt(m), g.src(m)):
            if g.comp(k, m) == g.identity[g.src(m)]:
                return k
        raise AssertionError("groupoid arrow without inverse")


def _coset_enumerate(ngens: int, relators: list[list[int]], limit: int):
    """Coset enumeration over the trivial subgroup (HLT strategy).

    Letters are 2i for generator i and 2i+1 for its inverse. Returns the coset
    table of the regular action, or raises BudgetExceeded.
    """
    width = 2 * ngens
    table = [[-1] * width]
    parent = [0]

    def rep(c):
        r = c
        while parent[r] != r:
            r = parent[r]
        while parent[c] != r:
            parent[c], c = r, parent[c]
        return r

    def merge(a, b, queue):
        a, b = rep(a), rep(b)
        if a == b:
            return
        if b < a:
            a, b = b, a
        parent[b] = a
        queue.append(b)

    def coincidence(a, b):
        queue = []
        merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(width):
                f = table[e][x]
                if f < 0:
                    continue
                table[f][x ^ 1] = -1
                e1, f1 = rep(e), rep(f)
                if table[e1][x] >= 0:
                    merge(f1, table[e1][x], queue)
                elif table[f1][x ^ 1] >= 0:
                    merge(e1, table[f1][x ^ 1], queue)
                else:
                    table[e1][x] = f1
                    table[f1][x ^ 1] = e1

    def define(c, x):
        if len(table) >= limit:
            raise BudgetExceeded(f"groupoid reflection exceeds the budget of {limit}")
        d = len(table)
        table.append([-1] * width)
        parent.append(d)
        table[c][x] = d
        table[d][x ^ 1] = c

    def scan_and_fill(c, w):
        f, b, i, j = c, c, 0, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] >= 0:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][w[j] ^ 1] >= 0:
                b = table[b][w[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                return
            define(f, w[i])

    c = 0
    while c < len(table):
        if parent[c] == c:
            for w in relators:
                scan_and_fill(c, w)
                if parent[c] != c:
                    break
            if parent[c] == c:
                for x in range(width):
                    if table[c][x] < 0:
                        define(c, x)
        c += 1
    live = [c for c in range(len(table)) if parent[c] == c]
    renum = {c: i for i, c in enumerate(live)}
    return [[renum[rep(table[c][x])] for x in range(width)] for c in live]


def groupoid_reflection(x: FinCat, budget: int = DEFAULT_BUDGET) -> GroupoidReflection:
    """The universal groupoid under x, with its quotient functor.

    Each component becomes a connected groupoid whose vertex group is computed
    by coset enumeration; arrows are named ``x>y:k`` with k a group element.
    """
    part = components(x)
    objects, arrows, identity, table = [], [], {}, {}
    omap, amap = {o: o for o in x.objects}, {}
    total = 0
    for cls in part.classes:
        members = set(cls)
        gens = [a for a in x.non_identity_arrows() if x.src(a) in members]
        letter = {a: 2 * i for i, a in enumerate(gens)}
        # spanning tree arrows are set to the identity
        seen, tree, queue = {cls[0]}, [], deque([cls[0]])
        while queue:
            o = queue.popleft()
            for a in gens:
                s, t = x.src(a), x.tgt(a)
                for here, there in ((s, t), (t, s)):
                    if here == o and there not in seen:
                        seen.add(there)
                        tree.append(a)
                        queue.append(there)
        relators = [[letter[a]] for a in tree]
        for (g, f), h in x.compose.items():
            if g in letter and f in letter:
                rel = [letter[g], letter[f]]
                if h in letter:
                    rel.append(letter[h] ^ 1)
                relators.append(rel)
        ctable = _coset_enumerate(len(gens), relators, budget)
        order = len(ctable)
        total += order * len(cls) ** 2
        if total > budget:
            raise BudgetExceeded(f"groupoid reflection has more than {budget} arrows")
        words = _coset_words(ctable)

        def mul(c, d):
            for letter_ in words[d]:
                c = ctable[c][letter_]
            return c

        for o in cls:
            objects.append(o)
            identity[o] = f"{o}>{o}:0"
        for s in cls:
            for t in cls:
                for k in range(order):
                    arrows.append((f"{s}>{t}:{k}", s, t))
        for s in cls:
            for t in cls:
                for u in cls:
                    for k in range(order):
                        for m in range(order):
                            # (t>u:m) ∘ (s>t:k)
                            table[f"{t}>{u}:{m}", f"{s}>{t}:{k}"] = f"{s}>{u}:{mul(m, k)}"
        for a in x.arrow_ids:
            if x.src(a) not in members:
                continue
            k = ctable[0][letter[a]] if a in letter else 0
            amap[a] = f"{x.src(a)}>{x.tgt(a)}:{k}"
    g = FinCat(tuple(objects), tuple(arrows), identity, table)
    return GroupoidReflection(g, FinFunctor(x, g, omap, amap))


def _coset_words(ctable) -> list[list[int]]:
    words = [None] * len(ctable)
    words[0] = []
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for x, d in enumerate(ctable[c]):
            if words[d] is None:
                words[d] = words[c] + [x]
                queue.append(d)
    return words


def _clopen_representables(gr: GroupoidReflection, base: FinCat) -> dict:
    """For each x, the presheaf z ↦ G(x, z) on the base and its part."""
    g, q = gr.groupoid, gr.quotient
    parts = {}
    for x in base.objects:
        fibre = {z: g.hom(x, z) for z in base.objects}
        trans = {f: {m: g.comp(q(f), m) for m in fibre[base.src(f)]} for f in base.arrow_ids}
        pre = Presheaf(base, CO, fibre, trans)
        parts[x] = (pre, elements(pre))
    return parts


def _clopen_shift(gr, base, h, parts, forward: bool) -> PartMorphism:
    """For h: x → x', the map ↕x → ↕x' (m ↦ m∘q(h)⁻¹) or back (m ↦ m∘q(h))."""
    g = gr.groupoid
    x, x2 = base.src(h), base.tgt(h)
    k = gr.inverse(gr.quotient(h)) if forward else gr.quotient(h)
    (pre, src), (_, dst) = (parts[x], parts[x2]) if forward else (parts[x2], parts[x])
    omap = {o: f"{z}.{g.comp(m, k)}" for z, m, o in element_objects(pre)}
    amap = {u: f"{f}@{g.comp(m, k)}" for f, m, u in element_arrows(pre)}
    return PartMorphism(src, dst, FinFunctor(src.total, dst.total, omap, amap))


def clopen_reflect(p: Part, budget: int = DEFAULT_BUDGET) -> Presheaf:
    """The reflection into discrete bifibrations: x ↦ ten(↕x, P)."""
    base = p.base
    gr = groupoid_reflection(base, budget)
    parts = _clopen_representables(gr, base)
    tens = {x: tensor(parts[x][1], p) for x in base.objects}
    names = {
        x: [f"{x}~{'|'.join(t.rep_pair(i))}" for i in range(t.size)] for x, t in tens.items()
    }
    trans = {}
    for h in base.arrow_ids:
        x, x2 = base.src(h), base.tgt(h)
        mapping = tensor_map(tens[x], tens[x2], _clopen_shift(gr, base, h, parts, True))
        trans[h] = {names[x][i]: names[x2][j] for i, j in enumerate(mapping)}
    return Presheaf(base, CO, names, trans)


def clopen_coreflect(p: Part, budget: int = DEFAULT_BUDGET) -> Presheaf:
    """The coreflection into discrete bifibrations: x ↦ hom(↕x, P)."""
    base = p.base
    gr = groupoid_reflection(base, budget)
    parts = _clopen_representables(gr, base)
    homs = {x: hom_over(parts[x][1], p) for x in base.objects}
    names = {x: [f"{x}#{i}" for i in range(len(v))] for x, v in homs.items()}
    index = {x: {m.key(): n for m, n in zip(homs[x], names[x])} for x in base.objects}
    trans = {}
    for h in base.arrow_ids:
        x, x2 = base.src(h), base.tgt(h)
        back = _clopen_shift(gr, base, h, parts, False)  # ↕x' → ↕x
        trans[h] = {n: index[x2][back.then(m).key()] for m, n in zip(homs[x], names[x])}
    return Presheaf(base, CO, names, trans)


# ------------------------------------------------------------ axiom report


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f" :: {self.detail}" if self.detail else "")


def verify_axioms(x: FinCat, max_fibre: int = 2, max_set: int = 2) -> list[Check]:
    """Check the bipolar axioms over the catalog of parts over x.

    Failures are reported as entries, never raised.
    """
    from .verify import axiom_checks

    return axiom_checks(x, max_fibre=max_fibre, max_set=max_set)
