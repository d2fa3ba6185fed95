"""Parts of a base category: categories over X, their morphisms and tensor."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .errors import BaseMismatch, NotFibration, SizeLimit, UnknownObject
from .fincat import (
    ComponentPartition,
    FinCat,
    FinFunctor,
    UnionFind,
    arrow_category,
    components,
    identity_functor,
    make_category,
    search_functors,
    terminal_category,
)

MAX_FUNCTION_SET = 6


@dataclass(frozen=True, eq=False)
class Part:
    """A category ``total`` with a projection functor onto ``base``."""

    base: FinCat
    total: FinCat
    proj: FinFunctor

    def __post_init__(self):
        over, arrows_over = defaultdict(list), defaultdict(list)
        for a in self.total.objects:
            over[self.proj.obj_map[a]].append(a)
        for u in self.total.arrow_ids:
            arrows_over[self.proj.arr_map[u]].append(u)
        object.__setattr__(self, "_over", {x: tuple(over[x]) for x in self.base.objects})
        object.__setattr__(
            self, "_arrows_over", {f: tuple(arrows_over[f]) for f in self.base.arrow_ids}
        )

    def __eq__(self, other):
        return isinstance(other, Part) and (
            self.base == other.base and self.total == other.total and self.proj == other.proj
        )

    def __hash__(self):
        return hash((self.base, self.total))

    def __repr__(self):
        sizes = {x: len(v) for x, v in self._over.items()}
        return f"Part(fibres={sizes})"

    def over(self, x) -> tuple:
        """Objects of the total lying over the base object x."""
        return self._over[x]

    def arrows_over(self, f) -> tuple:
        return self._arrows_over[f]

    def fibre_sizes(self) -> tuple:
        return tuple(len(self._over[x]) for x in self.base.objects)


@dataclass(frozen=True, eq=False)
class PartMorphism:
    """A functor between totals commuting with the projections."""

    dom: Part
    cod: Part
    carrier: FinFunctor

    def __eq__(self, other):
        return isinstance(other, PartMorphism) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"PartMorphism({self.carrier.obj_map!r})"

    def key(self) -> tuple:
        return self.carrier.key()

    def obj(self, a):
        return self.carrier.obj_map[a]

    def arr(self, u):
        return self.carrier.arr_map[u]

    def then(self, g: "PartMorphism") -> "PartMorphism":
        """The composite g∘self."""
        return PartMorphism(self.dom, g.cod, self.carrier.then(g.carrier))

    def commutes(self) -> bool:
        c, p, q = self.carrier, self.dom.proj, self.cod.proj
        return all(q.obj_map[c.obj_map[a]] == p.obj_map[a] for a in self.dom.total.objects) and all(
            q.arr_map[c.arr_map[u]] == p.arr_map[u] for u in self.dom.total.arrow_ids
        )

    def is_iso(self) -> bool:
        c = self.carrier
        return (
            len(set(c.obj_map.values())) == len(self.cod.total.objects) == len(c.obj_map)
            and len(set(c.arr_map.values())) == len(self.cod.total.arrows) == len(c.arr_map)
        )


def identity_morphism(p: Part) -> PartMorphism:
    return PartMorphism(p, p, identity_functor(p.total))


def _same_base(p: Part, q: Part) -> None:
    if p.base != q.base:
        raise BaseMismatch("parts live over different bases")


# --------------------------------------------------------------- builders


def identity_part(x: FinCat) -> Part:
    return Part(x, x, identity_functor(x))


def empty_part(x: FinCat) -> Part:
    empty = FinCat((), (), {}, {})
    return Part(x, empty, FinFunctor(empty, x, {}, {}))


def object_part(x: FinCat, obj) -> Part:
    """The terminal category placed over the object ``obj``."""
    x.check_object(obj)
    t = terminal_category()
    return Part(x, t, FinFunctor(t, x, {"*": obj}, {"1": x.identity[obj]}))


def arrow_part(x: FinCat, f) -> Part:
    """The category 2 sent onto the arrow ``f``."""
    two = arrow_category()
    s, t = x.src(f), x.tgt(f)
    return Part(
        x,
        two,
        FinFunctor(two, x, {"0": s, "1": t}, {"id0": x.identity[s], "id1": x.identity[t], "a": f}),
    )


def endo_part(x: FinCat, f) -> Part:
    """The monoid of powers of an endo-arrow, mapped onto those powers.

    For an idempotent this is the idempotent part {1, e}.
    """
    obj = x.src(f)
    powers = [x.identity[obj]]
    while True:
        nxt = x.comp(f, powers[-1])
        if nxt in powers:
            start = powers.index(nxt)
            break
        powers.append(nxt)
    n = len(powers)

    def norm(k):
        return k if k < n else start + (k - start) % (n - start)

    names = ["1"] + [f"p{k}" for k in range(1, n)]
    table = {(names[i], names[j]): names[norm(i + j)] for i in range(1, n) for j in range(1, n)}
    total = make_category(("*",), [(names[k], "*", "*") for k in range(1, n)], table, {"*": "1"})
    return Part(
        x, total, FinFunctor(total, x, {"*": obj}, {names[k]: powers[k] for k in range(n)})
    )


def idempotent_part(x: FinCat, e) -> Part:
    if x.src(e) != x.tgt(e) or x.comp(e, e) != e:
        raise UnknownObject(f"{e} is not an idempotent")
    return endo_part(x, e)


def sum_parts(p: Part, q: Part) -> Part:
    """Coproduct in the slice: disjoint union of totals."""
    _same_base(p, q)
    tags = (("0", p), ("1", q))
    objects, arrows, identity, table, omap, amap = [], [], {}, {}, {}, {}
    for tag, r in tags:
        c = r.total
        for a in c.objects:
            objects.append(f"{tag}:{a}")
            identity[f"{tag}:{a}"] = f"{tag}:{c.identity[a]}"
            omap[f"{tag}:{a}"] = r.proj.obj_map[a]
        for u, s, t in c.arrows:
            arrows.append((f"{tag}:{u}", f"{tag}:{s}", f"{tag}:{t}"))
            amap[f"{tag}:{u}"] = r.proj.arr_map[u]
        for (g, f), h in c.compose.items():
            table[f"{tag}:{g}", f"{tag}:{f}"] = f"{tag}:{h}"
    total = FinCat(tuple(objects), tuple(arrows), identity, table)
    return Part(p.base, total, FinFunctor(total, p.base, omap, amap))


def pushforward(f: FinFunctor, p: Part) -> Part:
    """f_! p: the same total, projected further along f."""
    if p.base != f.dom:
        raise BaseMismatch("part is not over the functor's domain")
    return Part(f.cod, p.total, p.proj.then(f))


def pullback(f: FinFunctor, q: Part) -> Part:
    """f* q: the pullback of q's projection along f."""
    if q.base != f.cod:
        raise BaseMismatch("part is not over the functor's codomain")
    x, tq = f.dom, q.total
    objects = [f"({a},{b})" for a in x.objects for b in q.over(f.obj_map[a])]
    arrows, omap, amap, identity, pairs = [], {}, {}, {}, {}
    for a in x.objects:
        for b in q.over(f.obj_map[a]):
            omap[f"({a},{b})"] = a
            identity[f"({a},{b})"] = f"({x.identity[a]},{tq.identity[b]})"
    for k, s, t in x.arrows:
        for v in q.arrows_over(f.arr_map[k]):
            name = f"({k},{v})"
            arrows.append((name, f"({s},{tq.src(v)})", f"({t},{tq.tgt(v)})"))
            amap[name] = k
            pairs[name] = (k, v)
    table = {}
    for g, (k2, v2) in pairs.items():
        for h, (k1, v1) in pairs.items():
            if x.tgt(k1) == x.src(k2) and tq.tgt(v1) == tq.src(v2):
                table[g, h] = f"({x.comp(k2, k1)},{tq.comp(v2, v1)})"
    total = FinCat(tuple(objects), tuple(arrows), identity, table)
    return Part(x, total, FinFunctor(total, x, omap, amap))


# ---------------------------------------------------------- fibre product


@dataclass(frozen=True)
class Product:
    """A fibre product with its two projections."""

    part: Part
    left: PartMorphism
    right: PartMorphism
    pairs: dict  # total object or arrow id -> (left id, right id)


def fibre_product_with_projections(p: Part, q: Part) -> Product:
    _same_base(p, q)
    tp, tq, base = p.total, q.total, p.base
    objects, identity, omap, pairs = [], {}, {}, {}
    for x in base.objects:
        for a in p.over(x):
            for b in q.over(x):
                name = f"({a},{b})"
                objects.append(name)
                identity[name] = f"({tp.identity[a]},{tq.identity[b]})"
                omap[name] = x
                pairs[name] = (a, b)
    arrows, amap, apairs = [], {}, {}
    out = defaultdict(list)
    for f in base.arrow_ids:
        for u in p.arrows_over(f):
            for v in q.arrows_over(f):
                name = f"({u},{v})"
                s = f"({tp.src(u)},{tq.src(v)})"
                arrows.append((name, s, f"({tp.tgt(u)},{tq.tgt(v)})"))
                amap[name] = f
                apairs[name] = (u, v)
                out[s].append(name)
    table = {}
    for h, (u1, v1) in apairs.items():
        mid = f"({tp.tgt(u1)},{tq.tgt(v1)})"
        for g in out[mid]:
            u2, v2 = apairs[g]
            table[g, h] = f"({tp.comp(u2, u1)},{tq.comp(v2, v1)})"
    total = FinCat(tuple(objects), tuple(arrows), identity, table)
    part = Part(base, total, FinFunctor(total, base, omap, amap))
    pairs.update(apairs)
    left = PartMorphism(
        part,
        p,
        FinFunctor(
            total, tp, {k: pairs[k][0] for k in objects}, {k: v[0] for k, v in apairs.items()}
        ),
    )
    right = PartMorphism(
        part,
        q,
        FinFunctor(
            total, tq, {k: pairs[k][1] for k in objects}, {k: v[1] for k, v in apairs.items()}
        ),
    )
    return Product(part, left, right, pairs)


def fibre_product(p: Part, q: Part) -> Part:
    return fibre_product_with_projections(p, q).part


def pair_morphisms(m1: PartMorphism, m2: PartMorphism, target: Product) -> PartMorphism:
    """The morphism ⟨m1, m2⟩ into a fibre product."""
    dom = m1.dom
    omap = {a: f"({m1.obj(a)},{m2.obj(a)})" for a in dom.total.objects}
    amap = {u: f"({m1.arr(u)},{m2.arr(u)})" for u in dom.total.arrow_ids}
    return PartMorphism(dom, target.part, FinFunctor(dom.total, target.part.total, omap, amap))


# ------------------------------------------------------------------ comma


def comma(p: Part, x, side: str = "over") -> FinCat:
    """P/x (``over``) or x/P (``under``).

    Over: objects ``a|f`` with f: πa → x; an arrow ``u|g`` goes from
    (a, g∘πu) to (b, g). Under is dual: ``u|f`` goes from (a, f) to (b, πu∘f).
    """
    base, tp, pi = p.base, p.total, p.proj
    base.check_object(x)
    objects, identity, arrows = [], {}, []
    for a in tp.objects:
        pa = pi.obj_map[a]
        homs = base.hom(pa, x) if side == "over" else base.hom(x, pa)
        for f in homs:
            objects.append(f"{a}|{f}")
            identity[f"{a}|{f}"] = f"{tp.identity[a]}|{f}"
    info = {}
    for u, a, b in tp.arrows:
        pu = pi.arr_map[u]
        if side == "over":
            for g in base.hom(base.tgt(pu), x):
                name = f"{u}|{g}"
                arrows.append((name, f"{a}|{base.comp(g, pu)}", f"{b}|{g}"))
                info[name] = (u, g)
        else:
            for f in base.hom(x, base.src(pu)):
                name = f"{u}|{f}"
                arrows.append((name, f"{a}|{f}", f"{b}|{base.comp(pu, f)}"))
                info[name] = (u, f)
    src = {n: s for n, s, _ in arrows}
    tgt = {n: t for n, _, t in arrows}
    table = {}
    for h, (u1, k1) in info.items():
        for g, (u2, k2) in info.items():
            if tgt[h] != src[g]:
                continue
            k = k2 if side == "over" else k1
            table[g, h] = f"{tp.comp(u2, u1)}|{k}"
    return FinCat(tuple(objects), tuple(arrows), identity, table)


# ------------------------------------------------------------ hom over X


def iter_hom_over(p: Part, q: Part) -> Iterator[PartMorphism]:
    _same_base(p, q)
    ocands = {a: q.over(p.proj.obj_map[a]) for a in p.total.objects}
    acands = {u: q.arrows_over(p.proj.arr_map[u]) for u in p.total.arrow_ids}
    for omap, amap in search_functors(p.total, q.total, ocands, acands):
        yield PartMorphism(p, q, FinFunctor(p.total, q.total, omap, amap))


def hom_over(p: Part, q: Part) -> list[PartMorphism]:
    """All morphisms p → q over the base, in deterministic order."""
    return list(iter_hom_over(p, q))


def count_hom(p: Part, q: Part) -> int:
    return sum(1 for _ in iter_hom_over(p, q))


# ----------------------------------------------------------------- tensor


@dataclass(frozen=True, eq=False)
class TensorSet:
    """ten(p, q): components of the fibre product, with representatives."""

    left: Part
    right: Part
    classes: ComponentPartition
    pairs: dict  # product object id -> (left object, right object)

    def __post_init__(self):
        object.__setattr__(self, "_name", {v: k for k, v in self.pairs.items()})

    @property
    def size(self) -> int:
        return len(self.classes)

    def __len__(self):
        return len(self.classes)

    def class_of(self, a, b) -> int:
        return self.classes.index(self._name[a, b])

    def rep_pair(self, i: int) -> tuple:
        return self.pairs[self.classes.rep(i)]


def tensor(p: Part, q: Part) -> TensorSet:
    prod = fibre_product_with_projections(p, q)
    objs = set(prod.part.total.objects)
    return TensorSet(p, q, components(prod.part.total), {k: v for k, v in prod.pairs.items() if k in objs})


def tensor_map(
    src: TensorSet, tgt: TensorSet, alpha: PartMorphism | None = None, beta: PartMorphism | None = None
) -> tuple:
    """ten(α, β) on classes: [⟨l, r⟩] ↦ [⟨αl, βr⟩]."""
    out = []
    for i in range(src.size):
        l, r = src.rep_pair(i)
        out.append(tgt.class_of(alpha.obj(l) if alpha else l, beta.obj(r) if beta else r))
    return tuple(out)


# ------------------------------------------------ negation and exponentials


def _functions(dom: tuple, cod: tuple) -> list[tuple]:
    """All functions dom → cod as tuples of images in the order of ``dom``."""
    return list(product(cod, repeat=len(dom)))


def fn_name(dom: tuple, images: tuple) -> str:
    return "{" + ",".join(f"{a}:{b}" for a, b in zip(dom, images)) + "}"


def _check_sizes(*sizes):
    if any(s > MAX_FUNCTION_SET for s in sizes):
        raise SizeLimit(f"function sets limited to sets of size ≤ {MAX_FUNCTION_SET}")


def negation(a: Part, s) -> Part:
    """¬a with values in the set ``s``: fibre Set(a_x, s), acting by precomposition.

    A df yields a dof and a dof yields a df.
    """
    from .fibrations import classify_part
    from .presheaf import Presheaf, elements

    s = tuple(sorted(s))
    cls = classify_part(a)
    pre = cls.contra or cls.co
    if pre is None:
        raise NotFibration("negation needs a discrete fibration or opfibration")
    _check_sizes(len(s), *(len(pre.fibre[x]) for x in pre.base.objects))
    fibre, names = {}, {}
    for x in pre.base.objects:
        fx = pre.fibre[x]
        fns = _functions(fx, s)
        names[x] = {h: fn_name(fx, h) for h in fns}
        fibre[x] = tuple(names[x].values())
    trans = {}
    for f in pre.base.arrow_ids:
        d, c = pre.domain_object(f), pre.codomain_object(f)
        m = pre.trans[f]
        # h: fibre(c) → S  ↦  h∘m : fibre(d) → S
        fc, fd = pre.fibre[c], pre.fibre[d]
        trans[f] = {
            names[c][h]: names[d][tuple(dict(zip(fc, h))[m[e]] for e in fd)] for h in names[c]
        }
    variance = "contra" if pre.variance == "co" else "co"
    return elements(Presheaf(pre.base, variance, fibre, trans))


def exp_mixed(a: Part, d: Part) -> Part:
    """a ⇒ d for a df ``a`` and dof ``d`` (or the mirror case).

    Fibre Set(a_x, d_x), transition h ↦ d(f)∘h∘a(f).
    """
    from .fibrations import classify_part
    from .presheaf import Presheaf, elements

    _same_base(a, d)
    ca, cd = classify_part(a), classify_part(d)
    if ca.contra is not None and cd.co is not None:
        pa, pd, variance = ca.contra, cd.co, "co"
    elif ca.co is not None and cd.contra is not None:
        pa, pd, variance = ca.co, cd.contra, "contra"
    else:
        raise NotFibration("exp_mixed needs a df and a dof")
    base = pa.base
    _check_sizes(*(len(pa.fibre[x]) for x in base.objects), *(len(pd.fibre[x]) for x in base.objects))
    fibre, names = {}, {}
    for x in base.objects:
        fns = _functions(pa.fibre[x], pd.fibre[x])
        names[x] = {h: fn_name(pa.fibre[x], h) for h in fns}
        fibre[x] = tuple(names[x].values())
    trans = {}
    for f in base.arrow_ids:
        # result variance decides direction: fibre(dd) → fibre(cc)
        src_obj = base.src(f) if variance == "co" else base.tgt(f)
        tgt_obj = base.tgt(f) if variance == "co" else base.src(f)
        af, df = pa.trans[f], pd.trans[f]  # af: A(tgt_obj) → A(src_obj); df: D(src_obj) → D(tgt_obj)
        fa_src = pa.fibre[src_obj]
        trans[f] = {}
        for h, name in names[src_obj].items():
            hm = dict(zip(fa_src, h))
            img = tuple(df[hm[af[e]]] for e in pa.fibre[tgt_obj])
            trans[f][name] = names[tgt_obj][img]
    return elements(Presheaf(base, variance, fibre, trans))


def factorization_lifting_failures(p: Part) -> list[tuple]:
    """Composable base pairs (g, f) at which p_g ⊗ p_f → p_{g∘f} is not bijective."""
    base, tp = p.base, p.total
    failures = []
    for (g, f), h in base.compose.items():
        y = base.tgt(f)
        over_g, over_f = p.arrows_over(g), p.arrows_over(f)
        pairs = [(v, u) for v in over_g for u in over_f if tp.src(v) == tp.tgt(u)]
        uf = UnionFind(pairs)
        vertical = p.arrows_over(base.identity[y])
        pair_set = set(pairs)
        for v, u in pairs:
            for w in vertical:
                # (v∘w, u') ~ (v, w∘u') whenever both are pairs
                if tp.tgt(w) == tp.src(v):
                    for u2 in over_f:
                        if tp.tgt(u2) == tp.src(w) and (tp.comp(w, u2) == u):
                            vw = tp.comp(v, w)
                            if (vw, u2) in pair_set:
                                uf.union((v, u), (vw, u2))
        classes = uf.groups()
        image = [tp.comp(c[0][0], c[0][1]) for c in classes]
        if sorted(image) != sorted(p.arrows_over(h)) or len(set(image)) != len(image):
            failures.append((g, f))
    return failures
