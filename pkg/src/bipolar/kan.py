"""Continuous maps induced by functors: substitution, Kan extensions, Frobenius."""
from __future__ import annotations

from dataclasses import dataclass

from .atoms import BiuniversalWitness, KaroubiCat, atom_check, karoubi
from .errors import BaseMismatch
from .fincat import FinFunctor, components, validate_functor
from .parts import (
    Part,
    PartMorphism,
    fibre_product_with_projections,
    pair_morphisms,
    pullback,
    pushforward,
    tensor,
)
from .presheaf import (
    CO,
    CONTRA,
    NatTrans,
    Presheaf,
    element_arrows,
    element_objects,
    elements,
    flip,
    nat_transformations,
    representable,
)


def substitute(f: FinFunctor, d: Presheaf) -> Presheaf:
    """f*D: x ↦ D(fx)."""
    if d.base != f.cod:
        raise BaseMismatch("presheaf is not over the functor's codomain")
    fibre = {x: d.fibre[f.obj(x)] for x in f.dom.objects}
    trans = {k: d.trans[f(k)] for k in f.dom.arrow_ids}
    return Presheaf(f.dom, d.variance, fibre, trans)


def _shift_part(pre_from: Presheaf, pre_to: Presheaf, move) -> PartMorphism:
    """The morphism of element parts induced by an elementwise map ``move``."""
    src, tgt = elements(pre_from), elements(pre_to)
    omap = {o: f"{x}.{move(s)}" for x, s, o in element_objects(pre_from)}
    amap = {u: f"{k}@{move(s)}" for k, s, u in element_arrows(pre_from)}
    return PartMorphism(src, tgt, FinFunctor(src.total, tgt.total, omap, amap))


def lan(f: FinFunctor, d: Presheaf) -> Presheaf:
    """Left Kan extension: (∃_f D)y = ten_X(f*↓y, D)."""
    if d.variance == CONTRA:
        return flip(lan(f.op(), flip(d)))
    if d.base != f.dom:
        raise BaseMismatch("presheaf is not over the functor's domain")
    y_cat = f.cod
    dpart = elements(d)
    pulled = {y: substitute(f, representable(y_cat, y, CONTRA)) for y in y_cat.objects}
    tens = {y: tensor(elements(pulled[y]), dpart) for y in y_cat.objects}
    names = {}
    for y, ten in tens.items():
        names[y] = [f"{y}<{ten.rep_pair(i)[0]}*{ten.rep_pair(i)[1]}>" for i in range(ten.size)]
    trans = {}
    for h, y, y2 in y_cat.arrows:
        move = _shift_part(pulled[y], pulled[y2], lambda g, h=h: y_cat.comp(h, g))
        src, tgt = tens[y], tens[y2]
        images = [
            tgt.class_of(move.obj(src.rep_pair(i)[0]), src.rep_pair(i)[1]) for i in range(src.size)
        ]
        trans[h] = {names[y][i]: names[y2][j] for i, j in enumerate(images)}
    return Presheaf(y_cat, CO, {y: tuple(v) for y, v in names.items()}, trans)


def ran(f: FinFunctor, d: Presheaf) -> Presheaf:
    """Right Kan extension: (∀_f D)y = hom_X(f*↑y, D).

    Maps of discrete opfibrations over X are exactly natural transformations,
    so the hom is enumerated at the presheaf level.
    """
    if d.variance == CONTRA:
        return flip(ran(f.op(), flip(d)))
    if d.base != f.dom:
        raise BaseMismatch("presheaf is not over the functor's domain")
    y_cat = f.cod
    pulled = {y: substitute(f, representable(y_cat, y, CO)) for y in y_cat.objects}
    fibre, index, witness = {}, {}, {}
    for y in y_cat.objects:
        nats = nat_transformations(pulled[y], d)
        names = [f"{y}#{i}" for i in range(len(nats))]
        fibre[y] = tuple(names)
        index[y] = {n.key(): name for n, name in zip(nats, names)}
        witness.update(zip(names, nats))
    trans = {}
    for h, y, y2 in y_cat.arrows:
        # ↑y2 → ↑y by g ↦ g∘h, pulled back along f
        shift = NatTrans(
            pulled[y2],
            pulled[y],
            {x: {g: y_cat.comp(g, h) for g in pulled[y2].fibre[x]} for x in f.dom.objects},
        )
        trans[h] = {n: index[y2][shift.then(witness[n]).key()] for n in fibre[y]}
    return Presheaf(y_cat, CO, fibre, trans)


# --------------------------------------------------------------- Frobenius


def counit(f: FinFunctor, q: Part) -> PartMorphism:
    """ε_Q: f_! f* Q → Q, projecting pullback pairs to their second component."""
    fq = pushforward(f, pullback(f, q))
    x = f.dom
    omap = {f"({a},{b})": b for a in x.objects for b in q.over(f.obj(a))}
    amap = {f"({k},{v})": v for k in x.arrow_ids for v in q.arrows_over(f(k))}
    return PartMorphism(fq, q, FinFunctor(fq.total, q.total, omap, amap))


def push_morphism(f: FinFunctor, m: PartMorphism) -> PartMorphism:
    """f_! on morphisms: the same functor between totals."""
    return PartMorphism(pushforward(f, m.dom), pushforward(f, m.cod), m.carrier)


@dataclass(frozen=True, eq=False)
class FrobeniusResult:
    phi: PartMorphism
    iso: bool

    def __bool__(self):
        return self.iso


def frobenius_check(f: FinFunctor, p: Part, q: Part) -> FrobeniusResult:
    """Build Φ = f_!π₁ ∧ (ε_Q ∘ f_!π₂): f_!(P × f*Q) → f_!P × Q and test invertibility."""
    if p.base != f.dom or q.base != f.cod:
        raise BaseMismatch("parts do not match the functor")
    left = fibre_product_with_projections(p, pullback(f, q))
    right = fibre_product_with_projections(pushforward(f, p), q)
    pi1 = push_morphism(f, left.left)
    pi2 = push_morphism(f, left.right).then(counit(f, q))
    phi = pair_morphisms(pi1, pi2, right)
    return FrobeniusResult(phi, phi.is_iso())


def component_map(f: FinFunctor, p: Part) -> dict:
    """Λ: each component of P to the component of f_!P containing it."""
    before = components(p.total)
    after = components(pushforward(f, p).total)
    return {i: after.index(before.rep(i)) for i in range(len(before))}


# ------------------------------------------------------------------- atoms


def pushforward_atom(f: FinFunctor, w: BiuniversalWitness, family=None) -> BiuniversalWitness | None:
    """fu: the class of u's representative pair in ten(f_!x, f_!x), checked for biuniversality."""
    fp = pushforward(f, w.part)
    ten = tensor(fp, fp)
    cls = ten.class_of(*w.pair)
    return atom_check(fp, family, only=cls)


def base_map(f: FinFunctor, source: KaroubiCat | None = None, target: KaroubiCat | None = None) -> FinFunctor:
    """The functor on Karoubi envelopes: e ↦ f(e), (g: e → e') ↦ f(g)."""
    source = source or karoubi(f.dom)
    target = target or karoubi(f.cod)
    omap = {e: f(e) for e in source.category.objects}
    amap = {}
    for a, e, e2 in source.category.arrows:
        amap[a] = f"{f(source.underlying[a])}:{f(e)}>{f(e2)}"
    return validate_functor(FinFunctor(source.category, target.category, omap, amap))
