"""Atoms, idempotents and the Karoubi envelope."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import NotEndo
from .fincat import FinCat, FinFunctor, validate_category
from .fibrations import classify_part
from .parts import Part, endo_part, hom_over, object_part, tensor
from .presheaf import (
    CO,
    CONTRA,
    NatTrans,
    Presheaf,
    constant,
    elements,
    find_iso,
    nat_transformations,
    representable,
)


def eventually_idempotent(c: FinCat, f) -> int | None:
    """Least n₀ with fⁿ = f^{n₀} for all n ≥ n₀ (n₀ ≥ 1), or None if the powers cycle."""
    if c.src(f) != c.tgt(f):
        raise NotEndo(f"{f} is not an endo-arrow")
    powers = [f]
    while True:
        nxt = c.comp(f, powers[-1])
        if nxt in powers:
            start = powers.index(nxt)
            period = len(powers) - start
            return start + 1 if period == 1 else None
        powers.append(nxt)


def idempotent_power(c: FinCat, f):
    """The idempotent power f^{n₀} of an eventually idempotent arrow."""
    n0 = eventually_idempotent(c, f)
    if n0 is None:
        raise NotEndo(f"{f} is not eventually idempotent")
    g = f
    for _ in range(n0 - 1):
        g = c.comp(f, g)
    return g


# ------------------------------------------------------------- atom check


@dataclass(frozen=True, eq=False)
class BiuniversalWitness:
    part: Part
    u: int
    pair: tuple
    checked_family: tuple


def idempotent_representable(x: FinCat, e, variance: str) -> Presheaf:
    """↑e (co): y ↦ {f: x → y | f∘e = f}; ↓e (contra): y ↦ {f: y → x | e∘f = f}."""
    obj = x.src(e)
    if variance == CO:
        fibre = {y: tuple(f for f in x.hom(obj, y) if x.comp(f, e) == f) for y in x.objects}
        trans = {g: {f: x.comp(g, f) for f in fibre[x.src(g)]} for g in x.arrow_ids}
    else:
        fibre = {y: tuple(f for f in x.hom(y, obj) if x.comp(e, f) == f) for y in x.objects}
        trans = {g: {f: x.comp(f, g) for f in fibre[x.tgt(g)]} for g in x.arrow_ids}
    return Presheaf(x, variance, fibre, trans)


def default_family(x: FinCat) -> list[tuple[str, Part]]:
    """Representables, retracts of representables and discretes of size ≤ 2."""
    fam = []
    for e in x.idempotents():
        for variance, arrow in ((CONTRA, "down"), (CO, "up")):
            fam.append((f"{arrow}({e})", elements(idempotent_representable(x, e, variance))))
    for n in range(3):
        fam.append((f"const({n})", elements(constant(x, tuple(str(i) for i in range(n))))))
    return fam


def _bijective_on(p: Part, u_pair: tuple, member: Part, cls) -> bool:
    l, r = u_pair
    if cls.is_df:
        ten = tensor(member, p)
        images = [ten.class_of(m.obj(l), r) for m in hom_over(p, member)]
        if len(images) != ten.size or len(set(images)) != len(images):
            return False
    if cls.is_dof:
        ten = tensor(p, member)
        images = [ten.class_of(l, m.obj(r)) for m in hom_over(p, member)]
        if len(images) != ten.size or len(set(images)) != len(images):
            return False
    return True


def atom_check(p: Part, family: list | None = None, only: int | None = None) -> BiuniversalWitness | None:
    """Search ten(p, p) for a class inducing hom(p, -) ≅ ten(-, p) on the family.

    Passing certifies bijectivity against the given family only. ``only``
    restricts the search to one class.
    """
    if family is None:
        family = default_family(p.base)
    members = [(name, m, classify_part(m)) for name, m in family]
    members = [(name, m, c) for name, m, c in members if c.kind != "neither"]
    ten = tensor(p, p)
    for i in range(ten.size) if only is None else (only,):
        pair = ten.rep_pair(i)
        if all(_bijective_on(p, pair, m, c) for _, m, c in members):
            return BiuniversalWitness(p, i, pair, tuple(name for name, _, _ in members))
    return None


def object_atoms(x: FinCat) -> list[Part]:
    return [object_part(x, o) for o in x.objects]


def idempotent_atoms(x: FinCat) -> list[Part]:
    return [endo_part(x, e) for e in x.idempotents() if not x.is_identity(e)]


# --------------------------------------------------------- Karoubi envelope


@dataclass(frozen=True, eq=False)
class KaroubiCat:
    """Objects are idempotents; ``idempotent[obj]`` is (base object, idempotent)."""

    category: FinCat
    idempotent: dict
    embedding: FinFunctor
    underlying: dict  # arrow id -> base arrow


def karoubi(x: FinCat) -> KaroubiCat:
    idem = x.idempotents()
    objects = list(idem)
    arrows, identity, under = [], {}, {}
    homs = {}
    for e in idem:
        for e2 in idem:
            fs = [
                f
                for f in x.hom(x.src(e), x.src(e2))
                if x.comp(f, e) == f and x.comp(e2, f) == f
            ]
            homs[e, e2] = fs
            for f in fs:
                name = f"{f}:{e}>{e2}"
                arrows.append((name, e, e2))
                under[name] = f
        identity[e] = f"{e}:{e}>{e}"
    table = {}
    for e in idem:
        for e2 in idem:
            for e3 in idem:
                for f in homs[e, e2]:
                    for g in homs[e2, e3]:
                        table[f"{g}:{e2}>{e3}", f"{f}:{e}>{e2}"] = f"{x.comp(g, f)}:{e}>{e3}"
    cat = validate_category(FinCat(tuple(objects), tuple(arrows), identity, table))
    emb = FinFunctor(
        x,
        cat,
        {o: x.identity[o] for o in x.objects},
        {f: f"{f}:{x.identity[s]}>{x.identity[t]}" for f, s, t in x.arrows},
    )
    return KaroubiCat(cat, {e: (x.src(e), e) for e in idem}, emb, under)


def splits(c: FinCat, e) -> tuple | None:
    """(y, r, i) with i∘r = e and r∘i = id_y, if the idempotent e splits."""
    x = c.src(e)
    for y in c.objects:
        for r in c.hom(x, y):
            for i in c.hom(y, x):
                if c.comp(i, r) == e and c.comp(r, i) == c.identity[y]:
                    return y, r, i
    return None


def is_equivalence(f: FinFunctor) -> bool:
    """Fully faithful and essentially surjective."""
    dom, cod = f.dom, f.cod
    for a in dom.objects:
        for b in dom.objects:
            image = [f(u) for u in dom.hom(a, b)]
            if len(set(image)) != len(image) or len(image) != len(cod.hom(f.obj(a), f.obj(b))):
                return False
    hit = set(f.obj_map.values())
    for y in cod.objects:
        if not any(_isomorphic_objects(cod, y, z) for z in hit):
            return False
    return True


def _isomorphic_objects(c: FinCat, a, b) -> bool:
    for u in c.hom(a, b):
        for v in c.hom(b, a):
            if c.comp(v, u) == c.identity[a] and c.comp(u, v) == c.identity[b]:
                return True
    return False


def extend_to_karoubi(a: Presheaf, k: KaroubiCat) -> Presheaf:
    """The presheaf on the Karoubi envelope with value at e the fixed set of a(e)."""
    fibre = {}
    for obj, (x, e) in k.idempotent.items():
        fibre[obj] = tuple(s for s in a.fibre[x] if a.trans[e][s] == s)
    trans = {}
    for phi, s, t in k.category.arrows:
        m = a.trans[k.underlying[phi]]
        start = s if a.variance == CO else t
        trans[phi] = {v: m[v] for v in fibre[start]}
    return Presheaf(k.category, a.variance, fibre, trans)


def retract_maps(x: FinCat, e) -> tuple[NatTrans, NatTrans]:
    """Inclusion ↑e → ↑x and retraction f ↦ f∘e, for x the object of e."""
    obj = x.src(e)
    upe, upx = idempotent_representable(x, e, CO), representable(x, obj, CO)
    inc = NatTrans(upe, upx, {y: {f: f for f in upe.fibre[y]} for y in x.objects})
    ret = NatTrans(upx, upe, {y: {f: x.comp(f, e) for f in upx.fibre[y]} for y in x.objects})
    return inc, ret


# ----------------------------------------------------------- duality sigma


@dataclass(frozen=True, eq=False)
class Duality:
    """σ[e, e'] maps each α: ↓e → ↓e' to the paired β: ↑e' → ↑e."""

    downs: dict
    ups: dict
    sigma: dict  # (e, e') -> {alpha key: beta}
    sources: dict  # (e, e') -> list of alpha

    def apply(self, e, e2, alpha: NatTrans) -> NatTrans:
        return self.sigma[e, e2][alpha.key()]


def duality_sigma(x: FinCat) -> Duality:
    """Pair hom(↓e, ↓e') with hom(↑e', ↑e) through the biuniversal elements.

    α and β are paired when [⟨α(e), e⟩] = [⟨e', β(e')⟩] in ten(↓e', ↑e).
    Raises AssertionError if some pairing is not a bijection.
    """
    idem = x.idempotents()
    downs = {e: idempotent_representable(x, e, CONTRA) for e in idem}
    ups = {e: idempotent_representable(x, e, CO) for e in idem}
    dparts = {e: elements(p) for e, p in downs.items()}
    uparts = {e: elements(p) for e, p in ups.items()}
    sigma, sources = {}, {}
    for e in idem:
        xe = x.src(e)
        for e2 in idem:
            xe2 = x.src(e2)
            ten = tensor(dparts[e2], uparts[e])
            alphas = nat_transformations(downs[e], downs[e2])
            betas = nat_transformations(ups[e2], ups[e])
            by_class = {}
            for b in betas:
                cls = ten.class_of(f"{xe2}.{e2}", f"{xe2}.{b.comp[xe2][e2]}")
                if cls in by_class:
                    raise AssertionError(f"pairing not injective for ({e}, {e2})")
                by_class[cls] = b
            table = {}
            for a in alphas:
                cls = ten.class_of(f"{xe}.{a.comp[xe][e]}", f"{xe}.{e}")
                if cls not in by_class:
                    raise AssertionError(f"no partner for a map ↓{e} → ↓{e2}")
                table[a.key()] = by_class[cls]
            if len(set(b.key() for b in table.values())) != len(betas):
                raise AssertionError(f"pairing not a bijection for ({e}, {e2})")
            sigma[e, e2] = table
            sources[e, e2] = alphas
    return Duality(downs, ups, sigma, sources)


def duality_functorial(d: Duality) -> bool:
    """σ(id) = id and σ(α'∘α) = σ(α)∘σ(α') over all composable pairs."""
    for e, down_e in d.downs.items():
        ident = {x: {s: s for s in down_e.fibre[x]} for x in down_e.base.objects}
        if d.apply(e, e, NatTrans(down_e, down_e, ident)).key() != NatTrans(d.ups[e], d.ups[e], {
            x: {s: s for s in d.ups[e].fibre[x]} for x in down_e.base.objects
        }).key():
            return False
    for (e, e2), alphas in d.sources.items():
        for e3 in d.downs:
            for a in alphas:
                for a2 in d.sources[e2, e3]:
                    lhs = d.apply(e, e3, a.then(a2))
                    rhs = d.apply(e2, e3, a2).then(d.apply(e, e2, a))
                    if lhs.key() != rhs.key():
                        return False
    return True


# ------------------------------------------------------- Isbell conjugation


def isbell_conjugate(a: Presheaf) -> Presheaf:
    """A* x = Nat(A, ↓x) for contravariant A; D# x = Nat(D, ↑x) for covariant D."""
    x = a.base
    variance = a.variance
    reps = {o: representable(x, o, variance) for o in x.objects}
    fibre, index, witness = {}, {}, {}
    for o in x.objects:
        nats = nat_transformations(a, reps[o])
        names = [f"{o}#{i}" for i in range(len(nats))]
        fibre[o] = tuple(names)
        index[o] = {n.key(): name for n, name in zip(nats, names)}
        witness.update(zip(names, nats))
    trans = {}
    for f, s, t in x.arrows:
        if variance == CONTRA:
            # ↓s → ↓t, h ↦ f∘h; result is covariant
            shift = NatTrans(reps[s], reps[t], {y: {h: x.comp(f, h) for h in reps[s].fibre[y]} for y in x.objects})
            trans[f] = {n: index[t][witness[n].then(shift).key()] for n in fibre[s]}
        else:
            # ↑t → ↑s, h ↦ h∘f; result is contravariant
            shift = NatTrans(reps[t], reps[s], {y: {h: x.comp(h, f) for h in reps[t].fibre[y]} for y in x.objects})
            trans[f] = {n: index[s][witness[n].then(shift).key()] for n in fibre[t]}
    return Presheaf(x, CO if variance == CONTRA else CONTRA, fibre, trans)


def is_dedekind_cut(a: Presheaf, d: Presheaf) -> bool:
    """A ≅ D# and D ≅ A*."""
    if a.variance != CONTRA or d.variance != CO:
        return False
    return find_iso(a, isbell_conjugate(d)) is not None and find_iso(d, isbell_conjugate(a)) is not None


def evaluate_at_atom(e, d: Presheaf) -> tuple:
    """The elements of d at the object of the idempotent e that d(e) fixes."""
    x = d.base.src(e)
    return tuple(s for s in d.fibre[x] if d.trans[e][s] == s)


def atom_reflection(x: FinCat, f, side: str = "closed") -> Presheaf:
    """↑ or ↓ of an eventually idempotent part, via its idempotent power."""
    e = idempotent_power(x, f)
    return idempotent_representable(x, e, CO if side == "closed" else CONTRA)


__all__ = [
    "BiuniversalWitness",
    "Duality",
    "KaroubiCat",
    "atom_check",
    "atom_reflection",
    "default_family",
    "duality_functorial",
    "duality_sigma",
    "evaluate_at_atom",
    "eventually_idempotent",
    "extend_to_karoubi",
    "idempotent_atoms",
    "idempotent_power",
    "idempotent_representable",
    "is_dedekind_cut",
    "is_equivalence",
    "isbell_conjugate",
    "karoubi",
    "object_atoms",
    "retract_maps",
    "splits",
]
