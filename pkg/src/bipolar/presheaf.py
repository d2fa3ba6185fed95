"""Set-valued functors on a finite base, their maps and categories of elements."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Mapping

from .errors import BaseMismatch, InvalidPresheaf, NotNatural
from .fincat import FinCat, FinFunctor
from .parts import Part

CO, CONTRA = "co", "contra"


@dataclass(frozen=True, eq=False)
class Presheaf:
    """Fibres over each object plus a transition map for each arrow.

    For ``co`` an arrow f: x → y acts fibre(x) → fibre(y); for ``contra`` it acts
    fibre(y) → fibre(x). Identity transitions may be omitted.
    """

    base: FinCat
    variance: str
    fibre: Mapping
    trans: Mapping

    def __post_init__(self):
        if self.variance not in (CO, CONTRA):
            raise InvalidPresheaf(f"unknown variance {self.variance!r}")
        fibre = {x: tuple(sorted(self.fibre.get(x, ()))) for x in self.base.objects}
        trans = {f: dict(m) for f, m in self.trans.items()}
        for x in self.base.objects:
            trans.setdefault(self.base.identity[x], {s: s for s in fibre[x]})
        object.__setattr__(self, "fibre", fibre)
        object.__setattr__(self, "trans", trans)

    def __eq__(self, other):
        return isinstance(other, Presheaf) and (
            self.base == other.base
            and self.variance == other.variance
            and self.fibre == other.fibre
            and self.trans == other.trans
        )

    def __hash__(self):
        return hash((self.variance, tuple(self.fibre.items())))

    def __repr__(self):
        return f"Presheaf({self.variance}, sizes={self.sizes()})"

    def sizes(self) -> tuple:
        return tuple(len(self.fibre[x]) for x in self.base.objects)

    def domain_object(self, f):
        """The object whose fibre the transition of f starts from."""
        return self.base.src(f) if self.variance == CO else self.base.tgt(f)

    def codomain_object(self, f):
        return self.base.tgt(f) if self.variance == CO else self.base.src(f)

    def act(self, f, s):
        return self.trans[f][s]


def validate_presheaf(p: Presheaf) -> Presheaf:
    base = p.base
    for f in base.arrow_ids:
        if f not in p.trans:
            raise InvalidPresheaf(f"missing transition for {f}")
        m, d, c = p.trans[f], p.domain_object(f), p.codomain_object(f)
        if set(m) != set(p.fibre[d]) or not set(m.values()) <= set(p.fibre[c]):
            raise InvalidPresheaf(f"transition of {f} has wrong domain or codomain")
    for x in base.objects:
        m = p.trans[base.identity[x]]
        if any(m[s] != s for s in p.fibre[x]):
            raise InvalidPresheaf(f"identity at {x} does not act trivially")
    for (g, f), h in base.compose.items():
        first, second = (f, g) if p.variance == CO else (g, f)
        mf, mg, mh = p.trans[first], p.trans[second], p.trans[h]
        if any(mg[mf[s]] != mh[s] for s in mh):
            raise InvalidPresheaf(f"composition {g}∘{f} not respected")
    return p


def flip(p: Presheaf) -> Presheaf:
    """The same data read as a presheaf of the other variance on the opposite base."""
    return Presheaf(p.base.op(), CONTRA if p.variance == CO else CO, p.fibre, p.trans)


# ---------------------------------------------------------------- builders


def representable(x: FinCat, obj, variance: str) -> Presheaf:
    """``contra``: X(-, obj) (written ↓obj); ``co``: X(obj, -) (written ↑obj)."""
    x.check_object(obj)
    if variance == CONTRA:
        fibre = {y: x.hom(y, obj) for y in x.objects}
        trans = {f: {h: x.comp(h, f) for h in fibre[x.tgt(f)]} for f in x.arrow_ids}
    else:
        fibre = {y: x.hom(obj, y) for y in x.objects}
        trans = {f: {h: x.comp(f, h) for h in fibre[x.src(f)]} for f in x.arrow_ids}
    return Presheaf(x, variance, fibre, trans)


def down(x: FinCat, obj) -> Presheaf:
    return representable(x, obj, CONTRA)


def up(x: FinCat, obj) -> Presheaf:
    return representable(x, obj, CO)


def constant(x: FinCat, s, variance: str = CO) -> Presheaf:
    s = tuple(sorted(s))
    return Presheaf(
        x, variance, {y: s for y in x.objects}, {f: {e: e for e in s} for f in x.arrow_ids}
    )


def terminal(x: FinCat, variance: str = CO) -> Presheaf:
    return constant(x, ("*",), variance)


def empty(x: FinCat, variance: str = CO) -> Presheaf:
    return constant(x, (), variance)


# -------------------------------------------------------------- elements


def elements(p: Presheaf) -> Part:
    """The category of elements, as a part over the base.

    Element s of fibre(x) is the object ``x.s``; the lift of f at s is ``f@s``,
    where s sits in the fibre the transition of f starts from.
    """
    base = p.base
    objects, identity, omap = [], {}, {}
    for x in base.objects:
        for s in p.fibre[x]:
            name = f"{x}.{s}"
            objects.append(name)
            identity[name] = f"{base.identity[x]}@{s}"
            omap[name] = x
    arrows, amap, info = [], {}, {}
    co = p.variance == CO
    for f in base.arrow_ids:
        d, c = p.domain_object(f), p.codomain_object(f)
        for s, t in p.trans[f].items():
            name = f"{f}@{s}"
            if co:
                arrows.append((name, f"{d}.{s}", f"{c}.{t}"))
            else:
                arrows.append((name, f"{c}.{t}", f"{d}.{s}"))
            amap[name] = f
            info[name] = (f, s)
    src = {a: s for a, s, _ in arrows}
    out = defaultdict(list)
    for a in info:
        out[src[a]].append(a)
    table = {}
    tgt = {a: t for a, _, t in arrows}
    for h in info:
        for g in out[tgt[h]]:
            (f1, s1), (f2, s2) = info[h], info[g]
            gf = base.comp(f2, f1)
            table[g, h] = f"{gf}@{s1 if co else s2}"
    total = FinCat(tuple(objects), tuple(arrows), identity, table)
    return Part(base, total, FinFunctor(total, base, omap, amap))


def element_objects(p: Presheaf):
    """Yield (x, s, object id) for every element of the category of elements."""
    for x in p.base.objects:
        for s in p.fibre[x]:
            yield x, s, f"{x}.{s}"


def element_arrows(p: Presheaf):
    """Yield (f, s, arrow id) where s is the element the lift of f is attached to."""
    for f in p.base.arrow_ids:
        for s in p.trans[f]:
            yield f, s, f"{f}@{s}"


# ---------------------------------------------------- natural transformations


@dataclass(frozen=True, eq=False)
class NatTrans:
    src: Presheaf
    tgt: Presheaf
    comp: Mapping  # object -> {element of src fibre: element of tgt fibre}

    def __post_init__(self):
        object.__setattr__(self, "comp", {x: dict(m) for x, m in self.comp.items()})

    def key(self) -> tuple:
        return tuple((x, tuple(sorted(self.comp[x].items()))) for x in self.src.base.objects)

    def __eq__(self, other):
        return isinstance(other, NatTrans) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"NatTrans({self.comp!r})"

    def then(self, other: "NatTrans") -> "NatTrans":
        return NatTrans(
            self.src,
            other.tgt,
            {x: {s: other.comp[x][t] for s, t in m.items()} for x, m in self.comp.items()},
        )

    def is_iso(self) -> bool:
        return all(
            len(set(m.values())) == len(m) == len(self.tgt.fibre[x]) for x, m in self.comp.items()
        )


def identity_nat(p: Presheaf) -> NatTrans:
    return NatTrans(p, p, {x: {s: s for s in p.fibre[x]} for x in p.base.objects})


def check_natural(alpha: NatTrans) -> NatTrans:
    """Return alpha, or raise NotNatural naming an arrow whose square fails."""
    a, b = alpha.src, alpha.tgt
    for f in a.base.arrow_ids:
        d, c = a.domain_object(f), a.codomain_object(f)
        for s in a.fibre[d]:
            if b.trans[f][alpha.comp[d][s]] != alpha.comp[c][a.trans[f][s]]:
                raise NotNatural(f)
    return alpha


def _compatible(a: Presheaf, b: Presheaf) -> None:
    if a.base != b.base or a.variance != b.variance:
        raise BaseMismatch("presheaves differ in base or variance")


def iter_nat(a: Presheaf, b: Presheaf, bijective: bool = False) -> Iterator[NatTrans]:
    """All natural transformations a → b (only the isomorphisms if ``bijective``).

    Elements are assigned one at a time; each choice is pushed along every arrow,
    so only choices for elements not reached from earlier ones are branched on.
    """
    _compatible(a, b)
    base = a.base
    if bijective and a.sizes() != b.sizes():
        return
    moves = defaultdict(list)
    for f in base.non_identity_arrows():
        moves[a.domain_object(f)].append((f, a.codomain_object(f)))
    todo = [(x, s) for x in base.objects for s in a.fibre[x]]
    comp = {x: {} for x in base.objects}
    used = {x: set() for x in base.objects}

    def assign(x, s, t, trail) -> bool:
        stack = [(x, s, t)]
        while stack:
            x, s, t = stack.pop()
            have = comp[x].get(s)
            if have is not None:
                if have != t:
                    return False
                continue
            if bijective:
                if t in used[x]:
                    return False
                used[x].add(t)
            comp[x][s] = t
            trail.append((x, s, t))
            for f, c in moves[x]:
                stack.append((c, a.trans[f][s], b.trans[f][t]))
        return True

    def undo(trail):
        for x, s, t in trail:
            del comp[x][s]
            used[x].discard(t)

    def go(i):
        while i < len(todo) and todo[i][1] in comp[todo[i][0]]:
            i += 1
        if i == len(todo):
            yield NatTrans(a, b, {x: dict(m) for x, m in comp.items()})
            return
        x, s = todo[i]
        for t in b.fibre[x]:
            trail = []
            if assign(x, s, t, trail):
                yield from go(i + 1)
            undo(trail)

    yield from go(0)


def nat_transformations(a: Presheaf, b: Presheaf) -> list[NatTrans]:
    return list(iter_nat(a, b))


def count_nat(a: Presheaf, b: Presheaf) -> int:
    return sum(1 for _ in iter_nat(a, b))


def find_iso(a: Presheaf, b: Presheaf) -> NatTrans | None:
    if a.base != b.base or a.variance != b.variance or a.sizes() != b.sizes():
        return None
    return next(iter_nat(a, b, bijective=True), None)


def isomorphic(a: Presheaf, b: Presheaf) -> bool:
    return find_iso(a, b) is not None


# ------------------------------------------------------------ enumeration


def iter_presheaves(x: FinCat, max_fibre: int, variance: str = CO) -> Iterator[Presheaf]:
    """Every presheaf with fibres {"0", ..., "n-1"}, n ≤ max_fibre (labelled)."""
    gens = x.non_identity_arrows()
    triples = defaultdict(list)
    for (g, f), h in x.compose.items():
        if x.is_identity(g) or x.is_identity(f):
            continue
        for a in {g, f, h}:
            if not x.is_identity(a):
                triples[a].append((g, f, h))
    for sizes in product(range(max_fibre + 1), repeat=len(x.objects)):
        fibre = {o: tuple(str(i) for i in range(n)) for o, n in zip(x.objects, sizes)}
        trans: dict = {}

        def dom_cod(f):
            if variance == CO:
                return x.src(f), x.tgt(f)
            return x.tgt(f), x.src(f)

        def get(a):
            if a in trans:
                return trans[a]
            if x.is_identity(a):
                return {s: s for s in fibre[x.src(a)]}
            return None

        def ok(a):
            for g, f, h in triples[a]:
                mg, mf, mh = get(g), get(f), get(h)
                if mg is None or mf is None or mh is None:
                    continue
                first, second = (mf, mg) if variance == CO else (mg, mf)
                if any(second[first[s]] != mh[s] for s in mh):
                    return False
            return True

        def go(i):
            if i == len(gens):
                yield Presheaf(x, variance, fibre, {k: dict(v) for k, v in trans.items()})
                return
            f = gens[i]
            d, c = dom_cod(f)
            for img in product(fibre[c], repeat=len(fibre[d])):
                trans[f] = dict(zip(fibre[d], img))
                if ok(f):
                    yield from go(i + 1)
            trans.pop(f, None)

        yield from go(0)


def presheaves_up_to_iso(x: FinCat, max_fibre: int, variance: str = CO) -> list[Presheaf]:
    """One representative per isomorphism class of presheaves with small fibres."""
    buckets = defaultdict(list)
    out = []
    for p in iter_presheaves(x, max_fibre, variance):
        sig = _signature(p)
        if any(isomorphic(p, q) for q in buckets[sig]):
            continue
        buckets[sig].append(p)
        out.append(p)
    return out


def _signature(p: Presheaf) -> tuple:
    sig = [p.sizes()]
    for f in p.base.non_identity_arrows():
        m = p.trans[f]
        sig.append(len(set(m.values())))
        if p.base.src(f) == p.base.tgt(f):
            sig.append(sum(1 for s, t in m.items() if s == t))
    return tuple(sig)
