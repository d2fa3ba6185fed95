"""The two-valued case: preorders, sieves, cosieves and Alexandrov closures."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .errors import InvalidCategory, NotFibration, UnknownObject
from .fincat import FinCat, FinFunctor, preorder_category
from .parts import Part

SIEVE, COSIEVE, CLOPEN, NEITHER = "sieve", "cosieve", "clopen", "neither"
UP, DOWN = "up", "down"


@dataclass(frozen=True)
class Poset:
    """A finite preorder: ``leq`` holds the related pairs (x, y), read x ≤ y."""

    elements: tuple
    leq: frozenset

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "leq", frozenset(tuple(p) for p in self.leq))
        known = set(self.elements)
        for x, y in self.leq:
            if x not in known or y not in known:
                raise UnknownObject(f"pair ({x}, {y}) mentions an unknown element")
        for x in self.elements:
            if (x, x) not in self.leq:
                raise InvalidCategory(f"not reflexive at {x}")
        for x, y in self.leq:
            for z in self.elements:
                if (y, z) in self.leq and (x, z) not in self.leq:
                    raise InvalidCategory(f"not transitive: {x} ≤ {y} ≤ {z}")

    @classmethod
    def generated(cls, elements, pairs=()) -> "Poset":
        """The least preorder containing the given pairs."""
        elements = tuple(elements)
        rel = {(x, x) for x in elements} | {tuple(p) for p in pairs}
        for k in elements:
            for i in elements:
                if (i, k) in rel:
                    rel |= {(i, j) for j in elements if (k, j) in rel}
        return cls(elements, frozenset(rel))

    def le(self, x, y) -> bool:
        return (x, y) in self.leq

    def below(self, x) -> frozenset:
        return frozenset(y for y in self.elements if (y, x) in self.leq)

    def above(self, x) -> frozenset:
        return frozenset(y for y in self.elements if (x, y) in self.leq)

    def is_partial_order(self) -> bool:
        return all(x == y for x, y in self.leq if (y, x) in self.leq)

    def opposite(self) -> "Poset":
        return Poset(self.elements, frozenset((y, x) for x, y in self.leq))

    def subsets(self):
        for k in range(len(self.elements) + 1):
            for c in combinations(self.elements, k):
                yield frozenset(c)


def _subset(x: Poset, p) -> frozenset:
    p = frozenset(p)
    missing = p - set(x.elements)
    if missing:
        raise UnknownObject(f"not elements of the poset: {sorted(missing)}")
    return p


def is_sieve(x: Poset, p) -> bool:
    p = _subset(x, p)
    return all(x.below(a) <= p for a in p)


def is_cosieve(x: Poset, p) -> bool:
    p = _subset(x, p)
    return all(x.above(a) <= p for a in p)


def classify_subset(x: Poset, p) -> str:
    down, up = is_sieve(x, p), is_cosieve(x, p)
    if down and up:
        return CLOPEN
    return SIEVE if down else COSIEVE if up else NEITHER


def alexandrov_reflect(x: Poset, p, direction: str = UP) -> frozenset:
    """Least cosieve (up) or sieve (down) containing p."""
    p = _subset(x, p)
    if direction == UP:
        return frozenset(a for a in x.elements if x.below(a) & p)
    return frozenset(a for a in x.elements if x.above(a) & p)


def alexandrov_coreflect(x: Poset, p, direction: str = DOWN) -> frozenset:
    """Greatest sieve (down) or cosieve (up) inside p."""
    p = _subset(x, p)
    if direction == DOWN:
        return frozenset(a for a in x.elements if x.below(a) <= p)
    return frozenset(a for a in x.elements if x.above(a) <= p)


def pseudocomplement(x: Poset, p) -> frozenset:
    p = _subset(x, p)
    if classify_subset(x, p) == NEITHER:
        raise NotFibration("pseudocomplement needs a sieve or a cosieve")
    return frozenset(x.elements) - p


def meets(p, q) -> bool:
    return bool(frozenset(p) & frozenset(q))


def implication(x: Poset, a, d) -> frozenset:
    """A ⇒ D = D ∪ ¬A in the Boolean algebra of subsets."""
    return frozenset(d) | (frozenset(x.elements) - frozenset(a))


def is_strong(x: Poset) -> bool:
    """A ⇒ D is a cosieve and D ⇒ A a sieve for every sieve A and cosieve D."""
    sieves = [s for s in x.subsets() if is_sieve(x, s)]
    cosieves = [s for s in x.subsets() if is_cosieve(x, s)]
    return all(
        is_cosieve(x, implication(x, a, d)) and is_sieve(x, implication(x, d, a))
        for a in sieves
        for d in cosieves
    )


def is_atom(x: Poset, p) -> bool:
    """p meets exactly the subsets that contain it."""
    p = _subset(x, p)
    return bool(p) and all(meets(p, q) == (p <= q) for q in x.subsets())


def nonstrong_atoms(x: Poset) -> list[frozenset]:
    """Classes of two or more pairwise isomorphic elements (empty for a partial order)."""
    seen, out = set(), []
    for a in x.elements:
        if a in seen:
            continue
        cls = frozenset(b for b in x.elements if x.le(a, b) and x.le(b, a))
        seen |= cls
        if len(cls) > 1:
            out.append(cls)
    return out


# ------------------------------------------------------ categorical bridge


def to_fincat(x: Poset) -> FinCat:
    return preorder_category(x.elements, x.leq)


def subset_part(x: Poset, p, base: FinCat | None = None) -> Part:
    """The full subcategory on p, as a part of the preorder category."""
    p = _subset(x, p)
    base = base or to_fincat(x)
    members = [a for a in x.elements if a in p]
    sub = preorder_category(members, {(a, b) for a, b in x.leq if a in p and b in p})
    return Part(
        base, sub, FinFunctor(sub, base, {a: a for a in members}, {u: u for u in sub.arrow_ids})
    )


# ----------------------------------------------------------- enumeration


def _canonical(n: int, rel: frozenset) -> tuple:
    return min(
        tuple(sorted((perm[i], perm[j]) for i, j in rel)) for perm in permutations(range(n))
    )


def posets_up_to_iso(n: int) -> list[Poset]:
    """Partial orders on n elements up to isomorphism (n ≤ 6 is practical).

    Each is built by adding, one at a time, a new element whose strict down-set
    is a sieve of the previous order; every order arises this way along a linear
    extension.
    """
    layers = {frozenset()}
    for k in range(n):
        nxt = set()
        for rel in layers:
            prev = Poset(tuple(range(k)), rel | {(i, i) for i in range(k)})
            for s in prev.subsets():
                if is_sieve(prev, s):
                    new = set(prev.leq) | {(i, k) for i in s} | {(k, k)}
                    nxt.add(frozenset(new))
        layers = {frozenset(_canonical(k + 1, r)) for r in nxt}
    names = tuple(str(i) for i in range(n))
    return [
        Poset(names, frozenset((names[i], names[j]) for i, j in rel))
        for rel in sorted(layers, key=lambda r: sorted(r))
    ]
