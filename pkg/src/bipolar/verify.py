"""Property suites and acceptance checks over the bundled catalog.

Every check returns a ``Check`` whose ``line()`` is a machine-readable
``PASS name :: detail`` or ``FAIL name :: detail``. Checks never raise: an
exception inside a check is reported as a failure.
"""
from __future__ import annotations

import time
from collections import Counter
from itertools import combinations, product
from math import gcd

from .atoms import (
    atom_check,
    duality_functorial,
    duality_sigma,
    evaluate_at_atom,
    extend_to_karoubi,
    idempotent_atoms,
    idempotent_representable,
    is_dedekind_cut,
    karoubi,
    object_atoms,
    retract_maps,
    splits,
)
from .catalog import CORE_BASES, load_catalog
from .errors import UncountableChains
from .fibrations import (
    CLOSED,
    OPEN,
    Check,
    classify_part,
    clopen_coreflect,
    clopen_reflect,
    contrapose,
    contrapose_inverse,
    coreflect,
    coreflection_restrict,
    coreflection_transpose,
    groupoid_reflection,
    reflect,
    reflection_restrict,
    reflection_transpose,
)
from .fincat import (
    FinGraph,
    components,
    discrete_quotient,
    enumerate_functors,
    free_category,
    identity_functor,
    loop_graph,
    star_graph,
    validate_category,
)
from .graphspace import (
    BIFUNCTIONAL,
    LEFT_FUNCTIONAL,
    RIGHT_FUNCTIONAL,
    CycleSum,
    SymbolicEndomap,
    chain_endomap,
    chains,
    classify_graph_part,
    cycle_pairing,
    cycle_sum_of,
    endomap_of,
    endomap_signature,
    graph_space_bridge,
    is_comapping,
    loop_reflect,
    over_arrow,
    truncation_depth,
    zn_transfer,
)
from .kan import base_map, component_map, frobenius_check, lan, ran, substitute
from .oracles import (
    colimit_presheaf,
    endomap_tensor_count,
    free_endomap_shape,
    graph_product_cycles,
    greatest_open_subset,
    least_closed_superset,
    limit_presheaf,
    permutation_transfer,
)
from .parts import (
    count_hom,
    exp_mixed,
    factorization_lifting_failures,
    fibre_product,
    hom_over,
    identity_part,
    negation,
    object_part,
    pushforward,
    sum_parts,
    tensor,
    tensor_map,
)
from .presheaf import (
    CO,
    CONTRA,
    constant,
    count_nat,
    elements,
    identity_nat,
    isomorphic,
    nat_transformations,
    presheaves_up_to_iso,
    representable,
)
from .twoval import (
    DOWN,
    UP,
    alexandrov_coreflect,
    alexandrov_reflect,
    classify_subset,
    is_atom,
    is_cosieve,
    is_sieve,
    meets,
    posets_up_to_iso,
    pseudocomplement,
    subset_part,
    to_fincat,
)


class Tally:
    """Counts cases and keeps the first few failures."""

    def __init__(self, name: str, keep: int = 3):
        self.name, self.keep = name, keep
        self.cases, self.failed, self.notes = 0, 0, []
        self.started = time.perf_counter()

    def expect(self, ok, what) -> bool:
        self.cases += 1
        if not ok:
            self.failed += 1
            if len(self.notes) < self.keep:
                self.notes.append(str(what))
        return bool(ok)

    def check(self) -> Check:
        secs = time.perf_counter() - self.started
        if self.failed:
            detail = f"{self.failed}/{self.cases} cases failed in {secs:.2f}s; " + "; ".join(self.notes)
        else:
            detail = f"{self.cases} cases in {secs:.2f}s"
        return Check(self.name, not self.failed and self.cases > 0, detail)


def guarded(name: str, fn, *args, **kwargs) -> Check:
    """Run a check function, turning an unexpected exception into a failure."""
    started = time.perf_counter()
    try:
        return fn(*args, **kwargs)
    except Exception as e:  # noqa: BLE001 - reported, not swallowed
        secs = time.perf_counter() - started
        return Check(name, False, f"{type(e).__name__}: {e} after {secs:.2f}s")


# ------------------------------------------------------------ shared data

_memo: dict = {}


def _cached(key, build):
    if key not in _memo:
        _memo[key] = build()
    return _memo[key]


def base(name: str):
    return load_catalog().bases[name]


def catalog_presheaves(x, max_fibre: int, variance: str) -> list:
    return _cached(("pre", id(x), max_fibre, variance), lambda: (x, presheaves_up_to_iso(x, max_fibre, variance)))[1]


def catalog_parts(x) -> list:
    from .catalog import catalog_parts as parts

    return _cached(("parts", id(x)), lambda: (x, parts(x)))[1]


def fibrations(x, max_fibre: int, side: str) -> list:
    """Element parts of presheaves up to iso: dofs on the closed side, dfs on the open side."""
    variance = CO if side == CLOSED else CONTRA
    return _cached(
        ("fib", id(x), max_fibre, side),
        lambda: (x, [elements(p) for p in catalog_presheaves(x, max_fibre, variance)]),
    )[1]


def _support(pre) -> frozenset:
    return frozenset(o for o in pre.base.objects if pre.fibre[o])


# ------------------------------------------------------ acceptance criteria


def _propagated_hom_count(src: dict, tgt: dict) -> int:
    """Endomap morphisms, choosing one image per source component and propagating."""
    count_total = 1
    seen = set()
    for start in src:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        m = src[start]
        while m not in seen:
            comp.append(m)
            seen.add(m)
            m = src[m]
        good = 0
        for t in tgt:
            image, ok, a, b = {}, True, start, t
            while a not in image:
                image[a] = b
                a, b = src[a], tgt[b]
            ok = image[a] == b
            good += ok
        count_total *= good
    return count_total


def criterion_cycle_algebra() -> Check:
    t = Tally("acceptance.1 cycle-algebra")
    for n, k in product(range(1, 13), repeat=2):
        g, l = gcd(n, k), n * k // gcd(n, k)
        pair = cycle_pairing(CycleSum.single(n), CycleSum.single(k))
        a, b = CycleSum.single(n).to_endomap(), CycleSum.single(k).to_endomap()
        t.expect(pair.ten == g == endomap_tensor_count(a, b), f"ten(L{n},L{k})")
        t.expect(pair.product == CycleSum({l: g}), f"L{n}×L{k} = {pair.product}")
        t.expect(Counter({l: g}) == graph_product_cycles(n, k), f"product walk L{n}×L{k}")
        want = k if n % k == 0 else 0
        t.expect(pair.hom == want == _propagated_hom_count(a, b), f"hom(L{n},L{k}) = {pair.hom}")
    return t.check()


def criterion_zn_transfer() -> Check:
    t = Tally("acceptance.2 cyclic-transfer")
    for r in range(9):
        for support in combinations(range(1, 9), r):
            a = CycleSum({k: 1 for k in support})
            succ = a.to_endomap()
            for n in range(1, 9):
                for direction in ("coreflect", "reflect"):
                    want = cycle_sum_of(permutation_transfer(succ, n, direction))
                    got = zn_transfer(a, n, direction)
                    t.expect(got == want, f"{direction} {a.mult} n={n}: {got.mult} vs {want.mult}")
    return t.check()


def _multiple(succ: dict, n: int) -> dict:
    return {f"{i}/{k}": f"{i}/{v}" for i in range(n) for k, v in succ.items()}


def criterion_graph_examples() -> Check:
    t = Tally("acceptance.3 graph-examples")
    graphs = load_catalog().graphs
    for n in range(1, 6):
        g = graphs[f"C{n}"]
        t.expect(chains(g).lassos == (), f"C{n} has chains")
        t.expect(loop_reflect(g) == SymbolicEndomap({}, 1), f"cochains of C{n}")
        t.expect(free_endomap_shape(g) == ({}, 1), f"oracle for C{n}")
    s1 = endomap_of(graphs["S1"])
    for n in range(1, 4):
        g = graphs[f"S{n}"]
        t.expect(loop_reflect(g) == SymbolicEndomap(s1, 0), f"cochains of S{n}")
        cs = chains(g)
        t.expect(len(cs.lassos) == 2 * n, f"S{n} has {len(cs.lassos)} chains")
        t.expect(
            endomap_signature(chain_endomap(cs)) == endomap_signature(_multiple(s1, n)),
            f"chains of S{n} are not {n}·S1",
        )
    for loops in range(2, 5):
        g = loop_graph(loops)
        try:
            chains(g)
            t.expect(False, f"{loops} loops gave countably many chains")
        except UncountableChains:
            t.expect(True, "")
        t.expect(loop_reflect(g) == SymbolicEndomap({"*": "*"}, 0), f"cochains of {loops} loops")
    return t.check()


def _reflection_cases(t: Tally, p, d, side: str, label: str):
    res = reflect(p, side)
    forward = hom_over(p, d)
    back = hom_over(res.part, d)
    t.expect(len(forward) == len(back), f"{label}: |hom(P,D)|={len(forward)} |hom(rP,D)|={len(back)}")
    for phi in forward:
        psi = reflection_transpose(res, phi)
        t.expect(psi.commutes() and reflection_restrict(res, psi) == phi, f"{label}: transpose then restrict")
    for alpha in back:
        t.expect(reflection_transpose(res, reflection_restrict(res, alpha)) == alpha, f"{label}: restrict then transpose")


def _coreflection_cases(t: Tally, p, d, side: str, label: str):
    res = coreflect(p, side)
    forward = hom_over(d, p)
    back = hom_over(d, res.part)
    t.expect(len(forward) == len(back), f"{label}: |hom(D,P)|={len(forward)} |hom(D,Pr)|={len(back)}")
    for phi in forward:
        psi = coreflection_transpose(res, phi)
        t.expect(psi.commutes() and coreflection_restrict(res, psi) == phi, f"{label}: transpose then restrict")
    for alpha in back:
        t.expect(
            coreflection_transpose(res, coreflection_restrict(res, alpha)) == alpha,
            f"{label}: restrict then transpose",
        )


def criterion_reflection_adjunctions(bases=CORE_BASES, max_fibre: int = 2) -> Check:
    t = Tally("acceptance.4 reflection-adjunctions")
    for name in bases:
        x = base(name)
        for side in (CLOSED, OPEN):
            ds = fibrations(x, max_fibre, side)
            for pname, p in catalog_parts(x):
                for i, d in enumerate(ds):
                    label = f"{name} {side} {pname} D{i}"
                    _reflection_cases(t, p, d, side, label)
                    _coreflection_cases(t, p, d, side, label)
    return t.check()


def criterion_coadjunction_yoneda(bases=CORE_BASES, max_fibre: int = 2) -> Check:
    t = Tally("acceptance.5 coadjunction-yoneda")
    for name in bases:
        x = base(name)
        parts = catalog_parts(x)
        downs = {pn: reflect(p, OPEN).part for pn, p in parts}
        ups = {pn: reflect(p, CLOSED).part for pn, p in parts}
        for (pn, p), (qn, q) in product(parts, repeat=2):
            left, right = tensor(downs[pn], q).size, tensor(p, ups[qn]).size
            t.expect(left == right, f"{name}: ten(↓{pn},{qn})={left} ten({pn},↑{qn})={right}")
        for o in x.objects:
            up_x = elements(representable(x, o, CO))
            down_x = elements(representable(x, o, CONTRA))
            for pre in catalog_presheaves(x, max_fibre, CONTRA):
                a = elements(pre)
                size = len(pre.fibre[o])
                t.expect(tensor(a, up_x).size == size == count_hom(down_x, a), f"{name}: df at {o}")
            for pre in catalog_presheaves(x, max_fibre, CO):
                d = elements(pre)
                size = len(pre.fibre[o])
                t.expect(tensor(down_x, d).size == size == count_hom(up_x, d), f"{name}: dof at {o}")
    return t.check()


def criterion_contraposition(bases=CORE_BASES, max_fibre: int = 2) -> Check:
    t = Tally("acceptance.6 contraposition")
    for name in bases:
        x = base(name)
        for variance in (CO, CONTRA):
            pres = catalog_presheaves(x, max_fibre, variance)
            for a, b in product(pres, repeat=2):
                for alpha in nat_transformations(a, b):
                    back = contrapose_inverse(contrapose(alpha), a, b)
                    t.expect(back == alpha, f"{name} {variance}: round trip of {alpha.comp}")
    return t.check()


def criterion_atoms_cauchy() -> Check:
    t = Tally("acceptance.7 atoms-karoubi")
    cat = load_catalog()
    for name, x in cat.bases.items():
        for p in object_atoms(x) + idempotent_atoms(x):
            t.expect(atom_check(p) is not None, f"{name}: atom check fails on {p}")
        for e in x.idempotents():
            inc, ret = retract_maps(x, e)
            t.expect(inc.then(ret) == identity_nat(inc.src), f"{name}: ↑{e} not a retract")
            down_e = idempotent_representable(x, e, CONTRA)
            up_e = idempotent_representable(x, e, CO)
            t.expect(is_dedekind_cut(down_e, up_e), f"{name}: (↓{e},↑{e}) not a cut")
            split = splits(x, e)
            if split is not None:
                y = split[0]
                t.expect(isomorphic(up_e, representable(x, y, CO)), f"{name}: ↑{e} vs ↑{y}")
                t.expect(isomorphic(down_e, representable(x, y, CONTRA)), f"{name}: ↓{e} vs ↓{y}")
    k = karoubi(cat.bases["{1,e}"]).category
    sizes = tuple(len(k.hom(a, b)) for a in k.objects for b in k.objects)
    t.expect(len(k.objects) == 2 and sizes == (2, 1, 1, 1), f"karoubi({{1,e}}) hom sizes {sizes}")
    split_cat = cat.bases["split"]
    t.expect(
        any(splits(split_cat, e) and not split_cat.is_identity(e) for e in split_cat.idempotents()),
        "no proper split idempotent in the split base",
    )
    return t.check()


def criterion_kan(bases=CORE_BASES, oracle_fibre: int = 3, adjoint_fibre: int = 2) -> Check:
    t = Tally("acceptance.8 kan-extensions")
    for src, tgt in product(bases, repeat=2):
        x, y = base(src), base(tgt)
        fs = enumerate_functors(x, y)
        for f in fs:
            label = f"{src}→{tgt} {f.obj_map}"
            for d in catalog_presheaves(x, oracle_fibre, CO):
                t.expect(isomorphic(lan(f, d), colimit_presheaf(f, d)), f"{label}: lan {d}")
                t.expect(isomorphic(ran(f, d), limit_presheaf(f, d)), f"{label}: ran {d}")
            for d in catalog_presheaves(x, adjoint_fibre, CO):
                ld, rd = lan(f, d), ran(f, d)
                for e in catalog_presheaves(y, adjoint_fibre, CO):
                    fe = substitute(f, e)
                    t.expect(count_nat(ld, e) == count_nat(d, fe), f"{label}: lan ⊣ substitution")
                    t.expect(count_nat(fe, d) == count_nat(e, rd), f"{label}: substitution ⊣ ran")
            for pn, p in catalog_parts(x):
                lam = component_map(f, p)
                n = len(components(p.total))
                t.expect(
                    len(components(pushforward(f, p).total)) == n and sorted(lam.values()) == list(range(n)),
                    f"{label}: components of {pn}",
                )
                for qn, q in catalog_parts(y):
                    t.expect(frobenius_check(f, p, q).iso, f"{label}: Frobenius at ({pn},{qn})")
    return t.check()


def criterion_two_valued(max_size: int = 5, categorical_size: int = 4) -> Check:
    t = Tally("acceptance.9 two-valued")
    for n in range(max_size + 1):
        for x in posets_up_to_iso(n):
            leq = x.leq
            for p in x.subsets():
                t.expect(alexandrov_reflect(x, p, UP) == least_closed_superset(x.elements, leq, p, True), f"up-closure {sorted(p)}")
                t.expect(alexandrov_reflect(x, p, DOWN) == least_closed_superset(x.elements, leq, p, False), f"down-closure {sorted(p)}")
                t.expect(alexandrov_coreflect(x, p, DOWN) == greatest_open_subset(x.elements, leq, p, True), f"sieve interior {sorted(p)}")
                t.expect(alexandrov_coreflect(x, p, UP) == greatest_open_subset(x.elements, leq, p, False), f"cosieve interior {sorted(p)}")
                if classify_subset(x, p) != "neither":
                    neg = pseudocomplement(x, p)
                    t.expect(pseudocomplement(x, neg) == p, f"double negation {sorted(p)}")
                    t.expect(is_sieve(x, p) == is_cosieve(x, neg), f"negation swaps kinds {sorted(p)}")
            if n <= categorical_size:
                _two_valued_categorical(t, x)
    return t.check()


def _two_valued_categorical(t: Tally, x):
    cat = to_fincat(x)
    kinds = {"sieve": "df", "cosieve": "dof", "clopen": "bifibration", "neither": "neither"}
    for p in x.subsets():
        part = subset_part(x, p, cat)
        t.expect(classify_part(part).kind == kinds[classify_subset(x, p)], f"classification of {sorted(p)}")
        for side, fn, direction in (
            (CLOSED, reflect, UP),
            (OPEN, reflect, DOWN),
            (OPEN, coreflect, DOWN),
            (CLOSED, coreflect, UP),
        ):
            pre = fn(part, side).presheaf
            want = (alexandrov_reflect if fn is reflect else alexandrov_coreflect)(x, p, direction)
            # reflections may split a fibre into several components; only the support is two-valued
            small = fn is reflect or max(pre.sizes(), default=0) <= 1
            t.expect(_support(pre) == want and small, f"{fn.__name__} {side} of {sorted(p)}")


def _graphs_over_arrow(max_nodes: int = 2, max_mult: int = 2):
    """Every graph over A with at most ``max_nodes`` nodes over each end."""
    for n0, n1 in product(range(max_nodes + 1), repeat=2):
        sources = [f"u{i}" for i in range(n0)]
        targets = [f"v{j}" for j in range(n1)]
        pairs = list(product(sources, targets))
        for mults in product(range(max_mult + 1), repeat=len(pairs)):
            edges = [
                (f"{s}{t}{m}", s, t) for (s, t), k in zip(pairs, mults) for m in range(k)
            ]
            nodes = {s: "0" for s in sources} | {v: "1" for v in targets}
            yield over_arrow(FinGraph(tuple(nodes), tuple(edges)), nodes)


def _cointerprets_bijectively(part, end: str) -> bool:
    """ten(end, P) → ten(A, P) along the inclusion of an end into A is a bijection."""
    x = part.base
    whole, point = identity_part(x), object_part(x, end)
    (inclusion,) = hom_over(point, whole)
    mapping = tensor_map(tensor(point, part), tensor(whole, part), inclusion)
    return sorted(mapping) == list(range(tensor(whole, part).size))


def criterion_appendix() -> Check:
    t = Tally("acceptance.10 groupoids-comappings")
    cat = load_catalog()
    g = groupoid_reflection(cat.bases["2"]).groupoid
    t.expect(
        len(g.objects) == 2 and all(len(g.hom(a, b)) == 1 for a in g.objects for b in g.objects),
        f"groupoid reflection of 2 is {g}",
    )
    for name in CORE_BASES + ("discrete-2",):
        x = cat.bases[name]
        bifib = [d for d in fibrations(x, 2, CLOSED) if classify_part(d).kind == "bifibration"]
        for pn, p in catalog_parts(x):
            refl, corefl = elements(clopen_reflect(p)), elements(clopen_coreflect(p))
            t.expect(classify_part(refl).kind == "bifibration", f"{name}: clopen reflection of {pn}")
            t.expect(classify_part(corefl).kind == "bifibration", f"{name}: clopen coreflection of {pn}")
            for d in bifib:
                t.expect(count_hom(p, d) == count_hom(refl, d), f"{name}: clopen reflection universal at {pn}")
                t.expect(count_hom(d, p) == count_hom(d, corefl), f"{name}: clopen coreflection universal at {pn}")
    for gp in _graphs_over_arrow():
        bridge = graph_space_bridge(gp)
        label = classify_graph_part(gp)
        t.expect(is_comapping(gp, "right") == _cointerprets_bijectively(bridge, "1"), f"right comapping {gp.total.edges}")
        t.expect(is_comapping(gp, "left") == _cointerprets_bijectively(bridge, "0"), f"left comapping {gp.total.edges}")
        right = label in (RIGHT_FUNCTIONAL, BIFUNCTIONAL)
        left = label in (LEFT_FUNCTIONAL, BIFUNCTIONAL)
        cls = classify_part(bridge)
        t.expect(right == cls.is_dof and left == cls.is_df, f"functional vs fibration {gp.total.edges}")
        domain_map = Counter(gp.total.src(e) for e, _, _ in gp.total.edges)
        bijective = all(domain_map[a] == 1 for a in gp.over("0"))
        t.expect(right == bijective, f"domain map {gp.total.edges}")
    for name in ("Z2", "discrete-2"):
        x = cat.bases[name]
        for d in fibrations(x, 2, OPEN) + [p for _, p in catalog_parts(x) if classify_part(p).is_df]:
            t.expect(classify_part(d).kind == "bifibration", f"{name}: df that is not a bifibration")
    x = g
    for d in fibrations(x, 2, OPEN):
        t.expect(classify_part(d).kind == "bifibration", "groupoid of 2: df that is not a bifibration")
    return t.check()


CRITERIA = {
    1: criterion_cycle_algebra,
    2: criterion_zn_transfer,
    3: criterion_graph_examples,
    4: criterion_reflection_adjunctions,
    5: criterion_coadjunction_yoneda,
    6: criterion_contraposition,
    7: criterion_atoms_cauchy,
    8: criterion_kan,
    9: criterion_two_valued,
    10: criterion_appendix,
}

# stated time limits in seconds, where given
TIME_LIMITS = {1: 1.0, 2: 5.0, 4: 60.0, 8: 120.0}


def run_criterion(number: int) -> Check:
    fn = CRITERIA[number]
    return guarded(f"acceptance.{number}", fn)


# ------------------------------------------------------------ axiom checks


def axiom_checks(x, max_fibre: int = 2, max_set: int = 2) -> list[Check]:
    """Negation, (co)reflection, coadjunction and contraposition over parts of x."""
    return [
        guarded("axioms.negation", _negation_adjunction, x, max_fibre, max_set),
        guarded("axioms.reflection", _reflection_counts, x, max_fibre),
        guarded("axioms.coadjunction", _coadjunction, x),
        guarded("axioms.contraposition", _contraposition, x, max_fibre),
    ]


def _negation_adjunction(x, max_fibre, max_set) -> Check:
    t = Tally("axioms.negation")
    for size in range(max_set + 1):
        s = tuple(str(i) for i in range(size))
        for side in (OPEN, CLOSED):
            for a in fibrations(x, max_fibre, side):
                neg = negation(a, s)
                want_kind = "dof" if side == OPEN else "df"
                kind = classify_part(neg).kind
                t.expect(kind in (want_kind, "bifibration"), f"negation of a {side} part is {kind}")
                for pn, p in catalog_parts(x):
                    t.expect(
                        count_hom(p, neg) == size ** tensor(p, a).size,
                        f"hom({pn}, ¬A) with |S|={size}",
                    )
    return t.check()


def _reflection_counts(x, max_fibre) -> Check:
    t = Tally("axioms.reflection")
    for side in (CLOSED, OPEN):
        for pn, p in catalog_parts(x):
            up, down = reflect(p, side).part, coreflect(p, side).part
            for d in fibrations(x, max_fibre, side):
                t.expect(count_hom(p, d) == count_hom(up, d), f"{side} reflection of {pn}")
                t.expect(count_hom(d, p) == count_hom(d, down), f"{side} coreflection of {pn}")
    return t.check()


def _coadjunction(x) -> Check:
    t = Tally("axioms.coadjunction")
    parts = catalog_parts(x)
    downs = {pn: reflect(p, OPEN).part for pn, p in parts}
    ups = {pn: reflect(p, CLOSED).part for pn, p in parts}
    for (pn, p), (qn, q) in product(parts, repeat=2):
        a, b, c = tensor(downs[pn], q).size, tensor(downs[pn], ups[qn]).size, tensor(p, ups[qn]).size
        t.expect(a == b == c, f"ten(↓{pn},{qn})={a}, ten(↓{pn},↑{qn})={b}, ten({pn},↑{qn})={c}")
    return t.check()


def _contraposition(x, max_fibre) -> Check:
    t = Tally("axioms.contraposition")
    for variance in (CO, CONTRA):
        pres = catalog_presheaves(x, max_fibre, variance)
        for a, b in product(pres, repeat=2):
            alphas = nat_transformations(a, b)
            thetas = {repr(sorted(contrapose(al).items())) for al in alphas}
            t.expect(len(thetas) == len(alphas), "contraposition not injective")
            for al in alphas:
                t.expect(contrapose_inverse(contrapose(al), a, b) == al, "round trip")
    return t.check()


# ------------------------------------------------------ module invariants


def inv_components(names=CORE_BASES) -> Check:
    t = Tally("fincat.components")
    for name in names:
        x = base(name)
        q = discrete_quotient(x)
        t.expect(len(components(q)) == len(q.objects), f"{name}: quotient not discrete")
        for size in range(4):
            pre = constant(x, tuple(str(i) for i in range(size)))
            n = len(components(elements(pre).total))
            t.expect(n == size * len(components(x)), f"{name}: constant {size}")
        for variance in (CO, CONTRA):
            for pre in catalog_presheaves(x, 2, variance):
                cls = classify_part(elements(pre))
                back = cls.co if variance == CO else cls.contra
                t.expect(back is not None and isomorphic(back, pre), f"{name}: elements round trip")
    graphs = load_catalog().graphs
    for gname in ("D", "A", "C3", "C5", "S1"):
        g = graphs[gname]
        try:
            c = validate_category(free_category(g))
        except Exception:
            t.expect(gname == "S1", f"{gname}: free category failed")
            continue
        t.expect(len(c.arrows) == _count_paths(g), f"{gname}: path count")
    return t.check()


def _count_paths(g: FinGraph) -> int:
    total = len(g.nodes)
    frontier = Counter({n: 1 for n in g.nodes})
    while frontier:
        nxt = Counter()
        for n, k in frontier.items():
            for e in g.out_edges(n):
                nxt[g.tgt(e)] += k
        total += sum(nxt.values())
        frontier = nxt
    return total


def inv_parts(names=CORE_BASES, max_set: int = 3) -> Check:
    t = Tally("parts.tensor-negation")
    for name in names:
        x = base(name)
        parts = catalog_parts(x)
        for (pn, p), (qn, q) in product(parts, repeat=2):
            pq, qp = tensor(p, q), tensor(q, p)
            swap = tuple(qp.class_of(*reversed(pq.rep_pair(i))) for i in range(pq.size))
            t.expect(sorted(swap) == list(range(qp.size)), f"{name}: swap on ten({pn},{qn})")
        for (pn, p), (qn, q), (rn, r) in product(parts[:6], repeat=3):
            t.expect(
                tensor(sum_parts(p, q), r).size == tensor(p, r).size + tensor(q, r).size,
                f"{name}: sums ({pn}+{qn}, {rn})",
            )
        opens, closeds = fibrations(x, 2, OPEN), fibrations(x, 2, CLOSED)
        for a in opens:
            for size in range(max_set + 1):
                neg = negation(a, tuple(str(i) for i in range(size)))
                for pn, p in parts:
                    t.expect(count_hom(p, neg) == size ** tensor(p, a).size, f"{name}: negation at {pn}")
            for d in closeds:
                exp = exp_mixed(a, d)
                for pn, p in parts:
                    t.expect(
                        count_hom(fibre_product(p, a), d) == count_hom(p, exp), f"{name}: currying at {pn}"
                    )
        for a in opens + closeds:
            t.expect(not factorization_lifting_failures(a), f"{name}: factorization lifting")
    return t.check()


def inv_fibrations(names=CORE_BASES) -> Check:
    t = Tally("fibrations.repleteness")
    for name in names:
        x = base(name)
        for side in (CLOSED, OPEN):
            for d in fibrations(x, 2, side):
                cls = classify_part(d)
                pre = cls.co if side == CLOSED else cls.contra
                t.expect(isomorphic(reflect(d, side).presheaf, pre), f"{name}: reflect fixes a {side} part")
                t.expect(isomorphic(coreflect(d, side).presheaf, pre), f"{name}: coreflect fixes a {side} part")
    gx = groupoid_reflection(base("2")).groupoid
    for x in (base("Z2"), base("discrete-2"), gx):
        for d in fibrations(x, 2, OPEN):
            t.expect(classify_part(d).kind == "bifibration", "groupoid df is not a bifibration")
    return t.check()


def _presheaf_product(a, b):
    return classify_part(fibre_product(elements(a), elements(b))).presheaf


def _presheaf_sum(a, b):
    return classify_part(sum_parts(elements(a), elements(b))).presheaf


def inv_atoms() -> Check:
    t = Tally("atoms.karoubi")
    cat = load_catalog()
    for name, x in cat.bases.items():
        k = karoubi(x)
        kk = karoubi(k.category)
        for e in kk.category.idempotents():
            t.expect(splits(kk.category, e) is not None, f"{name}: idempotent of the double envelope does not split")
        for e in k.category.idempotents():
            t.expect(splits(k.category, e) is not None, f"{name}: idempotent {e} does not split")
        t.expect(duality_functorial(duality_sigma(x)), f"{name}: duality not functorial")
        if len(x.objects) > 3:
            continue
        for variance in (CO, CONTRA):
            pres = catalog_presheaves(x, 2, variance)
            for e in x.idempotents():
                for a, b in product(pres[:6], repeat=2):
                    ea, eb = len(evaluate_at_atom(e, a)), len(evaluate_at_atom(e, b))
                    prod_ = _presheaf_product(a, b)
                    total = _presheaf_sum(a, b)
                    t.expect(len(evaluate_at_atom(e, prod_)) == ea * eb, f"{name}: ev_{e} of a product")
                    t.expect(len(evaluate_at_atom(e, total)) == ea + eb, f"{name}: ev_{e} of a sum")
            for a in pres:
                ext = extend_to_karoubi(a, k)
                t.expect(isomorphic(substitute(k.embedding, ext), a), f"{name}: extension does not restrict back")
                for obj, (o, e) in k.idempotent.items():
                    t.expect(len(ext.fibre[obj]) == len(evaluate_at_atom(e, a)), f"{name}: value at {obj}")
    return t.check()


def inv_kan(names=("1", "2", "{1,e}", "Z2", "a<b")) -> Check:
    t = Tally("kan.functoriality")
    for src, tgt in product(names, repeat=2):
        x, y = base(src), base(tgt)
        for f in enumerate_functors(x, y):
            for d in catalog_presheaves(x, 2, CO):
                t.expect(
                    isomorphic(lan(f, d), reflect(pushforward(f, elements(d)), CLOSED).presheaf),
                    f"{src}→{tgt}: lan vs reflection of the pushforward",
                )
            for p in object_atoms(x) + idempotent_atoms(x):
                w = atom_check(p)
                from .kan import pushforward_atom

                t.expect(w is not None and pushforward_atom(f, w) is not None, f"{src}→{tgt}: image of an atom")
            for mid in names:
                for g in enumerate_functors(y, base(mid)):
                    t.expect(base_map(f.then(g)) == base_map(f).then(base_map(g)), f"{src}→{tgt}→{mid}: base map")
        if src == tgt:
            ident = identity_functor(x)
            t.expect(base_map(ident) == identity_functor(karoubi(x).category), f"{src}: base map of identity")
    return t.check()


def inv_twoval(max_size: int = 5) -> Check:
    t = Tally("twoval.galois")
    for n in range(max_size + 1):
        for x in posets_up_to_iso(n):
            subsets = list(x.subsets())
            for p in subsets:
                up, inner = alexandrov_reflect(x, p, UP), alexandrov_coreflect(x, p, DOWN)
                t.expect(p <= up and inner <= p, f"inclusions at {sorted(p)}")
                t.expect(alexandrov_reflect(x, up, UP) == up, "reflection not idempotent")
                t.expect(alexandrov_coreflect(x, inner, DOWN) == inner, "coreflection not idempotent")
                t.expect(is_atom(x, p) == (len(p) == 1), f"atom {sorted(p)}")
            if n > 4:
                continue
            for p, q in product(subsets, repeat=2):
                down_p, up_q = alexandrov_reflect(x, p, DOWN), alexandrov_reflect(x, q, UP)
                t.expect(meets(down_p, q) == meets(down_p, up_q) == meets(p, up_q), "two-valued coadjunction")
            for a in x.elements:
                t.expect(alexandrov_reflect(x, {a}, DOWN) == x.below(a), "principal sieve")
                t.expect(alexandrov_reflect(x, {a}, UP) == x.above(a), "principal cosieve")
    return t.check()


def inv_graphspace() -> Check:
    t = Tally("graphspace.cycles")
    lengths = range(1, 7)
    sums = [CycleSum({k: 1}) for k in lengths] + [CycleSum({j: 1}) + CycleSum({k: 1}) for j in lengths for k in lengths if j <= k]
    for a in sums:
        g = a.to_graph()
        t.expect(loop_reflect(g) == SymbolicEndomap(a.to_endomap(), 0), f"cochains of {a.mult}")
        t.expect(
            endomap_signature(chain_endomap(chains(g))) == endomap_signature(a.to_endomap()),
            f"chains of {a.mult}",
        )
    for gname, g in load_catalog().graphs.items():
        depth = truncation_depth(g)
        try:
            t.expect(loop_reflect(g, depth) == loop_reflect(g, depth + 1), f"{gname}: truncation")
        except Exception as e:  # shapes outside core ⊕ tails are reported
            t.expect(free_endomap_shape(g) is None, f"{gname}: {e}")
    for a, b, c in product(sums[:8], repeat=3):
        t.expect(cycle_pairing(a + b, c).ten == cycle_pairing(a, c).ten + cycle_pairing(b, c).ten, "ten additivity")
    for n in range(1, 13):
        divisors = [d for d in range(1, n + 1) if n % d == 0]
        targets = [CycleSum({d: 1}) for d in divisors] + [CycleSum({d: 1}) + CycleSum({e: 1}) for d in divisors for e in divisors if d <= e]
        for k in range(1, 13):
            a = CycleSum({k: 1})
            for b in targets:
                t.expect(
                    cycle_pairing(zn_transfer(a, n, "reflect"), b).hom == cycle_pairing(a, b).hom,
                    f"reflect L{k} along n={n}",
                )
                t.expect(
                    cycle_pairing(b, zn_transfer(a, n, "coreflect")).hom == cycle_pairing(b, a).hom,
                    f"coreflect L{k} along n={n}",
                )
    for gp in _graphs_over_arrow():
        label = classify_graph_part(gp)
        p0 = Counter(gp.total.src(e) for e, _, _ in gp.total.edges)
        t.expect((label in (RIGHT_FUNCTIONAL, BIFUNCTIONAL)) == all(p0[a] == 1 for a in gp.over("0")), "p0 bijective")
    return t.check()


def inv_documents() -> Check:
    from .documents import dump, load

    t = Tally("documents.round-trip")
    cat = load_catalog()
    for name, x in cat.bases.items():
        t.expect(load(dump(x)) == x, f"category {name}")
        for pn, p in catalog_parts(x):
            t.expect(load(dump(p)) == p, f"part {pn} over {name}")
        for pre in catalog_presheaves(x, 1, CO) if len(x.objects) <= 3 else ():
            t.expect(load(dump(pre)) == pre, f"presheaf over {name}")
    for gname, g in cat.graphs.items():
        t.expect(load(dump(g)) == g, f"graph {gname}")
    for x in posets_up_to_iso(3):
        t.expect(load(dump(x)) == x, "poset")
    a = CycleSum({2: 1, 3: 2})
    t.expect(load(dump(a)) == a, "cycle sum")
    e = loop_reflect(star_graph(2))
    t.expect(load(dump(e)) == e, "endomap")
    return t.check()


INVARIANTS = {
    "fincat.components": inv_components,
    "parts.tensor-negation": inv_parts,
    "fibrations.repleteness": inv_fibrations,
    "atoms.karoubi": inv_atoms,
    "kan.functoriality": inv_kan,
    "twoval.galois": inv_twoval,
    "graphspace.cycles": inv_graphspace,
    "documents.round-trip": inv_documents,
}

CORE_CRITERIA = (1, 2, 3, 4, 5, 6, 7, 9, 10)
CORE_AXIOM_BASES = ("2", "{1,e}", "Z2")


def run_suite(suite: str = "core", emit=None) -> list[Check]:
    """Run the ``core`` (quick) or ``all`` suite, calling ``emit`` with each result."""
    if suite not in ("core", "all"):
        raise ValueError(f"unknown suite {suite!r}")
    jobs = []
    numbers = CORE_CRITERIA if suite == "core" else tuple(CRITERIA)
    for n in numbers:
        jobs.append((f"acceptance.{n}", CRITERIA[n], ()))
    axiom_bases = CORE_AXIOM_BASES if suite == "core" else CORE_BASES
    for name in axiom_bases:
        jobs.append((f"axioms[{name}]", lambda name=name: axiom_checks(base(name)), ()))
    if suite == "all":
        for name, fn in INVARIANTS.items():
            jobs.append((name, fn, ()))
    else:
        jobs.append(("documents.round-trip", inv_documents, ()))
    results = []
    for name, fn, args in jobs:
        out = guarded(name, fn, *args)
        for check in out if isinstance(out, list) else [out]:
            if name.startswith("axioms["):
                check = Check(f"{check.name}[{name[7:-1]}]", check.ok, check.detail)
            results.append(check)
            if emit is not None:
                emit(check)
    return results
