from hypothesis import given, settings
from hypothesis import strategies as st

from bipolar.atoms import karoubi
from bipolar.fincat import FinFunctor, arrow_category, enumerate_functors, identity_functor, idempotent_monoid, terminal_category
from bipolar.kan import base_map, component_map, frobenius_check, lan, ran, substitute
from bipolar.oracles import colimit_presheaf, limit_presheaf
from bipolar.parts import empty_part, identity_part
from bipolar.presheaf import CO, CONTRA, Presheaf, constant, count_nat, down, elements, isomorphic
from bipolar.verify import base, catalog_presheaves


def collapse():
    two, one = arrow_category(), terminal_category()
    return FinFunctor(two, one, {"0": "*", "1": "*"}, {a: "1" for a in two.arrow_ids})


def pick_zero():
    one, two = terminal_category(), arrow_category()
    return FinFunctor(one, two, {"*": "0"}, {"1": "id0"})


def d_on_two():
    return Presheaf(arrow_category(), CO, {"0": ["u"], "1": ["v", "w"]}, {"a": {"u": "v"}})


def test_substitute():
    s = constant(terminal_category(), ("s", "t"))
    assert substitute(collapse(), s).sizes() == (2, 2)
    assert substitute(pick_zero(), d_on_two()).sizes() == (1,)
    d = d_on_two()
    assert substitute(identity_functor(d.base), d) == d


def test_lan_and_ran_along_collapse():
    assert lan(collapse(), d_on_two()).sizes() == (2,)
    assert ran(collapse(), d_on_two()).sizes() == (1,)


def test_lan_and_ran_along_point():
    single = constant(terminal_category(), ("*",))
    assert lan(pick_zero(), single).sizes() == (1, 1)
    assert ran(pick_zero(), single).sizes() == (1, 1)


def test_extensions_along_identity():
    d = d_on_two()
    f = identity_functor(d.base)
    assert isomorphic(lan(f, d), d)
    assert isomorphic(ran(f, d), d)


def test_frobenius_examples():
    f = collapse()
    one = terminal_category()
    two_set = elements(constant(one, ("s", "t")))
    assert frobenius_check(f, elements(down(f.dom, "0")), two_set).iso
    assert frobenius_check(f, elements(down(f.dom, "0")), identity_part(one)).iso
    assert frobenius_check(f, empty_part(f.dom), two_set).iso


def test_base_maps():
    m, one = idempotent_monoid(), terminal_category()
    f = FinFunctor(m, one, {"*": "*"}, {"1": "1", "e": "1"})
    g = base_map(f)
    assert set(g.obj_map.values()) == {"1"}
    ident = base_map(identity_functor(m))
    assert all(ident.obj_map[o] == o for o in ident.obj_map)
    assert base_map(pick_zero()).obj_map == {"1": "id0"}


def test_component_map_is_a_bijection():
    mapping = component_map(collapse(), elements(d_on_two()))
    assert sorted(mapping.values()) == [0, 1]


PAIRS = [("2", "1"), ("1", "2"), ("{1,e}", "1"), ("2", "2"), ("Z2", "1")]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(PAIRS), st.data())
def test_extensions_match_brute_force(pair, data):
    f = data.draw(st.sampled_from(enumerate_functors(base(pair[0]), base(pair[1]))))
    d = data.draw(st.sampled_from(catalog_presheaves(f.dom, 2, CO)))
    assert isomorphic(lan(f, d), colimit_presheaf(f, d))
    assert isomorphic(ran(f, d), limit_presheaf(f, d))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(PAIRS), st.data())
def test_adjoint_triple_counts(pair, data):
    f = data.draw(st.sampled_from(enumerate_functors(base(pair[0]), base(pair[1]))))
    d = data.draw(st.sampled_from(catalog_presheaves(f.dom, 2, CO)))
    e = data.draw(st.sampled_from(catalog_presheaves(f.cod, 2, CO)))
    assert count_nat(lan(f, d), e) == count_nat(d, substitute(f, e))
    assert count_nat(substitute(f, e), d) == count_nat(e, ran(f, d))
