import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bipolar.errors import BaseMismatch, NotFibration
from bipolar.fibrations import classify_part
from bipolar.fincat import arrow_category, components, idempotent_monoid, terminal_category
from bipolar.parts import (
    comma,
    count_hom,
    empty_part,
    exp_mixed,
    fibre_product,
    hom_over,
    identity_part,
    negation,
    object_part,
    sum_parts,
    tensor,
)
from bipolar.presheaf import CO, CONTRA, Presheaf, constant, down, elements, isomorphic, up
from bipolar.verify import catalog_parts, catalog_presheaves


def d_part():
    two = arrow_category()
    return elements(Presheaf(two, CO, {"0": ["u"], "1": ["v", "w"]}, {"a": {"u": "v"}}))


def a_part():
    """The contravariant presheaf on 2 with fibres {p, q} and {b}, b sent to p."""
    two = arrow_category()
    return elements(Presheaf(two, CONTRA, {"0": ["p", "q"], "1": ["b"]}, {"a": {"b": "p"}}))


def test_fibre_product_with_identity_part_is_the_other_factor():
    two = arrow_category()
    q = d_part()
    prod = fibre_product(identity_part(two), q)
    assert prod.fibre_sizes() == q.fibre_sizes()
    assert len(components(prod.total)) == len(components(q.total))


def test_comma_categories():
    two = arrow_category()
    assert comma(object_part(two, "1"), "0", "over").objects == ()
    assert len(comma(identity_part(two), "1", "over").objects) == 2


def test_hom_over_examples():
    two = arrow_category()
    assert len(hom_over(object_part(two, "0"), d_part())) == 1
    assert len(hom_over(d_part(), identity_part(two))) == 1
    assert len(hom_over(elements(down(two, "0")), elements(down(two, "1")))) == 1
    assert len(hom_over(empty_part(two), d_part())) == 1


def test_tensor_examples():
    two = arrow_category()
    ten = tensor(a_part(), d_part())
    assert ten.size == 3
    assert ten.class_of("0.p", "0.u") == ten.class_of("1.b", "1.v")
    assert len({ten.class_of("0.q", "0.u"), ten.class_of("1.b", "1.w"), ten.class_of("0.p", "0.u")}) == 3
    assert tensor(a_part(), elements(up(two, "0"))).size == 2


def test_negation_of_down_one():
    two = arrow_category()
    neg = negation(elements(down(two, "1")), ("s", "t"))
    assert neg.fibre_sizes() == (2, 2)
    assert classify_part(neg).is_dof


def test_negation_of_terminal_is_constant_and_of_empty_set_is_empty():
    two = arrow_category()
    neg = negation(elements(constant(two, ("*",), CONTRA)), ("s", "t"))
    assert isomorphic(classify_part(neg).co, constant(two, ("s", "t"), CO))
    assert negation(elements(down(two, "1")), ()).fibre_sizes() == (0, 0)


def test_negation_needs_a_fibration():
    one = terminal_category()
    two_over_one = dict(catalog_parts(one))["2-over-1"]
    with pytest.raises(NotFibration):
        negation(two_over_one, ("s",))


def test_exp_mixed_of_representables():
    two = arrow_category()
    assert exp_mixed(elements(down(two, "1")), elements(up(two, "0"))).fibre_sizes() == (1, 1)


def test_parts_over_different_bases_are_rejected():
    with pytest.raises(BaseMismatch):
        hom_over(identity_part(arrow_category()), identity_part(idempotent_monoid()))


BASES = ("1", "2", "{1,e}", "Z2")


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(BASES), st.data())
def test_tensor_is_symmetric_and_counts_sum(name, data):
    from bipolar.verify import base

    x = base(name)
    parts = catalog_parts(x)
    _, p = data.draw(st.sampled_from(parts))
    _, q = data.draw(st.sampled_from(parts))
    _, r = data.draw(st.sampled_from(parts))
    assert tensor(p, q).size == tensor(q, p).size
    assert tensor(sum_parts(p, r), q).size == tensor(p, q).size + tensor(r, q).size


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(BASES), st.data())
def test_hom_out_of_a_sum_is_a_product(name, data):
    from bipolar.verify import base

    x = base(name)
    parts = catalog_parts(x)
    _, p = data.draw(st.sampled_from(parts))
    _, q = data.draw(st.sampled_from(parts))
    _, r = data.draw(st.sampled_from(parts))
    assert count_hom(sum_parts(p, q), r) == count_hom(p, r) * count_hom(q, r)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(("2", "{1,e}", "Z2")), st.data())
def test_negation_adjunction_counts(name, data):
    """|hom(D, ¬A_S)| equals the number of functions ten(A, D) → S."""
    from bipolar.verify import base

    x = base(name)
    a = elements(data.draw(st.sampled_from(catalog_presheaves(x, 2, CONTRA))))
    d = elements(data.draw(st.sampled_from(catalog_presheaves(x, 2, CO))))
    s = data.draw(st.sampled_from([(), ("s",), ("s", "t")]))
    assert count_hom(d, negation(a, s)) == len(s) ** tensor(a, d).size
