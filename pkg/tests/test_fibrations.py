import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bipolar.errors import NotNatural
from bipolar.fibrations import (
    CLOSED,
    OPEN,
    classify_part,
    clopen_coreflect,
    clopen_reflect,
    contrapose,
    contrapose_inverse,
    coreflect,
    groupoid_reflection,
    reflect,
    verify_axioms,
)
from bipolar.fincat import (
    FinCat,
    FinFunctor,
    arrow_category,
    cyclic_group,
    discrete_category,
    idempotent_monoid,
    terminal_category,
)
from bipolar.parts import Part, empty_part, identity_part, object_part, idempotent_part, sum_parts
from bipolar.presheaf import (
    CO,
    CONTRA,
    constant,
    down,
    elements,
    identity_nat,
    isomorphic,
    nat_transformations,
    terminal,
    up,
)
from bipolar.verify import base, catalog_presheaves


def test_classification_examples():
    two = arrow_category()
    c = classify_part(object_part(two, "1"))
    assert c.is_dof and not c.is_df
    assert classify_part(identity_part(two)).kind == "bifibration"
    assert classify_part(elements(up(two, "0"))).is_dof
    assert classify_part(elements(down(two, "1"))).is_df


def test_reflecting_an_object_gives_the_representable():
    x = base("3")
    for o in x.objects:
        assert isomorphic(reflect(object_part(x, o), CLOSED).presheaf, up(x, o))
        assert isomorphic(reflect(object_part(x, o), OPEN).presheaf, down(x, o))


def test_reflecting_the_idempotent_part():
    m = idempotent_monoid()
    assert reflect(idempotent_part(m, "e"), CLOSED).presheaf.sizes() == (1,)


def test_arrow_category_over_one():
    one = terminal_category()
    two = arrow_category()
    p = Part(one, two, FinFunctor(two, one, {"0": "*", "1": "*"}, {a: "1" for a in two.arrow_ids}))
    assert reflect(p, CLOSED).presheaf.sizes() == (1,)
    assert coreflect(p, CLOSED).presheaf.sizes() == (2,)


def test_coreflections():
    two = arrow_category()
    assert coreflect(identity_part(two), CLOSED).presheaf.sizes() == (1, 1)
    p = sum_parts(object_part(two, "0"), sum_parts(object_part(two, "1"), object_part(two, "1")))
    assert coreflect(p, CLOSED).presheaf.sizes() == (0, 2)


def test_unit_lands_in_the_reflection():
    two = arrow_category()
    p = sum_parts(object_part(two, "0"), object_part(two, "1"))
    res = reflect(p, CLOSED)
    assert res.unit.dom is p and res.unit.cod is res.part
    assert res.unit.commutes()


def test_contrapose_round_trips():
    two = arrow_category()
    (alpha,) = nat_transformations(down(two, "0"), down(two, "1"))
    back = contrapose_inverse(contrapose(alpha), alpha.src, alpha.tgt)
    assert back.key() == alpha.key()
    ident = identity_nat(down(two, "1"))
    assert contrapose_inverse(contrapose(ident), ident.src, ident.tgt).key() == ident.key()


def test_broken_theta_is_rejected():
    two = arrow_category()
    a = constant(two, ("s", "t"), CONTRA)
    b = constant(two, ("s", "t"), CONTRA)
    theta = contrapose(identity_nat(a))
    # swap the answer on one function at object 0
    key = ("0", "0")
    table = dict(theta[key])
    h = ("s", "s")
    table[h] = ("t", "t")
    theta[key] = table
    with pytest.raises(NotNatural):
        contrapose_inverse(theta, a, b)


def test_groupoid_reflections():
    g2 = groupoid_reflection(arrow_category()).groupoid
    assert len(g2.objects) == 2 and len(g2.arrows) == 4
    z2 = groupoid_reflection(cyclic_group(2)).groupoid
    assert len(z2.arrows) == 2
    triv = groupoid_reflection(idempotent_monoid()).groupoid
    assert len(triv.arrows) == 1


def test_clopen_reflections():
    two = arrow_category()
    assert clopen_reflect(elements(down(two, "0"))).sizes() == (1, 1)
    const = constant(two, ("s", "t"), CO)
    assert isomorphic(clopen_reflect(elements(const)), const)
    assert isomorphic(clopen_coreflect(elements(const)), const)
    d2 = discrete_category(("0", "1"))
    p = sum_parts(identity_part(d2), object_part(d2, "1"))
    assert clopen_reflect(p).sizes() == (1, 2)
    assert clopen_reflect(empty_part(two)).sizes() == (0, 0)


@pytest.mark.parametrize("name", ["2", "a<b", "Z2"])
def test_axioms_hold(name):
    report = verify_axioms(base(name))
    assert all(c.ok for c in report), [c.line() for c in report if not c.ok]


def test_groupoid_base_is_boolean():
    z2 = base("Z2")
    for pre in catalog_presheaves(z2, 2, CONTRA):
        assert classify_part(elements(pre)).kind == "bifibration"


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(("2", "3", "{1,e}", "Z2", "a<b")), st.sampled_from((CO, CONTRA)), st.data())
def test_fibrations_are_fixed_by_their_reflection(name, variance, data):
    x = base(name)
    pre = data.draw(st.sampled_from(catalog_presheaves(x, 2, variance)))
    side = CLOSED if variance == CO else OPEN
    p = elements(pre)
    assert isomorphic(reflect(p, side).presheaf, pre)
    assert isomorphic(coreflect(p, side).presheaf, pre)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(("2", "{1,e}", "Z2")), st.data())
def test_contrapose_is_invertible(name, data):
    x = base(name)
    pres = catalog_presheaves(x, 2, CONTRA)
    a = data.draw(st.sampled_from(pres))
    b = data.draw(st.sampled_from(pres))
    for alpha in nat_transformations(a, b):
        assert contrapose_inverse(contrapose(alpha), a, b).key() == alpha.key()
