import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bipolar.atoms import (
    atom_check,
    default_family,
    duality_functorial,
    duality_sigma,
    evaluate_at_atom,
    eventually_idempotent,
    idempotent_atoms,
    idempotent_representable,
    is_dedekind_cut,
    isbell_conjugate,
    karoubi,
    object_atoms,
    retract_maps,
    splits,
)
from bipolar.fincat import FinFunctor, arrow_category, cyclic_group, idempotent_monoid, terminal_category
from bipolar.parts import Part, identity_part, idempotent_part, object_part, sum_parts
from bipolar.presheaf import (
    CO,
    CONTRA,
    Presheaf,
    constant,
    count_nat,
    down,
    elements,
    empty,
    isomorphic,
    nat_transformations,
    terminal,
    up,
)
from bipolar.verify import base


def test_eventually_idempotent():
    assert eventually_idempotent(idempotent_monoid(), "e") == 1
    assert eventually_idempotent(cyclic_group(2), "g") is None
    assert eventually_idempotent(base("{1,a,z}"), "a") == 2


def test_atom_witnesses():
    two = arrow_category()
    assert atom_check(object_part(two, "0")) is not None
    m = idempotent_monoid()
    assert atom_check(idempotent_part(m, "e")) is not None


def test_discrete_pair_is_not_an_atom():
    one = terminal_category()
    assert atom_check(sum_parts(object_part(one, "*"), object_part(one, "*"))) is None


def test_karoubi_of_idempotent_monoid():
    k = karoubi(idempotent_monoid()).category
    assert len(k.objects) == 2
    sizes = {(a, b): len(k.hom(a, b)) for a in k.objects for b in k.objects}
    assert sizes == {("1", "1"): 2, ("1", "e"): 1, ("e", "1"): 1, ("e", "e"): 1}


@pytest.mark.parametrize("name", ["2", "Z2"])
def test_karoubi_adds_nothing_without_proper_idempotents(name):
    x = base(name)
    k = karoubi(x).category
    assert len(k.objects) == len(x.objects)
    assert len(k.arrows) == len(x.arrows)


def test_duality_sizes():
    two = arrow_category()
    d = duality_sigma(two)
    assert count_nat(down(two, "0"), down(two, "1")) == count_nat(up(two, "1"), up(two, "0")) == 1
    assert duality_functorial(d)
    m = idempotent_monoid()
    dm = duality_sigma(m)
    assert len(dm.sources["1", "e"]) == 1
    assert duality_functorial(dm)


@pytest.mark.parametrize("name", ["2", "3", "{1,e}", "Z2"])
def test_conjugate_of_representable(name):
    x = base(name)
    for o in x.objects:
        assert isomorphic(isbell_conjugate(down(x, o)), up(x, o))
        assert isomorphic(isbell_conjugate(up(x, o)), down(x, o))


def test_conjugate_of_empty_is_terminal():
    two = arrow_category()
    assert isomorphic(isbell_conjugate(empty(two, CONTRA)), terminal(two, CO))


@pytest.mark.parametrize("name", ["{1,e}", "{1,a,z}", "split"])
def test_atomic_pairs_are_dedekind_cuts(name):
    x = base(name)
    for e in x.idempotents():
        assert is_dedekind_cut(idempotent_representable(x, e, CONTRA), idempotent_representable(x, e, CO))


def test_retract_of_representable():
    m = idempotent_monoid()
    section, retraction = retract_maps(m, "e")
    assert section.then(retraction).is_iso()


def test_split_idempotent_gives_representable():
    x = base("split")
    y, r, i = splits(x, "e")
    assert isomorphic(idempotent_representable(x, "e", CO), up(x, y))
    assert splits(idempotent_monoid(), "e") is None


def test_evaluate_at_atom():
    m = idempotent_monoid()
    regular = Presheaf(m, CO, {"*": ["1", "e"]}, {"e": {"1": "e", "e": "e"}})
    assert evaluate_at_atom("e", regular) == ("e",)
    assert evaluate_at_atom("1", regular) == ("1", "e")
    assert evaluate_at_atom("e", constant(m, ("s", "t"))) == ("s", "t")


def test_every_object_and_idempotent_is_an_atom():
    for name in ("2", "{1,e}", "Z2", "split"):
        x = base(name)
        for p in object_atoms(x) + idempotent_atoms(x):
            assert atom_check(p, default_family(x)) is not None


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(("{1,e}", "split", "{1,a,z}")), st.data())
def test_fixed_points_count_maps_out_of_the_atom(name, data):
    from bipolar.parts import count_hom, tensor
    from bipolar.verify import catalog_presheaves

    x = base(name)
    e = data.draw(st.sampled_from(x.idempotents()))
    d = data.draw(st.sampled_from(catalog_presheaves(x, 2, CO)))
    n = len(evaluate_at_atom(e, d))
    atom = idempotent_part(x, e)
    assert count_hom(atom, elements(d)) == n
    assert tensor(atom, elements(d)).size == n
